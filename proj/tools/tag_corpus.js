#!/usr/bin/env node
// Tags plain-text sentences (one per line on stdin) with the Brill-lexicon
// tagger from the `pos` package and prints each line's Penn Treebank tag
// sequence. Feed it the output of harvest_docstrings.py and gzip the result
// into data/tag_corpus/:
//
//   npm install pos
//   python3 tools/harvest_docstrings.py numpy scipy sklearn pandas \
//     matplotlib | sed -e 's/[`*]//g' -e 's/  \+/ /g' \
//     | node tools/tag_corpus.js | gzip -9 \
//     > data/tag_corpus/docstrings.pos.gz
//
// The sed step strips reStructuredText inline markup (backticks, emphasis
// asterisks) that would otherwise be tagged as spurious tokens.
//
// `pos` is preferred over taggers that tag comparative "more" as RBR in all
// contexts: its newswire-style convention ("consume more" = VBP JJR,
// "more efficient" = JJR JJ) matches the tag sequences the re-ranker sees,
// which matters for patterns such as VBP JJR and JJR JJ that a language
// model trained on this corpus must support.

'use strict';

const readline = require('readline');
const pos = require('pos');

const lexer = new pos.Lexer();
const tagger = new pos.Tagger();

const rl = readline.createInterface({ input: process.stdin, terminal: false });
let sentences = 0;
let tokens = 0;

rl.on('line', (line) => {
  if (!line.trim()) return;
  const words = lexer.lex(line);
  if (!words.length) return;
  const tags = tagger.tag(words).map(([, tag]) => tag).filter(Boolean);
  if (!tags.length) return;
  sentences += 1;
  tokens += tags.length;
  process.stdout.write(tags.join(' ') + '\n');
});

rl.on('close', () => {
  process.stderr.write(`tagged ${sentences} sentences, ${tokens} tokens\n`);
});
