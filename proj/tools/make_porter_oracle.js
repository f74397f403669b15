#!/usr/bin/env node
// Regenerates tests/porter_oracle.inc from a word list using the reference
// JavaScript Porter stemmer (npm package "porter-stemmer") as an independent
// oracle. The stemmer is applied repeatedly until a fixed point, matching
// the library contract stem(stem(w)) == stem(w).
//
// Words containing 'y' are excluded: the library intentionally uses the
// consonant-before-y variant of step 1c, which the reference package does
// not implement, so the two only agree on y-free words. The y-handling is
// covered separately by hand-derived cases in porter_stemmer_test.cc.
//
// Usage: node make_porter_oracle.js < words.txt > porter_oracle.inc

'use strict';

const { stemmer } = require('porter-stemmer');

function fixpoint(word) {
  let w = word;
  for (let i = 0; i < 16; i++) {
    const next = stemmer(w);
    if (next === w) break;
    w = next;
  }
  return w;
}

const seen = new Set();
const lines = require('fs').readFileSync(0, 'utf8').split('\n');
const out = [];
for (const raw of lines) {
  const word = raw.trim().toLowerCase();
  if (!word || seen.has(word)) continue;
  seen.add(word);
  if (!/^[a-z]+$/.test(word)) continue;
  if (word.includes('y')) continue;
  out.push(`{"${word}", "${fixpoint(word)}"},`);
}
out.sort();
process.stdout.write(
    '// Generated by tools/make_porter_oracle.js; do not edit by hand.\n');
process.stdout.write(out.join('\n') + '\n');
