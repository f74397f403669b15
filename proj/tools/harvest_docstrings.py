#!/usr/bin/env python3
"""Harvest docstring prose from installed Python packages.

Walks the given packages, pulls module / class / function docstrings, keeps
the lines that read as running text (parameter tables, doctests, headings and
code blocks are dropped) and prints one sentence per line. The output is
meant to be piped into tag_corpus.js, which turns it into the POS tag corpus
the language model trains on.

Usage:
    python3 tools/harvest_docstrings.py numpy scipy sklearn pandas matplotlib
"""

import argparse
import importlib
import inspect
import pkgutil
import re
import sys
import warnings

SECTION_HEADERS = {
    "parameters", "returns", "yields", "raises", "see also", "notes",
    "examples", "references", "attributes", "methods", "warns", "warnings",
    "other parameters", "receives", "example", "usage",
}

SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+(?=[A-Z])")
WORD = re.compile(r"[A-Za-z][A-Za-z'-]*")


def iter_docstrings(package_name):
    """Yield every reachable docstring under one top-level package."""
    try:
        pkg = importlib.import_module(package_name)
    except Exception as exc:  # pragma: no cover - depends on the install
        print(f"skipping {package_name}: {exc}", file=sys.stderr)
        return
    modules = [pkg]
    if hasattr(pkg, "__path__"):
        for info in pkgutil.walk_packages(pkg.__path__, pkg.__name__ + "."):
            if any(part.startswith("_") or part == "tests"
                   for part in info.name.split(".")):
                continue
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    modules.append(importlib.import_module(info.name))
            except Exception:
                continue
    seen = set()
    for mod in modules:
        members = [mod]
        try:
            members += [m for _, m in inspect.getmembers(mod)]
        except Exception:
            pass
        for member in members:
            doc = getattr(member, "__doc__", None)
            if not doc or not isinstance(doc, str):
                continue
            if id(doc) in seen or doc in seen:
                continue
            seen.add(doc)
            yield inspect.cleandoc(doc)


def prose_paragraphs(doc):
    """Split a docstring into paragraphs of plain running text."""
    lines = []
    in_doctest = False  # a ">>>" example: skip until the next blank line
    in_literal = False  # a "::" block: skip while indented past the intro
    literal_indent = 0
    for raw in doc.splitlines():
        line = raw.rstrip()
        stripped = line.strip()
        indent = len(line) - len(line.lstrip())
        if in_doctest:
            if stripped:
                continue
            in_doctest = False
            lines.append("")
            continue
        if in_literal:
            if not stripped or indent > literal_indent:
                continue
            in_literal = False
        if stripped.startswith(">>>"):
            in_doctest = True
            continue
        if not stripped:
            lines.append("")
            continue
        if set(stripped) <= set("-=~^\"'`*"):  # section underline
            if lines and lines[-1].strip().lower() in SECTION_HEADERS:
                lines.pop()
            continue
        if stripped.lower() in SECTION_HEADERS:
            lines.append("")
            continue
        if indent >= 8:  # deeply indented: code samples, tables
            continue
        if re.match(r"^[\w*., ]+ ?: ", stripped):  # "name : type" rows
            lines.append("")
            continue
        if stripped.startswith((":", ".. ", "#", "@")):
            continue
        if stripped.endswith("::"):  # introduces a literal block
            lines.append(stripped[:-1])
            in_literal = True
            literal_indent = indent
            continue
        lines.append(stripped)
    text = "\n".join(lines)
    for para in re.split(r"\n\s*\n", text):
        para = " ".join(para.split())
        if para:
            yield para


def sentences(paragraph, min_words, max_words):
    for sent in SENTENCE_SPLIT.split(paragraph):
        sent = sent.strip()
        if not sent or sent[-1] not in ".!?":
            continue
        words = WORD.findall(sent)
        if not (min_words <= len(words) <= max_words):
            continue
        # Mostly words, not formulas or tables.
        if len(words) < 0.6 * len(sent.split()):
            continue
        if not sent[0].isupper():
            continue
        yield sent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("packages", nargs="+")
    ap.add_argument("--min-words", type=int, default=4)
    ap.add_argument("--max-words", type=int, default=60)
    args = ap.parse_args()

    emitted = set()
    for name in args.packages:
        for doc in iter_docstrings(name):
            for para in prose_paragraphs(doc):
                for sent in sentences(para, args.min_words, args.max_words):
                    if sent in emitted:
                        continue
                    emitted.add(sent)
                    print(sent)


if __name__ == "__main__":
    main()
