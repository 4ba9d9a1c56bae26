#!/usr/bin/env python3
"""Regenerates the frozen stemmer vocabularies under tests/data.

English: NLTK PorterStemmer in ORIGINAL_ALGORITHM mode.
German: snowballstemmer 'german'.
Words come from wordfreq frequency lists.

    pip install nltk snowballstemmer wordfreq
    python3 tools/freeze_test_data.py
"""
import pathlib
import re

import snowballstemmer
import wordfreq
from nltk.stem.porter import PorterStemmer

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"

# Textbook cases, plus double consonants where variants of the algorithm disagree.
EXTRA_EN = """caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing happy sky
relational conditional rational valenci hesitanci digitizer conformabli radicalli
differentli vileli analogousli vietnamization predication operator feudalism
decisiveness hopefulness callousness formaliti sensitiviti sensibiliti triplicate
formative formalize electriciti electrical hopeful goodness revival allowance
inference airliner gyroscopic adjustable defensible irritant replacement adjustment
dependent adoption homologou communism activate angulariti homologous effective
bowdlerize probate rate cease controll roll generate generous trekking revving
fixxing succcess a is as""".split()


def freeze(path, header, pairs):
    with open(path, "w", encoding="utf-8") as f:
        f.write(header)
        for word, stem in pairs:
            f.write(f"{word}\t{stem}\n")
    print(f"{path}: {len(pairs)} words")


def vocabulary(lang, n, pattern, extra=()):
    seen, words = set(), []
    for w in list(extra) + wordfreq.top_n_list(lang, n):
        if re.fullmatch(pattern, w) and w not in seen:
            seen.add(w)
            words.append(w)
    return words


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    porter = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
    en = vocabulary("en", 45000, r"[a-z]+", EXTRA_EN)
    freeze(OUT / "porter_vocab.tsv",
           "# word<TAB>stem, NLTK PorterStemmer ORIGINAL_ALGORITHM\n",
           [(w, porter.stem(w, to_lowercase=False)) for w in en])

    german = snowballstemmer.stemmer("german")
    de = vocabulary("de", 30000, r"[a-zäöüß]+")
    freeze(OUT / "german_vocab.tsv",
           "# word<TAB>stem, snowballstemmer german\n",
           [(w, german.stemWord(w)) for w in de])


if __name__ == "__main__":
    main()
