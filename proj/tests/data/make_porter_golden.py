"""Regenerates porter_golden.tsv from NLTK's Porter stemmer.

MARTIN_EXTENSIONS mode follows the reference C implementation, which is what
src/porter.cpp mirrors. Words are drawn from the given text files.
"""
import re
import sys

from nltk.stem.porter import PorterStemmer


def main(paths):
    words = set()
    for path in paths:
        with open(path, encoding="utf-8", errors="replace") as f:
            words.update(w.lower() for w in re.findall(r"[A-Za-z]+", f.read()))
    stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
    for w in sorted(words):
        print(f"{w}\t{stemmer.stem(w, to_lowercase=False)}")


if __name__ == "__main__":
    main(sys.argv[1:])
