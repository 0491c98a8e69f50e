"""Analysis: segment a word, look its pieces up and keep compatible triples."""

from __future__ import annotations

from dataclasses import dataclass

from .generate import _dedup_sorted, realize
from .rewrite import apply_backward, apply_forward
from .translit import DIACRITICS, fold as fold_letters

TATWEEL = "ـ"


@dataclass(frozen=True)
class Normalized:
    key: str
    marks: tuple    # per key letter, the frozenset of diacritics written on it

    @property
    def has_diacritics(self) -> bool:
        return any(self.marks)


def normalize(word: str) -> Normalized:
    """Strip short vowels, shadda, sukun and tanween, keeping every letter
    (hamza seats included) and recording what was stripped per letter."""
    letters = []
    marks = []
    for ch in word:
        if ch == TATWEEL:
            continue
        if ch in DIACRITICS:
            if marks:
                marks[-1].add(ch)
            continue
        letters.append(ch)
        marks.append(set())
    return Normalized("".join(letters), tuple(frozenset(m) for m in marks))


def segmentations(word: str, max_prefix_len: int, max_suffix_len: int) -> list:
    """Every (prefix, stem, suffix) split with a non-empty stem."""
    n = len(word)
    out = []
    for i in range(min(max(max_prefix_len, 0), n) + 1):
        for j in range(min(max(max_suffix_len, 0), n - i) + 1):
            stem = word[i:n - j]
            if stem:
                out.append((word[:i], stem, word[n - j:]))
    return out


def diacritics_compatible(given: Normalized, candidate: Normalized, strict=False) -> bool:
    if len(given.marks) != len(candidate.marks):
        return False
    if strict:
        return given.marks == candidate.marks
    return all(g <= c for g, c in zip(given.marks, candidate.marks))


def analyze(db, word: str, diac_strict: bool = False, fold: bool = False) -> list:
    """All readings of ``word``; raises ValueError on empty input.

    Diacritics in the input filter the readings leniently (a written mark
    must appear on the same letter of the reading) unless ``diac_strict``
    asks for identical marks everywhere. ``fold`` merges alif and hamza
    seat variants when matching letters.
    """
    if word is None or not word.strip():
        raise ValueError("empty input")
    word = apply_forward(word.strip(), db.rewrite_rules, stage="analysis-pre")
    given = normalize(word)
    seen_keys = set()
    out = []
    for preimage in sorted(apply_backward(word, db.rewrite_rules)):
        key = normalize(preimage).key
        if key in seen_keys:
            continue
        seen_keys.add(key)
        for pk, sk, xk in segmentations(key, db.max_prefix, db.max_suffix):
            stems = db.lookup("stem", sk, fold)
            if not stems:
                continue
            prefixes = db.lookup("prefix", pk, fold)
            suffixes = db.lookup("suffix", xk, fold)
            for s in stems:
                p_ok = db.prefix_cats_for(s.category)
                x_ok = db.suffix_cats_for(s.category)
                for p in prefixes:
                    if p.category not in p_ok:
                        continue
                    for x in suffixes:
                        if x.category not in x_ok or (p.category, x.category) not in db.table_ac:
                            continue
                        a = realize(db, p, s, x)
                        if diacritics_compatible(given, normalize(a.diac), diac_strict):
                            out.append(a)
    return _dedup_sorted(out)
