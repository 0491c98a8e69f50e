"""Lexicographic QA: patterns from roots, paradigm classification and
well-formedness checks over lexemes."""

from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

from .core import FORM_LABELS
from .translit import DIACRITICS

# radicals written differently on the surface of weak or hamzated roots
_WAW, _YA, _ALIF, _MAQSURA = "و", "ي", "ا", "ى"
_HAMZAS = ("ء", "أ", "إ", "آ", "ؤ", "ئ")
WEAK_SUBSTITUTIONS = {
    _WAW: (_ALIF, _MAQSURA, _YA, "ؤ", "ئ"),
    _YA: (_ALIF, _MAQSURA, _WAW, "ئ", "ؤ"),
}
for _h in _HAMZAS:
    WEAK_SUBSTITUTIONS[_h] = tuple(x for x in _HAMZAS if x != _h) + (_ALIF,)
WEAK_RADICALS = (_WAW, _YA)

SLOTS = ("ms", "fs", "mp", "fp")


def _radical_matches(radical: str, ch: str) -> bool:
    return ch == radical or ch in WEAK_SUBSTITUTIONS.get(radical, ())


def derive_pattern(stem_form: str, root) -> str | None:
    """Replace the root radicals in ``stem_form`` by 1..n.

    Radicals are embedded left to right at the earliest positions that
    allow a complete embedding; exact letters and the weak substitution
    table both count. A final weak radical may be absent (defective
    stems). Returns None when the root cannot be embedded.
    """
    root = tuple(root)
    if not root:
        return None
    letters = [i for i, ch in enumerate(stem_form) if ch not in DIACRITICS]

    def search(k, start):
        if k == len(root):
            return []
        for j in range(start, len(letters)):
            if _radical_matches(root[k], stem_form[letters[j]]):
                rest = search(k + 1, j + 1)
                if rest is not None:
                    return [letters[j]] + rest
        if k == len(root) - 1 and root[k] in WEAK_RADICALS:
            return []
        return None

    positions = search(0, 0)
    if positions is None:
        return None
    chars = list(stem_form)
    for n, pos in enumerate(positions, start=1):
        chars[pos] = str(n)
    return "".join(chars)


def fill_pattern(pattern: str, root) -> str:
    """Inverse of derive_pattern for stems without weak substitutions."""
    return "".join(root[int(ch) - 1] if ch.isdigit() else ch for ch in pattern)


# ---------------------------------------------------------------- paradigms

@dataclass(frozen=True)
class ParadigmClass:
    id: str
    slot_signature: frozenset     # tokens like "ms:MS" or "mp:MS.alt"
    stem_count_range: tuple
    mismatch_flags: frozenset     # tokens like "mp=FP"
    description: str = ""

    @property
    def specificity(self) -> int:
        return len(self.slot_signature)


def signature_flags(signature) -> frozenset:
    """Slots whose form label differs from the function, e.g. ``mp=FP``."""
    out = set()
    for token in signature:
        slot, _, form = token.partition(":")
        form = form.split(".")[0]
        if slot != form.lower():
            out.add(f"{slot}={form}")
    return frozenset(out)


def load_paradigms(path) -> list:
    classes = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh, delimiter="\t", quoting=csv.QUOTE_NONE):
            sig = frozenset(row["SIGNATURE"].split())
            lo, _, hi = row["STEMS"].partition("-")
            flags = frozenset(f for f in (row.get("FLAGS") or "").split() if f != "_")
            if flags != signature_flags(sig):
                raise ValueError(f"paradigm {row['ID']}: flags {sorted(flags)} do not "
                                 f"match signature {sorted(sig)}")
            classes.append(ParadigmClass(row["ID"], sig, (int(lo), int(hi or lo)), flags,
                                         row.get("DESCRIPTION", "")))
    return classes


def default_paradigms() -> list:
    return load_paradigms(Path(__file__).parent / "data" / "paradigms.tsv")


def _forms_of(entry) -> list:
    return sorted(entry.require.positive_labels() & set(FORM_LABELS))


def _slots_of(entry) -> list:
    """(slot, form label) pairs realized by one stem; duals are left out."""
    out = []
    over = entry.feature_overrides
    for form in _forms_of(entry):
        gender = over.gender or form[0].lower()
        number = over.number or form[1].lower()
        if number == "d":
            continue
        out.append((gender + number, form))
    return out


def base_stem(entries):
    """The stem realizing the masculine (else feminine) singular, else the
    first plural stem. Stems the lemma is spelled from win ties, then the
    form itself, so listing order is irrelevant."""
    ordered = sorted(entries, key=lambda e: (not e.lemma.startswith(e.stem_form),
                                             e.stem_form, str(e.require)))
    for slot in ("ms", "fs"):
        for e in ordered:
            if any(s == slot for s, _ in _slots_of(e)):
                return e
    for e in ordered:
        if _slots_of(e):
            return e
    return ordered[0] if ordered else None


def lexeme_signature(entries) -> tuple:
    """(signature tokens, stem count, mismatch flags) of a lexeme."""
    base = base_stem(entries)
    tokens = set()
    for e in entries:
        alt = ".alt" if e.stem_form != base.stem_form else ""
        for slot, form in _slots_of(e):
            tokens.add(f"{slot}:{form}{alt}")
    tokens = frozenset(tokens)
    return tokens, len({e.stem_form for e in entries}), signature_flags(tokens)


def classify_paradigm(entries, paradigms=None):
    """Id of the paradigm class the lexeme belongs to, or None when it is
    out of norm."""
    paradigms = default_paradigms() if paradigms is None else paradigms
    sig, count, flags = lexeme_signature(entries)
    matches = [p for p in paradigms
               if p.slot_signature == sig and p.mismatch_flags == flags
               and p.stem_count_range[0] <= count <= p.stem_count_range[1]]
    if not matches:
        return None
    return max(matches, key=lambda p: (p.specificity, p.id)).id


# ---------------------------------------------------------------- checks

@dataclass(frozen=True)
class Issue:
    lemma: str
    code: str
    severity: str
    detail: str

    def to_row(self) -> list:
        return [self.lemma, self.code, self.detail]


def wellformedness(entries, lexicon=(), paradigms=None) -> list:
    """Issues for one lexeme. ``lexicon`` is the full stem list, used to
    spot stems that other lexemes also claim."""
    issues = []
    if not entries:
        return issues
    lemma = entries[0].lemma
    base = base_stem(entries)

    def add(code, severity, detail):
        issues.append(Issue(lemma, code, severity, detail))

    if not lemma.startswith(base.stem_form):
        add("LEMMA_STEM_MISMATCH", "warning",
            f"lemma does not start with its base stem {base.stem_form}")

    mine = {e.stem_form for e in entries}
    others = defaultdict(set)
    for e in lexicon:
        if e.lexeme_id != entries[0].lexeme_id and e.stem_form in mine:
            others[e.stem_form].add(f"{e.lemma}#{e.pos}")
    for form in sorted(others):
        add("INTER_PARADIGM_AMBIGUITY", "warning",
            f"stem {form} also belongs to {', '.join(sorted(others[form]))}")

    for e in entries:
        if e.stem_form == base.stem_form:
            continue
        forms = _forms_of(e)
        if forms and all(f[1] == "S" for f in forms) and e.feature_overrides.number != "p":
            add("BROKEN_PLURAL_NO_OVERRIDE", "error",
                f"stem {e.stem_form} takes singular suffixes but has no number:p override")

    seen = {}
    for e in entries:
        key = (e.stem_form, str(e.require))
        info = (str(e.feature_overrides), tuple(sorted(e.set_conditions)))
        if key in seen and seen[key] != info:
            add("DUPLICATE_STEM_CONFLICT", "error",
                f"stem {e.stem_form} listed twice with different features or conditions")
        seen.setdefault(key, info)

    rats = {e.rationality for e in entries}
    if len(rats) > 1:
        add("RATIONALITY_MISMATCH", "warning", f"stems disagree: {' '.join(sorted(rats))}")
    plural = any(s.endswith("p") for e in entries for s, _ in _slots_of(e))
    if entries[0].pos == "noun" and plural and rats == {"n/a"}:
        add("RATIONALITY_UNSET", "warning", "plural noun without rationality")

    for e in entries:
        if not e.root:
            continue
        derived = derive_pattern(e.stem_form, e.root)
        if derived is None:
            add("NO_PATTERN", "warning", f"root {'.'.join(e.root)} not found in {e.stem_form}")
        elif e.pattern and e.pattern != derived:
            add("PATTERN_MISMATCH", "warning", f"{e.stem_form}: listed {e.pattern}, derived {derived}")

    if classify_paradigm(entries, paradigms) is None:
        sig, count, _ = lexeme_signature(entries)
        add("OUT_OF_NORM", "warning",
            f"no paradigm class for {' '.join(sorted(sig))} with {count} stem(s)")
    return issues


def qa_report(specs, paradigms=None) -> list:
    """(lexeme id, paradigm id, issues) for every lexeme, in lemma order."""
    paradigms = default_paradigms() if paradigms is None else paradigms
    out = []
    for lexeme_id, entries in sorted(specs.lexemes.items()):
        out.append((lexeme_id, classify_paradigm(entries, paradigms),
                    wellformedness(entries, specs.lexicon, paradigms)))
    return out
