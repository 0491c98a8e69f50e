"""Domain types and the condition/feature algebra."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

FEATURE_KEYS = (
    "pos", "gender", "number", "case", "state", "form_gender", "form_number",
    "prc3", "prc2", "prc1", "prc0", "enc0",
)
CLITIC_KEYS = ("prc3", "prc2", "prc1", "prc0", "enc0")
NO_CLITIC = "0"

FEATURE_VALUES = {
    "pos": {"noun", "adj", "adj_comp"},
    "gender": {"m", "f"},
    "number": {"s", "d", "p"},
    "case": {"n", "a", "g", "u"},
    "state": {"i", "d", "c", "u"},
    "form_gender": {"M", "F"},
    "form_number": {"S", "D", "P"},
}

# suffix form classes; a stem's positive requirement over these labels
# tells which suffix sets it combines with
FORM_LABELS = ("MS", "FS", "MD", "FD", "MP", "FP")


class SpecError(Exception):
    """Raised for malformed specifications (bad `else`, clashing clitics...)."""


@dataclass(frozen=True)
class FeatureBundle:
    pos: Optional[str] = None
    gender: Optional[str] = None
    number: Optional[str] = None
    case: Optional[str] = None
    state: Optional[str] = None
    form_gender: Optional[str] = None
    form_number: Optional[str] = None
    prc3: Optional[str] = None
    prc2: Optional[str] = None
    prc1: Optional[str] = None
    prc0: Optional[str] = None
    enc0: Optional[str] = None

    def __post_init__(self):
        for key, allowed in FEATURE_VALUES.items():
            value = getattr(self, key)
            if value is not None and value not in allowed:
                raise ValueError(f"invalid value {value!r} for feature {key!r}")

    @classmethod
    def parse(cls, text: str) -> "FeatureBundle":
        """Parse space-separated ``key:value`` pairs; ``_`` or blank is empty."""
        values = {}
        for item in (text or "").split():
            if item == "_":
                continue
            key, sep, value = item.partition(":")
            if not sep or key not in FEATURE_KEYS:
                raise ValueError(f"malformed feature {item!r}")
            if key in values and values[key] != value:
                raise ValueError(f"feature {key!r} given twice")
            values[key] = value
        return cls(**values)

    @classmethod
    def from_pairs(cls, pairs: Iterable[str]) -> "FeatureBundle":
        return cls.parse(" ".join(pairs))

    def items(self):
        for key in FEATURE_KEYS:
            value = getattr(self, key)
            if value is not None:
                yield key, value

    def __str__(self) -> str:
        return " ".join(f"{k}:{v}" for k, v in self.items())

    def update(self, other: "FeatureBundle") -> "FeatureBundle":
        """Overlay the set fields of ``other`` on this bundle."""
        return replace(self, **dict(other.items()))

    def unifies(self, request: "FeatureBundle") -> bool:
        """True when every field set in ``request`` has the same value here."""
        return all(getattr(self, k) == v for k, v in request.items())

    def is_empty(self) -> bool:
        return not any(True for _ in self.items())


@dataclass(frozen=True)
class ConditionLabel:
    name: str
    description: str = ""
    scope: str = ""


@dataclass(frozen=True)
class Term:
    """A disjunction of labels, optionally negated."""

    labels: frozenset
    negated: bool = False

    def holds(self, label_set) -> bool:
        hit = not self.labels.isdisjoint(label_set)
        return not hit if self.negated else hit

    def __str__(self) -> str:
        body = "|".join(sorted(self.labels))
        return ("!" if self.negated else "") + body

    def sort_key(self):
        return (self.negated, tuple(sorted(self.labels)))


ELSE = "else"


@dataclass(frozen=True)
class ConditionExpr:
    """Conjunction of terms. ``else`` placeholders are kept as the string ELSE
    until expand_else replaces them."""

    terms: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "ConditionExpr":
        terms = []
        for tok in (text or "").split():
            if tok == "_":
                continue
            if tok == ELSE:
                terms.append(ELSE)
                continue
            negated = tok.startswith("!")
            body = tok[1:] if negated else tok
            labels = [lab for lab in body.split("|")]
            if not body or any(not lab or lab == ELSE for lab in labels):
                raise ValueError(f"malformed condition term {tok!r}")
            terms.append(Term(frozenset(labels), negated))
        return cls(tuple(terms))

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.terms)

    @property
    def has_else(self) -> bool:
        return any(t == ELSE for t in self.terms)

    def labels(self) -> frozenset:
        out = set()
        for t in self.terms:
            if t != ELSE:
                out |= t.labels
        return frozenset(out)

    def positive_labels(self) -> frozenset:
        out = set()
        for t in self.terms:
            if t != ELSE and not t.negated:
                out |= t.labels
        return frozenset(out)


def satisfies(label_set, expr: ConditionExpr) -> bool:
    """Evaluate ``expr`` against the set of active labels."""
    if expr.has_else:
        raise SpecError("unexpanded 'else' in condition expression")
    return all(term.holds(label_set) for term in expr.terms)


@dataclass(frozen=True)
class Allomorph:
    morpheme_id: str
    class_id: str
    form: str
    features: FeatureBundle = field(default_factory=FeatureBundle)
    set_conditions: frozenset = frozenset()
    require: ConditionExpr = field(default_factory=ConditionExpr)
    bw_segment: str = ""

    def bw_pieces(self):
        """(form, tag) pairs of the BW segment."""
        if not self.bw_segment:
            return []
        out = []
        for seg in self.bw_segment.split("+"):
            form, _, tag = seg.partition("/")
            out.append((form, tag))
        return out


@dataclass(frozen=True)
class Morpheme:
    id: str
    class_id: str
    allomorphs: tuple


CLASS_KINDS = ("proclitic", "stem", "buffer", "suffix", "enclitic")
STEM_CLASS = "[STEM]"


@dataclass(frozen=True)
class MorphClass:
    id: str
    kind: str
    morphemes: tuple = ()

    @property
    def allomorphs(self):
        return [a for m in self.morphemes for a in m.allomorphs]


@dataclass(frozen=True)
class OrderLine:
    id: str
    classes: tuple

    @property
    def prefix_part(self):
        i = self.classes.index(STEM_CLASS)
        return self.classes[:i]

    @property
    def stem_part(self):
        i = self.classes.index(STEM_CLASS)
        j = i + 1
        while j < len(self.classes) and is_buffer_class(self.classes[j]):
            j += 1
        return self.classes[i:j]

    @property
    def suffix_part(self):
        return self.classes[len(self.prefix_part) + len(self.stem_part):]


def is_buffer_class(class_id: str) -> bool:
    return class_id.startswith("[BUFFER")


POS_TAGS = {"noun": "NOUN", "adj": "ADJ", "adj_comp": "ADJ_COMP"}


@dataclass(frozen=True)
class LexiconEntry:
    lemma: str
    stem_form: str
    gloss: str = ""
    pos: str = "noun"
    root: tuple = ()
    pattern: str = ""
    rationality: str = "n/a"
    feature_overrides: FeatureBundle = field(default_factory=FeatureBundle)
    set_conditions: frozenset = frozenset()
    require: ConditionExpr = field(default_factory=ConditionExpr)

    @property
    def lexeme_id(self):
        return (self.lemma, self.pos)

    def as_allomorph(self) -> Allomorph:
        feats = self.feature_overrides.update(FeatureBundle(pos=self.pos))
        return Allomorph(
            morpheme_id=f"{self.lemma}#{self.pos}",
            class_id=STEM_CLASS,
            form=self.stem_form,
            features=feats,
            set_conditions=self.set_conditions,
            require=self.require,
            bw_segment=f"{self.stem_form}/{POS_TAGS[self.pos]}",
        )


@dataclass(frozen=True)
class Analysis:
    diac: str
    lemma: str
    bw_tag: str
    features: FeatureBundle
    # ((prefix (id, form) pairs), (stem id, form), (buffer id, form), (suffix pairs))
    segmentation: tuple = ((), ("", ""), ("", ""), ())
    gloss: str = ""
    root: str = ""
    pattern: str = ""

    @property
    def pos(self):
        return self.features.pos

    def key(self):
        return (self.lemma, self.diac, self.bw_tag)

    def sort_key(self):
        return (self.diac, self.bw_tag, str(self.features), self.lemma)

    def to_row(self) -> list:
        seg = segmentation_string(self.segmentation)
        return [self.diac, self.lemma, self.bw_tag, str(self.features), seg,
                self.gloss, self.root, self.pattern]


def segmentation_string(segmentation) -> str:
    """``pre+pre+stem[buffer]+suf`` with empty pieces left out."""
    pre, stem, buf, suf = segmentation
    body = stem[1] + (f"[{buf[1]}]" if buf[1] else "")
    parts = [f for _, f in pre if f] + [body] + [f for _, f in suf if f]
    return "+".join(parts)


def expand_else(morpheme: Morpheme) -> Morpheme:
    """Replace ``else`` markers by negated terms.

    Require expressions are read as columns: term k of each allomorph. An
    ``else`` in column k negates the disjunction of every label found in
    column k of the sibling allomorphs whose columns 0..k-1 are identical to
    its own.
    """
    allos = morpheme.allomorphs
    if not any(a.require.has_else for a in allos):
        return morpheme
    new = []
    for a in allos:
        terms = list(a.require.terms)
        if terms.count(ELSE) > 1:
            raise SpecError(f"{morpheme.id}: more than one 'else' in one allomorph")
        if ELSE not in terms:
            new.append(a)
            continue
        k = terms.index(ELSE)
        head = tuple(terms[:k])
        labels = set()
        for sib in allos:
            if sib is a:
                continue
            st = sib.require.terms
            if len(st) > k and tuple(st[:k]) == head and st[k] != ELSE:
                labels |= st[k].labels
        if not labels:
            raise SpecError(
                f"{morpheme.id}: 'else' with no sibling conditions in column {k}")
        terms[k] = Term(frozenset(labels), negated=True)
        new.append(replace(a, require=ConditionExpr(tuple(terms))))
    return replace(morpheme, allomorphs=tuple(new))


def merge_features(stem: FeatureBundle, prefixes=(), suffixes=()) -> FeatureBundle:
    """Combine the feature contributions of one word.

    Gender/number come from the stem when it overrides them, else from the
    suffixes; case, state and form features always come from the suffixes;
    clitic slots from the clitics; POS from the stem. Unfilled clitic slots
    become NO_CLITIC.
    """
    clitics = {}
    for contrib in list(prefixes) + list(suffixes):
        for key in CLITIC_KEYS:
            value = getattr(contrib, key)
            if value is None or value == NO_CLITIC:
                continue
            if key in clitics:
                raise SpecError(f"two contributors for clitic slot {key}")
            clitics[key] = value
    suffix_vals = {}
    for contrib in suffixes:
        for key in ("gender", "number", "case", "state", "form_gender", "form_number"):
            value = getattr(contrib, key)
            if value is not None:
                suffix_vals[key] = value
    out = dict(suffix_vals)
    for key in ("gender", "number"):
        if getattr(stem, key) is not None:
            out[key] = getattr(stem, key)
    out["pos"] = stem.pos
    for key in CLITIC_KEYS:
        out[key] = clitics.get(key, NO_CLITIC)
    return FeatureBundle(**out)

