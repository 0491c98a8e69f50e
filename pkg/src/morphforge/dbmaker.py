"""Offline compiler from spec sheets to the six-table database.

Every order line is expanded into three sides: complex prefixes (proclitic
sequences), stems (stem plus buffer) and complex suffixes (suffix plus
enclitic). Requirements that a side can satisfy on its own are discharged
there. What remains is a residual requirement aimed at exactly one other
side, and the category of a complex morph is a hash of everything the
pairwise tables need to know about it: its side, the labels it exports to
other sides, its residual requirements and the order lines it lives on.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from pathlib import Path

from .core import (
    CLITIC_KEYS, STEM_CLASS, ConditionExpr, FeatureBundle, SpecError, Term,
)
from .rewrite import RewriteRule
from .specio import SpecSet, validate_specs
from .translit import dediac, fold

DB_VERSION = "morphforge-db-1"
SIDES = ("prefix", "stem", "suffix")
_CAT_LETTER = {"prefix": "P", "stem": "S", "suffix": "X"}
_EMPTY = "_"


def member_id(class_id: str, morpheme_id: str, index: int) -> str:
    return f"{class_id}{morpheme_id}.{index}"


def _is_inert(allo) -> bool:
    # a "nothing" allomorph that contributes nothing at all; dropping it
    # lets the same clitic sequence from two order lines compile to one row
    return (not allo.form and not allo.bw_segment and allo.features.is_empty()
            and not allo.set_conditions and not allo.require.terms)


def _pieces(allo) -> list:
    if allo.bw_segment:
        return allo.bw_pieces()
    if allo.form:
        return [(allo.form, "")]
    return []


def _overlay(bundles) -> FeatureBundle:
    values = {}
    for bundle in bundles:
        for key, value in bundle.items():
            if key in values and values[key] != value:
                raise SpecError(f"conflicting values for feature {key}: "
                                f"{values[key]!r} and {value!r}")
            values[key] = value
    return FeatureBundle(**values)


@dataclass(frozen=True)
class ComplexMorph:
    side: str
    surface_diac: str
    surface_key: str
    category: str
    features: FeatureBundle
    bw_fragment: str
    members: tuple = ()          # (member id, form) of every non-inert member
    residual: tuple = ()         # (target side, Term)
    exported_sets: frozenset = frozenset()
    lines: frozenset = frozenset()
    lemma: str = ""
    gloss: str = ""
    root: str = ""
    pattern: str = ""

    @property
    def residual_require(self) -> ConditionExpr:
        return ConditionExpr(tuple(t for _, t in self.residual))

    def pieces(self) -> list:
        """(form, tag) pairs; an empty tag marks an untagged buffer piece."""
        if not self.bw_fragment:
            return []
        return [tuple(p.partition("/")[::2]) for p in self.bw_fragment.split("+")]

    @property
    def has_clitic(self) -> bool:
        return any(getattr(self.features, k) not in (None, "0") for k in CLITIC_KEYS)


def assign_category(cm: ComplexMorph) -> str:
    """Hash-stable token for the condition signature of a complex morph."""
    residual = " ".join(f"{side}:{term}" for side, term in cm.residual)
    signature = "|".join([
        cm.side,
        " ".join(sorted(cm.exported_sets)),
        residual,
        " ".join(sorted(cm.lines)),
    ])
    digest = hashlib.sha1(signature.encode("utf-8")).hexdigest()[:10]
    return f"{_CAT_LETTER[cm.side]}_{digest}"


@dataclass
class MorphDB:
    prefixes: dict
    stems: dict
    suffixes: dict
    table_ab: frozenset
    table_bc: frozenset
    table_ac: frozenset
    header: dict = field(default_factory=dict)
    rewrite_rules: tuple = ()

    def __post_init__(self):
        self._ab = defaultdict(set)
        self._bc = defaultdict(set)
        for p, s in self.table_ab:
            self._ab[s].add(p)
        for s, x in self.table_bc:
            self._bc[s].add(x)
        self._by_lemma = defaultdict(list)
        for cms in self.stems.values():
            for cm in cms:
                self._by_lemma[cm.lemma].append(cm)
        self._by_cat = {}
        self._folded = {}

    @property
    def max_prefix(self) -> int:
        return int(self.header.get("flags", {}).get("maxprefix", 0))

    @property
    def max_suffix(self) -> int:
        return int(self.header.get("flags", {}).get("maxsuffix", 0))

    def entries(self, side: str) -> list:
        table = self._table(side)
        return [cm for key in sorted(table) for cm in table[key]]

    def _table(self, side):
        return {"prefix": self.prefixes, "stem": self.stems, "suffix": self.suffixes}[side]

    def lookup(self, side: str, key: str, folded: bool = False) -> list:
        """Complex morphs of ``side`` whose match key is ``key``."""
        if not folded:
            return self._table(side).get(key, [])
        if side not in self._folded:
            index = defaultdict(list)
            for k, cms in self._table(side).items():
                index[fold(k)].extend(cms)
            self._folded[side] = dict(index)
        return self._folded[side].get(fold(key), [])

    def by_category(self, side: str) -> dict:
        if side not in self._by_cat:
            index = defaultdict(list)
            for cm in self.entries(side):
                index[cm.category].append(cm)
            self._by_cat[side] = dict(index)
        return self._by_cat[side]

    def stems_of(self, lemma: str, pos: str = None) -> list:
        return [cm for cm in self._by_lemma.get(lemma, ())
                if pos is None or cm.features.pos == pos]

    def lemmas(self) -> list:
        return sorted(self._by_lemma)

    def prefix_cats_for(self, stem_cat: str) -> set:
        return self._ab.get(stem_cat, set())

    def suffix_cats_for(self, stem_cat: str) -> set:
        return self._bc.get(stem_cat, set())

    def valid(self, p: ComplexMorph, s: ComplexMorph, x: ComplexMorph) -> bool:
        return ((p.category, s.category) in self.table_ab
                and (s.category, x.category) in self.table_bc
                and (p.category, x.category) in self.table_ac)


def _stem_slot(specs: SpecSet) -> list:
    counter = Counter()
    slot = []
    for entry in specs.lexicon:
        lemma, pos = entry.lexeme_id
        k = counter[(lemma, pos)]
        counter[(lemma, pos)] += 1
        slot.append((member_id(STEM_CLASS, f"{lemma}#{pos}", k), entry.as_allomorph(), entry))
    return slot


def _class_slot(specs: SpecSet, cid: str) -> list:
    cls = specs.classes[cid]
    return [(member_id(cid, m.id, i), a, None)
            for m in cls.morphemes for i, a in enumerate(m.allomorphs)]


def _side_slots(specs, line, side, stem_slot):
    if side == "prefix":
        return [_class_slot(specs, c) for c in line.prefix_part]
    if side == "stem":
        return [stem_slot] + [_class_slot(specs, c) for c in line.stem_part[1:]]
    return [_class_slot(specs, c) for c in line.suffix_part]


def side_producers(specs: SpecSet) -> dict:
    """Labels each side can set, over all order lines."""
    out = {side: set() for side in SIDES}
    stem_slot = _stem_slot(specs)
    for line in specs.order_lines:
        for side in SIDES:
            for slot in _side_slots(specs, line, side, stem_slot):
                for _, allo, _ in slot:
                    out[side] |= allo.set_conditions
    return out


def _discharge(side, union, require_terms, producers):
    """Residual (side, Term) pairs, or None when the combination is dead."""
    residual = set()
    for term in require_terms:
        hit = term.labels & union
        if term.negated:
            if hit:
                return None
            for other in SIDES:
                if other == side:
                    continue
                labels = term.labels & producers[other]
                if labels:
                    residual.add((other, Term(frozenset(labels), True)))
            continue
        if hit:
            continue
        targets = [o for o in SIDES if o != side and term.labels & producers[o]]
        if not targets:
            return None
        if len(targets) > 1:
            spread = {o: sorted(term.labels & producers[o]) for o in targets}
            raise SpecError(
                f"requirement {term} on the {side} side is produced on both "
                f"{targets[0]} ({' '.join(spread[targets[0]])}) and "
                f"{targets[1]} ({' '.join(spread[targets[1]])}); "
                "not expressible with pairwise tables")
        target = targets[0]
        residual.add((target, Term(frozenset(term.labels & producers[target]))))
    return residual


def _build(side, combo, producers):
    union = set()
    terms = []
    for _, allo, _ in combo:
        union |= allo.set_conditions
        terms.extend(allo.require.terms)
    residual = _discharge(side, union, terms, producers)
    if residual is None:
        return None
    members = tuple((mid, allo.form) for mid, allo, _ in combo if not _is_inert(allo))
    pieces = [p for _, allo, _ in combo for p in _pieces(allo)]
    features = _overlay(allo.features for _, allo, _ in combo)
    diac = "".join(allo.form for _, allo, _ in combo)
    info = {}
    if side == "stem":
        entry = combo[0][2]
        info = dict(lemma=entry.lemma, gloss=entry.gloss,
                    root=".".join(entry.root), pattern=entry.pattern)
    return dict(
        side=side, members=members, union=frozenset(union),
        residual=tuple(sorted(residual, key=lambda r: (r[0], r[1].sort_key()))),
        features=features, diac=diac,
        bw="+".join(f"{f}/{t}" for f, t in pieces), info=info)


def compile(specs: SpecSet, check: bool = True) -> MorphDB:  # noqa: A001
    """Compile a spec set into a MorphDB.

    Raises SpecError when validation reports errors, when a requirement
    cannot be discharged through one pairwise table, or when the tables
    would admit a triple whose members share no order line.
    """
    if check:
        errors = [d for d in validate_specs(specs) if d.severity == "error"]
        if errors:
            raise SpecError("spec has errors:\n" + "\n".join(map(str, errors)))
    producers = side_producers(specs)
    stem_slot = _stem_slot(specs)

    built = {}
    for line in specs.order_lines:
        for side in SIDES:
            for combo in itertools.product(*_side_slots(specs, line, side, stem_slot)):
                item = _build(side, combo, producers)
                if item is None:
                    continue
                key = (side, item["members"])
                if key in built:
                    built[key]["lines"].add(line.id)
                else:
                    item["lines"] = {line.id}
                    built[key] = item

    vocab = {side: set() for side in SIDES}
    for item in built.values():
        for target, term in item["residual"]:
            vocab[target] |= term.labels

    tables = {"prefix": defaultdict(list), "stem": defaultdict(list), "suffix": defaultdict(list)}
    signatures = {}
    for key in sorted(built, key=lambda k: (k[0], k[1])):
        item = built[key]
        cm = ComplexMorph(
            side=item["side"], surface_diac=item["diac"], surface_key=dediac(item["diac"]),
            category="", features=item["features"], bw_fragment=item["bw"],
            members=item["members"], residual=item["residual"],
            exported_sets=item["union"] & vocab[item["side"]],
            lines=frozenset(item["lines"]), **item["info"])
        cat = assign_category(cm)
        sig = (cm.side, cm.exported_sets, cm.residual, cm.lines)
        if signatures.setdefault(cat, sig) != sig:
            raise SpecError(f"category hash collision on {cat}")
        cm = replace(cm, category=cat)
        tables[cm.side][cm.surface_key].append(cm)

    cats = {side: {} for side in SIDES}
    for cat, (side, exported, residual, lines) in signatures.items():
        cats[side][cat] = (exported, residual, lines)

    ab = _pair_table(cats, "prefix", "stem")
    bc = _pair_table(cats, "stem", "suffix")
    ac = _pair_table(cats, "prefix", "suffix")
    _check_triples(cats, ab, bc, ac)

    def longest(table):
        return max((len(k) for k in table), default=0)

    header = {"version": DB_VERSION, "flags": {
        "maxprefix": str(longest(tables["prefix"])),
        "maxsuffix": str(longest(tables["suffix"])),
    }}
    return MorphDB(
        prefixes={k: _sorted_cms(v) for k, v in tables["prefix"].items()},
        stems={k: _sorted_cms(v) for k, v in tables["stem"].items()},
        suffixes={k: _sorted_cms(v) for k, v in tables["suffix"].items()},
        table_ab=frozenset(ab), table_bc=frozenset(bc), table_ac=frozenset(ac),
        header=header, rewrite_rules=tuple(specs.rewrite_rules))


def _sorted_cms(cms):
    return sorted(cms, key=lambda c: _row(c))


def _compatible(a_side, a, b_side, b) -> bool:
    exp_a, res_a, lines_a = a
    exp_b, res_b, lines_b = b
    if not lines_a & lines_b:
        return False
    return (all(t.holds(exp_b) for s, t in res_a if s == b_side)
            and all(t.holds(exp_a) for s, t in res_b if s == a_side))


def _pair_table(cats, left, right) -> set:
    return {(ca, cb)
            for ca, a in cats[left].items()
            for cb, b in cats[right].items()
            if _compatible(left, a, right, b)}


def _check_triples(cats, ab, bc, ac):
    by_stem_p = defaultdict(set)
    by_stem_x = defaultdict(set)
    for p, s in ab:
        by_stem_p[s].add(p)
    for s, x in bc:
        by_stem_x[s].add(x)
    for s, ps in by_stem_p.items():
        s_lines = cats["stem"][s][2]
        for p in ps:
            p_lines = cats["prefix"][p][2] & s_lines
            for x in by_stem_x.get(s, ()):
                if (p, x) in ac and not p_lines & cats["suffix"][x][2]:
                    raise SpecError(
                        f"categories {p} {s} {x} are pairwise compatible but share "
                        "no order line; split the classes into line-specific ones")


# ---------------------------------------------------------------- statistics

@dataclass
class StatsReport:
    lemmas: int
    lexemes: int
    spec_stems: int
    db_stems: int
    allomorphs_per_class: dict
    complex_prefixes: int
    complex_suffixes: int
    categories: dict
    analyses_with_clitics: int
    analyses_without_clitics: int

    def rows(self) -> list:
        out = [("lemmas", self.lemmas), ("lexemes", self.lexemes),
               ("spec_stems", self.spec_stems), ("db_stems", self.db_stems)]
        out += [(f"allomorphs {cid}", n) for cid, n in sorted(self.allomorphs_per_class.items())]
        out += [("complex_prefixes", self.complex_prefixes),
                ("complex_suffixes", self.complex_suffixes)]
        out += [(f"categories {side}", n) for side, n in self.categories.items()]
        out += [("analyses_with_clitics", self.analyses_with_clitics),
                ("analyses_without_clitics", self.analyses_without_clitics)]
        return out


def count_analyses(db: MorphDB, clitics: bool = True) -> int:
    """Number of admitted (prefix, stem, suffix) triples, by category arithmetic."""
    def tally(side):
        return Counter(cm.category for cm in db.entries(side)
                       if clitics or not cm.has_clitic)
    pc, sc, xc = tally("prefix"), tally("stem"), tally("suffix")
    total = 0
    for s, n_s in sc.items():
        xs = [x for x in db.suffix_cats_for(s) if x in xc]
        for p in db.prefix_cats_for(s):
            if p not in pc:
                continue
            total += n_s * pc[p] * sum(xc[x] for x in xs if (p, x) in db.table_ac)
    return total


def stats(db: MorphDB, specs: SpecSet = None) -> StatsReport:
    stems = db.entries("stem")
    per_class = {}
    if specs is not None:
        per_class = {cid: len(c.allomorphs) for cid, c in specs.classes.items()}
        lemmas = len({e.lemma for e in specs.lexicon})
        lexemes = len(specs.lexemes)
        spec_stems = len(specs.lexicon)
    else:
        lemmas = len({cm.lemma for cm in stems})
        lexemes = len({(cm.lemma, cm.features.pos) for cm in stems})
        spec_stems = len({(cm.members[0][0]) for cm in stems})
    return StatsReport(
        lemmas=lemmas, lexemes=lexemes, spec_stems=spec_stems, db_stems=len(stems),
        allomorphs_per_class=per_class,
        complex_prefixes=len(db.entries("prefix")),
        complex_suffixes=len(db.entries("suffix")),
        categories={side: len({cm.category for cm in db.entries(side)}) for side in SIDES},
        analyses_with_clitics=count_analyses(db, True),
        analyses_without_clitics=count_analyses(db, False),
    )


# ---------------------------------------------------------------- file format

def _cell(value: str) -> str:
    return value if value else _EMPTY


def _uncell(value: str) -> str:
    return "" if value == _EMPTY else value


def _members_cell(members) -> str:
    return _cell(" ".join(f"{mid}={form}" for mid, form in members))


def _parse_members(text: str) -> tuple:
    text = _uncell(text)
    return tuple(tuple(m.rpartition("=")[::2]) for m in text.split()) if text else ()


def _row(cm: ComplexMorph) -> str:
    cells = [cm.surface_key, cm.surface_diac, cm.category, cm.bw_fragment, str(cm.features)]
    if cm.side == "stem":
        cells += [cm.lemma, cm.gloss, cm.root, cm.pattern]
    cells.append(_members_cell(cm.members))
    return "\t".join(_cell(c) if i else c for i, c in enumerate(cells))


def dumps_db(db: MorphDB) -> str:
    flags = " ".join(f"{k}={v}" for k, v in sorted(db.header.get("flags", {}).items()))
    out = ["###HEADER###", f"{db.header.get('version', DB_VERSION)}\t{flags}",
           "###REWRITE###"]
    for r in db.rewrite_rules:
        out.append("\t".join([r.id, r.stage, r.match, r.replacement,
                              "true" if r.bidirectional else "false"]))
    for name, side in (("PREFIXES", "prefix"), ("STEMS", "stem"), ("SUFFIXES", "suffix")):
        out.append(f"###{name}###")
        out.extend(sorted(_row(cm) for cm in db.entries(side)))
    for name, table in (("AB", db.table_ab), ("BC", db.table_bc), ("AC", db.table_ac)):
        out.append(f"###TABLE {name}###")
        out.extend(sorted(f"{a}\t{b}" for a, b in table))
    return "\n".join(out) + "\n"


def write_db(db: MorphDB, path) -> None:
    Path(path).write_text(dumps_db(db), encoding="utf-8")


def loads_db(text: str) -> MorphDB:
    sections = defaultdict(list)
    current = None
    for line in text.split("\n"):
        if not line:
            continue
        if line.startswith("###") and line.endswith("###"):
            current = line.strip("#")
            continue
        if current is None:
            raise ValueError("DB file does not start with a section marker")
        sections[current].append(line.split("\t"))

    if not sections.get("HEADER"):
        raise ValueError("DB file has no header")
    version, _, flag_text = "\t".join(sections["HEADER"][0]).partition("\t")
    if version != DB_VERSION:
        raise ValueError(f"unsupported DB version {version!r}")
    flags = dict(f.split("=", 1) for f in flag_text.split())

    rules = tuple(RewriteRule(r[0], r[1], r[2], r[3], r[4] == "true")
                  for r in sections.get("REWRITE", []))

    def side_table(name, side):
        table = defaultdict(list)
        for cells in sections.get(name, []):
            key, diac, cat, bw, feats = cells[:5]
            extra = {}
            if side == "stem":
                lemma, gloss, root, pattern = cells[5:9]
                extra = dict(lemma=lemma, gloss=_uncell(gloss), root=_uncell(root),
                             pattern=_uncell(pattern))
                members = cells[9]
            else:
                members = cells[5]
            table[key].append(ComplexMorph(
                side=side, surface_diac=_uncell(diac), surface_key=key, category=cat,
                features=FeatureBundle.parse(_uncell(feats)), bw_fragment=_uncell(bw),
                members=_parse_members(members), **extra))
        return dict(table)

    def pairs(name):
        return frozenset(tuple(c) for c in sections.get(name, []))

    return MorphDB(
        prefixes=side_table("PREFIXES", "prefix"),
        stems=side_table("STEMS", "stem"),
        suffixes=side_table("SUFFIXES", "suffix"),
        table_ab=pairs("TABLE AB"), table_bc=pairs("TABLE BC"), table_ac=pairs("TABLE AC"),
        header={"version": version, "flags": flags}, rewrite_rules=rules)


def read_db(path) -> MorphDB:
    return loads_db(Path(path).read_text(encoding="utf-8"))
