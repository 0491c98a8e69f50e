"""Loading, validating and writing the tab-separated specification sheets.

A spec directory holds ``order.tsv``, ``morph.tsv``, ``lexicon.tsv``,
``conditions.tsv`` and optionally ``rewrite.tsv``.
"""

from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass, field, replace
from pathlib import Path

from .core import (
    STEM_CLASS, ConditionExpr, ConditionLabel, FeatureBundle, LexiconEntry,
    Allomorph, Morpheme, MorphClass, OrderLine, SpecError, expand_else,
    is_buffer_class,
)
from .rewrite import load_rules

NONE_FORM = "NONE"
SCOPES = {
    "stem↔suffix": frozenset({"stem", "suffix"}),
    "prefix↔stem": frozenset({"prefix", "stem"}),
    "prefix↔suffix": frozenset({"prefix", "suffix"}),
    "suffix-internal": frozenset({"suffix"}),
    "stem-internal": frozenset({"stem"}),
    "prefix-internal": frozenset({"prefix"}),
}
SIDE_OF_KIND = {
    "proclitic": "prefix", "stem": "stem", "buffer": "stem",
    "suffix": "suffix", "enclitic": "suffix",
}
RATIONALITY = ("rational", "irrational", "n/a")

ORDER_COLS = ["LINE_ID", "CLASS_SEQUENCE"]
MORPH_COLS = ["CLASS", "MORPHEME", "FORM", "BW_SEG", "FEATURES", "SET", "REQUIRE"]
LEXICON_COLS = ["LEMMA", "FORM", "GLOSS", "POS", "ROOT", "PATTERN", "RAT",
                "FEATURES", "SET", "REQUIRE"]
CONDITION_COLS = ["LABEL", "DESCRIPTION", "SCOPE"]


@dataclass(frozen=True)
class SpecDiagnostic:
    severity: str
    location: tuple
    message: str

    def __str__(self):
        file, row = self.location
        return f"{self.severity}\t{file}:{row}\t{self.message}"


class SpecLoadError(SpecError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        errors = [d for d in self.diagnostics if d.severity == "error"]
        super().__init__(f"{len(errors)} error(s) in specs; first: {errors[0]}")


@dataclass
class SpecSet:
    order_lines: list
    classes: dict
    lexicon: list
    condition_index: dict
    rewrite_rules: tuple = ()
    macros: dict = field(default_factory=dict)
    locations: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    @property
    def lexemes(self) -> dict:
        out = defaultdict(list)
        for entry in self.lexicon:
            out[entry.lexeme_id].append(entry)
        return dict(out)

    @property
    def buffers(self) -> list:
        return [a for c in self.classes.values() if c.kind == "buffer"
                for a in c.allomorphs if a.form]

    def classes_of_kind(self, kind):
        return [c for c in self.classes.values() if c.kind == kind]

    def location(self, key):
        return self.locations.get(key, ("?", 0))


def _clean(value):
    value = (value or "").strip()
    return "" if value == "_" else value


def _read_tsv(path, columns, diags):
    """Rows of a TSV as (line number, dict); header row is line 1."""
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        header = None
        for lineno, raw in enumerate(reader, start=1):
            if not raw or not "".join(raw).strip():
                continue
            if header is None:
                header = [h.strip() for h in raw]
                missing = [c for c in columns if c not in header]
                if missing:
                    diags.append(SpecDiagnostic(
                        "error", (path.name, lineno), f"missing columns {missing}"))
                    return []
                continue
            if len(raw) > len(header):
                diags.append(SpecDiagnostic(
                    "error", (path.name, lineno), "more cells than header columns"))
                continue
            raw = raw + [""] * (len(header) - len(raw))
            rows.append((lineno, dict(zip(header, raw))))
    return rows


def _classify_kinds(order_lines):
    kinds = {STEM_CLASS: "stem"}
    for line in order_lines:
        if STEM_CLASS not in line.classes:
            continue
        for cid in line.prefix_part:
            kinds.setdefault(cid, "proclitic")
        for cid in line.stem_part[1:]:
            kinds.setdefault(cid, "buffer")
        for i, cid in enumerate(line.suffix_part):
            kinds.setdefault(cid, "suffix" if i == 0 else "enclitic")
    return kinds


def load_specs(path, strict: bool = True) -> SpecSet:
    """Load a spec directory (or an explicit mapping of sheet name to file).

    With ``strict`` any error diagnostic raises SpecLoadError; otherwise the
    returned SpecSet carries the diagnostics and best-effort content.
    """
    if isinstance(path, dict):
        files = {k: Path(v) for k, v in path.items()}
    else:
        base = Path(path)
        files = {n: base / f"{n}.tsv" for n in
                 ("order", "morph", "lexicon", "conditions", "rewrite")}
    diags = []
    for name in ("order", "morph", "lexicon", "conditions"):
        if not files.get(name) or not files[name].exists():
            raise FileNotFoundError(f"missing spec sheet {name}.tsv")

    locations = {}

    conditions = {}
    for lineno, row in _read_tsv(files["conditions"], CONDITION_COLS, diags):
        name = _clean(row["LABEL"])
        loc = (files["conditions"].name, lineno)
        if not name:
            diags.append(SpecDiagnostic("error", loc, "empty condition label"))
            continue
        if name in conditions:
            diags.append(SpecDiagnostic("error", loc, f"duplicate label {name}"))
            continue
        scope = _clean(row.get("SCOPE"))
        if scope and scope not in SCOPES:
            diags.append(SpecDiagnostic("error", loc, f"unknown scope {scope!r}"))
        conditions[name] = ConditionLabel(name, _clean(row["DESCRIPTION"]), scope)
        locations[("label", name)] = loc

    order_lines = []
    order_rows = _read_tsv(files["order"], ORDER_COLS, diags)
    for lineno, row in order_rows:
        loc = (files["order"].name, lineno)
        seq = tuple(_clean(row["CLASS_SEQUENCE"]).split())
        line = OrderLine(_clean(row["LINE_ID"]), seq)
        if seq.count(STEM_CLASS) != 1:
            diags.append(SpecDiagnostic(
                "error", loc, f"order line {line.id} must contain {STEM_CLASS} once"))
            continue
        order_lines.append(line)
        locations[("line", line.id)] = loc

    kinds = _classify_kinds(order_lines)

    def check_labels(labels, loc):
        ok = True
        for lab in sorted(labels):
            if lab not in conditions:
                diags.append(SpecDiagnostic("error", loc, f"unknown condition label {lab!r}"))
                ok = False
        return ok

    def parse_common(row, loc):
        try:
            feats = FeatureBundle.parse(_clean(row["FEATURES"]))
        except ValueError as exc:
            diags.append(SpecDiagnostic("error", loc, str(exc)))
            feats = None
        sets = frozenset(_clean(row["SET"]).split())
        try:
            req = ConditionExpr.parse(_clean(row["REQUIRE"]))
        except ValueError as exc:
            diags.append(SpecDiagnostic("error", loc, str(exc)))
            req = None
        check_labels(sets, loc)
        if req is not None:
            check_labels(req.labels(), loc)
        return feats, sets, req

    morphemes = defaultdict(list)      # (class, morpheme) -> allomorphs
    morpheme_order = []
    for lineno, row in _read_tsv(files["morph"], MORPH_COLS, diags):
        loc = (files["morph"].name, lineno)
        cid, mid = _clean(row["CLASS"]), _clean(row["MORPHEME"])
        if not cid or not mid:
            diags.append(SpecDiagnostic("error", loc, "empty CLASS or MORPHEME"))
            continue
        form = _clean(row["FORM"])
        form = "" if form == NONE_FORM else form
        feats, sets, req = parse_common(row, loc)
        if feats is None or req is None:
            continue
        bw = _clean(row["BW_SEG"])
        allo = Allomorph(mid, cid, form, feats, sets, req, bw)
        bw_form = "".join(f for f, _ in allo.bw_pieces())
        if bw and bw_form != form:
            diags.append(SpecDiagnostic(
                "error", loc, f"BW segment forms {bw_form!r} do not spell {form!r}"))
        if (cid, mid) not in morphemes:
            morpheme_order.append((cid, mid))
        locations[("allomorph", cid, mid, len(morphemes[(cid, mid)]))] = loc
        morphemes[(cid, mid)].append(allo)

    classes = {}
    by_class = defaultdict(list)
    for cid, mid in morpheme_order:
        morph = Morpheme(mid, cid, tuple(morphemes[(cid, mid)]))
        try:
            morph = expand_else(morph)
        except SpecError as exc:
            loc = locations[("allomorph", cid, mid, 0)]
            diags.append(SpecDiagnostic("error", loc, str(exc)))
            continue
        by_class[cid].append(morph)
    for cid, morphs in by_class.items():
        kind = kinds.get(cid)
        if kind is None:
            kind = "buffer" if is_buffer_class(cid) else "suffix"
        classes[cid] = MorphClass(cid, kind, tuple(morphs))

    for line in order_lines:
        loc = locations[("line", line.id)]
        for cid in line.classes:
            if cid != STEM_CLASS and cid not in classes:
                diags.append(SpecDiagnostic(
                    "error", loc, f"order line {line.id} names unknown class {cid}"))

    lexicon = []
    seen = {}
    for lineno, row in _read_tsv(files["lexicon"], LEXICON_COLS, diags):
        loc = (files["lexicon"].name, lineno)
        lemma, form = _clean(row["LEMMA"]), _clean(row["FORM"])
        pos = _clean(row["POS"]) or "noun"
        if not lemma or not form:
            diags.append(SpecDiagnostic("error", loc, "empty LEMMA or FORM"))
            continue
        feats, sets, req = parse_common(row, loc)
        if feats is None or req is None:
            continue
        if req.has_else:
            diags.append(SpecDiagnostic("error", loc, "'else' is not allowed in the lexicon"))
            continue
        rat = _clean(row["RAT"]) or "n/a"
        if rat not in RATIONALITY:
            diags.append(SpecDiagnostic("error", loc, f"unknown rationality {rat!r}"))
        try:
            FeatureBundle(pos=pos)
        except ValueError as exc:
            diags.append(SpecDiagnostic("error", loc, str(exc)))
            continue
        root = tuple(r for r in _clean(row["ROOT"]).split(".") if r)
        entry = LexiconEntry(
            lemma=lemma, stem_form=form, gloss=_clean(row["GLOSS"]), pos=pos,
            root=root, pattern=_clean(row["PATTERN"]), rationality=rat,
            feature_overrides=feats, set_conditions=sets, require=req)
        ident = (lemma, form, sets, str(req))
        if ident in seen:
            diags.append(SpecDiagnostic(
                "error", loc, f"duplicate stem {form!r} of {lemma!r} "
                f"(first at row {seen[ident]})"))
            continue
        seen[ident] = lineno
        locations[("stem", len(lexicon))] = loc
        lexicon.append(entry)

    rules, macros = (), {}
    if files.get("rewrite") and files["rewrite"].exists():
        try:
            rules, macros = load_rules(files["rewrite"])
        except (ValueError, KeyError) as exc:
            diags.append(SpecDiagnostic("error", (files["rewrite"].name, 0), str(exc)))

    specs = SpecSet(order_lines, classes, lexicon, conditions, rules, macros,
                    locations, diags)
    if strict and any(d.severity == "error" for d in diags):
        raise SpecLoadError(diags)
    return specs


def producers_by_line(specs: SpecSet) -> dict:
    """Map order line id to the set of labels some member of the line sets."""
    out = {}
    stem_sets = set()
    for entry in specs.lexicon:
        stem_sets |= entry.set_conditions
    for line in specs.order_lines:
        labels = set()
        for cid in line.classes:
            if cid == STEM_CLASS:
                labels |= stem_sets
            elif cid in specs.classes:
                for a in specs.classes[cid].allomorphs:
                    labels |= a.set_conditions
        out[line.id] = labels
    return out


def label_sides(specs: SpecSet) -> tuple:
    """(producer sides, consumer sides) per label, over classes in use."""
    produced = defaultdict(set)
    consumed = defaultdict(set)
    used = {cid for line in specs.order_lines for cid in line.classes}
    for cid in used:
        if cid == STEM_CLASS:
            members = [e.as_allomorph() for e in specs.lexicon]
            side = "stem"
        elif cid in specs.classes:
            members = specs.classes[cid].allomorphs
            side = SIDE_OF_KIND[specs.classes[cid].kind]
        else:
            continue
        for a in members:
            for lab in a.set_conditions:
                produced[lab].add(side)
            for lab in a.require.labels():
                consumed[lab].add(side)
    return produced, consumed


def _iter_members(specs):
    """(location key, line-independent member, class id) for every allomorph and stem."""
    for cid, cls in specs.classes.items():
        for m in cls.morphemes:
            for i, a in enumerate(m.allomorphs):
                yield ("allomorph", cid, m.id, i), a, cid
    for i, entry in enumerate(specs.lexicon):
        yield ("stem", i), entry.as_allomorph(), STEM_CLASS


def validate_specs(specs: SpecSet) -> list:
    """Consistency report over a loaded spec set."""
    diags = []
    sheet_loc = {"order": ("order.tsv", 1), "conditions": ("conditions.tsv", 1)}

    for line in specs.order_lines:
        loc = specs.location(("line", line.id))
        for cid in line.classes:
            if is_buffer_class(cid) and cid not in line.stem_part:
                diags.append(SpecDiagnostic(
                    "error", loc, f"buffer class {cid} not adjacent to the stem in {line.id}"))

    producers = producers_by_line(specs)
    lines_of = defaultdict(list)
    for line in specs.order_lines:
        for cid in line.classes:
            lines_of[cid].append(line.id)

    required_anywhere = set()
    set_anywhere = set()
    for key, allo, cid in _iter_members(specs):
        loc = specs.location(key)
        set_anywhere |= allo.set_conditions
        required_anywhere |= allo.require.labels()
        lines = lines_of.get(cid, [])
        if not lines:
            diags.append(SpecDiagnostic(
                "warning", loc, f"{cid} {allo.morpheme_id} is unreachable under every order line"))
            continue
        for term in allo.require.terms:
            if term.negated:
                continue
            live = [ln for ln in lines if term.labels & producers[ln]]
            if not live:
                diags.append(SpecDiagnostic(
                    "error", loc,
                    f"dead requirement {term} of {allo.morpheme_id}: never set in any order line"))
            else:
                for lab in sorted(term.labels):
                    if not any(lab in producers[ln] for ln in lines):
                        diags.append(SpecDiagnostic(
                            "warning", loc, f"label {lab} in {term} is never set"))

    for lab in sorted(set_anywhere - required_anywhere):
        diags.append(SpecDiagnostic(
            "warning", specs.location(("label", lab)), f"label {lab} is set but never required"))
    for lab in sorted(set(specs.condition_index) - set_anywhere - required_anywhere):
        diags.append(SpecDiagnostic(
            "warning", specs.location(("label", lab)), f"label {lab} is never used"))

    produced, consumed = label_sides(specs)
    for lab, cond in sorted(specs.condition_index.items()):
        if not cond.scope:
            continue
        sides = produced.get(lab, set()) | consumed.get(lab, set())
        extra = sides - SCOPES[cond.scope]
        if extra:
            diags.append(SpecDiagnostic(
                "error", specs.location(("label", lab)),
                f"label {lab} used on {sorted(extra)} outside its scope {cond.scope}"))
    del sheet_loc
    return diags


def _fmt(value):
    return value if value else "_"


def dump_specs(specs: SpecSet, outdir) -> None:
    """Write a spec set back to sheets (``else`` already expanded)."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    def write(name, header, rows):
        with open(outdir / name, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, delimiter="\t", quoting=csv.QUOTE_NONE,
                           escapechar=None, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)

    write("order.tsv", ORDER_COLS,
          [[ln.id, " ".join(ln.classes)] for ln in specs.order_lines])
    rows = []
    for cls in specs.classes.values():
        for m in cls.morphemes:
            for a in m.allomorphs:
                rows.append([cls.id, m.id, a.form or NONE_FORM, _fmt(a.bw_segment),
                             _fmt(str(a.features)), _fmt(" ".join(sorted(a.set_conditions))),
                             _fmt(str(a.require))])
    write("morph.tsv", MORPH_COLS, rows)
    write("lexicon.tsv", LEXICON_COLS, [
        [e.lemma, e.stem_form, _fmt(e.gloss), e.pos, _fmt(".".join(e.root)),
         _fmt(e.pattern), e.rationality, _fmt(str(e.feature_overrides)),
         _fmt(" ".join(sorted(e.set_conditions))), _fmt(str(e.require))]
        for e in specs.lexicon])
    write("conditions.tsv", CONDITION_COLS, [
        [c.name, _fmt(c.description), _fmt(c.scope)]
        for c in specs.condition_index.values()])
    if specs.rewrite_rules:
        with open(outdir / "rewrite.tsv", "w", encoding="utf-8") as fh:
            for name, body in specs.macros.items():
                fh.write(f"@define {name} {body}\n")
            fh.write("ID\tSTAGE\tMATCH\tREPLACEMENT\tBIDIRECTIONAL\n")
            for r in specs.rewrite_rules:
                match = r.match
                for name, body in specs.macros.items():
                    match = match.replace(body, "{" + name + "}")
                fh.write(f"{r.id}\t{r.stage}\t{match}\t{r.replacement}\t"
                         f"{'true' if r.bidirectional else 'false'}\n")


def spec_equal(a: SpecSet, b: SpecSet) -> bool:
    """Content equality ignoring row locations and diagnostics."""
    strip = lambda s: replace(s, locations={}, diagnostics=[])  # noqa: E731
    return strip(a) == strip(b)
