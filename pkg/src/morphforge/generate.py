"""Generation: all word forms of a lemma that match a partial feature request."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import CLITIC_KEYS, NO_CLITIC, Analysis, FeatureBundle, merge_features
from .rewrite import BOUNDARY, apply_forward

GRID_AXES = {
    "gender": ("m", "f"),
    "number": ("s", "d", "p"),
    "case": ("n", "a", "g", "u"),
    "state": ("i", "d", "c"),
}
NO_CLITICS = FeatureBundle(**{k: NO_CLITIC for k in CLITIC_KEYS})


class LemmaNotFound(LookupError):
    pass


def realize(db, p, s, x) -> Analysis:
    """Build the Analysis of one admitted (prefix, stem, suffix) triple.

    Piece forms are joined with morpheme boundaries, rewritten, then split
    back. An untagged buffer piece is glued onto the following suffix
    segment, or onto the stem when the suffix is empty.
    """
    pieces = ([(f, t, "prefix") for f, t in p.pieces()]
              + [(f, t, "stem") for f, t in s.pieces()]
              + [(f, t, "suffix") for f, t in x.pieces()])
    joined = BOUNDARY.join(f for f, _, _ in pieces)
    forms = apply_forward(joined, db.rewrite_rules).split(BOUNDARY) if pieces else []
    if len(forms) != len(pieces):
        raise RuntimeError(f"rewrite rules changed the boundaries of {joined!r}")

    glue_forward = bool(x.members and x.members[0][1])
    tagged = []
    pending = ""
    for form, (_, tag, side) in zip(forms, pieces):
        if not tag:
            if side == "stem" and not glue_forward and tagged:
                last_form, last_tag = tagged[-1]
                tagged[-1] = (last_form + form, last_tag)
            else:
                pending += form
            continue
        tagged.append((pending + form, tag))
        pending = ""
    if pending and tagged:
        tagged[-1] = (tagged[-1][0] + pending, tagged[-1][1])

    stem_member = s.members[0]
    buffers = s.members[1:]
    buffer = (buffers[0][0], "".join(f for _, f in buffers)) if buffers else ("", "")
    return Analysis(
        diac="".join(forms),
        lemma=s.lemma,
        bw_tag="+".join(f"{f}/{t}" for f, t in tagged),
        features=merge_features(s.features, [p.features], [x.features]),
        segmentation=(tuple(p.members), stem_member, buffer, tuple(x.members)),
        gloss=s.gloss, root=s.root, pattern=s.pattern,
    )


def _dedup_sorted(analyses) -> list:
    best = {}
    for a in analyses:
        key = (a.diac, a.bw_tag, str(a.features), a.lemma)
        if key not in best or str(a.segmentation) < str(best[key].segmentation):
            best[key] = a
    return sorted(best.values(), key=Analysis.sort_key)


def _clitic_ok(cm, request, keys) -> bool:
    for key in keys:
        want = getattr(request, key)
        if want is not None and (getattr(cm.features, key) or NO_CLITIC) != want:
            return False
    return True


def triples(db, stems, request=FeatureBundle()):
    """Admitted (prefix, stem, suffix) triples over ``stems``, pre-filtered
    on the clitic slots of ``request``."""
    prefixes = db.by_category("prefix")
    suffixes = db.by_category("suffix")
    for s in stems:
        ps = [p for cat in sorted(db.prefix_cats_for(s.category)) for p in prefixes.get(cat, ())
              if _clitic_ok(p, request, ("prc3", "prc2", "prc1", "prc0"))]
        xs = [x for cat in sorted(db.suffix_cats_for(s.category)) for x in suffixes.get(cat, ())
              if _clitic_ok(x, request, ("enc0",))]
        for p, x in itertools.product(ps, xs):
            if (p.category, x.category) in db.table_ac:
                yield p, s, x


def generate(db, lemma: str, pos: str = None, request: FeatureBundle = None) -> list:
    """All analyses of ``lemma`` whose features unify with ``request``.

    Unset request fields are wildcards; clitic slots use ``"0"`` for an
    explicitly absent clitic. Raises LemmaNotFound for unknown lemmas.
    """
    request = request or FeatureBundle()
    stems = db.stems_of(lemma, pos)
    if not stems:
        raise LemmaNotFound(f"lemma {lemma!r} not in the database")
    out = []
    for p, s, x in triples(db, stems, request):
        a = realize(db, p, s, x)
        if a.features.unifies(request):
            out.append(a)
    return _dedup_sorted(out)


def generate_all(db, request: FeatureBundle = None) -> list:
    """Every analysis of every lemma in the database."""
    request = request or FeatureBundle()
    out = []
    for p, s, x in triples(db, db.entries("stem"), request):
        a = realize(db, p, s, x)
        if a.features.unifies(request):
            out.append(a)
    return _dedup_sorted(out)


@dataclass
class ParadigmGrid:
    lemma: str
    row_axes: tuple
    col_axes: tuple
    rows: list
    cols: list
    cells: dict

    def cell(self, row, col) -> list:
        return self.cells.get((tuple(row), tuple(col)), [])

    def empty_cells(self) -> list:
        return [k for k, v in self.cells.items() if not v]

    def to_table(self, render=str) -> list:
        """Rows of strings; the first row is the column header."""
        header = ["/".join(self.row_axes) + " \\ " + "/".join(self.col_axes)]
        header += ["".join(c) for c in self.cols]
        table = [header]
        for r in self.rows:
            line = ["".join(r)]
            for c in self.cols:
                forms = self.cell(r, c)
                line.append(" ".join(render(f) for f in forms) if forms else "-")
            table.append(line)
        return table


def _axes(spec) -> tuple:
    axes = (spec,) if isinstance(spec, str) else tuple(spec)
    for axis in axes:
        if axis not in GRID_AXES:
            raise ValueError(f"unknown paradigm axis {axis!r}")
    return axes


def paradigm_grid(db, lemma: str, pos: str = None, rows="number", cols="case",
                  fixed: FeatureBundle = None) -> ParadigmGrid:
    """Grid of surface forms over two groups of feature axes.

    Axes not on the grid are unconstrained unless set in ``fixed``, which
    defaults to "no clitics". Empty cells are kept so gaps stay visible.
    """
    row_axes, col_axes = _axes(rows), _axes(cols)
    if set(row_axes) & set(col_axes):
        raise ValueError("row and column axes overlap")
    fixed = NO_CLITICS if fixed is None else fixed
    analyses = generate(db, lemma, pos, fixed)
    row_keys = list(itertools.product(*(GRID_AXES[a] for a in row_axes)))
    col_keys = list(itertools.product(*(GRID_AXES[a] for a in col_axes)))
    cells = {(r, c): set() for r in row_keys for c in col_keys}
    for a in analyses:
        r = tuple(getattr(a.features, ax) for ax in row_axes)
        c = tuple(getattr(a.features, ax) for ax in col_axes)
        if (r, c) in cells:
            cells[(r, c)].add(a.diac)
    return ParadigmGrid(lemma, row_axes, col_axes, row_keys, col_keys,
                        {k: sorted(v) for k, v in cells.items()})
