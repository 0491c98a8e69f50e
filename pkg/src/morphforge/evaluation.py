"""Recall against a gold file, and side-by-side comparison of two analyzers."""

from __future__ import annotations

import csv
from collections import OrderedDict
from dataclasses import dataclass, field

from .analyze import analyze

GOLD_COLUMNS = ("word", "lemma", "diac", "bw_tag", "count")
MATCH_FIELDS = ("lemma", "diac", "bw_tag")
# rows the gold annotators left unresolved
PLACEHOLDERS = frozenset({"", "_", "-", "?", "NOAN", "NO_ANALYSIS", "UNK", "NTWS"})


class GoldFileError(ValueError):
    pass


@dataclass(frozen=True)
class GoldRow:
    word: str
    lemma: str
    diac: str
    bw_tag: str
    count: int = 1

    @property
    def key(self) -> tuple:
        return (self.lemma, self.diac, self.bw_tag)


def read_gold(path) -> tuple:
    """(rows, dropped) from a gold TSV; placeholder rows are dropped and
    counted. A header line starting with ``word`` is optional."""
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise GoldFileError(f"cannot read gold file {path}: {exc}") from exc
    rows, dropped = [], 0
    with fh:
        try:
            lines = list(csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE))
        except UnicodeDecodeError as exc:
            raise GoldFileError(f"{path}: not UTF-8 text") from exc
    for n, cells in enumerate(lines, start=1):
        if not cells or not "".join(cells).strip():
            continue
        if n == 1 and cells[0].strip().lower() == "word":
            continue
        if len(cells) not in (4, 5):
            raise GoldFileError(f"{path}:{n}: expected 4 or 5 columns, got {len(cells)}")
        cells = [c.strip() for c in cells]
        try:
            count = int(cells[4]) if len(cells) == 5 and cells[4] else 1
        except ValueError as exc:
            raise GoldFileError(f"{path}:{n}: bad count {cells[4]!r}") from exc
        if not cells[0] or any(c in PLACEHOLDERS for c in cells[1:4]):
            dropped += 1
            continue
        rows.append(GoldRow(cells[0], cells[1], cells[2], cells[3], count))
    return rows, dropped


@dataclass
class Miss:
    gold: GoldRow
    nearest: object = None          # closest Analysis, or None if the word got none
    differing: tuple = ()           # MATCH_FIELDS that differ from the nearest

    def to_row(self) -> list:
        n = self.nearest
        return [self.gold.word, self.gold.lemma, self.gold.diac, self.gold.bw_tag,
                str(self.gold.count), ",".join(self.differing) if n else "no_analysis",
                n.lemma if n else "_", n.diac if n else "_", n.bw_tag if n else "_"]


@dataclass
class CoverageReport:
    tokens: int = 0
    tokens_recalled: int = 0
    types: int = 0
    types_recalled: int = 0
    dropped: int = 0
    misses: list = field(default_factory=list)

    @property
    def token_recall(self) -> float:
        return self.tokens_recalled / self.tokens if self.tokens else 0.0

    @property
    def type_recall(self) -> float:
        return self.types_recalled / self.types if self.types else 0.0

    def rows(self) -> list:
        return [("tokens", str(self.tokens)), ("tokens_recalled", str(self.tokens_recalled)),
                ("token_recall", f"{self.token_recall:.4f}"), ("types", str(self.types)),
                ("types_recalled", str(self.types_recalled)),
                ("type_recall", f"{self.type_recall:.4f}"), ("dropped", str(self.dropped))]


def _nearest(gold, analyses) -> tuple:
    best, best_diff = None, MATCH_FIELDS
    for a in analyses:
        diff = tuple(f for f in MATCH_FIELDS if getattr(a, f) != getattr(gold, f))
        if len(diff) < len(best_diff):
            best, best_diff = a, diff
    return best, best_diff


class _Cache:
    def __init__(self, db, **kw):
        self.db, self.kw, self.store = db, kw, {}

    def __call__(self, word):
        if word not in self.store:
            self.store[word] = analyze(self.db, word, **self.kw)
        return self.store[word]


def coverage(db, gold, **analyze_kw) -> CoverageReport:
    """Token and type recall of ``db`` over gold analyses.

    ``gold`` is a path or an iterable of GoldRow. A gold row is recalled
    when some analysis of its word has the same lemma, diacritized form
    and tag.
    """
    dropped = 0
    if isinstance(gold, (str, bytes)) or hasattr(gold, "__fspath__"):
        gold, dropped = read_gold(gold)
    run = _Cache(db, **analyze_kw)
    report = CoverageReport(dropped=dropped)
    types = OrderedDict()
    for row in gold:
        analyses = run(row.word)
        hit = any((a.lemma, a.diac, a.bw_tag) == row.key for a in analyses)
        report.tokens += row.count
        report.tokens_recalled += row.count if hit else 0
        type_key = (row.word,) + row.key
        if type_key not in types:
            types[type_key] = hit
            if not hit:
                report.misses.append(Miss(row, *_nearest(row, analyses)))
    report.types = len(types)
    report.types_recalled = sum(types.values())
    return report


@dataclass
class DiffReport:
    per_word: dict          # word -> (both, only_a, only_b), each a sorted list of keys
    both: int = 0
    only_a: int = 0
    only_b: int = 0

    @property
    def union(self) -> int:
        return self.both + self.only_a + self.only_b

    def percentages(self) -> dict:
        u = self.union or 1
        return {"both": 100.0 * self.both / u, "only_a": 100.0 * self.only_a / u,
                "only_b": 100.0 * self.only_b / u}

    def rows(self) -> list:
        pct = self.percentages()
        return [(k, str(getattr(self, k)), f"{pct[k]:.2f}") for k in ("both", "only_a", "only_b")]


def diff_analyses(db_a, db_b, words, **analyze_kw) -> DiffReport:
    """Compare the (lemma, diac, tag) readings two databases give each word."""
    run_a, run_b = _Cache(db_a, **analyze_kw), _Cache(db_b, **analyze_kw)
    report = DiffReport(per_word={})
    for word in dict.fromkeys(w for w in words if w and w.strip()):
        a = {(x.lemma, x.diac, x.bw_tag) for x in run_a(word)}
        b = {(x.lemma, x.diac, x.bw_tag) for x in run_b(word)}
        entry = (sorted(a & b), sorted(a - b), sorted(b - a))
        report.per_word[word] = entry
        report.both += len(entry[0])
        report.only_a += len(entry[1])
        report.only_b += len(entry[2])
    return report
