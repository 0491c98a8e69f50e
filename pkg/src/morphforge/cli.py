"""Command-line entry point.

Exit status: 0 on success, 1 when the run produced error diagnostics (or
found nothing for a requested lemma), 2 on usage errors or unreadable
input.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .analyze import analyze
from .core import FeatureBundle, SpecError
from .dbmaker import compile as compile_db, read_db, stats, write_db
from .evaluation import GoldFileError, coverage, diff_analyses
from .generate import GRID_AXES, LemmaNotFound, generate, paradigm_grid
from .lexqa import default_paradigms, load_paradigms, qa_report
from .specio import SpecLoadError, load_specs, validate_specs
from .translit import ar2hsb, has_arabic, hsb2ar, tag_ar2hsb

DB_ENV = "MORPHFORGE_DB"


class UsageError(Exception):
    pass


class _Out:
    """Writes TSV rows to stdout, optionally in HSB romanization."""

    def __init__(self, hsb: bool, stream=None):
        self.hsb = hsb
        self.stream = stream or sys.stdout

    def text(self, s: str) -> str:
        return ar2hsb(s) if self.hsb else s

    def tag(self, s: str) -> str:
        return tag_ar2hsb(s) if self.hsb else s

    def row(self, cells) -> None:
        self.stream.write("\t".join(str(c) for c in cells) + "\n")

    def analysis(self, a) -> None:
        diac, lemma, tag, feats, seg, gloss, root, pattern = a.to_row()
        self.row([self.text(diac), self.text(lemma), self.tag(tag), feats,
                  self.text(seg), gloss, self.text(root), self.text(pattern)])


def _word(s: str) -> str:
    """Arabic input passes through; anything else is read as HSB."""
    s = s.strip()
    return s if has_arabic(s) else hsb2ar(s)


def _existing(path, what) -> Path:
    if path is None:
        raise UsageError(f"missing {what}")
    p = Path(path)
    if not p.exists():
        raise UsageError(f"{what} not found: {p}")
    return p


def _db(args):
    path = args.db or os.environ.get(DB_ENV)
    if not path:
        raise UsageError(f"no database given (use -d or set {DB_ENV})")
    try:
        return read_db(_existing(path, "database"))
    except (ValueError, SpecError) as exc:
        raise UsageError(f"cannot read database {path}: {exc}") from exc


def _specs(path, strict=True):
    return load_specs(_existing(path, "spec directory"), strict=strict)


def _request(pairs) -> FeatureBundle:
    values = {}
    names = set(FeatureBundle.__dataclass_fields__)
    for pair in pairs or ():
        key, sep, value = pair.partition(":")
        if not sep or key not in names or not value:
            raise UsageError(f"bad feature {pair!r}; expected key:value with key in "
                             f"{', '.join(sorted(names))}")
        values[key] = value
    return FeatureBundle(**values)


def _lines(path):
    p = _existing(path, "input file")
    with open(p, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


# ---------------------------------------------------------------- commands

def cmd_compile(args, out):
    try:
        specs = _specs(args.specs)
        db = compile_db(specs)
    except SpecLoadError as exc:
        for d in exc.diagnostics:
            print(d, file=sys.stderr)
        return 1
    except SpecError as exc:
        print(f"error\t{exc}", file=sys.stderr)
        return 1
    write_db(db, args.output)
    return 0


def cmd_validate(args, out):
    specs = _specs(args.specs, strict=False)
    diags = list(specs.diagnostics) + validate_specs(specs)
    for d in diags:
        out.row(str(d).split("\t"))
    return 1 if any(d.severity == "error" for d in diags) else 0


def cmd_qa(args, out):
    specs = _specs(args.specs, strict=False)
    paradigms = (load_paradigms(_existing(args.paradigms, "paradigm index"))
                 if args.paradigms else default_paradigms())
    failed = False
    for (lemma, pos), pid, issues in qa_report(specs, paradigms):
        out.row([out.text(lemma), pos, pid or "OUT_OF_NORM", "PARADIGM", "_"])
        for issue in issues:
            failed |= issue.severity == "error"
            out.row([out.text(lemma), pos, pid or "OUT_OF_NORM", issue.code,
                     out.text(issue.detail)])
    return 1 if failed else 0


def cmd_analyze(args, out):
    db = _db(args)
    if args.word is not None:
        for a in analyze(db, _word(args.word), diac_strict=args.diac_strict, fold=args.fold):
            out.analysis(a)
        return 0
    for token in _lines(args.input):
        out.row([f"## {out.text(_word(token))}"])
        for a in analyze(db, _word(token), diac_strict=args.diac_strict, fold=args.fold):
            out.analysis(a)
    return 0


def cmd_generate(args, out):
    db = _db(args)
    try:
        analyses = generate(db, _word(args.lemma), args.pos, _request(args.features))
    except LemmaNotFound as exc:
        print(exc, file=sys.stderr)
        return 1
    for a in analyses:
        out.analysis(a)
    return 0


def cmd_paradigm(args, out):
    db = _db(args)
    fixed = _request(args.features) if args.features else None
    try:
        grid = paradigm_grid(db, _word(args.lemma), args.pos, args.rows.split(","),
                             args.cols.split(","), fixed)
    except LemmaNotFound as exc:
        print(exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for row in grid.to_table(out.text):
        out.row(row)
    return 0


def cmd_stats(args, out):
    db = _db(args)
    specs = _specs(args.specs) if args.specs else None
    for name, value in stats(db, specs).rows():
        out.row([name, value])
    return 0


def cmd_coverage(args, out):
    db = _db(args)
    try:
        report = coverage(db, _existing(args.gold, "gold file"))
    except GoldFileError as exc:
        raise UsageError(str(exc)) from exc
    for name, value in report.rows():
        out.row([name, value])
    for miss in report.misses:
        cells = miss.to_row()
        out.row(["miss"] + [out.text(c) if i not in (4, 5) else c for i, c in enumerate(cells)])
    return 0


def cmd_diff(args, out):
    try:
        db_a, db_b = read_db(_existing(args.a, "database A")), read_db(_existing(args.b, "database B"))
    except (ValueError, SpecError) as exc:
        raise UsageError(f"cannot read database: {exc}") from exc
    report = diff_analyses(db_a, db_b, [_word(w) for w in _lines(args.input)])
    for name, count, pct in report.rows():
        out.row([name, count, pct])
    for word, groups in report.per_word.items():
        for label, keys in zip(("both", "only_a", "only_b"), groups):
            for lemma, diac, tag in keys:
                out.row([label, out.text(word), out.text(lemma), out.text(diac), out.tag(tag)])
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--translit", choices=("hsb",),
                        help="print Arabic in HSB romanization")
    parser = argparse.ArgumentParser(prog="morphforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    def db_arg(p):
        p.add_argument("-d", "--db", help=f"database file (default ${DB_ENV})")

    p = add("compile", cmd_compile, "compile spec sheets into a database")
    p.add_argument("-s", "--specs", required=True)
    p.add_argument("-o", "--output", required=True)

    p = add("analyze", cmd_analyze, "analyze a word or a file of words")
    db_arg(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-w", "--word")
    g.add_argument("-i", "--input", help="one token per line")
    p.add_argument("--diac-strict", action="store_true")
    p.add_argument("--fold", action="store_true", help="merge alif/hamza spelling variants")

    p = add("generate", cmd_generate, "generate the forms of a lemma")
    db_arg(p)
    p.add_argument("-l", "--lemma", required=True)
    p.add_argument("-p", "--pos")
    p.add_argument("-f", "--features", nargs="*", metavar="KEY:VALUE")

    p = add("paradigm", cmd_paradigm, "print a paradigm grid")
    db_arg(p)
    p.add_argument("-l", "--lemma", required=True)
    p.add_argument("-p", "--pos")
    axes = ",".join(GRID_AXES)
    p.add_argument("--rows", default="number", help=f"comma-separated axes from {axes}")
    p.add_argument("--cols", default="case", help=f"comma-separated axes from {axes}")
    p.add_argument("-f", "--features", nargs="*", metavar="KEY:VALUE",
                   help="fixed features (default: no clitics)")

    p = add("validate", cmd_validate, "check spec sheets")
    p.add_argument("-s", "--specs", required=True)

    p = add("qa", cmd_qa, "paradigm classes and lexicon well-formedness")
    p.add_argument("-s", "--specs", required=True)
    p.add_argument("--paradigms", help="paradigm index TSV (default: bundled)")

    p = add("stats", cmd_stats, "database statistics")
    db_arg(p)
    p.add_argument("-s", "--specs")

    p = add("coverage", cmd_coverage, "recall against a gold file")
    db_arg(p)
    p.add_argument("-g", "--gold", required=True)

    p = add("diff", cmd_diff, "compare two databases over a word list")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("-i", "--input", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(args.translit == "hsb")
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"morphforge {args.command}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"morphforge {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
