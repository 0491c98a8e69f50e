"""Ortho-phonological rewrite rules applied by the analysis/generation engine.

Generation-post rules run over the concatenated word (segment boundaries
marked with ``+``). Bidirectional rules must be insertion rules: their
replacement template is the match's capture groups, in order, interleaved
with literal text. That restriction is what makes the inverse computable:
a preimage is obtained by deleting inserted literals.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path

STAGES = ("generation-post", "analysis-pre")
BOUNDARY = "+"

_MACRO_LINE = re.compile(r"^@define\s+(\w+)\s+(.+?)\s*$")
_GROUP_REF = re.compile(r"\\(\d+)")


@dataclass(frozen=True)
class RewriteRule:
    id: str
    stage: str
    match: str
    replacement: str
    bidirectional: bool = False

    def __post_init__(self):
        if self.stage not in STAGES:
            raise ValueError(f"rule {self.id}: unknown stage {self.stage!r}")
        try:
            pattern = re.compile(self.match)
        except re.error as exc:
            raise ValueError(f"rule {self.id}: bad pattern: {exc}") from None
        object.__setattr__(self, "_pattern", pattern)
        if self.bidirectional:
            refs = [int(g) for g in _GROUP_REF.findall(self.replacement)]
            if refs != list(range(1, pattern.groups + 1)):
                raise ValueError(
                    f"rule {self.id}: bidirectional rules must reuse every "
                    "capture group once, in order")
            if not self.inserted:
                raise ValueError(f"rule {self.id}: nothing to invert")

    @property
    def pattern(self) -> re.Pattern:
        return self._pattern

    @property
    def inserted(self) -> tuple:
        """Literal strings the replacement adds around the captured text."""
        return tuple(p for p in _GROUP_REF.split(self.replacement)[::2] if p)

    def apply(self, text: str) -> str:
        return self._pattern.sub(self.replacement, text)


def expand_macros(text: str, macros: dict) -> str:
    for name, body in macros.items():
        text = text.replace("{" + name + "}", body)
    return text


def load_rules(path) -> tuple:
    """Read a rewrite sheet. Returns (rules, macros)."""
    path = Path(path)
    macros = {}
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    body = []
    for line in lines:
        m = _MACRO_LINE.match(line)
        if m:
            macros[m.group(1)] = m.group(2)
        elif line.strip() and not line.startswith("#"):
            body.append(line)
    reader = csv.DictReader(body, delimiter="\t", quoting=csv.QUOTE_NONE)
    for row in reader:
        rows.append(RewriteRule(
            id=row["ID"],
            stage=row["STAGE"],
            match=expand_macros(row["MATCH"], macros),
            replacement=row["REPLACEMENT"],
            bidirectional=row["BIDIRECTIONAL"].strip().lower() in ("1", "true", "yes"),
        ))
    return tuple(rows), macros


def apply_forward(surface: str, rules, stage: str = "generation-post") -> str:
    """Apply every rule of ``stage`` once, left to right, in listed order."""
    for rule in rules:
        if rule.stage == stage:
            surface = rule.apply(surface)
    return surface


def apply_backward(surface: str, rules) -> set:
    """All strings that forward-rewrite to ``surface``, plus ``surface`` itself.

    Candidates are built by deleting literals that a bidirectional rule
    could have inserted; each one is kept only if applying the rules
    forward reproduces the input exactly.
    """
    rules = [r for r in rules if r.stage == "generation-post"]
    inverse = [r for r in rules if r.bidirectional]
    out = {surface}
    if not inverse:
        return out
    frontier = [surface]
    seen = {surface}
    while frontier:
        current = frontier.pop()
        for rule in inverse:
            for lit in rule.inserted:
                start = current.find(lit)
                while start != -1:
                    cand = current[:start] + current[start + len(lit):]
                    if cand not in seen:
                        seen.add(cand)
                        if apply_forward(cand, rules) == surface:
                            out.add(cand)
                            frontier.append(cand)
                    start = current.find(lit, start + 1)
    return out
