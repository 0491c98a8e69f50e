"""Condition-based morphotactic spec compiler and analyzer/generator for
Arabic nominals."""

from pathlib import Path

from .analyze import analyze, normalize, segmentations
from .core import (
    Allomorph, Analysis, ConditionExpr, ConditionLabel, FeatureBundle,
    LexiconEntry, Morpheme, MorphClass, OrderLine, SpecError, Term,
    expand_else, merge_features, satisfies,
)
from .dbmaker import ComplexMorph, MorphDB, assign_category, compile, read_db, stats, write_db
from .evaluation import coverage, diff_analyses
from .generate import LemmaNotFound, generate, generate_all, paradigm_grid
from .lexqa import classify_paradigm, derive_pattern, wellformedness
from .rewrite import RewriteRule, apply_backward, apply_forward, load_rules
from .specio import SpecDiagnostic, SpecSet, dump_specs, load_specs, validate_specs
from .translit import ar2hsb, hsb2ar

__version__ = "0.1.0"

# bundled spec sheets: fig2, seed, seed-mini, plus paradigms.tsv
DATA_DIR = Path(__file__).parent / "data"
