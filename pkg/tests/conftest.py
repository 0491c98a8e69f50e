import pytest

from morphforge import DATA_DIR, compile, load_specs
from morphforge.translit import ar2hsb, hsb2ar, tag_hsb2ar

H = hsb2ar
A = ar2hsb


def hsb_forms(analyses):
    return sorted({A(a.diac) for a in analyses})


def write_sheets(root, order, morph, lexicon, conditions, rewrite=None):
    """Write a spec directory from lists of HSB rows (header rows included)."""
    root.mkdir(parents=True, exist_ok=True)
    morph = [morph[0]] + [[c, m, f if f in ("NONE", "_") else H(f), b if b == "_" else tag_hsb2ar(b), *rest]
                          for c, m, f, b, *rest in morph[1:]]
    lexicon = [lexicon[0]] + [[H(lem), H(f), g, pos, H(root), pat if pat == "_" else H(pat), *rest]
                              for lem, f, g, pos, root, pat, *rest in lexicon[1:]]
    for name, rows in (("order", order), ("morph", morph), ("lexicon", lexicon),
                       ("conditions", conditions)):
        text = "\n".join("\t".join(r) for r in rows) + "\n"
        (root / f"{name}.tsv").write_text(text, encoding="utf-8")
    if rewrite is not None:
        (root / "rewrite.tsv").write_text(rewrite, encoding="utf-8")
    return root


ORDER_HEAD = ["LINE_ID", "CLASS_SEQUENCE"]
MORPH_HEAD = ["CLASS", "MORPHEME", "FORM", "BW_SEG", "FEATURES", "SET", "REQUIRE"]
LEX_HEAD = ["LEMMA", "FORM", "GLOSS", "POS", "ROOT", "PATTERN", "RAT", "FEATURES", "SET", "REQUIRE"]
COND_HEAD = ["LABEL", "DESCRIPTION", "SCOPE"]


@pytest.fixture(scope="session")
def fig2_specs():
    return load_specs(DATA_DIR / "fig2")


@pytest.fixture(scope="session")
def fig2_db(fig2_specs):
    return compile(fig2_specs)


@pytest.fixture(scope="session")
def seed_specs():
    return load_specs(DATA_DIR / "seed")


@pytest.fixture(scope="session")
def seed_db(seed_specs):
    return compile(seed_specs)


@pytest.fixture(scope="session")
def mini_specs():
    return load_specs(DATA_DIR / "seed-mini")


@pytest.fixture(scope="session")
def mini_db(mini_specs):
    return compile(mini_specs)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA

    results = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            node = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in node and rep.when == "call":
                n = int(node.split("test_criterion_")[1].split("_")[0])
                results[n] = "PASS" if status == "passed" else "FAIL"
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        note = " (substituted by criteria 1-6)" if n == 7 else ""
        terminalreporter.write_line(f"criterion {n}: {results[n]}  {CRITERIA[n]}{note}")
