"""Acceptance criteria 1-7, one test each.

Run under pytest for a PASS/FAIL summary line per criterion at the end of
the session, or directly with ``python3 tests/test_acceptance.py``.
"""

import time

from morphforge import (
    DATA_DIR, FeatureBundle, analyze, compile, coverage, generate, load_specs, paradigm_grid, stats,
)
from morphforge.evaluation import GoldRow
from morphforge.generate import NO_CLITICS, generate_all
from morphforge.lexqa import classify_paradigm, default_paradigms
from morphforge.translit import ar2hsb as A, dediac, hsb2ar as H, tag_hsb2ar

from oracle import admitted, brute_force

CRITERIA = {
    1: "small-fragment fixture fidelity",
    2: "suffix grid: 54 feature combinations, 28 surface forms",
    3: "phenomenon regression suite",
    4: "round trip over the seed lexicon at 100% recall",
    5: "compiled tables equal brute-force condition evaluation",
    6: "combinatoric statistics equal exhaustive generation",
    7: "gold-recall metric machinery only; corpus-scale figures not reproducible",
}


def req(text):
    return NO_CLITICS.update(FeatureBundle.parse(text))


def forms(analyses):
    return {A(a.diac) for a in analyses}


def test_criterion_1_fragment_fidelity():
    start = time.perf_counter()
    db = compile(load_specs(DATA_DIR / "fig2"))
    out = {(A(a.diac), A(a.bw_tag)) for a in generate(db, H("safiyr"))}
    expected = {
        ("sufaraA'a", "sufaraA/NOUN+'a/CASE_INDEF_GEN"),
        ("wabisufaraAŷihim", "wa/CONJ+bi/PREP+sufaraA/NOUN+ŷi/CASE_GEN+him/POSS_PRON_3MP"),
        ("lilsufaraA'i", "li/PREP+l/DET+sufaraA/NOUN+'i/CASE_DEF_GEN"),
        ("bisafiyraAtihim", "bi/PREP+safiyr/NOUN+aAt/NSUFF_FEM_PL+i/CASE_GEN+him/POSS_PRON_3MP"),
    }
    assert expected <= out
    assert "sufaraAŷĩ" not in {d for d, _ in out}
    assert analyze(db, H("sufaraAŷĩ")) == []
    assert time.perf_counter() - start < 1.0


# Default suffix grid of a triptote (masculine sound) lemma, cell -> suffix,
# written from the standard Arabic nominal declension.
SUFFIX_GRID = {
    "ms": {"ni": "ũ", "nd": "u", "nc": "u", "ai": "Aã", "ad": "a", "ac": "a",
           "gi": "ĩ", "gd": "i", "gc": "i"},
    "fs": {"ni": "aħũ", "nd": "aħu", "nc": "aħu", "ai": "aħã", "ad": "aħa", "ac": "aħa",
           "gi": "aħĩ", "gd": "aħi", "gc": "aħi"},
    "md": {"ni": "aAni", "nd": "aAni", "nc": "aA", "ai": "ay.ni", "ad": "ay.ni", "ac": "ay.",
           "gi": "ay.ni", "gd": "ay.ni", "gc": "ay."},
    "fd": {"ni": "ataAni", "nd": "ataAni", "nc": "ataA", "ai": "atay.ni", "ad": "atay.ni",
           "ac": "atay.", "gi": "atay.ni", "gd": "atay.ni", "gc": "atay."},
    "mp": {"ni": "uwna", "nd": "uwna", "nc": "uw", "ai": "iyna", "ad": "iyna", "ac": "iy",
           "gi": "iyna", "gd": "iyna", "gc": "iy"},
    "fp": {"ni": "aAtũ", "nd": "aAtu", "nc": "aAtu", "ai": "aAtĩ", "ad": "aAti", "ac": "aAti",
           "gi": "aAtĩ", "gd": "aAti", "gc": "aAti"},
}


def test_criterion_2_suffix_grid(seed_db):
    got = {}
    for a in generate(seed_db, H("muhan.dis"), "noun", NO_CLITICS):
        f = a.features
        suffix = A("".join(form for _, form in a.segmentation[3]))
        got.setdefault((f.gender + f.number, f.case + f.state), set()).add(suffix)
    expected = {(gn, cs): {sfx} for gn, cells in SUFFIX_GRID.items() for cs, sfx in cells.items()}
    assert len(expected) == 54
    assert got == expected
    assert len({s for v in got.values() for s in v}) == 28
    assert got[("fp", "ai")] == got[("fp", "gi")] and got[("fp", "ac")] == got[("fp", "gc")]


def test_criterion_3_phenomena(seed_db):
    def gen(lemma, text):
        return forms(generate(seed_db, H(lemma), None, req(text)))

    assert "lilš~am.si" in gen("šam.s", "prc1:li prc0:Al case:g state:d")
    assert "safiyratunaA" in gen("safiyr", "gender:f number:s case:n state:c enc0:1p")
    assert gen("mab.naý", "case:a state:c enc0:1s") == {"mab.naAya"}
    assert gen("kitaAb", "number:s case:g state:c enc0:3mp") == {"kitaAbihim"}
    assert gen("kitaAb", "number:s case:n state:c enc0:3mp") == {"kitaAbuhum"}
    assert gen("hawaA'", "case:a state:i") == {"hawaA'ã"}
    assert analyze(seed_db, H("hwA'ã")) and not analyze(seed_db, H("hwA'ãA"))
    assert gen("qaADiy", "case:n state:i") == gen("qaADiy", "case:g state:i") == {"qaADĩ"}
    assert gen("qaADiy", "case:a state:i") == {"qaADiyAã"}
    grid = paradigm_grid(seed_db, H("dun.yA"), None, "case", "state")
    for case in "nag":
        for state in "idc":
            assert grid.cell((case,), (state,)) == [H("dun.yA")]
    assert gen("Âab", "number:s case:n state:c enc0:3ms") == {"Âabuwhu"}
    assert gen("Âab", "number:s case:a state:c enc0:3ms") == {"ÂabaAhu"}
    assert gen("Âab", "number:s case:g state:c enc0:3ms") == {"Âabiyhi"}


def test_criterion_4_round_trip(seed_db, seed_specs):
    start = time.perf_counter()
    assert len({e.lemma for e in seed_specs.lexicon}) >= 25
    classes = {classify_paradigm(e) for e in seed_specs.lexemes.values()}
    assert classes == {p.id for p in default_paradigms()}
    generated = generate_all(seed_db)
    rows = [GoldRow(dediac(a.diac), a.lemma, a.diac, a.bw_tag) for a in generated]
    report = coverage(seed_db, rows)
    assert report.token_recall == 1.0 and report.type_recall == 1.0
    by_word = {}
    for a in generated:
        by_word.setdefault(dediac(a.diac), set()).add(a.sort_key())
    for word, keys in by_word.items():
        assert keys <= {x.sort_key() for x in analyze(seed_db, word)}, A(word)
    assert time.perf_counter() - start < 300


def test_criterion_5_compiler_oracle(fig2_specs, fig2_db, mini_specs, mini_db):
    assert admitted(fig2_db) == brute_force(fig2_specs)
    assert admitted(mini_db) == brute_force(mini_specs)


def test_criterion_6_statistics(seed_db, seed_specs):
    st = stats(seed_db, seed_specs)
    assert st.analyses_with_clitics == len(generate_all(seed_db))
    assert st.analyses_without_clitics == len(generate_all(seed_db, NO_CLITICS))


def test_criterion_7_not_reproducible(seed_db):
    # The corpus recall and the human attribution figures need licensed data
    # and annotators; only the metric machinery is exercised here.
    a = generate(seed_db, H("kitaAb"), None, req("case:n state:i number:s"))[0]
    gold = [GoldRow(dediac(a.diac), a.lemma, a.diac, a.bw_tag, 3),
            GoldRow(dediac(a.diac), a.lemma, a.diac, tag_hsb2ar("kitaAb/NOUN"), 1)]
    report = coverage(seed_db, gold)
    assert (report.tokens, report.tokens_recalled) == (4, 3)


if __name__ == "__main__":
    import sys
    import inspect

    specs = {n: load_specs(DATA_DIR / n) for n in ("fig2", "seed", "seed-mini")}
    dbs = {n: compile(s) for n, s in specs.items()}
    fixtures = {"seed_db": dbs["seed"], "seed_specs": specs["seed"], "fig2_db": dbs["fig2"],
                "fig2_specs": specs["fig2"], "mini_db": dbs["seed-mini"],
                "mini_specs": specs["seed-mini"]}
    failed = 0
    for n in sorted(CRITERIA):
        test = next(f for name, f in globals().items() if name.startswith(f"test_criterion_{n}_"))
        args = [fixtures[p] for p in inspect.signature(test).parameters]
        try:
            test(*args)
            status = "PASS"
        except AssertionError:
            status, failed = "FAIL", failed + 1
        note = " (substituted by criteria 1-6)" if n == 7 else ""
        print(f"criterion {n}: {status}  {CRITERIA[n]}{note}")
    sys.exit(1 if failed else 0)
