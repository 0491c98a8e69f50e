import shutil

import pytest

from morphforge import DATA_DIR, compile, coverage, diff_analyses, load_specs
from morphforge.evaluation import GoldFileError, GoldRow, read_gold
from morphforge.generate import generate
from morphforge.translit import dediac

from conftest import A, H


def gold_rows(db, lemma):
    return [GoldRow(dediac(a.diac), a.lemma, a.diac, a.bw_tag, 2)
            for a in generate(db, H(lemma))]


def write_gold(path, rows, header=True):
    lines = ["word\tlemma\tdiac\tbw_tag\tcount"] if header else []
    lines += ["\t".join(r) for r in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_generated_gold_is_fully_recalled(mini_db):
    rows = gold_rows(mini_db, "safiyr") + gold_rows(mini_db, "qaADiy")
    rep = coverage(mini_db, rows)
    assert rep.token_recall == rep.type_recall == 1.0
    assert rep.tokens == 2 * len(rows) and not rep.misses


def test_placeholders_dropped(mini_db, tmp_path):
    a = gold_rows(mini_db, "qaADiy")[0]
    path = write_gold(tmp_path / "g.tsv", [
        [a.word, a.lemma, a.diac, a.bw_tag, "3"],
        [a.word, "NOAN", a.diac, a.bw_tag, "5"],
        [a.word, a.lemma, "_", a.bw_tag],
    ])
    rows, dropped = read_gold(path)
    assert len(rows) == 1 and dropped == 2
    rep = coverage(mini_db, path)
    assert (rep.tokens, rep.dropped, rep.token_recall) == (3, 2, 1.0)


def test_corrupted_tag_is_reported(mini_db):
    good = list({r.key: r for r in gold_rows(mini_db, "qaADiy")}.values())[:3]
    bad = GoldRow(good[0].word, good[0].lemma, good[0].diac, good[0].bw_tag + "X", 1)
    rep = coverage(mini_db, good + [bad])
    assert rep.types == 4 and rep.types_recalled == 3
    assert rep.misses[0].differing == ("bw_tag",)
    assert rep.misses[0].nearest.bw_tag == good[0].bw_tag


def test_unknown_word_miss(mini_db):
    rep = coverage(mini_db, [GoldRow("xyz", "x", "x", "x/NOUN")])
    assert rep.token_recall == 0.0 and rep.misses[0].nearest is None
    assert rep.misses[0].to_row()[5] == "no_analysis"


def test_bad_gold_files(mini_db, tmp_path):
    with pytest.raises(GoldFileError):
        coverage(mini_db, tmp_path / "missing.tsv")
    (tmp_path / "bad.tsv").write_text("a\tb\n", encoding="utf-8")
    with pytest.raises(GoldFileError):
        read_gold(tmp_path / "bad.tsv")
    (tmp_path / "cnt.tsv").write_text("a\tb\tc\td\tmany\n", encoding="utf-8")
    with pytest.raises(GoldFileError):
        read_gold(tmp_path / "cnt.tsv")


@pytest.fixture(scope="module")
def seed_without_question(tmp_path_factory):
    root = tmp_path_factory.mktemp("noques") / "seed"
    shutil.copytree(DATA_DIR / "seed", root)
    order = root / "order.tsv"
    order.write_text(order.read_text(encoding="utf-8").replace("[QUES] ", ""), encoding="utf-8")
    morph = root / "morph.tsv"
    lines = morph.read_text(encoding="utf-8").splitlines()
    morph.write_text("\n".join(l for l in lines if not l.startswith("[QUES]")) + "\n",
                     encoding="utf-8")
    specs = load_specs(root)
    assert "[QUES]" not in specs.classes
    return compile(specs)


WORDS = [H(w) for w in ("Âaktb", "ktAb", "wbsfrAŷhm", "Âawbsfr'", "sfrA'", "xyz", "ÂalšmsAn")]


def test_diff_without_question_proclitic(seed_db, seed_without_question):
    rep = diff_analyses(seed_db, seed_without_question, WORDS)
    only_a = [k for w in rep.per_word.values() for k in w[1]]
    assert rep.only_b == 0 and only_a
    prc3 = {(a.lemma, a.diac, a.bw_tag) for w in WORDS for a in _analyses(seed_db, w)
            if a.features.prc3 != "0"}
    assert set(only_a) == prc3
    pct = rep.percentages()
    assert abs(sum(pct.values()) - 100.0) < 1e-9


def _analyses(db, w):
    from morphforge import analyze
    return analyze(db, w)


def test_diff_identical_and_symmetric(seed_db, seed_without_question):
    same = diff_analyses(seed_db, seed_db, WORDS)
    assert same.only_a == same.only_b == 0
    assert same.per_word[H("xyz")] == ([], [], [])
    ab = diff_analyses(seed_db, seed_without_question, WORDS)
    ba = diff_analyses(seed_without_question, seed_db, WORDS)
    for w in WORDS:
        both, a, b = ab.per_word[w]
        assert ba.per_word[w] == (both, b, a)
