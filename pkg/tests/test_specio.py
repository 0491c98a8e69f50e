import shutil

import pytest

from morphforge import DATA_DIR, dump_specs, load_specs, validate_specs
from morphforge.specio import SpecLoadError, spec_equal

from conftest import COND_HEAD, LEX_HEAD, MORPH_HEAD, ORDER_HEAD, write_sheets


@pytest.fixture
def fig2_copy(tmp_path):
    dst = tmp_path / "fig2"
    shutil.copytree(DATA_DIR / "fig2", dst)
    return dst


def edit(path, old, new):
    text = path.read_text(encoding="utf-8")
    assert old in text
    path.write_text(text.replace(old, new), encoding="utf-8")


def errors(diags):
    return [d for d in diags if d.severity == "error"]


def test_fig2_inventory(fig2_specs):
    s = fig2_specs
    assert len({e.lemma for e in s.lexicon}) == 1
    assert len(s.lexicon) == 2
    buffers = s.classes_of_kind("buffer")
    assert sum(len(c.morphemes) for c in buffers) == 2
    suffix_morphemes = {m.id for c in s.classes_of_kind("suffix") for m in c.morphemes}
    assert suffix_morphemes == {"MSGI", "MSGD", "MSGC", "FPGC"}
    assert len(s.classes_of_kind("proclitic")) == 1
    assert len(s.classes_of_kind("enclitic")) == 1


def test_fig2_validates_without_errors(fig2_specs):
    assert errors(validate_specs(fig2_specs)) == []


def test_else_expanded_on_load(fig2_specs):
    pron = fig2_specs.classes["[PRON]"]
    requires = {a.form: str(a.require) for a in pron.allomorphs if a.form}
    assert sorted(requires.values()) == ["!suff-i", "suff-i"]


def test_empty_lexicon(fig2_copy):
    (fig2_copy / "lexicon.tsv").write_text("\t".join(LEX_HEAD) + "\n", encoding="utf-8")
    specs = load_specs(fig2_copy, strict=False)
    assert specs.lexemes == {}
    assert errors(specs.diagnostics) == []


def test_unknown_class_in_order_line(fig2_copy):
    edit(fig2_copy / "order.tsv", "[PRC] [STEM] [BUFFER] [SUFF]\n", "[PRC] [STEM] [BUFFER] [SUFF] FOO\n")
    specs = load_specs(fig2_copy, strict=False)
    bad = errors(specs.diagnostics)
    assert bad and bad[0].location == ("order.tsv", 2) and "FOO" in bad[0].message
    with pytest.raises(SpecLoadError):
        load_specs(fig2_copy)


def test_dead_requirement(fig2_copy):
    lex = fig2_copy / "lexicon.tsv"
    lines = lex.read_text(encoding="utf-8").splitlines()
    lex.write_text("\n".join(lines[:2]) + "\n", encoding="utf-8")
    diags = validate_specs(load_specs(fig2_copy))
    assert any("dead requirement #dip" in d.message for d in errors(diags))


def test_unused_label_warning(fig2_copy):
    with open(fig2_copy / "conditions.tsv", "a", encoding="utf-8") as fh:
        fh.write("dummy\tnot used anywhere\t_\n")
    diags = validate_specs(load_specs(fig2_copy))
    warn = [d for d in diags if "dummy" in d.message]
    assert warn and warn[0].severity == "warning"
    assert warn[0].location == ("conditions.tsv", 10)


def test_scope_violation(fig2_copy):
    # DEF is declared prefix<->suffix; requiring it on a stem breaks that
    edit(fig2_copy / "lexicon.tsv", "\tMS|FS|FP", "\tMS|FS|FP DEF")
    diags = validate_specs(load_specs(fig2_copy))
    assert any("outside its scope" in d.message for d in errors(diags))


def test_bad_rows_are_located(tmp_path):
    root = write_sheets(
        tmp_path / "bad",
        [ORDER_HEAD, ["L1", "[STEM] [SUFF]"]],
        [MORPH_HEAD, ["[SUFF]", "X", "a", "a/CASE", "gender:zz", "_", "MS"],
         ["[SUFF]", "Y", "u", "u/CASE", "_", "_", "NOPE"]],
        [LEX_HEAD, ["kitaAb", "kitaAb", "book", "noun", "k.t.b", "_", "sometimes", "_", "_", "MS"]],
        [COND_HEAD, ["MS", "masc sing", "stem↔suffix"]],
    )
    specs = load_specs(root, strict=False)
    locs = {(d.location, d.severity) for d in specs.diagnostics}
    assert (("morph.tsv", 2), "error") in locs      # bad feature value
    assert (("morph.tsv", 3), "error") in locs      # unknown label
    assert (("lexicon.tsv", 2), "error") in locs    # bad rationality
    for d in specs.diagnostics:
        assert d.location[0].endswith(".tsv") and d.location[1] >= 1


@pytest.mark.parametrize("name", ["fig2", "seed", "seed-mini"])
def test_dump_load_fixpoint(tmp_path, name):
    specs = load_specs(DATA_DIR / name)
    dump_specs(specs, tmp_path / "a")
    again = load_specs(tmp_path / "a")
    assert spec_equal(specs, again)
    dump_specs(again, tmp_path / "b")
    for sheet in ("order", "morph", "lexicon", "conditions"):
        assert (tmp_path / "a" / f"{sheet}.tsv").read_bytes() == (tmp_path / "b" / f"{sheet}.tsv").read_bytes()


def test_seed_has_no_validation_errors(seed_specs, mini_specs):
    assert errors(validate_specs(seed_specs)) == []
    assert errors(validate_specs(mini_specs)) == []
