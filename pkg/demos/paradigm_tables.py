"""Print paradigm grids for a few seed lemmas that show irregular behaviour.

    python3 demos/paradigm_tables.py
"""

from morphforge import DATA_DIR, compile, load_specs, paradigm_grid
from morphforge.translit import ar2hsb, hsb2ar

db = compile(load_specs(DATA_DIR / "seed"))

SHOW = [
    ("safiyr", ("gender", "number"), ("case", "state")),   # broken plural diptote
    ("qaADiy", "case", "state"),                           # defective
    ("dun.yA", "case", "state"),                           # invariable
    ("Âab", ("number", "case"), "state"),                  # five nouns
    ("Aim.tiHaAn", "number", ("case", "state")),           # mp with feminine plural suffix
]

for lemma, rows, cols in SHOW:
    grid = paradigm_grid(db, hsb2ar(lemma), rows=rows, cols=cols)
    print(f"== {lemma}")
    for row in grid.to_table(ar2hsb):
        if any(cell != "-" for cell in row[1:]):
            print("  " + "\t".join(row))
    print()
