"""Recall over a gold file built from generation, with a few injected faults,
and a comparison of the seed DB against a copy without the question clitic.

    python3 demos/evaluate.py
"""

import random
import shutil
import tempfile
from pathlib import Path

from morphforge import DATA_DIR, compile, coverage, diff_analyses, generate_all, load_specs
from morphforge.translit import ar2hsb, dediac

seed = compile(load_specs(DATA_DIR / "seed"))
rng = random.Random(3)
sample = rng.sample(generate_all(seed), 400)

with tempfile.TemporaryDirectory() as tmp:
    gold = Path(tmp) / "gold.tsv"
    with open(gold, "w", encoding="utf-8") as fh:
        fh.write("word\tlemma\tdiac\tbw_tag\tcount\n")
        for i, a in enumerate(sample):
            tag = a.bw_tag + "_X" if i % 50 == 0 else a.bw_tag      # corrupted tags
            lemma = "NOAN" if i % 97 == 0 else a.lemma               # placeholder rows
            fh.write(f"{dediac(a.diac)}\t{lemma}\t{a.diac}\t{tag}\t{rng.randint(1, 9)}\n")
    report = coverage(seed, gold)

for name, value in report.rows():
    print(f"{name:16} {value}")
for miss in report.misses:
    row = miss.to_row()
    print(f"  miss {ar2hsb(row[0]):18} differs in {row[5]}")

with tempfile.TemporaryDirectory() as tmp:
    root = Path(tmp) / "seed"
    shutil.copytree(DATA_DIR / "seed", root)
    order = root / "order.tsv"
    order.write_text(order.read_text(encoding="utf-8").replace("[QUES] ", ""), encoding="utf-8")
    morph = root / "morph.tsv"
    kept = [l for l in morph.read_text(encoding="utf-8").splitlines() if not l.startswith("[QUES]")]
    morph.write_text("\n".join(kept) + "\n", encoding="utf-8")
    reduced = compile(load_specs(root))

words = sorted({dediac(a.diac) for a in sample})
diff = diff_analyses(seed, reduced, words)
print("\nseed vs seed without the question proclitic")
for name, count, pct in diff.rows():
    print(f"  {name:7} {count:>5} {pct:>7}%")
