"""Classify every seed lexeme into its paradigm class and list QA findings.

    python3 demos/lexicon_qa.py
"""

from collections import Counter

from morphforge import DATA_DIR, load_specs
from morphforge.lexqa import lexeme_signature, qa_report
from morphforge.translit import ar2hsb

specs = load_specs(DATA_DIR / "seed")
per_class = Counter()

for (lemma, pos), pid, issues in qa_report(specs):
    per_class[pid] += 1
    sig, stems, _ = lexeme_signature(specs.lexemes[(lemma, pos)])
    print(f"{ar2hsb(lemma):14} {pos:9} {pid}  stems={stems}  {' '.join(sorted(sig))}")
    for issue in issues:
        print(f"    {issue.severity}: {issue.code} {ar2hsb(issue.detail)}")

print("\nlexemes per class:", dict(sorted(per_class.items())))
print("\nstem patterns")
for e in specs.lexicon:
    print(f"  {ar2hsb(e.stem_form):14} {'.'.join(map(ar2hsb, e.root)):10} {ar2hsb(e.pattern)}")
