"""Compile the small safiyr fragment and watch conditions pick allomorphs.

    python3 demos/fragment_walkthrough.py
"""

from morphforge import DATA_DIR, analyze, compile, generate, load_specs, stats
from morphforge.translit import ar2hsb, hsb2ar, tag_ar2hsb

specs = load_specs(DATA_DIR / "fig2")
db = compile(specs)

print("complex morphs per side, with their categories")
for side in ("prefix", "stem", "suffix"):
    for cm in db.entries(side):
        print(f"  {side:6} {ar2hsb(cm.surface_diac) or '-':14} {cm.category}")

print("\nevery word the fragment allows, with its tag")
for a in generate(db, hsb2ar("safiyr")):
    print(f"  {ar2hsb(a.diac):22} {tag_ar2hsb(a.bw_tag)}")

# the hamza buffer ŷ needs an enclitic after an /i/ suffix, so the bare
# indefinite genitive must not surface with it
blocked = hsb2ar("sufaraAŷĩ")
print(f"\nanalyses of *{ar2hsb(blocked)}: {len(analyze(db, blocked))}")

st = stats(db, specs)
print(f"analyses with clitics: {st.analyses_with_clitics}, without: {st.analyses_without_clitics}")
