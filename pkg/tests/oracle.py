"""Independent reference semantics: enumerate every allomorph tuple of every
order line and evaluate the original require expressions on the union of
set conditions. Nothing here goes through the compiled tables."""

import itertools

from morphforge.core import STEM_CLASS, satisfies
from morphforge.generate import triples


def _inert(a):
    return (not a.form and not a.bw_segment and a.features.is_empty()
            and not a.set_conditions and not a.require.terms)


def slot(specs, cid):
    if cid == STEM_CLASS:
        seen = {}
        out = []
        for entry in specs.lexicon:
            k = seen.get(entry.lexeme_id, 0)
            seen[entry.lexeme_id] = k + 1
            out.append((f"{STEM_CLASS}{entry.lemma}#{entry.pos}.{k}", entry.as_allomorph()))
        return out
    return [(f"{cid}{m.id}.{i}", a)
            for m in specs.classes[cid].morphemes for i, a in enumerate(m.allomorphs)]


def brute_force(specs) -> set:
    """Identities (ids of non-inert members, in order) of every valid word."""
    out = set()
    for line in specs.order_lines:
        slots = [[(mid, a, a.set_conditions, a.require) for mid, a in slot(specs, cid)]
                 for cid in line.classes]
        for combo in itertools.product(*slots):
            union = frozenset().union(*(c[2] for c in combo))
            if all(satisfies(union, c[3]) for c in combo):
                out.add(tuple(c[0] for c in combo if not _inert(c[1])))
    return out


def admitted(db) -> set:
    """Identities of every triple the three compatibility tables admit."""
    return {tuple(m for m, _ in p.members + s.members + x.members)
            for p, s, x in triples(db, db.entries("stem"))}
