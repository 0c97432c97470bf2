"""Index sets of OG(2, 8) and the Hasse diagram of their closure order.

Run with ``python3 demos/bruhat_poset.py``.
"""

from ogschubert.indexsets import (
    bar,
    cover_relations,
    index_sets,
    iota,
    leq,
    preceq,
    to_partition,
    type_of,
)
from ogschubert.partitions import GrassParams

params = GrassParams.from_mN(2, 8)
sets = index_sets(params)
print(f"{len(sets)} index sets for OG(2, 8)")
for P in sets:
    lam = to_partition(P)
    print(f"  {P.to_text():<8} type {type_of(P)}  lambda {lam.to_text()}")

# Componentwise order alone is too coarse: {4} and {5} have opposite types.
line = GrassParams.from_mN(1, 8)
Q, P = (next(S for S in index_sets(line) if S.elements == (e,)) for e in (4, 5))
print(f"\n{Q} <= {P}: {leq(Q, P)},  {Q} preceq {P}: {preceq(Q, P)}")

# Below bar(P) for the componentwise order = below P or below iota(P).
for P in sets[:4]:
    below_bar = {Q for Q in sets if leq(Q, bar(P))}
    union = {Q for Q in sets if preceq(Q, P) or preceq(Q, iota(P))}
    print(f"union law at {P}: {below_bar == union}")

covers = cover_relations(params)
print(f"\n{len(covers)} cover relations; the first few:")
for Q, P in covers[:6]:
    print(f"  {Q} < {P}")
