"""Index sets, their types, and the Bruhat orders on them.

An index set is an ``m``-subset ``P`` of ``[1, N]`` with ``i + j != N + 1``
for all ``i, j`` in ``P``.  Index sets label the Schubert cells of
``OG(m, N)``.  For odd ``N`` the closure order is the componentwise order
``<=``; for even ``N`` it is ``preceq``, which also compares types on
critical pairs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .partitions import (
    GrassParams,
    KStrictPartition,
    PartitionError,
    TypedPartition,
    index_functions,
    k_strict_in_rectangle,
)

__all__ = [
    "IndexSet",
    "Preceq",
    "index_sets",
    "type_of",
    "from_partition",
    "to_partition",
    "leq",
    "bar",
    "bracket",
    "iota",
    "critical_indices",
    "preceq",
    "closure_order",
    "cover_relations",
    "poset_edges_text",
    "poset_json",
]


@dataclass(frozen=True)
class IndexSet:
    elements: tuple[int, ...]
    params: GrassParams

    def __post_init__(self):
        els = tuple(sorted(int(x) for x in self.elements))
        object.__setattr__(self, "elements", els)
        N, m = self.params.N, self.params.m
        if len(els) != m or len(set(els)) != m:
            raise PartitionError(f"index set needs {m} distinct elements, got {els}")
        if els and (els[0] < 1 or els[-1] > N):
            raise PartitionError(f"{els} is not inside [1, {N}]")
        s = set(els)
        if any(N + 1 - p in s for p in els):
            raise PartitionError(f"{els} has two elements summing to {N + 1}")

    @classmethod
    def of(cls, elements, m: int, N: int) -> "IndexSet":
        return cls(tuple(elements), GrassParams.from_mN(m, N))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> list[int]:
        return list(self.elements)

    def to_text(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __str__(self):
        return self.to_text()


def index_sets(params: GrassParams) -> list[IndexSet]:
    """All index sets for ``OG(m, N)`` in lexicographic order."""
    N, m = params.N, params.m
    out = []
    for comb in itertools.combinations(range(1, N + 1), m):
        s = set(comb)
        if all(N + 1 - p not in s for p in comb):
            out.append(IndexSet(comb, params))
    return out


def _n(params: GrassParams) -> int:
    return params.n


def type_of(P: IndexSet) -> int:
    """0 if ``P`` misses ``{n+1, n+2}``, else 1 plus the parity of
    ``#([1, n+1] \\ P)``.  Odd ``N`` has no types and returns 0."""
    if P.params.parity == "odd":
        return 0
    n = _n(P.params)
    s = set(P.elements)
    if n + 1 not in s and n + 2 not in s:
        return 0
    missing = sum(1 for i in range(1, n + 2) if i not in s)
    return 1 + missing % 2


def bar(P: IndexSet) -> IndexSet:
    """Replace ``n+1`` by ``n+2``."""
    n = _n(P.params)
    return IndexSet(tuple(n + 2 if p == n + 1 else p for p in P.elements), P.params)


def bracket(P: IndexSet) -> frozenset[int]:
    """``[P] = P u {N+1-p}``."""
    N = P.params.N
    return frozenset(P.elements) | frozenset(N + 1 - p for p in P.elements)


def iota(P: IndexSet) -> IndexSet:
    """Swap ``n+1`` and ``n+2`` (even ``N``)."""
    if P.params.parity == "odd":
        return P
    n = _n(P.params)
    swap = {n + 1: n + 2, n + 2: n + 1}
    return IndexSet(tuple(swap.get(p, p) for p in P.elements), P.params)


def leq(Q: IndexSet, P: IndexSet) -> bool:
    """Componentwise ``q_j <= p_j``."""
    _same(Q, P)
    return all(q <= p for q, p in zip(Q.elements, P.elements))


def _same(Q: IndexSet, P: IndexSet):
    if Q.params != P.params:
        raise PartitionError("index sets belong to different Grassmannians")


def critical_indices(Q: IndexSet, P: IndexSet) -> list[int]:
    """All ``c <= n+1`` with ``[c, n+1]`` inside ``[P] n [Q]`` and equal
    counts of ``P`` and ``Q`` below ``c``."""
    _same(Q, P)
    n = _n(P.params)
    common = bracket(P) & bracket(Q)
    out = []
    for c in range(n + 1, 0, -1):
        if c not in common:
            break
        below_q = sum(1 for q in Q.elements if q < c)
        below_p = sum(1 for p in P.elements if p < c)
        if below_q == below_p:
            out.append(c)
    return sorted(out)


class Preceq(NamedTuple):
    holds: bool
    critical: int | None

    def __bool__(self):
        return self.holds


def preceq(Q: IndexSet, P: IndexSet) -> Preceq:
    """``Q preceq P``: ``Q <= P`` and equal types when the pair is critical.

    The witness is the largest critical index, or ``None`` for a
    non-critical pair.
    """
    if P.params.parity == "odd":
        return Preceq(leq(Q, P), None)
    if not leq(Q, P):
        crit = critical_indices(Q, P)
        return Preceq(False, crit[-1] if crit else None)
    crit = critical_indices(Q, P)
    if not crit:
        return Preceq(True, None)
    return Preceq(type_of(Q) == type_of(P), crit[-1])


def closure_order(Q: IndexSet, P: IndexSet) -> bool:
    """``X_Q`` inside ``X_P``: ``<=`` for odd ``N`` and ``preceq`` for even."""
    return bool(preceq(Q, P))


# ---------------------------------------------------------------------------
# the partition bijection


@lru_cache(maxsize=None)
def _bar_table(params: GrassParams) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Index sets without ``n+1`` keyed by elements, valued by partitions."""
    table = {}
    k = params.k
    for parts in k_strict_in_rectangle(k, params.m, params.width):
        lam = TypedPartition(parts, k, 1 if k in parts else 0)
        pbar, _ = index_functions(lam, params)
        table[tuple(pbar)] = parts
    return table


def from_partition(lam: TypedPartition | KStrictPartition, params: GrassParams) -> IndexSet:
    """Index set ``{p_j}`` of a typed partition (even ``N``) or of a
    k-strict partition (odd ``N``)."""
    if isinstance(lam, KStrictPartition):
        typ = 1 if (lam.k in lam.parts) else 0
        lam = TypedPartition(lam.parts, lam.k, typ)
    if params.parity == "odd":
        pbar, _ = index_functions(lam, params)
        return IndexSet(tuple(pbar), params)
    _, p = index_functions(lam, params)
    return IndexSet(tuple(p), params)


def to_partition(P: IndexSet) -> TypedPartition | KStrictPartition:
    """Inverse of :func:`from_partition`."""
    params = P.params
    parts = _bar_table(params).get(bar(P).elements)
    if parts is None:
        raise PartitionError(f"{P.to_text()} has no partition")
    if params.parity == "odd":
        return KStrictPartition(parts, params.k)
    return TypedPartition(parts, params.k, type_of(P))


# ---------------------------------------------------------------------------
# poset export


def cover_relations(params: GrassParams) -> list[tuple[IndexSet, IndexSet]]:
    """Cover relations ``(Q, P)`` of the closure order (``Q`` below ``P``)."""
    sets = index_sets(params)
    below = {P: {Q for Q in sets if Q != P and closure_order(Q, P)} for P in sets}
    covers = []
    for P in sets:
        for Q in below[P]:
            if not any(Q in below[R] for R in below[P]):
                covers.append((Q, P))
    return sorted(covers, key=lambda e: (e[1].elements, e[0].elements))


def _label(P: IndexSet) -> dict:
    lam = to_partition(P)
    return {"set": P.to_json(), "type": type_of(P), "lambda": list(lam.parts)}


def poset_edges_text(params: GrassParams) -> str:
    """One cover per line: ``Q < P`` with index sets as sorted integer lists."""
    lines = [f"{Q.to_text()} < {P.to_text()}" for Q, P in cover_relations(params)]
    return "\n".join(lines)


def poset_json(params: GrassParams) -> str:
    data = {
        "m": params.m,
        "N": params.N,
        "nodes": [_label(P) for P in index_sets(params)],
        "covers": [[Q.to_json(), P.to_json()] for Q, P in cover_relations(params)],
    }
    return json.dumps(data, sort_keys=True)


def iter_pairs(params: GrassParams) -> Iterator[tuple[IndexSet, IndexSet]]:
    sets = index_sets(params)
    return itertools.product(sets, sets)
