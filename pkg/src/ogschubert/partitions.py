"""k-strict partitions, typed k-strict partitions and Grassmannian parameters.

Partitions are stored as tuples of positive integers in weakly decreasing
order (trailing zeros trimmed).  The public objects :class:`KStrictPartition`
and :class:`TypedPartition` carry ``k`` with them; the expansion engines work
on the bare tuples for speed.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterator

__all__ = [
    "PartitionError",
    "GrassParams",
    "KStrictPartition",
    "TypedPartition",
    "DerivedShapes",
    "trim",
    "is_k_strict",
    "validate",
    "typed",
    "ell_k",
    "has_part",
    "add_part",
    "remove_part",
    "conjugate",
    "contains",
    "k_strict_partitions",
    "k_strict_in_rectangle",
    "typed_types",
    "enumerate_typed",
    "index_functions",
    "derived_shapes",
    "parse_text",
]


class PartitionError(ValueError):
    """Raised for malformed partitions or inconsistent parameters."""


# ---------------------------------------------------------------------------
# bare tuple helpers


def trim(parts) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    i = len(parts)
    while i and parts[i - 1] == 0:
        i -= 1
    return parts[:i]


def is_partition(parts: tuple[int, ...]) -> bool:
    return all(p >= 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def is_k_strict(parts: tuple[int, ...], k: int) -> bool:
    """No part larger than ``k`` is repeated."""
    return all(
        not (parts[i] > k and parts[i] == parts[i + 1]) for i in range(len(parts) - 1)
    )


def ell_k(parts, k: int) -> int:
    """Number of parts strictly greater than ``k``."""
    if isinstance(parts, (KStrictPartition, TypedPartition)):
        parts = parts.parts
    return sum(1 for p in parts if p > k)


def has_part(parts: tuple[int, ...], k: int) -> bool:
    return k in parts


def add_part(parts: tuple[int, ...], r: int) -> tuple[int, ...]:
    """Insert one part ``r`` keeping the order."""
    if r <= 0:
        return parts
    return tuple(sorted(parts + (r,), reverse=True))


def remove_part(parts: tuple[int, ...], r: int) -> tuple[int, ...]:
    if r not in parts:
        raise PartitionError(f"{parts} has no part equal to {r}")
    i = parts.index(r)
    return parts[:i] + parts[i + 1:]


def conjugate(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > c) for c in range(parts[0]))


def contains(outer: tuple[int, ...], inner: tuple[int, ...]) -> bool:
    """Young diagram containment ``inner`` inside ``outer``."""
    if len(inner) > len(outer):
        return False
    return all(a >= b for a, b in zip(outer, inner))


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class GrassParams:
    """Numerical data of OG(m, N): ``K = N - 2m``, ``k = K // 2`` and ``n``.

    Build with :meth:`from_mN`, :meth:`even` or :meth:`odd`.
    """

    N: int
    m: int
    n: int = field(init=False)
    k: int = field(init=False)
    K: int = field(init=False)

    def __post_init__(self):
        N, m = self.N, self.m
        if N < 1 or m < 1 or 2 * m >= N:
            raise PartitionError(f"need 1 <= m < N/2, got m={m}, N={N}")
        K = N - 2 * m
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "k", K // 2)
        object.__setattr__(self, "n", (N - 1) // 2 if N % 2 else (N - 2) // 2)
        if self.parity == "even" and self.k == 0:
            raise PartitionError("k = 0 (maximal isotropic) is not supported")

    @classmethod
    def from_mN(cls, m: int, N: int) -> "GrassParams":
        return cls(N=N, m=m)

    @classmethod
    def even(cls, k: int, n: int) -> "GrassParams":
        """OG(n+1-k, 2n+2)."""
        return cls(N=2 * n + 2, m=n + 1 - k)

    @classmethod
    def odd(cls, k: int, n: int) -> "GrassParams":
        """OG(n-k, 2n+1)."""
        return cls(N=2 * n + 1, m=n - k)

    @property
    def parity(self) -> str:
        return "odd" if self.N % 2 else "even"

    @property
    def width(self) -> int:
        """Number of columns ``n + k`` of the bounding rectangle."""
        return self.n + self.k

    def fits(self, parts: tuple[int, ...]) -> bool:
        return len(parts) <= self.m and (not parts or parts[0] <= self.width)

    def odd_partner(self) -> "GrassParams":
        """OG(m-1, N-1) for even N."""
        if self.parity != "even":
            raise PartitionError("odd partner only defined for even N")
        return GrassParams(N=self.N - 1, m=self.m - 1)

    def __str__(self):
        return f"OG({self.m},{self.N})"


# ---------------------------------------------------------------------------
# public partition objects


@dataclass(frozen=True, order=True)
class KStrictPartition:
    parts: tuple[int, ...]
    k: int

    def __post_init__(self):
        parts = trim(self.parts)
        if not is_partition(parts):
            raise PartitionError(f"{self.parts} is not weakly decreasing and nonnegative")
        if self.k < 0:
            raise PartitionError("k must be nonnegative")
        if not is_k_strict(parts, self.k):
            raise PartitionError(f"{parts} repeats a part larger than k={self.k}")
        object.__setattr__(self, "parts", parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def ell_k(self) -> int:
        return ell_k(self.parts, self.k)

    @property
    def positive_type(self) -> bool:
        return self.k in self.parts

    def _same_k(self, other: "KStrictPartition"):
        if other.k != self.k:
            raise PartitionError(f"k mismatch: {self.k} vs {other.k}")

    def plus_k(self) -> "KStrictPartition":
        return KStrictPartition(add_part(self.parts, self.k), self.k)

    def minus_k(self) -> "KStrictPartition":
        return KStrictPartition(remove_part(self.parts, self.k), self.k)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True, order=True)
class TypedPartition:
    """A k-strict partition with a type in {0, 1, 2}.

    The type is nonzero exactly when some part equals ``k``.
    """

    parts: tuple[int, ...]
    k: int
    type: int = 0

    def __post_init__(self):
        base = KStrictPartition(self.parts, self.k)
        object.__setattr__(self, "parts", base.parts)
        if self.type not in (0, 1, 2):
            raise PartitionError(f"type must be 0, 1 or 2, got {self.type}")
        if (self.type > 0) != (self.k in base.parts):
            raise PartitionError(
                f"type {self.type} inconsistent with {base.parts} (k={self.k})"
            )

    @property
    def base(self) -> KStrictPartition:
        return KStrictPartition(self.parts, self.k)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def ell_k(self) -> int:
        return ell_k(self.parts, self.k)

    @property
    def key(self) -> tuple[tuple[int, ...], int]:
        return (self.parts, self.type)

    def swap_type(self) -> "TypedPartition":
        return TypedPartition(self.parts, self.k, (3 - self.type) % 3)

    def to_text(self) -> str:
        return f"k={self.k}:[{','.join(map(str, self.parts))}]:t{self.type}"

    def to_json(self) -> dict:
        return {"k": self.k, "parts": list(self.parts), "type": self.type}

    @classmethod
    def from_json(cls, data) -> "TypedPartition":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["parts"]), int(data["k"]), int(data.get("type", 0)))

    def __str__(self):
        return self.to_text()


_TEXT_RE = re.compile(r"^k=(\d+):\[([0-9,\s]*)\]:t([012])$")


def parse_text(text: str) -> TypedPartition:
    """Parse the canonical form ``k=2:[3,2,2]:t1``."""
    m = _TEXT_RE.match(text.strip())
    if not m:
        raise PartitionError(f"cannot parse {text!r}")
    parts = tuple(int(x) for x in m.group(2).split(",") if x.strip())
    return TypedPartition(parts, int(m.group(1)), int(m.group(3)))


def validate(parts, k: int) -> KStrictPartition:
    return KStrictPartition(tuple(parts), k)


def typed(parts, k: int, type: int | None = None) -> TypedPartition:
    """Build a typed partition; ``type=None`` picks 0 or 1 automatically."""
    parts = trim(parts)
    if type is None:
        type = 1 if k in parts else 0
    return TypedPartition(parts, k, type)


def typed_types(parts: tuple[int, ...], k: int) -> tuple[int, ...]:
    return (1, 2) if k in parts else (0,)


# ---------------------------------------------------------------------------
# enumeration


def k_strict_partitions(size: int, k: int, max_part: int | None = None,
                        max_len: int | None = None) -> list[tuple[int, ...]]:
    """All k-strict partitions of ``size`` (optionally bounded)."""
    out: list[tuple[int, ...]] = []
    top = size if max_part is None else min(size, max_part)

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if max_len is not None and len(prefix) >= max_len:
            return
        for p in range(min(largest, remaining), 0, -1):
            if prefix and p == prefix[-1] and p > k:
                continue
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(size, top, [])
    return out


def k_strict_in_rectangle(k: int, rows: int, cols: int) -> list[tuple[int, ...]]:
    """All k-strict partitions inside a ``rows x cols`` rectangle, by size."""
    out: list[tuple[int, ...]] = []

    def rec(prefix, largest):
        out.append(tuple(prefix))
        if len(prefix) >= rows:
            return
        for p in range(largest, 0, -1):
            if prefix and p == prefix[-1] and p > k:
                continue
            prefix.append(p)
            rec(prefix, p)
            prefix.pop()

    rec([], cols)
    out.sort(key=lambda p: (sum(p), tuple(-x for x in p)))
    return out


def enumerate_typed(k: int, n: int | None = None, m: int | None = None, *,
                    cols: int | None = None, size: int | None = None,
                    max_size: int | None = None) -> list[TypedPartition]:
    """Typed k-strict partitions.

    With ``n`` given the partitions fill the ``m x (n+k)`` rectangle, where
    ``m`` defaults to ``n+1-k`` (the even Grassmannian).  With ``n=None`` the
    enumeration is unbounded and one of ``size`` / ``max_size`` must be set.
    """
    if n is not None:
        rows = n + 1 - k if m is None else m
        shapes = k_strict_in_rectangle(k, rows, n + k if cols is None else cols)
        if size is not None:
            shapes = [s for s in shapes if sum(s) == size]
        if max_size is not None:
            shapes = [s for s in shapes if sum(s) <= max_size]
    else:
        if size is None and max_size is None:
            raise PartitionError("unbounded enumeration needs size or max_size")
        sizes = [size] if size is not None else range(max_size + 1)
        shapes = [s for d in sizes for s in k_strict_partitions(d, k)]
    return [TypedPartition(s, k, t) for s in shapes for t in typed_types(s, k)]


# ---------------------------------------------------------------------------
# index functions


def index_functions(lam: TypedPartition, params: GrassParams) -> tuple[list[int], list[int]]:
    """Return ``(pbar, p)`` for ``j = 1..m``.

    ``pbar`` is the bare index function; ``p`` lowers ``pbar_j = n+2`` to
    ``n+1`` according to the type parity rule (even N only).
    """
    K, k, m, N, n = params.K, params.k, params.m, params.N, params.n
    if lam.k != k:
        raise PartitionError(f"partition has k={lam.k}, parameters have k={k}")
    if not params.fits(lam.parts):
        raise PartitionError(f"{lam.parts} does not fit in {m}x{params.width}")
    la = list(lam.parts) + [0] * (m - len(lam.parts))
    pbar = []
    for j in range(1, m + 1):
        lj = la[j - 1]
        cnt = sum(1 for i in range(1, j + 1)
                  if la[i - 1] + lj >= K + j - i and la[i - 1] > k)
        pbar.append(N - m + j - lj - cnt)
    p = list(pbar)
    if params.parity == "even":
        for j in range(1, m + 1):
            prev = la[j - 2] if j >= 2 else float("inf")
            if la[j - 1] == k < prev and (n + j + lam.type) % 2 == 0:
                p[j - 1] = pbar[j - 1] - 1
    return pbar, p


# ---------------------------------------------------------------------------
# derived shapes


@dataclass(frozen=True)
class DerivedShapes:
    lambda_star: tuple[int, ...]
    lambda_plus_k: tuple[int, ...]
    lambda_minus_k: tuple[int, ...] | None
    lambda1: tuple[int, ...]
    lambda2: tuple[int, ...]
    lambda3: tuple[int, ...] | None
    lambda4: tuple[int, ...] | None
    conjugate: tuple[int, ...]


def split_columns(parts: tuple[int, ...], k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(boxes right of column k, boxes in the first k columns)."""
    right = trim(tuple(max(p - k, 0) for p in parts))
    left = trim(tuple(min(p, k) for p in parts))
    return right, left


def derived_shapes(lam: TypedPartition | KStrictPartition, r1: int | None = None) -> DerivedShapes:
    """Derived shapes of ``lam``.

    ``lambda3``/``lambda4`` need the length ``r1`` of the shortest related
    diagonal (see :func:`ogschubert.weyl.related_diagonals`); they are computed
    for type-2 input when ``r1`` is supplied.
    """
    parts, k = lam.parts, lam.k
    lam1, lam2 = split_columns(parts, k)
    lam3 = lam4 = None
    if r1 is not None:
        lam3 = tuple(sorted(lam1 + ((r1,) if r1 else ()), reverse=True))
        cols = list(conjugate(lam2)) + [0] * (k - len(conjugate(lam2)))
        cols[k - 1] -= r1
        if cols[k - 1] < 0:
            raise PartitionError("r1 exceeds the k-th column")
        lam4 = conjugate(trim(tuple(cols)))
    return DerivedShapes(
        lambda_star=parts[1:],
        lambda_plus_k=add_part(parts, k),
        lambda_minus_k=remove_part(parts, k) if k in parts else None,
        lambda1=lam1,
        lambda2=lam2,
        lambda3=lam3,
        lambda4=lam4,
        conjugate=conjugate(parts),
    )


def iter_boxes(parts: tuple[int, ...]) -> Iterator[tuple[int, int]]:
    for r, p in enumerate(parts, start=1):
        for c in range(1, p + 1):
            yield (r, c)
