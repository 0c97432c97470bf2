"""Signed permutations of type D, Kraskiewicz-Lam tableaux and
Billey-Haiman polynomials.

A signed permutation ``w`` is stored by its images ``w(1), ..., w(n)``;
``w(-i) = -w(i)``.  Generators act on the right: ``s_i`` (``i >= 1``)
swaps positions ``i, i+1`` and ``s_0`` sends ``(u1, u2, ...)`` to
``(-u2, -u1, ...)``.  Products compose as maps, ``(uv)(j) = u(v(j))``, so
``s_{a1} ... s_{al}`` is the identity acted on successively by
``s_{a1}``, then ``s_{a2}``, and so on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .partitions import (
    PartitionError,
    TypedPartition,
    conjugate,
    split_columns,
    trim,
    typed_types,
)
from .symfunc import MPoly, VarConfig, family

__all__ = [
    "WeylError",
    "SignedPermutation",
    "KLTableau",
    "generator",
    "from_word",
    "reduced_words",
    "flatten",
    "flattened_words",
    "is_unimodal",
    "longest_unimodal",
    "related_diagonals",
    "partition_perm",
    "perm_partition",
    "is_k_grassmannian",
    "kl_tableaux",
    "m_statistic",
    "stanley_coefficients",
    "stanley_E",
    "schubert_A",
    "schubert_A_terms",
    "right_factors",
    "billey_haiman_D",
]

DEFAULT_MAX_LENGTH = 16


class WeylError(PartitionError):
    """Invalid signed permutation or an exceeded length guard."""


def _canon(images: tuple[int, ...]) -> tuple[int, ...]:
    n = len(images)
    while n > 0 and images[n - 1] == n:
        n -= 1
    return images[:n]


@dataclass(frozen=True, eq=False)
class SignedPermutation:
    """Type D Weyl group element in one-line notation (bar = negative)."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(abs(x) for x in imgs) != list(range(1, len(imgs) + 1)):
            raise WeylError(f"{imgs} is not a signed permutation")
        if sum(1 for x in imgs if x < 0) % 2:
            raise WeylError(f"{imgs} has an odd number of barred entries")

    @classmethod
    def identity(cls, n: int = 0) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def canonical(self) -> tuple[int, ...]:
        return _canon(self.images)

    def __eq__(self, other):
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def padded(self, n: int) -> tuple[int, ...]:
        return self.images + tuple(range(self.n + 1, n + 1))

    def __call__(self, j: int) -> int:
        a = abs(j)
        v = self.images[a - 1] if a <= self.n else a
        return v if j > 0 else -v

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        n = max(self.n, other.n)
        return SignedPermutation(tuple(self(other(j)) for j in range(1, n + 1)))

    def inverse(self) -> "SignedPermutation":
        out = [0] * self.n
        for i, v in enumerate(self.images, 1):
            out[abs(v) - 1] = i if v > 0 else -i
        return SignedPermutation(tuple(out))

    def act(self, i: int) -> "SignedPermutation":
        """Right action of ``s_i``."""
        u = list(self.padded(max(self.n, i + 1, 2)))
        if i == 0:
            u[0], u[1] = -u[1], -u[0]
        else:
            u[i - 1], u[i] = u[i], u[i - 1]
        return SignedPermutation(tuple(u))

    def length(self) -> int:
        """Inversions plus pairs ``i < j`` with ``w_i + w_j < 0``."""
        u = self.images
        out = 0
        for i in range(len(u)):
            for j in range(i + 1, len(u)):
                out += (u[i] > u[j]) + (u[i] + u[j] < 0)
        return out

    def has_descent(self, r: int) -> bool:
        u = self.padded(max(self.n, r + 1, 2))
        if r == 0:
            return u[0] + u[1] < 0
        return u[r - 1] > u[r]

    def descents(self) -> set[int]:
        top = max(self.n, 2)
        return {r for r in range(0, top) if self.has_descent(r)}

    def is_unbarred(self) -> bool:
        return all(x > 0 for x in self.images)

    def to_text(self) -> str:
        return " ".join(str(x) for x in self.images)

    def to_json(self) -> list[int]:
        return list(self.images)

    @classmethod
    def parse(cls, text: str) -> "SignedPermutation":
        toks = text.replace(",", " ").split()
        try:
            return cls(tuple(int(t) for t in toks))
        except ValueError as exc:
            raise WeylError(f"cannot parse {text!r}") from exc

    def __str__(self):
        return "(" + ",".join(f"{abs(x)}̄" if x < 0 else str(x) for x in self.images) + ")"

    def __repr__(self):
        return f"SignedPermutation({self.images})"


def generator(i: int, n: int | None = None) -> SignedPermutation:
    return SignedPermutation.identity(max(n or 0, i + 1, 2)).act(i)


def from_word(word: Iterable[int], n: int | None = None) -> SignedPermutation:
    w = SignedPermutation.identity(n or 0)
    for a in word:
        w = w.act(a)
    return w


# ---------------------------------------------------------------------------
# words


def _guard(w: SignedPermutation, max_length: int) -> int:
    ell = w.length()
    if ell > max_length:
        raise WeylError(f"length {ell} exceeds guard {max_length}")
    return ell


@lru_cache(maxsize=4096)
def _reduced(canon: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    w = SignedPermutation(canon)
    if not canon:
        return ((),)
    out = []
    for r in sorted(w.descents()):
        for word in _reduced(w.act(r).canonical):
            out.append(word + (r,))
    return tuple(out)


def reduced_words(w: SignedPermutation, max_length: int = DEFAULT_MAX_LENGTH) -> list[tuple[int, ...]]:
    """All reduced words of ``w``, sorted lexicographically."""
    _guard(w, max_length)
    return sorted(_reduced(w.canonical))


def flatten(word: Sequence[int]) -> tuple[int, ...]:
    """Replace every ``0`` by ``1``."""
    return tuple(1 if a == 0 else a for a in word)


@lru_cache(maxsize=4096)
def _flat(canon: tuple[int, ...]) -> frozenset:
    if not canon:
        return frozenset({()})
    w = SignedPermutation(canon)
    out = set()
    for r in w.descents():
        a = 1 if r == 0 else r
        out.update(f + (a,) for f in _flat(w.act(r).canonical))
    return frozenset(out)


def flattened_words(w: SignedPermutation, max_length: int = DEFAULT_MAX_LENGTH) -> list[tuple[int, ...]]:
    """Distinct flattened words of ``w``."""
    _guard(w, max_length)
    return sorted(_flat(w.canonical))


def is_unimodal(a: Sequence[int]) -> bool:
    """Strictly down, then strictly up; a repeated bottom is allowed only as ``1 1``."""
    m = len(a)
    i = 0
    while i + 1 < m and a[i] > a[i + 1]:
        i += 1
    if i + 1 < m and a[i] == a[i + 1] == 1:
        i += 1
    while i + 1 < m and a[i] < a[i + 1]:
        i += 1
    return i >= m - 1


def longest_unimodal(a: Sequence[int]) -> int:
    """Length of a longest unimodal subsequence."""
    m = len(a)
    if not m:
        return 0
    dec = [1] * m
    for j in range(m):
        for i in range(j):
            if a[i] > a[j]:
                dec[j] = max(dec[j], dec[i] + 1)
    bottom = list(dec)
    for j in range(m):
        if a[j] == 1:
            for i in range(j):
                if a[i] == 1:
                    bottom[j] = max(bottom[j], dec[i] + 1)
    up = list(bottom)
    for j in range(m):
        for i in range(j):
            if a[i] < a[j]:
                up[j] = max(up[j], up[i] + 1)
    return max(up)


# ---------------------------------------------------------------------------
# the lambda <-> w_lambda bijection


def _min_n(parts: tuple[int, ...], k: int) -> int:
    if not parts:
        return max(k, 1)
    return max(len(parts) + k - 1, parts[0] - k, k, 1)


def _diag_length(s: int, lam1: tuple[int, ...]) -> int:
    # boxes of diagonal s (row + staircase column = s) lying outside lam1
    return sum(1 for r in range(1, s) if r + (lam1[r - 1] if r <= len(lam1) else 0) < s)


def related_diagonals(parts: Sequence[int], k: int, n: int | None = None) -> tuple[list[int], list[int]]:
    """Lengths of the related and non-related diagonals.

    Related lengths are returned in increasing order and include any
    diagonal of length zero; non-related lengths omit zeros.
    """
    parts = trim(tuple(parts))
    n = _min_n(parts, k) if n is None else n
    lam1, _ = split_columns(parts, k)
    cols = conjugate(parts)
    heights = [cols[c - 1] if c <= len(cols) else 0 for c in range(1, k + 1)]
    rel_s = {heights[c - 1] - c + k + 1 for c in range(1, k + 1)}
    related = sorted(_diag_length(s, lam1) for s in rel_s)
    other = sorted(
        L for s in range(2, n + 2) if s not in rel_s for L in [_diag_length(s, lam1)] if L > 0
    )
    return related, other


def partition_perm(lam: TypedPartition, n: int | None = None) -> SignedPermutation:
    """The k-Grassmannian element ``w_lambda`` in ``W_{n+1}``.

    The element does not depend on ``n`` beyond trailing fixed points; the
    default ``n`` is the least one admitting ``lam``, raised to ``lam_1``.
    """
    parts, k, typ = lam.parts, lam.k, lam.type
    low = _min_n(parts, k)
    if n is None:
        n = max(low, parts[0] if parts else 0)
    elif n < low:
        raise WeylError(f"{lam.to_text()} needs n >= {low}")
    lam1, _ = split_columns(parts, k)
    bars = [-(a + 1) for a in lam1]
    if k == 0:
        missing = sorted(set(range(2, n + 2)) - {a + 1 for a in parts})
        body = bars + [0] + missing
    else:
        related, other = related_diagonals(parts, k, n)
        us = [u + 1 for u in other]
        if typ == 0:
            if related[0] != 0:
                raise WeylError(f"type 0 needs a zero related diagonal, got {related}")
            body = [0] + [r + 1 for r in related[1:]] + bars + us
        else:
            rs = [r + 1 for r in related]
            if typ == 2:
                rs[0] = -rs[0]
            body = rs + bars + [0] + us
    negs = sum(1 for x in body if x < 0)
    body = [(-1 if negs % 2 else 1) if x == 0 else x for x in body]
    return SignedPermutation(tuple(body))


def is_k_grassmannian(w: SignedPermutation, k: int) -> bool:
    allowed = {0, 1} if k == 1 else {k}
    return w.descents() <= allowed


def perm_partition(w: SignedPermutation, k: int) -> TypedPartition:
    """Inverse of :func:`partition_perm`."""
    if not is_k_grassmannian(w, k):
        raise WeylError(f"{w.to_text()} is not {k}-Grassmannian")
    imgs = w.images
    size = w.length()
    lam1 = tuple(sorted((-x - 1 for x in imgs[k:] if x < -1), reverse=True))
    if k == 0:
        lam = TypedPartition(lam1, 0, 0)
        if partition_perm(lam) != w:
            raise WeylError(f"{w.to_text()} does not match any strict partition")
        return lam
    p = len(lam1)
    rest = size - sum(lam1)

    def heights(c, top, remaining):
        if c == k:
            if remaining == 0:
                yield ()
            return
        for h in range(min(top, remaining), p - 1, -1):
            for tail in heights(c + 1, h, remaining - h):
                yield (h,) + tail

    for h in heights(0, rest, rest):
        lam2 = conjugate(h)
        parts = tuple(a + b for a, b in zip(lam2, lam1 + (0,) * len(lam2)))
        parts = trim(parts + lam1[len(lam2):])
        for t in typed_types(parts, k):
            try:
                lam = TypedPartition(parts, k, t)
            except PartitionError:
                continue
            if partition_perm(lam, max(w.n - 1, _min_n(parts, k))) == w:
                return lam
    raise WeylError(f"{w.to_text()} does not come from a typed {k}-strict partition")


# ---------------------------------------------------------------------------
# Kraskiewicz-Lam tableaux


@dataclass(frozen=True)
class KLTableau:
    """Rows ``t_1, t_2, ...`` top to bottom; ``m`` is the statistic ``m(T)``."""

    rows: tuple[tuple[int, ...], ...]
    m: int

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def row_word(self) -> tuple[int, ...]:
        out: tuple[int, ...] = ()
        for r in reversed(self.rows):
            out += r
        return out

    @property
    def weight(self) -> int:
        return 2 ** self.m

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "rows": [list(r) for r in self.rows], "m": self.m}

    def to_text(self) -> str:
        return " / ".join("".join(map(str, r)) if max(r) < 10 else ",".join(map(str, r))
                          for r in self.rows)


def m_statistic(word: Sequence[int], rows: int) -> int:
    """``rows + 1 - p``; ``p`` counts distinct values of ``s_{a1}...s_{aj}(1)``."""
    seen = {1}
    for j in range(1, len(word) + 1):
        x = 1
        for a in reversed(word[:j]):
            if x == a:
                x = a + 1
            elif x == a + 1:
                x = a
        seen.add(x)
    return rows + 1 - len(seen)


def _peel(word: tuple[int, ...]) -> tuple[tuple[int, ...], ...] | None:
    # each row is forced: t_1 is the suffix of length LU(word), and so on
    rows = []
    rest = word
    while rest:
        L = longest_unimodal(rest)
        row = rest[len(rest) - L:]
        if not is_unimodal(row):
            return None
        rows.append(row)
        rest = rest[: len(rest) - L]
    return tuple(rows)


@lru_cache(maxsize=4096)
def _kl(canon: tuple[int, ...]) -> tuple[KLTableau, ...]:
    out = []
    for f in sorted(_flat(canon)):
        rows = _peel(f)
        if rows is None:
            continue
        out.append(KLTableau(rows, m_statistic(f, len(rows))))
    return tuple(out)


def kl_tableaux(w: SignedPermutation, shape: Sequence[int] | None = None,
                max_length: int = DEFAULT_MAX_LENGTH) -> list[KLTableau]:
    """All Kraskiewicz-Lam tableaux of ``w``, optionally of a given shape."""
    _guard(w, max_length)
    out = list(_kl(w.canonical))
    if shape is not None:
        shape = trim(tuple(shape))
        out = [T for T in out if T.shape == shape]
    return out


def stanley_coefficients(w: SignedPermutation, max_length: int = DEFAULT_MAX_LENGTH) -> dict[tuple[int, ...], int]:
    """``d_w^lam = sum_T 2^{m(T)}`` over tableaux of shape ``lam``."""
    out: dict[tuple[int, ...], int] = {}
    for T in kl_tableaux(w, max_length=max_length):
        out[T.shape] = out.get(T.shape, 0) + T.weight
    return dict(sorted(out.items()))


def stanley_E(w: SignedPermutation, cfg: VarConfig | None = None, *, k: int | None = None,
              max_length: int = DEFAULT_MAX_LENGTH) -> MPoly:
    """Type D Stanley symmetric function ``sum d_w^lam P_lam(x)``."""
    kk = cfg.k if cfg is not None else (k or 0)
    if cfg is not None and w.length() > cfg.degcap:
        raise WeylError(f"length {w.length()} exceeds degcap {cfg.degcap}")
    out = MPoly.const(1, kk) if not w.canonical else MPoly.zero(kk)
    if w.canonical:
        for lam, d in stanley_coefficients(w, max_length).items():
            out = out + family("P", lam, k=kk).scale(d)
    if cfg is not None:
        return MPoly(kk, out.terms, cfg.degcap)
    return out


# ---------------------------------------------------------------------------
# type A Schubert polynomials


def _ddiff(poly: dict, i: int) -> dict:
    out: dict = {}
    for e, c in poly.items():
        e = list(e) + [0] * (i + 1 - len(e))
        a, b = e[i - 1], e[i]
        if a == b:
            continue
        sign = 1 if a > b else -1
        lo, hi = min(a, b), max(a, b)
        for j in range(hi - lo):
            f = list(e)
            f[i - 1] = hi - 1 - j
            f[i] = lo + j
            key = _strip(tuple(f))
            out[key] = out.get(key, 0) + sign * c
    return {e: c for e, c in out.items() if c}


def _strip(e: tuple[int, ...]) -> tuple[int, ...]:
    n = len(e)
    while n and e[n - 1] == 0:
        n -= 1
    return e[:n]


@lru_cache(maxsize=None)
def _schubert(v: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    n = len(v)
    if n <= 1:
        return (((), 1),)
    for i in range(1, n):
        if v[i - 1] < v[i]:
            u = list(v)
            u[i - 1], u[i] = u[i], u[i - 1]
            return tuple(sorted(_ddiff(dict(_schubert(tuple(u))), i).items()))
    # v is the longest element of S_n
    return ((_strip(tuple(range(n - 1, -1, -1))), 1),)


def _perm(v) -> tuple[int, ...]:
    if isinstance(v, SignedPermutation):
        if not v.is_unbarred():
            raise WeylError(f"{v.to_text()} is not an unsigned permutation")
        v = v.images
    v = tuple(int(x) for x in v)
    if sorted(v) != list(range(1, len(v) + 1)):
        raise WeylError(f"{v} is not a permutation")
    return _canon(v)


def schubert_A_terms(v) -> dict[tuple[int, ...], int]:
    """Type A Schubert polynomial as ``{exponent: coefficient}``."""
    return dict(_schubert(_perm(v)))


def schubert_A(v, cfg: VarConfig | None = None, *, k: int | None = None) -> MPoly:
    """``S_v(z)`` with ``z = y`` as an :class:`MPoly` in ``k`` y-variables."""
    kk = cfg.k if cfg is not None else (k if k is not None else len(_perm(v)))
    terms = {}
    for e, c in schubert_A_terms(v).items():
        if len(e) > kk:
            raise WeylError(f"Schubert polynomial of {v} needs more than {kk} variables")
        terms[((), e + (0,) * (kk - len(e)))] = Fraction(c)
    return MPoly(kk, terms, cfg.degcap if cfg is not None else None)


# ---------------------------------------------------------------------------
# Billey-Haiman polynomials


def right_factors(w: SignedPermutation) -> list[tuple[SignedPermutation, SignedPermutation]]:
    """Reduced factorizations ``w = u v`` with ``v`` an unsigned permutation."""
    seen = {w.canonical: w}
    frontier = [w]
    while frontier:
        nxt = []
        for x in frontier:
            for r in x.descents():
                if r == 0:
                    continue
                y = x.act(r)
                if y.canonical not in seen:
                    seen[y.canonical] = y
                    nxt.append(y)
        frontier = nxt
    out = [(u, u.inverse() * w) for u in seen.values()]
    return sorted(out, key=lambda uv: (uv[1].length(), uv[1].canonical))


def billey_haiman_D(w: SignedPermutation, cfg: VarConfig | None = None, *, k: int | None = None,
                    max_length: int = DEFAULT_MAX_LENGTH) -> MPoly:
    """``sum E_u(x) S_v(y)`` over reduced factorizations ``w = uv``, ``v`` unsigned."""
    kk = cfg.k if cfg is not None else (k or 0)
    if cfg is not None and w.length() > cfg.degcap:
        raise WeylError(f"length {w.length()} exceeds degcap {cfg.degcap}")
    _guard(w, max_length)
    out = MPoly.zero(kk)
    for u, v in right_factors(w):
        out = out + stanley_E(u, k=kk, max_length=max_length) * schubert_A(v, k=kk)
    if cfg is not None:
        return MPoly(kk, out.terms, cfg.degcap)
    return out
