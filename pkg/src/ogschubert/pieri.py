"""Pieri rules for products of Chern classes with Schubert classes.

The relation ``lam -> mu`` removes a vertical strip from the first ``k``
columns of ``lam`` and adds a horizontal strip, subject to two conditions on
``K``-related boxes.  The multiplicity of ``mu`` is a power of two counting
the connected components of the unconstrained new boxes right of column k.

Three flavours of the classical rule are exposed through :func:`chern_pieri`:

* ``hat``   products with ``[Y_lam]`` (the sum of both types), exponent N-hat;
* ``typed`` products with a single typed class, exponent N;
* ``tilde`` products with the difference of the two types, exponent N.

Quantum versions cover ``K >= 3`` (:func:`quantum_chern_pieri`) and the
two-parameter case ``K = 2`` (:func:`k2_quantum_pieri`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .partitions import (
    GrassParams,
    PartitionError,
    TypedPartition,
    add_part,
    conjugate,
    is_k_strict,
    remove_part,
    trim,
)

__all__ = [
    "Box",
    "PieriTerm",
    "k_related",
    "pieri_relation",
    "strip_successors",
    "n_hat",
    "chern_pieri",
    "quantum_chern_pieri",
    "k2_quantum_pieri",
    "terms_to_json",
]


class Box(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class PieriTerm:
    """One term ``sign * 2^pow2 * class(mu) * q1^d1 q2^d2``.

    ``kind`` names the class: ``hat`` ([Y_mu], or sigma_mu for odd K),
    ``typed`` (tau_mu of the given type) or ``tilde`` (tau_mu - tau'_mu).
    """

    mu: tuple[int, ...]
    pow2: int
    q: tuple[int, int] = (0, 0)
    kind: str = "hat"
    type: int | None = None
    sign: int = 1

    @property
    def coeff(self) -> Fraction:
        return self.sign * Fraction(2) ** self.pow2

    def to_json(self) -> dict:
        out = {"mu": list(self.mu), "type": self.type, "pow2": self.pow2,
               "q": list(self.q)}
        if self.kind != "typed":
            out["kind"] = self.kind
        if self.sign != 1:
            out["sign"] = self.sign
        return out


def terms_to_json(terms: list[PieriTerm]) -> list[dict]:
    return [t.to_json() for t in terms]


def k_related(a: Box | tuple[int, int], b: Box | tuple[int, int], K: int) -> bool:
    """``[r,c]`` and ``[r',c']`` with ``c <= k < c'`` and ``c + c' = K + 1 + r - r'``."""
    k = K // 2
    (r, c), (r2, c2) = a, b
    return c <= k < c2 and c + c2 == K + 1 + r - r2


def _padded(parts, length):
    return list(parts) + [0] * (length - len(parts))


@lru_cache(maxsize=None)
def pieri_relation(lam: tuple[int, ...], mu: tuple[int, ...], K: int) -> int | None:
    """``N(lam, mu)`` if ``lam -> mu``, otherwise ``None``."""
    k = K // 2
    if not is_k_strict(mu, k):
        return None
    L = max(len(lam), len(mu)) + 1
    la, mu_ = _padded(lam, L), _padded(mu, L)
    nu = [min(a, b) for a, b in zip(la, mu_)]
    for a, b in zip(la, nu):
        if a > b and (a - b != 1 or a > k):
            return None
    for i in range(L - 1):
        if mu_[i + 1] > nu[i]:
            return None
    new = [(r, c) for r in range(1, L + 1) for c in range(la[r - 1] + 1, mu_[r - 1] + 1)]
    right_new = [b for b in new if b[1] > k]
    lam_cols = _padded(conjugate(trim(tuple(la))), k)
    mu_cols = _padded(conjugate(trim(tuple(mu_))), k)
    mentioned: set[tuple[int, int]] = set()
    for c in range(1, k + 1):
        lc, mc = lam_cols[c - 1], mu_cols[c - 1]
        if mc == lc:
            # an empty column has no bottom box; [0, c] relates to nothing
            # because mu then has no boxes right of column k
            if lc == 0:
                continue
            rel = [b for b in right_new if k_related((lc, c), b, K)]
            if len(rel) > 1:
                return None
            mentioned.update(rel)
        elif mc < lc:
            checks = [(r, c) for r in range(mc + 1, lc + 1)]
            if mc > 0:
                checks.append((mc, c))
            partners = []
            for box in checks:
                rel = [b for b in right_new if k_related(box, b, K)]
                if len(rel) != 1:
                    return None
                partners.append(rel[0])
            if len({b[0] for b in partners}) > 1:
                return None
            mentioned.update(partners)
    free = [b for b in right_new if b not in mentioned]
    return _components(free)


def _components(boxes: list[tuple[int, int]]) -> int:
    parent = {b: b for b in boxes}

    def find(b):
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        return b

    for (r, c) in boxes:
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                nb = (r + dr, c + dc)
                if nb in parent:
                    ra, rb = find((r, c)), find(nb)
                    if ra != rb:
                        parent[ra] = rb
    return len({find(b) for b in boxes})


def _vertical_removals(lam: tuple[int, ...], k: int):
    rows = [i for i, a in enumerate(lam) if 1 <= a <= k]
    out = []
    for mask in range(1 << len(rows)):
        nu = list(lam)
        for bit, i in enumerate(rows):
            if mask >> bit & 1:
                nu[i] -= 1
        if all(nu[i] >= nu[i + 1] for i in range(len(nu) - 1)):
            out.append(tuple(nu))
    return out


def _horizontal_additions(nu: tuple[int, ...], size: int, max_rows, max_cols):
    L = len(nu) + 1
    if max_rows is not None:
        L = min(L, max_rows)
    base = _padded(nu, L)
    out = []

    def rec(i, remaining, acc):
        if i == L:
            if remaining == 0:
                out.append(trim(tuple(acc)))
            return
        lo = base[i]
        hi = base[i] + remaining if i == 0 else min(base[i - 1], base[i] + remaining)
        if max_cols is not None:
            hi = min(hi, max_cols)
        for v in range(lo, hi + 1):
            rec(i + 1, remaining - (v - lo), acc + [v])

    if L == 0:
        if size == 0:
            out.append(())
        return out
    rec(0, size, [])
    return out


@lru_cache(maxsize=None)
def _successors(lam, p, K, max_rows, max_cols):
    k = K // 2
    target = sum(lam) + p
    seen = set()
    out = []
    for nu in _vertical_removals(lam, k):
        for mu in _horizontal_additions(nu, target - sum(nu), max_rows, max_cols):
            if mu in seen:
                continue
            seen.add(mu)
            N = pieri_relation(lam, mu, K)
            if N is not None:
                out.append((mu, N))
    out.sort(key=lambda t: (tuple(-x for x in t[0]), len(t[0])))
    return tuple(out)


def strip_successors(lam, p: int, K: int, *, max_rows: int | None = None,
                     max_cols: int | None = None) -> list[tuple[tuple[int, ...], int]]:
    """All ``(mu, N(lam, mu))`` with ``lam -> mu`` and ``|mu| = |lam| + p``.

    ``max_rows`` / ``max_cols`` restrict ``mu`` to a rectangle.
    """
    parts = lam.parts if hasattr(lam, "parts") else trim(tuple(lam))
    if hasattr(lam, "k") and lam.k != K // 2:
        raise PartitionError(f"partition has k={lam.k} but K={K}")
    if not is_k_strict(parts, K // 2):
        raise PartitionError(f"{parts} is not {K // 2}-strict")
    if p < 0:
        return []
    return list(_successors(parts, p, K, max_rows, max_cols))


def _positive(parts, K: int) -> bool:
    return K % 2 == 0 and (K // 2) in parts


def n_hat(lam, mu, K: int, N: int | None = None) -> int:
    """``N(lam, mu) + 1`` if ``lam`` has positive type and ``mu`` does not."""
    lam = lam.parts if hasattr(lam, "parts") else tuple(lam)
    mu = mu.parts if hasattr(mu, "parts") else tuple(mu)
    if N is None:
        N = pieri_relation(trim(lam), trim(mu), K)
        if N is None:
            raise PartitionError(f"{lam} -> {mu} does not hold for K={K}")
    return N + 1 if _positive(lam, K) and not _positive(mu, K) else N


def chern_pieri(lam, p: int, K: int, mode: str = "hat", *,
                max_rows: int | None = None, max_cols: int | None = None) -> list[PieriTerm]:
    """Classical product of ``c_p`` with the class of ``lam``.

    ``mode='hat'`` takes a k-strict partition and uses ``[Y_lam]``; ``typed``
    takes a :class:`TypedPartition`; ``tilde`` uses ``tau_lam - tau'_lam``
    and returns nothing when ``lam`` lacks a part ``k``.
    """
    if mode not in ("hat", "typed", "tilde"):
        raise PartitionError(f"unknown mode {mode!r}")
    if mode != "hat" and K % 2:
        raise PartitionError(f"mode {mode!r} needs even K")
    parts = lam.parts if hasattr(lam, "parts") else trim(tuple(lam))
    if mode == "typed" and not isinstance(lam, TypedPartition):
        raise PartitionError("typed mode needs a TypedPartition")
    if mode == "tilde" and not _positive(parts, K):
        return []
    succ = strip_successors(parts, p, K, max_rows=max_rows, max_cols=max_cols)
    out = []
    for mu, N in succ:
        pos = _positive(mu, K)
        if mode == "hat":
            out.append(PieriTerm(mu, n_hat(parts, mu, K, N), kind="hat"))
        elif mode == "tilde":
            if pos:
                out.append(PieriTerm(mu, N, kind="tilde", type=None))
        else:
            if not pos:
                out.append(PieriTerm(mu, N, kind="typed", type=0))
                continue
            for t in (1, 2):
                if lam.type + t != 3:
                    out.append(PieriTerm(mu, N, kind="typed", type=t))
    return out


# ---------------------------------------------------------------------------
# quantum rules


def _qpieri_hat(lam: tuple[int, ...], p: int, m: int, n: int, K: int) -> list[PieriTerm]:
    """Quantum Pieri for ``[Y_lam]`` in QH(OG(m, N)), ``K >= 3`` (raw integers)."""
    k = K // 2
    w = n + k
    if p < 1 or p > w:
        return []
    out = [PieriTerm(mu, n_hat(lam, mu, K, N), kind="hat")
           for mu, N in strip_successors(lam, p, K, max_rows=m, max_cols=w)]
    for nu, N in strip_successors(lam, p, K, max_rows=m + 1, max_cols=w):
        if len(nu) != m + 1 or nu[0] < K - 1:
            continue
        r = nu[0] - K + 2
        if sum(1 for x in nu if x >= 2) > r:
            continue
        nt = nu[1:r]
        out.append(PieriTerm(nt, n_hat(lam, nu, K, N), q=(1, 0), kind="hat"))
    if lam and lam[0] == w:
        ls = lam[1:]
        for rho, N in strip_successors(ls, p, K, max_rows=m, max_cols=w):
            if rho and rho[0] == w:
                out.append(PieriTerm(rho[1:], n_hat(ls, rho, K, N), q=(2, 0), kind="hat"))
    return _collect(out)


def _collect(terms: list[PieriTerm]) -> list[PieriTerm]:
    """Merge equal classes; coefficients stay signed powers of two when possible."""
    acc: dict[tuple, Fraction] = {}
    order = []
    for t in terms:
        key = (t.mu, t.q, t.kind, t.type)
        if key not in acc:
            acc[key] = Fraction(0)
            order.append(key)
        acc[key] += t.coeff
    out = []
    for key in order:
        c = acc[key]
        if not c:
            continue
        sign = 1 if c > 0 else -1
        mag = abs(c)
        e = mag.numerator.bit_length() - 1 if mag.denominator == 1 else -(mag.denominator.bit_length() - 1)
        if Fraction(2) ** e != mag:
            raise PartitionError(f"coefficient {c} is not a signed power of two")
        mu, q, kind, typ = key
        out.append(PieriTerm(mu, e, q, kind, typ, sign))
    return out


def quantum_chern_pieri(lam, p: int, params: GrassParams, mode: str = "hat") -> list[PieriTerm]:
    """Quantum product ``c_p * [Y_lam]`` (``hat``) or ``c_p * tau~_lam`` (``tilde``).

    The tilde rule runs the odd rule of OG(m-1, N-1), whose ``K`` is
    ``2k + 1``, on ``lam - k`` and substitutes ``q -> -q``.  ``c_p`` vanishes for
    ``p > n + k``.
    """
    K, k, m, n = params.K, params.k, params.m, params.n
    if K == 2:
        raise PartitionError("K = 2 has two quantum parameters; use k2_quantum_pieri")
    parts = lam.parts if hasattr(lam, "parts") else trim(tuple(lam))
    if not params.fits(parts):
        raise PartitionError(f"{parts} does not fit in {params}")
    if mode == "hat":
        return _qpieri_hat(parts, p, m, n, K)
    if mode != "tilde":
        raise PartitionError(f"unknown mode {mode!r}")
    if K % 2:
        raise PartitionError("tilde classes need even K")
    if not _positive(parts, K):
        return []
    sigma = remove_part(parts, k)
    out = []
    for t in _qpieri_hat(sigma, p, m - 1, n, K + 1):
        d = t.q[0]
        out.append(PieriTerm(add_part(t.mu, k), t.pow2, t.q, "tilde", None,
                             t.sign * (-1) ** d))
    return out


def _qhat(terms, mu, pow2, sign, kind):
    """Expand ``sign 2^pow2 class(mu) * (q1 + q2)``."""
    terms.append(PieriTerm(mu, pow2, (1, 0), kind, None, sign))
    terms.append(PieriTerm(mu, pow2, (0, 1), kind, None, sign))


def _qtilde(terms, mu, pow2, sign, kind):
    """Expand ``sign 2^pow2 class(mu) * (q1 - q2)``."""
    terms.append(PieriTerm(mu, pow2, (1, 0), kind, None, sign))
    terms.append(PieriTerm(mu, pow2, (0, 1), kind, None, -sign))


def k2_quantum_pieri(lam, p: int, n: int, mode: str = "hat") -> list[PieriTerm]:
    """Quantum Pieri in QH(OG(n, 2n+2)) (``k = 1``, two quantum parameters).

    ``hat`` multiplies ``tau^_lam`` for ``lam`` in an ``n x (n+1)`` rectangle;
    ``tilde`` multiplies ``tau~_lam`` where ``lam`` has a part 1.  Bidegrees
    are exponents of ``(q1, q2)``.
    """
    K, w = 2, n + 1
    parts = lam.parts if hasattr(lam, "parts") else trim(tuple(lam))
    if hasattr(lam, "k") and lam.k != 1:
        raise PartitionError("k2 rules need k = 1")
    if n < 1 or len(parts) > n or (parts and parts[0] > w) or not is_k_strict(parts, 1):
        raise PartitionError(f"{parts} is not in P({n},{2 * n + 2})")
    if p < 1 or p > w:
        return []
    out: list[PieriTerm] = []
    ones = (1,) * n
    if mode == "hat":
        if p == 1 and parts == ones:
            out.append(PieriTerm((n + 1,), 1, kind="hat"))
            if n > 1:
                out.append(PieriTerm((2,) + (1,) * (n - 1), 1, kind="hat"))
            _qhat(out, (), 0, 1, "hat")
            return _collect(out)
        for mu, N in strip_successors(parts, p, K, max_rows=n, max_cols=w):
            out.append(PieriTerm(mu, n_hat(parts, mu, K, N), kind="hat"))
        for nu, N in strip_successors(parts, p, K, max_rows=n + 1, max_cols=w):
            if len(nu) != n + 1 or nu[0] < K - 1:
                continue
            r = nu[0] - K + 2
            if sum(1 for x in nu if x >= 2) > r:
                continue
            nt = nu[1:r]
            e = n_hat(parts, nu, K, N) - 1
            _qhat(out, nt, e, 1, "hat")
            if _positive(nt, K):
                _qtilde(out, nt, e, -1, "tilde")
        if parts and parts[0] == w:
            ls = parts[1:]
            for rho, N in strip_successors(ls, p, K, max_rows=n, max_cols=w):
                if rho and rho[0] == w:
                    out.append(PieriTerm(rho[1:], n_hat(ls, rho, K, N), (1, 1), "hat"))
        return _collect(out)
    if mode != "tilde":
        raise PartitionError(f"unknown mode {mode!r}")
    if 1 not in parts:
        return []
    if p == 1 and parts == ones:
        if n > 1:
            out.append(PieriTerm((2,) + (1,) * (n - 1), 1, kind="tilde"))
        _qtilde(out, (), 0, 1, "hat")
        return _collect(out)
    # odd partner: K = 3, (n-1) x (n+1) rectangle, lam = (sigma, 1)
    sigma = remove_part(parts, 1)
    K3 = 3
    for mu, N in strip_successors(sigma, p, K3, max_rows=n - 1, max_cols=w):
        out.append(PieriTerm(add_part(mu, 1), N, kind="tilde"))
    for nu, N in strip_successors(sigma, p, K3, max_rows=n, max_cols=w):
        if len(nu) != n or nu[0] < K3 - 1:
            continue
        r = nu[0] - K3 + 2
        if sum(1 for x in nu if x >= 2) > r:
            continue
        nt = add_part(nu[1:r], 1)
        _qtilde(out, nt, N - 1, 1, "hat")
        _qhat(out, nt, N - 1, -1, "tilde")
    if sigma and sigma[0] == w:
        ss = sigma[1:]
        for rho, N in strip_successors(ss, p, K3, max_rows=n - 1, max_cols=w):
            if rho and rho[0] == w:
                out.append(PieriTerm(add_part(rho[1:], 1), N, (1, 1), "tilde"))
    return _collect(out)
