"""Raising operator expansions and Giambelli polynomials.

A raising operator ``R_ij`` (``i < j``) moves one unit from slot ``j`` to slot
``i`` of an integer sequence.  The operator attached to a k-strict partition is

    R^lam = prod_{i<j} (1 - R_ij) * prod_{(i,j) in C(lam)} (1 + R_ij)^{-1}

with ``C(lam) = {(i, j) : lam_i + lam_j >= K + j - i}``.  Expanding it on the
subscript ``lam`` gives a finite signed sum of integer sequences once the
sequences with a negative entry are discarded: raising operators never
increase a suffix sum, so a monomial whose suffix sum goes negative can be
pruned at once.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .partitions import (
    KStrictPartition,
    PartitionError,
    TypedPartition,
    ell_k,
    remove_part,
)

__all__ = [
    "SubscriptTerm",
    "SpecialPolynomial",
    "denominator_pairs",
    "safe_cap",
    "expand_raw",
    "expand_operator",
    "giambelli_c",
    "giambelli_special",
    "giambelli_tilde",
    "giambelli_tilde_diamond",
    "tau_k_squared",
    "NONE", "TAU", "TAU_PRIME", "TAU_TILDE",
]

# flags for the single non-Chern factor of a Giambelli monomial
NONE, TAU, TAU_PRIME, TAU_TILDE = 0, 1, 2, 3
_FLAG_NAMES = {NONE: None, TAU: "tk", TAU_PRIME: "tkp", TAU_TILDE: "tkt"}
_FLAG_CODES = {v: k for k, v in _FLAG_NAMES.items()}


@dataclass(frozen=True)
class SubscriptTerm:
    coeff: Fraction
    alpha: tuple[int, ...]


def denominator_pairs(parts: tuple[int, ...], K: int) -> frozenset[tuple[int, int]]:
    """Pairs ``(i, j)``, 1-based, carrying a ``(1 + R_ij)^{-1}`` factor."""
    ell = len(parts)
    return frozenset(
        (i, j)
        for i in range(1, ell + 1)
        for j in range(i + 1, ell + 1)
        if parts[i - 1] + parts[j - 1] >= K + j - i
    )


def safe_cap(parts: tuple[int, ...]) -> int:
    """A per-factor exponent cap that can never cut a surviving term."""
    ell = len(parts)
    return ell * (sum(parts) + ell)


def expand_raw(parts: tuple[int, ...], K: int, *, track_row: int | None = None,
               cap: int | None = None, pairs: Iterable[tuple[int, int]] | None = None,
               ) -> dict[tuple[tuple[int, ...], bool], list]:
    """Expand ``R^lam`` on the subscript ``parts``.

    Returns ``{(alpha, touched): [coeff, order_key]}`` where ``touched`` records
    whether some factor ``R_ij`` with ``i`` or ``j`` equal to ``track_row``
    (1-based) occurs, and ``order_key`` is the colexicographically least
    operator monomial producing the entry (used for deterministic printing).
    Only sequences with all entries nonnegative are returned.  Entries whose
    contributions cancel are kept (with coefficient 0) so that the order keys
    reflect every operator monomial producing a given subscript.

    ``pairs`` overrides the denominator set (default: :func:`denominator_pairs`).
    """
    ell = len(parts)
    den = denominator_pairs(parts, K) if pairs is None else frozenset(pairs)
    state: dict[tuple[tuple[int, ...], bool], list] = {(tuple(parts), False): [1, ()]}
    for i in range(1, ell + 1):
        for j in range(i + 1, ell + 1):
            in_den = (i, j) in den
            hits = track_row is not None and track_row in (i, j)
            new: dict[tuple[tuple[int, ...], bool], list] = {}
            for (alpha, touched), (coeff, okey) in state.items():
                # suffix sums over slots i+1..j bound the exponent
                bound = None
                acc = 0
                for t in range(ell, i, -1):
                    acc += alpha[t - 1]
                    if t <= j:
                        bound = acc if bound is None else min(bound, acc)
                if bound < 0:
                    continue
                smax = bound
                if not in_den:
                    smax = min(smax, 1)
                if cap is not None:
                    smax = min(smax, cap)
                for s in range(smax + 1):
                    if in_den:
                        c = 1 if s == 0 else (2 if s % 2 == 0 else -2)
                    else:
                        c = 1 if s == 0 else -1
                    if s:
                        a = list(alpha)
                        a[i - 1] += s
                        a[j - 1] -= s
                        a = tuple(a)
                    else:
                        a = alpha
                    key = (a, touched or (hits and s > 0))
                    nk = (s,) + okey
                    slot = new.get(key)
                    if slot is None:
                        new[key] = [coeff * c, nk]
                    else:
                        slot[0] += coeff * c
                        if nk < slot[1]:
                            slot[1] = nk
            state = new
    return {
        key: val
        for key, val in state.items()
        if all(x >= 0 for x in key[0])
    }


def expand_operator(lam, K: int, *, cap: int | None = None) -> list[SubscriptTerm]:
    """The finite expansion of ``R^lam c_lam`` as a list of subscript terms."""
    parts = lam.parts if hasattr(lam, "parts") else tuple(lam)
    raw = expand_raw(parts, K, cap=cap)
    acc: dict[tuple[int, ...], list] = {}
    for (alpha, _), (coeff, okey) in raw.items():
        slot = acc.setdefault(alpha, [0, okey])
        slot[0] += coeff
        slot[1] = min(slot[1], okey)
    return [
        SubscriptTerm(Fraction(c), alpha)
        for alpha, (c, _) in sorted(acc.items())
        if c != 0
    ]


def _mono(alpha: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted((a for a in alpha if a > 0), reverse=True))


# ---------------------------------------------------------------------------


@dataclass
class SpecialPolynomial:
    """Polynomial in Chern classes ``c_p`` times at most one extra factor.

    Keys are ``(c_indices, flag)`` with ``c_indices`` sorted decreasingly and
    ``flag`` one of ``NONE``, ``TAU`` (tau_k), ``TAU_PRIME`` (tau'_k) or
    ``TAU_TILDE`` (tau_k - tau'_k).
    """

    k: int
    terms: dict[tuple[tuple[int, ...], int], Fraction] = field(default_factory=dict)
    order: dict[tuple[tuple[int, ...], int], tuple] = field(default_factory=dict, repr=False)

    def add(self, key, coeff, okey=()):
        coeff = Fraction(coeff)
        if key not in self.order or okey < self.order[key]:
            self.order[key] = okey
        if not coeff:
            return
        val = self.terms.get(key, 0) + coeff
        if val:
            self.terms[key] = val
        else:
            del self.terms[key]

    def __eq__(self, other):
        if not isinstance(other, SpecialPolynomial):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __add__(self, other: "SpecialPolynomial") -> "SpecialPolynomial":
        if other.k != self.k:
            raise PartitionError("k mismatch")
        out = SpecialPolynomial(self.k, dict(self.terms), dict(self.order))
        for key, c in other.terms.items():
            out.add(key, c, other.order.get(key, ()))
        return out

    def scale(self, s) -> "SpecialPolynomial":
        s = Fraction(s)
        return SpecialPolynomial(
            self.k, {key: c * s for key, c in self.terms.items() if c * s},
            dict(self.order),
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def max_chern_index(self) -> int:
        return max((max(key[0], default=0) for key in self.terms), default=0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.tau_form().values())

    def sorted_keys(self):
        return sorted(self.terms, key=lambda key: (self.order.get(key, ()), key))

    # -- conversions -------------------------------------------------------

    def generator_form(self) -> dict[tuple[tuple[int, ...], bool], Fraction]:
        """Rewrite in ``c_p`` and ``tau~_k = tau_k - tau'_k``.

        Returns ``{(c_indices, has_tilde): coeff}``; uses
        ``tau_k = (c_k + tau~_k)/2`` and ``tau'_k = (c_k - tau~_k)/2``.
        """
        out: dict[tuple[tuple[int, ...], bool], Fraction] = defaultdict(Fraction)
        k = self.k
        half = Fraction(1, 2)
        for (cs, flag), coeff in self.terms.items():
            if flag == NONE:
                out[(cs, False)] += coeff
            elif flag == TAU_TILDE:
                out[(cs, True)] += coeff
            else:
                sign = 1 if flag == TAU else -1
                out[(_mono(cs + (k,)), False)] += coeff * half
                out[(cs, True)] += coeff * half * sign
        return {key: c for key, c in out.items() if c}

    def tau_form(self) -> dict[tuple[tuple[int, ...], int, int], Fraction]:
        """Rewrite in special Schubert classes.

        ``c_p`` becomes ``tau_p`` (p < k), ``2 tau_p`` (p > k) and the
        factor ``(tau_k + tau'_k)`` (p = k), which is kept unexpanded.
        Keys are ``(tau_indices_without_k, number_of_ck_factors, flag)``.
        """
        out: dict[tuple[tuple[int, ...], int, int], Fraction] = defaultdict(Fraction)
        k = self.k
        for (cs, flag), coeff in self.terms.items():
            idx = tuple(p for p in cs if p != k)
            nck = sum(1 for p in cs if p == k)
            scale = 2 ** sum(1 for p in idx if p > k)
            out[(idx, nck, flag)] += coeff * scale
        return {key: c for key, c in out.items() if c}

    def _tau_order(self):
        k = self.k
        first: dict = {}
        for key in sorted(self.order, key=lambda key: (self.order[key], key)):
            cs, flag = key
            tk = (tuple(p for p in cs if p != k), sum(1 for p in cs if p == k), flag)
            if tk not in first:
                first[tk] = self.order.get(key, ())
        return first

    def to_tau_string(self, unicode: bool = True) -> str:
        """Human-readable form in the special classes, e.g.
        ``τ₃τ′₂(τ₂+τ′₂) − τ₄τ′₂τ₁ + ...``."""
        tf = self.tau_form()
        order = self._tau_order()
        keys = sorted(tf, key=lambda t: (order.get(t, ()), t))
        return _render(
            [(tf[t], _tau_factors(t, self.k, unicode)) for t in keys], unicode
        )

    def to_c_string(self, unicode: bool = True) -> str:
        items = []
        for key in self.sorted_keys():
            cs, flag = key
            facs = [_pow(_sym("c", p, unicode=unicode), e, unicode) for p, e in _runs(cs)]
            if flag != NONE:
                facs.append(_flag_symbol(flag, self.k, unicode))
            items.append((self.terms[key], facs))
        return _render(items, unicode)

    def to_json(self) -> list[dict]:
        out = []
        for key in self.sorted_keys():
            cs, flag = key
            mono = {"c": list(cs)}
            if flag != NONE:
                mono[_FLAG_NAMES[flag]] = 1
            out.append({"mono": mono, "coef": str(self.terms[key])})
        return out

    @classmethod
    def from_json(cls, k: int, data) -> "SpecialPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        out = cls(k)
        for pos, item in enumerate(data):
            mono = item["mono"]
            flag = NONE
            for name in ("tk", "tkp", "tkt"):
                if mono.get(name):
                    flag = _FLAG_CODES[name]
            out.add((tuple(mono.get("c", [])), flag), Fraction(item["coef"]), (pos,))
        return out

    def __str__(self):
        return self.to_tau_string()


_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _sym(base: str, p: int, prime: bool = False, unicode: bool = True) -> str:
    if unicode:
        sym = {"c": "c", "t": "τ"}[base]
        return sym + ("′" if prime else "") + str(p).translate(_SUB)
    return f"{base}{p}" + ("'" if prime else "")


def _pow(s: str, e: int, unicode: bool) -> str:
    if e == 1:
        return s
    return s + (str(e).translate(_SUP) if unicode else f"^{e}")


def _runs(seq):
    out = []
    for x in seq:
        if out and out[-1][0] == x:
            out[-1][1] += 1
        else:
            out.append([x, 1])
    return out


def _flag_symbol(flag: int, k: int, unicode: bool) -> str:
    t, tp = _sym("t", k, unicode=unicode), _sym("t", k, True, unicode)
    if flag == TAU:
        return t
    if flag == TAU_PRIME:
        return tp
    return f"({t}−{tp})" if unicode else f"({t}-{tp})"


def _tau_factors(key, k: int, unicode: bool) -> list[str]:
    idx, nck, flag = key
    facs: list[tuple[int, int, str]] = []
    for p, e in _runs(idx):
        facs.append((p, 0, _pow(_sym("t", p, unicode=unicode), e, unicode)))
    if flag != NONE:
        facs.append((k, 0, _flag_symbol(flag, k, unicode)))
    if nck:
        plus = f"({_sym('t', k, unicode=unicode)}+{_sym('t', k, True, unicode)})"
        facs.append((k, 1, _pow(plus, nck, unicode)))
    facs.sort(key=lambda f: (-f[0], f[1]))
    return [f[2] for f in facs]


def _render(items, unicode: bool) -> str:
    if not items:
        return "0"
    minus = " − " if unicode else " - "
    mul = "" if unicode else "*"
    out = []
    for pos, (coeff, facs) in enumerate(items):
        neg = coeff < 0
        mag = -coeff if neg else coeff
        body = mul.join(facs)
        if not facs:
            body = str(mag)
        elif mag != 1:
            body = f"{mag}{mul}{body}" if mag.denominator == 1 else f"({mag}){mul}{body}"
        if pos == 0:
            out.append(("−" if unicode else "-") + body if neg else body)
        else:
            out.append((minus if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# Giambelli polynomials


def _parts_of(lam) -> tuple[int, ...]:
    return lam.parts if hasattr(lam, "parts") else tuple(lam)


def giambelli_c(lam, K: int, *, cap: int | None = None) -> SpecialPolynomial:
    """``2^{-ell_k} R^lam c_lam`` as a polynomial in Chern classes."""
    parts = _parts_of(lam)
    k = K // 2
    if hasattr(lam, "k") and lam.k != k:
        raise PartitionError(f"partition has k={lam.k} but K={K}")
    raw = expand_raw(parts, K, cap=cap)
    scale = Fraction(1, 2 ** ell_k(parts, k))
    out = SpecialPolynomial(k)
    for (alpha, _), (coeff, okey) in raw.items():
        out.add((_mono(alpha), NONE), coeff * scale, okey)
    return out


def giambelli_special(lam: TypedPartition, *, cap: int | None = None) -> SpecialPolynomial:
    """The Schubert class of a typed k-strict partition (even case, K = 2k).

    Monomials touching the row ``d`` with ``lam_d = k < lam_{d-1}`` carry a
    factor 1/2; the others get ``tau_k`` (type 1) or ``tau'_k`` (type 2) in
    place of the entry in row ``d``.
    """
    k = lam.k
    K = 2 * k
    parts = lam.parts
    if lam.type == 0:
        return giambelli_c(lam, K, cap=cap)
    d = ell_k(parts, k) + 1
    raw = expand_raw(parts, K, track_row=d, cap=cap)
    scale = Fraction(1, 2 ** ell_k(parts, k))
    flag = TAU if lam.type == 1 else TAU_PRIME
    out = SpecialPolynomial(k)
    for (alpha, touched), (coeff, okey) in raw.items():
        if touched:
            out.add((_mono(alpha), NONE), coeff * scale / 2, okey)
        else:
            rest = alpha[: d - 1] + alpha[d:]
            out.add((_mono(rest), flag), coeff * scale, okey)
    return out


def giambelli_tilde(lam, *, cap: int | None = None) -> SpecialPolynomial:
    """``tau_lam - tau'_lam`` as ``(tau_k - tau'_k)`` times an odd Giambelli polynomial.

    The Chern part is ``2^{-ell_k} R~^{lam-k} c_{lam-k}`` with ``R~`` built for
    ``K = 2k + 1``.
    """
    k = lam.k
    parts = _parts_of(lam)
    if k not in parts:
        raise PartitionError(f"{parts} has no part equal to k={k}")
    rest = remove_part(parts, k)
    odd = giambelli_c(KStrictPartition(rest, k), 2 * k + 1, cap=cap)
    out = SpecialPolynomial(k)
    for (cs, _), coeff in odd.terms.items():
        out.add((cs, TAU_TILDE), coeff, odd.order.get((cs, NONE), ()))
    return out


def giambelli_tilde_diamond(lam, *, cap: int | None = None) -> SpecialPolynomial:
    """Same class as :func:`giambelli_tilde`, computed with the diamond rule on ``R^lam``."""
    k = lam.k
    parts = _parts_of(lam)
    if k not in parts:
        return SpecialPolynomial(k)
    d = ell_k(parts, k) + 1
    raw = expand_raw(parts, 2 * k, track_row=d, cap=cap)
    scale = Fraction(1, 2 ** ell_k(parts, k))
    out = SpecialPolynomial(k)
    for (alpha, touched), (coeff, okey) in raw.items():
        if not touched:
            out.add((_mono(alpha[: d - 1] + alpha[d:]), TAU_TILDE), coeff * scale, okey)
    return out


def tau_k_squared(k: int) -> dict[tuple[int, ...], Fraction]:
    """``(tau_k - tau'_k)^2`` as a Chern polynomial:
    ``c_k^2 + 2 sum_{i=1}^k (-1)^i c_{k+i} c_{k-i}``."""
    out: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    out[(k, k)] += 1
    for i in range(1, k + 1):
        out[_mono((k + i, k - i))] += 2 * (-1) ** i
    return dict(out)
