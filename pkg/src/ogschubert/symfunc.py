"""Exact polynomials in symmetric functions of ``x`` and explicit ``y_1..y_k``.

The ``x``-side is stored in the power-sum basis: a key is a partition whose
parts index power sums ``p_i(x)``.  This is exact in infinitely many ``x``
variables, so it agrees with every finite specialization ``x_1..x_d`` and no
``d``-variable monomial blowup occurs.  The ``y``-side is kept as explicit
exponent vectors.  ``Gamma`` (generated by the ``q_r``) lives in the span of
odd power sums, since

    prod (1 + x t) / (1 - x t) = exp(sum_{i odd} 2 p_i t^i / i).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterable

from .partitions import PartitionError, conjugate, k_strict_partitions, trim
from .raising import expand_raw

__all__ = [
    "VarConfig",
    "MPoly",
    "LinearBasis",
    "family",
    "theta_eta",
    "raising_apply",
    "strict_partitions",
    "odd_partitions",
    "expand_P_s_basis",
    "expand_gamma_P",
    "evaluate_from_s",
    "e_y_squared",
    "SpanError",
]


class SpanError(ArithmeticError):
    """Raised when a polynomial is not in the span of the requested basis."""


@dataclass(frozen=True)
class VarConfig:
    """Variable set: ``d`` x-variables, ``k`` y-variables, degree cap.

    Arithmetic runs in infinitely many x-variables; ``d`` is the number of
    x-variables used when a finite specialization is requested.
    """

    d: int
    k: int
    degcap: int

    def __post_init__(self):
        if self.k < 0 or self.degcap < 0:
            raise PartitionError("k and degcap must be nonnegative")
        if self.d < self.degcap:
            raise PartitionError(f"need d >= degcap, got d={self.d}, degcap={self.degcap}")

    @classmethod
    def for_degree(cls, degcap: int, k: int) -> "VarConfig":
        return cls(d=max(degcap, 1), k=k, degcap=degcap)


Key = tuple[tuple[int, ...], tuple[int, ...]]


def _merge(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


class MPoly:
    """Sparse exact polynomial; keys are ``(power_sum_partition, y_exponents)``."""

    __slots__ = ("k", "degcap", "terms")

    def __init__(self, k: int, terms: dict[Key, Fraction] | None = None,
                 degcap: int | None = None):
        self.k = k
        self.degcap = degcap
        self.terms: dict[Key, Fraction] = {}
        if terms:
            for key, c in terms.items():
                if c and (degcap is None or _deg(key) <= degcap):
                    self.terms[key] = Fraction(c)

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c, k: int, degcap: int | None = None) -> "MPoly":
        return cls(k, {((), (0,) * k): Fraction(c)}, degcap)

    @classmethod
    def zero(cls, k: int, degcap: int | None = None) -> "MPoly":
        return cls(k, None, degcap)

    @classmethod
    def power_sum(cls, i: int, k: int, degcap: int | None = None) -> "MPoly":
        return cls(k, {((i,), (0,) * k): Fraction(1)}, degcap)

    @classmethod
    def y_monomial(cls, expo: Iterable[int], k: int, coeff=1, degcap=None) -> "MPoly":
        expo = tuple(expo)
        if len(expo) != k:
            raise PartitionError("exponent length must equal k")
        return cls(k, {((), expo): Fraction(coeff)}, degcap)

    # -- arithmetic --------------------------------------------------------

    def _new(self, terms, degcap=None):
        out = MPoly(self.k, None, self.degcap if degcap is None else degcap)
        out.terms = terms
        return out

    def _check(self, other: "MPoly"):
        if self.k != other.k:
            raise PartitionError(f"k mismatch: {self.k} vs {other.k}")

    def _cap(self, other):
        caps = [c for c in (self.degcap, other.degcap) if c is not None]
        return min(caps) if caps else None

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other, self.k)
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            v = terms.get(key, 0) + c
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
        return self._new(terms, self._cap(other))

    __radd__ = __add__

    def __neg__(self):
        return self._new({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other, self.k)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "MPoly":
        s = Fraction(s)
        if not s:
            return self._new({})
        return self._new({key: c * s for key, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        cap = self._cap(other)
        out: dict[Key, Fraction] = {}
        k = self.k
        for (pa, ya), ca in self.terms.items():
            da = sum(pa) + sum(ya)
            for (pb, yb), cb in other.terms.items():
                if cap is not None and da + sum(pb) + sum(yb) > cap:
                    continue
                key = (_merge(pa, pb), tuple(ya[i] + yb[i] for i in range(k)))
                v = out.get(key, 0) + ca * cb
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return self._new(out, cap)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        out = MPoly.const(1, self.k, self.degcap)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.k)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --------------------------------------------------------

    def degrees(self) -> set[int]:
        return {_deg(key) for key in self.terms}

    def x_degrees(self) -> set[int]:
        return {sum(p) for p, _ in self.terms}

    def x_part(self, dx: int) -> "MPoly":
        return self._new({key: c for key, c in self.terms.items() if sum(key[0]) == dx})

    def is_y_symmetric(self) -> bool:
        k = self.k
        for i in range(k - 1):
            swapped = {}
            for (p, y), c in self.terms.items():
                y2 = list(y)
                y2[i], y2[i + 1] = y2[i + 1], y2[i]
                swapped[(p, tuple(y2))] = c
            if swapped != self.terms:
                return False
        return True

    def in_gamma(self) -> bool:
        """Whether every x-part lies in the span of odd power sums."""
        return all(all(i % 2 for i in p) for p, _ in self.terms)

    def evaluate(self, xs: Iterable, ys: Iterable) -> Fraction:
        """Value at ``x = xs`` (finitely many, the rest zero) and ``y = ys``."""
        xs = [Fraction(v) for v in xs]
        ys = [Fraction(v) for v in ys]
        if len(ys) != self.k:
            raise PartitionError(f"need {self.k} y-values")
        cache: dict[int, Fraction] = {}

        def p(i):
            if i not in cache:
                cache[i] = sum((v ** i for v in xs), Fraction(0))
            return cache[i]

        total = Fraction(0)
        for (pp, ye), c in self.terms.items():
            v = c
            for i in pp:
                v *= p(i)
            for yv, e in zip(ys, ye):
                v *= yv ** e
            total += v
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-_deg(kv[0]), tuple(-i for i in kv[0][0]), kv[0][1]))

    def to_json(self) -> list[dict]:
        return [{"p": list(p), "y": list(y), "coef": str(c)} for (p, y), c in self.sorted_terms()]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (p, y), c in self.sorted_terms():
            facs = [f"p{i}" for i in p]
            facs += [f"y{j + 1}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(y) if e]
            body = "*".join(facs)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _deg(key: Key) -> int:
    return sum(key[0]) + sum(key[1])


# ---------------------------------------------------------------------------
# elementary families


@lru_cache(maxsize=None)
def _q(r: int, k: int) -> MPoly:
    """``q_r(x)`` via ``r q_r = sum_{i odd} 2 p_i q_{r-i}``."""
    if r < 0:
        return MPoly.zero(k)
    if r == 0:
        return MPoly.const(1, k)
    acc = MPoly.zero(k)
    for i in range(1, r + 1, 2):
        acc = acc + MPoly.power_sum(i, k) * _q(r - i, k)
    return acc.scale(Fraction(2, r))


@lru_cache(maxsize=None)
def _e_x(r: int, k: int) -> MPoly:
    """``e_r(x)`` via Newton's identities."""
    if r < 0:
        return MPoly.zero(k)
    if r == 0:
        return MPoly.const(1, k)
    acc = MPoly.zero(k)
    for i in range(1, r + 1):
        term = MPoly.power_sum(i, k) * _e_x(r - i, k)
        acc = acc + (term if i % 2 else -term)
    return acc.scale(Fraction(1, r))


@lru_cache(maxsize=None)
def _e_y(r: int, k: int, square: bool = False) -> MPoly:
    """``e_r(y_1..y_k)`` (or ``e_r(y_1^2..y_k^2)``)."""
    if r < 0 or r > k:
        return MPoly.zero(k)
    step = 2 if square else 1
    terms = {}
    for combo in itertools.combinations(range(k), r):
        expo = [0] * k
        for j in combo:
            expo[j] = step
        terms[((), tuple(expo))] = Fraction(1)
    return MPoly(k, terms)


def e_y_squared(r: int, k: int) -> MPoly:
    return _e_y(r, k, True)


def raising_apply(parts: tuple[int, ...], gen: Callable[[int], MPoly], k: int, *,
                  pairs: Iterable[tuple[int, int]] | str = "none", K: int | None = None,
                  memo: dict | None = None) -> MPoly:
    """Apply a raising operator product to ``gen_parts``.

    ``pairs`` selects the denominator set: ``'none'`` gives prod (1 - R_ij),
    ``'all'`` gives prod (1 - R_ij)/(1 + R_ij); ``'K'`` uses the k-strict
    rule for the given ``K``; an explicit iterable is used as is.
    """
    ell = len(parts)
    if pairs == "none":
        den = ()
    elif pairs == "all":
        den = [(i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1)]
    elif pairs == "K":
        den = None
    else:
        den = list(pairs)
    raw = expand_raw(tuple(parts), K if K is not None else 0, pairs=den)
    acc: dict[tuple[int, ...], int] = {}
    for (alpha, _), (c, _) in raw.items():
        mono = tuple(sorted((a for a in alpha if a > 0), reverse=True))
        acc[mono] = acc.get(mono, 0) + c
    out = MPoly.zero(k)
    memo = {} if memo is None else memo
    for mono, c in acc.items():
        if c:
            out = out + _product(mono, gen, k, memo).scale(c)
    return out


def _product(mono: tuple[int, ...], gen, k: int, memo: dict) -> MPoly:
    if mono in memo:
        return memo[mono]
    if not mono:
        val = MPoly.const(1, k)
    else:
        val = _product(mono[:-1], gen, k, memo) * gen(mono[-1])
    memo[mono] = val
    return val


@lru_cache(maxsize=None)
def _Q(lam: tuple[int, ...], k: int) -> MPoly:
    return raising_apply(lam, lambda r: _q(r, k), k, pairs="all", memo=_q_memo(k))


_Q_MEMOS: dict[int, dict] = {}


def _q_memo(k: int) -> dict:
    return _Q_MEMOS.setdefault(k, {})


def _is_strict(lam) -> bool:
    return all(lam[i] > lam[i + 1] for i in range(len(lam) - 1))


def family(name: str, index, cfg: VarConfig | None = None, *, k: int | None = None) -> MPoly:
    """Classical families: ``e_x``, ``e_y``, ``q``, ``s`` (in x), ``s_y``, ``P``, ``Q``.

    ``s`` and ``s_y`` take a partition ``lam`` and return ``s_lam`` via
    ``s_{mu'} = prod (1 - R_ij) e_mu``.
    """
    kk = cfg.k if cfg is not None else (k or 0)
    if name == "e_x":
        out = _e_x(index, kk)
    elif name == "e_y":
        out = _e_y(index, kk)
    elif name == "q":
        out = _q(index, kk)
    elif name in ("s", "s_y"):
        lam = trim(tuple(index))
        mu = conjugate(lam)
        gen = (lambda r: _e_x(r, kk)) if name == "s" else (lambda r: _e_y(r, kk))
        out = raising_apply(mu, gen, kk, pairs="none")
    elif name in ("P", "Q"):
        lam = trim(tuple(index)) if not isinstance(index, int) else (index,)
        if not _is_strict(lam):
            raise PartitionError(f"{lam} is not strict")
        out = _Q(lam, kk)
        if name == "P":
            out = out.scale(Fraction(1, 2 ** len(lam)))
    else:
        raise PartitionError(f"unknown family {name!r}")
    if cfg is not None:
        return MPoly(kk, out.terms, cfg.degcap)
    return out


def theta_eta(index, cfg: VarConfig | None = None, *, k: int | None = None,
              which: str = "theta") -> MPoly:
    """``theta_r``, ``eta_r`` or ``eta'_k``.

    ``which`` is ``theta`` or ``eta``; ``index=(k, 'prime')`` gives ``eta'_k``.
    """
    kk = cfg.k if cfg is not None else (k or 0)
    if isinstance(index, tuple):
        r, tag = index
        if tag != "prime" or r != kk:
            raise PartitionError("only (k, 'prime') is a primed index")
        out = _eta(kk, kk, True)
    elif which == "theta":
        out = _theta(index, kk)
    elif which == "eta":
        out = _eta(index, kk, False)
    else:
        raise PartitionError(f"unknown kind {which!r}")
    if cfg is not None:
        return MPoly(kk, out.terms, cfg.degcap)
    return out


@lru_cache(maxsize=None)
def _theta(r: int, k: int) -> MPoly:
    if r < 0:
        return MPoly.zero(k)
    acc = MPoly.zero(k)
    for i in range(0, min(r, k) + 1):
        acc = acc + _q(r - i, k) * _e_y(i, k)
    return acc


@lru_cache(maxsize=None)
def _eta(r: int, k: int, prime: bool) -> MPoly:
    th = _theta(r, k)
    if prime:
        return (th - _e_y(k, k)).scale(Fraction(1, 2))
    if r < k:
        return th
    if r > k:
        return th.scale(Fraction(1, 2))
    return (th + _e_y(k, k)).scale(Fraction(1, 2))


# ---------------------------------------------------------------------------
# exact linear algebra


class LinearBasis:
    """Exact incremental Gaussian elimination over sparse vectors.

    Vectors are dicts ``key -> Fraction`` tagged by a label; :meth:`express`
    writes a target vector as a combination of the labelled vectors.
    """

    def __init__(self):
        self._rows: dict[Hashable, tuple[dict, dict]] = {}
        self._labels: list[Hashable] = []

    def __len__(self):
        return len(self._labels)

    def _reduce(self, vec: dict, combo: dict):
        vec = dict(vec)
        changed = True
        while changed:
            changed = False
            for piv in [key for key in vec if key in self._rows]:
                c = vec.get(piv)
                if not c:
                    continue
                rvec, rcombo = self._rows[piv]
                for key, v in rvec.items():
                    nv = vec.get(key, 0) - c * v
                    if nv:
                        vec[key] = nv
                    else:
                        vec.pop(key, None)
                for lab, v in rcombo.items():
                    nv = combo.get(lab, 0) - c * v
                    if nv:
                        combo[lab] = nv
                    else:
                        combo.pop(lab, None)
                changed = True
        return vec, combo

    def add(self, label: Hashable, vec: dict) -> None:
        rest, combo = self._reduce({k: Fraction(v) for k, v in vec.items() if v},
                                   {label: Fraction(1)})
        if not rest:
            raise SpanError(f"vector {label!r} is linearly dependent on earlier vectors")
        piv = min(rest, key=_order_key)
        c = rest[piv]
        rvec = {key: v / c for key, v in rest.items()}
        rcombo = {lab: v / c for lab, v in combo.items()}
        # keep rows fully reduced against the new pivot
        for p2, (v2, c2) in list(self._rows.items()):
            f = v2.get(piv)
            if f:
                for key, v in rvec.items():
                    nv = v2.get(key, 0) - f * v
                    if nv:
                        v2[key] = nv
                    else:
                        v2.pop(key, None)
                for lab, v in rcombo.items():
                    nv = c2.get(lab, 0) - f * v
                    if nv:
                        c2[lab] = nv
                    else:
                        c2.pop(lab, None)
        self._rows[piv] = (rvec, rcombo)
        self._labels.append(label)

    def express(self, vec: dict) -> dict:
        """Coefficients of ``vec`` on the labels; raises :class:`SpanError`."""
        coeffs: dict = {}
        rest = {k: Fraction(v) for k, v in vec.items() if v}
        for piv, (rvec, rcombo) in self._rows.items():
            c = rest.get(piv)
            if not c:
                continue
            for key, v in rvec.items():
                nv = rest.get(key, 0) - c * v
                if nv:
                    rest[key] = nv
                else:
                    rest.pop(key, None)
            for lab, v in rcombo.items():
                nv = coeffs.get(lab, 0) + c * v
                if nv:
                    coeffs[lab] = nv
                else:
                    coeffs.pop(lab, None)
        if rest:
            raise SpanError(f"nonzero remainder with {len(rest)} terms")
        return coeffs


def _order_key(key):
    return repr(key)


# ---------------------------------------------------------------------------
# expansions


def strict_partitions(d: int) -> list[tuple[int, ...]]:
    return k_strict_partitions(d, 0)


def odd_partitions(d: int) -> list[tuple[int, ...]]:
    out = []

    def rec(rem, largest, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rem, largest), 0, -1):
            if part % 2:
                rec(rem - part, part, acc + [part])

    rec(d, d, [])
    return out


@lru_cache(maxsize=None)
def _p_basis(d: int) -> LinearBasis:
    basis = LinearBasis()
    for mu in strict_partitions(d):
        P = family("P", mu, k=0)
        basis.add(mu, {p: c for (p, _), c in P.terms.items()})
    return basis


def expand_gamma_P(vec: dict[tuple[int, ...], Fraction]) -> dict[tuple[int, ...], Fraction]:
    """Expand a homogeneous-by-degree power-sum vector in the ``P_mu`` basis."""
    by_deg: dict[int, dict] = {}
    for p, c in vec.items():
        by_deg.setdefault(sum(p), {})[p] = c
    out: dict = {}
    for d, v in by_deg.items():
        if any(i % 2 == 0 for p in v for i in p):
            raise SpanError("x-part involves even power sums; not in Gamma")
        out.update(_p_basis(d).express(v))
    return out


@lru_cache(maxsize=None)
def _s_y(nu: tuple[int, ...], k: int) -> MPoly:
    """``s_{nu'}(y)`` from ``prod (1 - R) e_nu(y)``."""
    return raising_apply(nu, lambda r: _e_y(r, k), k, pairs="none")


def _expand_y_schur(F: dict[tuple[int, ...], Fraction], k: int) -> dict[tuple[int, ...], Fraction]:
    """Write a symmetric polynomial in ``y`` as ``sum c_nu s_{nu'}(y)``."""
    F = {e: c for e, c in F.items() if c}
    out: dict = {}
    steps = 0
    while F:
        lead = max(F)
        if list(lead) != sorted(lead, reverse=True):
            raise SpanError("polynomial in y is not symmetric")
        nu = conjugate(trim(lead))
        c = F[lead]
        out[nu] = out.get(nu, 0) + c
        for (_, e), v in _s_y(nu, k).terms.items():
            nv = F.get(e, 0) - c * v
            if nv:
                F[e] = nv
            else:
                F.pop(e, None)
        steps += 1
        if steps > 100000:
            raise SpanError("elimination did not terminate")
    return out


def expand_P_s_basis(f: MPoly, cfg: VarConfig | None = None) -> dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction]:
    """Coefficients ``d_{mu nu}`` with ``f = sum d_{mu nu} P_mu(x) s_{nu'}(y)``."""
    k = f.k
    if not f.is_y_symmetric():
        raise SpanError("input is not symmetric in y")
    by_y: dict[tuple[int, ...], dict] = {}
    for (p, y), c in f.terms.items():
        by_y.setdefault(y, {})[p] = c
    per_mu: dict[tuple[int, ...], dict] = {}
    for y, vec in by_y.items():
        for mu, c in expand_gamma_P(vec).items():
            per_mu.setdefault(mu, {})[y] = c
    out = {}
    for mu, F in per_mu.items():
        for nu, c in _expand_y_schur(F, k).items():
            if c:
                out[(mu, nu)] = c
    return dict(sorted(out.items()))


def evaluate_from_s(coeffs: dict, k: int) -> MPoly:
    """Rebuild ``sum d_{mu nu} P_mu(x) s_{nu'}(y)``."""
    out = MPoly.zero(k)
    for (mu, nu), c in coeffs.items():
        out = out + (family("P", mu, k=k) * _s_y(nu, k)).scale(c)
    return out
