"""Schubert-basis arithmetic for OG(m, N), its quantum ring and the stable ring.

Elements are stored in the Schubert basis ``tau_lam q^d``.  Products are
computed in the split basis: hat classes ``tau_lam + tau'_lam`` span the
subring generated by Chern classes, and tilde classes ``tau_lam - tau'_lam``
form a module over it generated by ``tau_k - tau'_k``.  A factor ``a`` is
written as a Chern polynomial plus ``(tau_k - tau'_k)`` times a Chern
polynomial, and each Chern class is folded onto ``b`` with a Pieri rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .partitions import (
    GrassParams,
    PartitionError,
    TypedPartition,
    add_part,
    contains,
    is_k_strict,
    k_strict_partitions,
    remove_part,
    typed_types,
)
from .pieri import chern_pieri, k2_quantum_pieri, quantum_chern_pieri
from .raising import giambelli_c, giambelli_special, tau_k_squared
from .symfunc import LinearBasis, SpanError

__all__ = [
    "RingError",
    "RingSpec",
    "SchubertExpr",
    "SplitExpr",
    "to_split",
    "from_split",
    "apply_generator",
    "apply_chern_polynomial",
    "multiply",
    "structure_constants",
    "evaluate_special",
    "verify_quantum_giambelli",
    "recursion_coefficients",
    "odd_even_transfer",
    "basis",
]

HAT, TILDE = "hat", "tilde"
Q0 = (0, 0)


class RingError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RingSpec:
    """Which ring: ``mode`` is ``classical``, ``quantum`` or ``stable``.

    Even parity means OG(n+1-k, 2n+2) (``K = 2k``); odd parity means
    OG(n-k, 2n+1) (``K = 2k+1``).  The stable ring ignores ``n``.
    """

    k: int
    n: int | None = None
    mode: str = "classical"
    parity: str = "even"

    def __post_init__(self):
        if self.mode not in ("classical", "quantum", "stable"):
            raise RingError(f"unknown mode {self.mode!r}")
        if self.parity not in ("even", "odd"):
            raise RingError(f"unknown parity {self.parity!r}")
        if self.mode != "stable":
            if self.n is None:
                raise RingError("bounded rings need n")
            self.params  # validates
        if self.parity == "even" and self.k < 1:
            raise RingError("even rings need k >= 1")

    @property
    def K(self) -> int:
        return 2 * self.k + (1 if self.parity == "odd" else 0)

    @property
    def params(self) -> GrassParams | None:
        if self.mode == "stable":
            return None
        if self.parity == "even":
            return GrassParams.even(self.k, self.n)
        return GrassParams.odd(self.k, self.n)

    @property
    def rows(self) -> int | None:
        return None if self.mode == "stable" else self.params.m

    @property
    def cols(self) -> int | None:
        return None if self.mode == "stable" else self.n + self.k

    @property
    def two_q(self) -> bool:
        return self.mode == "quantum" and self.K == 2

    def fits(self, parts) -> bool:
        if self.mode == "stable":
            return True
        return self.params.fits(tuple(parts))

    def qdeg_weight(self, q) -> int:
        if self.mode != "quantum":
            return 0
        return (q[0] + q[1]) * (self.n + self.k)

    def to_json(self) -> dict:
        out = {"k": self.k, "n": self.n, "mode": self.mode}
        if self.parity != "even":
            out["parity"] = self.parity
        return out

    @classmethod
    def from_json(cls, d) -> "RingSpec":
        return cls(d["k"], d.get("n"), d.get("mode", "classical"), d.get("parity", "even"))

    def odd_partner(self) -> "RingSpec":
        if self.parity != "even":
            raise RingError("already odd")
        return RingSpec(self.k, self.n, self.mode, "odd")


def _add(d: dict, key, c):
    if not c:
        return
    v = d.get(key, 0) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def _qadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


@dataclass
class SchubertExpr:
    """Finite combination of ``tau_lam q^d``; keys ``(parts, type, (d1, d2))``."""

    ring: RingSpec
    terms: dict = field(default_factory=dict)

    @classmethod
    def basis_element(cls, ring: RingSpec, lam, typ: int | None = None, q=Q0) -> "SchubertExpr":
        if isinstance(lam, TypedPartition):
            parts, typ = lam.parts, lam.type
        else:
            parts = tuple(lam)
            if typ is None:
                typ = typed_types(parts, ring.k)[0] if ring.parity == "even" else 0
        if ring.parity == "odd":
            typ = 0
        elif typ not in typed_types(parts, ring.k):
            raise PartitionError(f"type {typ} inconsistent with {parts}")
        if not is_k_strict(parts, ring.k):
            raise PartitionError(f"{parts} is not {ring.k}-strict")
        if not ring.fits(parts):
            raise PartitionError(f"{parts} outside the rectangle of {ring}")
        return cls(ring, {(parts, typ, tuple(q)): Fraction(1)})

    @classmethod
    def one(cls, ring: RingSpec) -> "SchubertExpr":
        return cls(ring, {((), 0, Q0): Fraction(1)})

    def __add__(self, other: "SchubertExpr") -> "SchubertExpr":
        _same(self.ring, other.ring)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _add(out, key, c)
        return SchubertExpr(self.ring, out)

    def scale(self, s) -> "SchubertExpr":
        s = Fraction(s)
        return SchubertExpr(self.ring, {k: c * s for k, c in self.terms.items() if c * s})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, SchubertExpr):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __mul__(self, other: "SchubertExpr") -> "SchubertExpr":
        return multiply(self, other)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def has_q(self) -> bool:
        return any(key[2] != Q0 for key in self.terms)

    def degrees(self) -> set[int]:
        return {sum(p) + self.ring.qdeg_weight(q) for p, _, q in self.terms}

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][2], -sum(kv[0][0]), tuple(-x for x in kv[0][0]), kv[0][1]))

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "terms": [
                {"mu": list(p), "type": t, "q": list(q), "coef": str(c)}
                for (p, t, q), c in self.sorted_items()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "SchubertExpr":
        if isinstance(data, str):
            data = json.loads(data)
        ring = RingSpec.from_json(data["ring"])
        terms: dict = {}
        for t in data["terms"]:
            _add(terms, (tuple(t["mu"]), t["type"], tuple(t.get("q", [0, 0]))), Fraction(t["coef"]))
        return cls(ring, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (p, t, q), c in self.sorted_items():
            name = "τ" + ("′" if t == 2 else "") + "[" + ",".join(map(str, p)) + "]"
            if self.ring.two_q:
                qs = "".join(f"q{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(q) if e)
            else:
                qs = ("q" + (f"^{q[0]}" if q[0] > 1 else "")) if q[0] else ""
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}"
            body = coef + name + qs
            out.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _same(a: RingSpec, b: RingSpec):
    if a != b:
        raise RingError(f"mixed ring specs {a} and {b}")


@dataclass
class SplitExpr:
    """Hat/tilde coordinates; keys ``(kind, parts, (d1, d2))``."""

    ring: RingSpec
    terms: dict = field(default_factory=dict)

    @property
    def hat(self) -> dict:
        return {(p, q): c for (kind, p, q), c in self.terms.items() if kind == HAT}

    @property
    def tilde(self) -> dict:
        return {(p, q): c for (kind, p, q), c in self.terms.items() if kind == TILDE}

    def __eq__(self, other):
        return isinstance(other, SplitExpr) and self.ring == other.ring and self.terms == other.terms

    def __add__(self, other):
        _same(self.ring, other.ring)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _add(out, key, c)
        return SplitExpr(self.ring, out)

    def scale(self, s):
        s = Fraction(s)
        return SplitExpr(self.ring, {k: c * s for k, c in self.terms.items() if c * s})


def _positive(parts, ring: RingSpec) -> bool:
    return ring.parity == "even" and ring.k in parts


def to_split(e: SchubertExpr) -> SplitExpr:
    out: dict = {}
    half = Fraction(1, 2)
    for (p, t, q), c in e.terms.items():
        if t == 0:
            _add(out, (HAT, p, q), c)
        else:
            _add(out, (HAT, p, q), c * half)
            _add(out, (TILDE, p, q), c * half if t == 1 else -c * half)
    return SplitExpr(e.ring, out)


def from_split(s: SplitExpr) -> SchubertExpr:
    out: dict = {}
    for (kind, p, q), c in s.terms.items():
        if kind == HAT:
            if _positive(p, s.ring):
                _add(out, (p, 1, q), c)
                _add(out, (p, 2, q), c)
            else:
                _add(out, (p, 0, q), c)
        else:
            if not _positive(p, s.ring):
                raise RingError(f"tilde class of {p} without a part k")
            _add(out, (p, 1, q), c)
            _add(out, (p, 2, q), -c)
    return SchubertExpr(s.ring, out)


# ---------------------------------------------------------------------------
# generator actions


@lru_cache(maxsize=None)
def _c_action(ring: RingSpec, kind: str, parts: tuple[int, ...], p: int) -> tuple:
    """``c_p`` times one split basis class, as ``((kind, mu, dq, coeff), ...)``."""
    if p == 0:
        return ((kind, parts, Q0, Fraction(1)),)
    K = ring.K
    if ring.mode in ("classical", "stable"):
        terms = chern_pieri(parts, p, K, kind, max_rows=ring.rows, max_cols=ring.cols)
        return tuple((kind, t.mu, Q0, t.coeff) for t in terms)
    if K == 2:
        terms = k2_quantum_pieri(parts, p, ring.n, kind)
    else:
        terms = quantum_chern_pieri(parts, p, ring.params, kind)
    return tuple((t.kind, t.mu, t.q, t.coeff) for t in terms)


def _apply_c(ring: RingSpec, p: int, terms: dict) -> dict:
    out: dict = {}
    for (kind, parts, q), c in terms.items():
        for kind2, mu, dq, coeff in _c_action(ring, kind, parts, p):
            _add(out, (kind2, mu, _qadd(q, dq)), c * coeff)
    return out


def apply_chern_polynomial(ring: RingSpec, poly: dict[tuple[int, ...], Fraction],
                           terms: dict) -> dict:
    """Apply ``sum coeff * c_mono`` to split ``terms``; shares monomial prefixes."""
    memo: dict[tuple[int, ...], dict] = {(): terms}

    def get(mono):
        if mono not in memo:
            memo[mono] = _apply_c(ring, mono[-1], get(mono[:-1]))
        return memo[mono]

    out: dict = {}
    for mono in sorted(poly, key=lambda m: (len(m), m)):
        c = poly[mono]
        if not c:
            continue
        for key, v in get(mono).items():
            _add(out, key, c * v)
    return out


@lru_cache(maxsize=None)
def _hat_poly(parts: tuple[int, ...], K: int) -> tuple:
    g = giambelli_c(parts, K)
    return tuple((cs, c) for (cs, _), c in g.terms.items())


@lru_cache(maxsize=None)
def _tilde_poly(parts: tuple[int, ...], k: int) -> tuple:
    """Chern polynomial ``G`` with ``tau~_parts = G(c) * tau~_k``."""
    g = giambelli_c(remove_part(parts, k), 2 * k + 1)
    return tuple((cs, c) for (cs, _), c in g.terms.items())


def _tilde_action(ring: RingSpec, terms: dict) -> dict:
    """Multiply split ``terms`` by ``tau~_k = tau_k - tau'_k``."""
    if ring.parity != "even":
        raise RingError("tau~_k exists only on even rings")
    if ring.mode == "quantum" and ring.K == 3:
        raise RingError("quantum tau~ action is ill-posed for K = 3")
    out: dict = {}
    for (kind, parts, q), c in terms.items():
        for key, v in _tilde_on_basis(ring, kind, parts).items():
            kind2, mu, dq = key
            _add(out, (kind2, mu, _qadd(q, dq)), c * v)
    return out


@lru_cache(maxsize=None)
def _tilde_on_basis(ring: RingSpec, kind: str, parts: tuple[int, ...]) -> dict:
    k = ring.k
    if kind == HAT:
        poly = dict(_hat_poly(parts, ring.K))
        start = {(TILDE, (k,), Q0): Fraction(1)}
        if not ring.fits((k,)):
            return {}
    else:
        poly: dict = {}
        T = tau_k_squared(k)
        for cs, c in _tilde_poly(parts, k):
            for ts, t in T.items():
                mono = tuple(sorted(cs + ts, reverse=True))
                poly[mono] = poly.get(mono, 0) + c * t
        start = {(HAT, (), Q0): Fraction(1)}
    return apply_chern_polynomial(ring, poly, start)


def apply_generator(e: SplitExpr, g) -> SplitExpr:
    """Apply ``('c', p)``, ``'tau_tilde'`` or ``'tau_prime'`` to ``e``."""
    ring = e.ring
    if g == "tau_tilde":
        return SplitExpr(ring, _tilde_action(ring, e.terms))
    if g == "tau_prime":
        a = _apply_c(ring, ring.k, e.terms)
        b = _tilde_action(ring, e.terms)
        out: dict = {}
        for key, c in a.items():
            _add(out, key, c / 2)
        for key, c in b.items():
            _add(out, key, -c / 2)
        return SplitExpr(ring, out)
    if isinstance(g, tuple) and g[0] == "c":
        return SplitExpr(ring, _apply_c(ring, g[1], e.terms))
    if isinstance(g, int):
        return SplitExpr(ring, _apply_c(ring, g, e.terms))
    raise RingError(f"unknown generator {g!r}")


# ---------------------------------------------------------------------------
# products


def multiply(a: SchubertExpr, b: SchubertExpr, *, check_integral: bool = True) -> SchubertExpr:
    """Product in the ring of ``a`` (classical, quantum or stable)."""
    _same(a.ring, b.ring)
    ring = a.ring
    sa, sb = to_split(a), to_split(b)
    hat_polys: dict = {}
    tilde_polys: dict = {}
    for (kind, parts, q), c in sa.terms.items():
        if kind == HAT:
            target = hat_polys.setdefault(q, {})
            for cs, v in _hat_poly(parts, ring.K):
                _add(target, cs, c * v)
        else:
            target = tilde_polys.setdefault(q, {})
            for cs, v in _tilde_poly(parts, ring.k):
                _add(target, cs, c * v)
    out: dict = {}
    for q, poly in hat_polys.items():
        for (kind, p, q2), v in apply_chern_polynomial(ring, poly, sb.terms).items():
            _add(out, (kind, p, _qadd(q, q2)), v)
    for q, poly in tilde_polys.items():
        part = apply_chern_polynomial(ring, poly, sb.terms)
        for (kind, p, q2), v in _tilde_action(ring, part).items():
            _add(out, (kind, p, _qadd(q, q2)), v)
    res = from_split(SplitExpr(ring, out))
    if check_integral and not res.is_integral():
        raise RingError(f"non-integral product coefficients: {res}")
    return res


def structure_constants(lam, mu, ring: RingSpec) -> dict:
    """Coefficients of ``tau_nu q^d`` in ``tau_lam * tau_mu``."""
    a = SchubertExpr.basis_element(ring, lam)
    b = SchubertExpr.basis_element(ring, mu)
    return {key: int(c) for key, c in multiply(a, b).terms.items()}


def basis(ring: RingSpec, max_size: int | None = None) -> list[tuple[tuple[int, ...], int]]:
    """Basis labels ``(parts, type)`` of a bounded ring (or of the stable ring up to ``max_size``)."""
    from .partitions import k_strict_in_rectangle

    if ring.mode == "stable":
        if max_size is None:
            raise RingError("stable basis needs max_size")
        shapes = [s for d in range(max_size + 1) for s in k_strict_partitions(d, ring.k)]
    else:
        shapes = k_strict_in_rectangle(ring.k, ring.rows, ring.cols)
        if max_size is not None:
            shapes = [s for s in shapes if sum(s) <= max_size]
    if ring.parity == "odd":
        return [(s, 0) for s in shapes]
    return [(s, t) for s in shapes for t in typed_types(s, ring.k)]


def evaluate_special(poly, ring: RingSpec) -> SchubertExpr:
    """Evaluate a :class:`SpecialPolynomial` on ``1`` through the Pieri rules."""
    gen = poly.generator_form()
    plain: dict = {}
    tilde: dict = {}
    for (cs, has_t), c in gen.items():
        _add(tilde if has_t else plain, cs, c)
    one = {(HAT, (), Q0): Fraction(1)}
    out = apply_chern_polynomial(ring, plain, one)
    if tilde:
        start = _tilde_action(ring, one)
        for key, v in apply_chern_polynomial(ring, tilde, start).items():
            _add(out, key, v)
    return from_split(SplitExpr(ring, out))


@dataclass
class QuantumGiambelliReport:
    lam: TypedPartition
    expected: SchubertExpr
    got: SchubertExpr

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    @property
    def q_terms(self) -> dict:
        return {k: v for k, v in self.got.terms.items() if k[2] != Q0}


def verify_quantum_giambelli(lam: TypedPartition, ring: RingSpec) -> QuantumGiambelliReport:
    """Evaluate the classical Giambelli polynomial of ``lam`` in the quantum ring."""
    if ring.mode != "quantum" or ring.parity != "even":
        raise RingError("needs an even quantum ring")
    got = evaluate_special(giambelli_special(lam), ring)
    expected = SchubertExpr.basis_element(ring, lam)
    return QuantumGiambelliReport(lam, expected, got)


# ---------------------------------------------------------------------------
# recursion and transfer


@dataclass
class RecursionResult:
    coefficients: dict
    support_ok: bool
    bound_ok: bool | None


def recursion_coefficients(lam, K: int, params: GrassParams | None = None) -> RecursionResult:
    """Unique ``a_{p,mu}`` with ``[Y_lam] = sum a_{p,mu} c_p [Y_mu]`` in the stable ring.

    ``p >= lam_1`` and ``(p, mu)`` k-strict.  The support conditions
    ``mu`` inside ``lam*`` and (with ``params``) ``p < 2n + 2k`` are checked.
    """
    parts = lam.parts if hasattr(lam, "parts") else tuple(lam)
    k = K // 2
    if not is_k_strict(parts, k):
        raise PartitionError(f"{parts} is not {k}-strict")
    size = sum(parts)
    if not parts:
        return RecursionResult({}, True, True)
    ring = RingSpec(k, None, "stable", "odd" if K % 2 else "even")
    lin = LinearBasis()
    for nu in k_strict_partitions(size, k):
        p, mu = nu[0], nu[1:]
        if p < parts[0]:
            continue
        vec = {}
        for kind, m2, _, c in _c_action(ring, HAT, mu, p):
            vec[m2] = vec.get(m2, 0) + c
        lin.add((p, mu), vec)
    try:
        coeffs = lin.express({parts: Fraction(1)})
    except SpanError as exc:
        raise RingError(f"no recursion for {parts}: {exc}") from exc
    star = parts[1:]
    support_ok = all(contains(star, mu) for (_, mu) in coeffs)
    bound_ok = None
    if params is not None:
        bound_ok = all(p < 2 * params.n + 2 * params.k for (p, _) in coeffs)
    return RecursionResult(dict(sorted(coeffs.items())), support_ok, bound_ok)


def odd_even_transfer(terms: dict, ring: RingSpec) -> SplitExpr:
    """Map an odd-ring element ``{(lam, (d, 0)): coeff}`` into the tilde part of ``ring``.

    ``sigma_lam q^d -> tau~_{lam+k} (-q)^d`` (the sign only in quantum mode).
    """
    if ring.parity != "even":
        raise RingError("target ring must be even")
    k = ring.k
    out: dict = {}
    for (lam, q), c in terms.items():
        lam = tuple(lam)
        if ring.mode != "stable" and not (len(lam) <= ring.rows - 1 and (not lam or lam[0] <= ring.cols)):
            raise PartitionError(f"{lam} outside the (m-1)x(n+k) rectangle")
        sign = (-1) ** (q[0] + q[1]) if ring.mode == "quantum" else 1
        _add(out, (TILDE, add_part(lam, k), tuple(q)), c * sign)
    return SplitExpr(ring, out)
