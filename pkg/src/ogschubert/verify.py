"""Named verification suites.

Each suite returns a :class:`CheckResult`; the CLI ``verify`` verb and the
acceptance tests both call these functions.  Bounds are explicit keyword
arguments whose defaults are the acceptance bounds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .eta import eta_polynomial, expand_in_H_basis
from .indexsets import (
    bar,
    from_partition,
    index_sets,
    iota,
    leq,
    preceq,
    to_partition,
)
from .partitions import (
    GrassParams,
    PartitionError,
    TypedPartition,
    contains,
    enumerate_typed,
    k_strict_in_rectangle,
    split_columns,
)
from .pieri import chern_pieri, quantum_chern_pieri
from .raising import giambelli_c, giambelli_special
from .ring import (
    HAT,
    TILDE,
    RingError,
    RingSpec,
    SchubertExpr,
    SplitExpr,
    apply_generator,
    basis,
    evaluate_special,
    from_split,
    multiply,
    odd_even_transfer,
    verify_quantum_giambelli,
)
from .symfunc import MPoly, VarConfig, e_y_squared, expand_P_s_basis, family, theta_eta
from .weyl import (
    SignedPermutation,
    billey_haiman_D,
    kl_tableaux,
    partition_perm,
    perm_partition,
    stanley_E,
    stanley_coefficients,
)

__all__ = ["CheckResult", "SUITES", "run_suite", "WORKED_EXAMPLE"]

WORKED_EXAMPLE = "τ₃τ′₂(τ₂+τ′₂) − τ₄τ′₂τ₁ + τ₆τ₁ − τ₃²τ₁ + τ₄τ₃ − τ₇"
BIJECTION_EXAMPLE = (-3, 6, 7, -5, -2, -1, 4, 8)


@dataclass
class CheckResult:
    name: str
    ok: bool
    summary: str
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.summary} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "summary": self.summary,
                "failures": self.failures[:20], "seconds": round(self.seconds, 3)}


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.count = 0
        self.failures: list[str] = []
        self.start = time.perf_counter()

    def check(self, ok: bool, what: str):
        self.count += 1
        if not ok:
            self.failures.append(what)

    def result(self, what: str = "cases") -> CheckResult:
        bad = len(self.failures)
        return CheckResult(self.name, bad == 0 and self.count > 0,
                           f"{self.count - bad}/{self.count} {what}", self.failures,
                           time.perf_counter() - self.start)


# ---------------------------------------------------------------------------
# 1-3: worked examples


def giambelli_example() -> CheckResult:
    t = _Tally("giambelli-example")
    lam = TypedPartition((3, 2, 2), 2, 2)
    got = giambelli_special(lam).to_tau_string()
    t.check(got == WORKED_EXAMPLE, f"got {got}")
    t.check(GrassParams.from_mN(4, 12).fits(lam.parts), "(3,2,2) outside OG(4,12)")
    return t.result("checks")


def bijection_example() -> CheckResult:
    t = _Tally("bijection-example")
    lam = TypedPartition((7, 4, 3, 2), 3, 2)
    w = partition_perm(lam, n=7)
    t.check(w.images == BIJECTION_EXAMPLE, f"w = {w.to_text()}")
    back = perm_partition(SignedPermutation(BIJECTION_EXAMPLE), 3)
    t.check(back == lam, f"inverse gave {back}")
    t.check(w.length() == lam.size, f"length {w.length()} != {lam.size}")
    return t.result("checks")


def kl_example() -> CheckResult:
    t = _Tally("kl-example")
    lam = TypedPartition((6, 5, 2), 0, 0)
    w = partition_perm(lam)
    tabs = kl_tableaux(w)
    t.check(len(tabs) == 1, f"{len(tabs)} tableaux")
    if tabs:
        T = tabs[0]
        rows = ((6, 5, 4, 3, 2, 1), (5, 4, 3, 2, 1), (2, 1))
        t.check(T.rows == rows, f"rows {T.rows}")
        t.check(T.m == 0, f"m = {T.m}")
    cfg = VarConfig(d=13, k=0, degcap=13)
    E = stanley_E(w, cfg)
    t.check(E == family("P", (6, 5, 2), cfg), "E_w != P_(6,5,2)")
    return t.result("checks")


# ---------------------------------------------------------------------------
# 4: Giambelli-Pieri consistency


def giambelli_pieri(ks=(1, 2), max_n: int = 4) -> CheckResult:
    t = _Tally("giambelli-pieri")
    for k in ks:
        for n in range(k, max_n + 1):
            ring = RingSpec(k, n, "classical")
            for lam in enumerate_typed(k, n):
                got = evaluate_special(giambelli_special(lam), ring)
                t.check(got == SchubertExpr.basis_element(ring, lam),
                        f"k={k} n={n} {lam.to_text()}: {got}")
    return t.result("partitions")


# ---------------------------------------------------------------------------
# 5: eta polynomials versus ring structure constants


def eta_ring(ks=(1, 2), max_total: int = 8) -> CheckResult:
    t = _Tally("eta-ring")
    for k in ks:
        lams = [lam for lam in enumerate_typed(k, max_size=max_total) if lam.parts]
        stable = RingSpec(k, None, "stable")
        for i, a in enumerate(lams):
            for b in lams[i:]:
                if a.size + b.size > max_total:
                    continue
                coeffs = expand_in_H_basis(eta_polynomial(a) * eta_polynomial(b))
                if any(c.denominator != 1 for c in coeffs.values()):
                    t.check(False, f"{a.to_text()}*{b.to_text()}: non-integral {coeffs}")
                    continue
                prod = multiply(SchubertExpr.basis_element(stable, a),
                                SchubertExpr.basis_element(stable, b))
                ring_c = {(p, ty): c for (p, ty, _), c in prod.terms.items()}
                t.check(ring_c == coeffs, f"{a.to_text()}*{b.to_text()}: {coeffs} vs {ring_c}")
                # bounded ring: rectangle-supported terms only
                n = max(k, _least_n(a.parts, k), _least_n(b.parts, k))
                ring = RingSpec(k, n, "classical")
                bprod = multiply(SchubertExpr.basis_element(ring, a),
                                 SchubertExpr.basis_element(ring, b))
                want = {key: c for key, c in coeffs.items() if ring.fits(key[0])}
                got = {(p, ty): c for (p, ty, _), c in bprod.terms.items()}
                t.check(got == want, f"{a.to_text()}*{b.to_text()} in n={n}: {got} vs {want}")
    return t.result("products")


def _least_n(parts, k) -> int:
    if not parts:
        return k
    return max(len(parts) + k - 1, parts[0] - k)


# ---------------------------------------------------------------------------
# 6-7: d-coefficients and Billey-Haiman polynomials


def _subpartitions(outer: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = []

    def rec(i, cap, acc):
        if i == len(outer):
            out.append(tuple(x for x in acc if x))
            return
        for v in range(min(cap, outer[i]), -1, -1):
            rec(i + 1, v, acc + [v])

    rec(0, outer[0] if outer else 0, [])
    return sorted(set(out))


def _nu_perm(nu: tuple[int, ...], k: int) -> SignedPermutation:
    return partition_perm(TypedPartition(nu, k, 1 if k in nu else 0))


def d_coefficients_kl(ks=(1, 2), max_size: int = 6) -> CheckResult:
    t = _Tally("d-coefficients")
    for k in ks:
        for lam in enumerate_typed(k, max_size=max_size):
            coeffs = expand_P_s_basis(eta_polynomial(lam))
            w = partition_perm(lam)
            _, lam2 = split_columns(lam.parts, k)
            nus = set(_subpartitions(lam2)) | {nu for (_, nu) in coeffs}
            for nu in sorted(nus):
                t.check(contains(lam2, nu), f"{lam.to_text()}: nu={nu} not inside lambda^2")
                v = _nu_perm(nu, k)
                u = w * v.inverse()
                want = {}
                if u.length() + v.length() == w.length():
                    want = {mu: Fraction(d) for mu, d in stanley_coefficients(u).items()}
                got = {mu: c for (mu, n2), c in coeffs.items() if n2 == nu}
                t.check(got == want, f"{lam.to_text()} nu={nu}: {got} vs {want}")
    return t.result("(lambda, nu) pairs")


def billey_haiman(ks=(1, 2), max_size: int = 6) -> CheckResult:
    t = _Tally("billey-haiman")
    for k in ks:
        for lam in enumerate_typed(k, max_size=max_size):
            D = billey_haiman_D(partition_perm(lam), k=k)
            t.check(D == eta_polynomial(lam), f"{lam.to_text()}")
    return t.result("partitions")


# ---------------------------------------------------------------------------
# 8: quantum Giambelli


QG_SPACES = ((2, 3), (2, 4), (3, 4))


def _special_expected(n: int, tilde: bool) -> SchubertExpr:
    """The displayed K = 2 products ``c_1 * tau^_(1^n)`` and ``c_1 * tau~_(1^n)``."""
    ring = RingSpec(1, n, "quantum")
    out: dict = {}
    two_one = (2,) + (1,) * (n - 1)
    if not tilde:
        out[(HAT, (n + 1,), (0, 0))] = Fraction(2)
        if n > 1:
            out[(HAT, two_one, (0, 0))] = Fraction(2)
        out[(HAT, (), (1, 0))] = Fraction(1)
        out[(HAT, (), (0, 1))] = Fraction(1)
    else:
        if n > 1:
            out[(TILDE, two_one, (0, 0))] = Fraction(2)
        out[(HAT, (), (1, 0))] = Fraction(1)
        out[(HAT, (), (0, 1))] = Fraction(-1)
    return from_split(SplitExpr(ring, out))


def _split_basis(ring: RingSpec, kind: str, parts) -> SchubertExpr:
    return from_split(SplitExpr(ring, {(kind, tuple(parts), (0, 0)): Fraction(1)}))


def quantum_giambelli(spaces=QG_SPACES, special_ns=(1, 2, 3), triples: int = 100,
                      seed: int = 0) -> CheckResult:
    t = _Tally("quantum-giambelli")
    for k, n in spaces:
        ring = RingSpec(k, n, "quantum")
        for lam in enumerate_typed(k, n):
            rep = verify_quantum_giambelli(lam, ring)
            t.check(rep.ok and not rep.q_terms, f"k={k} n={n} {lam.to_text()}: {rep.got}")
    for n in special_ns:
        ring = RingSpec(1, n, "quantum")
        c1 = SchubertExpr.basis_element(ring, (1,), 1) + SchubertExpr.basis_element(ring, (1,), 2)
        ones = (1,) * n
        for tilde in (False, True):
            got = multiply(c1, _split_basis(ring, TILDE if tilde else HAT, ones),
                           check_integral=False)
            t.check(got == _special_expected(n, tilde),
                    f"special{2 if tilde else 1} n={n}: {got}")
    rng = random.Random(seed)
    quantum_spaces = list(spaces) + [(1, n) for n in special_ns]
    for k, n in quantum_spaces:
        ring = RingSpec(k, n, "quantum")
        B = basis(ring)
        for _ in range(triples):
            a, b, c = (SchubertExpr.basis_element(ring, *rng.choice(B)) for _ in range(3))
            lhs = multiply(multiply(a, b), c)
            rhs = multiply(a, multiply(b, c))
            t.check(lhs == rhs, f"associativity k={k} n={n}: {a} {b} {c}")
    return t.result("checks")


def quantum_giambelli_single(k: int, n: int) -> CheckResult:
    t = _Tally(f"quantum-giambelli k={k} n={n}")
    ring = RingSpec(k, n, "quantum")
    for lam in enumerate_typed(k, n):
        rep = verify_quantum_giambelli(lam, ring)
        t.check(rep.ok and not rep.q_terms, f"{lam.to_text()}: {rep.got}")
    return t.result("partitions")


# ---------------------------------------------------------------------------
# 9: transfer maps


def transfer(spaces=((1, 2), (2, 3))) -> CheckResult:
    t = _Tally("transfer")
    for k, n in spaces:
        for mode in ("classical", "quantum"):
            ring = RingSpec(k, n, mode)
            odd = GrassParams.odd(k, n)
            for parts in k_strict_in_rectangle(k, ring.rows - 1, n + k):
                psi_lam = odd_even_transfer({(parts, (0, 0)): Fraction(1)}, ring)
                for p in range(1, n + k + 1):
                    lhs_terms: dict = {}
                    if mode == "classical":
                        for term in chern_pieri(parts, p, 2 * k + 1, "hat",
                                                max_rows=odd.m, max_cols=odd.width):
                            key = (term.mu, term.q)
                            lhs_terms[key] = lhs_terms.get(key, 0) + term.coeff
                    else:
                        for term in quantum_chern_pieri(parts, p, odd, "hat"):
                            key = (term.mu, term.q)
                            lhs_terms[key] = lhs_terms.get(key, 0) + term.coeff
                    lhs = odd_even_transfer(lhs_terms, ring)
                    rhs = apply_generator(psi_lam, ("c", p))
                    if ring.K == 2 and mode == "quantum":
                        lhs, rhs = _collapse_q(lhs), _collapse_q(rhs)
                    t.check(lhs == rhs, f"k={k} n={n} {mode} lam={parts} p={p}")
    return t.result("(lambda, p) pairs")


def _collapse_q(e: SplitExpr) -> dict:
    """Image in the quotient ``q1 = q2``."""
    out: dict = {}
    for (kind, parts, q), c in e.terms.items():
        key = (kind, parts, q[0] + q[1])
        out[key] = out.get(key, 0) + c
    return {key: c for key, c in out.items() if c}


# ---------------------------------------------------------------------------
# 10: index-set order laws


def index_set_laws(Ns=(6, 8, 10)) -> CheckResult:
    t = _Tally("index-sets")
    for N in Ns:
        for m in range(1, (N + 1) // 2):
            if 2 * m >= N:
                continue
            params = GrassParams.from_mN(m, N)
            sets = index_sets(params)
            rel = {(Q, P): bool(preceq(Q, P)) for Q in sets for P in sets}
            for P in sets:
                lam = to_partition(P)
                t.check(from_partition(lam, params) == P, f"N={N} round trip {P}")
                t.check(rel[(P, P)], f"N={N} reflexive {P}")
            for Q in sets:
                for P in sets:
                    a = rel[(Q, P)]
                    if a and Q != P:
                        t.check(not rel[(P, Q)], f"N={N} antisymmetry {Q} {P}")
                        for R in sets:
                            if rel[(P, R)]:
                                t.check(rel[(Q, R)], f"N={N} transitivity {Q} {P} {R}")
                    t.check(a == rel[(iota(Q), iota(P))], f"N={N} iota {Q} {P}")
                    union = a or rel[(Q, iota(P))]
                    t.check(leq(Q, bar(P)) == union, f"N={N} union {Q} {P}")
    return t.result("checks")


# ---------------------------------------------------------------------------
# 11: degree bound


def degree_bound(max_k: int = 2, max_n: int = 4) -> CheckResult:
    t = _Tally("degree-bound")
    for k in range(1, max_k + 1):
        for n in range(k, max_n + 1):
            for parts in k_strict_in_rectangle(k, n + 1 - k, n + k):
                top = giambelli_c(parts, 2 * k).max_chern_index()
                t.check(top <= 2 * n + 2 * k - 1, f"k={k} n={n} {parts}: c_{top}")
    return t.result("partitions")


# ---------------------------------------------------------------------------
# 12: generator identities


def generator_identities(max_r: int = 8, ks=(1, 2, 3), degcap: int = 16) -> CheckResult:
    t = _Tally("generator-identities")
    for k in ks:
        cfg = VarConfig(d=degcap, k=k, degcap=degcap)

        def th(r):
            return theta_eta(r, cfg) if r >= 0 else MPoly.zero(k)

        def eta(r):
            return theta_eta(r, cfg, which="eta")

        for r in range(1, max_r + 1):
            lhs = th(r) * th(r)
            for i in range(1, r + 1):
                lhs = lhs + (th(r + i) * th(r - i)).scale(2 * (-1) ** i)
            t.check(lhs == MPoly(k, e_y_squared(r, k).terms, degcap),
                    f"k={k} theta relation r={r}")
            if r > k:
                rel = eta(r) * eta(r)
                for i in range(1, r + 1):
                    rel = rel + (eta(r + i) * th(r - i)).scale((-1) ** i)
                t.check(rel.is_zero(), f"k={k} eta relation r={r}")
        rel = eta(k) * theta_eta((k, "prime"), cfg)
        for i in range(1, k + 1):
            rel = rel + (eta(k + i) * eta(k - i)).scale((-1) ** i)
        t.check(rel.is_zero(), f"k={k} eta_k eta'_k relation")
    return t.result("identities")


SUITES: dict[str, Callable[..., CheckResult]] = {
    "giambelli-example": giambelli_example,
    "bijection-example": bijection_example,
    "kl-example": kl_example,
    "giambelli-pieri": giambelli_pieri,
    "eta-ring": eta_ring,
    "d-coefficients": d_coefficients_kl,
    "billey-haiman": billey_haiman,
    "quantum-giambelli": quantum_giambelli,
    "transfer": transfer,
    "index-sets": index_set_laws,
    "degree-bound": degree_bound,
    "generator-identities": generator_identities,
}


def run_suite(name: str, **kwargs) -> CheckResult:
    if name not in SUITES:
        raise PartitionError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    try:
        res = SUITES[name](**kwargs)
    except (PartitionError, RingError, ArithmeticError) as exc:
        res = CheckResult(name, False, f"error: {exc}", [str(exc)])
    res.seconds = time.perf_counter() - start
    return res
