from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import typed_partitions
from ogschubert.eta import eta_polynomial, eta_tilde, expand_in_H_basis, theta_polynomial
from ogschubert.partitions import (
    GrassParams,
    KStrictPartition,
    PartitionError,
    enumerate_typed,
    k_strict_in_rectangle,
    k_strict_partitions,
)
from ogschubert.pieri import (
    chern_pieri,
    k2_quantum_pieri,
    k_related,
    n_hat,
    pieri_relation,
    quantum_chern_pieri,
    strip_successors,
)
from ogschubert.symfunc import LinearBasis, theta_eta


def _collect(terms, with_type=True):
    out = {}
    for t in terms:
        key = (t.mu, t.type) if with_type else t.mu
        out[key] = out.get(key, 0) + t.coeff
    return {key: c for key, c in out.items() if c}


def test_k_related_examples():
    assert k_related((1, 2), (1, 3), 4)
    assert not k_related((1, 2), (2, 3), 4)
    assert k_related((2, 1), (1, 6), 5)


def test_empty_partition_rules():
    for k in (1, 2, 3):
        K = 2 * k
        for p in range(1, k + 1):
            assert [(t.mu, t.pow2) for t in chern_pieri((), p, K, "hat")] == [((p,), 0)]
        for p in range(k + 1, k + 4):
            assert [(t.mu, t.pow2) for t in chern_pieri((), p, K, "hat")] == [((p,), 1)]


def test_n_hat_examples():
    for k in (1, 2):
        K = 2 * k
        N = pieri_relation((k,), (k + 1,), K)
        assert n_hat((k,), (k + 1,), K) == N + 1
        N = pieri_relation((k, 1), (k, 2), K) if k > 1 else None
        if N is not None:
            assert n_hat((k, 1), (k, 2), K) == N
    N = pieri_relation((1,), (2,), 3)
    assert n_hat((1,), (2,), 3) == N


def test_tilde_needs_part_k():
    assert chern_pieri((3,), 1, 4, "tilde") == []


def test_strip_successors_sizes():
    for mu, N in strip_successors((2, 1), 2, 4):
        assert sum(mu) == 5 and N >= 0


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_typed_pieri_matches_eta_products(k, p):
    # oracle: theta_p * H_lam re-expanded in the H basis
    for lam in enumerate_typed(k, max_size=5 if k < 3 else 4):
        want = expand_in_H_basis(theta_eta(p, k=k) * eta_polynomial(lam))
        got = _collect(chern_pieri(lam, p, 2 * k, "typed"))
        assert got == want, lam


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_tilde_pieri_matches_eta_products(k, p):
    for lam in enumerate_typed(k, max_size=5):
        if lam.type != 1:
            continue
        f = theta_eta(p, k=k) * eta_tilde(lam.base)
        coeffs = expand_in_H_basis(f)
        want = {}
        for (mu, typ), c in coeffs.items():
            assert typ in (1, 2)
            if typ == 1:
                want[mu] = c
                assert coeffs.get((mu, 2)) == -c
        got = _collect(chern_pieri(lam.base, p, 2 * k, "tilde"), with_type=False)
        assert got == want, lam


def _theta_basis(k, d):
    lb = LinearBasis()
    # the odd class of lam is 2^{-ell_k} Theta_lam
    for parts in k_strict_partitions(d, k):
        lb.add(parts, _odd_class(parts, k).terms)
    return lb


def _odd_class(parts, k):
    ell = sum(1 for x in parts if x > k)
    return theta_polynomial(KStrictPartition(parts, k)).scale(Fraction(1, 2 ** ell))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_odd_pieri_matches_theta_products(k):
    K = 2 * k + 1
    bases = {}
    for d in range(0, 5):
        for parts in k_strict_partitions(d, k):
            for p in (1, 2, 3):
                f = theta_eta(p, k=k) * _odd_class(parts, k)
                deg = d + p
                if deg not in bases:
                    bases[deg] = _theta_basis(k, deg)
                want = bases[deg].express(f.terms)
                got = _collect(chern_pieri(parts, p, K, "hat"), with_type=False)
                assert got == want, (parts, p)


@pytest.mark.parametrize("k,n", [(2, 3), (2, 4), (3, 4), (1, 3)])
def test_quantum_grading(k, n):
    params = GrassParams.even(k, n)
    for parts in k_strict_in_rectangle(k, params.m, params.width):
        for p in range(1, n + k + 1):
            if params.K == 2:
                terms = k2_quantum_pieri(parts, p, n, "hat")
            else:
                terms = quantum_chern_pieri(parts, p, params, "hat")
            for t in terms:
                assert params.fits(t.mu)
                assert sum(t.mu) + (t.q[0] + t.q[1]) * (n + k) == sum(parts) + p


@pytest.mark.parametrize("k,n", [(2, 3), (3, 4)])
def test_quantum_vanishes_above_n_plus_k(k, n):
    params = GrassParams.even(k, n)
    assert quantum_chern_pieri((1,), n + k + 1, params) == []


def test_quantum_small_is_classical():
    params = GrassParams.even(2, 4)
    q = _collect(quantum_chern_pieri((2, 1), 1, params, "hat"), with_type=False)
    c = _collect(chern_pieri((2, 1), 1, 4, "hat", max_rows=params.m, max_cols=params.width),
                 with_type=False)
    assert q == c


@pytest.mark.parametrize("n", [1, 2, 3])
def test_k2_special_products(n):
    hat = _collect(k2_quantum_pieri((1,) * n, 1, n, "hat"), with_type=False)
    want = {(n + 1,): 2}
    if n > 1:
        want[(2,) + (1,) * (n - 1)] = 2
    want[()] = 2  # q1 and q2 terms share mu = () in this view
    assert hat == want
    terms = k2_quantum_pieri((1,) * n, 1, n, "hat")
    assert {t.q for t in terms if not t.mu} == {(1, 0), (0, 1)}
    tilde = k2_quantum_pieri((1,) * n, 1, n, "tilde")
    qs = {(t.q, t.kind): t.coeff for t in tilde if not t.mu}
    assert qs == {((1, 0), "hat"): 1, ((0, 1), "hat"): -1}
    classical = {t.mu: t.coeff for t in tilde if t.mu}
    assert classical == ({(2,) + (1,) * (n - 1): 2} if n > 1 else {})


def test_k2_rejects_bad_input():
    with pytest.raises(PartitionError):
        k2_quantum_pieri((3,), 1, 1)


@given(typed_partitions(ks=(1, 2), max_size=5), st.integers(1, 4))
def test_hat_is_sum_of_types(lam, p):
    if lam.type == 2:
        return
    K = 2 * lam.k
    hat = _collect(chern_pieri(lam.base, p, K, "hat"), with_type=False)
    if lam.type == 0:
        typed_terms = chern_pieri(lam, p, K, "typed")
    else:
        typed_terms = chern_pieri(lam, p, K, "typed") + chern_pieri(lam.swap_type(), p, K, "typed")
    acc = {}
    for t in typed_terms:
        acc[t.mu] = acc.get(t.mu, 0) + t.coeff
    # [Y_mu] = tau_mu + tau'_mu, so each positive mu is counted once per type
    want = {}
    for mu, c in acc.items():
        scale = Fraction(1, 2) if lam.k in mu else 1
        want[mu] = c * scale
    assert hat == {mu: c for mu, c in want.items() if c}


@given(typed_partitions(ks=(1, 2), max_size=5), st.integers(1, 4))
def test_coefficients_are_powers_of_two(lam, p):
    for t in chern_pieri(lam, p, 2 * lam.k, "typed"):
        assert t.pow2 >= 0 and t.sign == 1
