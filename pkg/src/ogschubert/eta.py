"""Eta and theta polynomials.

``H_lam`` represents the Schubert class ``tau_lam`` of the stable ring inside
the ring generated by ``eta_r`` and ``eta'_k``; the substitution
``c_p -> theta_p``, ``tau_k -> eta_k``, ``tau'_k -> eta'_k`` turns any
Giambelli polynomial into the corresponding eta polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .partitions import (
    PartitionError,
    TypedPartition,
    contains,
    enumerate_typed,
    ell_k,
    remove_part,
    split_columns,
)
from .raising import NONE, TAU, TAU_PRIME, TAU_TILDE, SpecialPolynomial, expand_raw
from .symfunc import (
    LinearBasis,
    MPoly,
    SpanError,
    VarConfig,
    _e_y,
    _eta,
    _product,
    _theta,
    expand_P_s_basis,
)

__all__ = [
    "eta_polynomial",
    "eta_hat",
    "eta_tilde",
    "theta_polynomial",
    "S_poly",
    "Q_poly",
    "SQ_specialization",
    "d_coefficients",
    "expand_in_H_basis",
    "special_to_eta",
]

_MEMOS: dict[int, dict] = {}


def _theta_prod(mono: tuple[int, ...], k: int) -> MPoly:
    return _product(mono, lambda r: _theta(r, k), k, _MEMOS.setdefault(k, {}))


def _mono(alpha) -> tuple[int, ...]:
    return tuple(sorted((a for a in alpha if a > 0), reverse=True))


def _capped(f: MPoly, cfg: VarConfig | None) -> MPoly:
    if cfg is None:
        return f
    if f.terms and max(f.degrees()) > cfg.degcap:
        raise PartitionError(f"degree exceeds degcap={cfg.degcap}")
    return MPoly(f.k, f.terms, cfg.degcap)


@lru_cache(maxsize=None)
def _H(parts: tuple[int, ...], k: int, typ: int) -> MPoly:
    K = 2 * k
    scale = Fraction(1, 2 ** ell_k(parts, k))
    out: dict = {}
    if typ == 0:
        raw = expand_raw(parts, K)
        for (alpha, _), (c, _) in raw.items():
            m = _mono(alpha)
            out[(m, NONE)] = out.get((m, NONE), 0) + c * scale
    else:
        d = ell_k(parts, k) + 1
        flag = TAU if typ == 1 else TAU_PRIME
        raw = expand_raw(parts, K, track_row=d)
        for (alpha, touched), (c, _) in raw.items():
            if touched:
                key = (_mono(alpha), NONE)
                out[key] = out.get(key, 0) + c * scale / 2
            else:
                key = (_mono(alpha[: d - 1] + alpha[d:]), flag)
                out[key] = out.get(key, 0) + c * scale
    acc = MPoly.zero(k)
    for (mono, flag), c in out.items():
        if not c:
            continue
        term = _theta_prod(mono, k)
        if flag == TAU:
            term = term * _eta(k, k, False)
        elif flag == TAU_PRIME:
            term = term * _eta(k, k, True)
        acc = acc + term.scale(c)
    return acc


def eta_polynomial(lam: TypedPartition, cfg: VarConfig | None = None) -> MPoly:
    """``H_lam = 2^{-ell_k} R^lam * theta_lam`` with the star rule."""
    return _capped(_H(lam.parts, lam.k, lam.type), cfg)


@lru_cache(maxsize=None)
def _Hhat(parts, k) -> MPoly:
    return _raise(parts, k, 2 * k).scale(Fraction(1, 2 ** ell_k(parts, k)))


def _raise(parts, k, K) -> MPoly:
    raw = expand_raw(parts, K)
    acc: dict = {}
    for (alpha, _), (c, _) in raw.items():
        m = _mono(alpha)
        acc[m] = acc.get(m, 0) + c
    out = MPoly.zero(k)
    for m, c in acc.items():
        if c:
            out = out + _theta_prod(m, k).scale(c)
    return out


def eta_hat(lam, cfg: VarConfig | None = None) -> MPoly:
    """``H^_lam = 2^{-ell_k} R^lam theta_lam`` (sum of both types)."""
    parts = lam.parts if hasattr(lam, "parts") else tuple(lam)
    return _capped(_Hhat(parts, lam.k), cfg)


@lru_cache(maxsize=None)
def _Theta(parts, k) -> MPoly:
    return _raise(parts, k, 2 * k + 1)


def theta_polynomial(lam, cfg: VarConfig | None = None) -> MPoly:
    """``Theta_lam = R~^lam theta_lam`` (denominators for ``K = 2k + 1``)."""
    parts = lam.parts if hasattr(lam, "parts") else tuple(lam)
    return _capped(_Theta(parts, lam.k), cfg)


def eta_tilde(lam, cfg: VarConfig | None = None) -> MPoly:
    """``H~_lam = 2^{-ell_k} e_k(y) Theta_{lam-k}``; zero without a part ``k``."""
    parts = lam.parts if hasattr(lam, "parts") else tuple(lam)
    k = lam.k
    if k not in parts:
        return MPoly.zero(k)
    rest = remove_part(parts, k)
    out = (_e_y(k, k) * _Theta(rest, k)).scale(Fraction(1, 2 ** ell_k(parts, k)))
    return _capped(out, cfg)


# ---------------------------------------------------------------------------
# S and Q specializations


def S_poly(parts: tuple[int, ...], k: int) -> MPoly:
    """``prod_{i<j} (1 - R_ij) theta_lam``."""
    return _apply(parts, k, "none")


def Q_poly(parts: tuple[int, ...], k: int) -> MPoly:
    """``prod_{i<j} (1 - R_ij)/(1 + R_ij) theta_lam``."""
    return _apply(parts, k, "all")


def _apply(parts, k, which):
    ell = len(parts)
    den = () if which == "none" else [(i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1)]
    raw = expand_raw(tuple(parts), 0, pairs=den)
    acc: dict = {}
    for (alpha, _), (c, _) in raw.items():
        m = _mono(alpha)
        acc[m] = acc.get(m, 0) + c
    out = MPoly.zero(k)
    for m, c in acc.items():
        if c:
            out = out + _theta_prod(m, k).scale(c)
    return out


def SQ_specialization(lam: TypedPartition, cfg: VarConfig | None = None) -> tuple[MPoly | None, str]:
    """Closed form of ``H_lam`` through ``S`` or ``Q`` polynomials.

    Returns ``(polynomial, case)`` with case ``S`` when
    ``lam_i + lam_j < 2k + j - i`` for all ``i < j``, ``Q`` when
    ``lam_i + lam_j >= 2k + j - i`` for all ``i < j``, and ``(None, 'mixed')``
    otherwise.
    """
    parts, k, t = lam.parts, lam.k, lam.type
    ell = len(parts)
    pairs = [(i, j) for i in range(ell) for j in range(i + 1, ell)]
    ek = _e_y(k, k)
    sign = 1 if t == 1 else -1
    if all(parts[i] + parts[j] < 2 * k + j - i for i, j in pairs):
        S = S_poly(parts, k)
        if t in (1, 2):
            out = (S + ek * S_poly(remove_part(parts, k), k).scale(sign)).scale(Fraction(1, 2))
        elif parts and parts[0] > k:
            out = S.scale(Fraction(1, 2))
        else:
            out = S
        return _capped(out, cfg), "S"
    if all(parts[i] + parts[j] >= 2 * k + j - i for i, j in pairs):
        Q = Q_poly(parts, k)
        s = Fraction(1, 2 ** ell)
        if t in (1, 2):
            out = (Q + ek * Q_poly(remove_part(parts, k), k).scale(sign)).scale(s)
        elif parts[-1] > k:
            out = Q.scale(s)
        else:
            out = Q.scale(2 * s)
        return _capped(out, cfg), "Q"
    return None, "mixed"


# ---------------------------------------------------------------------------
# coefficient extraction


def d_coefficients(lam: TypedPartition, cfg: VarConfig | None = None) -> dict:
    """``d_{mu nu}`` with ``H_lam = sum d_{mu nu} P_mu(x) s_{nu'}(y)``.

    Raises :class:`SpanError` if a coefficient is negative or not an integer.
    """
    coeffs = expand_P_s_basis(eta_polynomial(lam, cfg))
    for key, c in coeffs.items():
        if c < 0 or c.denominator != 1:
            raise SpanError(f"coefficient {c} at {key} is not a nonnegative integer")
    return {key: int(c) for key, c in coeffs.items()}


def support_in_lambda2(lam: TypedPartition, coeffs: dict) -> bool:
    """Whether every ``nu`` in the support is contained in ``lam^2``."""
    _, lam2 = split_columns(lam.parts, lam.k)
    return all(contains(lam2, nu) for (_, nu) in coeffs)


@lru_cache(maxsize=None)
def _H_basis(k: int, degree: int) -> LinearBasis:
    basis = LinearBasis()
    for lam in enumerate_typed(k, size=degree):
        basis.add(lam.key, _H(lam.parts, k, lam.type).terms)
    return basis


def expand_in_H_basis(f: MPoly) -> dict[tuple[tuple[int, ...], int], Fraction]:
    """Coefficients of ``f`` on the eta basis, keyed by ``(parts, type)``."""
    k = f.k
    by_deg: dict[int, dict] = {}
    for key, c in f.terms.items():
        by_deg.setdefault(sum(key[0]) + sum(key[1]), {})[key] = c
    out: dict = {}
    for d, vec in sorted(by_deg.items()):
        out.update(_H_basis(k, d).express(vec))
    return dict(sorted(out.items()))


def special_to_eta(poly: SpecialPolynomial) -> MPoly:
    """Substitute ``c_p -> theta_p``, ``tau_k -> eta_k``, ``tau'_k -> eta'_k``,
    ``tau_k - tau'_k -> e_k(y)``."""
    k = poly.k
    out = MPoly.zero(k)
    for (cs, flag), c in poly.terms.items():
        term = _theta_prod(cs, k)
        if flag == TAU:
            term = term * _eta(k, k, False)
        elif flag == TAU_PRIME:
            term = term * _eta(k, k, True)
        elif flag == TAU_TILDE:
            term = term * _e_y(k, k)
        out = out + term.scale(c)
    return out
