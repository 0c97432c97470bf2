"""Command-line interface: ``ogschubert <verb> [options]``.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 failed verification.
The default output format comes from ``OGSCHUBERT_FORMAT`` (``text`` or
``json``) and can be overridden with ``--format``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .eta import (
    SQ_specialization,
    d_coefficients,
    eta_hat,
    eta_polynomial,
    eta_tilde,
    theta_polynomial,
)
from .indexsets import (
    IndexSet,
    from_partition,
    poset_edges_text,
    poset_json,
    preceq,
    to_partition,
    type_of,
)
from .partitions import GrassParams, KStrictPartition, PartitionError, TypedPartition, typed
from .pieri import chern_pieri, k2_quantum_pieri, quantum_chern_pieri, terms_to_json
from .raising import giambelli_c, giambelli_special, giambelli_tilde, giambelli_tilde_diamond
from .ring import RingError, RingSpec, SchubertExpr, multiply
from .symfunc import VarConfig
from .verify import SUITES, quantum_giambelli_single, run_suite
from .weyl import (
    SignedPermutation,
    billey_haiman_D,
    flattened_words,
    kl_tableaux,
    partition_perm,
    perm_partition,
    reduced_words,
    stanley_coefficients,
)

FORMAT_ENV = "OGSCHUBERT_FORMAT"

EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_FAILED = 4


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------------------------
# shared argument helpers


def _typed(args, parts=None, typ=None) -> TypedPartition:
    parts = args.lam if parts is None else parts
    typ = args.type if typ is None else typ
    return typed(parts, args.k, typ)


def _ring(args, mode: str) -> RingSpec:
    if mode != "quantum" and args.n is None:
        return RingSpec(args.k, None, "stable", args.parity)
    if args.n is None:
        raise UsageError("quantum rings need --n")
    return RingSpec(args.k, args.n, mode, args.parity)


def _add_partition(p: argparse.ArgumentParser, required: bool = True):
    p.add_argument("--lambda", dest="lam", type=_ints, required=required,
                   help="parts, e.g. 3,2,2")
    p.add_argument("--type", type=int, choices=(0, 1, 2), default=None,
                   help="type of the partition (defaults to 0 or 1)")


def _add_space(p: argparse.ArgumentParser, n_required: bool = False):
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=n_required, default=None)
    p.add_argument("--parity", choices=("even", "odd"), default="even")


# ---------------------------------------------------------------------------
# giambelli


def cmd_giambelli(args):
    if args.form == "c":
        K = 2 * args.k + (1 if args.parity == "odd" else 0)
        lam = KStrictPartition(args.lam, args.k)
        poly = giambelli_c(lam, K)
    else:
        lam = _typed(args)
        if args.form == "special":
            poly = giambelli_special(lam)
        elif args.form == "tilde":
            poly = giambelli_tilde(lam)
        else:
            poly = giambelli_tilde_diamond(lam)
    if args.n is not None:
        params = GrassParams.even(args.k, args.n) if args.parity == "even" else GrassParams.odd(args.k, args.n)
        if not params.fits(lam.parts):
            raise PartitionError(f"{lam.parts} does not fit in {params}")
    if args.format == "json":
        return _dump({"k": args.k, "lambda": list(lam.parts), "form": args.form,
                      "poly": poly.to_json()})
    return poly.to_c_string() if args.form == "c" else poly.to_tau_string()


# ---------------------------------------------------------------------------
# pieri


def _pieri_text(terms) -> str:
    if not terms:
        return "0"
    lines = []
    for t in terms:
        q = "".join(f" q{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(t.q) if e)
        label = t.kind if t.type is None else f"type {t.type}"
        lines.append(f"{t.coeff} [{','.join(map(str, t.mu))}] {label}{q}")
    return "\n".join(lines)


def cmd_pieri(args):
    K = 2 * args.k + (1 if args.parity == "odd" else 0)
    if args.mode == "typed":
        lam = _typed(args)
    else:
        lam = KStrictPartition(args.lam, args.k)
    rows = cols = None
    if args.n is not None:
        params = GrassParams.even(args.k, args.n) if args.parity == "even" else GrassParams.odd(args.k, args.n)
        rows, cols = params.m, params.width
    terms = chern_pieri(lam, args.p, K, args.mode, max_rows=rows, max_cols=cols)
    if args.format == "json":
        return _dump(terms_to_json(terms))
    return _pieri_text(terms)


def cmd_qpieri(args):
    if args.mode not in ("hat", "tilde"):
        raise UsageError("qpieri supports --mode hat or tilde")
    params = GrassParams.even(args.k, args.n) if args.parity == "even" else GrassParams.odd(args.k, args.n)
    if params.K == 2:
        terms = k2_quantum_pieri(args.lam, args.p, args.n, args.mode)
    else:
        terms = quantum_chern_pieri(args.lam, args.p, params, args.mode)
    if args.format == "json":
        return _dump(terms_to_json(terms))
    return _pieri_text(terms)


# ---------------------------------------------------------------------------
# multiply


def cmd_multiply(args, mode: str):
    ring = _ring(args, mode)
    a = SchubertExpr.basis_element(ring, args.lam, args.type)
    b = SchubertExpr.basis_element(ring, args.mu, args.mu_type)
    prod = multiply(a, b)
    if args.format == "json":
        return _dump(prod.to_json())
    return str(prod)


# ---------------------------------------------------------------------------
# eta


def cmd_eta(args):
    cfg = VarConfig.for_degree(args.degcap, args.k) if args.degcap is not None else None
    if args.what == "d":
        coeffs = d_coefficients(_typed(args), cfg)
        items = sorted(coeffs.items())
        if args.format == "json":
            return _dump([{"mu": list(mu), "nu": list(nu), "d": d} for (mu, nu), d in items])
        if not items:
            return "0"
        return "\n".join(f"{d} P[{','.join(map(str, mu))}] s'[{','.join(map(str, nu))}]"
                         for (mu, nu), d in items)
    case = None
    if args.what == "H":
        poly = eta_polynomial(_typed(args), cfg)
    elif args.what == "Hhat":
        poly = eta_hat(KStrictPartition(args.lam, args.k), cfg)
    elif args.what == "Htilde":
        poly = eta_tilde(KStrictPartition(args.lam, args.k), cfg)
    elif args.what == "Theta":
        poly = theta_polynomial(KStrictPartition(args.lam, args.k), cfg)
    else:
        poly, case = SQ_specialization(_typed(args), cfg)
        if poly is None:
            raise PartitionError(f"{args.lam} is mixed: neither the S nor the Q form applies")
    if args.format == "json":
        out = {"k": args.k, "lambda": list(args.lam), "what": args.what, "poly": poly.to_json()}
        if case:
            out["case"] = case
        return _dump(out)
    return (f"[{case}] " if case else "") + str(poly)


# ---------------------------------------------------------------------------
# weyl


def _perm(args) -> SignedPermutation:
    if args.perm:
        return SignedPermutation.parse(args.perm)
    if args.lam is None:
        raise UsageError("give --lambda or --perm")
    return partition_perm(_typed(args), n=args.n)


def cmd_weyl(args):
    action = args.action
    if action == "convert":
        if args.perm:
            lam = perm_partition(SignedPermutation.parse(args.perm), args.k)
            if args.format == "json":
                return _dump(lam.to_json())
            return lam.to_text()
        w = _perm(args)
        if args.format == "json":
            return _dump({"perm": w.to_json(), "length": w.length()})
        return w.to_text()
    w = _perm(args)
    if action == "words":
        words = flattened_words(w, args.max_length) if args.flattened else reduced_words(w, args.max_length)
        if args.format == "json":
            return _dump([list(x) for x in words])
        return "\n".join("".join(map(str, x)) if max(x, default=0) < 10 else " ".join(map(str, x))
                         for x in words)
    if action == "kl-tableaux":
        tabs = kl_tableaux(w, shape=args.shape, max_length=args.max_length)
        if args.format == "json":
            return _dump([t.to_json() for t in tabs])
        return "\n".join(f"{t.to_text()}  m={t.m}" for t in tabs) or "none"
    if action == "stanley":
        coeffs = stanley_coefficients(w, args.max_length)
        if args.format == "json":
            return _dump([{"mu": list(mu), "coef": c} for mu, c in sorted(coeffs.items())])
        return " + ".join(f"{c}*P[{','.join(map(str, mu))}]" for mu, c in sorted(coeffs.items())) or "0"
    if action == "bh":
        k = args.k
        cfg = VarConfig.for_degree(args.degcap, k) if args.degcap is not None else None
        poly = billey_haiman_D(w, cfg, k=k)
        if args.format == "json":
            return _dump({"perm": w.to_json(), "poly": poly.to_json()})
        return str(poly)
    raise UsageError(f"unknown weyl action {action!r}")


# ---------------------------------------------------------------------------
# bruhat


def _params_mN(args) -> GrassParams:
    if args.m is not None and args.N is not None:
        return GrassParams.from_mN(args.m, args.N)
    if args.k is not None and args.n is not None:
        return GrassParams.even(args.k, args.n) if args.parity == "even" else GrassParams.odd(args.k, args.n)
    raise UsageError("give --m and --N, or --k and --n")


def cmd_bruhat(args):
    params = _params_mN(args)
    if args.action == "poset":
        if args.format == "json":
            return poset_json(params)
        return poset_edges_text(params) or "(no covers)"
    if args.action == "type":
        if args.set is not None:
            P = IndexSet(args.set, params)
        else:
            lam = typed(args.lam, params.k, args.type)
            P = from_partition(lam, params)
        lam = to_partition(P)
        data = {"set": P.to_json(), "type": type_of(P), "lambda": list(lam.parts)}
        if args.format == "json":
            return _dump(data)
        return f"{P.to_text()} type {data['type']} lambda ({','.join(map(str, lam.parts))})"
    if args.action == "order":
        if args.set is None or args.other is None:
            raise UsageError("order needs --set Q and --other P")
        Q, P = IndexSet(args.set, params), IndexSet(args.other, params)
        res = preceq(Q, P)
        if args.format == "json":
            return _dump({"Q": Q.to_json(), "P": P.to_json(), "holds": res.holds,
                          "critical": res.critical})
        rel = "<=" if res.holds else "not <="
        crit = f" (critical index {res.critical})" if res.critical is not None else ""
        return f"{Q.to_text()} {rel} {P.to_text()}{crit}"
    raise UsageError(f"unknown bruhat action {args.action!r}")


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args):
    if args.suite == "quantum-giambelli" and (args.k is not None or args.n is not None):
        if args.k is None or args.n is None:
            raise UsageError("restricting quantum-giambelli needs both --k and --n")
        results = [quantum_giambelli_single(args.k, args.n)]
    elif args.suite == "all":
        results = [run_suite(name) for name in SUITES]
    else:
        results = [run_suite(args.suite)]
    ok = all(r.ok for r in results)
    if args.format == "json":
        text = _dump({"ok": ok, "results": [r.to_json() for r in results]})
    else:
        lines = []
        for r in results:
            lines.append(r.line())
            lines.extend(f"  {f}" for f in r.failures[:10])
        text = "\n".join(lines)
    return text, (0 if ok else EXIT_FAILED)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get(FORMAT_ENV, "text")
    if default_format not in ("text", "json"):
        default_format = "text"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=default_format)

    parser = argparse.ArgumentParser(prog="ogschubert",
                                     description="Schubert calculus on orthogonal Grassmannians.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("giambelli", parents=[common], help="Giambelli polynomials")
    _add_space(p)
    _add_partition(p)
    p.add_argument("--form", choices=("special", "c", "tilde", "tilde-diamond"), default="special")

    for name, helptext in (("pieri", "classical Pieri rule"), ("qpieri", "quantum Pieri rule")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        _add_space(p, n_required=(name == "qpieri"))
        _add_partition(p)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--mode", choices=("hat", "typed", "tilde"), default="hat" if name == "qpieri" else "typed")

    for name, helptext in (("multiply", "classical (or stable) product"), ("qmultiply", "quantum product")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        _add_space(p, n_required=(name == "qmultiply"))
        _add_partition(p)
        p.add_argument("--mu", type=_ints, required=True)
        p.add_argument("--mu-type", dest="mu_type", type=int, choices=(0, 1, 2), default=None)

    p = sub.add_parser("eta", parents=[common], help="eta polynomials and their expansions")
    p.add_argument("what", choices=("H", "Hhat", "Htilde", "Theta", "SQ", "d"))
    p.add_argument("--k", type=int, required=True)
    _add_partition(p)
    p.add_argument("--degcap", type=int, default=None)

    p = sub.add_parser("weyl", parents=[common], help="signed permutations and Stanley functions")
    p.add_argument("action", choices=("convert", "words", "kl-tableaux", "stanley", "bh"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="rank of the Weyl group")
    _add_partition(p, required=False)
    p.add_argument("--perm", default=None, help="signed permutation, e.g. '-3 6 7 -5 -2 -1 4 8'")
    p.add_argument("--flattened", action="store_true")
    p.add_argument("--shape", type=_ints, default=None)
    p.add_argument("--max-length", dest="max_length", type=int, default=16)
    p.add_argument("--degcap", type=int, default=None)

    p = sub.add_parser("bruhat", parents=[common], help="index sets and the closure order")
    p.add_argument("action", choices=("type", "order", "poset"))
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--parity", choices=("even", "odd"), default="even")
    p.add_argument("--set", type=_ints, default=None)
    p.add_argument("--other", type=_ints, default=None)
    _add_partition(p, required=False)

    p = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    p.add_argument("suite", choices=tuple(SUITES) + ("all",))
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    return parser


def dispatch(argv: list[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (int(exc.code) if exc.code is not None else 0), ""
    try:
        if args.verb == "giambelli":
            out = cmd_giambelli(args)
        elif args.verb == "pieri":
            out = cmd_pieri(args)
        elif args.verb == "qpieri":
            out = cmd_qpieri(args)
        elif args.verb == "multiply":
            out = cmd_multiply(args, "classical")
        elif args.verb == "qmultiply":
            out = cmd_multiply(args, "quantum")
        elif args.verb == "eta":
            out = cmd_eta(args)
        elif args.verb == "weyl":
            out = cmd_weyl(args)
        elif args.verb == "bruhat":
            out = cmd_bruhat(args)
        else:
            out, code = cmd_verify(args)
            return code, out
    except UsageError as exc:
        print(f"ogschubert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    except (PartitionError, RingError, ArithmeticError) as exc:
        print(f"ogschubert: {exc}", file=sys.stderr)
        return EXIT_DOMAIN, ""
    return 0, out


def main(argv: list[str] | None = None) -> int:
    code, out = dispatch(argv)
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
