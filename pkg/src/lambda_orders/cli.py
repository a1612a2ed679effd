"""Command-line front end: ``lambda-orders {analyze,maximal-order,demo,selftest}``."""
from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import InvalidInput

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_NO = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _dump(doc):
    return json.dumps(doc, sort_keys=True)


def _read_json(path):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _InputError(f"malformed JSON in {path}: {exc}") from exc


def _analyze(args):
    from .factorization import FrobActionPresentation, check_factors
    from .mset import minimal_level

    pres = FrobActionPresentation.from_json(_read_json(args.file))
    verdict = check_factors(pres)
    if not verdict.factors:
        print(_dump(verdict.to_json()))
        return EXIT_NO
    r, reduced = minimal_level(verdict.mset)
    print(_dump({"factors": True, "r": r, "r_bound": verdict.r, "mset": reduced.to_json()}))
    return EXIT_OK


def _order_report(S):
    from .algebra import component_fields
    from .lattice import index
    from .mset import regular_mset
    from .orders import group_ring_power_basis, integral_closure, maximal_order, verify_order

    M = maximal_order(S)
    doc = {
        "level": S.level,
        "dimension": S.size,
        "lattice": M.lattice.to_json(),
        "integral_closure_index": str(index(M.lattice, integral_closure(M.algebra))),
        "components": [
            {"orbit": list(orbit), "conductor": c, "degree": k}
            for orbit, c, k in component_fields(S)
        ],
        "verification": verify_order(M),
    }
    if S == regular_mset(S.level):
        _, Z, _ = group_ring_power_basis(S.level, M.algebra)
        doc["equals_group_ring"] = M.lattice == Z
    return M, doc


def _maximal_order(args):
    from .mset import MSet

    S = MSet.from_json(_read_json(args.file))
    _, doc = _order_report(S)
    print(_dump(doc))
    return EXIT_OK if doc["verification"]["ok"] else EXIT_INTERNAL


def _demo_theorem_b(args):
    from .mset import regular_mset

    r = args.r if args.r is not None else 8
    if r < 1:
        raise _InputError("--r must be positive")
    _, doc = _order_report(regular_mset(r))
    ok = doc["equals_group_ring"] and doc["verification"]["ok"]
    print(f"maximal order of regular({r}): rank {doc['dimension']}, "
          f"index over integral closure {doc['integral_closure_index']}")
    print(f"maximal order equals Z[mu_{r}]: {'OK' if ok else 'FAIL'}")
    print(_dump(doc))
    return EXIT_OK if ok else EXIT_INTERNAL


def _demo_group_ring(args):
    from sympy import isprime

    from .lattice import index
    from .orders import character_mset, group_ring_lattice, maximal_order

    p = args.p if args.p is not None else 2
    if not isprime(p):
        raise _InputError("--p must be prime")
    K, G, x = group_ring_lattice(p)
    M = maximal_order(character_mset(p), K)
    psi_ok = K.psi(p, x) == K.scale(p, K.one)
    sq_ok = K.mul(x, x) == K.scale(p, x)
    in_m, in_g = M.contains(x), G.contains(x)
    idx = index(G, M.lattice)
    print(f"V = (Z/{p})^2, x = (1/{p}) sum of the group elements")
    print(f"psi_{p}(x) = {p}: {psi_ok}")
    print(f"x^2 = {p}x: {sq_ok}")
    print(f"x in maximal order: {in_m}; x in Z[V]: {in_g}")
    print(f"index [maximal order : Z[V]] = {idx} (divisible by {p}: {idx % p == 0})")
    ok = psi_ok and sq_ok and in_m and not in_g and idx % p == 0
    print(_dump({
        "p": p, "psi_p_x_equals_p": psi_ok, "x_squared_equals_px": sq_ok,
        "x_in_maximal_order": in_m, "x_in_group_ring": in_g, "index": str(idx),
        "x": [str(c) for c in x], "maximal_order": M.lattice.to_json(),
        "group_ring": G.to_json(), "ok": ok,
    }))
    return EXIT_OK if ok else EXIT_INTERNAL


def _demo_counterexample(args):
    from .corpus import swap_presentation
    from .factorization import check_factors

    pres = swap_presentation()
    verdict = check_factors(pres)
    w = verdict.witness
    print("presentation: two points, trivial Galois action, Frobenius at 2 swaps them")
    print(_dump(pres.to_json()))
    if w is None:
        print("unexpected: the presentation factors")
        return EXIT_INTERNAL
    print(f"failing clause: {w.clause} at d={w.d}, p={w.p}, conductor {w.c_d}, point {w.point}")
    print(_dump(verdict.to_json()))
    return EXIT_OK


DEMOS = {
    "theorem-b": _demo_theorem_b,
    "group-ring": _demo_group_ring,
    "counterexample": _demo_counterexample,
}


def _demo(args):
    if args.name not in DEMOS:
        raise _InputError(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}")
    return DEMOS[args.name](args)


def _selftest(args):
    from .acceptance import run_all

    start = time.perf_counter()
    results = run_all(quick=args.quick)
    for res in results:
        print(res.line())
    failed = [res for res in results if not res.passed]
    elapsed = time.perf_counter() - start
    print(f"{len(results) - len(failed)}/{len(results)} passed in {elapsed:.1f}s")
    for res in failed:
        print(f"failure in module {res.module}: {res.name}", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_INTERNAL


def build_parser():
    parser = argparse.ArgumentParser(prog="lambda-orders", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="decide whether a presentation factors through some Z/r")
    a.add_argument("file", help="presentation JSON, or - for stdin")
    a.set_defaults(func=_analyze)
    m = sub.add_parser("maximal-order", help="maximal order of the algebra of a Z/r-set")
    m.add_argument("file", help="Z/r-set JSON, or - for stdin")
    m.set_defaults(func=_maximal_order)
    d = sub.add_parser("demo", help="worked examples")
    d.add_argument("name", help=", ".join(DEMOS))
    d.add_argument("--r", type=int)
    d.add_argument("--p", type=int)
    d.set_defaults(func=_demo)
    s = sub.add_parser("selftest", help="run the acceptance checks")
    s.add_argument("--quick", action="store_true")
    s.set_defaults(func=_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (_InputError, InvalidInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
