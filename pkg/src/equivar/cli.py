"""Command line front end.

Subcommands: dim, hom, ext, tor, kclass, cas, verify.  Output is UTF-8 plain
text (``--format table``) or JSON (``--format json``); identical invocations
produce byte-identical JSON payloads (the wall-clock field lives outside the
``result`` object).  Exit codes: 0 success, 1 failed verification, 2 bad
parameters, 3 an internal exact check failed.

``hom --src A --dst B`` computes maps *from* A *to* B: maps between the Q
families exist exactly when the destination tuple size is at most the
source's, one basis map per arrangement.

The dimension guard refuses jobs whose modules would exceed ``--max-dim``
basis elements (default 50000, overridable via EQUIVAR_MAX_DIM).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from math import factorial

DEFAULT_MAX_DIM = 50_000
DEFAULT_CAP_N = 5


class ParameterError(Exception):
    """Invalid or out-of-bounds request; exits with status 2."""


def _projected_dim(kind: str, s: int, n: int, N: int) -> int:
    if n > N:
        raise ParameterError(f"tuple size n={n} exceeds the truncation N={N}")
    tuples = factorial(N) // factorial(N - n)
    free = (s + 1) ** (N if kind == "P" else N - n)
    return free * tuples


def _check_bounds(args, requests) -> None:
    """requests: list of (kind, s, n, N) the command intends to build; the
    guard also accounts for the stabilization level N+1 when asked."""
    cap = args.cap_N
    max_dim = args.max_dim
    for kind, s, n, N in requests:
        if s < 0 or n < 0 or N < 0:
            raise ParameterError("parameters must be nonnegative")
        if N > cap:
            raise ParameterError(f"N={N} exceeds the cap {cap} (raise --cap-N)")
        d = _projected_dim(kind, s, n, N)
        if d > max_dim:
            raise ParameterError(
                f"a {kind} module of dimension {d} exceeds --max-dim {max_dim}")


def _parse_family(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise ParameterError(f"expected KIND,s,n (e.g. Q,1,1), got {text!r}")
    kind = parts[0].strip().upper()
    if kind not in ("P", "Q"):
        raise ParameterError(f"kind must be P or Q, got {parts[0]!r}")
    try:
        s, n = int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ParameterError(str(exc)) from None
    return kind, s, n


def _parse_partition(text: str):
    text = text.strip()
    if not text or text == "0":
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise ParameterError(f"bad partition {text!r}") from None
    if any(p < 1 for p in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ParameterError(f"parts must be weakly decreasing and positive: {text!r}")
    return parts


def _class_function_table(chi) -> dict:
    return {",".join(map(str, mu)) or "()": str(chi.values[mu]) for mu in chi.values}


# --- subcommand implementations ------------------------------------------------

def cmd_dim(args) -> dict:
    _check_bounds(args, [(args.kind, args.s, args.n, args.N)])
    from .equivariant import build_P, build_Q, pq_dimension

    builder = build_P if args.kind == "P" else build_Q
    mod = builder(args.s, args.n, args.N)
    closed = pq_dimension(args.kind, args.s, args.n, args.N)
    result = {
        "dim": mod.dim,
        "closed_form": closed,
        "match": mod.dim == closed,
    }
    if args.dump:
        result["module"] = mod.to_json_dict()
    return result


def cmd_hom(args) -> dict:
    src = _parse_family(args.src)
    dst = _parse_family(args.dst)
    if src[0] != "Q":
        raise ParameterError("the source family must be Q-type (determined by one generator)")
    _check_bounds(args, [(dst[0], dst[1], dst[2], args.N),
                         (dst[0], dst[1], dst[2], args.N + 1)])
    from .homcalc import PQFamily, stable_hom

    r = stable_hom(PQFamily(*src), PQFamily(*dst), args.N)
    return {
        "dim_at_N": r.dim_at_N,
        "dim_at_N_plus_1": r.dim_at_N_plus_1,
        "dim_stable": r.dim_stable,
    }


def cmd_ext(args) -> dict:
    from .equivariant import build_P, build_Q
    from .homcalc import ext_stable, ext_truncated

    if args.mode == "stable":
        _check_bounds(args, [("P", args.s, args.n_target, args.N + 1)])
        dims = ext_stable(args.s, args.n_source, args.n_target, args.N, args.max_i)
        return {"mode": "stable", "dims": dims, "degrees": list(range(args.max_i + 1))}
    src = _parse_family(args.src) if args.src else ("Q", args.s, 1)
    dst = _parse_family(args.dst) if args.dst else ("P", args.s, 1)
    _check_bounds(args, [(src[0], src[1], src[2], args.N),
                         (dst[0], dst[1], dst[2], args.N)])
    build = {"P": build_P, "Q": build_Q}
    M = build[src[0]](src[1], src[2], args.N)
    T = build[dst[0]](dst[1], dst[2], args.N)
    dims = ext_truncated(M, T, args.max_i)
    return {"mode": "truncated", "dims": dims, "degrees": list(range(args.max_i + 1))}


def cmd_tor(args) -> dict:
    if args.s < 1:
        raise ParameterError("tor needs s >= 1")
    if args.r < 1:
        raise ParameterError("tor degrees start at 1")
    _check_bounds(args, [("P", args.s, 1, args.N)])
    from .equivariant import build_Q, character_of
    from .homcalc import tor_periodic

    chars = tor_periodic(args.s, args.r, args.N)
    chi = chars[args.r - 1]
    chi_q = character_of(build_Q(args.s, 1, args.N))
    return {
        "character": _class_function_table(chi),
        "dim": str(chi.dim()),
        "matches_Q": chi == chi_q,
    }


def cmd_kclass(args) -> dict:
    from .groth import (
        KGenClass,
        char_of_S,
        p_class_in_q_basis,
        q_class_in_p_basis,
        rank_expand,
    )

    lam = _parse_partition(args.lam) if args.lam is not None else None
    if args.op == "char":
        if args.n is None:
            raise ParameterError("char needs --n")
        chi = char_of_S(args.n, args.s)
        return {"values": _class_function_table(chi)}
    if lam is None:
        raise ParameterError(f"{args.op} needs --lambda")
    if args.op == "p2q":
        cls = p_class_in_q_basis(lam, args.s)
    elif args.op == "q2p":
        cls = q_class_in_p_basis(lam, args.s)
    elif args.op == "expand":
        tag = args.kind
        return {"expansion": rank_expand(KGenClass({(tag, args.s, lam): 1})).to_json_dict()}
    else:
        raise ParameterError(f"unknown kclass op {args.op!r}")
    return {
        "classes": {
            f"{kind}({','.join(map(str, mu)) or '()'})": [c.numerator, c.denominator]
            for (kind, r, mu), c in cls.coeffs.items()
        }
    }


def cmd_cas(args) -> dict:
    from .cas_cat import compare_with_P_homs, hom_dimension, injective_I

    if args.op == "hom":
        return {"dim": hom_dimension(args.m, args.n, args.s)}
    if args.op == "injective":
        info = injective_I(args.s, args.n, args.m)
        return {"dim": info.dim, "socle_dim": info.socle_dim}
    if args.op == "compare":
        N = args.N if args.N is not None else args.m + args.n + 1
        _check_bounds(args, [("P", args.s, max(args.m, args.n), N + 1)])
        return {"N": N, "match": compare_with_P_homs(args.m, args.n, args.s, N)}
    raise ParameterError(f"unknown cas op {args.op!r}")


def cmd_verify(args) -> tuple:
    from .verify import SUITE_NAMES, run_suites

    names = SUITE_NAMES if args.suite == "all" else [args.suite]
    try:
        checks = run_suites(names, max_N=args.max_N, jobs=args.jobs)
    except KeyError as exc:
        raise ParameterError(exc.args[0]) from None
    failures = [c for c in checks if not c["ok"]]
    for c in checks:
        line = dict(c)
        if args.format == "json":
            print(json.dumps(line, sort_keys=True, default=str))
        else:
            status = "pass" if c["ok"] else "FAIL"
            print(f"[{status}] {c['suite']}: {c['name']} ({c['runtime_ms']} ms)")
    summary = {
        "suites": names,
        "checks": len(checks),
        "failures": len(failures),
        "max_N": args.max_N,
    }
    return summary, (0 if not failures else 1)


# --- wiring ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equivar",
        description="Exact computations with equivariant modules over truncated polynomial rings.",
    )
    parser.add_argument("--format", choices=["json", "table"], default="table")
    parser.add_argument("--max-dim", type=int,
                        default=int(os.environ.get("EQUIVAR_MAX_DIM", DEFAULT_MAX_DIM)),
                        help="refuse jobs whose modules exceed this many basis elements")
    parser.add_argument("--cap-N", type=int, default=DEFAULT_CAP_N, dest="cap_N",
                        help="largest truncation level a command may request")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="dimension of a P or Q family module")
    p.add_argument("--kind", choices=["P", "Q"], required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--dump", action="store_true", help="include the full module JSON")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("hom", help="stable maps between family modules")
    p.add_argument("--src", required=True, metavar="KIND,s,n")
    p.add_argument("--dst", required=True, metavar="KIND,s,n")
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("ext", help="stable or truncated Ext dimensions")
    p.add_argument("--mode", choices=["stable", "truncated"], default="stable")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n-source", type=int, default=1, dest="n_source")
    p.add_argument("--n-target", type=int, default=1, dest="n_target")
    p.add_argument("--src", default=None, metavar="KIND,s,n")
    p.add_argument("--dst", default=None, metavar="KIND,s,n")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--max-i", type=int, default=3, dest="max_i")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("tor", help="character of a periodic-complex homology degree")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_tor)

    p = sub.add_parser("kclass", help="class-group computations")
    p.add_argument("--op", choices=["p2q", "q2p", "expand", "char"], required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default=None,
                   help="comma-separated partition, e.g. 2,1")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--kind", choices=["P", "Q"], default="P")
    p.set_defaults(func=cmd_kclass)

    p = sub.add_parser("cas", help="combinatorial category computations")
    p.add_argument("--op", choices=["hom", "injective", "compare"], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=cmd_cas)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--max-N", type=int, default=5, dest="max_N")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    return parser


def _emit(args, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        op = payload.get("operation", "")
        print(f"== {op} {json.dumps(payload.get('parameters', {}), sort_keys=True, default=str)}")
        for key, value in payload.get("result", {}).items():
            print(f"{key}: {json.dumps(value, sort_keys=True, default=str)}")
        print(f"runtime_ms: {payload.get('runtime_ms')}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {
        k: v for k, v in vars(args).items()
        if k not in ("func", "command", "format", "max_dim", "cap_N") and v is not None
    }
    t0 = time.time()
    try:
        outcome = args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, KeyError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if isinstance(outcome, tuple):
        result, code = outcome
    else:
        result, code = outcome, 0
    payload = {
        "operation": args.command,
        "parameters": params,
        "result": result,
        "runtime_ms": int((time.time() - t0) * 1000),
    }
    _emit(args, payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
