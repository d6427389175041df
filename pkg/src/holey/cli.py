"""Command line interface.

Exit codes: 0 success, 2 not admissible or outside the covered range,
3 search budget exhausted, 4 certificate verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .certify import (
    Certificate,
    make_certificate,
    read_certificate,
    verify,
    write_certificate,
)
from .errors import (
    HoleyError,
    InvalidInputSystem,
    NotAdmissible,
    OutOfCoveredRange,
    ParseError,
    ResourceExhausted,
)
from .oracles import SolverConfig
from .pipeline import admissible, construct, embed_system, nu, search_small


def _config(args) -> SolverConfig:
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = int(os.environ.get("HOLEY_SEED", "0"))
    budget = getattr(args, "budget", None)
    if budget is None:
        budget = float(os.environ.get("HOLEY_BUDGET", "30"))
    return SolverConfig(seed=seed, time_budget=budget)


def _emit(cert: Certificate, out: Optional[str]):
    if out:
        write_certificate(cert, out)
        print(f"wrote {out} ({len(cert.cycles)} cycles)")
    else:
        payload = {
            "schema": 1,
            "m": cert.m,
            "u": cert.u,
            "v": cert.v,
            "hole": list(cert.hole),
            "cycles": [list(c) for c in cert.cycles],
        }
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _cmd_check(args) -> int:
    rep = admissible(args.m, args.u, args.v)
    for name in ("n1", "n2", "n3", "n4"):
        print(f"{name}: {'ok' if getattr(rep, name) else 'FAIL'}")
    print(f"admissible: {rep.admissible}")
    return 0 if rep.admissible else 2


def _cmd_nu(args) -> int:
    print(nu(args.m, args.u))
    return 0


def _cmd_construct(args) -> int:
    cert = construct(args.m, args.u, args.v, _config(args))
    _emit(cert, args.output)
    return 0


def _cmd_verify(args) -> int:
    cert = read_certificate(args.file)
    rep = verify(cert)
    if rep.ok:
        print(f"ok: {len(cert.cycles)} {cert.m}-cycles tile "
              f"K_{cert.v}-K_{cert.u}")
        return 0
    for msg in rep.failures:
        print(f"FAIL: {msg}")
    return 4


def _cmd_embed(args) -> int:
    system = read_certificate(args.system)
    cert = embed_system(system, args.order, _config(args))
    _emit(cert, args.output)
    return 0


def _cmd_search(args) -> int:
    cycles = search_small(args.m, args.u, args.v, _config(args))
    cert = make_certificate(args.m, args.u, args.v, cycles)
    rep = verify(cert)
    if not rep.ok:
        for msg in rep.failures:
            print(f"FAIL: {msg}")
        return 4
    _emit(cert, args.output)
    return 0


def _cmd_selftest(args) -> int:
    cfg = _config(args)
    cases = [(9, 9, 19), (9, 5, 11), (3, 13, 27), (11, 11, 23), (7, 1, 21)]
    for m, u, v in cases:
        cert = construct(m, u, v, cfg)
        rep = verify(cert)
        status = "ok" if rep.ok else "FAIL"
        print(f"construct({m},{u},{v}): {status}, {len(cert.cycles)} cycles")
        if not rep.ok:
            return 4
    assert nu(9, 5) == 11 and nu(11, 13) == 21
    print("nu spot checks: ok")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="holey",
        description="m-cycle decompositions of complete graphs with holes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="report the admissibility conditions")
    for name in ("m", "u", "v"):
        p.add_argument(name, type=int)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("nu", help="smallest admissible order above u")
    p.add_argument("m", type=int)
    p.add_argument("u", type=int)
    p.set_defaults(func=_cmd_nu)

    def add_solver_opts(p, with_target=True):
        if with_target:
            for name in ("m", "u", "v"):
                p.add_argument(name, type=int)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--budget", type=float, default=None,
                       help="time budget in seconds")
        p.add_argument("-o", "--output", default=None,
                       help="write the certificate to this file")

    p = sub.add_parser("construct", help="build a verified decomposition")
    add_solver_opts(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="check a certificate file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("embed", help="embed a cycle system in a larger order")
    p.add_argument("--system", required=True, help="certificate of the system")
    p.add_argument("--order", required=True, type=int,
                   help="target order of the embedding")
    add_solver_opts(p, with_target=False)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("search", help="randomized switching search only")
    add_solver_opts(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("selftest", help="run a small end-to-end battery")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=float, default=None)
    p.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NotAdmissible, OutOfCoveredRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, InvalidInputSystem) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except HoleyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
