"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 a checked identity failed,
3 refused for size.  ``--json`` output is deterministic: sorted keys, exact
integers, and non-integral rationals as strings such as ``"3/2"``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .borel import ManolescuSet, abcd, from_abcd
from .errors import IdentityFailure, InvalidInput, ResourceLimit
from .gcomplex import make_T, tensor_all
from .roots import build_root, delta_tilde, reduce, tau, u_module
from .seifert import DTable, DEFAULT_TABLE, brieskorn_delta, seifert_invariants
from .sums import DEFAULT_COST_LIMIT, connected_sum_chain, connected_sum_invariants
from .verify import run_suite

CHAIN_COST_LIMIT = 12


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def exact(x):
    """JSON-safe exact value: ints stay ints, other rationals become "p/q"."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [exact(v) for v in x]
    return x


def _manolescu_dict(m: ManolescuSet) -> dict:
    return {"alpha": m.alpha, "beta": m.beta, "gamma": m.gamma, "delta": m.delta}


def _flatten(prefix: str, x, out: list):
    if isinstance(x, dict):
        for k in sorted(x):
            _flatten(f"{prefix}.{k}" if prefix else str(k), x[k], out)
    elif isinstance(x, list):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, x))


def _table(args) -> DTable:
    return DTable.from_file(args.d_table) if args.d_table else DEFAULT_TABLE


def _triple_arg(text: str) -> tuple[int, int, int]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInput(f"bad triple {text!r}") from None
    if len(vals) != 3:
        raise InvalidInput(f"need three integers, got {text!r}")
    return vals


def _split_spec(text: str) -> list[str]:
    items = [x.strip() for x in text.split(";") if x.strip()]
    if not items:
        raise InvalidInput("empty summand list")
    return items


# -- commands -----------------------------------------------------------------

def cmd_root(args):
    p, q, r = args.p, args.q, args.r
    expanded = brieskorn_delta(p, q, r)
    red = reduce(expanded)
    root = build_root(red)
    d = args.d
    provenance = "supplied" if d is not None else None
    if d is None:
        hit = _table(args).lookup(p, q, r)
        if hit is not None:
            d, provenance = hit
    module = u_module(root, d)
    dt = delta_tilde(red)
    result = {
        "reduced": {"values": list(red.values), "positions": list(red.positions)},
        "tau": list(tau(red)),
        "vertex_counts": {str(h): c for h, c in sorted(root.vertex_counts().items())},
        "towers": [{"bottom": module.infinite.bottom, "length": None, "multiplicity": 1}]
        + [{"bottom": t.bottom, "length": t.length, "multiplicity": t.multiplicity} for t in module.finite],
        "gradings": "absolute" if module.absolute else "relative",
        "delta_tilde": dt.delta_tilde,
        "projective": dt.projective,
    }
    if args.expanded:
        result["expanded"] = {"values": list(expanded.values), "positions": list(expanded.positions)}
    if args.reduced_only:
        result = {"reduced": result["reduced"]}
    name = f"Sigma({p},{q},{r})"
    return {"p": p, "q": q, "r": r, "d": d}, result, {name: provenance}


def cmd_invariants(args):
    s = seifert_invariants(args.p, args.q, args.r, d=args.d, table=_table(args))
    result = {"d": s.d, "delta_tilde": s.delta_tilde, "mu_bar": s.mu_bar, "projective": s.projective}
    if s.manolescu is not None:
        result.update(_manolescu_dict(s.manolescu))
    return {"p": args.p, "q": args.q, "r": args.r, "d": args.d}, result, {s.name: s.d_provenance}


def cmd_sum(args):
    table = _table(args)
    parts = [seifert_invariants(*_triple_arg(t), table=table) for t in _split_spec(args.spec)]
    result = {}
    if args.method in ("formula", "both"):
        result["formula"] = _manolescu_dict(connected_sum_invariants(parts))
    if args.method in ("chain", "both"):
        result["chain"] = _manolescu_dict(connected_sum_chain(parts, cost_limit=args.cost_limit))
    if args.method == "both":
        if result["formula"] != result["chain"]:
            raise IdentityFailure(f"pipelines disagree: {exact(result)}")
        result["agree"] = True
    provenance = {p.name: p.d_provenance for p in parts}
    return {"spec": args.spec, "method": args.method}, result, provenance


def _tower_arg(text: str) -> tuple[int, int]:
    try:
        D, t = (int(x) for x in text.split(":"))
    except ValueError:
        raise InvalidInput(f"bad tower {text!r}; expected D:t") from None
    if D < 0 or t < 0:
        raise InvalidInput(f"tower {text!r} has a negative entry")
    return D, t


def cmd_chain(args):
    towers = [_tower_arg(x) for x in _split_spec(args.spec)]
    cost = sum(2 * D + t for D, t in towers)
    if cost > args.cost_limit:
        raise ResourceLimit(f"total 2D+t = {cost} exceeds the cost limit {args.cost_limit}")
    try:
        n = Fraction(args.n)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"bad n {args.n!r}") from None
    z = tensor_all([make_T(D, t) for D, t in towers])
    v = abcd(z)
    result = {"a": v.a, "b": v.b, "c": v.c, "d": v.d}
    result.update(_manolescu_dict(from_abcd(v, args.m, n)))
    return {"spec": args.spec, "m": args.m, "n": n}, result, {}


def cmd_verify(args):
    results = run_suite(args.suite, _table(args) if args.d_table else None)
    rows = [{"check": r.key, "statement": r.statement, "ok": r.ok, "detail": r.detail} for r in results]
    failed = [r.key for r in results if not r.ok]
    out = {"checks": rows, "passed": not failed}
    if failed:
        raise _VerifyFailed(out)
    return {"suite": args.suite}, out, {}


class _VerifyFailed(IdentityFailure):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


# -- output -------------------------------------------------------------------

def record(command: str, inputs: dict, result: dict, provenance: dict) -> dict:
    return exact({"command": command, "inputs": inputs, "result": result,
                  "dtable_provenance": provenance, "version": __version__})


def render(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, sort_keys=True, indent=2) + "\n"
    rows: list = []
    _flatten("", rec, rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["field", "value"])
        for k, v in rows:
            w.writerow([k, json.dumps(v) if not isinstance(v, str) else v])
        return buf.getvalue()
    lines = []
    if rec["command"] == "verify":
        for c in rec["result"]["checks"]:
            lines.append(f"{'PASS' if c['ok'] else 'FAIL'} [{c['check']}] {c['statement']} ({c['detail']})")
        return "\n".join(lines) + "\n"
    for k, v in rows:
        if k.startswith("result."):
            lines.append(f"{k[7:]}: {v}")
    for k, v in rows:
        if k.startswith("dtable_provenance.") and v is not None:
            lines.append(f"d of {k[18:]}: {v}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="emit a JSON record")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv", help="emit field,value CSV")
    common.add_argument("--d-table", metavar="FILE", help="JSON array of {p, q, r, d} overriding built-in d values")

    parser = _Parser(prog="pin2inv", description="Pin(2) invariants of Brieskorn spheres and their sums.")
    parser.add_argument("--version", action="version", version=f"pin2inv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("root", parents=[common], help="delta sequence, graded root and U-module")
    for name in ("p", "q", "r"):
        p.add_argument(name, type=int)
    p.add_argument("--d", type=int, help="d-invariant for absolute gradings")
    p.add_argument("--expanded", action="store_true", help="also print the expanded sequence")
    p.add_argument("--reduced", dest="reduced_only", action="store_true", help="print only the reduced sequence")
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("invariants", parents=[common], help="alpha, beta, gamma, delta of one sphere")
    for name in ("p", "q", "r"):
        p.add_argument(name, type=int)
    p.add_argument("--d", type=int, help="d-invariant; looked up in the table when omitted")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("sum", parents=[common], help="invariants of a connected sum")
    p.add_argument("spec", help='summands as "p,q,r;p,q,r;..."')
    p.add_argument("--method", choices=("formula", "chain", "both"), default="formula")
    p.add_argument("--cost-limit", type=int, default=DEFAULT_COST_LIMIT,
                   help="largest total delta-tilde for the chain method")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("chain", parents=[common], help="Borel invariants of a tensor of towers T_D(t)")
    p.add_argument("spec", help='towers as "D:t;D:t;..."')
    p.add_argument("m", type=int, help="copies of R~ to desuspend")
    p.add_argument("n", help="copies of H to desuspend (rational)")
    p.add_argument("--cost-limit", type=int, default=CHAIN_COST_LIMIT, help="largest total 2D+t")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("verify", parents=[common], help="run the identity checks")
    p.add_argument("--suite", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors, --help, --version
        return exc.code if isinstance(exc.code, int) else 1
    fmt = args.fmt or "text"
    try:
        inputs, result, provenance = args.func(args)
        code = 0
    except _VerifyFailed as exc:
        inputs, result, provenance, code = {"suite": args.suite}, exc.payload, {}, 2
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except IdentityFailure as exc:
        print(f"identity failure: {exc}", file=sys.stderr)
        return 2
    except ResourceLimit as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(render(record(args.command, inputs, result, provenance), fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
