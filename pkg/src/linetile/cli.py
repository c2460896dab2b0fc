"""Command-line front end: ``python -m linetile <command> ...``.

Exit codes: 0 success / agreement, 1 channel disagreement or table
mismatch, 2 bad input or an unavailable channel, 3 engine stuck or out of
budget.  Errors are printed to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys

from .complex import ComplexError, matching_complex
from .engine import DEFAULT_BUDGET, STRATEGIES, reduce, verify_certificate
from .engine.certificate import to_json as cert_to_json
from .formulas import (
    REFERENCE_TABLE,
    predict,
    triangle_counts_via_gf,
    triangle_counts_via_recursion,
)
from .graph import GraphError, Multigraph
from .homology import HomologyProfile, profile_of_class, reduced_homology, wedge_profile
from .spheres import HomotopyClass
from .tilings import FAMILIES, TilingSpec

FORMULA_FAMILIES = ("triangular", "pentagonal", "pentagonal_pendant")
CHANNELS = ("homology", "engine", "formula")


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int = 2):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.code = code


# -- argument plumbing -------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors become CliError so they are reported as JSON too."""

    def error(self, message):
        raise CliError("usage", message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _t_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return p


def _spec_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=_int_list, help="cycle lengths for the extended family, e.g. 4,6,4")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--offsets", type=_int_list)
    p.add_argument("--n", type=int)
    p.add_argument("--spec-file")
    p.add_argument("--graph", help="graph JSON file, or - for stdin")
    return p


def build_parser() -> argparse.ArgumentParser:
    common, spec = _common(), _spec_flags()
    parser = _Parser(prog="linetile", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common, spec], help="write a generated graph as JSON")
    g.add_argument("--out")

    sub.add_parser("homology", parents=[common, spec], help="reduced homology of the matching complex")

    r = sub.add_parser("reduce", parents=[common, spec], help="certified reduction to a homotopy class")
    r.add_argument("--strategy", choices=STRATEGIES, default="auto")
    r.add_argument("--emit-cert", metavar="FILE", help="write the certificate JSON (- embeds it in the output)")

    p = sub.add_parser("predict", parents=[common], help="formula predictions")
    p.add_argument("--family", choices=FORMULA_FAMILIES, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--t-range", type=_t_range)

    v = sub.add_parser("verify", parents=[common, spec], help="compare channels")
    v.add_argument("--channels", default=None, help="comma-separated subset of homology,engine,formula")
    v.add_argument("--strategy", choices=STRATEGIES, default="auto")
    v.add_argument("--t-range", type=_t_range)

    t = sub.add_parser("table", parents=[common], help="sphere counts for triangular tilings")
    t.add_argument("--t-max", type=int, default=13)
    return parser


def _load_graph(path: str) -> Multigraph:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        return Multigraph.from_json(text)
    except OSError as exc:
        raise CliError("io", str(exc)) from None
    except (ValueError, GraphError) as exc:
        raise CliError("parse", f"cannot read graph: {exc}") from None


def _spec_from_args(args, t=None) -> TilingSpec | None:
    if args.spec_file:
        try:
            with open(args.spec_file) as fh:
                return TilingSpec.from_json(fh.read())
        except OSError as exc:
            raise CliError("io", str(exc)) from None
        except ValueError as exc:
            raise CliError("parse", f"bad spec file: {exc}") from None
    if not args.family:
        return None
    try:
        return TilingSpec(
            family=args.family,
            t=args.t if t is None else t,
            s_list=tuple(args.s or ()),
            k=args.k,
            l=args.l,
            glue_offsets=None if args.offsets is None else tuple(args.offsets),
            n=args.n,
        )
    except ValueError as exc:
        raise CliError("spec", str(exc)) from None


def _input(args, t=None) -> tuple[Multigraph, TilingSpec | None]:
    if args.graph:
        return _load_graph(args.graph), None
    spec = _spec_from_args(args, t)
    if spec is None:
        raise CliError("usage", "give --graph FILE, --spec-file FILE or --family with its parameters")
    try:
        return spec.build(), spec
    except (ValueError, GraphError) as exc:
        raise CliError("spec", str(exc)) from None


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- channels ----------------------------------------------------------


def homology_channel(g: Multigraph) -> HomologyProfile:
    try:
        return reduced_homology(matching_complex(g))
    except ComplexError as exc:
        raise CliError("budget", str(exc)) from None


def engine_channel(g: Multigraph, strategy: str, budget: int, spec: TilingSpec | None = None):
    layout = None
    if spec is not None and spec.family == "extended" and strategy == "scripted_extended":
        from .tilings import extended_layout

        layout = extended_layout(spec.s_list, spec.k, spec.l, spec.glue_offsets)
    res = reduce(g, strategy, budget, layout=layout)
    if not res.ok:
        raise CliError("engine", f"reduction stopped: {res.reason}", code=3)
    return res


# -- commands ----------------------------------------------------------


def cmd_gen(args) -> int:
    g, _ = _input(args)
    text = g.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_homology(args) -> int:
    g, _ = _input(args)
    h = homology_channel(g)
    w = wedge_profile(h)
    payload = {
        "homology": h.to_dict(),
        "wedge": None if w is None else w.to_dict(),
        "certainty": "homology-consistent",
    }
    shape = "not a wedge (torsion)" if w is None else str(w)
    _emit(args, payload, f"{h}\nconsistent with: {shape} [homology-consistent]")
    return 0


def cmd_reduce(args) -> int:
    g, spec = _input(args)
    res = engine_channel(g, args.strategy, args.budget, spec)
    ok = verify_certificate(res.certificate)
    payload = {
        "value": res.value.to_dict(),
        "text": str(res.value),
        "strategy": args.strategy,
        "nodes": res.nodes,
        "verified": ok,
        "certainty": "certified-by-trace" if ok else "unverified",
    }
    if args.emit_cert == "-":
        payload["certificate"] = res.certificate
    elif args.emit_cert:
        with open(args.emit_cert, "w") as fh:
            fh.write(cert_to_json(res.certificate) + "\n")
    _emit(args, payload, f"{res.value}  [{payload['certainty']}, {res.nodes} nodes]")
    return 0 if ok else 1


def _ts(args) -> list[int]:
    if getattr(args, "t_range", None):
        lo, hi = args.t_range
        return list(range(lo, hi + 1))
    if args.t is None:
        raise CliError("usage", "give --t or --t-range")
    return [args.t]


def cmd_predict(args) -> int:
    rows = []
    for t in _ts(args):
        try:
            rows.append({"family": args.family, "t": t, "prediction": predict(args.family, t)})
        except ValueError as exc:
            raise CliError("spec", str(exc)) from None
    if args.format == "json":
        for r in rows:
            print(json.dumps({**r, "prediction": r["prediction"].to_dict(), "certainty": "formula"}, sort_keys=True))
    else:
        for r in rows:
            print(f"{r['family']}({r['t']}): {r['prediction']}")
    return 0


def _shadow(x) -> tuple:
    if isinstance(x, HomotopyClass):
        return profile_of_class(x).nonzero()
    return x.nonzero()


def run_report(g: Multigraph, spec: TilingSpec | None, channels: list[str], strategy: str, budget: int) -> dict:
    results: dict[str, dict] = {}
    values: dict[str, object] = {}
    for ch in channels:
        try:
            if ch == "homology":
                h = homology_channel(g)
                values[ch] = h
                w = wedge_profile(h)
                results[ch] = {"status": "ok", "homology": h.to_dict(), "wedge": None if w is None else str(w),
                               "certainty": "homology-consistent"}
            elif ch == "engine":
                res = engine_channel(g, strategy, budget, spec)
                ok = verify_certificate(res.certificate)
                values[ch] = res.value
                results[ch] = {"status": "ok", "value": str(res.value), "nodes": res.nodes,
                               "certainty": "certified-by-trace" if ok else "unverified"}
                if not ok:
                    results[ch]["status"] = "failed"
                    del values[ch]
            elif ch == "formula":
                if spec is None or spec.family not in FORMULA_FAMILIES:
                    raise CliError("formula", "no formula for this input")
                val = predict(spec.family, spec.t)
                values[ch] = val
                results[ch] = {"status": "ok", "value": str(val), "certainty": "formula"}
        except CliError as exc:
            results[ch] = {"status": "unavailable", "reason": exc.message}
    verdicts = {}
    names = [c for c in channels if c in values]
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            va, vb = values[a], values[b]
            if isinstance(va, HomotopyClass) and isinstance(vb, HomotopyClass):
                same = va == vb
            else:
                same = _shadow(va) == _shadow(vb)
            verdicts[f"{a}~{b}"] = "agree" if same else "disagree"
    return {
        "input": spec.to_dict() if spec is not None else {"graph_edges": g.num_edges},
        "channels": results,
        "verdicts": verdicts,
        "agree": all(v == "agree" for v in verdicts.values()) and all(r["status"] == "ok" for r in results.values()),
    }


def cmd_verify(args) -> int:
    if args.channels:
        channels = [c.strip() for c in args.channels.split(",") if c.strip()]
        bad = [c for c in channels if c not in CHANNELS]
        if bad:
            raise CliError("usage", f"unknown channel(s) {bad}; choose from {list(CHANNELS)}")
    else:
        channels = ["homology", "engine"]
    if args.t_range:
        inputs = [_input(args, t) for t in range(args.t_range[0], args.t_range[1] + 1)]
    else:
        inputs = [_input(args)]
    reports = [run_report(g, spec, channels, args.strategy, args.budget) for g, spec in inputs]
    code = 0
    for rep in reports:
        if any(v == "disagree" for v in rep["verdicts"].values()):
            code = max(code, 1)
        elif not rep["agree"]:
            code = max(code, 2)
        if args.format == "json":
            print(json.dumps(rep, sort_keys=True))
        else:
            head = rep["input"]
            parts = [f"{c}={r.get('value') or r.get('wedge') or r.get('reason')}" for c, r in rep["channels"].items()]
            verdict = "AGREE" if rep["agree"] else "MISMATCH"
            print(f"{verdict} {head}: " + "; ".join(parts))
    return code


def cmd_table(args) -> int:
    if args.t_max < 2:
        raise CliError("usage", "--t-max must be at least 2")
    rec = triangle_counts_via_recursion(args.t_max)
    gf = triangle_counts_via_gf(args.t_max)
    code = 0
    rows = []
    for t in range(2, args.t_max + 1):
        row = rec.row(t)
        status = "ok"
        if gf.row(t) != row or predict("triangular", t).poincare() != row:
            status = "channel-mismatch"
        elif t in REFERENCE_TABLE and REFERENCE_TABLE[t] != row:
            status = "reference-mismatch"
        if status != "ok":
            code = 1
        rows.append((t, row, status))
    if args.format == "json":
        for t, row, status in rows:
            print(json.dumps({"t": t, "spheres": {str(d): c for d, c in row.items()}, "status": status}, sort_keys=True))
    else:
        width = max(len(str(HomotopyClass.from_counts(r))) for _, r, _ in rows)
        print(f"{'t':>3}  {'M(P_3,t)':<{width}}  check")
        for t, row, status in rows:
            print(f"{t:>3}  {str(HomotopyClass.from_counts(row)):<{width}}  {status}")
    return code


COMMANDS = {
    "gen": cmd_gen,
    "homology": cmd_homology,
    "reduce": cmd_reduce,
    "predict": cmd_predict,
    "verify": cmd_verify,
    "table": cmd_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(json.dumps({"error": exc.kind, "message": exc.message}, sort_keys=True), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
