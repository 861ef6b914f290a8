"""Command line entry point.

Exit codes: 0 success, 1 negative decision (graph does not embed,
construction not rigid, pattern not minimal, certificate failed), 2 usage
error, 3 cap or validation error. Every successful or negative run writes a
JSON manifest with input digests and a digest of the result.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .constructions import PartSizeTree, build_construction, max_pn, min_degree_report, ratio_sequence
from .embeddings import (
    CapExceededError,
    canonical_form,
    check_rigidity,
    embeds_into_p_construction,
    ex_bruteforce,
    forbidden_family,
)
from .families import verify_irrational_certificate
from .io import format_hypergraph, read_hypergraph, read_pattern, write_hypergraph
from .lagrangian import DegenerateRecursionError, LagrangianConfig, is_minimal, maximize_lagrangian
from .limits import ct_gap, hom_density, hypergraph_lagrangian
from .pattern import PatternError, density_one_check

EPILOG = """\
exit codes: 0 ok, 1 negative result, 2 usage error, 3 cap/validation error

environment overrides for search caps:
  PATTERN_TURAN_MAX_EDGE_SLOTS      largest C(n,k) enumerated by forbid/exact-ex (21)
  PATTERN_TURAN_MAX_CANON_VERTICES  largest graph given a canonical form (10)
  PATTERN_TURAN_RIGIDITY_CAP        largest construction checked by rigid (8)
  PATTERN_TURAN_HOM_CAP_F / _G      vertex caps for homdensity (7 / 12)
"""


def _sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


def _frac(q: Fraction) -> dict:
    return {"float": float(q), "exact": str(q)}


def _lag_config(args) -> LagrangianConfig:
    return LagrangianConfig(
        starts=args.starts,
        random_starts=args.random_starts,
        grid_resolution=args.grid,
        tol=args.opt_tol,
        dp_n_for_upper=args.upper_n,
        seed=args.seed,
        jobs=args.jobs,
    )


# each command returns (result dict, exit code, input paths)

def cmd_lagrangian(args):
    p = read_pattern(args.pattern)
    res = maximize_lagrangian(p, _lag_config(args))
    return res.to_dict(), 0, [args.pattern]


def cmd_pn(args):
    p = read_pattern(args.pattern)
    res = max_pn(p, args.n)
    out = {"n": args.n, "p_n": res.value, "n_optimal_level1": res.n_optimal}
    if args.n >= p.k:
        out["ratios"] = [{"n": n, "p_n": v, "density": _frac(q)} for n, v, q in ratio_sequence(p, args.n)]
    if args.witness:
        out["witness"] = res.witness.to_dict()
        g = build_construction(p, res.witness)
        deg = min_degree_report(g)
        out["witness_degrees"] = {"min": deg.min, "max": deg.max, "argmin": deg.argmin}
        if args.graph_out:
            write_hypergraph(g, args.graph_out)
    return out, 0, [args.pattern]


def cmd_minimal(args):
    p = read_pattern(args.pattern)
    rep = is_minimal(p, args.margin_tol, _lag_config(args))
    out = {"minimal": rep.minimal, "value": rep.value, "margins": rep.margins,
           "converged": rep.converged, "density_one": density_one_check(p)}
    return out, 0 if rep.minimal else 1, [args.pattern]


def cmd_forbid(args):
    p = read_pattern(args.pattern)
    family = forbidden_family(p, args.max_vertices, minimal=args.minimal)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    index = []
    for i, F in enumerate(family):
        name = f"F{i:04d}.hg"
        write_hypergraph(F, outdir / name)
        index.append({"file": name, "vertices": F.n, "edges": len(F),
                      "canonical": canonical_form(F).decode()})
    (outdir / "index.json").write_text(json.dumps({"max_vertices": args.max_vertices,
                                                   "minimal": args.minimal, "members": index}, indent=2))
    return {"count": len(family), "members": index}, 0, [args.pattern]


def cmd_embed(args):
    p = read_pattern(args.pattern)
    g = read_hypergraph(args.graph)
    w = embeds_into_p_construction(g, p)
    out = {"embeds": w is not None, "witness": None if w is None else w.to_dict()}
    return out, 0 if w is not None else 1, [args.pattern, args.graph]


def _read_family(directory):
    d = Path(directory)
    index = d / "index.json"
    if index.exists():
        files = [d / m["file"] for m in json.loads(index.read_text())["members"]]
    else:
        files = sorted(d.glob("*.hg"))
    return [read_hypergraph(f) for f in files], [str(f) for f in files]


def cmd_exact_ex(args):
    if (args.pattern is None) == (args.family is None):
        raise _UsageError("exact-ex needs exactly one of --pattern or --family")
    inputs = []
    if args.pattern:
        p = read_pattern(args.pattern)
        res = ex_bruteforce(args.n, p=p)
        inputs.append(args.pattern)
        out = {"n": args.n, "ex": res.value, "p_n": max_pn(p, args.n).value}
    else:
        family, files = _read_family(args.family)
        if not family and args.k is None:
            raise _UsageError("empty family: pass --k")
        res = ex_bruteforce(args.n, family, k=args.k)
        inputs += files
        out = {"n": args.n, "ex": res.value}
    out["extremal_graphs"] = [format_hypergraph(g) for g in res.extremal_graphs]
    return out, 0, inputs


def cmd_rigid(args):
    p = read_pattern(args.pattern)
    sizes = tuple(int(s) for s in args.sizes.split(","))
    rigid = check_rigidity(PartSizeTree.of(sizes), p)
    return {"sizes": list(sizes), "rigid": rigid}, 0 if rigid else 1, [args.pattern]


def cmd_irrational(args):
    cert = verify_irrational_certificate(args.k, args.tol, _lag_config(args))
    return cert.to_dict(), 0 if cert.passed else 1, []


def cmd_homdensity(args):
    f, g = read_hypergraph(args.f), read_hypergraph(args.g)
    return hom_density(f, g).to_dict(), 0, [args.f, args.g]


def cmd_hlagrangian(args):
    g = read_hypergraph(args.graph)
    return hypergraph_lagrangian(g, _lag_config(args)).to_dict(), 0, [args.graph]


def cmd_ctgap(args):
    g = read_hypergraph(args.graph)
    gap = ct_gap(g, _lag_config(args))
    return {"density": _frac(g.density), "gap": gap}, 0, [args.graph]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _add_optimizer_flags(sp, tol_flag="--tol"):
    sp.add_argument("--starts", type=int, default=20, help="grid seeds refined by ascent")
    sp.add_argument("--random-starts", type=int, default=50)
    sp.add_argument("--grid", type=int, default=20, help="grid subdivisions per coordinate")
    sp.add_argument(tol_flag, dest="opt_tol", type=float, default=1e-9, help="ascent step tolerance")
    sp.add_argument("--upper-n", type=int, default=None, help="n for the p_n/C(n,k) upper bound")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pattern-turan", description="Pattern Lagrangians and P-constructions.",
                     epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--manifest", default="manifest.json", help="where the run manifest goes")
    common.add_argument("--out", choices=["json", "csv"], default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("lagrangian", parents=[common], help="maximize the pattern Lagrangian")
    sp.add_argument("--pattern", required=True)
    _add_optimizer_flags(sp)
    sp.set_defaults(func=cmd_lagrangian)

    sp = sub.add_parser("pn", parents=[common], help="exact p_n and the density sequence")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--csv", action="store_true", help="print the density table as CSV")
    sp.add_argument("--graph-out", help="write the witness construction as a hypergraph file")
    sp.set_defaults(func=cmd_pn)

    sp = sub.add_parser("minimal", parents=[common], help="minimality margins")
    sp.add_argument("--pattern", required=True)
    _add_optimizer_flags(sp)
    sp.add_argument("--margin-tol", type=float, default=1e-6, help="margins above this count as strict")
    sp.set_defaults(func=cmd_minimal)

    fp = _Parser(add_help=False)
    fp.add_argument("--seed", type=int, default=0)
    fp.add_argument("--jobs", type=int, default=1)
    fp.add_argument("--manifest", default=None)
    sp = sub.add_parser("forbid", parents=[fp], help="forbidden family up to isomorphism")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--max-vertices", type=int, required=True)
    sp.add_argument("--minimal", action="store_true")
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_forbid)

    sp = sub.add_parser("embed", parents=[common], help="embed a graph into a P-construction")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--graph", required=True)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("exact-ex", parents=[common], help="brute-force Turán number")
    sp.add_argument("--pattern")
    sp.add_argument("--family")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, help="uniformity when the family is empty")
    sp.set_defaults(func=cmd_exact_ex)

    sp = sub.add_parser("rigid", parents=[common], help="rigidity of a one-level construction")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--sizes", required=True, help="comma-separated level-1 part sizes")
    sp.set_defaults(func=cmd_rigid)

    sp = sub.add_parser("irrational", parents=[common], help="verify the irrational family at k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-6, help="closed form vs numeric agreement")
    _add_optimizer_flags(sp, tol_flag="--ascent-tol")
    sp.set_defaults(func=cmd_irrational)

    sp = sub.add_parser("homdensity", parents=[common], help="homomorphism density t(F, G)")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.set_defaults(func=cmd_homdensity)

    sp = sub.add_parser("hlagrangian", parents=[common], help="hypergraph Lagrangian")
    sp.add_argument("--graph", required=True)
    _add_optimizer_flags(sp)
    sp.set_defaults(func=cmd_hlagrangian)

    sp = sub.add_parser("ctgap", parents=[common], help="edge density minus Lagrangian")
    sp.add_argument("--graph", required=True)
    _add_optimizer_flags(sp)
    sp.set_defaults(func=cmd_ctgap)
    return parser


def _emit(result: dict, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(result, indent=2, sort_keys=True) + "\n")
        return
    rows = result.get("ratios")
    buf = io.StringIO()
    if rows is not None:
        w = csv.writer(buf)
        w.writerow(["n", "p_n", "density", "density_exact"])
        for r in rows:
            w.writerow([r["n"], r["p_n"], r["density"]["float"], r["density"]["exact"]])
    else:
        flat = {k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in sorted(result.items())}
        w = csv.DictWriter(buf, fieldnames=list(flat))
        w.writeheader()
        w.writerow(flat)
    out.write(buf.getvalue())


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(str(exc) + "\n")
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        result, code, inputs = args.func(args)
    except _UsageError as exc:
        stderr.write(f"{args.command}: {exc}\n")
        return 2
    except (PatternError, CapExceededError, DegenerateRecursionError, ValueError, FileNotFoundError) as exc:
        stderr.write(f"{args.command}: {type(exc).__name__}: {exc}\n")
        return 3
    wall = time.perf_counter() - start

    fmt = "json" if args.command == "forbid" else args.out
    if args.command == "pn" and args.csv:
        fmt = "csv"
    _emit(result, fmt, stdout)

    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "manifest")}
    manifest = {
        "subcommand": args.command,
        "config": config,
        "input_digests": {str(path): _sha256_file(path) for path in inputs},
        "tool_version": __version__,
        "wall_time": wall,
        "result_digest": _digest(result),
    }
    manifest_path = args.manifest
    if manifest_path is None:
        manifest_path = Path(args.out) / "manifest.json" if args.command == "forbid" else "manifest.json"
    Path(manifest_path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
