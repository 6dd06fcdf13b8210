"""Command-line interface.

Exit codes: 0 success, 1 usage or configuration error, 2 mathematical
failure (a braid relation or the golden comparison does not hold).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import __version__
from .analysis import (
    certify_irreducible,
    check_standard_equivalence,
    corank,
    random_points,
    separation_check,
)
from .errors import BraidRepError, ParseError, ScalarParseError
from .golden import golden_check
from .orbit import format_tuple, parse_tuple
from .rep import Representation, build_generic, build_phi_m, evaluate_word, parse_braid_word, verify_braid_relations
from .scalars import parse_gaussian
from .serialize import (
    certificate_to_json,
    dense_to_csv,
    dense_to_text,
    dumps,
    load_qtable,
    monomial_to_json,
    representation_from_json,
    representation_to_json,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MATH = 2

SEED_ENV = "BRAIDREP_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    m: Optional[int] = None
    seed_tuple: Optional[tuple] = None
    q_table_path: Optional[str] = None
    load_path: Optional[str] = None
    t_value: Optional[str] = None
    output: str = "text"
    rng_seed: int = 0
    dense: bool = False


def _rep_options(p):
    g = p.add_argument_group("representation")
    g.add_argument("--n", type=int, help="number of strands (with --m: the 0/1 family member)")
    g.add_argument("--m", type=int, help="number of ones in the seed tuple")
    g.add_argument("--seed", dest="seed_tuple", help="explicit seed tuple, e.g. 1,0,0 (needs --qtable)")
    g.add_argument("--qtable", dest="q_table_path",
                   help='JSON file mapping "a,b" to scalar strings, e.g. {"0,1": "t", "1,1": "1"}')
    g.add_argument("--load", dest="load_path", help="representation JSON written by `build --format json`")


def _common_options(p, formats=("text", "json")):
    p.add_argument("--format", dest="output", choices=formats, default=formats[0])
    p.add_argument("--rng-seed", type=int, default=0,
                   help=f"seed for random evaluation points (env {SEED_ENV} overrides)")
    p.add_argument("--out", help="write output to this file instead of stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="braidrep",
        description="Exact braid group representations on multiset-permutation orbits.",
        epilog="Braid words: whitespace-separated signed generator indices with optional ^power, "
               "e.g. '1 -2 3^-2'. A word 'a b' evaluates to phi(tau_a) @ phi(tau_b): the last "
               "letter acts first on column vectors. Generator indices k are 1-based; basis ranks "
               "are 0-based. Scalars print as e.g. '(3/2)*t^-1 + 1 + (0+1i)*t^2'.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="build a representation and verify the braid relations")
    _rep_options(p)
    _common_options(p, ("text", "json", "csv"))
    p.add_argument("--no-verify", action="store_true", help="skip braid relation verification")
    p.add_argument("--golden-check", action="store_true", help="compare n=5, m=3 with the embedded fixtures")

    p = sub.add_parser("analyze", help="irreducibility certificate and corank")
    _rep_options(p)
    _common_options(p)
    p.add_argument("--t", dest="t_value", default="2", help="exact rational evaluation point for the commutant")

    p = sub.add_parser("word", help="evaluate a braid word")
    p.add_argument("word", help="braid word, e.g. '1 2 1 -2 -1 -2'")
    _rep_options(p)
    _common_options(p)
    p.add_argument("--t", dest="t_value", help="substitute this exact rational for t")
    p.add_argument("--dense", action="store_true", help="also print the dense matrix")

    p = sub.add_parser("sweep", help="dimension and corank table across the 0/1 family")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--n", type=int, help="single n (overrides --n-min/--n-max)")
    p.add_argument("--m", type=int, help="single m (default: every 1 <= m < n)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--timing", action="store_true", help="add a wall-time column (output no longer deterministic)")
    _common_options(p, ("csv", "json", "text"))

    p = sub.add_parser("golden-check", help="compare n=5, m=3 generators with the embedded fixtures")
    _common_options(p)
    return parser


def _config(args) -> RunConfig:
    rng_seed = args.rng_seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            rng_seed = int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    seed_tuple = None
    if getattr(args, "seed_tuple", None):
        try:
            seed_tuple = parse_tuple(args.seed_tuple)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        m=getattr(args, "m", None),
        seed_tuple=seed_tuple,
        q_table_path=getattr(args, "q_table_path", None),
        load_path=getattr(args, "load_path", None),
        t_value=getattr(args, "t_value", None),
        output=args.output,
        rng_seed=rng_seed,
        dense=getattr(args, "dense", False),
    )


def _build_rep(cfg: RunConfig) -> Representation:
    family = cfg.n is not None or cfg.m is not None
    explicit = cfg.seed_tuple is not None or cfg.q_table_path is not None
    chosen = sum([family, explicit, cfg.load_path is not None])
    if chosen != 1:
        raise UsageError("give exactly one of: --n/--m, --seed with --qtable, or --load")
    if cfg.load_path:
        try:
            with open(cfg.load_path) as fh:
                return representation_from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot load {cfg.load_path}: {exc}") from None
    if family:
        if cfg.n is None or cfg.m is None:
            raise UsageError("--n and --m must be given together")
        return build_phi_m(cfg.n, cfg.m)
    if cfg.seed_tuple is None or cfg.q_table_path is None:
        raise UsageError("--seed and --qtable must be given together")
    try:
        q = load_qtable(cfg.q_table_path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read q-table: {exc}") from None
    return build_generic(cfg.seed_tuple, q)


def _t_value(text: Optional[str]):
    if text is None:
        return None
    try:
        return parse_gaussian(text)
    except ScalarParseError as exc:
        raise UsageError(f"--t must be an exact rational such as 5/2: {exc}") from None


def _relations_summary(report) -> dict:
    return {
        "passed": report.passed,
        "checked": len(report.checks),
        "failures": [
            {
                "relation": c.label,
                "witness": format_tuple(c.witness),
                "lhs": {"image": format_tuple(c.lhs_image), "scalar": str(c.lhs_scalar)},
                "rhs": {"image": format_tuple(c.rhs_image), "scalar": str(c.rhs_scalar)},
            }
            for c in report.failures
        ],
    }


# -- commands -------------------------------------------------------------

def cmd_build(cfg: RunConfig, verify: bool = True, golden: bool = False):
    rep = _build_rep(cfg)
    report = verify_braid_relations(rep) if verify else None
    gold = None
    if golden:
        if rep.family != ("phi_m", 5, 3):
            raise UsageError("--golden-check applies to --n 5 --m 3 only")
        gold = golden_check()
    failed = (report is not None and not report.passed) or (gold is not None and not gold.passed)
    code = EXIT_MATH if failed else EXIT_OK

    if cfg.output == "json":
        doc = representation_to_json(rep)
        if report is not None:
            doc["relations"] = _relations_summary(report)
        if gold is not None:
            doc["golden_check"] = {"passed": gold.passed, "mismatched_rows": {str(k): v for k, v in gold.mismatches.items()}}
        return dumps(doc) + "\n", code

    if cfg.output == "csv":
        parts = []
        for k, g in enumerate(rep.generators, start=1):
            parts.append(f"# tau_{k}\n" + dense_to_csv(g.to_dense()))
        return "".join(parts), code

    lines = [f"n = {rep.n}, seed = {format_tuple(rep.seed)}, dim = {rep.dim}"]
    lines.append("basis (rank: tuple): " + ", ".join(f"{i}: {format_tuple(x)}" for i, x in enumerate(rep.basis)))
    for k, g in enumerate(rep.generators, start=1):
        lines.append(f"tau_{k} =")
        lines.append(dense_to_text(g.to_dense()))
    if report is not None:
        lines.append(f"braid relations: {'all ' + str(len(report.checks)) + ' pass' if report.passed else 'FAILED'}")
        for c in report.failures:
            lines.append(f"  {c.label}: witness {format_tuple(c.witness)} -> "
                         f"{c.lhs_scalar} * v{format_tuple(c.lhs_image)} vs {c.rhs_scalar} * v{format_tuple(c.rhs_image)}")
    if gold is not None:
        lines.append("golden check: " + ("byte-exact match" if gold.passed else f"MISMATCH {gold.mismatches}"))
    return "\n".join(lines) + "\n", code


def cmd_analyze(cfg: RunConfig):
    rep = _build_rep(cfg)
    at = _t_value(cfg.t_value or "2")
    points = random_points(cfg.rng_seed)
    sep_all = separation_check(rep)
    sep_cons = separation_check(rep, mode="consecutive")
    cert = certify_irreducible(rep, at=at)
    cork = corank(rep, points=points)
    equiv = None
    if rep.family and rep.family[0] == "phi_m" and rep.family[2] == 1:
        equiv = check_standard_equivalence(rep.n)

    if cork.closed_form is not None:
        relation = "=" if cork.matches_closed_form else "!="
        thm = f"corank {cork.value} {relation} closed-form {cork.closed_form}"
    else:
        thm = f"corank per generator {cork.measured}"

    if cfg.output == "json":
        doc = certificate_to_json(cert, cork)
        doc["dimension"] = rep.dim
        doc["separation"] = {
            "all_pairs": sep_all.holds,
            "consecutive_pairs": sep_cons.holds,
            "self_adjoint": sep_all.self_adjoint,
            "witness_pair": [format_tuple(x) for x in sep_all.witness_pair] if sep_all.witness_pair else None,
        }
        doc["corank_comparison"] = thm
        if equiv is not None:
            doc["standard_equivalence"] = {"intertwiner": equiv.passed, "phi_1_vs_rho_t_squared": equiv.phi_1_passed}
        return dumps(doc) + "\n", EXIT_OK

    lines = [f"n = {rep.n}, seed = {format_tuple(rep.seed)}, dim = {rep.dim}"]
    lines.append(f"separation (all pairs): {sep_all.holds}; (consecutive pairs): {sep_cons.holds}; "
                 f"self-adjoint generators: {sep_all.self_adjoint}")
    if sep_all.witness_pair:
        a, b = sep_all.witness_pair
        lines.append(f"  unseparated pair: {format_tuple(a)} {format_tuple(b)}")
    verdict = f"{cert.verdict} (method: {cert.method}"
    if cert.evaluation_point is not None:
        verdict += f", t = {cert.evaluation_point}"
    if cert.commutant_dim is not None:
        verdict += f", commutant dim {cert.commutant_dim}"
    lines.append("verdict: " + verdict + ")")
    lines.append(thm)
    lines.append("dense rank check at t in {" + ", ".join(cork.dense) + "}: "
                 + ("agrees" if cork.dense_agrees else "DISAGREES"))
    if equiv is not None:
        lines.append(f"m = 1: dimension {rep.n}, corank {cork.value}; intertwiner with the standard "
                     f"representation: {'pass' if equiv.passed else 'FAIL'}; "
                     f"phi_1(t) ~ rho(t^2): {'pass' if equiv.phi_1_passed else 'FAIL'}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_word(cfg: RunConfig, word: str):
    rep = _build_rep(cfg)
    try:
        w = parse_braid_word(word)
    except ParseError as exc:
        raise UsageError(f"bad braid word {word!r}: {exc}") from None
    try:
        mat = evaluate_word(rep, w)
    except BraidRepError as exc:
        raise UsageError(str(exc)) from None
    at = _t_value(cfg.t_value)
    if at is not None:
        mat = mat.specialize(at)

    if cfg.output == "json":
        doc = {"word": list(w), "identity": mat.is_identity(), **monomial_to_json(mat)}
        if at is not None:
            doc["t"] = str(at)
        doc["dense"] = [[str(v) for v in row] for row in mat.to_dense().rows()] if cfg.dense else None
        return dumps(doc) + "\n", EXIT_OK

    lines = [f"word: {w if len(w) else '(empty)'}" + (f"  at t = {at}" if at is not None else "")]
    if mat.is_identity():
        lines.append("result: identity")
    for x, (p, s) in enumerate(zip(mat.perm, mat.scale)):
        lines.append(f"  v[{x}] {format_tuple(rep.basis[x])} -> {s} * v[{p}] {format_tuple(rep.basis[p])}")
    if cfg.dense:
        lines.append(dense_to_text(mat.to_dense()))
    return "\n".join(lines) + "\n", EXIT_OK


def sweep_row(n: int, m: int) -> dict:
    start = time.perf_counter()
    rep = build_phi_m(n, m)
    cork = corank(rep)
    cert = certify_irreducible(rep)
    return {
        "n": n,
        "m": m,
        "dim": rep.dim,
        "corank_measured": cork.value if cork.dense_agrees else None,
        "corank_closed_form": cork.closed_form,
        "verdict": cert.verdict,
        "wall_time": round(time.perf_counter() - start, 6),
    }


def _sweep_cells(args) -> List[tuple]:
    if args.n is not None:
        ns = [args.n]
    else:
        ns = list(range(args.n_min, args.n_max + 1))
    if any(n < 3 for n in ns):
        raise UsageError("sweep needs n >= 3")
    cells = []
    for n in ns:
        if args.m is not None:
            if not 1 <= args.m < n:
                raise UsageError(f"--m {args.m} outside 1..{n - 1} for n={n}")
            cells.append((n, args.m))
        else:
            cells.extend((n, m) for m in range(1, n))
    return cells


def cmd_sweep(cfg: RunConfig, cells: Sequence[tuple], jobs: int = 1, timing: bool = False):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(sweep_row, *zip(*cells)))
    else:
        rows = [sweep_row(n, m) for n, m in cells]
    columns = ["n", "m", "dim", "corank_measured", "corank_closed_form", "verdict"]
    if timing:
        columns.append("wall_time")
    rows = [{c: r[c] for c in columns} for r in rows]
    if cfg.output == "json":
        return dumps(rows) + "\n", EXIT_OK
    if cfg.output == "text":
        table = [columns] + [[str(r[c]) for c in columns] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(columns))]
        return "\n".join("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in table) + "\n", EXIT_OK
    out = [",".join(columns)]
    out.extend(",".join(str(r[c]) for c in columns) for r in rows)
    return "\n".join(out) + "\n", EXIT_OK


def cmd_golden(cfg: RunConfig):
    gold = golden_check()
    code = EXIT_OK if gold.passed else EXIT_MATH
    if cfg.output == "json":
        return dumps({"passed": gold.passed, "basis_matches": gold.basis_matches,
                      "mismatched_rows": {str(k): v for k, v in gold.mismatches.items()}}) + "\n", code
    if gold.passed:
        return "golden check: all 4 generators match the fixtures byte for byte\n", code
    return f"golden check: MISMATCH basis_ok={gold.basis_matches} rows={gold.mismatches}\n", code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "build":
            text, code = cmd_build(cfg, verify=not args.no_verify, golden=args.golden_check)
        elif args.command == "analyze":
            text, code = cmd_analyze(cfg)
        elif args.command == "word":
            text, code = cmd_word(cfg, args.word)
        elif args.command == "sweep":
            text, code = cmd_sweep(cfg, _sweep_cells(args), jobs=args.jobs, timing=args.timing)
        else:
            text, code = cmd_golden(cfg)
    except UsageError as exc:
        print(f"braidrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BraidRepError as exc:
        print(f"braidrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
