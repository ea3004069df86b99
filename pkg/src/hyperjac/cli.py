"""Command line front end.

    hyperjac report --example fermat:2:4
    hyperjac milnor --example quartic-e6 --order 2
    hyperjac hessian --poly "x0^3+x1^3+x2^3" --nvars 3 --k 1 --l 1
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction
from typing import Any

from . import __version__
from .apolar import ApolarAlgebra, ConeError, ann_basis
from .betti import BettiTable, betti_consistency, is_self_dual, koszul_betti
from .fixtures import Fixture, fixture_names, get_fixture
from .hessian import (
    DEFAULT_TRIALS,
    generic_rank,
    hess_k,
    label_ops,
    mixed_hessian,
    polar_degeneracy,
    quotient_lefschetz_report,
    slp_report,
)
from .linalg import rank
from .milnor import (
    artinian_bound,
    hessian_membership,
    milnor_algebra,
    milnor_profile,
    multiplicity_at,
)
from .qpoly import InhomogeneousError, ParseError, Poly, homogeneous_degree, linear_form, operator_str, parse_poly, random_form

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

DET_MAX_SIZE = 10


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# analyses (each returns a JSON-ready dict)


def _frac(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def analyse_hilbert(f: Poly, alg: ApolarAlgebra | None) -> dict:
    if alg is None:
        alg = ApolarAlgebra(f, check_cone=False)
        return {"cone": True, "hilbert": alg.dims(),
                "ann_1": [operator_str(a) for a in ann_basis(f, 1)],
                "note": "V(f) is a cone; analyses requiring a non-cone form are skipped"}
    return {
        "cone": False,
        "socle_degree": alg.d,
        "hilbert": alg.dims(),
        "bases": {str(k): label_ops(alg.basis_ops(k)) for k in range(alg.d + 1)},
        "ann": {str(k): [operator_str(a) for a in ann_basis(f, k)] for k in range(2, alg.d)
                if 0 < len(ann_basis(f, k)) <= 12},
    }


def _profile_dict(prof) -> dict:
    return {"order": prof.k, "dims": list(prof.dims), "classification": prof.classification,
            "series": prof.hilbert_series(), "series_text": prof.series_str(), "m_cap": prof.m_cap,
            "note": prof.note}


def analyse_milnor(f: Poly, k: int, cap: int | None) -> dict:
    prof = milnor_profile(f, k, cap)
    out = _profile_dict(prof)
    out["artinian"] = prof.is_artinian
    out["artinian_bound"] = artinian_bound(f.nvars, homogeneous_degree(f), k)
    out["tjurina_sum"] = prof.tail_value if prof.classification == "stable" else None
    return out


def analyse_membership(f: Poly) -> dict:
    res = hessian_membership(f)
    out = {"member": res.member, "zero_hessian": res.zero_hessian, "degree": res.degree,
           "hessian": str(res.hess)}
    if res.cofactors is not None:
        out["certificate"] = [str(c) for c in res.cofactors]
    return out


def analyse_hessian(f: Poly, alg: ApolarAlgebra, k: int, l: int, trials: int, seed: int) -> dict:
    H = mixed_hessian(f, k, l, alg)
    gr = generic_rank(H, trials, seed)
    out = {"k": k, "l": l, "shape": [H.rows, H.cols],
           "row_basis": label_ops(H.row_labels), "col_basis": label_ops(H.col_labels),
           "matrix": H.to_strings(), "generic_rank": gr.as_dict()}
    if H.rows == H.cols and H.rows <= DET_MAX_SIZE:
        det = hess_k(f, k, alg) if k == l else None
        if det is None:
            from .hessian import poly_determinant
            det = poly_determinant(H.entries)
        out["determinant"] = str(det)
        out["determinant_zero"] = det.is_zero()
    if k == 1 and 1 <= l < alg.d:
        out["polar_map"] = polar_degeneracy(f, l, trials, seed, alg).as_dict()
    return out


def analyse_lefschetz(f: Poly, alg: ApolarAlgebra | None, quotient: str, trials: int, seed: int) -> dict:
    if quotient == "jacobian":
        B = milnor_algebra(f, 1)
        if not B.is_artinian:
            return {"quotient": "jacobian", "skipped": "M(f) is not Artinian"}
        rep = quotient_lefschetz_report(B, trials, seed)
        out = rep.as_dict()
        out["quotient"] = "jacobian"
        out["hilbert"] = [d for d in B.dims() if d]
        out["strong_maps"] = rep.strong_maps
        return out
    out = slp_report(f, trials, seed, alg).as_dict()
    out["quotient"] = "apolar"
    return out


def _betti_dict(table: BettiTable, hilbert: list[int], socle: int | None) -> dict:
    out = {"table": table.as_list(), "grid": table.format().splitlines(),
           "resolution": table.resolution_str(), "j_cap": table.j_cap,
           "truncated": table.truncated, "alternating_sum_ok": betti_consistency(hilbert, table)}
    if socle is not None:
        out["self_dual"] = is_self_dual(table, socle)
    return out


def analyse_betti(f: Poly, alg: ApolarAlgebra | None, cap: int | None, quotient: str) -> dict:
    if quotient == "jacobian":
        B = milnor_algebra(f, 1, cap)
        table = koszul_betti(B)
        out = _betti_dict(table, B.dims(), None)
        out["quotient"] = "jacobian"
        return out
    if alg is None:
        alg = ApolarAlgebra(f, check_cone=False)
    table = koszul_betti(alg, cap)
    out = _betti_dict(table, alg.dims(), alg.d)
    out["quotient"] = "apolar"
    return out


# ---------------------------------------------------------------------------
# golden comparison


def _series_eq(a: dict, b: dict) -> bool:
    return a["polynomial"] == b["polynomial"] and (a["tail_value"] or 0) == (b["tail_value"] or 0) \
        and (a["tail_from"] if a["tail_value"] else None) == (b["tail_from"] if b["tail_value"] else None)


def verify_paper(fx: Fixture, analyses: dict) -> list[str]:
    """Compare computed analyses against the fixture's recorded values."""
    g = fx.golden
    bad: list[str] = []

    def check(key: str, ok: bool, got: Any):
        if not ok:
            bad.append(f"{fx.name}: {key} expected {g[key]!r}, got {got!r}")

    hil = analyses.get("hilbert", {})
    if "hilbert_A" in g:
        check("hilbert_A", hil.get("hilbert") == g["hilbert_A"], hil.get("hilbert"))
    if "dim_A2" in g:
        h = hil.get("hilbert", [])
        check("dim_A2", len(h) > 2 and h[2] == g["dim_A2"], h[2] if len(h) > 2 else None)
    if "ann_2" in g:
        got = hil.get("ann", {}).get("2", [])
        check("ann_2", len(got) == len(g["ann_2"]), got)
    for key, order in (("milnor_1", "1"), ("milnor_2", "2")):
        if key in g:
            got = analyses.get("milnor", {}).get(order, {}).get("series")
            check(key, got is not None and _series_eq(got, g[key]), got)
    if "betti_A" in g:
        got = {(e["i"], e["j"]): e["beta"] for e in analyses.get("betti", {}).get("table", [])}
        check("betti_A", got == g["betti_A"], sorted(got.items()))
    if "hess_in_jacobian" in g:
        got = analyses.get("hess_membership", {}).get("member")
        check("hess_in_jacobian", got == g["hess_in_jacobian"], got)
    hes = analyses.get("hessians", {})
    if "hess_nonzero" in g:
        got = not hes.get("1,1", {}).get("determinant_zero", True)
        check("hess_nonzero", got == g["hess_nonzero"], got)
    if "hess2_zero" in g:
        got = hes.get("2,2", {}).get("determinant_zero")
        check("hess2_zero", got == g["hess2_zero"], got)
    if "hess_12_rank" in g:
        got = hes.get("1,2", {}).get("generic_rank", {}).get("rank")
        check("hess_12_rank", got == g["hess_12_rank"], got)
    if "polar_2_degenerate" in g:
        got = hes.get("1,2", {}).get("polar_map", {}).get("degenerate")
        check("polar_2_degenerate", got == g["polar_2_degenerate"], got)
    if "slp" in g:
        got = analyses.get("lefschetz", {}).get("slp")
        check("slp", got == g["slp"], got)
    if "mult_u_plus_v_injective" in g:
        got = analyses.get("mult_u_plus_v", {}).get("injective")
        check("mult_u_plus_v_injective", got == g["mult_u_plus_v_injective"], got)
    return bad


# ---------------------------------------------------------------------------
# orchestration


def run_report(f: Poly, fx: Fixture | None, trials: int, seed: int, cap: int | None = None) -> dict:
    d = homogeneous_degree(f)
    analyses: dict[str, Any] = {}
    try:
        alg = ApolarAlgebra(f)
    except ConeError:
        alg = None
    analyses["hilbert"] = analyse_hilbert(f, alg)
    if d >= 2:
        analyses["milnor"] = {str(k): analyse_milnor(f, k, cap) for k in range(1, min(d, 3))}
        analyses["hess_membership"] = analyse_membership(f)
    analyses["betti"] = analyse_betti(f, alg, None, "apolar")
    if alg is not None:
        hs = {}
        if d >= 2:
            hs["1,1"] = analyse_hessian(f, alg, 1, 1, trials, seed)
        if d >= 4:
            hs["2,2"] = analyse_hessian(f, alg, 2, 2, trials, seed)
        if d >= 3:
            hs["1,2"] = analyse_hessian(f, alg, 1, 2, trials, seed)
        analyses["hessians"] = hs
        analyses["lefschetz"] = analyse_lefschetz(f, alg, "apolar", trials, seed)
        if fx is not None and "mult_u_plus_v_injective" in fx.golden:
            L = linear_form([0, 0, 0, 1, 1])
            r = rank(alg.mult_matrix(L, 1, 1))
            analyses["mult_u_plus_v"] = {"rank": r, "injective": r == alg.dim(1)}
    else:
        analyses["skipped"] = ["hessians", "lefschetz"]
    if fx is not None and fx.singular_points:
        analyses["multiplicities"] = [
            {"point": list(p), "multiplicity": multiplicity_at(f, p)} for p in fx.singular_points
        ]
    return analyses


def _resolve_input(args) -> tuple[Poly, Fixture | None, dict]:
    if args.example and args.poly:
        raise UsageError("use either --example or --poly, not both")
    if args.example:
        try:
            fx = get_fixture(args.example)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        return fx.poly, fx, {"example": fx.name, "poly": str(fx.poly), "nvars": fx.nvars, "note": fx.note}
    if args.poly:
        if not args.nvars:
            raise UsageError("--poly requires --nvars")
        f = parse_poly(args.poly, args.nvars)
        homogeneous_degree(f)
        return f, None, {"poly": str(f), "nvars": args.nvars}
    raise UsageError("an input is required: --example NAME or --poly EXPR --nvars N")


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("APOLAR_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"APOLAR_SEED must be an integer, got {env!r}") from None
    return 0


def _dispatch(args, f: Poly, fx: Fixture | None, seed: int) -> dict:
    cmd = args.command
    d = homogeneous_degree(f)
    trials = args.trials
    if cmd == "hilbert":
        try:
            alg = ApolarAlgebra(f)
        except ConeError:
            alg = None
        return {"hilbert": analyse_hilbert(f, alg)}
    if cmd == "milnor":
        if not 1 <= args.order < d:
            raise UsageError(f"--order must satisfy 1 <= k < {d}")
        out = {"milnor": {str(args.order): analyse_milnor(f, args.order, args.cap)}}
        if args.order == 1:
            out["hess_membership"] = analyse_membership(f)
        return out
    if cmd == "betti":
        alg = None if args.quotient == "jacobian" else ApolarAlgebra(f, check_cone=False)
        return {"betti": analyse_betti(f, alg, args.cap, args.quotient)}
    if cmd in ("hessian", "lefschetz"):
        if args.command == "lefschetz" and args.quotient == "jacobian":
            return {"lefschetz": analyse_lefschetz(f, None, "jacobian", trials, seed)}
        try:
            alg = ApolarAlgebra(f)
        except ConeError:
            return {"hilbert": analyse_hilbert(f, None), "skipped": [cmd]}
        if cmd == "hessian":
            if args.k + args.l > d or args.k < 0 or args.l < 0:
                raise UsageError(f"need k, l >= 0 and k + l <= {d}")
            return {"hessians": {f"{args.k},{args.l}": analyse_hessian(f, alg, args.k, args.l, trials, seed)}}
        return {"lefschetz": analyse_lefschetz(f, alg, "apolar", trials, seed)}
    if cmd == "report":
        return run_report(f, fx, trials, seed, args.cap)
    raise UsageError(f"unknown command {cmd}")


# ---------------------------------------------------------------------------
# text rendering


def render_text(report: dict) -> str:
    lines = []
    inp = report["input"]
    lines.append(f"input: {inp.get('example', '')} f = {inp['poly']}  (nvars={inp['nvars']})")
    lines.append(f"seed: {report['seed']}  version: {report['version']}")
    an = report["analyses"]
    if "hilbert" in an:
        h = an["hilbert"]
        lines.append(f"Hilb(A(f)) = {tuple(h['hilbert'])}" + ("  [cone]" if h.get("cone") else ""))
        for k, ops in h.get("ann", {}).items():
            lines.append(f"  Ann(f)_{k} = <{', '.join(ops)}>")
    for k, m in an.get("milnor", {}).items():
        lines.append(f"H(M^{k}(f); t) = {m['series_text']}   [{m['classification']}]")
        if m.get("tjurina_sum") is not None:
            lines.append(f"  sum of order-{k} Tjurina numbers = {m['tjurina_sum']}")
    if "hess_membership" in an:
        hm = an["hess_membership"]
        lines.append(f"hess_f in J(f): {hm['member']}" + ("  (zero Hessian)" if hm["zero_hessian"] else ""))
    if "betti" in an:
        b = an["betti"]
        lines.append(f"Betti table ({b['quotient']}):")
        lines.extend("  " + s for s in b["grid"])
        lines.append(f"  resolution: {b['resolution']}")
        lines.append(f"  alternating sum ok: {b['alternating_sum_ok']}"
                     + (f", self-dual: {b['self_dual']}" if "self_dual" in b else ""))
    for key, h in an.get("hessians", {}).items():
        gr = h["generic_rank"]
        lines.append(f"Hess^({key}): {h['shape'][0]}x{h['shape'][1]}, generic rank {gr['rank']} ({gr['note']})")
        if "determinant" in h:
            lines.append(f"  det = {h['determinant']}")
        if "polar_map" in h:
            pm = h["polar_map"]
            lines.append(f"  polar map order {pm['k']}: dim Z = {pm['dim_Zk']}, degenerate: {pm['degenerate']}")
    if "lefschetz" in an:
        lf = an["lefschetz"]
        if "skipped" in lf:
            lines.append(f"Lefschetz: skipped ({lf['skipped']})")
        else:
            lines.append(f"Lefschetz ({lf['quotient']}): SLP {lf['slp']}, WLP {lf['wlp']}"
                         f"  [trials={lf['trials']}, seed={lf['seed']}]")
            for lv in lf["levels"]:
                lines.append(f"  level {lv['k']}: {lv['map']} rank {lv['mult_rank']}/{min(lv['dims'])}"
                             f" {'ok' if lv['maximal'] else 'FAILS'}")
    if "mult_u_plus_v" in an:
        lines.append(f"L = x3+x4: A_1 -> A_2 rank {an['mult_u_plus_v']['rank']}")
    for mp in an.get("multiplicities", []):
        lines.append(f"multiplicity at {tuple(mp['point'])}: {mp['multiplicity']}")
    for s in an.get("skipped", []):
        lines.append(f"skipped: {s} (cone input)")
    if "verify_paper" in report:
        vp = report["verify_paper"]
        lines.append("recorded values: " + ("all match" if not vp else "MISMATCH"))
        lines.extend("  " + m for m in vp)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# experiment: is hess_f in J(f) for singular f?


def hess_question(nvars: int, degree: int, samples: int, mult: int, seed: int) -> dict:
    """Sample forms singular at (1:0:...:0) with multiplicity >= ``mult``."""
    rng = random.Random(seed)
    rows = []
    for _ in range(samples):
        g = random_form(nvars, degree, rng, -5, 5)
        f = Poly(nvars, {e: c for e, c in g.as_dict().items() if e[0] <= degree - mult})
        if f.is_zero():
            continue
        res = hessian_membership(f)
        rows.append({"poly": str(f), "member": res.member, "zero_hessian": res.zero_hessian,
                     "multiplicity_at_p": multiplicity_at(f, [1] + [0] * (nvars - 1))})
    return {"samples": rows, "all_members": all(r["member"] for r in rows),
            "note": "reducedness of samples is not checked"}


# ---------------------------------------------------------------------------


def _input_args(p: argparse.ArgumentParser):
    p.add_argument("--example", help="fixture name (see `hyperjac fixtures`)")
    p.add_argument("--poly", help="homogeneous polynomial in x0..x{N-1}")
    p.add_argument("--nvars", type=int, help="number of variables for --poly")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out", help="write output to this path")
    p.add_argument("--seed", type=int, default=None, help="random seed (default: $APOLAR_SEED or 0)")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--timing", action="store_true", help="print elapsed time (text mode only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperjac", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hilbert", help="Hilbert vector and bases of A(f)")
    _input_args(p)
    p = sub.add_parser("milnor", help="Hilbert function of M^k(f), Artinian test, Tjurina sum")
    _input_args(p)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--cap", type=int, default=None)
    p = sub.add_parser("hessian", help="mixed Hessian Hess^(k,l), determinant and generic rank")
    _input_args(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", type=int, default=1)
    p = sub.add_parser("lefschetz", help="SLP/WLP of A(f) or of M(f)")
    _input_args(p)
    p.add_argument("--quotient", choices=["apolar", "jacobian"], default="apolar")
    p = sub.add_parser("betti", help="graded Betti table by Koszul homology")
    _input_args(p)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--quotient", choices=["apolar", "jacobian"], default="apolar")
    p = sub.add_parser("report", help="run every analysis")
    _input_args(p)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--verify-paper", action="store_true",
                   help="compare against the fixture's recorded values; exit 1 on mismatch")
    p = sub.add_parser("fixtures", help="list the fixture catalog")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out")
    p = sub.add_parser("hess-question", help="sample singular forms and test hess_f in J(f)")
    p.add_argument("--nvars", type=int, default=3)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--multiplicity", type=int, default=2)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out")
    return parser


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.command == "fixtures":
            rows = [{"name": n, "poly": str(get_fixture(n).poly), "nvars": get_fixture(n).nvars,
                     "note": get_fixture(n).note} for n in fixture_names()]
            text = json.dumps(rows, indent=2) if args.format == "json" else \
                "\n".join(f"{r['name']:<12} {r['poly']}   # {r['note']}" for r in rows)
            _emit(text, args.out)
            return EXIT_OK
        seed = _seed(args)
        if args.command == "hess-question":
            res = hess_question(args.nvars, args.degree, args.samples, args.multiplicity, seed)
            res = {"seed": seed, "version": __version__, **res}
            text = json.dumps(res, indent=2) if args.format == "json" else "\n".join(
                [f"{r['poly']}: hess in J(f) = {r['member']} (mult {r['multiplicity_at_p']})" for r in res["samples"]]
                + [f"all members: {res['all_members']}"])
            _emit(text, args.out)
            return EXIT_OK
        if args.trials < 1:
            raise UsageError("--trials must be positive")
        f, fx, echo = _resolve_input(args)
        analyses = _dispatch(args, f, fx, seed)
        report: dict[str, Any] = {"input": echo, "seed": seed, "version": __version__,
                                  "command": args.command, "analyses": analyses}
        status = EXIT_OK
        if getattr(args, "verify_paper", False):
            if fx is None:
                raise UsageError("--verify-paper needs --example")
            report["verify_paper"] = verify_paper(fx, analyses)
            if report["verify_paper"]:
                status = EXIT_MISMATCH
    except (UsageError, ParseError, InhomogeneousError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        text = json.dumps(report, indent=2)
    else:
        text = render_text(report)
        if args.timing:
            text += f"\nelapsed: {time.perf_counter() - t0:.2f}s"
    _emit(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
