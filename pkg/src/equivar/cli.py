"""Command line front end.

Complex files are JSON documents::

    {"vertices": 6, "maximal_simplices": [[0, 1, 4], ...], "involution": [0, 1, 2, 3, 5, 4]}

Every command prints one report (JSON by default, aligned text with
``--format text``).  Exit status: 0 ok, 2 hypothesis failure, 3 parse error,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Any, Callable

from . import errors
from .equivariant import (
    _double_complex,
    brauer_obstruction,
    component_map_rank,
    default_degree,
    krasnov_test,
    spectral_pages,
    total_equivariant_dims,
)
from .errors import EquivarError, ParseError
from .fixtures import FIXTURES, fixture_document
from .simplicial import (
    InvolutiveComplex,
    SimplicialComplex,
    fixed_part,
    is_regular,
    mod2_cohomology,
    quotient_complex,
    rational_homology_trace,
    regularity_defects,
    regularize,
    subdivision_depth,
)
from .smith import build_smith_sequence, harnack_thom, image_criterion, lefschetz_check
from .surfaces import (
    EnriquesLatticeInvariants,
    HodgeInput,
    SurfaceCohomologyProfile,
    brauer_dim_kummer,
    brauer_dim_surface,
    cross_check_surface,
    enriques_brauer_bounds,
    enriques_formulas,
    etale_dims_formula,
    lefschetz_euler,
)


# input --------------------------------------------------------------------
def _int_list(value: Any, where: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ParseError(f"{where}: expected a list of integers")
    return value


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    n = doc.get("vertices")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("field 'vertices': expected a nonnegative integer")
    simplices = doc.get("maximal_simplices")
    if not isinstance(simplices, list):
        raise ParseError("field 'maximal_simplices': expected a list")
    for k, s in enumerate(simplices):
        _int_list(s, f"field 'maximal_simplices'[{k}]")
    if doc.get("involution") is not None:
        _int_list(doc["involution"], "field 'involution'")
    return doc


def read_complex_file(path: str, subdivide: bool = True) -> tuple[InvolutiveComplex, str, int]:
    """The complex in ``path``, the sha256 of the file, and the number of subdivisions applied."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    doc = load_document(raw.decode("utf-8"))
    K = SimplicialComplex.from_maximal(doc["vertices"], doc["maximal_simplices"])
    ic = InvolutiveComplex(K, doc.get("involution"))
    depth = 0
    if subdivide:
        depth = subdivision_depth(ic)
        ic = regularize(ic)
    return ic, hashlib.sha256(raw).hexdigest(), depth


def parse_complex_file(path: str, subdivide: bool = True) -> InvolutiveComplex:
    """Read a complex file; the action is regularized unless ``subdivide`` is false."""
    return read_complex_file(path, subdivide)[0]


# reports ------------------------------------------------------------------
class Report:
    def __init__(self, command: list[str]):
        self.command = command
        self.input: dict[str, Any] = {}
        self.hypotheses: dict[str, bool] = {}
        self.results: dict[str, Any] = {}
        self.checks: dict[str, bool] = {}
        self.failure_status = errors.EXIT_INVARIANT  # exit status when a check fails

    @property
    def exit_status(self) -> int:
        if not all(self.hypotheses.values()):
            return errors.EXIT_HYPOTHESIS
        if not all(self.checks.values()):
            return self.failure_status
        return errors.EXIT_OK

    def as_dict(self) -> dict:
        out = {"command": self.command, "hypotheses": self.hypotheses, "results": self.results, "checks": self.checks}
        if self.input:
            out["input"] = self.input
        return out


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        if not value:
            out.append((prefix, "{}"))
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(value)))


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    rows: list[tuple[str, str]] = []
    _flatten("", payload, rows)
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _pair_keys(table: dict[tuple[int, int], int]) -> dict[str, int]:
    return {f"{p},{q}": v for (p, q), v in sorted(table.items())}


def _fixed_and_quotient(ic: InvolutiveComplex):
    fixed, _ = fixed_part(ic)
    return fixed, quotient_complex(ic)[0]


def _max_degree(args, ic: InvolutiveComplex) -> int:
    return default_degree(ic) if args.max_degree is None else args.max_degree


def _regular_hypothesis(rep: Report, ic: InvolutiveComplex) -> bool:
    rep.hypotheses["regular_action"] = is_regular(ic)
    if not rep.hypotheses["regular_action"]:
        rep.results["regularity_defects"] = regularity_defects(ic)
    return rep.hypotheses["regular_action"]


# complex commands -----------------------------------------------------------
def cmd_cohomology(args, ic: InvolutiveComplex, rep: Report) -> None:
    K = ic.complex
    rep.results["f_vector"] = list(K.f_vector)
    rep.results["mod2"] = list(mod2_cohomology(K).dims)
    traces = [rational_homology_trace(ic, n) for n in range(K.dim + 1)]
    rep.results["rational_betti"] = [b for b, _ in traces]
    rep.results["trace_g"] = [t for _, t in traces]
    if _regular_hypothesis(rep, ic):
        fixed, Q = _fixed_and_quotient(ic)
        rep.results["fixed_mod2"] = list(mod2_cohomology(fixed).dims)
        rep.results["fixed_components"] = fixed.connected_components() if fixed.dim >= 0 else 0
        rep.results["quotient_mod2"] = list(mod2_cohomology(Q).dims)


def cmd_equivariant(args, ic: InvolutiveComplex, rep: Report) -> None:
    if not _regular_hypothesis(rep, ic):
        return
    n = _max_degree(args, ic)
    rep.results["max_degree"] = n
    rep.results["dims"] = total_equivariant_dims(_double_complex(ic, n), n)


def cmd_pages(args, ic: InvolutiveComplex, rep: Report) -> None:
    if not _regular_hypothesis(rep, ic):
        return
    n = _max_degree(args, ic)
    dc = _double_complex(ic, n)
    kinds = ["I", "II"] if args.kind == "both" else [args.kind]
    for kind in kinds:
        pages = []
        for page in spectral_pages(dc, kind, r_max=args.r_max):
            pages.append({
                "r": page.r,
                "entries": _pair_keys({k: v for k, v in page.entries.items() if v and sum(k) <= n}),
                "differential_ranks": _pair_keys(
                    {k: v for k, v in page.differential_ranks.items() if v and sum(k) <= n - 1}
                ),
            })
        rep.results[kind] = pages
    rep.results["max_degree"] = n


def _smith_results(ic: InvolutiveComplex) -> tuple[dict, dict]:
    sm = build_smith_sequence(ic)
    crit = image_criterion(sm)
    results = {
        "h_rel": list(sm.h_rel),
        "h_fixed": list(sm.h_fixed),
        "h_total": list(sm.h_total),
        "rank_i": [m.rank() for m in sm.i],
        "rank_rho": [m.rank() for m in sm.rho],
        "rank_delta": [m.rank() for m in sm.delta],
        "image_criterion": [
            {
                "n": d.n,
                "dim_im_i": d.dim_im_i,
                "dim_invariants": d.dim_invariants,
                "composite_image": d.composite_image,
                "composite_in_ker_delta": d.composite_in_ker_delta,
                "rho_of_invariants": d.rho_of_invariants,
                "saturated": d.saturated,
            }
            for d in crit.degrees
        ],
        "saturated": crit.saturated,
    }
    checks = {"exact": sm.is_exact(), "lift_independent": sm.lift_independent()}
    for n in range(sm.top + 1):
        checks[f"transfer_identity_degree_{n}"] = sm.transfer_identity(n)
        checks[f"boundary_identity_degree_{n}"] = sm.boundary_identity(n)
        d = crit.degrees[n]
        checks[f"rho_image_matches_degree_{n}"] = d.composite_in_ker_delta == d.rho_of_invariants
    return results, checks


def cmd_smith(args, ic: InvolutiveComplex, rep: Report) -> None:
    if not _regular_hypothesis(rep, ic):
        return
    results, checks = _smith_results(ic)
    rep.results.update(results)
    rep.checks.update(checks)


def cmd_obstruction(args, ic: InvolutiveComplex, rep: Report) -> None:
    if not _regular_hypothesis(rep, ic):
        return
    fixed, _ = fixed_part(ic)
    rep.hypotheses["fixed_set_nonempty"] = fixed.dim >= 0
    if fixed.dim < 0:
        return
    ob = brauer_obstruction(ic)
    rep.results.update({
        "s": ob.s,
        "image_dim": ob.image_dim,
        "surjective": ob.surjective,
        "dim_ker_istar": ob.dim_ker_istar,
        "dim_im_d2_11": ob.dim_im_d2_11,
        "dim_ker_d3_02": ob.dim_ker_d3_02,
    })
    rep.results["component_map"] = {
        str(n): {"image_dim": c.image_dim, "surjective": c.surjective}
        for n in range(ic.dim + 2)
        for c in [component_map_rank(ic, n)]
    }
    rep.checks.update(ob.checks)


def _krasnov(ic: InvolutiveComplex) -> tuple[dict, dict]:
    kr = krasnov_test(ic)
    ht = harnack_thom(ic)
    saturated = image_criterion(build_smith_sequence(ic)).saturated
    results = {
        "degenerate": kr.degenerate,
        "lhs": kr.lhs,
        "rhs": kr.rhs,
        "ii_differentials_vanish": kr.ii_differentials_vanish,
        "harnack_slack": ht.slack,
        "smith_saturated": saturated,
    }
    flags = {kr.degenerate, kr.ii_differentials_vanish, ht.slack == 0, saturated}
    return results, {"criteria_agree": len(flags) == 1, "harnack_rhs_matches": ht.rhs == kr.rhs}


def cmd_krasnov(args, ic: InvolutiveComplex, rep: Report) -> None:
    if not _regular_hypothesis(rep, ic):
        return
    results, checks = _krasnov(ic)
    rep.results.update(results)
    rep.checks.update(checks)


def cmd_lefschetz(args, ic: InvolutiveComplex, rep: Report) -> None:
    lf = lefschetz_check(ic)
    rep.results.update({
        "lefschetz_number": lf.lefschetz_number,
        "chi_fixed": lf.chi_fixed,
        "specialized": lf.specialized,
    })
    rep.checks["lefschetz_equals_chi_fixed"] = lf.consistent


def cmd_cross_check(args, ic: InvolutiveComplex, rep: Report) -> None:
    if not _regular_hypothesis(rep, ic):
        return
    hodge = None
    if args.h20 is not None or args.h11_minus is not None or args.rho_plus is not None:
        hodge = HodgeInput(args.h20 or 0, args.h11_minus or 0, args.rho_plus or 0)
    cc = cross_check_surface(ic, hodge)
    rep.hypotheses.update(cc.hypotheses)
    p = cc.profile
    rep.results.update({
        "profile": {k: getattr(p, k) for k in p.__dataclass_fields__},
        "formula_dims": list(cc.formula_dims),
        "engine_dims": list(cc.engine_dims),
        "chi_fixed": cc.chi_fixed,
        "chi_formula": cc.chi_formula,
    })
    if cc.brauer is not None:
        rep.results["brauer"] = vars(cc.brauer).copy()
    rep.checks["dims_agree"] = cc.formula_dims == cc.engine_dims
    rep.checks["chi_agrees"] = cc.chi_fixed == cc.chi_formula


def cmd_verify(args, ic: InvolutiveComplex, rep: Report) -> None:
    """Every invariant the engine can check on one input."""
    if not _regular_hypothesis(rep, ic):
        return
    n = max(_max_degree(args, ic), ic.dim + 2)
    dc = _double_complex(ic, n)
    dc.check()
    for kind in ("I", "II"):
        dc.model(kind).check()
    dims = total_equivariant_dims(dc, n)
    fixed, _ = fixed_part(ic)
    fixed_total = sum(mod2_cohomology(fixed).dims)
    rep.results["equivariant_dims"] = dims
    rep.results["fixed_total_betti"] = fixed_total
    for k in (ic.dim + 1, ic.dim + 2):
        rep.checks[f"stabilization_degree_{k}"] = dims[k] == fixed_total
    if ic.is_trivial:
        betti = mod2_cohomology(ic.complex).dims
        partial = [sum(betti[: k + 1]) for k in range(n + 1)]
        rep.checks["trivial_action_partial_sums"] = dims == partial
    if ic.complex.size <= 400:
        rep.checks["model_matches_direct"] = total_equivariant_dims(dc, n, "direct") == dims
    smith, smith_checks = _smith_results(ic)
    rep.checks.update({f"smith_{k}": v for k, v in smith_checks.items()})
    kr, kr_checks = _krasnov(ic)
    rep.results["krasnov"] = kr
    rep.checks.update({f"krasnov_{k}": v for k, v in kr_checks.items()})
    lf = lefschetz_check(ic)
    rep.results["lefschetz"] = {"lefschetz_number": lf.lefschetz_number, "chi_fixed": lf.chi_fixed}
    rep.checks["lefschetz_equals_chi_fixed"] = lf.consistent
    if fixed.dim >= 0:
        rep.checks.update({f"obstruction_{k}": v for k, v in brauer_obstruction(ic).checks.items()})


# pure formulas --------------------------------------------------------------
def _profile(args) -> SurfaceCohomologyProfile:
    h2 = args.b2 + 2 * args.b1 if args.h2 is None else args.h2
    h2G = args.h2G
    if h2G is None:
        # the value that makes the stable etale dimension equal the fixed Betti total
        h2G = (args.fixed_betti + h2 - 2 * args.b1 - 2) // 2
    return SurfaceCohomologyProfile(args.b1, args.b2, h2, h2G, args.b2_plus, args.s, args.fixed_betti)


def formula_enriques(args, rep: Report) -> None:
    d1 = args.delta if args.delta1 is None else args.delta1
    d2 = args.delta if args.delta2 is None else args.delta2
    inv = EnriquesLatticeInvariants(args.r, args.a, args.alpha, d1, d2, args.dimHminus, args.dimHcap,
                                    args.s_or, args.s_nor)
    res = enriques_formulas(inv, liftings_real=args.liftings_real)
    rep.hypotheses["liftings_have_real_points"] = args.liftings_real
    rep.results.update({k: v for k, v in vars(res).items() if k != "checks"})
    rep.checks.update(res.checks)


def formula_etale(args, rep: Report) -> None:
    p = SurfaceCohomologyProfile(args.b1, 0, args.h2, args.h2G, 0, 1, 0)
    rep.results["dims"] = list(etale_dims_formula(p, args.k_max))


def formula_brauer(args, rep: Report) -> None:
    p = _profile(args)
    routes = brauer_dim_surface(p, HodgeInput(args.h20, args.h11_minus, args.rho_plus))
    rep.results.update(vars(routes))
    rep.checks["routes_agree"] = routes.agree


def formula_kummer(args, rep: Report) -> None:
    pic = args.pic if args.pic is not None else args.rho_plus + args.b1
    rep.results["pic_mod2"] = pic
    rep.results["dim_2Br"] = brauer_dim_kummer(args.h2_et, pic)


def formula_lefschetz(args, rep: Report) -> None:
    rep.results["chi_real"] = lefschetz_euler(args.b2_plus, args.b2)


def formula_bounds(args, rep: Report) -> None:
    res = enriques_brauer_bounds(args.b, args.epsilon, args.s, args.real_nonempty, strict=args.strict)
    rep.hypotheses["real_part_nonempty"] = args.real_nonempty
    rep.results["dim_2Br"] = res.dim_2Br
    rep.checks.update(res.checks)
    rep.failure_status = errors.EXIT_HYPOTHESIS


def cmd_fixtures(args) -> tuple[str, int]:
    if args.name is None:
        return "\n".join(sorted(FIXTURES)), 0
    doc = fixture_document(args.name)
    text = json.dumps(doc, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        return args.out, 0
    return text, 0


COMPLEX_COMMANDS: dict[str, Callable] = {
    "cohomology": cmd_cohomology,
    "equivariant": cmd_equivariant,
    "pages": cmd_pages,
    "smith": cmd_smith,
    "obstruction": cmd_obstruction,
    "krasnov": cmd_krasnov,
    "lefschetz": cmd_lefschetz,
    "cross-check": cmd_cross_check,
    "verify": cmd_verify,
}

FORMULAS: dict[str, Callable] = {
    "enriques": formula_enriques,
    "etale": formula_etale,
    "brauer": formula_brauer,
    "kummer": formula_kummer,
    "lefschetz": formula_lefschetz,
    "bounds": formula_bounds,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are parse errors, not hypothesis failures
        raise ParseError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="equivar", description="Equivariant mod 2 cohomology of simplicial involutions.")
    sub = parser.add_subparsers(dest="command", required=True)
    out = _Parser(add_help=False)
    out.add_argument("--format", choices=["json", "text"], default="json")

    for name in COMPLEX_COMMANDS:
        p = sub.add_parser(name, parents=[out])
        p.add_argument("path", help="complex file (JSON)")
        p.add_argument("--max-degree", type=int, default=None, help="default: complex dimension + 3")
        p.add_argument("--no-subdivide", action="store_true", help="do not regularize by subdivision")
        if name == "pages":
            p.add_argument("--kind", choices=["I", "II", "both"], default="both")
            p.add_argument("--r-max", type=int, default=None)
        if name == "cross-check":
            p.add_argument("--h20", type=int)
            p.add_argument("--h11-minus", type=int)
            p.add_argument("--rho-plus", type=int)

    fp = sub.add_parser("formulas")
    fsub = fp.add_subparsers(dest="formula", required=True)
    e = fsub.add_parser("enriques", parents=[out])
    for flag in ("--r", "--a", "--alpha"):
        e.add_argument(flag, type=int, required=True)
    e.add_argument("--delta", type=int, default=0, help="sets both delta invariants")
    e.add_argument("--delta1", type=int)
    e.add_argument("--delta2", type=int)
    e.add_argument("--dimHminus", type=int, default=0)
    e.add_argument("--dimHcap", type=int, default=0)
    e.add_argument("--s-or", type=int)
    e.add_argument("--s-nor", type=int)
    e.add_argument("--liftings-real", action=argparse.BooleanOptionalAction, default=True)

    et = fsub.add_parser("etale", parents=[out])
    et.add_argument("--b1", type=int, required=True)
    et.add_argument("--h2", type=int, required=True)
    et.add_argument("--h2G", type=int, required=True)
    et.add_argument("--k-max", type=int, default=4)

    b = fsub.add_parser("brauer", parents=[out])
    for flag in ("--b1", "--b2", "--b2-plus", "--s", "--fixed-betti", "--h20", "--h11-minus", "--rho-plus"):
        b.add_argument(flag, type=int, required=True)
    b.add_argument("--h2", type=int, help="default: b2 + 2 b1")
    b.add_argument("--h2G", type=int)

    k = fsub.add_parser("kummer", parents=[out])
    k.add_argument("--h2-et", type=int, required=True)
    k.add_argument("--pic", type=int, help="dim Pic/2; default rho_plus + b1")
    k.add_argument("--rho-plus", type=int, default=0)
    k.add_argument("--b1", type=int, default=0)

    lf = fsub.add_parser("lefschetz", parents=[out])
    lf.add_argument("--b2-plus", type=int, required=True)
    lf.add_argument("--b2", type=int, required=True)

    bd = fsub.add_parser("bounds", parents=[out])
    bd.add_argument("--b", type=int, required=True)
    bd.add_argument("--epsilon", type=int, required=True)
    bd.add_argument("--s", type=int, required=True)
    bd.add_argument("--real-nonempty", action=argparse.BooleanOptionalAction, default=True)
    bd.add_argument("--strict", action="store_true")

    fx = sub.add_parser("fixtures", help="list built-in fixtures or print one as a complex file")
    fx.add_argument("name", nargs="?", choices=sorted(FIXTURES))
    fx.add_argument("--out")
    return parser


def run_command(argv: list[str]) -> tuple[str, int]:
    """Run one command; returns the rendered output and the exit status."""
    try:
        args = build_parser().parse_args(argv)
    except ParseError as exc:
        return json.dumps({"command": list(argv), "error": {"code": exc.code, "message": str(exc)}}, sort_keys=True), exc.exit_status
    if args.command == "fixtures":
        return cmd_fixtures(args)
    rep = Report(list(argv))
    fmt = args.format
    try:
        if args.command == "formulas":
            FORMULAS[args.formula](args, rep)
        else:
            ic, digest, depth = read_complex_file(args.path, subdivide=not args.no_subdivide)
            rep.input = {
                "sha256": digest,
                "vertices": ic.complex.vertex_count,
                "f_vector": list(ic.complex.f_vector),
                "subdivisions": depth,
            }
            if args.max_degree is not None and args.max_degree < 0:
                raise ParseError("--max-degree must be nonnegative")
            COMPLEX_COMMANDS[args.command](args, ic, rep)
    except EquivarError as exc:
        payload = rep.as_dict()
        payload["error"] = {"code": exc.code, "message": str(exc)}
        return render(payload, fmt), exc.exit_status
    return render(rep.as_dict(), fmt), rep.exit_status


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        text, status = run_command(argv)
    except Exception as exc:  # anything not mapped to a code is an internal failure
        text = json.dumps({"command": argv, "error": {"code": "internal", "message": repr(exc)}}, sort_keys=True)
        status = errors.EXIT_INVARIANT
    print(text)
    return status


def main_exit() -> None:
    sys.exit(main())
