"""Command-line surface: argparse subcommands that adapt library calls to JSON.

Every handler returns a ``CommandResult``; rendering and exit handling live
in ``main.py``. Exit codes share one space across subcommands.
"""

import argparse
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from config import Config
from src.models.corpus import CaseResult, InvalidCorpusError
from src.models.curve import InvalidCurveError, Multidegree, NodalCurve
from src.models.family import (
    FamilyIntersections,
    InvalidFamilyError,
    PushforwardPolynomial,
)
from src.models.rational import (
    RationalFormatError,
    format_rational,
    parse_int_list,
    parse_rational,
    parse_rational_list,
)
from src.models.singularity import ChainData, InvalidSingularityError
from src.models.torus import (
    FamilySection,
    InvalidTorusDataError,
    ProjectivePoint,
    TorusProblem,
)
from src.models.verdict import StabilityStatus
from src.services import chow_curves, hm_weights, quotient_sing, stability_energy
from src.services.chow_curves import ChowStabilityError, create_chow_service
from src.services.corpus import CommandOutcome, CorpusError, create_corpus_service
from src.services.curve_model import CurveModelError
from src.services.hm_weights import TorusWeightError
from src.services.quotient_sing import QuotientSingularityError
from src.services.stability_energy import StabilityEnergyError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_UNSTABLE = 3
EXIT_CORPUS = 4


class CliInputError(Exception):
    """Exception raised for unreadable files and malformed arguments."""

    pass


INPUT_ERRORS = (
    CliInputError,
    RationalFormatError,
    InvalidCurveError,
    InvalidSingularityError,
    InvalidFamilyError,
    InvalidTorusDataError,
    CurveModelError,
    ChowStabilityError,
    QuotientSingularityError,
    StabilityEnergyError,
    TorusWeightError,
)


@dataclass(frozen=True)
class CommandResult:
    title: str
    payload: Any
    exit_code: int = EXIT_OK
    kind: str = "payload"
    cases: tuple[CaseResult, ...] = field(default_factory=tuple)


# Argument readers


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise CliInputError(f"Cannot read JSON from {path}: {e}")


def _load_curve(path: str) -> NodalCurve:
    return NodalCurve.from_json(_read_json(path))


def _degrees(curve: NodalCurve, text: str) -> Multidegree:
    return Multidegree.from_list(curve, parse_rational_list(text))


def _characters(text: str) -> TorusProblem:
    """"-1,1" lists rank-one characters; "1,0;0,1;-1,-1" separates vectors by ";"."""
    if ";" in text:
        vectors = [parse_int_list(item) for item in text.split(";") if item.strip()]
    else:
        vectors = [[value] for value in parse_int_list(text)]
    return TorusProblem(tuple(tuple(vector) for vector in vectors))


def _monomials(text: str) -> list[list[int]]:
    return [parse_int_list(item) for item in text.split(";") if item.strip()]


def _chain(text: str) -> ChainData:
    return ChainData(tuple(parse_int_list(text)))


def _family(path: str) -> tuple[FamilyIntersections, dict]:
    data = _read_json(path)
    return FamilyIntersections.from_json(data), data


def _genus(args: argparse.Namespace, data: dict) -> int:
    genus = args.genus if args.genus is not None else data.get("genus")
    if genus is None:
        raise CliInputError("A curve family needs a genus (--genus or \"genus\" key)")
    return int(genus)


def _pushforward(f: FamilyIntersections, data: dict) -> PushforwardPolynomial:
    if "pushforward" in data:
        return PushforwardPolynomial(
            tuple(parse_rational(c) for c in data["pushforward"])
        )
    return stability_energy.family_pushforward(f, data.get("deg_lambda", 0))


def _section(path: str) -> tuple[TorusProblem, FamilySection]:
    return FamilySection.from_json(_read_json(path))


def _verdict_exit(status: StabilityStatus) -> int:
    return EXIT_OK if status.is_semistable else EXIT_UNSTABLE


# curve


def _curve_check(args: argparse.Namespace) -> CommandResult:
    curve = _load_curve(args.curve)
    threshold = None if args.threshold is None else parse_rational(args.threshold)
    verdict = create_chow_service(args.parallel).check(
        curve,
        _degrees(curve, args.degrees),
        assert_embedding=args.assert_embedding,
        threshold=threshold,
    )
    return CommandResult(
        "Chow verdict",
        verdict.to_json(curve),
        _verdict_exit(verdict.status),
        kind="verdict",
    )


def _curve_asymptotic(args: argparse.Namespace) -> CommandResult:
    curve = _load_curve(args.curve)
    verdict = create_chow_service(args.parallel).asymptotic(curve)
    return CommandResult(
        "Asymptotic Chow verdict",
        verdict.to_json(curve),
        _verdict_exit(verdict.status),
        kind="verdict",
    )


def _curve_twist_search(args: argparse.Namespace) -> CommandResult:
    curve = _load_curve(args.curve)
    start = None if args.degrees is None else _degrees(curve, args.degrees)
    box = Config.TWIST_BOX if args.box is None else args.box
    result = create_chow_service(args.parallel).twist_search(
        curve, parse_rational(args.r), box, start=start
    )
    if result is None:
        return CommandResult(
            "Twist search", {"found": False, "box": box}, EXIT_UNSTABLE
        )
    payload = {
        "found": True,
        "box": box,
        "twist": {cid: result.b[cid] for cid in curve.component_ids},
        "verdict": result.verdict.to_json(curve),
    }
    return CommandResult("Twist search", payload)


def _curve_twist_constraints(args: argparse.Namespace) -> CommandResult:
    curve = _load_curve(args.curve)
    constraints = create_chow_service(args.parallel).constraints(
        curve, _degrees(curve, args.degrees)
    )
    payload = {
        "constraints": [
            {
                "subcurve": curve.sorted_members(item.subcurve),
                "coefficients": item.coefficients,
                "offset": format_rational(item.offset),
                "bound": format_rational(item.bound),
            }
            for item in constraints
        ]
    }
    return CommandResult("Twist constraints", payload)


def _curve_ph_threshold(args: argparse.Namespace) -> CommandResult:
    if args.genus is not None:
        report = chow_curves.hyper_threshold(args.genus)
    elif args.g1 is not None and args.g2 is not None:
        report = chow_curves.ph_threshold(args.g1, args.g2)
    else:
        raise CliInputError("Give either --g1 and --g2, or --genus")
    return CommandResult("Instability threshold", report.to_json())


def _curve_ph_scan(args: argparse.Namespace) -> CommandResult:
    totals = parse_rational_list(args.totals)
    scan = chow_curves.ph_scan(args.g1, args.g2, totals)
    payload = {
        "threshold": chow_curves.ph_threshold(args.g1, args.g2).to_json(),
        "scan": [
            {
                "total": format_rational(total),
                "status": verdict.status.value,
                "worst_margin": format_rational(verdict.worst_margin),
            }
            for total, verdict in scan
        ],
    }
    return CommandResult("Weight scan", payload)


def _curve_destabilizable(args: argparse.Namespace) -> CommandResult:
    curve = _load_curve(args.curve)
    found = create_chow_service(args.parallel).destabilizable(curve)
    payload = {"subcurves": [curve.sorted_members(subcurve) for subcurve in found]}
    return CommandResult("Weight-destabilizable subcurves", payload)


# sing


def _sing_hj(args: argparse.Namespace) -> CommandResult:
    t = quotient_sing.parse_quotient_type(args.m, args.q)
    chain = quotient_sing.hj_expand(t)
    return CommandResult(
        f"Chain of {t}", {"m": t.m, "q": t.q, "chain": list(chain.entries)}
    )


def _sing_contract(args: argparse.Namespace) -> CommandResult:
    chain = _chain(args.chain)
    t = quotient_sing.hj_contract(chain)
    return CommandResult(
        f"Type of {chain}", {"chain": list(chain.entries), "m": t.m, "q": t.q}
    )


def _sing_dual(args: argparse.Namespace) -> CommandResult:
    t = quotient_sing.parse_quotient_type(args.m, args.q)
    dual = quotient_sing.parse_quotient_type(t.m, quotient_sing.dual_weight(t))
    payload = {
        "m": t.m,
        "q": t.q,
        "dual_q": dual.q,
        "chain": list(quotient_sing.hj_expand(t).entries),
        "dual_chain": list(quotient_sing.hj_expand(dual).entries),
    }
    return CommandResult(f"Dual of {t}", payload)


def _sing_mult(args: argparse.Namespace) -> CommandResult:
    chain = _chain(args.chain)
    payload = {
        "chain": list(chain.entries),
        "multiplicity": quotient_sing.multiplicity(chain),
    }
    return CommandResult(f"Multiplicity of {chain}", payload)


def _sing_t_classify(args: argparse.Namespace) -> CommandResult:
    t = quotient_sing.parse_quotient_type(args.m, args.q)
    include = not args.no_du_val
    decomposition = quotient_sing.t_recognize(t, include_du_val=include)
    payload = {
        "m": t.m,
        "q": t.q,
        "class_t": decomposition is not None,
        "du_val": t.q + 1 == t.m,
        "decomposition": None if decomposition is None else decomposition.to_json(),
    }
    return CommandResult(f"Class T test for {t}", payload)


def _sing_t_chain(args: argparse.Namespace) -> CommandResult:
    chain = _chain(args.chain)
    reduction = quotient_sing.t_chain_reduce(chain, include_du_val=args.du_val)
    payload = {
        "chain": list(chain.entries),
        "class_t": reduction.is_t,
        "du_val": reduction.du_val,
        "steps": [list(step) for step in reduction.steps],
    }
    return CommandResult(f"T-chain reduction of {chain}", payload)


def _sing_mumford(args: argparse.Namespace) -> CommandResult:
    mults = parse_int_list(args.mults)
    violators = quotient_sing.mumford_check(args.dim, mults)
    payload = {
        "dim": args.dim,
        "bound": quotient_sing.mumford_bound(args.dim),
        "mults": mults,
        "violators": violators,
    }
    return CommandResult(
        "Multiplicity bound", payload, EXIT_UNSTABLE if violators else EXIT_OK
    )


def _sing_worder(args: argparse.Namespace) -> CommandResult:
    weights = parse_int_list(args.weights)
    order = quotient_sing.weighted_order(_monomials(args.monomials), weights)
    return CommandResult("Weighted order", {"weights": weights, "order": order})


def _sing_discrepancy(args: argparse.Namespace) -> CommandResult:
    weights = parse_int_list(args.weights)
    payload = {
        "weights": weights,
        "discrepancy": quotient_sing.wb_discrepancy(weights),
    }
    return CommandResult("Weighted blowup discrepancy", payload)


def _sing_kollar(args: argparse.Namespace) -> CommandResult:
    report = quotient_sing.kollar_family_report(args.m)
    return CommandResult(f"Hypersurface family, m = {args.m}", report.to_json())


def _sing_lee_park(args: argparse.Namespace) -> CommandResult:
    reports = quotient_sing.lee_park_report()
    payload = {
        "chains": [report.to_json() for report in reports],
        "mults": [report.multiplicity for report in reports],
        "violators": [
            index for index, report in enumerate(reports) if report.violates_mumford
        ],
    }
    return CommandResult("Five-singularity surface", payload)


# df / height


def _df_compute(args: argparse.Namespace) -> CommandResult:
    f, data = _family(args.input_path)
    if args.scale is not None:
        f = f.scaled(parse_rational(args.scale))
    payload = {
        "df": format_rational(stability_energy.df_invariant(f)),
        "mu": format_rational(stability_energy.mu_slope(f)),
        "linearization_constant": format_rational(
            stability_energy.linearization_constant(f.n)
        ),
    }
    if args.N is not None:
        degdet = parse_rational(args.degdet if args.degdet is not None else 0)
        payload["height"] = format_rational(
            stability_energy.geometric_height(f, args.N, degdet)
        )
    return CommandResult("Donaldson–Futaki invariant", payload)


def _height_poly(args: argparse.Namespace) -> CommandResult:
    f, data = _family(args.input_path)
    pushforward = _pushforward(f, data)
    height = stability_energy.height_polynomial(f, _genus(args, data), pushforward)
    payload = {"coefficients": height.to_json(), "pushforward": pushforward.to_json()}
    if args.at is not None:
        payload["value"] = format_rational(height.evaluate(parse_rational(args.at)))
    return CommandResult("Height polynomial h(k)", payload)


def _height_check_leading(args: argparse.Namespace) -> CommandResult:
    f, data = _family(args.input_path)
    report = stability_energy.check_leading(
        f, _genus(args, data), _pushforward(f, data)
    )
    return CommandResult(
        "Leading-term identity",
        report.to_json(),
        EXIT_OK if report.holds else EXIT_UNSTABLE,
    )


# hm / family


def _hm_point(problem: TorusProblem, args: argparse.Namespace) -> ProjectivePoint:
    if args.point is not None:
        return ProjectivePoint(tuple(parse_rational_list(args.point)))
    if args.support is not None:
        return ProjectivePoint.from_support(problem.size, parse_int_list(args.support))
    raise CliInputError("Give the point as --point or --support")


def _hm_weight(args: argparse.Namespace) -> CommandResult:
    problem = _characters(args.chars)
    z = _hm_point(problem, args)
    lam = parse_int_list(args.lam)
    payload = {
        "support": list(z.support),
        "lambda": lam,
        "weight": hm_weights.one_ps_weight(problem, z, lam),
    }
    return CommandResult("Hilbert–Mumford weight", payload)


def _hm_semistable(args: argparse.Namespace) -> CommandResult:
    problem = _characters(args.chars)
    z = _hm_point(problem, args)
    result = hm_weights.is_semistable(problem, z)
    payload = {"support": list(z.support), **result.to_json()}
    if args.lattice_check:
        payload["lattice_agrees"] = (
            hm_weights.bounded_lattice_verdict(problem, z) == result.semistable
        )
    return CommandResult(
        "Hull membership", payload, EXIT_OK if result.semistable else EXIT_UNSTABLE
    )


def _family_height(args: argparse.Namespace) -> CommandResult:
    problem, section = _section(args.input_path)
    reduced = hm_weights.reduce_section(problem, section)
    payload = {
        "height": hm_weights.section_height(problem, section),
        "degree": reduced.degree,
        "removed_degree": reduced.removed_degree,
        "infinity_order": reduced.infinity_order,
        "twists": list(reduced.twists),
    }
    return CommandResult("Section height", payload)


def _family_profile(args: argparse.Namespace) -> CommandResult:
    problem, section = _section(args.input_path)
    profile = hm_weights.fiber_profile(problem, section)
    payload = {
        "height": hm_weights.section_height(problem, section),
        "fibers": [fiber.to_json() for fiber in profile],
        "has_semistable_fiber": any(fiber.semistable for fiber in profile),
    }
    return CommandResult("Fiber profile", payload)


def _family_ch0(args: argparse.Namespace) -> CommandResult:
    seed = args.seed if args.trial_seed is None else args.trial_seed
    trials = Config.CH0_TRIALS if args.trials is None else args.trials
    report = hm_weights.ch0_harness(seed, trials, workers=args.parallel)
    return CommandResult(
        "Height harness",
        report.to_json(),
        EXIT_OK if report.passed else EXIT_UNSTABLE,
    )


# corpus


def _corpus_outcome(argv: Sequence[str]) -> CommandOutcome:
    """Run one corpus command in-process; input errors become exit code 2."""
    if argv and argv[0] == "corpus":
        raise CorpusError("Corpus commands cannot run other corpus commands")
    try:
        result = execute(list(argv))
    except INPUT_ERRORS as e:
        return CommandOutcome({"error": str(e)}, EXIT_INPUT)
    except SystemExit as e:
        return CommandOutcome(
            {"error": f"argument parsing failed ({e.code})"}, EXIT_INPUT
        )
    return CommandOutcome(result.payload, result.exit_code)


def _corpus_run(args: argparse.Namespace) -> CommandResult:
    service = create_corpus_service(args.corpus)
    try:
        results = service.run(_corpus_outcome, only=args.case)
    except InvalidCorpusError as e:
        raise CorpusError(str(e))
    payload = {
        "cases": [result.to_json() for result in results],
        "passed": sum(1 for result in results if result.passed),
        "failed": sum(1 for result in results if not result.passed),
    }
    failed = payload["failed"] > 0
    return CommandResult(
        "Corpus",
        payload,
        EXIT_CORPUS if failed else EXIT_OK,
        kind="corpus",
        cases=tuple(results),
    )


# parser


def _add(
    subparsers, name: str, handler: Callable, summary: str
) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=summary)
    parser.set_defaults(handler=handler)
    return parser


def _add_input(parser: argparse.ArgumentParser, summary: str) -> None:
    parser.add_argument(
        "--json",
        "--input",
        dest="input_path",
        required=True,
        metavar="FILE",
        help=summary,
    )


def _build_curve(subparsers) -> None:
    curve = subparsers.add_parser("curve", help="Chow stability of nodal curves")
    commands = curve.add_subparsers(dest="action", required=True)

    check = _add(commands, "check", _curve_check, "subcurve check for a polarization")
    check.add_argument("--curve", required=True, metavar="FILE")
    check.add_argument("--degrees", required=True, help='e.g. "3,1"')
    check.add_argument("--assert-embedding", action="store_true")
    check.add_argument("--threshold", help="low-degree caveat threshold")

    asymptotic = _add(
        commands, "asymptotic", _curve_asymptotic, "verdict for ω^r(r a·x), r ≫ 1"
    )
    asymptotic.add_argument("--curve", required=True, metavar="FILE")

    search = _add(
        commands, "twist-search", _curve_twist_search, "semistabilizing twist"
    )
    search.add_argument("--curve", required=True, metavar="FILE")
    search.add_argument("-r", default="1", help="power of ω(a·x), may be p/q")
    search.add_argument("--box", type=int, help="sup-norm search radius")
    search.add_argument(
        "--degrees", help="starting multidegree instead of ω^r(r a·x)"
    )

    constraints = _add(
        commands, "twist-constraints", _curve_twist_constraints, "linear twist system"
    )
    constraints.add_argument("--curve", required=True, metavar="FILE")
    constraints.add_argument("--degrees", required=True)

    threshold = _add(
        commands, "ph-threshold", _curve_ph_threshold, "one-point union threshold"
    )
    threshold.add_argument("--g1", type=int)
    threshold.add_argument("--g2", type=int)
    threshold.add_argument("--genus", type=int, help="genus-g form with g2 = 1")

    scan = _add(commands, "ph-scan", _curve_ph_scan, "verdicts over total weights")
    scan.add_argument("--g1", type=int, required=True)
    scan.add_argument("--g2", type=int, required=True)
    scan.add_argument("--totals", required=True, help='e.g. "3/2,2,5/2"')

    destabilizable = _add(
        commands,
        "destabilizable",
        _curve_destabilizable,
        "subcurves with deg ω > ℓ_Y",
    )
    destabilizable.add_argument("--curve", required=True, metavar="FILE")


def _build_sing(subparsers) -> None:
    sing = subparsers.add_parser("sing", help="cyclic quotient singularities")
    commands = sing.add_subparsers(dest="action", required=True)

    for name, handler, summary in (
        ("hj", _sing_hj, "Hirzebruch–Jung chain of 1/m(1,q)"),
        ("dual", _sing_dual, "dual weight and reversed chain"),
        ("t-classify", _sing_t_classify, "class T decomposition"),
    ):
        parser = _add(commands, name, handler, summary)
        parser.add_argument("-m", type=int, required=True)
        parser.add_argument("-q", type=int, required=True)
        if name == "t-classify":
            parser.add_argument("--no-du-val", action="store_true")

    for name, handler, summary in (
        ("contract", _sing_contract, "type of a chain"),
        ("mult", _sing_mult, "multiplicity of the fundamental cycle"),
        ("t-chain", _sing_t_chain, "reverse T-moves down to a base chain"),
    ):
        parser = _add(commands, name, handler, summary)
        parser.add_argument("--chain", required=True, help='e.g. "7,2,2,2,3,2,2,2,2"')
        if name == "t-chain":
            parser.add_argument("--du-val", action="store_true")

    mumford = _add(commands, "mumford", _sing_mumford, "multiplicity ≤ (dim+1)!")
    mumford.add_argument("--dim", type=int, required=True)
    mumford.add_argument("--mults", required=True)

    worder = _add(commands, "worder", _sing_worder, "weighted order of a polynomial")
    worder.add_argument("--weights", required=True)
    worder.add_argument("--monomials", required=True, help='"1,1,4,0;0,6,0,0;…"')

    discrepancy = _add(
        commands, "discrepancy", _sing_discrepancy, "weighted blowup discrepancy"
    )
    discrepancy.add_argument("--weights", required=True)

    kollar = _add(commands, "kollar", _sing_kollar, "degenerating hypersurface family")
    kollar.add_argument("-m", type=int, required=True)

    _add(commands, "lee-park", _sing_lee_park, "the five-singularity surface")


def _build_energy(subparsers) -> None:
    df = subparsers.add_parser("df", help="Donaldson–Futaki invariants")
    df_commands = df.add_subparsers(dest="action", required=True)
    compute = _add(df_commands, "compute", _df_compute, "DF invariant of a family")
    _add_input(compute, "family intersection numbers")
    compute.add_argument("--scale", help="replace L by tL")
    compute.add_argument("--N", type=int, help="also compute the height for P^N")
    compute.add_argument("--degdet", help="deg det of the pushforward")

    height = subparsers.add_parser(
        "height", help="height polynomials of curve families"
    )
    height_commands = height.add_subparsers(dest="action", required=True)
    for name, handler, summary in (
        ("poly", _height_poly, "h(k) as exact coefficients"),
        ("check-leading", _height_check_leading, "h(k) = (d/2)·DF·k² + O(k)"),
    ):
        parser = _add(height_commands, name, handler, summary)
        _add_input(parser, "family intersection numbers")
        parser.add_argument("--genus", type=int)
        if name == "poly":
            parser.add_argument("--at", help="also evaluate h at this k")


def _build_torus(subparsers) -> None:
    hm = subparsers.add_parser("hm", help="Hilbert–Mumford weights of torus actions")
    hm_commands = hm.add_subparsers(dest="action", required=True)
    for name, handler, summary in (
        ("weight", _hm_weight, "w_z(λ)"),
        ("semistable", _hm_semistable, "exact hull membership"),
    ):
        parser = _add(hm_commands, name, handler, summary)
        parser.add_argument("--chars", required=True, help='"-1,1" or "1,0;0,1;-1,-1"')
        parser.add_argument("--point", help="homogeneous coordinates")
        parser.add_argument("--support", help="indices of nonzero coordinates")
        if name == "weight":
            parser.add_argument("--lambda", dest="lam", required=True)
        else:
            parser.add_argument(
                "--lattice-check",
                action="store_true",
                help="compare with a brute-force search over a bounded box of λ",
            )

    family = subparsers.add_parser("family", help="sections of split bundles over P^1")
    family_commands = family.add_subparsers(dest="action", required=True)
    for name, handler, summary in (
        ("height", _family_height, "height of a section"),
        ("profile", _family_profile, "semistability of every special fiber"),
    ):
        parser = _add(family_commands, name, handler, summary)
        _add_input(parser, "torus problem and section")
    ch0 = _add(family_commands, "ch0", _family_ch0, "random height harness")
    ch0.add_argument("--trials", type=int)
    ch0.add_argument("--seed", dest="trial_seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chowstab",
        description="Exact GIT stability checks for curves, families "
        "and singularities.",
    )
    parser.add_argument(
        "--json", dest="json_output", action="store_true", help="canonical JSON output"
    )
    parser.add_argument(
        "--parallel",
        type=int,
        default=Config.PARALLEL,
        metavar="N",
        help="worker count",
    )
    parser.add_argument(
        "--seed", type=int, default=Config.DEFAULT_SEED, metavar="S", help="random seed"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    _build_curve(subparsers)
    _build_sing(subparsers)
    _build_energy(subparsers)
    _build_torus(subparsers)

    corpus = subparsers.add_parser("corpus", help="bundled corpus of stated numbers")
    corpus_commands = corpus.add_subparsers(dest="action", required=True)
    run = _add(corpus_commands, "run", _corpus_run, "run every corpus case")
    run.add_argument("--case", help="run a single case by id")
    run.add_argument("--corpus", type=Path, help="corpus file to run instead")
    return parser


def dispatch(args: argparse.Namespace) -> CommandResult:
    if args.parallel < 1:
        raise CliInputError(f"--parallel must be positive, got {args.parallel}")
    logger.info(f"Running {args.command} {args.action}")
    return args.handler(args)


def execute(argv: Optional[Sequence[str]] = None) -> CommandResult:
    return dispatch(build_parser().parse_args(argv))
