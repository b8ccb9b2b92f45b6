#!/usr/bin/env python3
"""
gfemod CLI - Local and modular computations for x^2 + y^3 = z^p

Every subcommand prints a CommandResult: a status line followed by the
payload, or the bare JSON document with --json. Both modes carry the same
data; JSON keys are sorted and rationals are written as "num/den".

    gfe classify --a 3 --b -2
    gfe twistplan --p 11
    gfe verify-paper --level fast --output outputs/acceptance.json
"""

import argparse
import dataclasses
import enum
import json
import logging
import sys
import typing as tp
from pathlib import Path

from pydantic import BaseModel, Field
from sympy import Basic, Rational, oo

from .core.acceptance import LEVELS, run_acceptance
from .core.errors import GfeError
from .core.exact_arith import PadicElement
from .core.frey_local import classify, frey_realization, search_solutions, verify_known_solutions
from .core.galois_matrix import (
    det_pattern,
    embed_Dic12,
    embed_H8,
    ko_symplectic,
    normalizer_and_centralizer,
    symplectic_type_of_matrix,
    tate_equivariance_check,
    tate_module_matrix,
)
from .core.jdisk import CAL_D
from .core.registry import default_registry, reference_curve
from .core.settings import GfeSettings, override_settings
from .core.twist_planner import derive_twist_table, nominus_table, twist_table
from .core.x011_padic import cusp_branch, disk_report, x011_data, x011_torsion, xns_twist_point_search
from .core.x013 import local_solubility, x013_atkin_lehner, x013_jmap

logger = logging.getLogger(__name__)

# argparse exits with 2 on usage errors
EXIT_OK, EXIT_FAILURE = 0, 1


class Status(str, enum.Enum):
    OK = "Ok"
    VIOLATION = "Violation"
    ERROR = "Error"


class CommandResult(BaseModel):
    """Outcome of one subcommand."""

    command: str
    status: Status
    payload: tp.Any = None
    citations: tp.List[str] = Field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.status is Status.OK else EXIT_FAILURE

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2)


def encode(value: tp.Any) -> tp.Any:
    """Canonical JSON form: rationals as "num/den", p-adic elements as dicts."""
    if value is oo or value is None or isinstance(value, (bool, str)):
        return "oo" if value is oo else value
    if isinstance(value, int):
        return value
    if isinstance(value, Rational):
        return str(value)
    if isinstance(value, PadicElement):
        return value.to_json()
    if isinstance(value, Basic):
        return str(value)
    if hasattr(value, "to_json"):
        return encode(value.to_json())
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if dataclasses.is_dataclass(value):
        return encode(dataclasses.asdict(value))
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [encode(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    return str(value)


def _rational(text: str) -> tp.Any:
    if text.lower() in ("oo", "inf", "infinity"):
        return oo
    try:
        return Rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _coefficients(text: str) -> tp.List[Rational]:
    try:
        return [Rational(c) for c in text.split(",") if c.strip()]
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of rationals: {text!r}") from exc


class GfeCLI:
    """Dispatches parsed arguments to the core layer."""

    def __init__(self, settings: GfeSettings):
        self.settings = settings

    def classify(self, args) -> CommandResult:
        result = classify(args.a, args.b)
        ok = result.curve is not None
        return CommandResult(
            command="classify",
            status=Status.OK if ok else Status.VIOLATION,
            payload=encode(result),
            citations=["2-adic table", "3-adic table", "curve matrix"],
        )

    def search(self, args) -> CommandResult:
        found = search_solutions(args.p, args.bound, self.settings)
        return CommandResult(command="search", status=Status.OK, payload=encode(found), citations=["exhaustive search"])

    def verify_known(self, args) -> CommandResult:
        report = verify_known_solutions()
        return CommandResult(
            command="verify-known",
            status=Status.OK if report.all_hold else Status.VIOLATION,
            payload=encode(report),
            citations=["known primitive solutions"],
        )

    def twistplan(self, args) -> CommandResult:
        static = twist_table(args.p)
        derived = derive_twist_table(args.p)
        payload = {"p": args.p, "table": encode(static), "derived": encode(derived)}
        if args.nominus:
            payload["nominus"] = nominus_table(args.p)
        agrees = static == derived
        return CommandResult(
            command="twistplan",
            status=Status.OK if agrees else Status.VIOLATION,
            payload=payload,
            citations=["twists by p mod 24"],
        )

    def glgroup(self, args) -> CommandResult:
        H = embed_H8(args.p) if args.group == "H8" else embed_Dic12(args.p)
        data = normalizer_and_centralizer(H, self.settings)
        pattern = det_pattern(H, self.settings)
        payload = {
            "group": args.group,
            "p": args.p,
            "order": H.order,
            "order_census": H.order_census(),
            "normalizer_order": len(data.normalizer),
            "centralizer_order": len(data.centralizer),
            "quotient_order": data.quotient_order,
            "det_pattern": pattern.kind,
            "square_index": pattern.index,
            "square_quotient_order": pattern.square_quotient_order,
        }
        return CommandResult(command="glgroup", status=Status.OK, payload=encode(payload), citations=["normalizers"])

    def tate_module(self, args) -> CommandResult:
        params = tate_module_matrix(args.ell, args.p, args.e1, args.e2)
        equivariant = tate_equivariance_check(params)
        kind = symplectic_type_of_matrix(params.module_map)
        criterion = ko_symplectic(args.e1, args.e2, args.p)
        payload = {
            "ell": args.ell,
            "p": args.p,
            "e1": args.e1,
            "e2": args.e2,
            "n": int(params.n),
            "m": int(params.m),
            "equivariant": equivariant,
            "symplectic_type": kind.value,
            "criterion": criterion.value,
        }
        ok = equivariant and kind is criterion
        return CommandResult(
            command="tate-module",
            status=Status.OK if ok else Status.VIOLATION,
            payload=payload,
            citations=["Tate-curve module maps"],
        )

    def x011(self, args) -> CommandResult:
        data = x011_data()
        points = [{"point": str(P), "j": encode(data.j_value(P))} for P in x011_torsion()]
        payload: tp.Dict[str, tp.Any] = {"points": points, "cusp_branch": encode(cusp_branch(args.terms))}
        if args.disk:
            payload["disk"] = encode(disk_report(args.disk, precision=self.settings.precision))
        return CommandResult(command="x011", status=Status.OK, payload=payload, citations=["X0(11) j-map"])

    def xns_search(self, args) -> CommandResult:
        found = xns_twist_point_search(args.d, args.height, self.settings)
        return CommandResult(
            command="xns-search",
            status=Status.OK,
            payload={"d": args.d, "height": args.height, "x": encode(found)},
            citations=["points on the twists of X_ns(11)"],
        )

    def localsolve(self, args) -> CommandResult:
        soluble = {str(ell): local_solubility(args.coeffs, ell) for ell in args.ell}
        return CommandResult(
            command="localsolve",
            status=Status.OK,
            payload={"f": encode(args.coeffs), "soluble": soluble},
            citations=["local solubility"],
        )

    def x013_j(self, args) -> CommandResult:
        payload = {"v": encode(args.v), "j": encode(x013_jmap(args.v)), "w13": encode(x013_atkin_lehner(args.v))}
        return CommandResult(command="x013-j", status=Status.OK, payload=payload, citations=["X0(13) j-map"])

    def registry(self, args) -> CommandResult:
        if args.label:
            payload = reference_curve(args.label).model_dump(mode="json")
        else:
            payload = json.loads(default_registry().to_json())
        return CommandResult(command="registry", status=Status.OK, payload=payload, citations=["reference curves"])

    def realize(self, args) -> CommandResult:
        realization = frey_realization(args.label, args.ell)
        return CommandResult(
            command="realize",
            status=Status.OK,
            payload={"label": args.label, "ell": args.ell, "realization": encode(realization)},
            citations=["Frey realizations"],
        )

    def verify_paper(self, args) -> CommandResult:
        report = run_acceptance(args.level, args.only, self.settings)
        payload = encode(report)
        if args.output:
            path = Path(args.output)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        return CommandResult(
            command="verify-paper",
            status=Status.OK if report.passed else Status.VIOLATION,
            payload=payload,
            citations=[o.anchor for o in report.outcomes],
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfe", description="Computations for x^2 + y^3 = z^p")
    parser.add_argument("--json", action="store_true", help="print only the JSON document")
    parser.add_argument("--threads", type=int, help="worker threads for searches")
    parser.add_argument("--precision", type=int, help="default ell-adic precision")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="local rows and matching curve of (a, b)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = sub.add_parser("search", help="primitive solutions up to a bound")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--bound", type=int, default=100)

    sub.add_parser("verify-known", help="check the known primitive solutions")

    p = sub.add_parser("twistplan", help="surviving twists for a prime p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--nominus", action="store_true", help="also list twists before CM elimination")

    p = sub.add_parser("glgroup", help="normalizer data of H8 or Dic12 in GL2(F_p)")
    p.add_argument("--group", choices=("H8", "Dic12"), required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("tate-module", help="module map between two Tate curves")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e1", type=int, required=True)
    p.add_argument("--e2", type=int, required=True)

    p = sub.add_parser("x011", help="rational points and branches of X0(11)")
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--disk", choices=list(CAL_D), help="report on one named 2-adic disk")

    p = sub.add_parser("xns-search", help="points on a twist of X_ns(11)")
    p.add_argument("--d", type=int, choices=(-1, -3), required=True)
    p.add_argument("--height", type=int, default=1000)

    p = sub.add_parser("localsolve", help="Q_ell-points on y^2 = f(x)")
    p.add_argument("--coeffs", type=_coefficients, required=True, help="f from the constant term up, comma separated")
    p.add_argument("--ell", type=int, nargs="+", default=[2, 3, 13])

    p = sub.add_parser("x013-j", help="j-invariant and Atkin-Lehner image on X0(13)")
    p.add_argument("--v", type=_rational, required=True)

    p = sub.add_parser("registry", help="reference curves as JSON")
    p.add_argument("--label")

    p = sub.add_parser("realize", help="realize a reference curve as a local Frey curve")
    p.add_argument("--label", required=True)
    p.add_argument("--ell", type=int, choices=(2, 3), required=True)

    p = sub.add_parser("verify-paper", help="run the acceptance checks")
    p.add_argument("--level", choices=LEVELS, default="fast")
    p.add_argument("--only", nargs="+", help="run only the named checks")
    p.add_argument("--output", help="also write the report JSON here")
    return parser


_HANDLERS = {
    "classify": GfeCLI.classify,
    "search": GfeCLI.search,
    "verify-known": GfeCLI.verify_known,
    "twistplan": GfeCLI.twistplan,
    "glgroup": GfeCLI.glgroup,
    "tate-module": GfeCLI.tate_module,
    "x011": GfeCLI.x011,
    "xns-search": GfeCLI.xns_search,
    "localsolve": GfeCLI.localsolve,
    "x013-j": GfeCLI.x013_j,
    "registry": GfeCLI.registry,
    "realize": GfeCLI.realize,
    "verify-paper": GfeCLI.verify_paper,
}


def run(argv: tp.Optional[tp.Sequence[str]] = None) -> tp.Tuple[CommandResult, bool]:
    """
    Parse argv and run the subcommand.

    Returns:
        The result and whether --json was given

    Raises:
        SystemExit: with code 2 on a usage error
    """
    args = build_parser().parse_args(argv)
    try:
        settings = override_settings(precision=args.precision, threads=args.threads, log_level=args.log_level)
    except GfeError as exc:
        return CommandResult(command=args.command, status=Status.ERROR, payload={"error": str(exc)}), args.json
    logging.basicConfig(
        level=settings.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    cli = GfeCLI(settings)
    try:
        result = _HANDLERS[args.command](cli, args)
    except GfeError as exc:
        logger.debug(f"{args.command} failed", exc_info=True)
        payload = {"error": str(exc), "type": type(exc).__name__}
        report = getattr(exc, "report", None)
        if report is not None:
            payload["report"] = encode(report)
        result = CommandResult(command=args.command, status=Status.ERROR, payload=payload)
    return result, args.json


def main(argv: tp.Optional[tp.Sequence[str]] = None) -> int:
    """Entry point for the CLI."""
    result, as_json = run(argv)
    if as_json:
        print(result.to_json())
        return result.exit_code
    mark = "✅" if result.status is Status.OK else "❌"
    print(f"{mark} {result.command}: {result.status.value}")
    for citation in result.citations:
        print(f"   • {citation}")
    print(json.dumps(result.model_dump(mode="json")["payload"], sort_keys=True, indent=2))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
