"""Command-line front end: evaluate single states, scan parameter grids,
run the oracle cross-check suite.

Exit codes: 0 success, 2 invalid input, 3 numeric-domain failure, 4 I/O
error, 5 verification tolerance breach.  Machine output goes to stdout as
JSON (or to ``--out`` as CSV for scans); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from . import bounds as bounds_mod
from . import crosscheck, realignment, witness
from .errors import CVEntangleError, InvalidArgumentError
from .fock import coherent_mixture_fock, witness_fock
from .states import (
    CoherentMixture,
    PhotonAddedSqueezedThermal,
    TwoModeStandardForm,
    TwoTwoFamilyParams,
    parse_state_descriptor,
    state_descriptor,
)
from .symplectic import CovarianceMatrix

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERIC = 3
EXIT_IO = 4
EXIT_VERIFY = 5

WORKERS_ENV = "CV_ENTANGLE_WORKERS"

QUANTITIES = ("optimal_witness", "witness01", "swap", "realignment_norm", "classify", "bounds")

_FAMILY_AXES = {
    "standard2": {"a", "b", "c1", "c2"},
    "two_two": {"a", "b", "c"},
    "photon_added_sts": {"n", "r"},
    "coherent_mixture": {"p"},
}


def _witness01(state, order: int) -> float:
    if isinstance(state, TwoModeStandardForm):
        return witness.witness_expectation_gaussian(state, witness.WitnessParams(0.0, 1.0))
    if isinstance(state, PhotonAddedSqueezedThermal):
        return witness.witness_photon_added_closed(state.n, state.r)
    if isinstance(state, CovarianceMatrix):
        if state.modes != 2:
            raise InvalidArgumentError("witness01 requires a two-mode state")
        from .states import WignerSpec

        return witness.witness_expectation_wigner(
            WignerSpec(covariance=state),
            witness.WitnessParams(0.0, 1.0),
            witness.QuadratureConfig(order=order),
        )
    raise InvalidArgumentError(
        f"witness01 is not available for family {type(state).__name__}"
    )


def _swap(state, order: int, cutoff: int) -> float:
    if isinstance(state, CoherentMixture):
        return witness.swap_expectation_coherent_mixture(state.p, state.alpha1, state.alpha2)
    if isinstance(state, TwoModeStandardForm):
        return witness.swap_expectation(state.wigner(), witness.QuadratureConfig(order=order))
    if isinstance(state, PhotonAddedSqueezedThermal):
        return witness.swap_expectation(state.wigner(), witness.QuadratureConfig(order=order))
    if isinstance(state, CovarianceMatrix):
        if state.modes != 2:
            raise InvalidArgumentError("swap requires a two-mode state")
        from .states import WignerSpec

        return witness.swap_expectation(
            WignerSpec(covariance=state), witness.QuadratureConfig(order=order)
        )
    raise InvalidArgumentError(f"swap is not available for family {type(state).__name__}")


def evaluate_quantity(state, quantity: str, order: int = 80, cutoff: int = 25) -> dict:
    """Route one state/quantity pair to the matching engine; returns the JSON record."""
    record: dict = {"state": state_descriptor(state), "quantity": quantity}
    if quantity == "optimal_witness":
        if not isinstance(state, TwoModeStandardForm):
            raise InvalidArgumentError("optimal_witness requires the standard2 family")
        opt = witness.optimal_witness(state)
        params = opt.params
        record.update(
            mu1=params.mu1,
            mu2=params.mu2,
            muMinus=opt.mu_minus,
            muPlus=opt.mu_plus,
            value=opt.value,
            entangled=witness.detects_entanglement(opt.value),
        )
    elif quantity == "witness01":
        value = _witness01(state, order)
        record.update(
            mu1=0.0, mu2=1.0, value=value, entangled=witness.detects_entanglement(value)
        )
    elif quantity == "swap":
        value = _swap(state, order, cutoff)
        record.update(value=value, entangled=witness.detects_entanglement(value))
    elif quantity == "realignment_norm":
        if isinstance(state, TwoModeStandardForm):
            cov = state.covariance()
        elif isinstance(state, TwoTwoFamilyParams):
            cov = state.covariance()
        elif isinstance(state, CovarianceMatrix):
            cov = state
        else:
            raise InvalidArgumentError(
                f"realignment_norm is not available for family {type(state).__name__}"
            )
        record.update(realignment.realignment_norm(cov).to_record())
    elif quantity == "classify":
        if not isinstance(state, TwoTwoFamilyParams):
            raise InvalidArgumentError("classify requires the two_two family")
        result = realignment.classify_two_two(state.a, state.b, state.c)
        record.update(result.to_record())
        if result.verdict != "unphysical":
            generic = realignment.realignment_norm(state.covariance())
            record["nus"] = list(generic.spectrum.nus)
            record["a0"] = generic.spectrum.a0
    elif quantity == "bounds":
        if isinstance(state, CoherentMixture):
            swap_value = witness.swap_expectation_coherent_mixture(
                state.p, state.alpha1, state.alpha2
            )
            rho = coherent_mixture_fock(state.p, state.alpha1, state.alpha2, cutoff)
            witness01 = witness_fock(rho, "W01")
        else:
            witness01 = _witness01(state, order)
            swap_value = _swap(state, order, cutoff)
        report = bounds_mod.bound_report(witness01, swap_value)
        record.update(report.to_record())
        record["entangled"] = (
            report.cren_lower > 0
            or report.concurrence_lower > 0
            or report.eof_lower > 0
            or report.tangle_lower > 0
        )
    else:
        raise InvalidArgumentError(f"unknown quantity {quantity!r} (choose from {QUANTITIES})")
    return record


def _scan_value_verdict(record: dict, quantity: str) -> tuple[float, str]:
    if quantity in ("optimal_witness", "witness01", "swap"):
        return record["value"], "entangled" if record["entangled"] else "undetected"
    if quantity == "realignment_norm":
        return record["norm"], record["verdict"]
    if quantity == "classify":
        value = record["norm"] if record["norm"] is not None else math.nan
        return value, record["verdict"]
    if quantity == "bounds":
        return record["crenLower"], "entangled" if record["entangled"] else "undetected"
    raise InvalidArgumentError(f"unknown quantity {quantity!r}")


@dataclass(frozen=True)
class ScanAxis:
    name: str
    lo: float
    hi: float
    steps: int

    @classmethod
    def parse(cls, text: str) -> "ScanAxis":
        parts = text.split(":")
        if len(parts) != 4:
            raise InvalidArgumentError(f"axis must be name:min:max:steps, got {text!r}")
        name, lo, hi, steps = parts[0], float(parts[1]), float(parts[2]), int(parts[3])
        if steps < 2:
            raise InvalidArgumentError(f"axis {name!r} needs steps >= 2, got {steps}")
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidArgumentError(f"axis {name!r} range must be finite")
        return cls(name=name, lo=lo, hi=hi, steps=steps)

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


def _scan_row(task) -> list[tuple[float, str]]:
    base, quantity, axis1_name, v1, axis2_name, values2, order, cutoff = task
    out = []
    for v2 in values2:
        doc = dict(base)
        doc[axis1_name] = float(v1)
        doc[axis2_name] = float(v2)
        try:
            state = parse_state_descriptor(doc)
            record = evaluate_quantity(state, quantity, order=order, cutoff=cutoff)
            out.append(_scan_value_verdict(record, quantity))
        except CVEntangleError:
            out.append((math.nan, "invalid"))
    return out


def run_scan(
    base_descriptor: dict,
    quantity: str,
    axis1: ScanAxis,
    axis2: ScanAxis,
    out_path: str,
    workers: int = 1,
    order: int = 80,
    cutoff: int = 25,
) -> None:
    """Write the grid scan CSV (header param1,param2,value,verdict; row-major
    with axis1 outermost).  Output is written atomically and is byte-identical
    for any worker count."""
    family = base_descriptor.get("family")
    allowed = _FAMILY_AXES.get(family)
    if allowed is None:
        raise InvalidArgumentError(f"family {family!r} does not support scanning")
    for axis in (axis1, axis2):
        if axis.name not in allowed:
            raise InvalidArgumentError(
                f"axis {axis.name!r} is not a parameter of family {family!r} "
                f"(choose from {sorted(allowed)})"
            )
    if quantity not in QUANTITIES:
        raise InvalidArgumentError(f"unknown quantity {quantity!r} (choose from {QUANTITIES})")
    values2 = [float(v) for v in axis2.values()]
    tasks = [
        (base_descriptor, quantity, axis1.name, float(v1), axis2.name, values2, order, cutoff)
        for v1 in axis1.values()
    ]
    if workers > 1:
        with Pool(processes=workers) as pool:
            rows = pool.map(_scan_row, tasks)
    else:
        rows = [_scan_row(t) for t in tasks]

    lines = ["param1,param2,value,verdict"]
    for v1, row in zip(axis1.values(), rows):
        for v2, (value, verdict) in zip(values2, row):
            lines.append(f"{float(v1)!r},{float(v2)!r},{value!r},{verdict}")
    payload = "\n".join(lines) + "\n"

    out_dir = os.path.dirname(os.path.abspath(out_path)) or "."
    try:
        fd, tmp_path = tempfile.mkstemp(prefix=".scan-", dir=out_dir)
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(payload)
            os.replace(tmp_path, out_path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
    except OSError as exc:
        raise IOError(f"cannot write scan output to {out_path}: {exc}") from exc


def _load_state_argument(text: str):
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"invalid state JSON: {exc}") from exc
    else:
        try:
            with open(stripped) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise IOError(f"cannot read state file {stripped}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"invalid state JSON in {stripped}: {exc}") from exc
    return parse_state_descriptor(doc)


def _default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            value = int(env)
            if value >= 1:
                return value
        except ValueError:
            pass
        print(f"ignoring invalid {WORKERS_ENV}={env!r}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cventangle",
        description="Continuous-variable entanglement detection and estimation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one quantity for one state")
    p_eval.add_argument("--state", required=True, help="state descriptor JSON or a file path")
    p_eval.add_argument("--quantity", required=True, choices=QUANTITIES)
    p_eval.add_argument("--order", type=int, default=80, help="quadrature order (default 80)")
    p_eval.add_argument(
        "--cutoff", type=int, default=25, help="Fock cutoff for oracle-backed quantities"
    )

    p_scan = sub.add_parser("scan", help="two-axis parameter grid scan to CSV")
    p_scan.add_argument("--state", required=True, help="base state descriptor JSON or file path")
    p_scan.add_argument("--quantity", required=True, choices=QUANTITIES)
    p_scan.add_argument(
        "--axes",
        action="append",
        required=True,
        metavar="name:min:max:steps",
        help="scan axis (give exactly twice; first axis is the outer/row axis)",
    )
    p_scan.add_argument("--out", required=True, help="output CSV path")
    p_scan.add_argument("--workers", type=int, default=None,
                        help=f"worker processes (default ${WORKERS_ENV} or 1)")
    p_scan.add_argument("--order", type=int, default=80)
    p_scan.add_argument("--cutoff", type=int, default=25)

    p_verify = sub.add_parser("verify", help="run the Fock-oracle cross-check suite")
    p_verify.add_argument("--cutoff", type=int, default=40)
    p_verify.add_argument("--rmax", type=float, default=0.6, help="largest squeezing checked")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            state = _load_state_argument(args.state)
            record = evaluate_quantity(state, args.quantity, order=args.order, cutoff=args.cutoff)
            print(json.dumps(record))
            return EXIT_OK
        if args.command == "scan":
            if len(args.axes) != 2:
                raise InvalidArgumentError("scan requires exactly two --axes arguments")
            stripped = args.state.strip()
            if stripped.startswith("{"):
                base = json.loads(stripped)
            else:
                with open(stripped) as fh:
                    base = json.load(fh)
            if not isinstance(base, dict):
                raise InvalidArgumentError("state descriptor must be a JSON object")
            axis1 = ScanAxis.parse(args.axes[0])
            axis2 = ScanAxis.parse(args.axes[1])
            workers = args.workers if args.workers else _default_workers()
            if workers < 1:
                raise InvalidArgumentError(f"workers must be >= 1, got {workers}")
            run_scan(
                base,
                args.quantity,
                axis1,
                axis2,
                args.out,
                workers=workers,
                order=args.order,
                cutoff=args.cutoff,
            )
            print(json.dumps({"out": args.out, "rows": axis1.steps * axis2.steps}))
            return EXIT_OK
        if args.command == "verify":
            if args.cutoff > 64:
                raise InvalidArgumentError("cutoffs above 64 are out of scope")
            report = crosscheck.run_verification(args.cutoff, args.rmax)
            print(json.dumps(report, indent=2))
            if not report["all_pass"]:
                failing = [c["name"] for c in report["checks"] if not c["pass"]]
                print(f"verification failed: {', '.join(failing)}", file=sys.stderr)
                return EXIT_VERIFY
            return EXIT_OK
        raise InvalidArgumentError(f"unknown command {args.command!r}")
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (IOError, OSError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CVEntangleError as exc:
        print(f"numeric error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
