"""Oracle-vs-analytic verification suite.

Builds truncated Fock states for every family with a two-mode closed form and
compares the brute-force expectations against the analytic pipeline.  Each
check carries its own tolerance; the report lists the worst deviation per
check so the CLI can fail loudly on the first breach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import bounds, fock, realignment, witness
from .errors import CVEntangleError
from .states import squeezed_thermal_params

ORACLE_TOL = 1e-3
MIXTURE_TOL = 1e-6


@dataclass
class CheckResult:
    name: str
    tolerance: float
    deviation: float | None = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.deviation is not None and self.deviation <= self.tolerance

    def to_record(self) -> dict:
        rec = {"name": self.name, "tolerance": self.tolerance, "pass": self.passed}
        if self.deviation is not None:
            rec["max_abs_deviation"] = self.deviation
        if self.error is not None:
            rec["error"] = self.error
        return rec


def _squeezing_grid(r_max: float) -> list[float]:
    if r_max <= 0:
        return [0.0]
    return [r_max / 3.0, 2.0 * r_max / 3.0, r_max]


def run_verification(cutoff: int, r_max: float) -> dict:
    """Run every oracle cross-check at the given truncation.

    Returns a JSON-ready report; ``all_pass`` is true iff every check stayed
    within its documented tolerance.
    """
    checks: list[CheckResult] = []

    def run(name, tolerance, fn):
        result = CheckResult(name=name, tolerance=tolerance)
        try:
            result.deviation = float(fn())
        except CVEntangleError as exc:
            result.error = f"{type(exc).__name__}: {exc}"
        checks.append(result)

    rs = _squeezing_grid(r_max)

    def tmsv_realignment():
        return max(
            abs(fock.realignment_trace_norm_fock(fock.tmsv_fock(r, cutoff)) - math.exp(2 * r))
            for r in rs
        )

    def tmsv_witness():
        return max(
            abs(fock.witness_fock(fock.tmsv_fock(r, cutoff), "W01") - (1 - math.exp(2 * r)))
            for r in rs
        )

    def tmsv_negativity():
        return max(
            abs(fock.negativity_fock(fock.tmsv_fock(r, cutoff)) - (math.exp(2 * r) - 1))
            for r in rs
        )

    def tmsv_cren_saturation():
        worst = 0.0
        for r in rs:
            rho = fock.tmsv_fock(r, cutoff)
            cren = bounds.cren_lower_bound(fock.witness_fock(rho, "W01"))
            worst = max(worst, abs(cren - fock.negativity_fock(rho)))
        return worst

    def tmsv_swap():
        return max(abs(fock.witness_fock(fock.tmsv_fock(r, cutoff), "SWAP") - 1.0) for r in rs)

    def thermal_witness():
        n = 0.2
        worst = 0.0
        for r in rs:
            rho = fock.squeezed_thermal_fock(n, r, cutoff)
            closed = witness.witness_expectation_gaussian(
                squeezed_thermal_params(n, r), witness.WitnessParams(0.0, 1.0)
            )
            worst = max(worst, abs(fock.witness_fock(rho, "W01") - closed))
        return worst

    def thermal_realignment():
        n = 0.2
        worst = 0.0
        for r in rs:
            rho = fock.squeezed_thermal_fock(n, r, cutoff)
            closed = realignment.realignment_norm_two_mode(squeezed_thermal_params(n, r))
            worst = max(worst, abs(fock.realignment_trace_norm_fock(rho) - closed))
        return worst

    def mixture_swap():
        p, a1, a2 = 0.6, 1.0, -1.0
        rho = fock.coherent_mixture_fock(p, a1, a2, cutoff)
        closed = witness.swap_expectation_coherent_mixture(p, a1, a2)
        return abs(fock.witness_fock(rho, "SWAP") - closed)

    def photon_added_witness():
        n, r = 0.5, min(r_max, 0.6) if r_max > 0 else 0.0
        rho = fock.photon_added_sts_fock(n, r, cutoff)
        closed = witness.witness_photon_added_closed(n, r)
        return abs(fock.witness_fock(rho, "W01") - closed)

    def negativity_dominates_witness():
        # lower-bound inequality: negativity >= -<W01> on every oracle state
        worst = 0.0
        states = [fock.tmsv_fock(rs[-1], cutoff),
                  fock.squeezed_thermal_fock(0.2, rs[-1], cutoff),
                  fock.coherent_mixture_fock(0.6, 1.0, -1.0, cutoff),
                  fock.photon_added_sts_fock(0.5, min(r_max, 0.6) if r_max > 0 else 0.0, cutoff)]
        for rho in states:
            gap = -fock.witness_fock(rho, "W01") - fock.negativity_fock(rho)
            worst = max(worst, gap)
        return max(worst, 0.0)

    run("tmsv_realignment_trace_norm", ORACLE_TOL, tmsv_realignment)
    run("tmsv_witness_w01", ORACLE_TOL, tmsv_witness)
    run("tmsv_negativity", ORACLE_TOL, tmsv_negativity)
    run("tmsv_cren_saturation", ORACLE_TOL, tmsv_cren_saturation)
    run("tmsv_swap_identity", ORACLE_TOL, tmsv_swap)
    run("squeezed_thermal_witness_w01", ORACLE_TOL, thermal_witness)
    run("squeezed_thermal_realignment", ORACLE_TOL, thermal_realignment)
    run("coherent_mixture_swap", MIXTURE_TOL, mixture_swap)
    run("photon_added_witness_w01", ORACLE_TOL, photon_added_witness)
    run("negativity_bounds_witness", 1e-6, negativity_dominates_witness)

    return {
        "cutoff": cutoff,
        "r_max": r_max,
        "checks": [c.to_record() for c in checks],
        "all_pass": all(c.passed for c in checks),
    }
