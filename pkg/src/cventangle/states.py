"""Constructors for the Gaussian and non-Gaussian state families.

All families are zero-mean; displacements do not change entanglement and are
not modelled.  Gaussian states are described by their covariance matrix, the
single non-Gaussian Wigner function by a :class:`WignerSpec` (polynomial
prefactor times a Gaussian core), so that expectation values can be computed
both by exact moment algebra and by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from . import phase_space
from .errors import InvalidArgumentError
from .symplectic import CovarianceMatrix, is_physical


@dataclass(frozen=True)
class TwoModeStandardForm:
    """Standard-form parameters (a, b, c1, c2) of a two-mode Gaussian state.

    The covariance matrix is block-diagonal per quadrature: diag blocks
    diag(a, a) and diag(b, b), off-diagonal diag(c1, c2).  Requires a, b >= 1/4
    and ab >= c1^2, c2^2, and the expanded matrix must pass the physicality
    test V + iJ/4 >= 0.
    """

    a: float
    b: float
    c1: float
    c2: float

    def __post_init__(self):
        a, b, c1, c2 = (float(v) for v in (self.a, self.b, self.c1, self.c2))
        for name, v in (("a", a), ("b", b)):
            if not (v >= 0.25):
                raise InvalidArgumentError(f"constraint violated: {name} >= 1/4 (got {v})")
        for name, c in (("c1", c1), ("c2", c2)):
            if not (a * b >= c * c):
                raise InvalidArgumentError(
                    f"constraint violated: ab >= {name}^2 (ab={a * b}, {name}={c})"
                )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)
        if not is_physical(self._expand()):
            raise InvalidArgumentError(
                "constraint violated: expanded covariance fails the physicality "
                f"test V + iJ/4 >= 0 (a={a}, b={b}, c1={c1}, c2={c2})"
            )

    def _expand(self) -> CovarianceMatrix:
        V = np.zeros((4, 4))
        V[0, 0] = V[1, 1] = self.a
        V[2, 2] = V[3, 3] = self.b
        V[0, 2] = V[2, 0] = self.c1
        V[1, 3] = V[3, 1] = self.c2
        return CovarianceMatrix(V)

    def covariance(self) -> CovarianceMatrix:
        return self._expand()

    def wigner(self) -> "WignerSpec":
        return WignerSpec(covariance=self.covariance())


@dataclass(frozen=True)
class TwoTwoFamilyParams:
    """Parameters (a, b, c) of the 2+2-mode correlated-thermal family."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = float(self.a), float(self.b), float(self.c)
        for name, v in (("a", a), ("b", b)):
            if not (v >= 0.25):
                raise InvalidArgumentError(f"constraint violated: {name} >= 1/4 (got {v})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def covariance(self) -> CovarianceMatrix:
        return two_two_family(self.a, self.b, self.c)


@dataclass(frozen=True)
class PhotonAddedSqueezedThermal:
    """Single photon added (on mode 2) to a symmetric two-mode squeezed
    thermal state with mean thermal photon number n and squeezing r."""

    n: float
    r: float

    def __post_init__(self):
        n, r = float(self.n), float(self.r)
        if n < 0 or r < 0:
            raise InvalidArgumentError(f"n and r must be nonnegative (got n={n}, r={r})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)

    def wigner(self) -> "WignerSpec":
        return photon_added_sts_wigner(self.n, self.r)


@dataclass(frozen=True)
class CoherentMixture:
    """Mixture of the antisymmetrized two-mode coherent state with vacuum.

    The antisymmetric branch (|a1 a2> - |a2 a1|)/sqrt(2) is weighted by p as
    written, without dividing out the coherent overlap, so the operator trace
    is 1 - p exp(-|a1 - a2|^2); the closed-form expectation values in
    :mod:`cventangle.witness` follow the same convention.
    """

    p: float
    alpha1: complex
    alpha2: complex

    def __post_init__(self):
        p = float(self.p)
        if not (0.0 <= p <= 1.0):
            raise InvalidArgumentError(f"mixing probability must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "alpha1", complex(self.alpha1))
        object.__setattr__(self, "alpha2", complex(self.alpha2))


@dataclass(frozen=True)
class WignerSpec:
    """A Wigner function as Gaussian core x optional polynomial prefactor.

    ``poly`` maps exponent tuples over (x1, p1, ..., xm, pm) to coefficients;
    ``norm_prefactor`` is an overall positive scale (1 for normalized states).
    """

    covariance: CovarianceMatrix
    mean: np.ndarray = None
    poly: Optional[Mapping[tuple, float]] = None
    norm_prefactor: float = 1.0

    def __post_init__(self):
        dim = 2 * self.covariance.modes
        mean = np.zeros(dim) if self.mean is None else np.asarray(self.mean, dtype=float)
        if mean.shape != (dim,):
            raise InvalidArgumentError(f"mean must have shape ({dim},), got {mean.shape}")
        mean = mean.copy()
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        if self.poly is not None:
            poly = {}
            for expo, coeff in self.poly.items():
                expo = tuple(int(e) for e in expo)
                if len(expo) != dim or any(e < 0 for e in expo):
                    raise InvalidArgumentError(f"bad exponent tuple {expo} for {dim} coordinates")
                poly[expo] = float(coeff)
            object.__setattr__(self, "poly", poly)
        if not (self.norm_prefactor > 0 and np.isfinite(self.norm_prefactor)):
            raise InvalidArgumentError("norm_prefactor must be positive and finite")

    @property
    def modes(self) -> int:
        return self.covariance.modes

    def value(self, points: np.ndarray) -> np.ndarray:
        """Evaluate the Wigner function at phase-space points (..., 2m)."""
        points = np.asarray(points, dtype=float)
        V = self.covariance.matrix
        norm = phase_space.gaussian_normal_constant(V) * self.norm_prefactor
        d = points - self.mean
        quad = np.einsum("...i,ij,...j->...", d, np.linalg.inv(V), d)
        gauss = norm * np.exp(-0.5 * quad)
        return gauss * phase_space.poly_eval(self.poly, points)

    def normalization(self, scheme: str = "moments", order: int = 24) -> float:
        """Total integral over phase space (1 for a normalized state)."""
        dim = 2 * self.modes
        return phase_space.slice_integral(self, np.eye(dim), scheme=scheme, order=order)


def standard_two_mode(a: float, b: float, c1: float, c2: float) -> CovarianceMatrix:
    """Expand standard-form parameters into the 4x4 covariance matrix."""
    return TwoModeStandardForm(a, b, c1, c2).covariance()


def squeezed_thermal_params(n: float, r: float) -> TwoModeStandardForm:
    """Standard form of the symmetric two-mode squeezed thermal state.

    a = b = (1+2n) cosh(2r)/4 and c1 = -c2 = (1+2n) sinh(2r)/4; n = 0 gives
    the two-mode squeezed vacuum, n = r = 0 the vacuum.
    """
    n, r = float(n), float(r)
    if n < 0 or r < 0:
        raise InvalidArgumentError(f"n and r must be nonnegative (got n={n}, r={r})")
    scale = (1.0 + 2.0 * n) / 4.0
    a = scale * math.cosh(2.0 * r)
    c = scale * math.sinh(2.0 * r)
    return TwoModeStandardForm(a=a, b=a, c1=c, c2=-c)


def tmsv_params(r: float) -> TwoModeStandardForm:
    """Two-mode squeezed vacuum standard form."""
    return squeezed_thermal_params(0.0, r)


_TWO_TWO_R = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ]
)


def two_two_family(a: float, b: float, c: float) -> CovarianceMatrix:
    """8x8 covariance of the 2+2-mode family [[a I4, c R], [c R^T, b I4]].

    Physicality is not enforced here: the matrix is a valid state iff
    |c| <= :func:`family_threshold`; use :func:`cventangle.symplectic.is_physical`
    or :func:`cventangle.realignment.classify_two_two` to report it.
    """
    a, b, c = float(a), float(b), float(c)
    for name, v in (("a", a), ("b", b)):
        if not (v >= 0.25):
            raise InvalidArgumentError(f"constraint violated: {name} >= 1/4 (got {v})")
    V = np.zeros((8, 8))
    V[:4, :4] = a * np.eye(4)
    V[4:, 4:] = b * np.eye(4)
    V[:4, 4:] = c * _TWO_TWO_R
    V[4:, :4] = c * _TWO_TWO_R.T
    return CovarianceMatrix(V)


def family_threshold(a: float, b: float) -> float:
    """Largest |c| for which the 2+2 family is a valid state:
    sqrt(ab - sqrt(a^2 + b^2 - 1/16)/4)."""
    a, b = float(a), float(b)
    for name, v in (("a", a), ("b", b)):
        if not (v >= 0.25):
            raise InvalidArgumentError(f"constraint violated: {name} >= 1/4 (got {v})")
    radicand = a * b - math.sqrt(a * a + b * b - 1.0 / 16.0) / 4.0
    if radicand < 0.0:
        if radicand < -1e-12:
            raise InvalidArgumentError(
                f"no valid correlation exists for a={a}, b={b} (negative radicand)"
            )
        radicand = 0.0
    return math.sqrt(radicand)


def photon_added_sts_wigner(n: float, r: float) -> WignerSpec:
    """Wigner function of the single-photon-added (mode 2) symmetric two-mode
    squeezed thermal state: quadratic prefactor times the squeezed-thermal
    Gaussian core.  Integrates to 1; W(0, 0) < 0 reflects the added photon.
    """
    n, r = float(n), float(r)
    if n < 0 or r < 0:
        raise InvalidArgumentError(f"n and r must be nonnegative (got n={n}, r={r})")
    core = squeezed_thermal_params(n, r).covariance()
    m = 1.0 + 2.0 * n
    C = math.cosh(2.0 * r)
    S = math.sinh(2.0 * r)
    beta = m + C
    denom = m * m * (math.cosh(r) ** 2 + n * C)
    const = -m * (n + math.cosh(r) ** 2)
    # [(beta x2 - S x1)^2 + (beta p2 + S p1)^2 + const] / denom
    poly = {
        (0, 0, 2, 0): beta * beta / denom,
        (1, 0, 1, 0): -2.0 * beta * S / denom,
        (2, 0, 0, 0): S * S / denom,
        (0, 0, 0, 2): beta * beta / denom,
        (0, 1, 0, 1): 2.0 * beta * S / denom,
        (0, 2, 0, 0): S * S / denom,
        (0, 0, 0, 0): const / denom,
    }
    return WignerSpec(covariance=core, poly=poly)


# ---------------------------------------------------------------------------
# JSON state descriptors
# ---------------------------------------------------------------------------

def parse_state_descriptor(doc: dict):
    """Build the typed state object described by an interchange document.

    Supported families: ``standard2``, ``two_two``, ``photon_added_sts``,
    ``coherent_mixture`` and ``raw_covariance``.
    """
    if not isinstance(doc, dict):
        raise InvalidArgumentError("state descriptor must be a JSON object")
    family = doc.get("family")
    try:
        if family == "standard2":
            return TwoModeStandardForm(doc["a"], doc["b"], doc["c1"], doc["c2"])
        if family == "two_two":
            return TwoTwoFamilyParams(doc["a"], doc["b"], doc["c"])
        if family == "photon_added_sts":
            return PhotonAddedSqueezedThermal(doc["n"], doc["r"])
        if family == "coherent_mixture":
            a1 = complex(doc["alpha1"][0], doc["alpha1"][1])
            a2 = complex(doc["alpha2"][0], doc["alpha2"][1])
            return CoherentMixture(doc["p"], a1, a2)
        if family == "raw_covariance":
            return CovarianceMatrix.from_descriptor(doc)
    except (KeyError, TypeError, IndexError) as exc:
        raise InvalidArgumentError(f"malformed {family!r} descriptor: {exc}") from exc
    raise InvalidArgumentError(f"unknown state family {family!r}")


def state_descriptor(state) -> dict:
    """Inverse of :func:`parse_state_descriptor` for the supported families."""
    if isinstance(state, TwoModeStandardForm):
        return {"family": "standard2", "a": state.a, "b": state.b, "c1": state.c1, "c2": state.c2}
    if isinstance(state, TwoTwoFamilyParams):
        return {"family": "two_two", "a": state.a, "b": state.b, "c": state.c}
    if isinstance(state, PhotonAddedSqueezedThermal):
        return {"family": "photon_added_sts", "n": state.n, "r": state.r}
    if isinstance(state, CoherentMixture):
        return {
            "family": "coherent_mixture",
            "p": state.p,
            "alpha1": [state.alpha1.real, state.alpha1.imag],
            "alpha2": [state.alpha2.real, state.alpha2.imag],
        }
    if isinstance(state, CovarianceMatrix):
        return {"family": "raw_covariance", **state.to_descriptor()}
    raise InvalidArgumentError(f"cannot serialize state of type {type(state).__name__}")
