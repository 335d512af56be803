"""Brute-force two-mode verification in a truncated Fock basis.

States are dense (N+1)^2 x (N+1)^2 density matrices with basis index
i*(N+1)+j for |i>_A |j>_B.  Constructors self-report the trace lost to
truncation and refuse to build states that lose more than 1%; witness,
SWAP, negativity and realigned-trace-norm expectations are then direct
matrix computations, independent of every analytic path in the package.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import InvalidArgumentError, NumericDomainError, TruncationError

#: Constructors fail when more than this fraction of the trace is truncated away.
MAX_TRACE_DEFICIT = 0.01
_HERMITICITY_TOL = 1e-12

_MAGIC = b"CVFOCK1"


@dataclass(frozen=True)
class FockDensityMatrix:
    """Two-mode density matrix truncated at ``cutoff`` photons per mode."""

    cutoff: int
    matrix: np.ndarray
    trace_deficit: float

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = (self.cutoff + 1) ** 2
        if m.shape != (d, d):
            raise InvalidArgumentError(
                f"matrix shape {m.shape} does not match cutoff {self.cutoff}"
            )
        scale = max(1.0, float(np.abs(m).max()))
        if float(np.abs(m - m.conj().T).max()) > _HERMITICITY_TOL * scale:
            raise InvalidArgumentError("density matrix is not Hermitian within 1e-12")
        m = (m + m.conj().T) / 2.0
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "trace_deficit", float(self.trace_deficit))

    @property
    def dim(self) -> int:
        return self.cutoff + 1


def annihilation(cutoff: int) -> np.ndarray:
    """Single-mode annihilation operator on the truncated space."""
    return np.diag(np.sqrt(np.arange(1.0, cutoff + 1)), 1)


def _check_deficit(deficit: float, label: str) -> float:
    deficit = float(max(deficit, 0.0))
    if deficit > MAX_TRACE_DEFICIT:
        raise TruncationError(
            f"truncation insufficient for {label}: trace deficit {deficit:.3g} "
            f"exceeds {MAX_TRACE_DEFICIT}"
        )
    return deficit


def tmsv_fock(r: float, cutoff: int) -> FockDensityMatrix:
    """Two-mode squeezed vacuum from its Schmidt series tanh^k r / cosh r.

    The truncation tail is the geometric remainder tanh^{2(N+1)} r, reported
    as ``trace_deficit``; the returned matrix is renormalized to trace 1.
    """
    r = float(r)
    if r < 0:
        raise InvalidArgumentError(f"squeezing must be nonnegative, got {r}")
    if cutoff < 4:
        raise InvalidArgumentError(f"cutoff must be at least 4, got {cutoff}")
    d = cutoff + 1
    deficit = _check_deficit(math.tanh(r) ** (2 * (cutoff + 1)), f"TMSV r={r}")
    amps = np.array([math.tanh(r) ** k / math.cosh(r) for k in range(d)])
    psi = np.zeros(d * d)
    psi[np.arange(d) * (d + 1)] = amps
    psi = psi / np.linalg.norm(psi)
    return FockDensityMatrix(cutoff=cutoff, matrix=np.outer(psi, psi).astype(complex),
                             trace_deficit=deficit)


def coherent_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    """Fock amplitudes e^{-|alpha|^2/2} alpha^k / sqrt(k!) of a coherent state."""
    k = np.arange(cutoff + 1)
    alpha = complex(alpha)
    if alpha == 0:
        amps = np.zeros(cutoff + 1, dtype=complex)
        amps[0] = 1.0
        return amps
    logmag = k * math.log(abs(alpha)) - 0.5 * gammaln(k + 1.0) - 0.5 * abs(alpha) ** 2
    phase = np.exp(1j * k * np.angle(alpha))
    return np.exp(logmag) * phase


def coherent_mixture_fock(
    p: float, alpha1: complex, alpha2: complex, cutoff: int
) -> FockDensityMatrix:
    """Antisymmetrized coherent superposition mixed with vacuum.

    The antisymmetric branch enters with the plain 1/2 weight rather than the
    exact overlap normalization, so the intended trace is
    1 - p exp(-|alpha1 - alpha2|^2) (matching the closed-form SWAP value in
    :func:`cventangle.witness.swap_expectation_coherent_mixture`);
    ``trace_deficit`` reports only the truncation loss relative to that trace.
    """
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise InvalidArgumentError(f"mixing probability must lie in [0, 1], got {p}")
    d = cutoff + 1
    overlap2 = math.exp(-abs(complex(alpha1) - complex(alpha2)) ** 2)
    intended_trace = 1.0 - p * overlap2
    if intended_trace <= 1e-15:
        raise InvalidArgumentError(
            "degenerate mixture: the antisymmetric branch vanishes at p=1 with "
            "alpha1 = alpha2"
        )
    c1 = coherent_amplitudes(alpha1, cutoff)
    c2 = coherent_amplitudes(alpha2, cutoff)
    phi = (np.kron(c1, c2) - np.kron(c2, c1)) / math.sqrt(2.0)
    rho = p * np.outer(phi, phi.conj())
    rho[0, 0] += 1.0 - p
    deficit = _check_deficit(
        1.0 - float(np.trace(rho).real) / intended_trace,
        f"coherent mixture |alpha1|={abs(alpha1)}, |alpha2|={abs(alpha2)}",
    )
    return FockDensityMatrix(cutoff=cutoff, matrix=rho, trace_deficit=deficit)


def _thermal_weights(n: float, cutoff: int) -> np.ndarray:
    if n < 0:
        raise InvalidArgumentError(f"mean photon number must be nonnegative, got {n}")
    if n == 0:
        w = np.zeros(cutoff + 1)
        w[0] = 1.0
        return w
    k = np.arange(cutoff + 1)
    return np.exp(k * math.log(n / (n + 1.0)) - math.log(n + 1.0))


def _squeezer_ladder_block(r: float, cutoff: int, delta: int) -> np.ndarray:
    """Action of exp(r (a1†a2† - a1 a2)) on the photon-number-difference-delta
    ladder: B[m, l] = <m+delta, m| U |l+delta, l>, truncated at the cutoff.

    Uses the normal-ordered factorization exp(t K+) exp(-2s K0) exp(-t K-)
    with t = tanh r, s = ln cosh r; each column is the exact projection of the
    untruncated column onto the cutoff space.
    """
    size = cutoff + 1 - delta
    t, s = math.tanh(r), math.log(math.cosh(r))
    lg = gammaln(np.arange(cutoff + 2) + 1.0)
    logt = math.log(t) if t > 0.0 else -math.inf
    m = np.arange(size)
    steps = m[None, :] - m[:, None]  # column index minus row index
    valid = steps >= 0
    st = np.clip(steps, 0, None)
    with np.errstate(invalid="ignore"):
        logmag = np.where(st == 0, 0.0, st * logt) - lg[st]
    half = 0.5 * (
        lg[m + delta][None, :] + lg[m][None, :] - lg[m + delta][:, None] - lg[m][:, None]
    )
    ladder = np.where(valid, np.exp(logmag + half), 0.0)
    lowering = ladder * np.where(st % 2 == 1, -1.0, 1.0)
    k0 = np.exp(-s * (2 * m + delta + 1))
    return ladder.T @ (k0[:, None] * lowering)


def _sts_raw(n: float, r: float, cutoff: int) -> np.ndarray:
    """Unnormalized truncated squeezed thermal state (trace < 1 by the tail).

    Two-mode squeezing preserves the photon-number difference, so the state is
    assembled blockwise over that difference; cost is O(cutoff^4).
    """
    d = cutoff + 1
    pk = _thermal_weights(n, cutoff)
    rho = np.zeros((d * d, d * d))
    for delta in range(d):
        B = _squeezer_ladder_block(r, cutoff, delta)
        m = np.arange(d - delta)
        weights = pk[m + delta] * pk[m]
        block = (B * weights[None, :]) @ B.T
        idx = (m + delta) * d + m
        rho[np.ix_(idx, idx)] += block
        if delta:
            idx_mirror = m * d + (m + delta)
            rho[np.ix_(idx_mirror, idx_mirror)] += block
    return rho


def squeezed_thermal_fock(n: float, r: float, cutoff: int) -> FockDensityMatrix:
    """Symmetric two-mode squeezed thermal state, built by two-mode squeezing
    a truncated thermal product through the exact ladder expansion."""
    n, r = float(n), float(r)
    if n < 0 or r < 0:
        raise InvalidArgumentError(f"n and r must be nonnegative (got n={n}, r={r})")
    if cutoff < 4:
        raise InvalidArgumentError(f"cutoff must be at least 4, got {cutoff}")
    rho = _sts_raw(n, r, cutoff)
    trace = float(np.trace(rho))
    deficit = _check_deficit(1.0 - trace, f"squeezed thermal n={n}, r={r}")
    return FockDensityMatrix(cutoff=cutoff, matrix=(rho / trace).astype(complex),
                             trace_deficit=deficit)


def photon_added_sts_fock(n: float, r: float, cutoff: int) -> FockDensityMatrix:
    """Single photon added to mode 2 of the squeezed thermal state.

    Sandwiches the truncated state with the creation operator and renormalizes;
    ``trace_deficit`` compares the truncated normalizer against its exact value
    1/2 + (1+2n) cosh(2r)/2, so it accounts for both truncation stages.
    """
    n, r = float(n), float(r)
    if n < 0 or r < 0:
        raise InvalidArgumentError(f"n and r must be nonnegative (got n={n}, r={r})")
    if cutoff < 4:
        raise InvalidArgumentError(f"cutoff must be at least 4, got {cutoff}")
    d = cutoff + 1
    rho = _sts_raw(n, r, cutoff)
    # sandwich with the mode-2 creation operator: a shift-and-scale reindexing
    rho4 = rho.reshape(d, d, d, d)
    num4 = np.zeros_like(rho4)
    root = np.sqrt(np.arange(1.0, d))
    num4[:, 1:, :, 1:] = rho4[:, :-1, :, :-1] * root[None, :, None, None] * root[None, None, None, :]
    num = num4.reshape(d * d, d * d)
    norm_exact = 0.5 + (1.0 + 2.0 * n) * math.cosh(2.0 * r) / 2.0
    trace = float(np.trace(num))
    deficit = _check_deficit(1.0 - trace / norm_exact, f"photon-added state n={n}, r={r}")
    return FockDensityMatrix(cutoff=cutoff, matrix=(num / trace).astype(complex),
                             trace_deficit=deficit)


# ---------------------------------------------------------------------------
# expectation values
# ---------------------------------------------------------------------------

def witness_operator(which: str, cutoff: int) -> np.ndarray:
    """Truncated matrix of the requested observable.

    ``W01`` is identity minus the sum of all |ii><jj| (the witness at
    (mu1, mu2) = (0, 1)); ``SWAP`` is the mode-exchange operator
    sum of |ij><ji|.
    """
    d = cutoff + 1
    if which.upper() == "W01":
        e = np.zeros(d * d)
        e[np.arange(d) * (d + 1)] = 1.0
        return np.eye(d * d) - np.outer(e, e)
    if which.upper() == "SWAP":
        ii, jj = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
        rows = (ii * d + jj).ravel()
        cols = (jj * d + ii).ravel()
        V = np.zeros((d * d, d * d))
        V[rows, cols] = 1.0
        return V
    raise InvalidArgumentError(f"unknown witness operator {which!r} (use 'W01' or 'SWAP')")


def witness_fock(rho: FockDensityMatrix, which: str) -> float:
    """Tr(rho M) for the chosen observable; the imaginary residue must stay
    below 1e-10."""
    M = witness_operator(which, rho.cutoff)
    value = complex(np.tensordot(rho.matrix, M.T, axes=2))
    if abs(value.imag) > 1e-10:
        raise NumericDomainError(f"expectation has imaginary residue {value.imag:.3e}")
    return float(value.real)


def realignment_trace_norm_fock(rho: FockDensityMatrix) -> float:
    """Trace norm of the realigned matrix R[(i,k),(j,l)] = rho[(i,j),(k,l)]."""
    d = rho.dim
    R = rho.matrix.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)
    return float(np.linalg.svd(R, compute_uv=False).sum())


def negativity_fock(rho: FockDensityMatrix) -> float:
    """Trace norm of the partial transpose (over mode 2) minus 1."""
    d = rho.dim
    pt = rho.matrix.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)
    eigs = np.linalg.eigvalsh(pt)
    return float(np.abs(eigs).sum() - 1.0)


def expectation_two_mode(rho: FockDensityMatrix, A: np.ndarray, B: np.ndarray) -> complex:
    """Tr[rho (A x B)] without forming the Kronecker product."""
    d = rho.dim
    rho4 = rho.matrix.reshape(d, d, d, d)
    return complex(np.einsum("ijkl,ki,lj->", rho4, A, B))


def covariance_from_fock(rho: FockDensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Means and symmetrized quadrature covariance extracted from the matrix.

    Used to check Fock constructions against the analytic covariance.
    """
    d = rho.dim
    a = annihilation(rho.cutoff)
    x = (a + a.T) / 2.0
    p = (a - a.T) / 2.0j
    eye = np.eye(d)
    singles = {0: x, 1: p}
    mean = np.zeros(4)
    for mode in range(2):
        for q in range(2):
            op = singles[q]
            A, B = (op, eye) if mode == 0 else (eye, op)
            mean[2 * mode + q] = expectation_two_mode(rho, A, B).real
    V = np.zeros((4, 4))
    for i in range(4):
        for j in range(4):
            mi, qi = divmod(i, 2)
            mj, qj = divmod(j, 2)
            if mi == mj:
                op = (singles[qi] @ singles[qj] + singles[qj] @ singles[qi]) / 2.0
                A, B = (op, eye) if mi == 0 else (eye, op)
            else:
                A = singles[qi] if mi == 0 else singles[qj]
                B = singles[qj] if mj == 1 else singles[qi]
            V[i, j] = expectation_two_mode(rho, A, B).real - mean[i] * mean[j]
    return mean, V


# ---------------------------------------------------------------------------
# binary interchange
# ---------------------------------------------------------------------------

def save_fock(rho: FockDensityMatrix, path) -> None:
    """Write magic "CVFOCK1", cutoff, matrix dimension, then the row-major
    complex128 entries (little endian)."""
    d2 = rho.matrix.shape[0]
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<II", rho.cutoff, d2))
        fh.write(np.ascontiguousarray(rho.matrix, dtype="<c16").tobytes())


def load_fock(path) -> FockDensityMatrix:
    """Read a file written by :func:`save_fock`.

    The format does not record the truncation deficit, so the loaded matrix
    carries ``trace_deficit = nan``.
    """
    with open(path, "rb") as fh:
        magic = fh.read(len(_MAGIC))
        if magic != _MAGIC:
            raise InvalidArgumentError(f"bad magic {magic!r}; not a Fock dump file")
        cutoff, d2 = struct.unpack("<II", fh.read(8))
        if d2 != (cutoff + 1) ** 2:
            raise InvalidArgumentError(f"dimension {d2} inconsistent with cutoff {cutoff}")
        data = np.frombuffer(fh.read(d2 * d2 * 16), dtype="<c16").reshape(d2, d2)
    return FockDensityMatrix(cutoff=cutoff, matrix=data.copy(), trace_deficit=float("nan"))
