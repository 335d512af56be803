import math

import numpy as np
import pytest

from cventangle import (
    InvalidArgumentError,
    TruncationError,
    WitnessParams,
    coherent_mixture_fock,
    covariance_from_fock,
    cren_lower_bound,
    load_fock,
    negativity_fock,
    photon_added_sts_fock,
    realignment_norm_two_mode,
    realignment_trace_norm_fock,
    save_fock,
    squeezed_thermal_fock,
    squeezed_thermal_params,
    swap_expectation_coherent_mixture,
    tmsv_fock,
    witness_expectation_gaussian,
    witness_fock,
    witness_photon_added_closed,
)
from cventangle.fock import FockDensityMatrix, coherent_amplitudes, witness_operator


def assert_valid_density_matrix(rho: FockDensityMatrix, trace=1.0):
    m = rho.matrix
    assert np.abs(m - m.conj().T).max() < 1e-12
    assert abs(np.trace(m).real - trace) < 1e-10
    assert np.linalg.eigvalsh(m).min() > -1e-10


class TestTmsv:
    def test_zero_squeezing_is_vacuum(self):
        rho = tmsv_fock(0.0, 10)
        expected = np.zeros((121, 121))
        expected[0, 0] = 1.0
        assert np.array_equal(rho.matrix.real, expected)
        assert rho.trace_deficit == 0.0

    def test_schmidt_amplitudes(self):
        r, cutoff = 0.6, 20
        rho = tmsv_fock(r, cutoff)
        d = cutoff + 1
        for k in (0, 1, 5):
            amp = math.tanh(r) ** k / math.cosh(r)
            assert abs(rho.matrix[k * (d + 1), 0].real - amp / math.cosh(r)) < 1e-9

    def test_purity_one(self):
        rho = tmsv_fock(0.6, 30)
        assert abs(np.trace(rho.matrix @ rho.matrix).real - 1.0) < 1e-10
        assert_valid_density_matrix(rho)

    def test_deficit_is_geometric_tail(self):
        rho = tmsv_fock(0.6, 40)
        assert abs(rho.trace_deficit - math.tanh(0.6) ** 82) < 1e-18
        assert rho.trace_deficit < 1e-8

    def test_truncation_gate(self):
        with pytest.raises(TruncationError):
            tmsv_fock(2.0, 4)

    def test_rejects_bad_arguments(self):
        with pytest.raises(InvalidArgumentError):
            tmsv_fock(-0.5, 10)
        with pytest.raises(InvalidArgumentError):
            tmsv_fock(0.5, 3)


class TestSqueezedThermal:
    def test_matches_tmsv_at_zero_thermal(self):
        a = squeezed_thermal_fock(0.0, 0.6, 15).matrix
        b = tmsv_fock(0.6, 15).matrix
        assert np.abs(a - b).max() < 1e-12

    def test_extracted_covariance_matches_params(self):
        # gate for the ladder construction: quadrature moments must reproduce
        # the analytic covariance to 1e-6
        rho = squeezed_thermal_fock(0.3, 0.4, 25)
        mean, V = covariance_from_fock(rho)
        assert np.abs(mean).max() < 1e-10
        expected = squeezed_thermal_params(0.3, 0.4).covariance().matrix
        assert np.abs(V - expected).max() < 1e-6

    def test_witness_matches_closed_form(self):
        n, r, cutoff = 0.2, 0.5, 30
        rho = squeezed_thermal_fock(n, r, cutoff)
        closed = witness_expectation_gaussian(
            squeezed_thermal_params(n, r), WitnessParams(0.0, 1.0)
        )
        assert abs(witness_fock(rho, "W01") - closed) < 1e-3
        assert_valid_density_matrix(rho)

    def test_realignment_matches_closed_form(self):
        n, r, cutoff = 0.2, 0.5, 30
        rho = squeezed_thermal_fock(n, r, cutoff)
        closed = realignment_norm_two_mode(squeezed_thermal_params(n, r))
        assert abs(realignment_trace_norm_fock(rho) - closed) < 1e-3


class TestCoherentMixture:
    def test_pure_vacuum_limit(self):
        rho = coherent_mixture_fock(0.0, 1.0, -1.0, 15)
        assert abs(rho.matrix[0, 0].real - 1.0) < 1e-12

    def test_intended_trace(self):
        p, a1, a2 = 0.6, 1.0, -1.0
        rho = coherent_mixture_fock(p, a1, a2, 25)
        expected = 1.0 - p * math.exp(-abs(a1 - a2) ** 2)
        assert abs(np.trace(rho.matrix).real - expected) < 1e-12
        assert np.linalg.eigvalsh(rho.matrix).min() > -1e-12

    def test_swap_matches_closed_form(self):
        p, a1, a2 = 0.6, 1.0, -1.0
        rho = coherent_mixture_fock(p, a1, a2, 25)
        closed = swap_expectation_coherent_mixture(p, a1, a2)
        assert abs(witness_fock(rho, "SWAP") - closed) < 1e-6

    def test_degenerate_raises(self):
        with pytest.raises(InvalidArgumentError):
            coherent_mixture_fock(1.0, 0.7, 0.7, 15)

    def test_entangled_above_threshold(self):
        p_star = 1.0 / (2.0 - math.exp(-4.0))
        rho = coherent_mixture_fock(p_star + 0.05, 1.0, -1.0, 25)
        assert negativity_fock(rho) > 0.0

    def test_truncation_gate(self):
        with pytest.raises(TruncationError):
            coherent_mixture_fock(0.6, 4.0, -4.0, 8)


class TestPhotonAdded:
    def test_zero_params_is_single_photon(self):
        rho = photon_added_sts_fock(0.0, 0.0, 10)
        d = 11
        expected = np.zeros((d * d, d * d))
        expected[1, 1] = 1.0  # |0>_1 |1>_2
        assert np.abs(rho.matrix - expected).max() < 1e-12
        assert witness_fock(rho, "W01") == pytest.approx(1.0, abs=1e-12)

    def test_witness_matches_closed_form(self):
        n, r, cutoff = 0.5, 0.5, 30
        rho = photon_added_sts_fock(n, r, cutoff)
        assert abs(witness_fock(rho, "W01") - witness_photon_added_closed(n, r)) < 1e-3
        assert_valid_density_matrix(rho)

    def test_convergence_toward_closed_form(self):
        # the (1, 1) corner converges monotonically as the cutoff grows
        closed = witness_photon_added_closed(1.0, 1.0)
        errs = [
            abs(witness_fock(photon_added_sts_fock(1.0, 1.0, c), "W01") - closed)
            for c in (40, 50)
        ]
        assert errs[1] < errs[0]

    def test_truncation_gate_at_corner(self):
        # (n, r) = (1, 1) at cutoff 30 loses ~3% of the trace; the 1% gate fires
        with pytest.raises(TruncationError):
            photon_added_sts_fock(1.0, 1.0, 30)

    def test_rejects_negative(self):
        with pytest.raises(InvalidArgumentError):
            photon_added_sts_fock(-0.5, 0.5, 20)


class TestWitnessFock:
    def test_vacuum_w01_vanishes(self):
        rho = tmsv_fock(0.0, 8)
        assert witness_fock(rho, "W01") == pytest.approx(0.0, abs=1e-14)

    def test_tmsv_w01(self):
        rho = tmsv_fock(0.6, 40)
        assert abs(witness_fock(rho, "W01") - (1.0 - math.exp(1.2))) < 1e-3

    def test_tmsv_swap_is_one(self):
        rho = tmsv_fock(0.6, 40)
        assert abs(witness_fock(rho, "SWAP") - 1.0) < 1e-9

    def test_product_pure_swap_is_overlap(self):
        # coherent product states: <SWAP> = |<a1|a2>|^2 = exp(-|a1-a2|^2)
        cutoff = 25
        for a1, a2 in [(0.5, -0.5), (1.0, 0.3), (0.8j, -0.2)]:
            v1 = coherent_amplitudes(a1, cutoff)
            v2 = coherent_amplitudes(a2, cutoff)
            psi = np.kron(v1, v2)
            rho = FockDensityMatrix(cutoff, np.outer(psi, psi.conj()), 0.0)
            expected = math.exp(-abs(complex(a1) - complex(a2)) ** 2)
            assert abs(witness_fock(rho, "SWAP") - expected) < 1e-10
            assert witness_fock(rho, "SWAP") >= 0.0

    def test_swap_operator_is_permutation(self):
        V = witness_operator("SWAP", 3)
        assert np.array_equal(V @ V, np.eye(16))
        psi = np.kron(coherent_amplitudes(0.4, 3), coherent_amplitudes(-0.2, 3))
        swapped = np.kron(coherent_amplitudes(-0.2, 3), coherent_amplitudes(0.4, 3))
        assert np.allclose(V @ psi, swapped, atol=1e-15)

    def test_unknown_operator(self):
        with pytest.raises(InvalidArgumentError):
            witness_fock(tmsv_fock(0.0, 8), "PPT")


class TestRealignmentTraceNorm:
    def test_vacuum_is_one(self):
        assert abs(realignment_trace_norm_fock(tmsv_fock(0.0, 8)) - 1.0) < 1e-12

    def test_tmsv_converges_to_closed_form(self):
        rho = tmsv_fock(0.6, 40)
        assert abs(realignment_trace_norm_fock(rho) - math.exp(1.2)) < 1e-3

    def test_maximally_correlated_norm_grows(self):
        def corr_state(cutoff):
            d = cutoff + 1
            e = np.zeros(d * d)
            e[np.arange(d) * (d + 1)] = 1.0
            return FockDensityMatrix(cutoff, np.outer(e, e) / d, 0.0)

        norms = [realignment_trace_norm_fock(corr_state(c)) for c in (4, 8, 12)]
        assert norms[0] < norms[1] < norms[2]
        # exact: the correlated projector realigns to norm (N+1)
        assert abs(norms[0] - 5.0) < 1e-10


class TestNegativity:
    def test_product_state_is_zero(self):
        cutoff = 15
        psi = np.kron(coherent_amplitudes(0.7, cutoff), coherent_amplitudes(-0.4, cutoff))
        rho = FockDensityMatrix(cutoff, np.outer(psi, psi.conj()), 0.0)
        assert abs(negativity_fock(rho)) < 1e-10

    def test_tmsv_schmidt_sum(self):
        rho = tmsv_fock(0.6, 40)
        assert abs(negativity_fock(rho) - (math.exp(1.2) - 1.0)) < 1e-3

    def test_nonnegative(self):
        assert negativity_fock(tmsv_fock(0.0, 8)) >= -1e-10


class TestOracleInequalities:
    def test_negativity_dominates_witness(self):
        # CREN lower bound must hold on every constructed family
        states = [
            tmsv_fock(0.6, 40),
            squeezed_thermal_fock(0.2, 0.5, 30),
            coherent_mixture_fock(0.6, 1.0, -1.0, 25),
            photon_added_sts_fock(0.5, 0.5, 30),
        ]
        for rho in states:
            w01 = witness_fock(rho, "W01")
            assert negativity_fock(rho) >= -w01 - 1e-6

    def test_cren_saturated_by_tmsv(self):
        rho = tmsv_fock(0.6, 40)
        cren = cren_lower_bound(witness_fock(rho, "W01"))
        assert abs(cren - negativity_fock(rho)) < 1e-3


class TestBinaryDump:
    def test_roundtrip(self, tmp_path):
        rho = squeezed_thermal_fock(0.2, 0.4, 12)
        path = tmp_path / "state.cvfock"
        save_fock(rho, path)
        again = load_fock(path)
        assert again.cutoff == rho.cutoff
        assert np.array_equal(again.matrix, rho.matrix)
        assert math.isnan(again.trace_deficit)

    def test_header_layout(self, tmp_path):
        rho = tmsv_fock(0.0, 4)
        path = tmp_path / "state.cvfock"
        save_fock(rho, path)
        raw = path.read_bytes()
        assert raw[:7] == b"CVFOCK1"
        import struct

        cutoff, dim = struct.unpack("<II", raw[7:15])
        assert (cutoff, dim) == (4, 25)
        assert len(raw) == 15 + 25 * 25 * 16

    def test_rejects_bad_magic(self, tmp_path):
        path = tmp_path / "junk.bin"
        path.write_bytes(b"NOTFOCK" + b"\x00" * 64)
        with pytest.raises(InvalidArgumentError):
            load_fock(path)
