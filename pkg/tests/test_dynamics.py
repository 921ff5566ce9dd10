import numpy as np
import pytest

from probewitness.dynamics import branch_propagator, decoherence_matrix, orthogonality_time
from probewitness.errors import DomainError
from probewitness.fn_transform import branch_decompose
from probewitness.models import ApparatusSpec, CouplingSpec, Mode, SystemSpec, build_total_hamiltonian
from probewitness.oracle import dephasing_overlap_closed_form, random_hermitian


def qubit_dephasing(modes):
    th = build_total_hamiltonian(
        SystemSpec("two_level", delta=1.0), ApparatusSpec.bath(modes), CouplingSpec("dephasing", "explicit", (0.0, 1.0))
    )
    vac = np.zeros(th.space.app_dim)
    vac[0] = 1.0
    return th, branch_decompose(th.v, th.space), vac


class TestOverlaps:
    def test_initial_and_diagonal(self):
        th, bd, vac = qubit_dephasing([Mode(1.0, 0.4, 12)])
        rec = decoherence_matrix(bd, th.h_a_local, vac, np.linspace(0, 5, 11))
        assert np.allclose(rec.overlaps[0], 1.0, atol=1e-14)
        assert np.all(rec.pair(0, 0) == 1.0) and np.all(rec.pair(1, 1) == 1.0)
        assert np.all(rec.overlaps <= 1 + 1e-12)

    def test_closed_form_single_mode(self):
        mode = Mode(1.3, 0.3 - 0.1j, 30)
        th, bd, vac = qubit_dephasing([mode])
        times = np.linspace(0, 2 * np.pi / mode.omega, 101)
        rec = decoherence_matrix(bd, th.h_a_local, vac, times)
        assert np.max(np.abs(rec.pair(0, 1) - dephasing_overlap_closed_form([mode], 1.0, times))) <= 1e-8

    def test_periodic(self):
        mode = Mode(2.0, 0.2, 25)
        th, bd, vac = qubit_dephasing([mode])
        period = 2 * np.pi / mode.omega
        times = np.array([0.3, 0.3 + period, 0.3 + 3 * period])
        ov = decoherence_matrix(bd, th.h_a_local, vac, times).pair(0, 1)
        assert np.allclose(ov, ov[0], atol=1e-10)

    def test_factorizes_over_modes(self):
        m1, m2 = Mode(1.0, 0.2, 14), Mode(1.7, 0.15, 12)
        times = np.linspace(0, 8, 41)
        th, bd, vac = qubit_dephasing([m1, m2])
        both = decoherence_matrix(bd, th.h_a_local, vac, times).pair(0, 1)
        singles = []
        for m in (m1, m2):
            t1, b1, v1 = qubit_dephasing([m])
            singles.append(decoherence_matrix(b1, t1.h_a_local, v1, times).pair(0, 1))
        assert np.max(np.abs(both - singles[0] * singles[1])) <= 1e-10

    def test_global_phase(self, rng):
        th, bd, _ = qubit_dephasing([Mode(1.0, 0.3, 10)])
        psi = rng.normal(size=10) + 1j * rng.normal(size=10)
        psi /= np.linalg.norm(psi)
        times = np.linspace(0, 4, 9)
        a = decoherence_matrix(bd, th.h_a_local, psi, times).overlaps
        b = decoherence_matrix(bd, th.h_a_local, np.exp(0.7j) * psi, times).overlaps
        assert np.allclose(a, b, atol=1e-13)

    def test_literal_mode_differs(self):
        th, bd, vac = qubit_dephasing([Mode(1.0, 0.3, 20)])
        times = np.linspace(0, 3, 7)
        full = decoherence_matrix(bd, th.h_a_local, vac, times).pair(0, 1)
        lit = decoherence_matrix(bd, th.h_a_local, vac, times, literal=True).pair(0, 1)
        assert np.max(np.abs(full - lit)) > 1e-3

    def test_unnormalized_rejected(self):
        th, bd, _ = qubit_dephasing([Mode(1.0, 0.3, 5)])
        with pytest.raises(DomainError):
            decoherence_matrix(bd, th.h_a_local, np.ones(5), [0.0])


def test_propagator_unitary(rng):
    h = random_hermitian(rng, 8)
    p = branch_propagator(h, 1.7)
    assert np.max(np.abs(p.conj().T @ p - np.eye(8))) <= 1e-10


class TestOrthogonalityTime:
    def test_threshold_one_skips_t0(self):
        th, bd, vac = qubit_dephasing([Mode(1.0, 0.3, 20)])
        times = np.linspace(0, 1, 11)
        tau = orthogonality_time(decoherence_matrix(bd, th.h_a_local, vac, times), 1.0)
        assert tau[(0, 1)] == pytest.approx(0.1)

    def test_small_coupling_never(self):
        mode = Mode(1.0, 0.1, 20)
        th, bd, vac = qubit_dephasing([mode])
        times = np.linspace(0, 4 * np.pi, 400)
        rec = decoherence_matrix(bd, th.h_a_local, vac, times)
        assert rec.pair(0, 1).min() >= np.exp(-2 * 0.1**2) - 1e-10
        assert orthogonality_time(rec, 0.1)[(0, 1)] is None

    def test_many_mode_bath(self):
        omegas = [1.0, np.sqrt(2), np.sqrt(3), np.pi / 2, np.e / 2]
        modes = [Mode(w, 0.5 * w) for w in omegas]
        times = np.linspace(0, 10, 1001)
        ov = dephasing_overlap_closed_form(modes, 1.0, times)
        from probewitness.dynamics import DecoherenceRecord

        full = np.ones((len(times), 2, 2))
        full[:, 0, 1] = full[:, 1, 0] = ov
        tau = orthogonality_time(DecoherenceRecord(times, full, (0, 1)), 0.2)
        assert tau[(0, 1)] is not None and 0 < tau[(0, 1)] < 10

    def test_many_mode_bath_numeric(self):
        modes = [Mode(w, 0.5 * w, 4) for w in (1.0, np.sqrt(2), np.sqrt(3), np.pi / 2, np.e / 2)]
        th, bd, vac = qubit_dephasing(modes)
        times = np.linspace(0, 6, 61)
        tau = orthogonality_time(decoherence_matrix(bd, th.h_a_local, vac, times), 0.2)
        assert tau[(0, 1)] is not None

    @pytest.mark.parametrize("thr", [0.0, -0.1, 1.5])
    def test_bad_threshold(self, thr):
        th, bd, vac = qubit_dephasing([Mode(1.0, 0.3, 4)])
        with pytest.raises(DomainError):
            orthogonality_time(decoherence_matrix(bd, th.h_a_local, vac, [0.0, 1.0]), thr)
