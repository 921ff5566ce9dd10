import numpy as np
import pytest

from probewitness.errors import DimensionError
from probewitness.fn_transform import (
    branch_decompose,
    effective_hamiltonian,
    fn_transform,
    fn_transform_blockwise,
    nondemolition_residual,
    solve_generator,
)
from probewitness.models import ApparatusSpec, CouplingSpec, Mode, SystemSpec, build_total_hamiltonian, self_energy
from probewitness.operators import ProductSpace, commutator
from probewitness.oracle import random_hermitian, random_offdiagonal_coupling

SX = np.array([[0.0, 1.0], [1.0, 0.0]])


class TestGenerator:
    def test_zero_coupling(self):
        sol = solve_generator(np.diag([0.0, 1.0, 3.0]), np.zeros((3, 3)))
        assert not np.any(sol.S) and sol.residual == 0 and sol.zeroed_pairs == []

    def test_two_level(self):
        delta, g = 1.5, 0.1
        sol = solve_generator(np.diag([0.0, delta]), g * SX)
        expected = (g / delta) * np.array([[0.0, 1.0], [-1.0, 0.0]])
        assert np.allclose(sol.S, expected, atol=1e-15)
        assert sol.residual <= 1e-12
        # direct multiplication
        assert np.allclose(g * SX + commutator(np.diag([0.0, delta]), sol.S), 0, atol=1e-15)

    def test_forced_degeneracy(self):
        v = np.zeros((3, 3))
        v[0, 1] = v[1, 0] = 0.3
        v[1, 2] = v[2, 1] = 0.2
        sol = solve_generator(np.diag([0.0, 0.0, 1.0]), v)
        assert sol.zeroed_pairs == [(0, 1)]
        assert sol.residual == pytest.approx(0.3 * np.sqrt(2), rel=1e-12)

    def test_anti_hermitian_random(self, rng):
        h0 = random_hermitian(rng, 7)
        v = random_offdiagonal_coupling(rng, h0, 0.1)
        sol = solve_generator(h0, v)
        assert np.max(np.abs(sol.S + sol.S.conj().T)) <= 1e-10
        assert sol.residual <= 1e-10 * np.linalg.norm(v)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            solve_generator(np.eye(2), np.zeros((3, 3)))


class TestEffectiveHamiltonian:
    def test_zero_coupling(self):
        h0 = np.diag([0.0, 2.0])
        v = np.zeros((2, 2))
        assert np.array_equal(effective_hamiltonian(h0, v, solve_generator(h0, v)), h0)

    def test_two_level_closed_form(self):
        delta, g = 1.0, 0.1
        h0, v = np.diag([0.0, delta]), g * SX
        h = effective_hamiltonian(h0, v, solve_generator(h0, v))
        assert np.allclose(h, np.diag([-(g**2) / delta, delta + g**2 / delta]), atol=1e-15)

    @pytest.mark.parametrize("g", [0.2, 0.1, 0.05, 0.01])
    def test_fourth_order_bound(self, g):
        delta = 1.0
        h0, v = np.diag([0.0, delta]), g * SX
        h = effective_hamiltonian(h0, v, solve_generator(h0, v))
        exact = delta / 2 + np.array([-1, 1]) * np.sqrt(delta**2 / 4 + g**2)
        assert np.max(np.abs(np.linalg.eigvalsh(h) - exact)) <= 2 * g**4 / delta**3

    def test_third_order_on_random_instances(self, rng):
        h0 = random_hermitian(rng, 6)
        vu = random_offdiagonal_coupling(rng, h0, 1.0)
        errs = []
        for s in (0.02, 0.01, 0.005):
            v = s * vu
            h = effective_hamiltonian(h0, v, solve_generator(h0, v))
            errs.append(np.max(np.abs(np.linalg.eigvalsh(h) - np.linalg.eigvalsh(h0 + v))))
        assert errs[0] / errs[1] > 6 and errs[1] / errs[2] > 6

    def test_generator_mismatch(self):
        sol = solve_generator(np.diag([0.0, 1.0]), 0.1 * SX)
        with pytest.raises(DimensionError):
            effective_hamiltonian(np.eye(3), np.zeros((3, 3)), sol)


class TestBranches:
    def test_zero(self):
        bd = branch_decompose(np.zeros((6, 6)), ProductSpace(2, (3,)))
        assert all(not np.any(h) for h in bd.branch_hamiltonians) and bd.offdiag_leakage == 0

    def test_block_diagonal_input(self, rng):
        b = random_hermitian(rng, 3)
        c = [0.5, -1.0, 2.0]
        op = np.kron(np.diag(c), b)
        bd = branch_decompose(op, ProductSpace(3, (3,)))
        for cn, h in zip(c, bd.branch_hamiltonians):
            assert np.allclose(h, cn * b)
        assert bd.offdiag_leakage == 0
        assert np.allclose(bd.block_diagonal(), op)

    def test_lossless(self, rng):
        space = ProductSpace(3, (2, 2))
        op = random_hermitian(rng, 12)
        bd = branch_decompose(op, space)
        remainder = op - bd.block_diagonal()
        assert np.linalg.norm(remainder) == pytest.approx(bd.offdiag_leakage, rel=1e-12)
        assert np.array_equal(bd.block_diagonal() + remainder, op)

    def test_polaron_shift(self):
        app = ApparatusSpec.bath([Mode(1.0, 0.1, 10), Mode(1.5, 0.05j, 8)])
        th = build_total_hamiltonian(SystemSpec("truncated_oscillator", omega=1.0, n_sys=3), app, CouplingSpec())
        _, _, v_eff = fn_transform(th.h0, th.v)
        bd = branch_decompose(v_eff, th.space)
        assert bd.offdiag_leakage <= 1e-8
        eps = self_energy(app)
        for n, h in enumerate(bd.branch_hamiltonians):
            # ground apparatus state (vacuum) is unaffected by the top-level truncation artifact
            assert h[0, 0].real == pytest.approx(-n * eps, abs=1e-12)
            assert abs(h[0, 0].imag) <= 1e-14

    def test_blockwise_matches_full(self):
        app = ApparatusSpec.bath([Mode(1.0, 0.1, 6), Mode(1.7, 0.05, 5)])
        th = build_total_hamiltonian(SystemSpec("truncated_oscillator", omega=1.0, n_sys=3), app, CouplingSpec())
        full = branch_decompose(fn_transform(th.h0, th.v)[2], th.space)
        blocks = fn_transform_blockwise(th.h0, th.v, th.space)
        for a, b in zip(full.branch_hamiltonians, blocks.branch_hamiltonians):
            assert np.max(np.abs(a - b)) <= 1e-12

    def test_blockwise_rejects_dipole(self):
        th = build_total_hamiltonian(SystemSpec("two_level", delta=1.0), ApparatusSpec.cavity(10.0, 0.5, 4), CouplingSpec("dipole"))
        with pytest.raises(DimensionError):
            fn_transform_blockwise(th.h0, th.v, th.space)


class TestNondemolition:
    def test_dephasing(self):
        app = ApparatusSpec.bath([Mode(1.0, 0.2, 6)])
        th = build_total_hamiltonian(SystemSpec("truncated_oscillator", omega=1.0, n_sys=4), app, CouplingSpec("dephasing", "linear"))
        _, _, v_eff = fn_transform(th.h0, th.v)
        assert nondemolition_residual(th.h_s, v_eff) <= 1e-10
        assert nondemolition_residual(np.diag(th.energies), v_eff) <= 1e-10

    def test_raw_dipole(self):
        th = build_total_hamiltonian(SystemSpec("two_level", delta=1.0), ApparatusSpec.cavity(10.0, 0.5, 4), CouplingSpec("dipole"))
        assert nondemolition_residual(th.h_s, th.v) > 0

    def test_function_of_system(self, rng):
        h_s = np.diag([0.0, 1.0, 2.5])
        v = np.kron(np.diag(np.exp(-np.diag(h_s))), random_hermitian(rng, 4))
        assert nondemolition_residual(h_s, v) == 0.0

    def test_bad_embedding(self):
        with pytest.raises(DimensionError):
            nondemolition_residual(np.eye(3), np.eye(4))
