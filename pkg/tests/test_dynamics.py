from math import pi

import numpy as np
import pytest
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from conftest import ghz, random_density_matrix
from tcdiscord.dynamics import (
    EvolutionKernel,
    TimeSeries,
    auto_step,
    check_master_equation,
    evolve,
    master_equation_rhs,
    n_qubits,
    purity,
    reduce_to_qubit,
    time_grid,
    trace_out_field,
)
from tcdiscord.hamiltonian import build_hamiltonian, eigendecompose
from tcdiscord.model import InitialStateParams, StateKind, SystemConfig, build_basis, initial_state


def setup(N, n=0, gamma=0.0, p=0.0, alpha=0.0):
    config = SystemConfig(N, n, decoherence=gamma)
    basis = build_basis(config)
    H = np.asarray(build_hamiltonian(basis, config))
    spectrum = eigendecompose(H)
    rho0 = np.asarray(initial_state(basis, InitialStateParams(p, alpha)))
    return basis, H, EvolutionKernel.from_state(spectrum, rho0, gamma), rho0


class TestEvolve:
    @pytest.mark.parametrize("gamma", [0.0, 0.05, 1.0])
    def test_identity_at_zero(self, gamma):
        _, _, kernel, rho0 = setup(3, 2, gamma, 0.3, pi / 5)
        assert np.allclose(np.asarray(evolve(kernel, 0.0)), rho0, atol=1e-13)

    def test_unitary_case_matches_matrix_exponential(self):
        _, H, kernel, rho0 = setup(3, 1, 0.0, 0.2, pi / 3)
        for t in (0.3, 1.7, 6.2):
            U = expm(-1j * H * t)
            assert np.allclose(np.asarray(evolve(kernel, t)), U @ rho0 @ U.conj().T, atol=1e-10)

    def test_decoherent_case_matches_ode_integration(self):
        _, H, kernel, rho0 = setup(2, 1, 0.05, 0.0, pi / 4)
        d = H.shape[0]

        def rhs(_, y):
            return master_equation_rhs(H, y.reshape(d, d), 0.05).ravel()

        sol = solve_ivp(rhs, (0, 3.0), rho0.astype(complex).ravel(), rtol=1e-10, atol=1e-12,
                        t_eval=[1.0, 3.0])
        for k, t in enumerate(sol.t):
            assert np.allclose(np.asarray(evolve(kernel, t)), sol.y[:, k].reshape(d, d), atol=1e-7)

    def test_all_excited_population_closed_form(self):
        # symmetric three-level reduction: |gg>, (|ge>+|eg>)/sqrt2, |ee>
        for n in (0, 3):
            _, _, kernel, _ = setup(2, n)
            a, b = np.sqrt(2 * (n + 1)), np.sqrt(2 * (n + 2))
            W = np.hypot(a, b)
            for t in np.linspace(0, 10, 41):
                c3 = a * b * (np.cos(W * t) - 1) / W**2
                assert np.asarray(evolve(kernel, t))[3, 3].real == pytest.approx(c3**2, abs=1e-12)

    def test_periodicity(self):
        _, _, kernel, _ = setup(2, 0)
        T = 2 * pi / np.sqrt(6)
        for t in (0.0, 0.77, 3.1):
            diff = np.asarray(evolve(kernel, t + T)) - np.asarray(evolve(kernel, t))
            assert np.max(np.abs(diff)) <= 1e-8

    def test_unitary_preserves_purity(self):
        _, _, kernel, rho0 = setup(3, 1, 0.0, 0.4, 1.0)
        for t in (0.5, 4.0, 9.0):
            assert purity(evolve(kernel, t)) == pytest.approx(purity(rho0), abs=1e-9)

    def test_long_time_limit_is_dephased(self):
        _, _, kernel, _ = setup(2, 0, 1.0, 0.0, pi / 4)
        E = kernel.spectrum.eigenvalues
        same = np.isclose(E[:, None], E[None, :])
        expected = np.where(same, kernel.rho0_eigenbasis, 0)
        V = kernel.spectrum.eigenvectors
        assert np.allclose(np.asarray(evolve(kernel, 200.0)), V @ expected @ V.T, atol=1e-10)

    def test_purity_decays_monotonically(self):
        _, _, kernel, _ = setup(2, 1, 0.05, 0.0, pi / 4)
        values = [purity(evolve(kernel, t)) for t in np.arange(0, 10, 0.05)]
        assert np.all(np.diff(values) <= 1e-10)

    def test_negative_time(self):
        _, _, kernel, _ = setup(2)
        with pytest.raises(ValueError):
            evolve(kernel, -1.0)

    def test_negative_gamma(self):
        _, _, kernel, rho0 = setup(2)
        with pytest.raises(ValueError):
            EvolutionKernel.from_state(kernel.spectrum, rho0, -0.1)


class TestMasterEquation:
    def test_stationary_eigenprojector(self):
        basis, H, _, _ = setup(2, 0)
        spectrum = eigendecompose(H)
        v = spectrum.eigenvectors[:, -1]
        kernel = EvolutionKernel.from_state(spectrum, np.outer(v, v), 0.0)
        assert check_master_equation(kernel, 1e-5) <= 1e-8

    def test_first_order_residual(self):
        _, H, kernel, _ = setup(2, 0, 0.05, 0.0, pi / 4)
        r1 = check_master_equation(kernel, 1e-4)
        r2 = check_master_equation(kernel, 5e-5)
        assert r1 / r2 == pytest.approx(2.0, abs=0.2)
        norm = np.linalg.norm(H, 2)
        assert r1 <= 10 * 1e-4 * norm**3

    @pytest.mark.parametrize("dt", [0.0, -1e-5, 1e-3])
    def test_dt_range(self, dt):
        _, _, kernel, _ = setup(2)
        with pytest.raises(ValueError):
            check_master_equation(kernel, dt)


class TestReduction:
    def test_field_trace_blocks(self):
        basis = build_basis(SystemConfig(2, 0))
        rho = np.full((4, 4), 0.05, dtype=complex)
        np.fill_diagonal(rho, 0.25)
        atoms = np.asarray(trace_out_field(rho, basis))
        assert atoms[0, 3] == 0 and atoms[3, 0] == 0
        assert atoms[1, 2] == 0.05 and atoms[2, 1] == 0.05
        assert atoms[0, 1] == 0
        assert np.array_equal(np.diag(atoms), np.diag(rho))

    def test_field_trace_at_time_zero(self):
        basis, _, kernel, rho0 = setup(2, 0, 0.0, 0.0, 0.0)
        atoms = trace_out_field(evolve(kernel, 0.0), basis)
        assert atoms.kind is StateKind.ATOMS_ONLY
        assert np.allclose(np.asarray(atoms), rho0, atol=1e-13)

    def test_corner_state_reduction(self):
        basis, _, _, rho0 = setup(2, 0, 0.0, 0.0, pi / 4)
        atoms = trace_out_field(rho0, basis)
        for j in range(2):
            assert np.allclose(np.asarray(reduce_to_qubit(atoms, j)), np.eye(2) / 2, atol=1e-15)

    def test_field_trace_shape_check(self):
        with pytest.raises(ValueError):
            trace_out_field(np.eye(2) / 2, build_basis(SystemConfig(2)))

    @pytest.mark.parametrize("N", [1, 2, 3, 4])
    def test_product_of_ground(self, N):
        rho = np.zeros((2**N, 2**N))
        rho[0, 0] = 1
        for j in range(N):
            assert np.array_equal(np.asarray(reduce_to_qubit(rho, j)), [[1, 0], [0, 0]])

    @pytest.mark.parametrize("N", [2, 3, 5])
    def test_ghz_marginals(self, N):
        for j in range(N):
            assert np.allclose(np.asarray(reduce_to_qubit(ghz(N), j)), np.eye(2) / 2)

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_against_loop_partial_trace(self, N, rng):
        rho = random_density_matrix(2**N, rng)
        for j in range(N):
            expected = np.zeros((2, 2), dtype=complex)
            for r in range(2**N):
                for c in range(2**N):
                    rest_r = [(r >> (N - 1 - i)) & 1 for i in range(N) if i != j]
                    rest_c = [(c >> (N - 1 - i)) & 1 for i in range(N) if i != j]
                    if rest_r == rest_c:
                        expected[(r >> (N - 1 - j)) & 1, (c >> (N - 1 - j)) & 1] += rho[r, c]
            reduced = reduce_to_qubit(rho, j)
            assert reduced.kind is StateKind.SINGLE_QUBIT
            assert np.allclose(np.asarray(reduced), expected, atol=1e-14)

    def test_product_state_factorises(self, rng):
        a = random_density_matrix(2, rng)
        b = random_density_matrix(2, rng)
        rho = np.kron(a, b)
        assert np.allclose(np.asarray(reduce_to_qubit(rho, 0)), a)
        assert np.allclose(np.asarray(reduce_to_qubit(rho, 1)), b)

    def test_index_range(self):
        with pytest.raises(IndexError):
            reduce_to_qubit(np.eye(4) / 4, 2)

    def test_n_qubits(self):
        assert n_qubits(32) == 5
        with pytest.raises(ValueError):
            n_qubits(6)


class TestPurityAndGrid:
    def test_purity_values(self):
        assert purity(np.diag([1.0, 0, 0])) == 1
        assert purity(np.eye(8) / 8) == pytest.approx(1 / 8)
        assert purity(np.diag([0.75, 0.25])) == pytest.approx(5 / 8)

    def test_grid(self):
        t = time_grid(0.0, 10.0, 0.01)
        assert len(t) == 1001 and t[-1] == pytest.approx(10.0)
        assert np.array_equal(time_grid(2.0, 2.0, 0.1), [2.0])
        assert time_grid(0, 1, 0.3)[-1] == pytest.approx(0.9)
        with pytest.raises(ValueError):
            time_grid(0, 1, 0)
        with pytest.raises(ValueError):
            time_grid(1, 0, 0.1)

    def test_auto_step(self):
        spectrum = eigendecompose(np.asarray(setup(2, 10)[1]))
        spread = 2 * np.sqrt(2 * 23)
        assert auto_step(spectrum, 0.05) == pytest.approx(0.2 / spread)
        assert auto_step(spectrum, 0.01) == 0.01
        assert auto_step(spectrum, 1e-4) == 1e-4

    def test_timeseries_validation(self):
        TimeSeries([0, 1], [0.0, 1.0], "x")
        with pytest.raises(ValueError):
            TimeSeries([0, 0], [1.0, 2.0])
        with pytest.raises(ValueError):
            TimeSeries([0, 1], [1.0])
        with pytest.raises(ValueError):
            TimeSeries([0, 1], [1.0, np.nan])
