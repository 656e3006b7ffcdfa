"""Exact diagonalization and Metropolis sampling."""

import numpy as np
import pytest
import scipy.sparse as sp

from qelectra.oracle import (
    MAX_DENSE_QUBITS,
    MAX_SPARSE_QUBITS,
    MetropolisConfig,
    exact_ground_energy,
    exact_ground_state,
    exact_spectrum,
    lowest_eigenvalues,
    metropolis_sample,
    pauli_to_matrix,
    pauli_to_sparse,
)
from qelectra.pauli import PauliString, PauliSum
from test_pauli import dense, dense_sum


def test_single_letter_matrices():
    assert np.allclose(pauli_to_matrix(PauliString("X")),
                       [[0, 1], [1, 0]])
    assert np.allclose(pauli_to_matrix(PauliString("Y")),
                       [[0, -1j], [1j, 0]])
    assert np.allclose(pauli_to_matrix(PauliString("Z")),
                       [[1, 0], [0, -1]])
    assert np.allclose(pauli_to_matrix(PauliString("I")), np.eye(2))


def test_matrix_builders_match_local_kron():
    rng = np.random.default_rng(31)
    letters = np.array(list("IXYZ"))
    for _ in range(10):
        n = int(rng.integers(1, 5))
        op = PauliSum(n)
        for _ in range(3):
            word = "".join(rng.choice(letters, size=n))
            op.add_string(PauliString(word),
                          complex(*rng.standard_normal(2)))
        want = dense_sum(op)
        assert np.allclose(pauli_to_matrix(op), want, atol=1e-13)
        assert np.allclose(pauli_to_sparse(op).toarray(), want, atol=1e-13)


def test_qubit_caps_enforced():
    big_dense = PauliSum.identity(MAX_DENSE_QUBITS + 1)
    with pytest.raises(ValueError, match="dense-matrix limit"):
        pauli_to_matrix(big_dense)
    big_sparse = PauliSum.identity(MAX_SPARSE_QUBITS + 1)
    with pytest.raises(ValueError, match="sparse-matrix limit"):
        pauli_to_sparse(big_sparse)


def test_lowest_eigenvalues_dense_path():
    rng = np.random.default_rng(32)
    raw = rng.standard_normal((40, 40))
    sym = 0.5 * (raw + raw.T)
    want = np.linalg.eigvalsh(sym)
    got = lowest_eigenvalues(sym, k=5)
    assert np.allclose(got, want[:5], atol=1e-12)
    assert np.all(np.diff(got) >= 0)


def test_lowest_eigenvalues_sparse_path():
    # 1D Laplacian above the dense-direct cutoff; spectrum is known in
    # closed form, so the Lanczos branch is checked independently
    n = 2000
    lap = sp.diags([-np.ones(n - 1), 2 * np.ones(n), -np.ones(n - 1)],
                   offsets=(-1, 0, 1), format="csr")
    got = lowest_eigenvalues(lap, k=4)
    want = 2.0 - 2.0 * np.cos(np.pi * np.arange(1, 5) / (n + 1))
    assert np.allclose(got, want, atol=1e-9)


def test_full_spectrum_request_falls_back_to_dense():
    values = np.arange(2000, dtype=float)
    diag = sp.diags(values, format="csr")
    got = lowest_eigenvalues(diag, k=2000)
    assert np.allclose(got, values, atol=1e-10)


def test_k_validation():
    matrix = np.diag([1.0, 2.0])
    with pytest.raises(ValueError):
        lowest_eigenvalues(matrix, k=0)
    with pytest.raises(ValueError):
        lowest_eigenvalues(matrix, k=3)


def test_non_hermitian_inputs_rejected():
    with pytest.raises(ValueError, match="Hermitian"):
        lowest_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
    crooked = PauliSum(1)
    crooked.add_string(PauliString("X"), 0.5j)
    with pytest.raises(ValueError, match="Hermitian"):
        lowest_eigenvalues(crooked)
    with pytest.raises(ValueError, match="Hermitian"):
        exact_spectrum(crooked)
    with pytest.raises(TypeError):
        lowest_eigenvalues("not an operator")


def test_ground_energy_of_assembled_hydrogen(assembled):
    system = assembled("h2")
    energy = exact_ground_energy(system.qubit_hamiltonian)
    assert energy == pytest.approx(-1.1373060359051401, abs=1e-9)
    assert energy < system.e_hf


def test_exact_spectrum_ordering_and_truncation():
    op = PauliSum(2)
    op.add_string(PauliString("ZI"), 0.5)
    op.add_string(PauliString("IZ"), 0.25)
    op.add_string(PauliString("XX"), 0.1)
    full = exact_spectrum(op)
    assert full.shape == (4,)
    assert np.all(np.diff(full) >= 0)
    assert np.allclose(exact_spectrum(op, k=2), full[:2])
    assert np.allclose(full, np.linalg.eigvalsh(dense_sum(op)), atol=1e-12)


def test_exact_ground_state_satisfies_eigen_equation(assembled):
    system = assembled("h2")
    energy, vector = exact_ground_state(system.qubit_hamiltonian)
    matrix = pauli_to_matrix(system.qubit_hamiltonian)
    residual = np.linalg.norm(matrix @ vector - energy * vector)
    assert residual < 1e-10
    assert energy == pytest.approx(
        exact_ground_energy(system.qubit_hamiltonian), abs=1e-12)
    assert np.linalg.norm(vector) == pytest.approx(1.0)


# ---- Metropolis --------------------------------------------------------------


def two_level_flip(state, rng):
    return 1 - state


def test_two_level_occupation_matches_boltzmann():
    config = MetropolisConfig(n_samples=100_000, temperature=1.0,
                              burn_in=1_000, seed=8)
    result = metropolis_sample(float, two_level_flip, 0, config)
    p_excited = result.samples.mean()
    ratio = p_excited / (1.0 - p_excited)
    want = np.exp(-1.0)
    p_exact = want / (1.0 + want)
    sigma = np.sqrt(p_exact * (1.0 - p_exact) / config.n_samples)
    # the chain is correlated, so allow a few extra sigma of slack
    assert abs(p_excited - p_exact) < 5.0 * sigma
    assert abs(ratio - want) < 0.02
    assert result.mean_energy == pytest.approx(result.samples.mean())
    assert 0.0 < result.acceptance_rate <= 1.0


def test_metropolis_is_deterministic_per_seed():
    config = MetropolisConfig(n_samples=2_000, temperature=0.5, seed=13)
    first = metropolis_sample(float, two_level_flip, 0, config)
    second = metropolis_sample(float, two_level_flip, 0, config)
    assert np.array_equal(first.samples, second.samples)
    assert first.acceptance_rate == second.acceptance_rate
    third = metropolis_sample(
        float, two_level_flip, 0,
        MetropolisConfig(n_samples=2_000, temperature=0.5, seed=14))
    assert not np.array_equal(first.samples, third.samples)


def test_downhill_moves_always_accepted_and_burn_in_discarded():
    config = MetropolisConfig(n_samples=5, burn_in=10, seed=0)
    result = metropolis_sample(float, lambda s, rng: s - 1, 100, config)
    assert np.array_equal(result.samples, [89.0, 88.0, 87.0, 86.0, 85.0])
    assert result.acceptance_rate == 1.0


def test_uphill_moves_frozen_out_at_low_temperature():
    config = MetropolisConfig(n_samples=200, temperature=1e-9, seed=1)
    result = metropolis_sample(float, lambda s, rng: s + 1, 3, config)
    assert np.all(result.samples == 3.0)
    assert result.acceptance_rate == 0.0


def test_flat_landscape_accepts_everything():
    config = MetropolisConfig(n_samples=50, seed=2)
    result = metropolis_sample(lambda s: 0.0, lambda s, rng: s + 1, 0, config)
    assert result.acceptance_rate == 1.0


def test_metropolis_config_validation():
    with pytest.raises(ValueError):
        metropolis_sample(float, two_level_flip, 0,
                          MetropolisConfig(n_samples=0))
    with pytest.raises(ValueError):
        metropolis_sample(float, two_level_flip, 0,
                          MetropolisConfig(n_samples=10, temperature=0.0))
    with pytest.raises(ValueError):
        metropolis_sample(float, two_level_flip, 0,
                          MetropolisConfig(n_samples=10, temperature=-1.0))
