import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xtele.core.qmath import (
    PAULIS,
    PureQubit,
    hermitian_eigenvalues,
    kron,
    octahedral_inputs,
    partial_trace,
    pure_fidelity,
    trace_norm,
    validate_density,
)
from xtele.errors_logs.errors import BadSubsystemSpec, InvalidDensity, NotHermitian, ParamOutOfRange


def random_hermitian(seed: int, dim: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (A + A.conj().T) / 2


def random_density(seed: int, dim: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = A @ A.conj().T
    return rho / np.trace(rho)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1), dim=st.sampled_from([2, 3, 4, 8]))
def test_hermitian_eigenvalues_match_numpy(seed, dim):
    A = random_hermitian(seed, dim)
    np.testing.assert_allclose(hermitian_eigenvalues(A), np.linalg.eigvalsh(A), atol=1e-9)


def test_hermitian_eigenvalues_of_pauli_products():
    for i in range(1, 4):
        for j in range(1, 4):
            np.testing.assert_allclose(hermitian_eigenvalues(kron(PAULIS[i], PAULIS[j])), [-1, -1, 1, 1], atol=1e-12)


def test_hermitian_eigenvalues_reject_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(np.ones((2, 3)))


def test_trace_norm_of_diagonal_matrix():
    assert trace_norm(np.diag([-0.8, 0.8, -0.8])) == pytest.approx(2.4, abs=1e-12)


def test_validate_density():
    rho = random_density(7, 4)
    np.testing.assert_allclose(validate_density(rho), rho, atol=1e-15)
    with pytest.raises(InvalidDensity):
        validate_density(2 * rho)
    with pytest.raises(InvalidDensity):
        validate_density(np.diag([1.5, -0.5]))
    with pytest.raises(InvalidDensity):
        validate_density(rho, dim=2)
    rho = rho.copy()
    rho[1, 1] = np.nan
    with pytest.raises(InvalidDensity):
        validate_density(rho)


def test_pure_qubit_angles():
    with pytest.raises(ParamOutOfRange):
        PureQubit(-0.1)
    with pytest.raises(ParamOutOfRange):
        PureQubit(np.pi + 0.1)
    assert PureQubit(1.0, 2 * np.pi + 0.5).phi == pytest.approx(0.5)


def test_pure_qubit_from_vector_drops_global_phase():
    psi = PureQubit(1.2, 0.7)
    other = PureQubit.from_vector(np.exp(0.3j) * psi.vector)
    assert other.theta == pytest.approx(psi.theta)
    assert other.phi == pytest.approx(psi.phi)


def test_octahedral_inputs_cover_the_bloch_axes():
    blochs = np.array([psi.bloch for psi in octahedral_inputs()])
    np.testing.assert_allclose(blochs.sum(axis=0), 0.0, atol=1e-15)
    np.testing.assert_allclose(np.abs(blochs).sum(axis=0), 2.0, atol=1e-15)


def test_pure_fidelity():
    psi = PureQubit(np.pi / 2, 0.0)
    assert pure_fidelity(psi, psi.projector) == pytest.approx(1.0, abs=1e-15)
    assert pure_fidelity(psi, np.eye(2) / 2) == pytest.approx(0.5)
    assert pure_fidelity(psi, PureQubit(np.pi / 2, np.pi).projector) == pytest.approx(0.0, abs=1e-15)


def test_partial_trace_of_product_states():
    A, B, C = random_density(1, 2), random_density(2, 2), random_density(3, 2)
    np.testing.assert_allclose(partial_trace(kron(A, B), [1]), A, atol=1e-14)
    np.testing.assert_allclose(partial_trace(kron(A, B), [0]), B, atol=1e-14)
    ABC = kron(kron(A, B), C)
    np.testing.assert_allclose(partial_trace(ABC, (0, 1)), C, atol=1e-14)
    np.testing.assert_allclose(partial_trace(ABC, (1,)), kron(A, C), atol=1e-14)
    np.testing.assert_allclose(partial_trace(ABC, (2, 0)), B, atol=1e-14)
    np.testing.assert_allclose(partial_trace(ABC, (0, 1, 2)), [[1.0]], atol=1e-14)


@pytest.mark.parametrize("traced", [(2,), (0, 0), (-1,), (0.5,)])
def test_partial_trace_bad_subsystems(traced):
    with pytest.raises(BadSubsystemSpec):
        partial_trace(random_density(4, 4), traced)


def test_partial_trace_bad_dimension():
    with pytest.raises(BadSubsystemSpec):
        partial_trace(np.eye(2) / 2, (0,))


@settings(max_examples=30, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
    s=st.floats(min_value=-2, max_value=2),
    t=st.floats(min_value=-2, max_value=2),
)
def test_kron_is_bilinear(seed, s, t):
    A, A2, B = random_hermitian(seed, 2), random_hermitian(seed + 1, 2), random_hermitian(seed + 2, 2)
    np.testing.assert_allclose(kron(s * A + t * A2, B), s * kron(A, B) + t * kron(A2, B), atol=1e-12)
    np.testing.assert_allclose(kron(A, B) @ kron(A2, B), kron(A @ A2, B @ B), atol=1e-12)
