# -*- coding: utf-8 -*-
"""
Dense complex linear algebra for the 2x2, 3x3, 4x4 and 8x8 matrices used by the package.

Matrices are plain numpy arrays, row-major and 0-indexed in the computational basis
|00>, |01>, |10>, |11> (and |abc> for three qubits, first qubit most significant).
Only the eigenvalue solver is written out by hand; products and Kronecker products
come from numpy.
"""
import warnings
from typing import Iterable, Union

import numpy as np

from xtele.core.constants import (
    CLAMP_TOL,
    HERMITIAN_TOL,
    JACOBI_MAX_SWEEPS,
    JACOBI_TOL,
    PSD_TOL,
    TRACE_TOL,
    UNIT_NORM_TOL,
)
from xtele.errors_logs.errors import BadSubsystemSpec, InvalidDensity, NotHermitian, ParamOutOfRange

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z)
PAULI_NAMES = ("I", "X", "Y", "Z")


def pauli(index: int) -> np.ndarray:
    """Returns sigma^index, with sigma^0 the identity"""
    if index not in (0, 1, 2, 3):
        raise ParamOutOfRange(f"Pauli index must be 0, 1, 2 or 3, got {index}")
    return PAULIS[index].copy()


def identity(dim: int = 2) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def kron(A, B) -> np.ndarray:
    """Kronecker product, (A x B)[i*rB + k, j*cB + l] = A[i, j] * B[k, l]"""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def adjoint(A) -> np.ndarray:
    return np.asarray(A, dtype=complex).conj().T


def hermiticity_defect(A) -> float:
    A = np.asarray(A, dtype=complex)
    return float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0


def _jacobi_symmetric(a: np.ndarray) -> np.ndarray:
    """Cyclic Jacobi sweeps on a real symmetric matrix, returns the unsorted diagonal"""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(JACOBI_MAX_SWEEPS):
        if np.sqrt(np.sum(a[off_mask] ** 2)) < JACOBI_TOL:
            return np.diag(a).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                sign = 1.0 if theta >= 0.0 else -1.0
                t = sign / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                row_p, row_q = a[p].copy(), a[q].copy()
                a[p] = c * row_p - s * row_q
                a[q] = s * row_p + c * row_q
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, q] = a[q, p] = 0.0
    if np.sqrt(np.sum(a[off_mask] ** 2)) >= JACOBI_TOL:
        warnings.warn(
            UserWarning(f"Jacobi iteration did not converge within {JACOBI_MAX_SWEEPS} sweeps")
        )
    return np.diag(a).copy()


def hermitian_eigenvalues(A) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in ascending order

    The n x n Hermitian matrix X + iY is embedded in the real symmetric matrix
    [[X, -Y], [Y, X]], whose spectrum is that of A with every eigenvalue doubled.
    The embedding is diagonalised by cyclic Jacobi rotations.

    Parameters
    ----------
    A : array_like
        square complex matrix

    Returns
    -------
    np.ndarray
        real eigenvalues, ascending

    Raises
    ------
    NotHermitian
        if max|A - A^dagger| exceeds 1e-10 or A is not square
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {A.shape}")
    defect = hermiticity_defect(A)
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"matrix deviates from its adjoint by {defect:.3e}")
    A = (A + A.conj().T) / 2
    X, Y = A.real, A.imag
    embedding = np.block([[X, -Y], [Y, X]])
    doubled = np.sort(_jacobi_symmetric(embedding))
    return (doubled[0::2] + doubled[1::2]) / 2


def trace_norm(T) -> float:
    """Sum of the singular values of T, i.e. sum of sqrt(u_i) over the eigenvalues of T^dagger T"""
    T = np.asarray(T, dtype=complex)
    u = hermitian_eigenvalues(T.conj().T @ T)
    return float(np.sum(np.sqrt(np.clip(u, 0.0, None))))


def validate_density(rho, dim: Union[int, None] = None) -> np.ndarray:
    """Checks that rho is Hermitian, has unit trace and is positive semidefinite

    Returns the hermitised matrix. Raises InvalidDensity otherwise.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidDensity(f"a density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise InvalidDensity(f"expected a {dim}x{dim} density matrix, got {rho.shape[0]}x{rho.shape[1]}")
    if not np.all(np.isfinite(rho)):
        raise InvalidDensity("density matrix has non-finite entries")
    try:
        eigenvalues = hermitian_eigenvalues(rho)
    except NotHermitian as err:
        raise InvalidDensity(str(err)) from err
    trace = np.trace(rho)
    if abs(trace - 1.0) > TRACE_TOL:
        raise InvalidDensity(f"trace is {trace.real:.15g}, expected 1")
    if eigenvalues[0] < -PSD_TOL:
        raise InvalidDensity(f"negative eigenvalue {eigenvalues[0]:.3e}")
    return (rho + rho.conj().T) / 2


class PureQubit:
    """Pure qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> given by its Bloch angles"""

    __slots__ = ("_theta", "_phi")

    def __init__(self, theta: float, phi: float = 0.0):
        if not 0.0 <= theta <= np.pi:
            raise ParamOutOfRange(f"theta must lie in [0, pi], got {theta}")
        self._theta = float(theta)
        self._phi = float(np.mod(phi, 2 * np.pi))

    @property
    def theta(self) -> float:
        return self._theta

    @property
    def phi(self) -> float:
        return self._phi

    @property
    def vector(self) -> np.ndarray:
        return np.array(
            [np.cos(self._theta / 2), np.exp(1j * self._phi) * np.sin(self._theta / 2)], dtype=complex
        )

    @property
    def projector(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())

    @property
    def bloch(self) -> np.ndarray:
        return np.array(
            [
                np.sin(self._theta) * np.cos(self._phi),
                np.sin(self._theta) * np.sin(self._phi),
                np.cos(self._theta),
            ]
        )

    @classmethod
    def from_vector(cls, v) -> "PureQubit":
        v = np.asarray(v, dtype=complex)
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise ParamOutOfRange(f"state vector has norm {norm:.15g}")
        # drop the global phase so that the |0> amplitude is real and nonnegative
        if abs(v[0]) > 0:
            v = v * np.exp(-1j * np.angle(v[0]))
        theta = 2 * np.arctan2(abs(v[1]), abs(v[0]))
        phi = np.angle(v[1]) if abs(v[1]) > 0 else 0.0
        return cls(min(theta, np.pi), phi)

    def __eq__(self, other):
        if not isinstance(other, PureQubit):
            return NotImplemented
        return self._theta == other._theta and self._phi == other._phi

    def __hash__(self):
        return hash((self._theta, self._phi))

    def __repr__(self):
        return f"PureQubit(theta={self._theta!r}, phi={self._phi!r})"


def octahedral_inputs() -> list:
    """The six Bloch-axis states +z, -z, +x, -x, +y, -y"""
    return [
        PureQubit(0.0, 0.0),
        PureQubit(np.pi, 0.0),
        PureQubit(np.pi / 2, 0.0),
        PureQubit(np.pi / 2, np.pi),
        PureQubit(np.pi / 2, np.pi / 2),
        PureQubit(np.pi / 2, 3 * np.pi / 2),
    ]


def pure_fidelity(psi, rho) -> float:
    """<psi|rho|psi> for a pure qubit psi and a one-qubit density matrix rho

    Parameters
    ----------
    psi : PureQubit or array_like
        pure state, either as Bloch angles or as a unit 2-vector
    rho : array_like
        2x2 density matrix

    Raises
    ------
    InvalidDensity
        if rho is not a valid one-qubit density matrix
    """
    rho = validate_density(rho, dim=2)
    v = psi.vector if isinstance(psi, PureQubit) else np.asarray(psi, dtype=complex)
    value = float(np.real(v.conj() @ rho @ v))
    if -CLAMP_TOL <= value < 0.0:
        value = 0.0
    elif 1.0 < value <= 1.0 + CLAMP_TOL:
        value = 1.0
    return value


def partial_trace(rho, traced: Iterable[int], validate: bool = True) -> np.ndarray:
    """Traces out the qubits listed in ``traced`` (0 is the most significant qubit)

    Parameters
    ----------
    rho : array_like
        4x4 or 8x8 matrix
    traced : Iterable[int]
        qubit positions to remove; tracing every qubit returns a 1x1 matrix
    validate : bool, optional
        check that rho is a density matrix first, by default True

    Raises
    ------
    BadSubsystemSpec
        wrong dimension, repeated or out-of-range qubit index
    InvalidDensity
        if validate is True and rho is not a density matrix
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (4, 8):
        raise BadSubsystemSpec(f"partial trace needs a 4x4 or 8x8 matrix, got shape {rho.shape}")
    num_qubits = 2 if rho.shape[0] == 4 else 3
    traced = tuple(traced)
    if len(set(traced)) != len(traced):
        raise BadSubsystemSpec(f"repeated qubit in {traced}")
    for q in traced:
        if not isinstance(q, (int, np.integer)) or not 0 <= q < num_qubits:
            raise BadSubsystemSpec(f"qubit index {q!r} outside 0..{num_qubits - 1}")
    if validate:
        rho = validate_density(rho)

    tensor = rho.reshape((2,) * (2 * num_qubits))
    kept = num_qubits
    for q in sorted(traced, reverse=True):
        tensor = np.trace(tensor, axis1=q, axis2=q + kept)
        kept -= 1
    dim = 2 ** kept
    return np.asarray(tensor).reshape(dim, dim)
