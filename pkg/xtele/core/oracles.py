# -*- coding: utf-8 -*-
"""
Brute-force verifiers for the closed forms of xtele.core.metrics.

The teleportation simulator works on three qubits ordered (input, Alice's half, Bob's half).
Alice projects the first two onto a generalized Bell basis, Bob applies the correction that the
scheme assigns to her outcome and the fidelity with the input is averaged over pure inputs.
The optimizers search Bob's corrections and the CHSH measurement directions with
xtele.core.utils.multistart_maximize from seed-derived starting points.
"""
import itertools
import warnings
from typing import Sequence, Union

import numpy as np

from xtele.core.constants import DEFAULT_MC_N, DEFAULT_RESTARTS, EXCESS_TOL, PSD_TOL, TRACE_TOL, UNITARY_TOL
from xtele.core.qmath import (
    IDENTITY,
    PAULI_NAMES,
    PAULIS,
    SIGMA_Y,
    PureQubit,
    kron,
    octahedral_inputs,
    partial_trace,
    validate_density,
)
from xtele.core.states import DenseState, XState, as_dense_state, bell_basis, rng_stream
from xtele.core.utils import multistart_maximize
from xtele.errors_logs.errors import InvalidDensity, NonUnitaryCorrection, ParamOutOfRange

# U3 angles (theta, phi, lambda) of I, X, Y, Z
PAULI_ANGLES = np.array([[0.0, 0.0, 0.0], [np.pi, 0.0, np.pi], [np.pi, np.pi / 2, np.pi / 2], [0.0, 0.0, np.pi]])

_SPIN_FLIP = kron(SIGMA_Y, SIGMA_Y)


def u3(theta: float, phi: float, lam: float) -> np.ndarray:
    """[[cos(t/2), -e^{i lam} sin(t/2)], [e^{i phi} sin(t/2), e^{i(phi+lam)} cos(t/2)]]"""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]], dtype=complex
    )


def _u3_stack(angles: np.ndarray) -> np.ndarray:
    angles = np.asarray(angles, dtype=float).reshape(-1, 3)
    theta, phi, lam = angles.T
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    out = np.empty((len(angles), 2, 2), dtype=complex)
    out[:, 0, 0] = c
    out[:, 0, 1] = -np.exp(1j * lam) * s
    out[:, 1, 0] = np.exp(1j * phi) * s
    out[:, 1, 1] = np.exp(1j * (phi + lam)) * c
    return out


class CorrectionScheme:
    """Bob's correction for each of Alice's four outcomes

    In ``pauli`` mode the assignment maps outcome i to sigma^k (k = 0 is the identity); in
    ``unitary`` mode every outcome gets an arbitrary 2x2 unitary, given by U3 angles or directly
    as a matrix.
    """

    def __init__(self, matrices: Sequence[np.ndarray], mode: str, assignment=None, angles=None):
        self.mode = mode
        self.assignment = None if assignment is None else tuple(int(k) for k in assignment)
        self.angles = None if angles is None else np.asarray(angles, dtype=float).reshape(4, 3)
        self.matrices = np.array([np.asarray(m, dtype=complex) for m in matrices])

    @classmethod
    def pauli(cls, assignment: Sequence[int] = (0, 1, 2, 3)) -> "CorrectionScheme":
        assignment = tuple(assignment)
        if len(assignment) != 4 or any(k not in (0, 1, 2, 3) for k in assignment):
            raise ParamOutOfRange(f"a Pauli assignment needs four indices in 0..3, got {assignment}")
        return cls([PAULIS[k] for k in assignment], "pauli", assignment=assignment)

    @classmethod
    def unitary(cls, angles) -> "CorrectionScheme":
        angles = np.asarray(angles, dtype=float)
        if angles.size != 12:
            raise ParamOutOfRange(f"a unitary scheme needs 12 angles, got {angles.size}")
        return cls(_u3_stack(angles), "unitary", angles=angles)

    @classmethod
    def from_matrices(cls, matrices: Sequence) -> "CorrectionScheme":
        """Unitary-mode scheme from four explicit matrices

        Raises
        ------
        NonUnitaryCorrection
            if some U deviates from U^dagger U = I by more than 1e-10
        """
        matrices = [np.asarray(m, dtype=complex) for m in matrices]
        if len(matrices) != 4:
            raise NonUnitaryCorrection(f"expected four corrections, got {len(matrices)}")
        for i, m in enumerate(matrices):
            if m.shape != (2, 2) or np.max(np.abs(m.conj().T @ m - IDENTITY)) > UNITARY_TOL:
                raise NonUnitaryCorrection(f"correction for outcome {i} is not a 2x2 unitary")
        return cls(matrices, "unitary")

    def to_dict(self) -> dict:
        out = {"mode": self.mode}
        if self.assignment is not None:
            out["assignment"] = {str(i): PAULI_NAMES[k] for i, k in enumerate(self.assignment)}
        if self.angles is not None:
            out["angles"] = self.angles.tolist()
        out["matrices"] = [{"re": m.real.tolist(), "im": m.imag.tolist()} for m in self.matrices]
        return out

    def __repr__(self):
        if self.mode == "pauli":
            return f"CorrectionScheme.pauli({self.assignment})"
        return f"CorrectionScheme(mode='{self.mode}')"


class TeleportOutcome:
    """One of Alice's four outcomes: its probability and Bob's state before and after correction"""

    def __init__(self, outcome_index: int, probability: float, bob_state: np.ndarray, corrected_state: np.ndarray):
        self.outcome_index = outcome_index
        self.probability = probability
        self.bob_state = bob_state
        self.corrected_state = corrected_state

    def to_dict(self) -> dict:
        return {
            "outcome_index": self.outcome_index,
            "probability": self.probability,
            "bob_state": {"re": self.bob_state.real.tolist(), "im": self.bob_state.imag.tolist()},
            "corrected_state": {"re": self.corrected_state.real.tolist(), "im": self.corrected_state.imag.tolist()},
        }


def _check_scheme(scheme: CorrectionScheme) -> None:
    for i, m in enumerate(scheme.matrices):
        if m.shape != (2, 2) or np.max(np.abs(m.conj().T @ m - IDENTITY)) > UNITARY_TOL:
            raise NonUnitaryCorrection(f"correction for outcome {i} is not a 2x2 unitary")


def teleport_once(
    channel: Union[DenseState, XState],
    psi: PureQubit,
    basis=(0.0, 0.0),
    scheme: Union[CorrectionScheme, None] = None,
) -> tuple:
    """Runs the protocol for one input state

    Builds rho_tot = |psi><psi| x rho_channel, projects (input, Alice) onto each generalized Bell
    state, takes Bob's conditional state by partial trace and applies the scheme's correction.

    Parameters
    ----------
    channel : Union[DenseState, XState]
        shared two-qubit state, Alice holds the first qubit
    psi : PureQubit
        input state
    basis : tuple, optional
        (alpha, beta) of Alice's generalized Bell basis, by default (0, 0)
    scheme : CorrectionScheme, optional
        Bob's corrections, by default the standard Pauli scheme (I, X, Y, Z)

    Returns
    -------
    tuple
        (list of four TeleportOutcome, fidelity sum_i p_i <psi|rho_i|psi>)

    Raises
    ------
    InvalidDensity
        if the channel is not a density matrix
    NonUnitaryCorrection
        if a correction is not unitary
    """
    rho = as_dense_state(channel).rho
    scheme = CorrectionScheme.pauli() if scheme is None else scheme
    _check_scheme(scheme)
    rho_tot = kron(psi.projector, rho)

    outcomes = []
    fidelity = 0.0
    for i, vector in enumerate(bell_basis(*basis)):
        projector = kron(np.outer(vector, vector.conj()), IDENTITY)
        projected = projector @ rho_tot @ projector
        probability = float(np.real(np.trace(projected)))
        if probability > PSD_TOL:
            bob = partial_trace(projected, (0, 1), validate=False) / probability
            bob = validate_density(bob, dim=2)
        else:
            probability = max(probability, 0.0)
            bob = IDENTITY / 2
        u = scheme.matrices[i]
        corrected = validate_density(u @ bob @ u.conj().T, dim=2)
        fidelity += probability * float(np.real(psi.vector.conj() @ corrected @ psi.vector))
        outcomes.append(TeleportOutcome(i, probability, bob, corrected))

    total = sum(o.probability for o in outcomes)
    if abs(total - 1.0) > TRACE_TOL:
        raise InvalidDensity(f"outcome probabilities sum to {total!r}")
    return outcomes, fidelity


def _bob_kernel(rho: np.ndarray, basis, inputs: np.ndarray) -> np.ndarray:
    """Unnormalized Bob states, shape (n_inputs, 4, 2, 2), for a batch of input vectors

    Entry [n, i] has trace p_i for input n.
    """
    psi = np.asarray(inputs, dtype=complex)
    vectors = bell_basis(*basis).reshape(4, 2, 2)
    # v[n, i, y] = sum_x conj(Psi_i[x, y]) psi[n, x]
    v = np.einsum("ixy,nx->niy", vectors.conj(), psi)
    r = rho.reshape(2, 2, 2, 2)
    return np.einsum("niy,ybzc,niz->nibc", v, r, v.conj())


def _kernel_fidelities(bob: np.ndarray, inputs: np.ndarray, matrices: np.ndarray) -> np.ndarray:
    """Per-input fidelity sum_i <psi|U_i B_i U_i^dagger|psi>"""
    psi = np.asarray(inputs, dtype=complex)
    # phi[n, i, b] = (U_i^dagger psi_n)[b]
    phi = np.einsum("icb,nc->nib", matrices.conj(), psi)
    return np.real(np.einsum("nib,nibc,nic->n", phi.conj(), bob, phi))


def _haar_inputs(n: int, seed: int) -> np.ndarray:
    rng = rng_stream(seed)
    theta = np.arccos(1 - 2 * rng.random(n))
    phi = 2 * np.pi * rng.random(n)
    return np.stack([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], axis=-1)


def average_fidelity(
    channel: Union[DenseState, XState],
    basis=(0.0, 0.0),
    scheme: Union[CorrectionScheme, None] = None,
    quadrature: str = "octahedral6",
    n: int = DEFAULT_MC_N,
    seed: int = 0,
    full_output: bool = False,
):
    """Average teleportation fidelity over pure inputs

    ``octahedral6`` averages teleport_once over the six Bloch-axis states, which is exact because the
    fidelity is quadratic in the Bloch vector. ``mc`` averages over n Haar-random inputs drawn from
    the seed.

    Returns
    -------
    float or tuple
        the mean, or (mean, standard error) with full_output. The octahedral rule has zero error.
    """
    rho = as_dense_state(channel).rho
    scheme = CorrectionScheme.pauli() if scheme is None else scheme
    _check_scheme(scheme)
    if quadrature in ("octahedral6", "octa"):
        values = [teleport_once(DenseState(rho), psi, basis, scheme)[1] for psi in octahedral_inputs()]
        mean, error = float(np.mean(values)), 0.0
    elif quadrature == "mc":
        if n < 2:
            raise ParamOutOfRange(f"Monte Carlo quadrature needs at least 2 inputs, got {n}")
        inputs = _haar_inputs(n, seed)
        values = _kernel_fidelities(_bob_kernel(rho, basis, inputs), inputs, scheme.matrices)
        mean, error = float(np.mean(values)), float(np.std(values, ddof=1) / np.sqrt(n))
    else:
        raise ParamOutOfRange(f"unknown quadrature '{quadrature}', use 'octahedral6' or 'mc'")
    return (mean, error) if full_output else mean


def _octahedral_vectors() -> np.ndarray:
    return np.array([psi.vector for psi in octahedral_inputs()])


def best_pauli_fidelity(channel: Union[DenseState, XState], basis=(0.0, 0.0)) -> tuple:
    """Exhaustive search over the 4^4 Pauli assignments

    Returns
    -------
    tuple
        (largest octahedral average fidelity, CorrectionScheme achieving it); ties keep the first
        assignment in lexicographic order
    """
    rho = as_dense_state(channel).rho
    inputs = _octahedral_vectors()
    bob = _bob_kernel(rho, basis, inputs)
    # gain[i, k]: contribution of outcome i when corrected by sigma^k
    gain = np.zeros((4, 4))
    for k, p in enumerate(PAULIS):
        matrices = np.array([p] * 4)
        phi = np.einsum("icb,nc->nib", matrices.conj(), inputs)
        gain[:, k] = np.real(np.einsum("nib,nibc,nic->i", phi.conj(), bob, phi)) / len(inputs)

    best_value, best_assignment = -np.inf, None
    for assignment in itertools.product(range(4), repeat=4):
        value = sum(gain[i, k] for i, k in enumerate(assignment))
        if value > best_value:
            best_value, best_assignment = value, assignment
    return float(best_value), CorrectionScheme.pauli(best_assignment)


def _unitary_objective(rho: np.ndarray, basis):
    inputs = _octahedral_vectors()
    bob = _bob_kernel(rho, basis, inputs)

    def objective(x: np.ndarray) -> float:
        return float(np.mean(_kernel_fidelities(bob, inputs, _u3_stack(x))))

    return objective


def best_unitary_fidelity(
    channel: Union[DenseState, XState],
    basis=(0.0, 0.0),
    restarts: int = DEFAULT_RESTARTS,
    tol: float = 1e-9,
    seed: int = 0,
    full_output: bool = False,
):
    """Maximises the octahedral average fidelity over four independent Bob unitaries

    The 12 U3 angles are searched by multistart_maximize. Start 0 is the best Pauli scheme, so the
    result never falls below best_pauli_fidelity; the other starts are uniform angles drawn from
    the streams (seed, k). A result above f1 + 1e-6 is reported with a warning.

    Parameters
    ----------
    restarts : int, optional
        number of starting points, by default 32
    tol : float, optional
        line-search tolerance on the angles, by default 1e-9

    Returns
    -------
    float or tuple
        best value, or (best value, CorrectionScheme) with full_output
    """
    if restarts < 1:
        raise ParamOutOfRange(f"restarts must be at least 1, got {restarts}")
    rho = as_dense_state(channel).rho
    objective = _unitary_objective(rho, basis)
    _, pauli_scheme = best_pauli_fidelity(DenseState(rho), basis)

    starts = [PAULI_ANGLES[list(pauli_scheme.assignment)].ravel()]
    starts += [2 * np.pi * rng_stream(seed, k).random(12) for k in range(1, restarts)]
    value, x, _ = multistart_maximize(objective, starts, xtol=tol)

    from xtele.core.metrics import fidelity_report

    f1 = fidelity_report(DenseState(rho)).f1
    if value > f1 + EXCESS_TOL:
        warnings.warn(UserWarning(f"unitary corrections reach {value:.12g}, above f1 = {f1:.12g}"))
    if full_output:
        return value, CorrectionScheme.unitary(x)
    return value


def _unit_vector(theta: float, phi: float) -> np.ndarray:
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def _spin_operator(n: np.ndarray) -> np.ndarray:
    return n[0] * PAULIS[1] + n[1] * PAULIS[2] + n[2] * PAULIS[3]


def chsh_operator(a, a_prime, b, b_prime) -> np.ndarray:
    """a.sigma x (b + b').sigma + a'.sigma x (b - b').sigma"""
    b, b_prime = np.asarray(b, dtype=float), np.asarray(b_prime, dtype=float)
    return kron(_spin_operator(np.asarray(a, dtype=float)), _spin_operator(b + b_prime)) + kron(
        _spin_operator(np.asarray(a_prime, dtype=float)), _spin_operator(b - b_prime)
    )


def chsh_maximize(
    state: Union[DenseState, XState], restarts: int = DEFAULT_RESTARTS, seed: int = 0, tol: float = 1e-9
) -> float:
    """Largest |tr(rho B_CHSH)| over the four measurement directions, each given by two spherical angles"""
    if restarts < 1:
        raise ParamOutOfRange(f"restarts must be at least 1, got {restarts}")
    rho = as_dense_state(state).rho

    def objective(x: np.ndarray) -> float:
        directions = [_unit_vector(x[2 * j], x[2 * j + 1]) for j in range(4)]
        return float(abs(np.trace(rho @ chsh_operator(*directions))))

    starts = [2 * np.pi * rng_stream(seed, k).random(8) for k in range(restarts)]
    value, _, _ = multistart_maximize(objective, starts, xtol=tol)
    return value


def wootters_concurrence(state: Union[DenseState, XState], raw: bool = False) -> float:
    """Concurrence from the spin-flipped state

    C = max{0, l1 - l2 - l3 - l4} with l the descending square roots of the eigenvalues of
    rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y). They are computed as the singular values of
    Psi^T (sigma_y x sigma_y) Psi, where rho = Psi Psi^dagger. With raw, the unclipped
    l1 - l2 - l3 - l4 is returned.
    """
    rho = as_dense_state(state).rho
    eigenvalues, vectors = np.linalg.eigh(rho)
    psi = vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))
    tau = psi.T @ _SPIN_FLIP @ psi
    lam = np.sort(np.linalg.svd(tau, compute_uv=False))[::-1]
    value = lam[0] - lam[1] - lam[2] - lam[3]
    return float(value if raw else np.clip(value, 0.0, 1.0))
