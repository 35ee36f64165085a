# -*- coding: utf-8 -*-
"""
Closed-form quantities of a two-qubit state: the spin correlation matrix T and its invariants
N(rho) (trace norm) and M(rho) (sum of the two largest eigenvalues of T^T T), the maximal CHSH
value, the overlaps chi_0..chi_3 with the generalized Bell states, the fully entangled fraction,
the maximal average teleportation fidelities with unitary (f1) and Pauli (f2) corrections, their
difference and the concurrence.

For X states every quantity has a closed form in (a, b, c, d, |w|, |z|); ``closed_form_quantities``
evaluates them on whole arrays of states and is what the Monte Carlo campaigns run on.
"""
from typing import Union

import numpy as np

from xtele.core.constants import CLASSICAL_FIDELITY
from xtele.core.qmath import PAULIS, hermitian_eigenvalues, kron
from xtele.core.states import DenseState, XBatch, XState, as_dense_state, bell_basis
from xtele.errors_logs.errors import InvalidType, NotXState

TIE_TOL = 1e-12

_SIGMA_PAIRS = np.array([[kron(PAULIS[n], PAULIS[m]) for m in (1, 2, 3)] for n in (1, 2, 3)])


def closed_form_quantities(batch: Union[XBatch, XState]) -> dict:
    """Evaluates every X-state closed form on a batch of states

    Returns
    -------
    dict
        arrays keyed by u1, u2, u3, n_value, m_value, b_max, chi (shape (n, 4)), fef, f1, f2, gap,
        concurrence, entangled, violates_chsh, nonclassical_teleport
    """
    if isinstance(batch, XState):
        batch = XBatch.from_states([batch])
    a, b, c, d = batch.a, batch.b, batch.c, batch.d
    aw, az = np.abs(batch.w), np.abs(batch.z)
    diag = a + d - b - c

    u1 = 4 * (aw + az) ** 2
    u2 = 4 * (aw - az) ** 2
    u3 = diag ** 2
    n_value = 2 * (aw + az) + 2 * np.abs(aw - az) + np.abs(diag)
    m_value = np.maximum(8 * (aw ** 2 + az ** 2), 4 * (aw + az) ** 2 + diag ** 2)
    b_max = 2 * np.sqrt(m_value)

    chi = np.stack(
        [(a + d + 2 * aw) / 2, (b + c + 2 * az) / 2, (b + c - 2 * az) / 2, (a + d - 2 * aw) / 2],
        axis=-1,
    )
    fef = chi.max(axis=-1)
    f1 = 0.5 + n_value / 6
    f2 = 1 / 3 + 2 * fef / 3
    # raw concurrence, negative for separable states
    raw_c = np.maximum(aw - np.sqrt(b * c), az - np.sqrt(a * d))
    concurrence = np.clip(2 * raw_c, 0.0, 1.0)
    return {
        "u1": u1,
        "u2": u2,
        "u3": u3,
        "n_value": n_value,
        "m_value": m_value,
        "b_max": b_max,
        "chi": chi,
        "fef": fef,
        "f1": f1,
        "f2": f2,
        "gap": f1 - f2,
        "concurrence": concurrence,
        "raw_concurrence": raw_c,
        "entangled": concurrence > 0,
        "violates_chsh": m_value > 1,
        "nonclassical_teleport": f2 > CLASSICAL_FIDELITY,
    }


def correlation_matrix(state) -> np.ndarray:
    """t_nm = tr(rho sigma^n x sigma^m) for n, m in 1..3"""
    rho = as_dense_state(state).rho
    return np.real(np.einsum("ij,nmji->nm", rho, _SIGMA_PAIRS))


class CorrelationReport:
    """Correlation matrix T with its invariants

    ``u`` holds the eigenvalues of T^T T in descending order, ``n_value`` = sum sqrt(u),
    ``m_value`` = u1 + u2 and ``b_max`` = 2 sqrt(m_value). ``det_t`` and ``singular_values`` are
    carried for the reachable unitary fidelity.
    """

    def __init__(self, t, u):
        self.t = np.asarray(t, dtype=float)
        self.u = np.sort(np.clip(np.asarray(u, dtype=float), 0.0, None))[::-1]
        self.singular_values = np.sqrt(self.u)
        self.n_value = float(np.sum(self.singular_values))
        self.m_value = float(self.u[0] + self.u[1])
        self.b_max = float(2 * np.sqrt(self.m_value))
        self.det_t = float(np.linalg.det(self.t))

    def to_dict(self) -> dict:
        return {
            "t": self.t.tolist(),
            "u": self.u.tolist(),
            "n_value": self.n_value,
            "m_value": self.m_value,
            "b_max": self.b_max,
            "det_t": self.det_t,
        }


def correlation_report(state: Union[XState, DenseState]) -> CorrelationReport:
    """T, u, N, M and B_max of a state

    X states take u from the closed forms 4(|w| +- |z|)^2 and (a + d - b - c)^2; dense states from
    the Jacobi eigensolver applied to T^T T.

    Raises
    ------
    InvalidDensity
        if a raw matrix is passed that is not a density matrix
    """
    t = correlation_matrix(state)
    if isinstance(state, XState):
        q = closed_form_quantities(state)
        u = [q["u1"][0], q["u2"][0], q["u3"][0]]
    else:
        u = hermitian_eigenvalues(t.T @ t)
    return CorrelationReport(t, u)


def _as_x_state(state) -> XState:
    if isinstance(state, XState):
        return state
    if isinstance(state, (DenseState, np.ndarray, list, tuple)):
        return as_dense_state(state).to_x_state()
    raise InvalidType(f"{type(state)} is not a two-qubit state")


def m_closed_form(state: Union[XState, DenseState]) -> float:
    """M = max{8(|w|^2 + |z|^2), 4(|w| + |z|)^2 + (a + d - b - c)^2}

    Raises
    ------
    NotXState
        for a dense state with entries off the two diagonals
    """
    return float(closed_form_quantities(_as_x_state(state))["m_value"][0])


def concurrence_x(state: XState) -> float:
    """C = 2 max{0, |w| - sqrt(bc), |z| - sqrt(ad)}"""
    return float(closed_form_quantities(_as_x_state(state))["concurrence"][0])


def fef_bell_basis(state, alpha: float = 0.0, beta: float = 0.0) -> float:
    """Largest overlap of the state with the four generalized Bell states of phases (alpha, beta)"""
    rho = as_dense_state(state).rho
    overlaps = _bell_overlaps(rho, alpha, beta)
    return float(overlaps.max())


def _bell_overlaps(rho: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    basis = bell_basis(alpha, beta)
    return np.real(np.einsum("ki,ij,kj->k", basis.conj(), rho, basis))


class FidelityReport:
    """Bell overlaps, fully entangled fraction, teleportation fidelities and concurrence"""

    def __init__(self, chi, n_value: float, concurrence: float, basis=(0.0, 0.0)):
        self.chi = np.asarray(chi, dtype=float)
        self.fef = float(self.chi.max())
        self.f1 = 0.5 + n_value / 6
        self.f2 = 1 / 3 + 2 * self.fef / 3
        self.gap = self.f1 - self.f2
        self.concurrence = float(concurrence)
        self.basis = (float(basis[0]), float(basis[1]))

    def to_dict(self) -> dict:
        return {
            "chi": self.chi.tolist(),
            "fef": self.fef,
            "f1": self.f1,
            "f2": self.f2,
            "gap": self.gap,
            "concurrence": self.concurrence,
            "basis": {"alpha": self.basis[0], "beta": self.basis[1]},
        }


def fidelity_report(state: Union[XState, DenseState], basis=None) -> FidelityReport:
    """Fidelity quantities of a state

    Parameters
    ----------
    state : Union[XState, DenseState]
        X states use the closed forms and the Wootters formula is replaced by its X-state closed form
    basis : tuple, optional
        (alpha, beta) of the generalized Bell basis in which chi is taken. Defaults to (arg w, arg z)
        for X states, where chi has its closed form, and to (0, 0) for dense states.
    """
    if isinstance(state, XState):
        q = closed_form_quantities(state)
        if basis is None:
            return FidelityReport(
                q["chi"][0], q["n_value"][0], q["concurrence"][0], basis=(state.alpha, state.beta)
            )
        chi = _bell_overlaps(state.to_dense(), *basis)
        return FidelityReport(chi, q["n_value"][0], q["concurrence"][0], basis=basis)
    from xtele.core.oracles import wootters_concurrence

    dense = as_dense_state(state)
    if basis is None:
        basis = (0.0, 0.0)
    chi = _bell_overlaps(dense.rho, *basis)
    return FidelityReport(
        chi, correlation_report(dense).n_value, wootters_concurrence(dense), basis=basis
    )


class Classification:
    """The three strict predicates behind the ensemble fractions

    ``ties`` lists the predicates whose defining quantity sits on its threshold to within 1e-12;
    such states classify as not satisfying the predicate.
    """

    def __init__(self, entangled: bool, violates_chsh: bool, nonclassical_teleport: bool, ties=()):
        self.entangled = bool(entangled)
        self.violates_chsh = bool(violates_chsh)
        self.nonclassical_teleport = bool(nonclassical_teleport)
        self.ties = list(ties)

    def __eq__(self, other):
        if isinstance(other, dict):
            return self.flags() == other
        if not isinstance(other, Classification):
            return NotImplemented
        return self.flags() == other.flags() and self.ties == other.ties

    def flags(self) -> dict:
        return {
            "entangled": self.entangled,
            "violates_chsh": self.violates_chsh,
            "nonclassical_teleport": self.nonclassical_teleport,
        }

    def __repr__(self):
        return f"Classification({self.flags()}, ties={self.ties})"


def classify(state: Union[XState, DenseState], basis=None) -> Classification:
    """Entanglement (C > 0), CHSH violation (M > 1) and nonclassical teleportation (f2 > 2/3)

    ``basis`` selects the Bell basis behind f2 as in fidelity_report.
    """
    if isinstance(state, XState):
        q = closed_form_quantities(state)
        concurrence, raw_c = q["concurrence"][0], q["raw_concurrence"][0]
        m_value = q["m_value"][0]
        f2 = q["f2"][0] if basis is None else fidelity_report(state, basis).f2
    else:
        from xtele.core.oracles import wootters_concurrence

        raw_c = wootters_concurrence(state, raw=True)
        concurrence = max(raw_c, 0.0)
        m_value = correlation_report(state).m_value
        f2 = fidelity_report(state, basis).f2
    ties = []
    if abs(raw_c) <= TIE_TOL:
        ties.append("entangled")
    if abs(m_value - 1.0) <= TIE_TOL:
        ties.append("violates_chsh")
    if abs(f2 - CLASSICAL_FIDELITY) <= TIE_TOL:
        ties.append("nonclassical_teleport")
    return Classification(
        concurrence > 0 and "entangled" not in ties,
        m_value > 1 and "violates_chsh" not in ties,
        f2 > CLASSICAL_FIDELITY and "nonclassical_teleport" not in ties,
        ties,
    )


def teleportation_basis(state: XState) -> tuple:
    """Generalized Bell basis (theta, -theta) in which Pauli corrections reach f2

    Pauli corrections undo Alice's measurement only when alpha + beta = 0 (mod 2 pi). theta follows
    the phase of the coherence that carries the largest Bell overlap: arg w when
    max(chi_0, chi_3) >= max(chi_1, chi_2), arg z otherwise.
    """
    state = _as_x_state(state)
    chi = closed_form_quantities(state)["chi"][0]
    theta = state.alpha if max(chi[0], chi[3]) >= max(chi[1], chi[2]) else state.beta
    return (theta, -theta)


def reachable_unitary_fidelity(state: Union[XState, DenseState]) -> float:
    """Largest average fidelity four Bob unitaries can reach

    1/2 + (s1 + s2 + sgn s3)/6 with s the singular values of T, descending, and sgn = +1 when
    det T <= 0, -1 otherwise. Equals f1 whenever det T <= 0.
    """
    report = correlation_report(state)
    s1, s2, s3 = report.singular_values
    sign = 1.0 if report.det_t <= 0 else -1.0
    return float(0.5 + (s1 + s2 + sign * s3) / 6)
