# -*- coding: utf-8 -*-
"""
The X-state and dense-state data model.

An X state is a two-qubit density matrix that is nonzero only on its main diagonal
(a, b, c, d) and anti-diagonal (w, z):

    [[a,  0,  0,  w],
     [0,  b,  z,  0],
     [0,  z*, c,  0],
     [w*, 0,  0,  d]]

Named builders cover every state the package uses as a fixture. Random X states are drawn
from the ``dirichlet-disk`` measure: populations uniform on the probability simplex,
coherences uniform on the complex disks allowed by positivity.
"""
from typing import Iterable, Union

import numpy as np

from xtele.core.constants import (
    COHERENCE_TOL,
    DEFAULT_MEASURE,
    FACES_CONCENTRATION,
    MEASURES,
    POPULATION_TOL,
    SATURATION_RANGE,
    STRATA,
    TRACE_TOL,
)
from xtele.core.qmath import validate_density
from xtele.errors_logs.errors import (
    CoherenceBoundViolated,
    InvalidType,
    NegativePopulation,
    NonUnitTrace,
    NotXState,
    ParamOutOfRange,
    StateFileError,
)

X_FORM_TOL = 1e-12


def _phase(value: complex) -> float:
    # undefined phases of vanishing coherences are fixed to 0
    return float(np.angle(value)) if value != 0 else 0.0


class XState:
    """Immutable six-parameter X state

    Parameters
    ----------
    a, b, c, d : float
        populations of |00>, |01>, |10>, |11>
    w : complex
        coherence <00|rho|11>
    z : complex
        coherence <01|rho|10>

    Raises
    ------
    NegativePopulation
        a population is below -1e-12
    NonUnitTrace
        a + b + c + d differs from 1 by more than 1e-10
    CoherenceBoundViolated
        |w|^2 > ad + 1e-12 or |z|^2 > bc + 1e-12
    """

    __slots__ = ("_a", "_b", "_c", "_d", "_w", "_z")

    def __init__(self, a: float, b: float, c: float, d: float, w: complex = 0.0, z: complex = 0.0):
        populations = []
        for name, value in zip("abcd", (a, b, c, d)):
            value = float(value)
            if not np.isfinite(value):
                raise NegativePopulation(f"population {name}={value} is not finite")
            if value < -POPULATION_TOL:
                raise NegativePopulation(f"population {name}={value!r} is negative")
            populations.append(max(value, 0.0))
        a, b, c, d = populations

        total = a + b + c + d
        if abs(total - 1.0) > TRACE_TOL:
            raise NonUnitTrace(f"a+b+c+d={total!r}, expected 1")

        w, z = complex(w), complex(z)
        for name, value in (("w", w), ("z", z)):
            if not np.isfinite(value):
                raise CoherenceBoundViolated(f"coherence {name}={value!r} is not finite")
        if abs(w) ** 2 > a * d + COHERENCE_TOL:
            raise CoherenceBoundViolated(f"|w|^2<=ad fails: |w|^2={abs(w) ** 2!r} > ad={a * d!r}")
        if abs(z) ** 2 > b * c + COHERENCE_TOL:
            raise CoherenceBoundViolated(f"|z|^2<=bc fails: |z|^2={abs(z) ** 2!r} > bc={b * c!r}")

        self._a, self._b, self._c, self._d = a, b, c, d
        self._w, self._z = w, z

    a = property(lambda self: self._a)
    b = property(lambda self: self._b)
    c = property(lambda self: self._c)
    d = property(lambda self: self._d)
    w = property(lambda self: self._w)
    z = property(lambda self: self._z)

    @property
    def abs_w(self) -> float:
        return abs(self._w)

    @property
    def abs_z(self) -> float:
        return abs(self._z)

    @property
    def alpha(self) -> float:
        return _phase(self._w)

    @property
    def beta(self) -> float:
        return _phase(self._z)

    def as_tuple(self) -> tuple:
        return (self._a, self._b, self._c, self._d, self._w, self._z)

    def to_dense(self) -> np.ndarray:
        a, b, c, d, w, z = self.as_tuple()
        return np.array(
            [
                [a, 0, 0, w],
                [0, b, z, 0],
                [0, np.conj(z), c, 0],
                [np.conj(w), 0, 0, d],
            ],
            dtype=complex,
        )

    def to_dict(self) -> dict:
        """State-file representation"""
        return {
            "type": "x",
            "a": self._a,
            "b": self._b,
            "c": self._c,
            "d": self._d,
            "w": {"re": self._w.real, "im": self._w.imag},
            "z": {"re": self._z.real, "im": self._z.imag},
        }

    def __eq__(self, other):
        if not isinstance(other, XState):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return "XState(a={!r}, b={!r}, c={!r}, d={!r}, w={!r}, z={!r})".format(*self.as_tuple())


class DenseState:
    """Immutable general two-qubit density matrix

    Raises InvalidDensity unless rho is a 4x4 Hermitian, unit-trace, positive semidefinite matrix.
    """

    __slots__ = ("_rho",)

    def __init__(self, rho):
        rho = validate_density(rho, dim=4)
        rho.setflags(write=False)
        self._rho = rho

    @property
    def rho(self) -> np.ndarray:
        return self._rho

    def to_dense(self) -> np.ndarray:
        return self._rho

    def is_x_form(self, tol: float = X_FORM_TOL) -> bool:
        mask = np.ones((4, 4), dtype=bool)
        mask[np.arange(4), np.arange(4)] = False
        mask[np.arange(4), 3 - np.arange(4)] = False
        return bool(np.all(np.abs(self._rho[mask]) <= tol))

    def to_x_state(self) -> XState:
        """Converts to an XState

        Raises
        ------
        NotXState
            if some entry off the two diagonals exceeds 1e-12 in modulus
        """
        if not self.is_x_form():
            raise NotXState("the density matrix has entries off the diagonal and anti-diagonal")
        rho = self._rho
        return XState(
            rho[0, 0].real, rho[1, 1].real, rho[2, 2].real, rho[3, 3].real, rho[0, 3], rho[1, 2]
        )

    def to_dict(self) -> dict:
        return {"type": "dense", "re": self._rho.real.tolist(), "im": self._rho.imag.tolist()}

    def __eq__(self, other):
        if not isinstance(other, DenseState):
            return NotImplemented
        return bool(np.array_equal(self._rho, other._rho))

    def __repr__(self):
        return f"DenseState(rho={self._rho.tolist()!r})"


def as_dense_state(state) -> DenseState:
    """Accepts an XState, a DenseState or a raw 4x4 matrix"""
    if isinstance(state, DenseState):
        return state
    if isinstance(state, XState):
        return DenseState(state.to_dense())
    if isinstance(state, (np.ndarray, list, tuple)):
        return DenseState(state)
    raise InvalidType(f"{type(state)} is not a two-qubit state")


class EnsembleSpec:
    """Sample count, seed and measure of a Monte Carlo campaign"""

    def __init__(self, sample_count: int, seed: int = 0, measure_id: str = DEFAULT_MEASURE):
        if isinstance(sample_count, bool) or not isinstance(sample_count, (int, np.integer)):
            raise InvalidType(f"sample_count must be an integer, got {type(sample_count)}")
        if sample_count < 1:
            raise ParamOutOfRange(f"sample_count must be at least 1, got {sample_count}")
        if not 0 <= seed < 2 ** 64:
            raise ParamOutOfRange(f"seed must be a 64-bit unsigned integer, got {seed}")
        if measure_id not in MEASURES:
            raise ParamOutOfRange(f"unknown measure '{measure_id}', valid measures are {list(MEASURES)}")
        self.sample_count = int(sample_count)
        self.seed = int(seed)
        self.measure_id = measure_id

    def __eq__(self, other):
        if not isinstance(other, EnsembleSpec):
            return NotImplemented
        return (self.sample_count, self.seed, self.measure_id) == (
            other.sample_count,
            other.seed,
            other.measure_id,
        )

    def __repr__(self):
        return f"EnsembleSpec(sample_count={self.sample_count}, seed={self.seed}, measure_id='{self.measure_id}')"


def validate(candidate: Iterable) -> XState:
    """Builds an XState from a raw (a, b, c, d, w, z) six-tuple, raising on any violation"""
    candidate = tuple(candidate)
    if len(candidate) != 6:
        raise InvalidType(f"expected six entries (a, b, c, d, w, z), got {len(candidate)}")
    return XState(*candidate)


def werner(p: float) -> XState:
    """p |Psi-><Psi-| + (1 - p) I/4"""
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"the Werner weight p must lie in [0, 1], got {p}")
    return XState((1 - p) / 4, (1 + p) / 4, (1 + p) / 4, (1 - p) / 4, 0.0, -p / 2)


def bell_vector(index: int, alpha: float = 0.0, beta: float = 0.0) -> np.ndarray:
    """Generalized Bell state as a 4-vector

    |Psi^{0,3}> = (|00> +- e^{-i alpha}|11>)/sqrt(2) and |Psi^{1,2}> = (|01> +- e^{-i beta}|10>)/sqrt(2)
    """
    v = np.zeros(4, dtype=complex)
    if index in (0, 3):
        v[0] = 1.0
        v[3] = (1.0 if index == 0 else -1.0) * np.exp(-1j * alpha)
    elif index in (1, 2):
        v[1] = 1.0
        v[2] = (1.0 if index == 1 else -1.0) * np.exp(-1j * beta)
    else:
        raise ParamOutOfRange(f"Bell index must be 0, 1, 2 or 3, got {index}")
    return v / np.sqrt(2)


def bell_basis(alpha: float = 0.0, beta: float = 0.0) -> np.ndarray:
    """Rows are the four generalized Bell vectors"""
    return np.array([bell_vector(i, alpha, beta) for i in range(4)])


def bell(index: int, alpha: float = 0.0, beta: float = 0.0) -> XState:
    v = bell_vector(index, alpha, beta)
    rho = np.outer(v, v.conj())
    return XState(rho[0, 0].real, rho[1, 1].real, rho[2, 2].real, rho[3, 3].real, rho[0, 3], rho[1, 2])


def hadamard_rotated_bell() -> DenseState:
    """Phi+ with a Hadamard on the second qubit: (|00> + |01> + |10> - |11>)/2"""
    phi = np.array([1, 1, 1, -1], dtype=complex) / 2
    return DenseState(np.outer(phi, phi.conj()))


def maximally_mixed() -> XState:
    return XState(0.25, 0.25, 0.25, 0.25)


def extremal_gap_state(variant: str = "w-side") -> XState:
    """X states with the largest difference between unitary and Pauli teleportation fidelities"""
    if variant == "w-side":
        return XState(1 / 6, 1 / 3, 1 / 3, 1 / 6, 1 / 6, 0.0)
    if variant == "z-side":
        return XState(1 / 3, 1 / 6, 1 / 6, 1 / 3, 0.0, 1 / 6)
    raise ParamOutOfRange(f"variant must be 'w-side' or 'z-side', got '{variant}'")


def rng_stream(seed: int, worker_index: int = 0, stratum_index: int = 0) -> np.random.Generator:
    """Private random stream of one work unit

    Streams are derived from (seed, stratum, worker) by numpy's SeedSequence hashing, so a work
    unit draws the same numbers whichever process evaluates it.
    """
    sequence = np.random.SeedSequence(int(seed), spawn_key=(int(stratum_index), int(worker_index)))
    return np.random.Generator(np.random.PCG64(sequence))


class XBatch:
    """Column arrays of n X states, the vectorized counterpart of XState"""

    def __init__(self, a, b, c, d, w, z):
        self.a = np.asarray(a, dtype=float)
        self.b = np.asarray(b, dtype=float)
        self.c = np.asarray(c, dtype=float)
        self.d = np.asarray(d, dtype=float)
        self.w = np.asarray(w, dtype=complex)
        self.z = np.asarray(z, dtype=complex)

    @classmethod
    def from_states(cls, states: Iterable[XState]) -> "XBatch":
        columns = list(zip(*(s.as_tuple() for s in states)))
        return cls(*columns)

    def __len__(self):
        return len(self.a)

    def state(self, i: int) -> XState:
        return XState(self.a[i], self.b[i], self.c[i], self.d[i], self.w[i], self.z[i])

    def take(self, indices) -> "XBatch":
        return XBatch(self.a[indices], self.b[indices], self.c[indices], self.d[indices], self.w[indices], self.z[indices])


def _disk(rng: np.random.Generator, radius: np.ndarray) -> np.ndarray:
    r = radius * np.sqrt(rng.random(radius.shape))
    return r * np.exp(2j * np.pi * rng.random(radius.shape))


def _ring(rng: np.random.Generator, radius: np.ndarray) -> np.ndarray:
    r = radius * rng.uniform(*SATURATION_RANGE, size=radius.shape)
    return r * np.exp(2j * np.pi * rng.random(radius.shape))


def sample_x_batch(rng: np.random.Generator, n: int, stratum: str = "uniform") -> XBatch:
    """Draws n X states

    Parameters
    ----------
    rng : np.random.Generator
        private stream, see rng_stream
    n : int
        number of states
    stratum : str, optional
        ``uniform`` is the dirichlet-disk measure. The boundary strata put the coherences within
        [0.95, 1] of their positivity bound: ``saturated`` keeps uniform populations, ``faces``
        draws them from Dirichlet(0.2, 0.2, 0.2, 0.2) and ``entangled`` from Dirichlet(6, 1, 1, 6)
        or Dirichlet(1, 6, 6, 1) with equal odds.
    """
    if stratum not in STRATA:
        raise ParamOutOfRange(f"unknown stratum '{stratum}', valid strata are {list(STRATA)}")
    if stratum == "faces":
        diag = rng.dirichlet(np.full(4, FACES_CONCENTRATION), size=n)
    elif stratum == "entangled":
        w_heavy = rng.dirichlet([6.0, 1.0, 1.0, 6.0], size=n)
        z_heavy = rng.dirichlet([1.0, 6.0, 6.0, 1.0], size=n)
        diag = np.where((rng.random(n) < 0.5)[:, None], w_heavy, z_heavy)
    else:
        diag = rng.dirichlet(np.ones(4), size=n)
    a, b, c, d = diag.T
    w_radius, z_radius = np.sqrt(a * d), np.sqrt(b * c)
    if stratum == "uniform":
        w, z = _disk(rng, w_radius), _disk(rng, z_radius)
    else:
        w, z = _ring(rng, w_radius), _ring(rng, z_radius)
    return XBatch(a, b, c, d, w, z)


def sample_x_state(rng: np.random.Generator) -> XState:
    """One X state from the dirichlet-disk measure"""
    return sample_x_batch(rng, 1).state(0)


def state_from_dict(data: dict) -> Union[XState, DenseState]:
    """Inverse of XState.to_dict / DenseState.to_dict, see xtele.core.utils.read_state_file"""
    kind = data.get("type")
    if kind not in ("x", "dense"):
        raise StateFileError(f"state type must be 'x' or 'dense', got {kind!r}")
    if kind == "x":
        w = complex(data["w"]["re"], data["w"]["im"])
        z = complex(data["z"]["re"], data["z"]["im"])
        return XState(data["a"], data["b"], data["c"], data["d"], w, z)
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data["im"], dtype=float)
    if re.shape != (4, 4) or im.shape != (4, 4):
        raise StateFileError(f"dense states need 4x4 're' and 'im' arrays, got {re.shape} and {im.shape}")
    return DenseState(re + 1j * im)
