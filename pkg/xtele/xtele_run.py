# -*- coding: utf-8 -*-
"""
Drivers behind the command line: each run_* function takes plain arguments, does the work and
returns a JSON-ready dict (or writes a CSV table), so that they can also be called from scripts.
"""

#%% Import required modules

from typing import Union

import numpy as np

from xtele.core.constants import DEFAULT_MC_N, DEFAULT_RESTARTS, SWEEP_FAMILIES
from xtele.core.ensemble import estimate_fractions, verify_prop1, verify_prop2, verify_vw_bound
from xtele.core.metrics import (
    classify,
    closed_form_quantities,
    correlation_report,
    fidelity_report,
    reachable_unitary_fidelity,
    teleportation_basis,
)
from xtele.core.oracles import average_fidelity, best_pauli_fidelity, best_unitary_fidelity
from xtele.core.states import DenseState, EnsembleSpec, XBatch, XState, bell, werner
from xtele.core.utils import calc_time_taken
from xtele.errors_logs.errors import ParamOutOfRange
from xtele.post_process import post_process as pp


class SweepSpec:
    """A one-parameter family evaluated on an inclusive uniform grid

    Parameters
    ----------
    family : str
        ``werner`` (parameter p), ``bell`` (alpha of the index-0 generalized Bell state) or
        ``extremal-gap`` (w of a = d = 1/6, b = c = 1/3, z = 0)
    param_from, param_to : float, optional
        grid ends, by default the whole admissible range of the family
    steps : int
        number of grid points, at least 2
    output_path : str, optional
        CSV destination, None for stdout
    """

    def __init__(
        self,
        family: str,
        param_from: Union[float, None] = None,
        param_to: Union[float, None] = None,
        steps: int = 101,
        output_path: Union[str, None] = None,
    ):
        if family not in SWEEP_FAMILIES:
            raise ParamOutOfRange(f"unknown family '{family}', valid families are {[*SWEEP_FAMILIES]}")
        self.family = family
        self.param_name, low, high = SWEEP_FAMILIES[family]
        self.param_from = low if param_from is None else float(param_from)
        self.param_to = high if param_to is None else float(param_to)
        if self.param_from > self.param_to:
            raise ParamOutOfRange(f"sweep start {self.param_from} lies above its end {self.param_to}")
        if steps < 2:
            raise ParamOutOfRange(f"a sweep needs at least 2 steps, got {steps}")
        self.steps = int(steps)
        self.output_path = output_path

    def grid(self) -> np.ndarray:
        return np.linspace(self.param_from, self.param_to, self.steps)

    def state(self, value: float) -> XState:
        if self.family == "werner":
            return werner(value)
        if self.family == "bell":
            return bell(0, alpha=value)
        if not 0.0 <= value <= 1 / 6:
            raise ParamOutOfRange(f"w must lie in [0, 1/6] for the extremal-gap family, got {value}")
        return XState(1 / 6, 1 / 3, 1 / 3, 1 / 6, value, 0.0)


def sweep_rows(spec: SweepSpec) -> list:
    grid = spec.grid()
    q = closed_form_quantities(XBatch.from_states([spec.state(v) for v in grid]))
    rows = []
    for i, value in enumerate(grid):
        row = {"family": spec.family, "param": float(value)}
        for key in ("n_value", "m_value", "b_max", "concurrence", "f1", "f2", "gap"):
            row[key] = float(q[key][i])
        for key in ("entangled", "violates_chsh", "nonclassical_teleport"):
            row[key] = bool(q[key][i])
        rows.append(row)
    return rows


def run_sweep(spec: SweepSpec) -> Union[str, None]:
    """Writes the sweep table to spec.output_path, or returns it as text when no path is set"""
    return pp.export_sweep(pp.sweep_frame(sweep_rows(spec)), spec.output_path)


def run_analysis(state: Union[XState, DenseState], basis: str = "auto") -> dict:
    """Correlation and fidelity reports plus the classification flags of one state

    ``auto`` takes chi in the basis (arg w, arg z) for X states and the standard basis for dense
    states; ``standard`` forces alpha = beta = 0.
    """
    if basis not in ("auto", "standard"):
        raise ParamOutOfRange(f"basis must be 'auto' or 'standard', got '{basis}'")
    bell_phases = None if basis == "auto" else (0.0, 0.0)
    correlation = correlation_report(state)
    fidelity = fidelity_report(state, bell_phases)
    classification = classify(state, bell_phases)

    report = {"kind": "x" if isinstance(state, XState) else "dense", "state": state.to_dict()}
    report.update(correlation.to_dict())
    report.update(fidelity.to_dict())
    report.update(classification.flags())
    report["ties"] = classification.ties
    report["reachable_unitary_fidelity"] = reachable_unitary_fidelity(state)
    if isinstance(state, XState):
        alpha, beta = teleportation_basis(state)
        report["teleportation_basis"] = {"alpha": alpha, "beta": beta}
    return report


def run_teleport(
    state: Union[XState, DenseState],
    corrections: str = "pauli",
    quadrature: str = "octa",
    mc_n: int = DEFAULT_MC_N,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> dict:
    """Oracle fidelity of the teleportation protocol next to its closed form

    X states are teleported in the Pauli-compatible basis of teleportation_basis, dense states in
    the standard Bell basis.
    """
    if corrections not in ("pauli", "optimal"):
        raise ParamOutOfRange(f"corrections must be 'pauli' or 'optimal', got '{corrections}'")
    if quadrature not in ("octa", "mc"):
        raise ParamOutOfRange(f"quadrature must be 'octa' or 'mc', got '{quadrature}'")
    basis = teleportation_basis(state) if isinstance(state, XState) else (0.0, 0.0)
    fidelity = fidelity_report(state, None if isinstance(state, XState) else basis)

    if corrections == "pauli":
        oracle, scheme = best_pauli_fidelity(state, basis)
        closed_form = fidelity.f2
    else:
        oracle, scheme = best_unitary_fidelity(state, basis, restarts=restarts, seed=seed, full_output=True)
        closed_form = fidelity.f1

    standard_error = 0.0
    if quadrature == "mc":
        oracle, standard_error = average_fidelity(
            state, basis, scheme, quadrature="mc", n=mc_n, seed=seed, full_output=True
        )

    report = {
        "kind": "x" if isinstance(state, XState) else "dense",
        "corrections": corrections,
        "quadrature": quadrature,
        "basis": {"alpha": basis[0], "beta": basis[1]},
        "oracle_fidelity": oracle,
        "standard_error": standard_error,
        "closed_form_fidelity": closed_form,
        "abs_difference": abs(oracle - closed_form),
        "scheme": scheme.to_dict(),
    }
    if corrections == "optimal":
        report["reachable_unitary_fidelity"] = reachable_unitary_fidelity(state)
    return report


@calc_time_taken
def run_ensemble(samples: int, seed: int = 0, threads: int = 1, progress: bool = False) -> dict:
    return estimate_fractions(EnsembleSpec(samples, seed), threads=threads, progress=progress).to_dict()


@calc_time_taken
def run_verify(
    prop: str, samples: int, seed: int = 0, refine: bool = False, threads: int = 1, progress: bool = False
) -> dict:
    spec = EnsembleSpec(samples, seed)
    if prop == "1":
        report = verify_prop1(spec, threads=threads, progress=progress)
    elif prop == "2":
        report = verify_prop2(spec, refine=refine, threads=threads, progress=progress)
    elif prop == "vw":
        report = verify_vw_bound(spec, threads=threads, progress=progress)
    else:
        raise ParamOutOfRange(f"unknown proposition '{prop}', use 1, 2 or vw")
    return report.to_dict()


if __name__ == "__main__":

    print(pp.dump_json(run_analysis(werner(0.8))))
