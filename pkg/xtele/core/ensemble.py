# -*- coding: utf-8 -*-
"""
Monte Carlo campaigns over the X-state ensemble.

Every campaign splits its samples into fixed-size chunks. Chunk k of stratum s draws from
rng_stream(seed, k, s) and returns counts, extremes and at most a few recorded states; the
reduction walks the chunks in order. Results are therefore identical for any number of worker
processes.
"""
import warnings
from typing import List, Union

import numpy as np

from xtele.core.constants import (
    CHUNK_SIZE,
    CLASSICAL_FIDELITY,
    GAP_BOUND,
    GAP_REFINE_TOL,
    GAP_SLACK,
    LOW_SAMPLE_COUNT,
    MAX_COUNTEREXAMPLES,
    REFINE_STEP_START,
    REFINE_STEP_STOP,
    REFINE_TOP,
    STRATA,
    VW_SLACK,
    Z_95,
)
from xtele.core.metrics import closed_form_quantities
from xtele.core.states import EnsembleSpec, XBatch, extremal_gap_state, rng_stream, sample_x_batch
from xtele.core.utils import map_chunks

TSIRELSON_SLACK = 1e-10

_QUANTITY_KEYS = ("n_value", "m_value", "b_max", "fef", "f1", "f2", "gap", "concurrence")


def _chunks(sample_count: int) -> list:
    """(chunk index, size) pairs covering sample_count samples"""
    return [(k, min(CHUNK_SIZE, sample_count - start)) for k, start in enumerate(range(0, sample_count, CHUNK_SIZE))]


def _record(batch: XBatch, q: dict, i: int, stratum: str) -> dict:
    return {
        "stratum": stratum,
        "state": batch.state(i).to_dict(),
        "quantities": {key: float(q[key][i]) for key in _QUANTITY_KEYS},
        "flags": {key: bool(q[key][i]) for key in ("entangled", "violates_chsh", "nonclassical_teleport")},
    }


class FractionEstimate:
    """Fractions of entangled, CHSH-violating and nonclassically teleporting states

    ``ci_halfwidth`` is the largest of the three 95% normal-approximation half-widths, which are
    also kept per fraction in ``halfwidths``.
    """

    def __init__(self, counts, sample_count: int, seed: int, measure_id: str):
        self.counts = tuple(int(c) for c in counts)
        self.sample_count = int(sample_count)
        self.seed = seed
        self.measure_id = measure_id
        self.p_e, self.p_t, self.p_b = (c / sample_count for c in self.counts)
        self.halfwidths = {
            name: float(Z_95 * np.sqrt(p * (1 - p) / sample_count))
            for name, p in (("p_e", self.p_e), ("p_t", self.p_t), ("p_b", self.p_b))
        }
        self.ci_halfwidth = max(self.halfwidths.values())
        self.low_sample_warning = sample_count < LOW_SAMPLE_COUNT

    def to_dict(self) -> dict:
        return {
            "p_e": self.p_e,
            "p_t": self.p_t,
            "p_b": self.p_b,
            "ci_halfwidth": self.ci_halfwidth,
            "halfwidths": self.halfwidths,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "measure_id": self.measure_id,
            "low_sample_warning": self.low_sample_warning,
        }

    def __eq__(self, other):
        if not isinstance(other, FractionEstimate):
            return NotImplemented
        return self.to_dict() == other.to_dict()


class VerificationReport:
    """Outcome of a proposition campaign

    A report passes when no counterexample was found and, for prop2 with refinement, the refined
    maximum gap reached 1/9 - 1e-6. ``counterexamples`` holds at most 20 entries;
    ``counterexample_count`` is the total.
    """

    def __init__(
        self,
        proposition_id: str,
        samples_tested: int,
        counterexamples: List[dict],
        counterexample_count: int,
        extremal_value: Union[float, None],
        seed: int,
        measure_id: str,
        notes: Union[List[str], None] = None,
        passed: Union[bool, None] = None,
    ):
        self.proposition_id = proposition_id
        self.samples_tested = int(samples_tested)
        self.counterexamples = counterexamples[:MAX_COUNTEREXAMPLES]
        self.counterexample_count = int(counterexample_count)
        self.extremal_value = None if extremal_value is None else float(extremal_value)
        self.seed = seed
        self.measure_id = measure_id
        self.notes = [] if notes is None else list(notes)
        self.passed = (counterexample_count == 0) if passed is None else bool(passed and counterexample_count == 0)

    def to_dict(self) -> dict:
        return {
            "proposition_id": self.proposition_id,
            "samples_tested": self.samples_tested,
            "counterexample_count": self.counterexample_count,
            "counterexamples": self.counterexamples,
            "extremal_value": self.extremal_value,
            "seed": self.seed,
            "measure_id": self.measure_id,
            "passed": self.passed,
            "notes": self.notes,
        }


def _fraction_chunk(task) -> tuple:
    seed, k, size = task
    q = closed_form_quantities(sample_x_batch(rng_stream(seed, k), size))
    return (
        int(np.count_nonzero(q["entangled"])),
        int(np.count_nonzero(q["nonclassical_teleport"])),
        int(np.count_nonzero(q["violates_chsh"])),
    )


def estimate_fractions(spec: EnsembleSpec, threads: int = 1, progress: bool = False) -> FractionEstimate:
    """Estimates P_E, P_T and P_B over spec.sample_count states of the declared measure"""
    tasks = [(spec.seed, k, size) for k, size in _chunks(spec.sample_count)]
    counts = np.zeros(3, dtype=np.int64)
    for chunk_counts in map_chunks(_fraction_chunk, tasks, threads, progress, desc="Estimating fractions"):
        counts += chunk_counts
    estimate = FractionEstimate(counts, spec.sample_count, spec.seed, spec.measure_id)
    if estimate.low_sample_warning:
        warnings.warn(
            UserWarning(
                f"{spec.sample_count} samples is below {LOW_SAMPLE_COUNT}, the normal-approximation intervals are unreliable"
            )
        )
    return estimate


def _strata_tasks(spec: EnsembleSpec, strata) -> list:
    tasks = []
    for stratum in strata:
        s = STRATA.index(stratum)
        tasks += [(spec.seed, k, size, stratum, s) for k, size in _chunks(spec.sample_count)]
    return tasks


def _prop1_problems(q: dict) -> np.ndarray:
    return q["violates_chsh"] & (q["f2"] <= CLASSICAL_FIDELITY)


def _prop1_chunk(task) -> tuple:
    seed, k, size, stratum, s = task
    batch = sample_x_batch(rng_stream(seed, k, s), size, stratum)
    q = closed_form_quantities(batch)
    violators = q["violates_chsh"]
    bad = np.flatnonzero(_prop1_problems(q))
    margin = float(np.min(q["f2"][violators] - CLASSICAL_FIDELITY)) if violators.any() else None
    records = [_record(batch, q, i, stratum) for i in bad[:MAX_COUNTEREXAMPLES]]
    return len(bad), records, margin


def verify_prop1(spec: EnsembleSpec, threads: int = 1, progress: bool = False) -> VerificationReport:
    """Every CHSH-violating X state teleports above the classical limit 2/3

    Runs spec.sample_count states from each of the uniform, saturated and faces strata.
    extremal_value is the smallest f2 - 2/3 among the violating states, None if none was drawn.
    """
    strata = ("uniform", "saturated", "faces")
    results = map_chunks(_prop1_chunk, _strata_tasks(spec, strata), threads, progress, desc="Checking CHSH violators")
    count = sum(r[0] for r in results)
    records = [rec for r in results for rec in r[1]]
    margins = [r[2] for r in results if r[2] is not None]
    return VerificationReport(
        "prop1",
        spec.sample_count * len(strata),
        records,
        count,
        min(margins) if margins else None,
        spec.seed,
        spec.measure_id,
    )


def _gap_problems(q: dict) -> np.ndarray:
    above_bound = q["gap"] > GAP_BOUND + GAP_SLACK
    violating_at_bound = q["violates_chsh"] & (q["gap"] >= GAP_BOUND)
    return above_bound | violating_at_bound


def _prop2_chunk(task) -> tuple:
    seed, k, size, stratum, s = task
    batch = sample_x_batch(rng_stream(seed, k, s), size, stratum)
    q = closed_form_quantities(batch)
    bad = np.flatnonzero(_gap_problems(q))
    records = [_record(batch, q, i, stratum) for i in bad[:MAX_COUNTEREXAMPLES]]
    # stable sort keeps the lowest index among equal gaps
    top = np.argsort(-q["gap"], kind="stable")[:REFINE_TOP]
    params = _to_params(batch.take(top))
    return len(bad), records, float(q["gap"].max()), params, q["gap"][top]


def _to_params(batch: XBatch) -> np.ndarray:
    return np.column_stack([batch.a, batch.b, batch.c, batch.d, np.abs(batch.w), np.abs(batch.z)])


def _project(params: np.ndarray) -> np.ndarray:
    """Back onto the X-state set: clip and renormalise the populations, clamp the coherences"""
    diag = np.clip(params[:, :4], 0.0, None)
    totals = diag.sum(axis=1, keepdims=True)
    diag = np.where(totals > 0, diag / np.where(totals > 0, totals, 1.0), 0.25)
    a, b, c, d = diag.T
    w = np.clip(params[:, 4], 0.0, np.sqrt(a * d))
    z = np.clip(params[:, 5], 0.0, np.sqrt(b * c))
    return np.column_stack([a, b, c, d, w, z])


def _params_gap(params: np.ndarray) -> np.ndarray:
    return closed_form_quantities(XBatch(*params.T))["gap"]


def refine_gap(params: np.ndarray, max_passes: int = 1000) -> np.ndarray:
    """Projected coordinate hill climb on the gap, all starts at once

    Each of the six coordinates (a, b, c, d, |w|, |z|) is moved by +-step, projected back and
    kept where the gap increases. The step halves from 1e-2 down to 1e-8 once a pass brings no
    improvement.
    """
    x = _project(np.asarray(params, dtype=float))
    value = _params_gap(x)
    step = REFINE_STEP_START
    while step >= REFINE_STEP_STOP:
        for _ in range(max_passes):
            improved = False
            for i in range(6):
                for sign in (1.0, -1.0):
                    trial = x.copy()
                    trial[:, i] += sign * step
                    trial = _project(trial)
                    trial_value = _params_gap(trial)
                    better = trial_value > value
                    if better.any():
                        improved = True
                        x[better] = trial[better]
                        value[better] = trial_value[better]
            if not improved:
                break
        step /= 2
    return x


def verify_prop2(spec: EnsembleSpec, refine: bool = False, threads: int = 1, progress: bool = False) -> VerificationReport:
    """The gap f1 - f2 never exceeds 1/9, and stays below it for CHSH-violating states

    Samples spec.sample_count states from the uniform and saturated strata. With refine, the 100
    largest-gap samples and both extremal_gap_state variants seed refine_gap, and the refined
    maximum must reach 1/9 - 1e-6. extremal_value is the largest gap observed.
    """
    strata = ("uniform", "saturated")
    results = map_chunks(_prop2_chunk, _strata_tasks(spec, strata), threads, progress, desc="Checking the fidelity gap")
    count = sum(r[0] for r in results)
    records = [rec for r in results for rec in r[1]]
    max_gap = max(r[2] for r in results)
    notes = []
    passed = True

    if refine:
        params = np.vstack([r[3] for r in results])
        gaps = np.concatenate([r[4] for r in results])
        top = params[np.argsort(-gaps, kind="stable")[:REFINE_TOP]]
        seeds = _to_params(XBatch.from_states([extremal_gap_state("w-side"), extremal_gap_state("z-side")]))
        refined = refine_gap(np.vstack([top, seeds]))
        refined_batch = XBatch(*refined.T)
        q = closed_form_quantities(refined_batch)
        bad = np.flatnonzero(_gap_problems(q))
        count += len(bad)
        records += [_record(refined_batch, q, i, "refined") for i in bad]
        refined_max = float(q["gap"].max())
        max_gap = max(max_gap, refined_max)
        notes.append(f"hill climb from {len(refined)} starts reached gap {refined_max!r}")
        if max_gap < GAP_BOUND - GAP_REFINE_TOL:
            passed = False
            notes.append(f"refined maximum {max_gap!r} stays below 1/9 - {GAP_REFINE_TOL}")

    return VerificationReport(
        "prop2",
        spec.sample_count * len(strata),
        records,
        count,
        max_gap,
        spec.seed,
        spec.measure_id,
        notes=notes,
        passed=passed,
    )


def _vw_chunk(task) -> tuple:
    seed, k, size, stratum, s = task
    batch = sample_x_batch(rng_stream(seed, k, s), size, stratum)
    q = closed_form_quantities(batch)
    c, b_max = q["concurrence"], q["b_max"]
    lower = b_max - 2 * np.sqrt(2) * c
    upper = 2 * np.sqrt(1 + c ** 2) - b_max
    bad = (
        (lower < -VW_SLACK)
        | (upper < -VW_SLACK)
        | (b_max > 2 * np.sqrt(2) + TSIRELSON_SLACK)
        | ((c > 1 / np.sqrt(2)) & ~q["violates_chsh"])
    )
    bad = np.flatnonzero(bad)
    records = [_record(batch, q, i, stratum) for i in bad[:MAX_COUNTEREXAMPLES]]
    strong = c > 1 / np.sqrt(2)
    return len(bad), records, float(np.min(np.minimum(lower, upper))), int(np.count_nonzero(strong))


def verify_vw_bound(spec: EnsembleSpec, threads: int = 1, progress: bool = False) -> VerificationReport:
    """2 sqrt(2) C <= B_max <= 2 sqrt(1 + C^2) and B_max <= 2 sqrt(2) on every sample

    Also checks that C > 1/sqrt(2) implies a CHSH violation. The ``entangled`` stratum populates
    that region. extremal_value is the smallest slack of the two bounds.
    """
    strata = ("uniform", "saturated", "entangled")
    results = map_chunks(_vw_chunk, _strata_tasks(spec, strata), threads, progress, desc="Checking concurrence bounds")
    count = sum(r[0] for r in results)
    records = [rec for r in results for rec in r[1]]
    strong = sum(r[3] for r in results)
    return VerificationReport(
        "vw-bound",
        spec.sample_count * len(strata),
        records,
        count,
        min(r[2] for r in results),
        spec.seed,
        spec.measure_id,
        notes=[f"{strong} samples with C > 1/sqrt(2)"],
    )
