"""Numerical tolerances, thresholds and file-format constants shared across the package"""

import numpy as np

# Linear algebra
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
UNIT_NORM_TOL = 1e-12
CLAMP_TOL = 1e-12
UNITARY_TOL = 1e-10

# X-state validation
POPULATION_TOL = 1e-12
COHERENCE_TOL = 1e-12

# Properties checked by the verification campaigns
GAP_BOUND = 1.0 / 9.0
GAP_SLACK = 1e-10
GAP_REFINE_TOL = 1e-6
VW_SLACK = 1e-9
CLASSICAL_FIDELITY = 2.0 / 3.0
EXCESS_TOL = 1e-6

# Sampling
MEASURES = ("dirichlet-disk",)
DEFAULT_MEASURE = "dirichlet-disk"
STRATA = ("uniform", "saturated", "faces", "entangled")
SATURATION_RANGE = (0.95, 1.0)
FACES_CONCENTRATION = 0.2
CHUNK_SIZE = 65536
LOW_SAMPLE_COUNT = 1000
Z_95 = 1.96
MAX_COUNTEREXAMPLES = 20

# prop2 hill climb
REFINE_TOP = 100
REFINE_STEP_START = 1e-2
REFINE_STEP_STOP = 1e-8

# Bob-side optimizers
LINE_SEARCHES = 200
DEFAULT_RESTARTS = 32
DEFAULT_MC_N = 100000

SWEEP_FAMILIES = {
    "werner": ("p", 0.0, 1.0),
    "bell": ("alpha", 0.0, 2 * np.pi),
    "extremal-gap": ("w", 0.0, 1.0 / 6.0),
}

SWEEP_COLUMNS = [
    "family",
    "param",
    "n_value",
    "m_value",
    "b_max",
    "concurrence",
    "f1",
    "f2",
    "gap",
    "entangled",
    "violates_chsh",
    "nonclassical_teleport",
]

# Exit codes of the command line
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4
