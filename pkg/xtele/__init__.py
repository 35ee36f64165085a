"""
xtele: entanglement, Bell-CHSH violation and teleportation fidelity of two-qubit X states

xtele evaluates the closed forms of the correlation invariants N and M, the Bell overlaps, the
maximal teleportation fidelities with unitary and with Pauli corrections and the concurrence of
X states, and checks each of them against brute-force oracles: a three-qubit teleportation
simulator, optimizers over Bob's corrections and the CHSH directions, the Wootters concurrence
and Monte Carlo campaigns over random X states.


Package dependencies:
    - numpy
    - scipy
    - pandas
    - tqdm
"""


from xtele._version import __version__
from xtele.core.qmath import PureQubit, partial_trace
from xtele.core.states import (
    XState,
    DenseState,
    EnsembleSpec,
    validate,
    werner,
    bell,
    hadamard_rotated_bell,
    extremal_gap_state,
    sample_x_state,
)
from xtele.core.metrics import (
    correlation_report,
    m_closed_form,
    fidelity_report,
    fef_bell_basis,
    concurrence_x,
    classify,
    teleportation_basis,
    reachable_unitary_fidelity,
)
from xtele.core.oracles import (
    CorrectionScheme,
    teleport_once,
    average_fidelity,
    best_pauli_fidelity,
    best_unitary_fidelity,
    chsh_maximize,
    wootters_concurrence,
)
from xtele.core.ensemble import estimate_fractions, verify_prop1, verify_prop2, verify_vw_bound
from xtele.example.examples import load_data, download_example

__copyright__ = "Licensed under the European Union Public Licence (EUPL), Version 1.2-or-later"
