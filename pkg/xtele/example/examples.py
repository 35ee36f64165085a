import os
import shutil
from typing import Union

from xtele.core.states import DenseState, XState
from xtele.core.utils import read_state_file

path = os.path.abspath(
    os.path.join(
        os.path.dirname(__file__),
    )
)

available_data = {
    "werner_0.8": "werner_0.8.json",
    "bell_phi_plus": "bell_phi_plus.json",
    "maximally_mixed": "maximally_mixed.json",
    "hadamard_rotated_bell": "hadamard_rotated_bell.json",
    "extremal_gap_w": "extremal_gap_w.json",
    "extremal_gap_z": "extremal_gap_z.json",
    "invalid_coherence": "invalid_coherence.json",
}


def example_path(example: str) -> str:
    if example not in available_data:
        raise ValueError(f"valid examples are {[*available_data]}")
    return os.path.join(path, available_data[example])


def load_data(example: str) -> Union[XState, DenseState]:
    """Reads one of the packaged state files, ``invalid_coherence`` raises CoherenceBoundViolated"""
    return read_state_file(example_path(example))


def download_example(destination: str):
    """ Copies the packaged state files to a given path
    Parameters
    -----------
    destination : str
        The path to copy the state files.
    """
    for file in available_data.values():
        shutil.copyfile(src=os.path.join(path, file), dst=os.path.join(destination, file))
