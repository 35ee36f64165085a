# -*- coding: utf-8 -*-

#%% Import required libraries
import json
import os.path
import sys
from typing import List, Union

import numpy as np
import pandas as pd

from xtele.core.constants import SWEEP_COLUMNS

BOOLEAN_COLUMNS = ["entangled", "violates_chsh", "nonclassical_teleport"]

#%% Sweep tables

def sweep_frame(rows: List[dict]) -> pd.DataFrame:
    """One row per grid point with the columns of SWEEP_COLUMNS, flags stored as 0/1"""
    frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    for column in BOOLEAN_COLUMNS:
        frame[column] = frame[column].astype(bool).astype(int)
    return frame


def export_sweep(frame: pd.DataFrame, ofname: Union[str, None] = None) -> Union[str, None]:
    """Writes a sweep table with 12 significant digits and LF line endings

    Returns the CSV text when ofname is None. Raises OSError if the path cannot be written.
    """
    if ofname is None:
        return frame.to_csv(index=False, float_format="%.12g", lineterminator="\n")
    directory = os.path.dirname(os.path.abspath(ofname))
    if not os.path.isdir(directory):
        raise FileNotFoundError(f"output directory '{directory}' does not exist")
    print("Writing sweep results to", ofname, file=sys.stderr)
    with open(ofname, "w", encoding="utf8", newline="") as fp:
        frame.to_csv(fp, index=False, float_format="%.12g", lineterminator="\n")
    return None

#%% JSON reports

def _to_builtin(value):
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return _to_builtin(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    return value


def dump_json(report: dict) -> str:
    """Serialises a report; floats keep the 17 significant digits of their repr"""
    return json.dumps(_to_builtin(report), indent=2, sort_keys=True)
