import json
import multiprocessing
import sys
import time
from typing import Callable, Iterable, List, Union

import numpy as np
from scipy.optimize import minimize, minimize_scalar
from tqdm import tqdm

from xtele.core.constants import LINE_SEARCHES
from xtele.core.states import DenseState, XState, state_from_dict
from xtele.errors_logs.errors import StateFileError, XTeleError

POSSIBLE_FORMATS = """
    The possible formats of a state file are :
        - an X state: {"type": "x", "a": ..., "b": ..., "c": ..., "d": ..., "w": {"re": ..., "im": ...}, "z": {"re": ..., "im": ...}}
        - a dense state: {"type": "dense", "re": [[...4x4...]], "im": [[...4x4...]]}
"""


def parse_state(data) -> Union[XState, DenseState]:
    """Builds a state from the decoded JSON object of a state file

    Malformed objects raise StateFileError, well-formed but unphysical ones raise the
    validation error of the state type.
    """
    if not isinstance(data, dict):
        raise StateFileError(f"a state file must hold a JSON object, got {type(data).__name__}\n{POSSIBLE_FORMATS}")
    try:
        return state_from_dict(data)
    except XTeleError:
        raise
    except (KeyError, TypeError, ValueError) as err:
        raise StateFileError(f"could not parse state: {err!r}\n{POSSIBLE_FORMATS}") from err


def read_state_file(filename: str) -> Union[XState, DenseState]:
    """Parse a state file, see POSSIBLE_FORMATS"""
    with open(filename, "r", encoding="utf8") as fp:
        try:
            data = json.load(fp)
        except json.JSONDecodeError as err:
            raise StateFileError(f"'{filename}' is not valid JSON: {err.msg} (line {err.lineno})") from err
    return parse_state(data)


def write_state_file(state: Union[XState, DenseState], filename: str) -> None:
    with open(filename, "w", encoding="utf8", newline="\n") as fp:
        json.dump(state.to_dict(), fp, indent=2)
        fp.write("\n")


def multistart_maximize(
    objective: Callable[[np.ndarray], float],
    starts: Iterable[np.ndarray],
    step: float = np.pi / 2,
    max_line_searches: int = LINE_SEARCHES,
    xtol: float = 1e-9,
    polish: bool = True,
) -> tuple:
    """Maximises a smooth function of a few periodic parameters from several starting points

    Each start is refined coordinate by coordinate: a bounded golden-section/parabolic line search
    (scipy's bounded Brent method) over [x_i - step, x_i + step] replaces x_i whenever it improves
    the objective. The step halves after a pass without improvement, and a start stops after
    ``max_line_searches`` line searches or once the step drops below ``xtol``. The best point of
    each start is then polished with BFGS.

    Parameters
    ----------
    objective : Callable[[np.ndarray], float]
        function to maximise
    starts : Iterable[np.ndarray]
        starting points, evaluated in order
    step : float, optional
        initial half-width of the line searches, by default pi/2

    Returns
    -------
    tuple
        (best value, best point, index of the start that produced it). Ties keep the lowest start index.
    """
    best_value, best_x, best_start = -np.inf, None, -1
    for k, x0 in enumerate(starts):
        x = np.array(x0, dtype=float)
        value = objective(x)
        width = step
        searches = 0
        while searches < max_line_searches and width > xtol:
            improved = False
            for i in range(len(x)):
                if searches >= max_line_searches:
                    break
                searches += 1

                def along(t, i=i):
                    trial = x.copy()
                    trial[i] = t
                    return -objective(trial)

                res = minimize_scalar(
                    along, bounds=(x[i] - width, x[i] + width), method="bounded", options={"xatol": xtol}
                )
                if -res.fun > value:
                    improved = improved or (-res.fun - value) > 1e-15
                    x[i] = res.x
                    value = -res.fun
            if not improved:
                width /= 2
        if polish:
            res = minimize(lambda y: -objective(y), x, method="BFGS")
            if np.isfinite(res.fun) and -res.fun > value:
                x, value = np.asarray(res.x, dtype=float), -res.fun
        if value > best_value:
            best_value, best_x, best_start = value, x, k
    return best_value, best_x, best_start


def map_chunks(func: Callable, tasks: List, threads: int = 1, progress: bool = False, desc: str = "") -> list:
    """Applies func to every task and returns the results in task order

    With threads > 1 the tasks are spread over a process pool; results are still collected in
    order so any reduction over them does not depend on the number of workers.
    """
    results = []
    with tqdm(total=len(tasks), desc=desc, unit="chunk", disable=not progress, file=sys.stderr) as pbar:
        if threads is None or threads <= 1 or len(tasks) <= 1:
            for task in tasks:
                results.append(func(task))
                pbar.update()
        else:
            with multiprocessing.Pool(min(threads, len(tasks))) as pool:
                for result in pool.imap(func, tasks):
                    results.append(result)
                    pbar.update()
    return results


def calc_time_taken(func):
    """ Calculates the time elapsed during the execution of a function"""
    def wrapper(*args, **kwargs):
        start = time.time()
        result = func(*args, **kwargs)
        end = time.time()
        print(func.__name__ + " required " + str(end - start) + " seconds for execution.", file=sys.stderr)
        return result
    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__
    return wrapper
