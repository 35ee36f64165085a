import argparse
import os
import sys

from xtele.core.constants import (
    DEFAULT_MC_N,
    DEFAULT_RESTARTS,
    EXIT_FAILED,
    EXIT_IO,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VALIDATION,
    SWEEP_FAMILIES,
)
from xtele.core.utils import read_state_file
from xtele.errors_logs.errors import ParamOutOfRange, StateFileError, XTeleError
from xtele.post_process import post_process as pp
from xtele.xtele_run import SweepSpec, run_analysis, run_ensemble, run_sweep, run_teleport, run_verify

IO_REASON = "IOError"

parser = argparse.ArgumentParser(
    prog="xtele", description="Entanglement, CHSH violation and teleportation fidelity of two-qubit X states"
)
parser.add_argument(
    "--threads",
    dest="threads",
    type=int,
    default=None,
    help="maximum number of worker processes (CLI > env:XTELE_THREADS > 1)",
)
parser.add_argument(
    "--progress",
    dest="progress",
    default=False,
    action="store_true",
    help="show progress bars on stderr",
)
subparsers = parser.add_subparsers(dest="command", required=True)

analyze_parser = subparsers.add_parser("analyze", help="closed-form report of one state")
analyze_parser.add_argument("state_file", type=str, help="path to a JSON state file")
analyze_parser.add_argument(
    "--basis",
    dest="basis",
    choices=["auto", "standard"],
    default="auto",
    help="Bell basis of the overlaps: (arg w, arg z) for X states, or alpha = beta = 0",
)

sweep_parser = subparsers.add_parser("sweep", help="CSV table over a one-parameter family")
sweep_parser.add_argument("--family", dest="family", choices=[*SWEEP_FAMILIES], required=True)
sweep_parser.add_argument("--from", dest="param_from", type=float, help="first grid point")
sweep_parser.add_argument("--to", dest="param_to", type=float, help="last grid point")
sweep_parser.add_argument("--steps", dest="steps", type=int, default=101, help="number of grid points")
sweep_parser.add_argument(
    "-o",
    dest="output_path",
    type=str,
    help="path to the csv output file (including filename). If not provided, the table goes to stdout",
)

ensemble_parser = subparsers.add_parser("ensemble", help="Monte Carlo fractions of the X-state ensemble")
ensemble_parser.add_argument("--samples", dest="samples", type=int, default=1000000)
ensemble_parser.add_argument("--seed", dest="seed", type=int, default=1)

verify_parser = subparsers.add_parser("verify", help="numerical verification campaign")
verify_parser.add_argument("--prop", dest="prop", choices=["1", "2", "vw"], required=True)
verify_parser.add_argument("--samples", dest="samples", type=int, default=100000)
verify_parser.add_argument("--seed", dest="seed", type=int, default=1)
verify_parser.add_argument(
    "--refine", dest="refine", default=False, action="store_true", help="hill-climb the gap (prop 2 only)"
)

teleport_parser = subparsers.add_parser("teleport", help="teleportation oracle for one state")
teleport_parser.add_argument("state_file", type=str, help="path to a JSON state file")
teleport_parser.add_argument("--corrections", dest="corrections", choices=["pauli", "optimal"], default="pauli")
teleport_parser.add_argument("--quadrature", dest="quadrature", choices=["octa", "mc"], default="octa")
teleport_parser.add_argument("--mc-n", dest="mc_n", type=int, default=DEFAULT_MC_N)
teleport_parser.add_argument("--seed", dest="seed", type=int, default=0)
teleport_parser.add_argument("--restarts", dest="restarts", type=int, default=DEFAULT_RESTARTS)


def _fail(reason: str, message: str, code: int) -> int:
    print(f"{reason}: {message}".splitlines()[0], file=sys.stderr)
    return code


def resolve_threads(value=None) -> int:
    """Worker count from the CLI value, else env:XTELE_THREADS, else 1"""
    if value is None:
        value = os.getenv("XTELE_THREADS", "1")
    try:
        threads = int(value)
    except ValueError:
        raise ParamOutOfRange(f"XTELE_THREADS must be a positive integer, got '{value}'") from None
    if threads < 1:
        raise ParamOutOfRange(f"the number of threads must be at least 1, got {threads}")
    return threads


def main(argv=None) -> int:

    args = vars(parser.parse_args(argv))
    command = args["command"]
    progress = args["progress"]

    try:
        threads = resolve_threads(args["threads"])
        if command == "analyze":
            print(pp.dump_json(run_analysis(read_state_file(args["state_file"]), basis=args["basis"])))
        elif command == "teleport":
            report = run_teleport(
                read_state_file(args["state_file"]),
                corrections=args["corrections"],
                quadrature=args["quadrature"],
                mc_n=args["mc_n"],
                seed=args["seed"],
                restarts=args["restarts"],
            )
            print(pp.dump_json(report))
        elif command == "sweep":
            spec = SweepSpec(
                args["family"],
                param_from=args["param_from"],
                param_to=args["param_to"],
                steps=args["steps"],
                output_path=args["output_path"],
            )
            table = run_sweep(spec)
            if table is not None:
                sys.stdout.write(table)
        elif command == "ensemble":
            print(pp.dump_json(run_ensemble(args["samples"], args["seed"], threads=threads, progress=progress)))
        elif command == "verify":
            report = run_verify(
                args["prop"], args["samples"], args["seed"], refine=args["refine"], threads=threads, progress=progress
            )
            print(pp.dump_json(report))
            if not report["passed"]:
                return EXIT_FAILED
    except StateFileError as err:
        return _fail(err.reason, str(err), EXIT_PARSE)
    except XTeleError as err:
        return _fail(err.reason, str(err), EXIT_VALIDATION)
    except OSError as err:
        return _fail(IO_REASON, str(err), EXIT_IO)
    return EXIT_OK


if __name__ == "__main__":

    sys.exit(main())
