from __future__ import annotations

"""Command-line front-end: ``cghz {run,trace,sweep,verify}``.

Exit codes: 0 success, 1 a report invariant or verification check failed,
2 invalid input, 3 size cap exceeded, 4 I/O failure.
"""

import argparse
import cmath
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from cghz_toolkit.config import ConfigManager, load_flag_file
from cghz_toolkit.core.errors import CghzError, ConfigError, InvalidParameterError, ResourceCapError
from cghz_toolkit.core.models import CghzParams, SweepSpec
from cghz_toolkit.core.preview.report_printer import report_to_json, report_to_text
from cghz_toolkit.core.preview.state_printer import STAGES
from cghz_toolkit.core.analysis.sweep import FORMATS, rows_to_text
from cghz_toolkit.core.services.ecp_service import EcpService
from cghz_toolkit.logging_config import setup_logging

logger = logging.getLogger(__name__)

__all__ = ["build_parser", "main"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_IO = 4

RUN_FORMATS = ("text", "json")


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="repeat for more log output")
    common.add_argument("--config", metavar="PATH", help="flat YAML file of flag values (flags win)")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--m", type=int, help="photons per logic qubit (≥ 2)")
    params.add_argument("--n", type=int, help="number of logic qubits N (≥ 2)")
    params.add_argument("--alpha", type=float, help="real alpha; beta = sqrt(1 - alpha²)")
    params.add_argument("--alpha-re", type=float, help="real part of a complex alpha")
    params.add_argument("--alpha-im", type=float, help="imaginary part of a complex alpha")

    parser = argparse.ArgumentParser(
        prog="cghz",
        description="Exact linear-optics simulation of entanglement concentration for C-GHZ states.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    run = sub.add_parser("run", parents=[common, params], help="run the protocol once")
    run.add_argument("--format", choices=RUN_FORMATS, help="report format (default text)")

    trace = sub.add_parser("trace", parents=[common, params], help="print the state after one stage")
    trace.add_argument("--stage", choices=STAGES, help="stage to print (default prepared)")

    sweep = sub.add_parser("sweep", parents=[common], help="tabulate success probabilities over a grid")
    sweep.add_argument("--m-values", metavar="LIST", help="comma-separated m values")
    sweep.add_argument("--n-values", metavar="LIST", help="comma-separated N values")
    sweep.add_argument("--alphas", metavar="LIST", help="comma-separated alphas in (0, 1)")
    sweep.add_argument("--format", choices=FORMATS, help="table format (default csv)")
    sweep.add_argument("--workers", type=int, help="worker processes")
    sweep.add_argument("--no-timing", action="store_true", default=None, help="write runtime_ms as 0")

    verify = sub.add_parser("verify", parents=[common], help="run the self-check suite")
    verify.add_argument("--quick", action="store_true", default=None, help="small sizes only")
    verify.add_argument("--pbs-reflection-phase", type=float, default=0.0, metavar="DEG", help=argparse.SUPPRESS)

    return parser


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _apply_flag_file(args: argparse.Namespace) -> None:
    """Fill flags left unset on the command line from ``--config``."""
    if not args.config:
        return
    for key, value in load_flag_file(args.config).items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)


def _as_int(name: str, value: Any) -> int:
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}") from None
    if not number.is_integer():
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    return int(number)


def _as_list(name: str, value: Any, convert: Callable[[str, Any], Any]) -> List[Any]:
    if isinstance(value, str):
        items = [item for item in value.replace(" ", "").split(",") if item]
    elif isinstance(value, (list, tuple)):
        items = list(value)
    else:
        items = [value]
    return [convert(name, item) for item in items]


def _as_float(name: str, value: Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"{name} must be a number, got {value!r}") from None


def _params(args: argparse.Namespace) -> CghzParams:
    if args.m is None or args.n is None:
        raise InvalidParameterError("--m and --n are required")
    m, n = _as_int("m", args.m), _as_int("n", args.n)
    complex_form = args.alpha_re is not None or args.alpha_im is not None
    if complex_form and args.alpha is not None:
        raise InvalidParameterError("give either --alpha or --alpha-re/--alpha-im, not both")
    if complex_form:
        return CghzParams.from_complex(
            m, n, _as_float("alpha_re", args.alpha_re or 0.0), _as_float("alpha_im", args.alpha_im or 0.0)
        )
    if args.alpha is None:
        raise InvalidParameterError("--alpha (or --alpha-re/--alpha-im) is required")
    return CghzParams.from_alpha(m, n, _as_float("alpha", args.alpha))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", path)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_run(args: argparse.Namespace, service: EcpService) -> int:
    fmt = args.format or "text"
    if fmt not in RUN_FORMATS:
        raise InvalidParameterError(f"run --format must be one of {RUN_FORMATS}, got {fmt!r}")
    report = service.run(_params(args))
    _emit(report_to_json(report) if fmt == "json" else report_to_text(report), args.out)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _cmd_trace(args: argparse.Namespace, service: EcpService) -> int:
    _emit(service.trace(_params(args), args.stage or "prepared"), args.out)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace, service: EcpService) -> int:
    defaults = service.config.get_sweep_defaults()
    fmt = args.format or defaults.get("format", "csv")
    if fmt not in FORMATS:
        raise InvalidParameterError(f"sweep --format must be one of {FORMATS}, got {fmt!r}")
    m_values = _as_list("m_values", args.m_values if args.m_values is not None else defaults["m_values"], _as_int)
    n_values = _as_list("n_values", args.n_values if args.n_values is not None else defaults["n_values"], _as_int)
    if args.alphas is not None:
        spec = SweepSpec(tuple(m_values), tuple(n_values), tuple(_as_list("alphas", args.alphas, _as_float)))
    else:
        spec = SweepSpec.evenly_spaced(m_values, n_values, _as_int("alpha_count", defaults["alpha_count"]))
    workers = _as_int("workers", args.workers if args.workers is not None else defaults.get("workers", 1))

    rows = service.sweep(spec, workers=workers, timing=not args.no_timing)
    if args.out:
        service.write_sweep(rows, args.out, fmt)
    else:
        sys.stdout.write(rows_to_text(rows, fmt))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, service: EcpService) -> int:
    phase = cmath.exp(1j * math.radians(args.pbs_reflection_phase)) if args.pbs_reflection_phase else 1.0
    results = service.verify(quick=bool(args.quick), reflection_phase=phase)
    text = "".join(result.line() + "\n" for result in results)
    _emit(text, args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


_COMMANDS: Dict[str, Callable[[argparse.Namespace, EcpService], int]] = {
    "run": _cmd_run,
    "trace": _cmd_trace,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse *argv*, run the command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    logger.debug("argv: %s", argv if argv is not None else sys.argv[1:])

    try:
        _apply_flag_file(args)
        return _COMMANDS[args.command](args, EcpService())
    except (InvalidParameterError, ConfigError) as exc:
        print(f"cghz: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceCapError as exc:
        print(f"cghz: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"cghz: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CghzError as exc:
        logger.exception("Simulation failed")
        print(f"cghz: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
