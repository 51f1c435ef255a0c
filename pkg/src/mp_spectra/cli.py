"""``mp-spectra`` command-line front end.

Every command builds an :class:`OutputRecord` and writes it once, atomically,
as CSV or JSON. Exit status: 0 success, 2 invalid input, 3 numerical failure,
4 tolerance failure.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import (
    AccuracyError,
    ConsistencyError,
    ConvergenceError,
    DefinitenessError,
    DegenerateOutputError,
    DomainError,
)
from .polys import (
    KrawtchoukParams,
    MeixnerParams,
    MPParams,
    gram_continuous,
    gram_discrete_krawtchouk,
    gram_discrete_meixner,
)
from .reference import REFERENCE_EIGENVALUES
from .system import (
    HAMILTONIANS,
    REFERENCE_PARAMS,
    PhysicalParams,
    analytic_spectrum,
    default_grid,
    label_spectrum,
    map_energy,
    numerical_spectrum,
    physical_phase_shift,
    wavefunction,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_TOLERANCE = 4

MAX_BASIS_SIZE = 10000
CONFIG_KEYS = {"lambda", "mu", "rho", "nu", "basis_size"}

VALIDATE_TOLERANCE = {"mp": 1e-8, "meixner": 1e-10, "krawtchouk": 1e-12}


class ConfigError(DomainError):
    """Invalid command-line or config-file input."""


@dataclass(frozen=True)
class RunConfig:
    params: PhysicalParams
    basis_size: int

    def __post_init__(self):
        if not 1 <= self.basis_size <= MAX_BASIS_SIZE:
            raise ConfigError(f"basis size must be in [1, {MAX_BASIS_SIZE}], got {self.basis_size}")


@dataclass
class OutputRecord:
    command: str
    parameters: dict
    columns: list
    rows: list
    extra: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_json(self):
        doc = {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": self.parameters,
            "results": {"columns": self.columns, "rows": self.rows, **self.extra},
            "diagnostics": self.diagnostics,
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        results = dict(doc["results"])
        columns = results.pop("columns")
        rows = results.pop("rows")
        return cls(
            command=doc["command"],
            parameters=doc["parameters"],
            columns=columns,
            rows=rows,
            extra=results,
            diagnostics=doc["diagnostics"],
            schema_version=doc["schema_version"],
        )

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_csv_cell(v) for v in row])
        return buf.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _num(x):
    return None if x is None else float(x)


# ---------------------------------------------------------------------------
# configuration


def load_config_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def resolve_config(args):
    """Flags override config-file values, which override the built-in defaults."""
    values = {
        "lambda": REFERENCE_PARAMS.lam,
        "mu": REFERENCE_PARAMS.mu,
        "rho": REFERENCE_PARAMS.rho,
        "nu": REFERENCE_PARAMS.nu,
        "basis_size": 10,
    }
    if args.config:
        values.update(load_config_file(args.config))
    flags = {"lambda": args.lam, "mu": args.mu, "rho": args.rho, "nu": args.nu, "basis_size": args.size}
    values.update({k: v for k, v in flags.items() if v is not None})
    try:
        params = PhysicalParams(
            float(values["lambda"]), float(values["mu"]), float(values["rho"]), float(values["nu"])
        )
        size = values["basis_size"]
        if isinstance(size, float) and size.is_integer():
            size = int(size)
        if not isinstance(size, int) or isinstance(size, bool):
            raise ConfigError(f"basis_size must be an integer, got {size!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise ConfigError(str(exc)) from None
        raise ConfigError(f"invalid parameter value: {exc}") from None
    return RunConfig(params, size)


def _params_dict(cfg):
    p = cfg.params
    return {
        "lambda": p.lam,
        "mu": p.mu,
        "rho": p.rho,
        "nu": p.nu,
        "b": p.b,
        "basis_size": cfg.basis_size,
    }


# ---------------------------------------------------------------------------
# commands


def cmd_eigen(cfg, args):
    result = numerical_spectrum(cfg.params, cfg.basis_size, args.hamiltonian)
    rows = [[e.index, e.epsilon, e.physical, _num(e.energy)] for e in label_spectrum(result.eigenvalues)]
    build = HAMILTONIANS[args.hamiltonian]
    norm = build(cfg.params, cfg.basis_size).norm_inf()
    diag = {
        "hamiltonian": args.hamiltonian,
        "max_residual": float(np.max(result.residual_norms)),
        "hamiltonian_norm_inf": norm,
        "b_orthogonality_defect": result.b_orthogonality_defect,
        "negative_count": int(np.sum(result.eigenvalues <= 0)),
    }
    extra = {"units": {"epsilon": "sqrt(2E)", "energy": "hbar=m=1"}}
    record = OutputRecord("eigen", _params_dict(cfg), ["index", "epsilon", "physical", "energy"], rows, extra, diag)
    return record, EXIT_OK


def cmd_table1(cfg, args):
    sizes = _parse_sizes(args.sizes)
    columns = ["index"]
    for N in sizes:
        columns += [f"computed_{N}", f"published_{N}", f"deviation_{N}"]
    computed = {N: numerical_spectrum(cfg.params, N, args.hamiltonian).eigenvalues for N in sizes}
    rows = []
    per_size = {}
    for i in range(max(sizes)):
        row = [i]
        for N in sizes:
            if i < N:
                pub = float(REFERENCE_EIGENVALUES[N][i])
                val = float(computed[N][i])
                row += [val, pub, abs(val - pub)]
            else:
                row += [None, None, None]
        rows.append(row)
    for N in sizes:
        dev = np.abs(computed[N] - np.array(REFERENCE_EIGENVALUES[N], dtype=float))
        per_size[str(N)] = {
            "max_deviation": float(np.max(dev)),
            "count_above_tolerance": int(np.sum(dev > args.tolerance)),
        }
    overall = max(v["max_deviation"] for v in per_size.values())
    passed = overall <= args.tolerance
    diag = {
        "hamiltonian": args.hamiltonian,
        "tolerance": args.tolerance,
        "max_deviation": overall,
        "per_size": per_size,
        "passed": passed,
    }
    record = OutputRecord("table1", _params_dict(cfg), columns, rows, {}, diag)
    return record, EXIT_OK if passed else EXIT_TOLERANCE


def _parse_sizes(text):
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"--sizes expects a comma-separated list of integers, got {text!r}") from None
    bad = [s for s in sizes if s not in REFERENCE_EIGENVALUES]
    if not sizes or bad:
        raise ConfigError(f"--sizes must be drawn from {sorted(REFERENCE_EIGENVALUES)}, got {text!r}")
    return sorted(set(sizes))


def cmd_spectrum(cfg, args):
    energies = analytic_spectrum(cfg.params, args.m_max)
    rows = [[m, float(E), math.log(E)] for m, E in enumerate(energies)]
    record = OutputRecord(
        "spectrum", _params_dict(cfg), ["m", "energy", "ln_energy"], rows, {"m_max": args.m_max}, {}
    )
    return record, EXIT_OK


def cmd_wavefunction(cfg, args):
    if args.epsilon is not None:
        eps = args.epsilon
    else:
        result = numerical_spectrum(cfg.params, cfg.basis_size, args.hamiltonian)
        positive = [float(e) for e in result.eigenvalues if e > 0]
        if not 0 <= args.index < len(positive):
            raise ConfigError(
                f"--index {args.index} out of range: {len(positive)} positive eigenvalues at N = {cfg.basis_size}"
            )
        eps = positive[args.index]
    x = default_grid(cfg.params, args.grid_points, args.grid_max)
    wf = wavefunction(cfg.params, eps, cfg.basis_size, x)
    rows = [[float(a), float(b)] for a, b in zip(wf.x, wf.psi)]
    extra = {
        "epsilon": eps,
        "normalization": wf.normalization,
        "coefficients": [float(c) for c in wf.coefficients],
    }
    return OutputRecord("wavefunction", _params_dict(cfg), ["x", "psi"], rows, extra, {}), EXIT_OK


def _parse_floats(text, flag):
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"{flag} expects comma-separated numbers, got {text!r}") from None


def _energy_list(cfg, args):
    if args.energies:
        return _parse_floats(args.energies, "--energies")
    if args.e_range:
        vals = _parse_floats(args.e_range, "--e-range")
        if len(vals) != 3 or not vals[2].is_integer() or vals[2] < 1:
            raise ConfigError("--e-range expects EMIN,EMAX,COUNT")
        lo, hi, count = vals[0], vals[1], int(vals[2])
        if not 0 < lo <= hi:
            raise ConfigError("--e-range needs 0 < EMIN <= EMAX")
        return [float(v) for v in np.geomspace(lo, hi, count)]
    # symmetric in z around the threshold energy lambda^2/2
    z = np.linspace(-2.0, 2.0, 41)
    return [float(v) for v in 0.5 * (cfg.params.lam * np.exp(z)) ** 2]


def cmd_phase_shift(cfg, args):
    rows = []
    skipped = 0
    for E in _energy_list(cfg, args):
        if not E > 0:
            skipped += 1
            continue
        rows.append([E, map_energy(cfg.params, E).z, physical_phase_shift(cfg.params, E)])
    if skipped:
        print(f"warning: skipped {skipped} nonpositive energies", file=sys.stderr)
    record = OutputRecord(
        "phase-shift", _params_dict(cfg), ["energy", "z", "phase"], rows, {}, {"skipped_nonpositive": skipped}
    )
    return record, EXIT_OK


def cmd_validate(cfg, args):
    family = args.family
    tol = VALIDATE_TOLERANCE[family]
    mu = cfg.params.mu if args.poly_mu is None else args.poly_mu
    if family == "mp":
        nmax = 10 if args.nmax is None else args.nmax
        res = gram_continuous(MPParams(mu, args.theta), nmax)
        fam_params = {"mu": mu, "theta": args.theta}
    elif family == "meixner":
        nmax = 8 if args.nmax is None else args.nmax
        res = gram_discrete_meixner(MeixnerParams(mu, args.beta), nmax)
        fam_params = {"mu": mu, "beta": args.beta}
    else:
        nmax = 8 if args.nmax is None else args.nmax
        res = gram_discrete_krawtchouk(KrawtchoukParams(nmax, args.gamma))
        fam_params = {"N": nmax, "gamma": args.gamma}
    passed = res.max_deviation <= tol
    rows = [[family, nmax, res.max_deviation, tol, passed]]
    extra = {"family_parameters": fam_params}
    diag = {"error_bound": res.error_bound}
    record = OutputRecord(
        "validate", _params_dict(cfg), ["family", "nmax", "max_deviation", "tolerance", "passed"], rows, extra, diag
    )
    return record, EXIT_OK if passed else EXIT_TOLERANCE


COMMANDS = {
    "eigen": cmd_eigen,
    "table1": cmd_table1,
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "phase-shift": cmd_phase_shift,
    "validate": cmd_validate,
}


# ---------------------------------------------------------------------------
# argument parsing and output


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=float, help="basis scale lambda")
    common.add_argument("--mu", type=float, help="coupling mu (b = mu * lambda)")
    common.add_argument("--rho", type=float, help="polynomial parameter rho > -1")
    common.add_argument("--nu", type=float, help="angular parameter nu > -1")
    common.add_argument("--size", type=int, help="basis size N")
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--error-json", action="store_true", help="report errors as JSON on stderr")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to diagnostics")

    hamiltonian = argparse.ArgumentParser(add_help=False)
    hamiltonian.add_argument("--hamiltonian", choices=sorted(HAMILTONIANS), default="flat")

    parser = argparse.ArgumentParser(prog="mp-spectra", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("eigen", parents=[common, hamiltonian], help="generalized eigenvalues")

    p = sub.add_parser("table1", parents=[common, hamiltonian], help="compare with the reference table")
    p.add_argument("--sizes", default="10,20,50")
    p.add_argument("--tolerance", type=float, default=1e-8)

    p = sub.add_parser("spectrum", parents=[common], help="analytic bound-state energies")
    p.add_argument("--m-max", type=int, default=10)

    p = sub.add_parser("wavefunction", parents=[common, hamiltonian], help="bound-state profile")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--index", type=int, default=0, help="index into the positive eigenvalues")
    sel.add_argument("--epsilon", type=float, help="explicit eigenvalue")
    p.add_argument("--grid-max", type=float, help="grid end point (default 40/lambda)")
    p.add_argument("--grid-points", type=int, default=400)

    p = sub.add_parser("phase-shift", parents=[common], help="scattering phase shift")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--energies", help="comma-separated energies")
    src.add_argument("--e-range", help="EMIN,EMAX,COUNT (geometric spacing)")

    p = sub.add_parser("validate", parents=[common], help="orthogonality checks")
    p.add_argument("--family", choices=("mp", "meixner", "krawtchouk"), default="mp")
    p.add_argument("--nmax", type=int)
    p.add_argument("--poly-mu", type=float, help="polynomial mu (default: --mu)")
    p.add_argument("--theta", type=float, default=math.pi / 3)
    p.add_argument("--beta", type=float, default=0.4)
    p.add_argument("--gamma", type=float, default=0.3)
    return parser


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mp-spectra-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _exit_code_for(exc):
    if isinstance(exc, AccuracyError):
        return EXIT_TOLERANCE
    if isinstance(exc, (ConvergenceError, DefinitenessError, DegenerateOutputError, ConsistencyError)):
        return EXIT_NUMERICAL
    return EXIT_VALIDATION


def run(argv=None):
    """Parse ``argv``, run one command and return ``(record, exit_code)``."""
    args = build_parser().parse_args(argv)
    cfg = resolve_config(args)
    start = time.perf_counter()
    record, code = COMMANDS[args.command](cfg, args)
    if args.timing:
        record.diagnostics["wall_clock_s"] = time.perf_counter() - start
    return args, record, code


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    args = None
    try:
        args, record, code = run(argv)
    except (DomainError, ArithmeticError) as exc:
        code = _exit_code_for(exc)
        error_json = "--error-json" in argv
        if error_json:
            payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
            print(json.dumps(payload), file=sys.stderr)
        else:
            print(f"mp-spectra: error: {exc}", file=sys.stderr)
        return code
    text = record.to_json() if args.format == "json" else record.to_csv()
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    if code == EXIT_TOLERANCE:
        print(f"mp-spectra: {args.command}: tolerance check failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
