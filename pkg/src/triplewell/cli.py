"""Command-line front end.

Subcommands: spectrum, wavefunction, variational, oracle, compare, table1.
Reports go to stdout or ``--out`` as JSON (default) or CSV. Energies are
always written as decimal strings. Exit codes: 0 success, 1 published-value
mismatch or unexpected failure, 2 invalid parameters, 3 bracket/scan
failure, 4 insufficient precision.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from importlib import resources
import io
import json
import math
import sys

from mpmath import mp

from . import __version__
from .errors import InvalidParameterError, TripleWellError
from .fd_oracle import fd_richardson, fd_spectrum
from .potential import analyze_wells, build_triple_well
from .reference import PUBLISHED_ROWS, last_digit_match, matching_digits
from .series import (
    BoxProblem,
    digits_stable,
    sample_wavefunction,
    scan_levels,
)
from .variational import (
    ThreeStateModel,
    compare_with_numerical,
    minimize_ground,
    model_energies,
    model_states,
)

MAX_DIGITS = 40
ORACLE_WARN_BELOW = 1e-3
DEFAULT_ORACLE_POINTS = 2000
CONFIG_KEYS = ("omega", "half_width", "terms", "digits", "levels", "format", "out")


@dataclass(frozen=True)
class RunConfig:
    omega: str
    half_width: str
    terms: int
    digits: int = 15
    levels: int = 3
    output_format: str = "json"
    output_path: str = None

    def __post_init__(self):
        for name in ("omega", "half_width"):
            try:
                value = Decimal(str(getattr(self, name)))
            except InvalidOperation:
                raise InvalidParameterError(f"{name} must be a number, got {getattr(self, name)!r}") from None
            if not value.is_finite() or value <= 0:
                raise InvalidParameterError(f"{name} must be positive and finite, got {value}")
            object.__setattr__(self, name, str(value))
        for name, low in (("terms", 8), ("digits", 1), ("levels", 1)):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < low:
                raise InvalidParameterError(f"{name} must be an integer >= {low}, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.digits > MAX_DIGITS:
            raise InvalidParameterError(f"digits must be <= {MAX_DIGITS}, got {self.digits}")
        if self.output_format not in ("json", "csv"):
            raise InvalidParameterError(f"format must be json or csv, got {self.output_format!r}")

    def echo(self):
        return {
            "omega": self.omega,
            "half_width": self.half_width,
            "terms": self.terms,
            "digits": self.digits,
            "levels": self.levels,
        }

    def problem(self):
        potential = build_triple_well(Fraction(self.omega))
        return BoxProblem.for_digits(potential, Fraction(self.half_width), self.terms, self.digits)


def _decimal_string(x, places=None):
    """Plain decimal text of an exact or float value."""
    if isinstance(x, float):
        return format(x, ".15g") if places is None else format(x, f".{places}f")
    if isinstance(x, Fraction):
        x = Decimal(x.numerator) / Decimal(x.denominator)
    return format(Decimal(str(x)).normalize(), "f")


def _float_energy(x):
    return format(x, ".12g")


def _level_record(level):
    return {
        "index": level.index,
        "parity": level.parity.value,
        "energy": level.energy,
        "nodes": level.nodes,
    }


def solve_spectrum(config, stability=True):
    problem = config.problem()
    levels = scan_levels(problem, config.levels)
    records = [_level_record(lv) for lv in levels]
    verdicts = {}
    if stability:
        precise = problem.with_precision(2 * problem.precision)
        longer = problem.with_terms(math.ceil(1.25 * problem.terms))
        for rec, lv in zip(records, levels):
            rec["precision_stable"] = digits_stable(precise, lv)
            rec["truncation_stable"] = digits_stable(longer, lv)
        verdicts = {
            "precision_stable": all(r["precision_stable"] for r in records),
            "truncation_stable": all(r["truncation_stable"] for r in records),
            "doubled_precision_bits": precise.precision,
            "extended_terms": longer.terms,
        }
    return problem, levels, {"levels": records, "stability": verdicts}


def _side_frequencies(problem):
    """(central frequency, side frequency) from the wells inside the box."""
    L = problem.half_width
    wells = analyze_wells(problem.potential, (-L, L))
    if len(wells.minima) != 3:
        raise InvalidParameterError(
            f"expected three wells inside the box, found {len(wells.minima)}"
        )
    left, centre, right = wells.minima
    # 30 significant digits: exact for decimal omega, stable for the rest
    return tuple(Fraction(mp.nstr(m.frequency, 30)) for m in (centre, right))


def _ideal(problem):
    omega0, omega1 = _side_frequencies(problem)
    theta, spectrum = minimize_ground(omega0, omega1)
    return omega0, omega1, theta, spectrum


def cmd_spectrum(config, args):
    problem, _, data = solve_spectrum(config, stability=not args.skip_stability)
    return data, {"precision_bits": problem.precision}


def cmd_wavefunction(config, args):
    problem = config.problem()
    if args.level < 0:
        raise InvalidParameterError(f"level must be >= 0, got {args.level}")
    if args.samples < 2:
        raise InvalidParameterError(f"samples must be >= 2, got {args.samples}")
    levels = scan_levels(problem, max(config.levels, args.level + 1))
    level = levels[args.level]
    samples = sample_wavefunction(level.wavefunction, problem.half_width, args.samples)
    data = {
        "level": _level_record(level),
        "samples": [{"x": x, "psi": psi} for x, psi in samples],
    }
    return data, {"precision_bits": problem.precision}


def cmd_variational(config, args):
    problem = config.problem()
    omega0, omega1, theta, spectrum = _ideal(problem)
    model = ThreeStateModel(float(omega0), float(omega1), theta if args.theta is None else args.theta)
    states = model_states(model)
    data = {
        "omega0": _decimal_string(omega0),
        "omega1": _decimal_string(omega1),
        "theta_min": theta,
        "ideal_spectrum": [_decimal_string(e) for e in spectrum],
        "theta": model.theta,
        "energies": [_float_energy(e) for e in model_energies(model)],
        "states": {name: list(row) for name, row in zip(("psi0", "psi1", "psi2"), states.rows())},
        "basis": ["R", "C", "L"],
    }
    return data, {}


def cmd_oracle(config, args):
    potential = build_triple_well(Fraction(config.omega))
    L = float(Fraction(config.half_width))
    raw = fd_spectrum(potential, L, args.points, config.levels)
    extrapolated = fd_richardson(potential, L, args.points, config.levels)
    data = {
        "points": args.points,
        "raw": [_float_energy(e) for e in raw],
        "richardson": [_float_energy(e) for e in extrapolated],
    }
    return data, {}


def cmd_compare(config, args):
    problem = config.problem()
    levels = scan_levels(problem, 3)
    omega0, omega1, theta, spectrum = _ideal(problem)
    oracle = fd_richardson(problem.potential, float(problem.half_width), args.points, 3)
    comparison = compare_with_numerical(spectrum, levels)
    oracle_dev = [abs(o - float(lv.energy)) / float(lv.energy) for o, lv in zip(oracle, levels)]
    rows = []
    for i, lv in enumerate(levels):
        rows.append(
            {
                "index": i,
                "parity": lv.parity.value,
                "series": lv.energy,
                "ideal": _decimal_string(spectrum[i]),
                "oracle": _float_energy(oracle[i]),
                "deviation_from_ideal": _decimal_string(round(comparison.deviations[i], 12)),
                "oracle_deviation": format(oracle_dev[i], ".3e"),
            }
        )
    data = {
        "levels": rows,
        "omega0": _decimal_string(omega0),
        "omega1": _decimal_string(omega1),
        "theta_min": theta,
        "splitting": format(comparison.splitting, "e"),
        "ratio": format(comparison.ratio, ".6e"),
        "classification": comparison.classification,
        "oracle_warning": any(d > ORACLE_WARN_BELOW for d in oracle_dev),
    }
    meta = {"precision_bits": problem.precision, "thresholds": comparison.thresholds}
    meta["thresholds"] = dict(meta["thresholds"], oracle_warn_above=ORACLE_WARN_BELOW)
    return data, meta


def _table_row(row):
    config = RunConfig(str(row.omega), row.half_width, row.terms, row.decimals, 3)
    problem, levels, _ = solve_spectrum(config, stability=False)
    energies = []
    for lv, published in zip(levels, row.energies):
        energies.append(
            {
                "index": lv.index,
                "parity": lv.parity.value,
                "computed": lv.energy,
                "published": published,
                "match": last_digit_match(lv.energy, published),
                "matching_digits": matching_digits(lv.energy, published),
            }
        )
    return {
        "omega": row.omega,
        "half_width": row.half_width,
        "terms": row.terms,
        "digits": row.decimals,
        "precision_bits": problem.precision,
        "energies": energies,
    }


def cmd_table1(config, args):
    rows = [r for r in PUBLISHED_ROWS if not args.rows or r.omega in args.rows]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_table_row, rows))
    else:
        results = [_table_row(r) for r in rows]
    results.sort(key=lambda r: r["omega"])
    data = {
        "rows": results,
        "all_match": all(e["match"] for r in results for e in r["energies"]),
        "source": "published reference values, transcribed verbatim",
    }
    return data, {}


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "variational": cmd_variational,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
    "table1": cmd_table1,
}


def _csv_rows(command, data):
    if command == "wavefunction":
        return ["x", "psi"], [[repr(s["x"]), repr(s["psi"])] for s in data["samples"]]
    if command == "spectrum":
        header = ["index", "parity", "energy", "nodes"]
        if data["stability"]:
            header += ["precision_stable", "truncation_stable"]
        return header, [[lv[h] for h in header] for lv in data["levels"]]
    if command == "compare":
        header = list(data["levels"][0])
        return header, [[lv[h] for h in header] for lv in data["levels"]]
    if command == "oracle":
        return ["index", "raw", "richardson"], [
            [i, r, e] for i, (r, e) in enumerate(zip(data["raw"], data["richardson"]))
        ]
    if command == "table1":
        header = ["omega", "index", "parity", "computed", "published", "match", "matching_digits"]
        return header, [
            [r["omega"]] + [e[h] for h in header[1:]] for r in data["rows"] for e in r["energies"]
        ]
    if command == "variational":
        return ["index", "ideal", "energy"], [
            [i, a, b] for i, (a, b) in enumerate(zip(data["ideal_spectrum"], data["energies"]))
        ]
    raise ValueError(command)


def render(command, config_echo, data, metadata, fmt):
    if fmt == "csv":
        header, rows = _csv_rows(command, data)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    document = {
        "command": command,
        "config": config_echo,
        "data": data,
        "metadata": dict(metadata, generator=f"triplewell {__version__}"),
    }
    return json.dumps(document, indent=2) + "\n"


def report_schema():
    """The JSON schema every JSON report validates against."""
    text = resources.files("triplewell").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def build_parser():
    parser = argparse.ArgumentParser(prog="triplewell", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--omega", help="triple-well frequency parameter")
    common.add_argument("--half-width", dest="half_width", help="wall position L")
    common.add_argument("--terms", type=int, help="nonzero series terms per parity sector")
    common.add_argument("--digits", type=int, help="decimal places of reported energies")
    common.add_argument("--levels", type=int, help="number of levels (default 3)")
    common.add_argument("--format", choices=("json", "csv"), help="output format (default json)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--config", help="JSON file with any of the flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="lowest levels by the series method")
    p.add_argument("--skip-stability", action="store_true", help="skip precision/truncation checks")
    p = sub.add_parser("wavefunction", parents=[common], help="sampled normalized eigenfunction")
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--samples", type=int, default=501)
    p = sub.add_parser("variational", parents=[common], help="three-state harmonic model")
    p.add_argument("--theta", type=float, help="evaluate the model at this angle")
    p = sub.add_parser("oracle", parents=[common], help="finite-difference spectrum")
    p.add_argument("--points", type=int, default=DEFAULT_ORACLE_POINTS)
    p = sub.add_parser("compare", parents=[common], help="series vs model vs finite differences")
    p.add_argument("--points", type=int, default=DEFAULT_ORACLE_POINTS)
    p = sub.add_parser("table1", parents=[common], help="all published rows against reference values")
    p.add_argument("--jobs", type=int, default=1, help="rows solved in parallel processes")
    p.add_argument("--rows", type=int, nargs="*", help="only these omega values")
    return parser


def resolve_config(args):
    """Merge ``--config`` file values with flags; flags win."""
    values = {}
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidParameterError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(loaded) - set(CONFIG_KEYS)
        if unknown:
            raise InvalidParameterError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if args.command == "table1":
        values.setdefault("omega", "20")
        values.setdefault("half_width", "2")
        values.setdefault("terms", 750)
    missing = [k for k in ("omega", "half_width", "terms") if values.get(k) is None]
    if missing:
        flags = ", ".join("--" + k.replace("_", "-") for k in missing)
        raise InvalidParameterError(f"missing required parameter(s): {flags}")
    return RunConfig(
        omega=values["omega"],
        half_width=values["half_width"],
        terms=values["terms"],
        digits=values.get("digits", 15),
        levels=values.get("levels", 3),
        output_format=values.get("format", "json"),
        output_path=values.get("out"),
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        data, metadata = COMMANDS[args.command](config, args)
        text = render(args.command, config.echo(), data, metadata, config.output_format)
        if config.output_path:
            with open(config.output_path, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except TripleWellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.command == "table1" and not data["all_match"]:
        print("error: computed energies differ from the published values", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
