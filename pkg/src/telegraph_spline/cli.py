"""Command-line harness: run single problems, convergence studies, list problems.

Configuration files are INI-style with ``[problem]``, ``[scheme]``,
``[output]`` and ``[converge]`` sections::

    [problem]
    id = example2
    alpha = 20
    beta = 10

    [scheme]
    N = 21
    k = 0.0001
    t_final = 0.5
    gamma = 2sin

    [output]
    report_times = 0.5
    kind = error-table
    out = ex2.csv

Command-line flags override file values.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import math
import sys
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError, TelegraphError
from .metrics import nodal_errors, observed_order
from .problems import describe, get_problem
from .scheme import GammaChoice, SchemeParams, TelegraphProblem, solve_to_time
from .spline_interp import nodal_values

KINDS = ("error-table", "snapshot", "surface")
NORMS = ("l_inf", "l2", "rms", "l2_scaled")


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.16e}"


@dataclass
class RunConfig:
    problem: str = "example1"
    problem_params: dict[str, float] = field(default_factory=dict)
    N: int = 100
    k: float = 0.01
    t_final: float = 1.0
    gammas: tuple[GammaChoice, ...] = (GammaChoice.PLAIN_K,)
    report_times: tuple[float, ...] | None = None
    out: str = "-"
    kind: str = "error-table"

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown output kind {self.kind!r}", "kind")
        # SchemeParams checks N, k and t_final
        params = self.params(self.gammas[0])
        for t in self.report_times or ():
            if t > self.t_final * (1 + 1e-12):
                raise ConfigurationError(f"{t} exceeds t_final={self.t_final}", "report_times")
            params.level_of(t)

    def params(self, choice: GammaChoice) -> SchemeParams:
        return SchemeParams(self.N, self.k, choice, self.t_final)

    def times(self) -> list[float] | None:
        if self.report_times is not None:
            return list(self.report_times)
        if self.kind == "surface":
            return None
        return [self.t_final]


def _parse_gammas(text: str) -> tuple[GammaChoice, ...]:
    if text == "both":
        return (GammaChoice.TWO_SIN_HALF_K, GammaChoice.PLAIN_K)
    return tuple(GammaChoice.parse(part.strip()) for part in text.split(","))


def _parse_floats(text: str, name: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.replace(";", ",").split(",") if part.strip())
    except ValueError:
        raise ConfigurationError(f"cannot parse {text!r} as a list of numbers", name) from None


def _number(text, name, kind=float):
    try:
        value = kind(text)
    except (TypeError, ValueError):
        raise ConfigurationError(f"cannot parse {text!r}", name) from None
    if kind is float and not math.isfinite(value):
        raise ConfigurationError(f"{text!r} is not finite", name)
    return value


def _parse_schedule(text: str) -> list[tuple[int, float]]:
    schedule = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise ConfigurationError(f"entry {item!r} is not of the form N:k", "schedule")
        n_text, k_text = item.split(":", 1)
        schedule.append((_number(n_text, "schedule", int), _number(k_text, "schedule")))
    if len(schedule) < 2:
        raise ConfigurationError("need at least two N:k entries", "schedule")
    return schedule


def _read_config(path: str) -> dict[str, str]:
    parser = configparser.ConfigParser()
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read {path}: {exc.strerror}", "config") from None
    except configparser.Error as exc:
        raise ConfigurationError(f"cannot parse {path}: {exc}", "config") from None
    known = {"problem", "scheme", "output", "converge"}
    values: dict[str, str] = {}
    for section in parser.sections():
        if section not in known:
            raise ConfigurationError(f"unknown section [{section}]", "config")
        for key, value in parser.items(section):
            values[f"{section}.{key}"] = value
    return values


def build_config(args: argparse.Namespace) -> tuple[RunConfig, dict[str, str]]:
    values = _read_config(args.config) if args.config else {}
    cfg = RunConfig()
    problem_params = {}
    for key, value in values.items():
        section, name = key.split(".", 1)
        if section == "problem" and name != "id":
            problem_params[name] = _number(value, f"problem.{name}")
    for item in args.param or ():
        if "=" not in item:
            raise ConfigurationError(f"{item!r} is not of the form name=value", "param")
        name, value = item.split("=", 1)
        problem_params[name.strip()] = _number(value, f"param {name.strip()}")
    cfg.problem_params = problem_params

    def pick(flag, key):
        flag_value = getattr(args, flag, None)
        return flag_value if flag_value is not None else values.get(key)

    if (v := pick("problem", "problem.id")) is not None:
        cfg.problem = v
    if (v := pick("N", "scheme.N")) is not None:
        cfg.N = _number(v, "N", int)
    if (v := pick("k", "scheme.k")) is not None:
        cfg.k = _number(v, "k")
    if (v := pick("t_final", "scheme.t_final")) is not None:
        cfg.t_final = _number(v, "t_final")
    if (v := pick("gamma", "scheme.gamma")) is not None:
        cfg.gammas = _parse_gammas(v)
    if (v := pick("report_times", "output.report_times")) is not None:
        cfg.report_times = _parse_floats(v, "report_times")
    if (v := pick("out", "output.out")) is not None:
        cfg.out = v
    if (v := pick("kind", "output.kind")) is not None:
        cfg.kind = v
    return cfg, values


def make_problem(cfg: RunConfig) -> TelegraphProblem:
    return get_problem(cfg.problem, **cfg.problem_params)


def _write(out: str, header: Sequence[str], rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell if isinstance(cell, str) else fmt(cell) for cell in row])
    text = buf.getvalue()
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def run(cfg: RunConfig) -> int:
    cfg.validate()
    problem = make_problem(cfg)
    if problem.exact is None and cfg.kind != "surface":
        raise ConfigurationError("problem has no exact solution to compare with", "problem")
    rows = []
    for choice in cfg.gammas:
        snapshots = solve_to_time(problem, cfg.params(choice), cfg.times())
        for t, coeffs in snapshots:
            if cfg.kind == "error-table":
                rep = nodal_errors(coeffs, problem.exact, t)
                rows.append((t, choice.value, cfg.N, cfg.k, rep.l_inf, rep.l2, rep.rms, rep.l2_scaled))
                continue
            x = coeffs.grid.nodes
            numeric = nodal_values(coeffs, 0)
            if cfg.kind == "snapshot":
                exact = problem.exact(x, t)
                for xi, ui, ei in zip(x, numeric, exact):
                    rows.append((choice.value, t, xi, ui, ei, abs(ui - ei)))
            else:
                for xi, ui in zip(x, numeric):
                    rows.append((choice.value, xi, t, ui))
    header = {
        "error-table": ("t", "gamma", "N", "k", "l_inf", "l2", "rms", "l2_scaled"),
        "snapshot": ("gamma", "t", "x", "numeric", "exact", "abs_error"),
        "surface": ("gamma", "x", "t", "numeric"),
    }[cfg.kind]
    _write(cfg.out, header, rows)
    return 0


def converge(
    cfg: RunConfig, schedule: Sequence[tuple[int, float]], norm: str = "l_inf", jobs: int = 1
) -> int:
    """Run every ``(N, k)`` entry at ``t_final`` and report successive orders.

    Orders are taken with respect to ``h`` when ``N`` changes along the
    schedule and with respect to ``k`` otherwise.
    """
    if norm not in NORMS:
        raise ConfigurationError(f"unknown norm {norm!r}; choose from {', '.join(NORMS)}", "norm")
    if len(schedule) < 2:
        raise ConfigurationError("need at least two N:k entries", "schedule")
    problem = make_problem(cfg)
    if problem.exact is None:
        raise ConfigurationError("problem has no exact solution to compare with", "problem")
    h_values = [(problem.b - problem.a) / N for N, _ in schedule]
    by_h = len(set(h_values)) > 1
    # one block per gamma choice, schedule order within each block
    entries = [SchemeParams(N, k, choice, cfg.t_final) for choice in cfg.gammas for N, k in schedule]

    def one(params):
        _, coeffs = solve_to_time(problem, params, [cfg.t_final])[-1]
        return getattr(nodal_errors(coeffs, problem.exact, cfg.t_final), norm)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            errors = list(pool.map(one, entries))
    else:
        errors = [one(p) for p in entries]

    rows = []
    n = len(schedule)
    for idx, (params, err) in enumerate(zip(entries, errors)):
        pos = idx % n
        h = h_values[pos]
        order = ""
        if pos > 0:
            prev_step = h_values[pos - 1] if by_h else entries[idx - 1].k
            step_size = h if by_h else params.k
            if errors[idx - 1] == 0.0 or err == 0.0:
                order = "exact"
            else:
                order = fmt(observed_order([(prev_step, errors[idx - 1]), (step_size, err)])[0])
        rows.append((params.N, h, params.k, cfg.t_final, params.gamma_choice.value, err, order))
    _write(cfg.out, ("N", "h", "k", "t", "gamma", norm, "observed_order"), rows)
    return 0


def list_problems(out=None) -> int:
    out = out or sys.stdout
    for name, text in describe():
        out.write(f"{name:10s} {text}\n")
    return 0


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="INI file with problem/scheme/output sections")
    parser.add_argument("--problem", help="registered problem id (see list-problems)")
    parser.add_argument("--param", action="append", metavar="NAME=VALUE", help="problem parameter")
    parser.add_argument("--N", type=str, help="number of subintervals")
    parser.add_argument("--k", type=str, help="time step")
    parser.add_argument("--t-final", dest="t_final", type=str)
    parser.add_argument("--gamma", help="k, 2sin, both, or a comma list")
    parser.add_argument("--out", help="output CSV path ('-' for stdout)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="telegraph-spline",
        description="Quintic B-spline collocation solver for the telegraph equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="solve one problem and write a CSV")
    _common(p_run)
    p_run.add_argument("--report-times", dest="report_times", help="comma-separated times")
    p_run.add_argument("--kind", choices=KINDS)

    p_conv = sub.add_parser("converge", help="run a schedule of (N, k) pairs")
    _common(p_conv)
    p_conv.add_argument("--schedule", help="comma list of N:k pairs, e.g. 25:1e-4,50:1e-4")
    p_conv.add_argument("--norm", choices=NORMS)
    p_conv.add_argument("--jobs", type=int, default=1, help="parallel solves")

    sub.add_parser("list-problems", help="show built-in problems")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "list-problems":
        return list_problems()
    try:
        cfg, values = build_config(args)
        if args.command == "run":
            return run(cfg)
        schedule_text = args.schedule or values.get("converge.schedule")
        if schedule_text is None:
            raise ConfigurationError("required for converge", "schedule")
        norm = args.norm or values.get("converge.norm", "l_inf")
        return converge(cfg, _parse_schedule(schedule_text), norm, max(1, args.jobs))
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TelegraphError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
