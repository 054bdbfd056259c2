"""``logcut`` command line.

Subcommands: solve, landscape, sweep-vars, compare.

Command-line flags override a ``--config`` file, which overrides the
built-in defaults. The config file holds
``key = value`` lines whose keys are the long flag names with dashes or
underscores (``population = 14``, ``random-regular = 32,3,7``); ``#``
starts a comment.

Usage errors exit with status 1 and runtime failures with 2. ``LOGCUT_THREADS``
caps how many seeds/runs are processed concurrently (default 1).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable

from . import __version__
from .experiments import (LANDSCAPE_HEADER, METHODS, SWEEP_HEADER, Baselines, GraphSource,
                          compare_table, landscape_rows, solve_record, sweep_rows)
from .genetic import GAConfig
from .solver import layout_for
from .statevector import MODES

EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in str(text).replace(" ", "").split(",") if p != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _str_list(text: str) -> list[str]:
    return [p for p in str(text).replace(" ", "").split(",") if p]


def _opt_int(text: str) -> int | None:
    return None if str(text).lower() in ("", "none") else int(text)


# dest, flags, type, default, help
_COMMON = [
    ("graph", ["--graph"], str, None, "edge-list file (first line '<num_vertices> <num_edges>')"),
    ("random_regular", ["--random-regular"], str, None, "generate a random regular graph: N,D,SEED"),
    ("mode", ["--mode"], str, "dense", f"evaluation path: {', '.join(MODES)}"),
    ("shots", ["--shots"], int, 8192, "measurement shots per Pauli string (pauli-sampled)"),
    ("seeds", ["--seeds"], _int_list, [0], "comma-separated seeds"),
    ("out", ["--out"], str, None, "output path (default: stdout)"),
    ("m_r", ["--m-r"], _opt_int, None, "relaxation steepness (default block_size + 2)"),
]
_GA = [
    ("population", ["--population"], int, 14, "GA population size"),
    ("max_iterations", ["--iterations", "--max-iterations"], int, 200, "GA generations"),
    ("mutation_prob", ["--mutation-prob"], float, 0.1, "per-gene mutation probability"),
    ("crossover_prob", ["--crossover-prob"], float, 0.5, "per-gene crossover probability"),
    ("elitism_count", ["--elitism"], int, 1, "individuals copied unchanged"),
    ("parents_fraction", ["--parents-fraction"], float, 0.3, "fraction of population eligible as parents"),
    ("stall_limit", ["--stall-limit"], _opt_int, None, "stop after this many generations without improvement"),
]
_BASELINE = [
    ("gw_seed", ["--gw-seed"], int, 0, "seed of the Goemans-Williamson baseline"),
    ("gw_roundings", ["--gw-roundings"], int, 200, "hyperplane roundings for the GW baseline"),
    ("random_samples", ["--random-samples"], int, 10_000, "samples for the random-bipartition mean"),
]
_PER_COMMAND = {
    "solve": [
        ("vars", ["--vars"], int, 8, "number of continuous variables r (must divide 2^n)"),
        ("noise", ["--noise"], float, 0.0, "multiplicative uniform noise level on the objective"),
    ] + _GA + _BASELINE,
    "landscape": [
        ("points", ["--points"], int, 100, "equidistant x values over [0, 2pi]"),
    ],
    "sweep-vars": [
        ("vars", ["--vars"], _int_list, [8, 16], "comma-separated variable counts"),
        ("noise", ["--noise"], float, 0.15, "multiplicative uniform noise level on the objective"),
        ("repeats", ["--repeats"], int, 20, "noisy GA runs per variable count"),
    ] + _GA,
    "compare": [
        ("methods", ["--methods"], _str_list, list(METHODS), f"comma-separated subset of {', '.join(METHODS)}"),
        ("vars", ["--vars"], int, 8, "variable count for quantum-ga (capped at 2^n)"),
    ] + _GA + _BASELINE,
}
_HELP = {
    "solve": "run the variational solver; one JSON record per seed",
    "landscape": "single-variable cut landscape as CSV",
    "sweep-vars": "decoded-cut statistics versus variable count as CSV",
    "compare": "JSON table of cuts per method with ratio bounds",
}


def _options(command: str):
    return _COMMON + _PER_COMMAND[command] + [("config", ["--config"], str, None, "key = value settings file")]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="logcut", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"logcut {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for command in _PER_COMMAND:
        p = sub.add_parser(command, help=_HELP[command], description=_HELP[command],
                           argument_default=argparse.SUPPRESS)
        for dest, flags, typ, default, help_ in _options(command):
            p.add_argument(*flags, dest=dest, type=typ, help=f"{help_} [default: {default}]")
    return parser


def read_config(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def resolve_settings(command: str, ns: argparse.Namespace) -> dict:
    """Merge defaults < config file < command-line flags."""
    options = {dest: (flags, typ, default) for dest, flags, typ, default, _ in _options(command)}
    aliases = {f.lstrip("-").replace("-", "_"): dest for dest, (flags, _, _) in options.items() for f in flags}
    settings = {dest: default for dest, (_, _, default) in options.items()}
    explicit = vars(ns)
    if explicit.get("config"):
        try:
            config = read_config(explicit["config"])
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
        for key, text in config.items():
            if key not in aliases:
                raise UsageError(f"unknown config key {key!r} for {command}")
            dest = aliases[key]
            try:
                settings[dest] = options[dest][1](text)
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"config key {key!r}: {exc}") from None
    settings.update({k: v for k, v in explicit.items() if k != "command"})
    return settings


def _graph_source(settings: dict) -> GraphSource:
    if settings["graph"] and settings["random_regular"]:
        raise UsageError("give either --graph or --random-regular, not both")
    if settings["graph"]:
        try:
            return GraphSource.from_file(settings["graph"])
        except OSError as exc:
            raise RuntimeError(f"cannot read graph file: {exc}") from None
    if settings["random_regular"]:
        try:
            return GraphSource.from_random_regular(settings["random_regular"])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("a graph is required: --graph FILE or --random-regular N,D,SEED")


def _ga_config(settings: dict, seed: int) -> GAConfig:
    try:
        return GAConfig(population=settings["population"], max_iterations=settings["max_iterations"],
                        mutation_prob=settings["mutation_prob"], crossover_prob=settings["crossover_prob"],
                        elitism_count=settings["elitism_count"],
                        parents_fraction=settings["parents_fraction"], seed=seed,
                        stall_limit=settings["stall_limit"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_mode(settings: dict) -> None:
    if settings["mode"] not in MODES:
        raise UsageError(f"--mode must be one of {', '.join(MODES)}")
    if settings["mode"] == "pauli-sampled" and settings["shots"] < 1:
        raise UsageError("--shots must be >= 1")


def _check_vars(source: GraphSource, r_values: list[int]) -> None:
    for r in r_values:
        try:
            layout_for(source.graph, r)
        except ValueError as exc:
            raise UsageError(f"--vars {r}: {exc}") from None


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LOGCUT_THREADS", "1")))
    except ValueError:
        return 1


class _Output:
    """Line-atomic writer to a file or stdout."""

    def __init__(self, path: str | None):
        self._fh = open(path, "w", encoding="utf-8", newline="") if path else sys.stdout
        self._own = path is not None
        self._lock = threading.Lock()

    def write_line(self, line: str) -> None:
        with self._lock:
            self._fh.write(line + "\n")
            self._fh.flush()

    def write(self, text: str) -> None:
        with self._lock:
            self._fh.write(text)
            self._fh.flush()

    def close(self):
        if self._own:
            self._fh.close()


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_solve(settings: dict, out: _Output) -> None:
    source = _graph_source(settings)
    _check_mode(settings)
    _check_vars(source, [settings["vars"]])
    shots = settings["shots"] if settings["mode"] == "pauli-sampled" else None
    baselines = Baselines(source.graph, gw_seed=settings["gw_seed"], gw_roundings=settings["gw_roundings"],
                          random_samples=settings["random_samples"])
    baselines.gw, baselines.random  # compute once before fanning out
    configs = [_ga_config(settings, s) for s in settings["seeds"]]

    def run(config: GAConfig) -> dict:
        return solve_record(source, settings["vars"], config, settings["mode"], shots=shots,
                            noise=settings["noise"], m_r=settings["m_r"], baselines=baselines)

    threads = min(_threads(), len(configs))
    if threads <= 1:
        for config in configs:
            out.write_line(json.dumps(run(config)))
        return
    with ThreadPoolExecutor(threads) as pool:
        for fut in as_completed([pool.submit(run, c) for c in configs]):
            out.write_line(json.dumps(fut.result()))


def cmd_landscape(settings: dict, out: _Output) -> None:
    source = _graph_source(settings)
    _check_mode(settings)
    if settings["points"] < 1:
        raise UsageError("--points must be >= 1")
    shots = settings["shots"] if settings["mode"] == "pauli-sampled" else None
    rows = landscape_rows(source.graph, settings["points"], settings["mode"], shots=shots,
                          seed=settings["seeds"][0], m_r=settings["m_r"])
    out.write(_csv_text(LANDSCAPE_HEADER, [(repr(x), repr(v), repr(e), repr(c)) for x, v, e, c in rows]))


def cmd_sweep_vars(settings: dict, out: _Output) -> None:
    source = _graph_source(settings)
    _check_mode(settings)
    _check_vars(source, settings["vars"])
    if settings["repeats"] < 1:
        raise UsageError("--repeats must be >= 1")
    if settings["noise"] < 0:
        raise UsageError("--noise must be >= 0")
    shots = settings["shots"] if settings["mode"] == "pauli-sampled" else None
    config = _ga_config(settings, settings["seeds"][0])
    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            rows = sweep_rows(source.graph, settings["vars"], settings["noise"], settings["repeats"],
                              config, settings["mode"], shots, map_fn=pool.map)
    else:
        rows = sweep_rows(source.graph, settings["vars"], settings["noise"], settings["repeats"],
                          config, settings["mode"], shots)
    out.write(_csv_text(SWEEP_HEADER, [(r, repr(m), repr(lo), repr(hi)) for r, m, lo, hi in rows]))


def cmd_compare(settings: dict, out: _Output) -> None:
    source = _graph_source(settings)
    _check_mode(settings)
    methods = settings["methods"]
    if not methods:
        raise UsageError("--methods needs at least one of " + ", ".join(METHODS))
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise UsageError(f"unknown methods {unknown}; choose from {', '.join(METHODS)}")
    dim = 1 << (source.graph.num_vertices - 1).bit_length()
    r = min(settings["vars"], dim)
    if "quantum-ga" in methods:
        _check_vars(source, [r])
    shots = settings["shots"] if settings["mode"] == "pauli-sampled" else None
    baselines = Baselines(source.graph, gw_seed=settings["gw_seed"], gw_roundings=settings["gw_roundings"],
                          random_samples=settings["random_samples"])
    table = compare_table(source, methods, r, _ga_config(settings, settings["seeds"][0]),
                          settings["seeds"], settings["mode"], shots, baselines)
    out.write(json.dumps(table, indent=2) + "\n")


COMMANDS: dict[str, Callable[[dict, _Output], None]] = {
    "solve": cmd_solve,
    "landscape": cmd_landscape,
    "sweep-vars": cmd_sweep_vars,
    "compare": cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        settings = resolve_settings(ns.command, ns)
        if not settings["seeds"]:
            raise UsageError("--seeds needs at least one seed")
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    out = None
    try:
        out = _Output(settings["out"])
        COMMANDS[ns.command](settings, out)
    except UsageError as exc:
        print(f"logcut {ns.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"logcut {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    finally:
        if out is not None:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
