"""Command-line entry point: ``plcsnet {analyze,npt,mst,synth}``.

Settings come from flags, falling back to an optional JSON config file
(``--config``) whose keys are the long flag names with dashes or
underscores. Flags always win. Exit codes: 0 success, 2 unreadable input,
3 contract violation, 4 degenerate graph.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import export
from .errors import ContractError, ParseError, PlcsNetError
from .ingest import AnalysisWindow, SeriesPanel, load_panel, sample_panel_path, window_panel
from .matrix import PairMatrix
from .netgraph import Preference, build_graph, mst, npt, network_summary, summarize
from .plcs import PlcsConfig, plcs_matrix
from .synth import (
    DEFAULT_SIGMA_FRACTIONS,
    RECOVERY_TARGETS,
    SynthKind,
    SynthSpec,
    base_range,
    recovery_table,
    robustness_experiment,
)
from .ud import UdVariant, ud_matrix

SAMPLE_TOKEN = "@sample"
ANALYZE_FORMATS = ("matrix-csv", "pairs-json", "loglog-csv")
GRAPH_FORMATS = ("dot", "graphml")
DEFAULTS = {
    "tail": "10",
    "ud_variant": "am",
    "out": "out",
    "preference": "cp",
    "seed": 0,
    "trials": 100,
    "length": 30,
    "top_k": 3,
}


@dataclass(frozen=True)
class RunConfig:
    input: Optional[str]
    window: Optional[AnalysisWindow]
    plcs: PlcsConfig
    ud_variant: UdVariant
    preferences: tuple[Preference, ...]
    out: Path
    formats: tuple[str, ...]
    seed: int
    trials: int
    length: int
    sigmas: Optional[tuple[float, ...]]
    top_k: int


def _split(value) -> list[str]:
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        items = []
        for v in value:
            items.extend(_split(v))
        return items
    return [s.strip() for s in str(value).split(",") if s.strip()]


def _load_config_file(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError(f"config {path}: top level must be an object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def resolve_config(args: argparse.Namespace, default_formats: Sequence[str], allowed: Sequence[str]) -> RunConfig:
    file_cfg = _load_config_file(args.config)

    def pick(name):
        value = getattr(args, name, None)
        if value is None:
            value = file_cfg.get(name)
        if value is None:
            value = DEFAULTS.get(name)
        return value

    window = pick("window")
    if isinstance(window, (list, tuple)):
        window = AnalysisWindow(int(window[0]), int(window[1]))
    elif window is not None:
        window = AnalysisWindow.parse(str(window))

    formats = tuple(_split(pick("formats"))) or tuple(default_formats)
    for f in formats:
        if f not in allowed:
            raise ContractError(f"format {f!r} not available here; choose from {', '.join(allowed)}")

    prefs = tuple(dict.fromkeys(Preference.parse(p) for p in _split(pick("preference"))))
    sigmas = pick("sigmas")
    if sigmas is not None:
        try:
            sigmas = tuple(float(s) for s in _split(sigmas))
        except ValueError:
            raise ContractError(f"sigmas must be numbers, got {sigmas!r}") from None

    return RunConfig(
        input=pick("input"),
        window=window,
        plcs=PlcsConfig.from_tail(pick("tail")),
        ud_variant=UdVariant.parse(pick("ud_variant")),
        preferences=prefs,
        out=Path(pick("out")),
        formats=formats,
        seed=int(pick("seed")),
        trials=int(pick("trials")),
        length=int(pick("length")),
        sigmas=sigmas,
        top_k=int(pick("top_k")),
    )


def load_input(cfg: RunConfig) -> tuple[SeriesPanel, str]:
    """Load and window the input panel; returns it with the window label."""
    if not cfg.input:
        raise ContractError("--input is required")
    path = sample_panel_path() if cfg.input == SAMPLE_TOKEN else Path(cfg.input)
    try:
        panel = load_panel(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise type(exc)(f"{path}: {exc}") from None
    if cfg.window is not None:
        panel = window_panel(panel, cfg.window)
        label = cfg.window.label
    else:
        AnalysisWindow(panel.periods[0], panel.periods[-1])
        label = f"{panel.periods[0]}_{panel.periods[-1]}"
    return panel, label


def analyze_panel(panel: SeriesPanel, cfg: RunConfig) -> PairMatrix:
    return plcs_matrix(panel, cfg.plcs).merge(ud_matrix(panel, cfg.ud_variant))


def _write(out: Path, name: str, text: str, written: list[Path]) -> None:
    written.append(export.atomic_write(out / name, text))


def cmd_analyze(cfg: RunConfig) -> list[Path]:
    panel, label = load_input(cfg)
    matrix = analyze_panel(panel, cfg)
    written: list[Path] = []
    if "matrix-csv" in cfg.formats:
        for channel in ("gamma", "beta", "ud"):
            _write(cfg.out, f"{channel}-{label}.csv", export.matrix_csv(matrix, channel), written)
    if "pairs-json" in cfg.formats:
        meta = {
            "window": [panel.periods[0], panel.periods[-1]],
            "tail_points": cfg.plcs.tail_points,
            "min_md": cfg.plcs.min_md,
            "ud_variant": cfg.ud_variant.value,
        }
        _write(cfg.out, f"pairs-{label}.json", export.pairs_json(matrix, meta), written)
    if "loglog-csv" in cfg.formats:
        _write(cfg.out, f"loglog-{label}.csv", export.loglog_csv(panel, cfg.plcs), written)
    return written


def _write_graph(cfg: RunConfig, stem: str, graph, attrs: dict, summary: dict, written: list[Path]) -> None:
    if "dot" in cfg.formats:
        _write(cfg.out, f"{stem}.dot", export.graph_dot(graph, stem, attrs), written)
    if "graphml" in cfg.formats:
        _write(cfg.out, f"{stem}.graphml", export.graph_graphml(graph, stem, attrs), written)
    _write(cfg.out, f"{stem}.json", export.summary_json(summary), written)


def cmd_npt(cfg: RunConfig) -> list[Path]:
    panel, label = load_input(cfg)
    matrix = analyze_panel(panel, cfg)
    written: list[Path] = []
    for pref in cfg.preferences:
        net = npt(build_graph(matrix, pref.channel), pref)
        stem = f"{pref.code}-{label}"
        summary = {"window": label, **network_summary(net, cfg.top_k)}
        _write_graph(cfg, stem, net.graph, export.network_attrs(net, label), summary, written)
    return written


def cmd_mst(cfg: RunConfig) -> list[Path]:
    panel, label = load_input(cfg)
    matrix = ud_matrix(panel, cfg.ud_variant)
    tree = mst(build_graph(matrix, "ud"))
    stem = f"mst-{label}"
    summary = {
        "window": label,
        "channel": "ud",
        "ud_variant": cfg.ud_variant.value,
        "total_weight": tree.total_weight(),
        **summarize(tree, cfg.top_k),
    }
    attrs = {"tree": "MST", "channel": "ud", "window": label}
    written: list[Path] = []
    _write_graph(cfg, stem, tree, attrs, summary, written)
    return written


def cmd_synth(cfg: RunConfig) -> list[Path]:
    base = SynthSpec(SynthKind.NoisyLinear, length=cfg.length, seed=cfg.seed)
    span = base_range(base)
    fractions = cfg.sigmas if cfg.sigmas is not None else DEFAULT_SIGMA_FRACTIONS
    rows = robustness_experiment([f * span for f in fractions], cfg.trials, base, cfg.plcs)
    written: list[Path] = []
    report = export.rows_csv(
        ["sigma_fraction", "sigma", "mean_gamma", "mean_abs_gamma", "mean_ud_am", "trials", "degenerate"],
        [(float(f), r.sigma, r.mean_gamma, r.mean_abs_gamma, r.mean_ud, r.trials, r.degenerate)
         for f, r in zip(fractions, rows)],
    )
    _write(cfg.out, "robustness.csv", report, written)
    recovery = recovery_table(RECOVERY_TARGETS, 200, cfg.plcs)
    fixture = export.rows_csv(
        ["gamma_target", "gamma", "beta", "r_squared", "abs_error", "length", "tail_points"],
        [(r.gamma_target, r.gamma, r.beta, r.r_squared, r.abs_error, r.length, r.tail_points) for r in recovery],
    )
    _write(cfg.out, "recovery.csv", fixture, written)
    return written


COMMANDS = {
    "analyze": (cmd_analyze, ("matrix-csv", "pairs-json"), ANALYZE_FORMATS),
    "npt": (cmd_npt, GRAPH_FORMATS, GRAPH_FORMATS),
    "mst": (cmd_mst, GRAPH_FORMATS, GRAPH_FORMATS),
    "synth": (cmd_synth, (), ()),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plcsnet",
        description="Power-law correlation classes and percolation-threshold networks for time-series panels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default settings; flags override it")
    common.add_argument("--out", help="output directory (default: out)")
    common.add_argument("--tail", help="log-log tail points to fit, or 'all' (default: 10)")
    common.add_argument("--seed", type=int)

    panel_opts = argparse.ArgumentParser(add_help=False)
    panel_opts.add_argument("--input", help=f"wide CSV panel, or {SAMPLE_TOKEN} for the bundled sample")
    panel_opts.add_argument("--window", help="START:END, inclusive (default: whole panel)")
    panel_opts.add_argument("--ud-variant", dest="ud_variant", choices=["am", "ms", "AM", "MS"])
    panel_opts.add_argument("--formats", help="comma-separated output formats")

    panel_opts.add_argument(
        "--preference", action="append", help="npt only: cp, sp, s or ud; repeat or comma-separate"
    )
    panel_opts.add_argument("--top-k", dest="top_k", type=int, help="hubs listed in summaries (default: 3)")

    sub.add_parser("analyze", parents=[common, panel_opts], help="gamma, beta and UD matrices")
    sub.add_parser("npt", parents=[common, panel_opts], help="networks on the percolation threshold")
    sub.add_parser("mst", parents=[common, panel_opts], help="minimum spanning tree on UD")
    p = sub.add_parser("synth", parents=[common], help="noise-robustness report and recovery fixtures")
    p.add_argument("--trials", type=int, help="trials per noise level (default: 100)")
    p.add_argument("--length", type=int, help="series length for the noise experiment (default: 30)")
    p.add_argument("--sigmas", help="noise levels as fractions of the base series range")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    func, default_formats, allowed = COMMANDS[args.command]
    try:
        cfg = resolve_config(args, default_formats, allowed)
        written = func(cfg)
    except PlcsNetError as exc:
        print(f"plcsnet {args.command}: error: {exc}", file=sys.stderr)
        return exc.exit_code
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
