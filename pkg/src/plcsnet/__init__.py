"""Power-law classification of time-series correlations and networks on the
percolation threshold."""

from .errors import (
    BoundsError,
    ContiguityError,
    ContractError,
    DegenerateGraphError,
    DegenerateSeriesError,
    ParseError,
    PlcsNetError,
    SchemaError,
    ZeroVarianceError,
)
from .ingest import AnalysisWindow, SeriesPanel, load_panel, load_sample_panel, save_panel, window_panel
from .matrix import Degenerate, PairMatrix, PairResult
from .netgraph import (
    Edge,
    Preference,
    ThresholdNetwork,
    WeightedGraph,
    build_graph,
    cliques,
    degrees,
    hubs,
    mst,
    npt,
    sort_edges,
)
from .plcs import FitResult, PlcsConfig, cumulative_md, fit_power_law, loglog_points, plcs_matrix, plcs_pair
from .synth import SynthKind, SynthSpec, generate_pair, robustness_experiment
from .ud import UdVariant, pearson, ud, ud_matrix

__version__ = "0.1.0"

__all__ = [
    "BoundsError",
    "ContiguityError",
    "ContractError",
    "DegenerateGraphError",
    "DegenerateSeriesError",
    "ParseError",
    "PlcsNetError",
    "SchemaError",
    "ZeroVarianceError",
    "AnalysisWindow",
    "SeriesPanel",
    "load_panel",
    "load_sample_panel",
    "save_panel",
    "window_panel",
    "Degenerate",
    "PairMatrix",
    "PairResult",
    "Edge",
    "Preference",
    "ThresholdNetwork",
    "WeightedGraph",
    "build_graph",
    "cliques",
    "degrees",
    "hubs",
    "mst",
    "npt",
    "sort_edges",
    "FitResult",
    "PlcsConfig",
    "cumulative_md",
    "fit_power_law",
    "loglog_points",
    "plcs_matrix",
    "plcs_pair",
    "SynthKind",
    "SynthSpec",
    "generate_pair",
    "robustness_experiment",
    "UdVariant",
    "pearson",
    "ud",
    "ud_matrix",
]
