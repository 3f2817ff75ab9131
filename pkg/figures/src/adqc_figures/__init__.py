"""Figure rendering for averaged-distance correlation sweep CSVs."""
from .render import (
    EmptyCSVError,
    MissingColumnError,
    PanelSpec,
    SERIES_STYLES,
    SWEEP_COLUMNS,
    build_plot_spec,
    read_sweep_csv,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "EmptyCSVError",
    "MissingColumnError",
    "PanelSpec",
    "SERIES_STYLES",
    "SWEEP_COLUMNS",
    "build_plot_spec",
    "read_sweep_csv",
    "render",
]
