"""Render multi-panel correlation curves from sweep CSV files.

The renderer is a pure consumer of the CSV contract written by ``adqc sweep``:
one sub-panel per Hilbert-space dimension m, with the requested value columns
drawn against the family parameter. No quantity is ever computed here; every
number on the canvas comes from a CSV cell.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

#: Column order of the sweep CSV contract.
SWEEP_COLUMNS = (
    "family",
    "m",
    "param",
    "q_numeric",
    "q_printed",
    "q_corrected",
    "discord",
    "eof",
    "constancy_stddev",
)

#: Value columns that may be selected as plot series.
VALUE_COLUMNS = ("q_numeric", "q_printed", "q_corrected", "discord", "eof")

DEFAULT_SERIES = ("discord", "eof", "q_printed", "q_corrected", "q_numeric")

#: Legend label (with provenance tag) and line style per series. Printed vs
#: corrected use distinct styles so both curves can share one panel legibly.
SERIES_STYLES = {
    "q_numeric": {"label": "Q (numeric)", "linestyle": "none", "marker": "o",
                  "markersize": 3.5, "color": "black"},
    "q_printed": {"label": "Q (printed)", "linestyle": "--", "marker": "",
                  "color": "tab:red"},
    "q_corrected": {"label": "Q (corrected)", "linestyle": "-", "marker": "",
                    "color": "tab:blue"},
    "discord": {"label": "D (external reference)", "linestyle": ":", "marker": "",
                "color": "tab:green"},
    "eof": {"label": "E (external reference)", "linestyle": "-.", "marker": "",
            "color": "tab:purple"},
}

PARAM_LABEL = {"werner": "x", "isotropic": "y"}


class MissingColumnError(KeyError):
    """A requested column is absent from a CSV header."""

    def __init__(self, column: str, path: str):
        self.column = column
        self.path = path
        super().__init__(f"column {column!r} missing from {path}")

    def __str__(self) -> str:  # KeyError would repr the message
        return f"column {self.column!r} missing from {self.path}"


class EmptyCSVError(ValueError):
    """A CSV file contains a header but no data rows (or nothing at all)."""

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"no data rows in {path}")


@dataclass(frozen=True)
class PanelSpec:
    """One figure: a row of sub-panels, one per CSV (one per m)."""

    family: str
    csv_paths: tuple[str, ...]
    out_path: str
    series: tuple[str, ...] = DEFAULT_SERIES

    def __post_init__(self):
        for name in self.series:
            if name not in VALUE_COLUMNS:
                raise MissingColumnError(name, "<series selection>")
        if not self.csv_paths:
            raise ValueError("at least one CSV path is required")


def read_sweep_csv(path: str) -> list[dict]:
    """Parse a sweep CSV into row dicts with numeric columns as floats."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise EmptyCSVError(path)
        for col in SWEEP_COLUMNS:
            if col not in reader.fieldnames:
                raise MissingColumnError(col, path)
        rows = []
        for raw in reader:
            row = {"family": raw["family"], "m": int(raw["m"])}
            for col in SWEEP_COLUMNS[2:]:
                row[col] = float(raw[col])
            rows.append(row)
    if not rows:
        raise EmptyCSVError(path)
    return sorted(rows, key=lambda r: r["param"])


def build_plot_spec(spec: PanelSpec) -> dict:
    """Deterministic, serializable description of the figure.

    Rendering draws exactly this structure; re-running on identical CSV input
    yields an identical dict even if backend image bytes differ.
    """
    panels = []
    for path in spec.csv_paths:
        rows = read_sweep_csv(path)
        m = rows[0]["m"]
        panels.append(
            {
                "m": m,
                "title": f"m = {m}",
                "x": [r["param"] for r in rows],
                "series": {name: [r[name] for r in rows] for name in spec.series},
            }
        )
    return {
        "family": spec.family,
        "x_label": PARAM_LABEL.get(spec.family, "parameter"),
        "y_label": "correlation value",
        "series_order": list(spec.series),
        "styles": {name: SERIES_STYLES[name]["label"] for name in spec.series},
        "panels": panels,
    }


def render(spec: PanelSpec) -> dict:
    """Draw the figure described by ``spec`` and write it to ``spec.out_path``.

    Returns the plot-spec dict actually drawn.
    """
    plot = build_plot_spec(spec)
    n = len(plot["panels"])
    fig, axes = plt.subplots(1, n, figsize=(3.4 * n, 3.2), squeeze=False, sharey=True)
    for ax, panel in zip(axes[0], plot["panels"]):
        for name in plot["series_order"]:
            ax.plot(panel["x"], panel["series"][name], **SERIES_STYLES[name])
        ax.set_title(panel["title"])
        ax.set_xlabel(plot["x_label"])
    axes[0][0].set_ylabel(plot["y_label"])
    axes[0][-1].legend(fontsize=7, loc="best")
    fig.suptitle(f"{plot['family']} family")
    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=150)
    plt.close(fig)
    return plot


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="adqc-figures",
        description="Render correlation curves from adqc sweep CSV files.",
    )
    parser.add_argument("--family", required=True, choices=["werner", "isotropic"])
    parser.add_argument("--csv", action="append", required=True,
                        help="sweep CSV path (repeat for one sub-panel per file)")
    parser.add_argument("--series", nargs="+", default=list(DEFAULT_SERIES),
                        choices=list(VALUE_COLUMNS),
                        help="value columns to draw")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        spec = PanelSpec(
            family=args.family,
            csv_paths=tuple(args.csv),
            out_path=args.out,
            series=tuple(args.series),
        )
        plot = render(spec)
    except (MissingColumnError, EmptyCSVError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(plot['panels'])}-panel {args.family} figure to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
