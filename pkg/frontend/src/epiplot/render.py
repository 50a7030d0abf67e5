"""Figure rendering from trajectory CSV files.

Panels are filled left to right, top to bottom. In overlay mode inputs
are consumed in pairs: the first file of each pair is drawn with solid
lines (ground truth), the second dashed (surrogate prediction), with
matching colors per compartment so deviations are visible directly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reader import read_trajectory

COMPARTMENTS = ("s", "i", "r", "d")
COLORS = ("C0", "C1", "C2", "C3")


@dataclass(frozen=True)
class PlotSpec:
    """Everything one render needs.

    Attributes:
        inputs: CSV paths, one per panel (two per panel with overlay).
        rows, cols: Panel grid.
        overlay: Draw inputs pairwise as solid truth + dashed prediction.
        zoom: Optional (lo, hi) time window applied to every panel.
        out: Output image path; the format follows its extension.
        decimate: Keep every n-th sample (1 keeps everything).
    """

    inputs: tuple
    rows: int
    cols: int
    overlay: bool = False
    zoom: tuple | None = None
    out: str = "figure.png"
    decimate: int = 1

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"layout must be positive, got {self.rows}x{self.cols}")
        if not self.inputs:
            raise ValueError("no input files given")
        if self.decimate < 1:
            raise ValueError(f"decimate must be >= 1, got {self.decimate}")
        if self.overlay and len(self.inputs) % 2 != 0:
            raise ValueError("overlay mode needs an even number of inputs")
        per_panel = 2 if self.overlay else 1
        panels = len(self.inputs) // per_panel
        if panels > self.rows * self.cols:
            raise ValueError(
                f"{panels} panels do not fit a {self.rows}x{self.cols} layout"
            )
        if self.zoom is not None:
            lo, hi = self.zoom
            if not lo < hi:
                raise ValueError(f"zoom window must satisfy lo < hi, got {lo}:{hi}")


def _panel_title(paths) -> str:
    stems = [os.path.splitext(os.path.basename(p))[0] for p in paths]
    if len(stems) == 1:
        return stems[0]
    return f"{stems[0]} vs {stems[1]}"


def _windowed(data: np.ndarray, zoom, path: str) -> np.ndarray:
    if zoom is None:
        return data
    lo, hi = zoom
    t = data[:, 0]
    if lo < t[0] or hi > t[-1]:
        raise ValueError(
            f"{path}: zoom [{lo:g}, {hi:g}] outside data range [{t[0]:g}, {t[-1]:g}]"
        )
    return data[(t >= lo) & (t <= hi)]


def render(spec: PlotSpec) -> str:
    """Draw the figure described by the spec and write it to spec.out.

    Returns:
        The output path.

    Raises:
        SchemaError: If an input is missing or malformed.
        ValueError: If the layout, zoom window, or pairing is invalid.
    """
    per_panel = 2 if spec.overlay else 1
    groups = [
        spec.inputs[k : k + per_panel] for k in range(0, len(spec.inputs), per_panel)
    ]
    loaded = []
    for group in groups:
        datasets = []
        for path in group:
            data = read_trajectory(path)
            data = _windowed(data, spec.zoom, path)[:: spec.decimate]
            datasets.append(data)
        loaded.append(datasets)

    fig, axes = plt.subplots(
        spec.rows,
        spec.cols,
        figsize=(4.5 * spec.cols, 3.2 * spec.rows),
        squeeze=False,
        constrained_layout=True,
    )
    flat = axes.ravel()
    for ax in flat[len(loaded) :]:
        ax.set_axis_off()
    for ax, group, datasets in zip(flat, groups, loaded):
        for which, data in enumerate(datasets):
            style = "-" if which == 0 else "--"
            for j, (label, color) in enumerate(zip(COMPARTMENTS, COLORS)):
                ax.plot(
                    data[:, 0],
                    data[:, 1 + j],
                    style,
                    color=color,
                    linewidth=1.2,
                    label=label if which == 0 else None,
                )
        ax.set_title(_panel_title(group), fontsize=10)
        ax.set_xlabel("t")
        ax.legend(loc="best", fontsize=8)
    fig.savefig(spec.out)
    plt.close(fig)
    return spec.out
