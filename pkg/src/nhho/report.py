"""Delimited output and figure rendering for the command-line driver.

Numbers are printed through a single %.17g gate so repeated runs with the
same inputs produce byte-identical CSV and JSON.  JSON carries its numeric
values as %.17g strings for the same reason: round-tripping floats through
a JSON library's own repr is not pinned down across versions.

Figures go through the Agg backend and strip the writer's Software tag so
the PNG bytes do not depend on the matplotlib version string.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
import numpy as np  # noqa: E402


def format_number(value) -> str:
    """One number, one canonical string."""
    return "%.17g" % float(value)


def render_csv(header: list[str], rows) -> str:
    """Comma-joined text with a trailing newline; cells go through %.17g."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return format_number(value)


def _jsonify(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_number(value)
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonify(v) for v in value]
    if value is None:
        return None
    raise TypeError("cannot serialize %r" % type(value))


def render_json(payload: dict) -> str:
    """Stable JSON text: insertion key order, floats as %.17g strings."""
    return json.dumps(_jsonify(payload), indent=2) + "\n"


def write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    metadata = {"Software": None} if path.suffix.lower() == ".png" else None
    fig.savefig(path, dpi=150, metadata=metadata)
    plt.close(fig)
    return path


def save_curves_figure(
    path: str | Path,
    xs: np.ndarray,
    curves: list[tuple[str, np.ndarray]],
    xlabel: str,
    ylabel: str,
    title: str,
) -> Path:
    """Overlaid line plots sharing one abscissa."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for label, ys in curves:
        ax.plot(xs, ys, label=label, linewidth=1.2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    if len(curves) > 1:
        ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def save_spectrum_figure(
    path: str | Path, levels: np.ndarray, energies: np.ndarray, title: str
) -> Path:
    """Level diagram: horizontal bars at each energy."""
    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    for n, e in zip(levels, energies):
        ax.hlines(e, n - 0.35, n + 0.35, linewidth=1.6)
    ax.set_xlabel("level")
    ax.set_ylabel("energy")
    ax.set_title(title)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    return _save(fig, path)


def save_heatmap_figure(
    path: str | Path,
    lam_values: np.ndarray,
    beta_values: np.ndarray,
    grid: np.ndarray,
    label: str,
    title: str,
) -> Path:
    """Colormap of a quantity over the (lam, beta) rectangle.

    ``grid[i, j]`` corresponds to (lam_values[i], beta_values[j]); the plot
    puts lam on the horizontal axis.
    """
    fig, ax = plt.subplots(figsize=(5.6, 4.4))
    mesh = ax.pcolormesh(lam_values, beta_values, grid.T, shading="nearest")
    fig.colorbar(mesh, ax=ax, label=label)
    ax.set_xlabel("lambda")
    ax.set_ylabel("beta")
    ax.set_title(title)
    fig.tight_layout()
    return _save(fig, path)
