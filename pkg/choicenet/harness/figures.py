"""Static SVG figures of single trials (d <= 2)."""

import logging
from pathlib import Path
from threading import Lock
from typing import Optional, Union

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from ..fields.label_field import FiniteSet, LabelField, values
from ..networks.relu_net import evaluate_batch
from ..predictor.predictor import PredictionOutcome

logger = logging.getLogger(__name__)

# Fixed salt and no date keep the SVG bytes reproducible.
_SVG_RC = {"svg.hashsalt": "choicenet", "svg.fonttype": "none"}
_SAVE_LOCK = Lock()


def _save(fig: Figure, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with _SAVE_LOCK, matplotlib.rc_context(_SVG_RC):
        fig.savefig(path, format="svg", metadata={"Date": None})
    return path


def overlay_1d(path: Path, truth: LabelField, X: FiniteSet, outcome: PredictionOutcome, title: str) -> Path:
    """Base function, network, spikes and the hidden points on [0,1]."""
    xs = np.linspace(0.0, 1.0, 2001)[:, None]
    fig = Figure(figsize=(8, 4.5))
    ax = fig.add_subplot(1, 1, 1)

    ax.plot(xs[:, 0], values(truth, xs), color="tab:gray", lw=1.5, label="base f")
    for index, spike in enumerate(outcome.spikes):
        ax.plot(
            xs[:, 0],
            evaluate_batch(spike, xs),
            color="tab:orange",
            lw=0.8,
            alpha=0.7,
            label="spikes" if index == 0 else None,
        )
    ax.plot(xs[:, 0], evaluate_batch(outcome.network, xs), color="tab:blue", lw=1.0, label="network")

    if len(X):
        points = X.as_array()[:, 0]
        ax.scatter(points, np.zeros_like(points), marker="x", color="tab:red", label="masked labels", zorder=3)
        hidden = [p.hidden_truth for p in outcome.per_point]
        if all(h is not None for h in hidden):
            ax.scatter(points, hidden, facecolors="none", edgecolors="black", label="hidden labels", zorder=3)

    ax.set_xlim(0.0, 1.0)
    ax.set_xlabel("x")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize="small")
    return _save(fig, path)


def error_heatmap_2d(path: Path, truth: LabelField, X: FiniteSet, outcome: PredictionOutcome, title: str) -> Path:
    """|network - base| on [0,1]^2 with the hidden points marked."""
    axis = np.linspace(0.0, 1.0, 201)
    grid = np.stack(np.meshgrid(axis, axis, indexing="xy"), axis=-1).reshape(-1, 2)
    error = np.abs(evaluate_batch(outcome.network, grid) - values(truth, grid)).reshape(axis.size, axis.size)

    fig = Figure(figsize=(6, 5))
    ax = fig.add_subplot(1, 1, 1)
    image = ax.imshow(error, origin="lower", extent=(0.0, 1.0, 0.0, 1.0), cmap="viridis", aspect="equal")
    fig.colorbar(image, ax=ax, label="|network - f|")
    if len(X):
        points = X.as_array()
        ax.scatter(points[:, 0], points[:, 1], marker="x", color="tab:red", s=20, label="X")
        ax.legend(loc="upper right", fontsize="small")
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.set_title(title)
    return _save(fig, path)


def write_trial_figure(
    output_dir: Union[str, Path],
    trial: int,
    truth: LabelField,
    X: FiniteSet,
    outcome: PredictionOutcome,
) -> Optional[Path]:
    """Write figures/trial-XXXX.svg for d <= 2; returns None for higher d."""
    path = Path(output_dir) / "figures" / f"trial-{trial:04d}.svg"
    title = f"trial {trial}: |X|={len(X)}, n_star={outcome.n_star}"
    if truth.dim == 1:
        written = overlay_1d(path, truth, X, outcome, title)
    elif truth.dim == 2:
        written = error_heatmap_2d(path, truth, X, outcome, title)
    else:
        return None
    logger.info(f"Wrote figure {written}")
    return written
