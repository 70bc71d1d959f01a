"""Matplotlib figure rendering for the CLI report paths.

Kept out of the computational modules: importing hpmaps never pulls in
matplotlib; only the CLI's --plot flag reaches this module.
"""

from __future__ import annotations


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_series(curves: list[tuple[str, list, list]], title: str,
                out_path: str, step: bool = False) -> str:
    """Render labelled (xs, ys) curves to a PNG; returns the path."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8, 5))
    for label, xs, ys in curves:
        if step:
            ax.step(xs, ys, where="post", label=label, linewidth=1)
        else:
            ax.plot(xs, ys, label=label, linewidth=1)
    ax.set_title(title)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return out_path


def plot_bars(labels: list, heights: list, title: str, out_path: str) -> str:
    """Render a bar chart to a PNG; returns the path."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.bar([str(x) for x in labels], heights)
    ax.set_title(title)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return out_path
