"""SVG line plots of the CSV outputs (presentation only; needs matplotlib)."""
from __future__ import annotations


def line_plot(path, curves, xlabel, ylabel, logx=False, title=None):
    """Write one standalone SVG with a line per ``(label, x, y)`` curve.

    A curve label starting with ``"o "`` is drawn as markers only.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "photonstat", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6.0, 4.5))
        for label, x, y in curves:
            if label.startswith("o "):
                ax.plot(x, y, "o", ms=4, label=label[2:])
            else:
                ax.plot(x, y, "-", lw=1.2, label=label)
        if logx:
            ax.set_xscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        if len(curves) > 1:
            ax.legend(fontsize=7, ncol=2)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
