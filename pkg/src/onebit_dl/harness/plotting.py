"""Matplotlib rendering of the convergence and NMSE figures."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
    "lines.markersize": 5,
    "savefig.dpi": 150,
    "svg.hashsalt": "onebit-dl",
}

LABELS = {"l2": "DL-BIHT-L2", "l1": "DL-BIHT-L1", "baseline": "without DL"}
MARKERS = {"l2": "o", "l1": "s", "baseline": "^"}


def _figure():
    return plt.subplots(figsize=(4.8, 3.4), constrained_layout=True)


def _save(fig, path):
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def plot_convergence(rows, path):
    with plt.rc_context(STYLE):
        fig, ax = _figure()
        keys = sorted({(r["mu"], r["variant"]) for r in rows}, key=lambda k: (k[1], k[0]))
        for mu, variant in keys:
            trace = [r for r in rows if r["mu"] == mu and r["variant"] == variant]
            ax.plot(
                [r["iteration"] for r in trace],
                [r["cost"] for r in trace],
                linestyle="-" if variant == "l2" else "--",
                label=f"{LABELS[variant]}, $\\mu$={mu:g}",
            )
        ax.set_yscale("log")
        ax.set_xlabel("iteration")
        ax.set_ylabel("cost J(D)")
        ax.legend()
        _save(fig, path)


def plot_nmse(rows, parameter, path, xlabel=None):
    with plt.rc_context(STYLE):
        fig, ax = _figure()
        for variant in dict.fromkeys(r["variant"] for r in rows):
            sel = [r for r in rows if r["variant"] == variant]
            ax.plot(
                [r[parameter] for r in sel],
                [r["nmse_db"] for r in sel],
                marker=MARKERS.get(variant, "o"),
                label=LABELS.get(variant, variant),
            )
        ax.set_xlabel(xlabel or parameter)
        ax.set_ylabel("NMSE (dB)")
        ax.legend()
        _save(fig, path)
