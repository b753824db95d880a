"""Matplotlib figures for the CLI report path.

Figures are written with a fixed SVG hash salt and no date metadata so that
repeated runs produce identical files.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 11,
    "axes.labelsize": 12,
    "legend.fontsize": 9,
    "lines.linewidth": 1.6,
    "svg.hashsalt": "polariton",
    "svg.fonttype": "path",
}


def _series_style(wd, wds):
    if wd == 0:
        return dict(color="0.55", linestyle="--")
    if wd > 2.0:
        return dict(color="tab:red", linestyle="-")
    driven = [w for w in wds if 0 < w <= 2.0]
    return dict(color="black", linestyle="-" if driven.index(wd) % 2 == 0 else "--")


def save(fig, path):
    ext = os.path.splitext(path)[1].lower().lstrip(".") or "svg"
    metadata = {"Date": None} if ext == "svg" else None
    fig.savefig(path, format=ext, metadata=metadata)
    plt.close(fig)


def plot_dispersion(series, path):
    """``series``: list of ``(omega_d_hat, k, omega, growth)`` arrays."""
    wds = [s[0] for s in series]
    with plt.rc_context(STYLE):
        fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(5.5, 6.5))
        for wd, k, omega, growth in series:
            st = _series_style(wd, wds)
            label = rf"$\omega_d={wd:g}\,\omega_p$"
            top.plot(k, omega, label=label, **st)
            bottom.plot(k, growth, **st)
        top.set_ylabel(r"$\omega/\omega_p$")
        top.set_ylim(bottom=0)
        top.legend(frameon=False)
        bottom.axhline(0, color="0.8", linewidth=0.8)
        bottom.set_ylabel(r"$\gamma/\omega_p$")
        bottom.set_xlabel(r"$k\lambda_D$")
        fig.tight_layout()
        save(fig, path)


def plot_structure(series, path):
    """``series``: list of ``(omega_d_hat, k, S)``."""
    wds = [s[0] for s in series]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.5, 4))
        for wd, k, S in series:
            ax.plot(k, np.where(np.isfinite(S), S, np.nan),
                    label=rf"$\omega_d={wd:g}\,\omega_p$", **_series_style(wd, wds))
        ax.set_xlabel(r"$k\lambda_D$")
        ax.set_ylabel(r"$S(k)$")
        ax.legend(frameon=False)
        fig.tight_layout()
        save(fig, path)


def plot_correlation(series, path):
    """``series``: list of ``(omega_d_hat, r, g)``."""
    wds = [s[0] for s in series]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.5, 4))
        for wd, r, g in series:
            ax.plot(r, g, label=rf"$\omega_d={wd:g}\,\omega_p$", **_series_style(wd, wds))
        ax.axhline(1, color="0.8", linewidth=0.8)
        ax.set_xlabel(r"$r/\lambda_D$")
        ax.set_ylabel(r"$g(r)$")
        ax.legend(frameon=False)
        fig.tight_layout()
        save(fig, path)


KIND_CODES = {"NoRoton": 0, "Roton": 1, "RotonZero": 2, "Unstable": 3}


def plot_phase(table, path):
    codes = np.array([[KIND_CODES[str(k)] for k in row] for row in table.kinds])
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.5, 4))
        cmap = matplotlib.colors.ListedColormap(["#d9d9d9", "#7fb3d5", "#f7dc6f", "#e74c3c"])
        D, W = table.D_values, table.omega_d_values
        ax.pcolormesh(D, W, codes, cmap=cmap, vmin=-0.5, vmax=3.5, shading="nearest")
        ax.axhline(2.0, color="black", linewidth=0.8, linestyle=":")
        handles = [matplotlib.patches.Patch(color=cmap(i), label=name)
                   for name, i in KIND_CODES.items()]
        ax.legend(handles=handles, frameon=False, loc="upper right")
        ax.set_xlabel(r"$\mathcal{D}_0/(\lambda_D^2\omega_p)$")
        ax.set_ylabel(r"$\omega_d/\omega_p$")
        fig.tight_layout()
        save(fig, path)
