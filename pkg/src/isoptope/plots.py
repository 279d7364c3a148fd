"""Figure rendering for ascent traces.

Figures are written next to the delimited trace output when a plot
directory is requested; nothing here touches stdout.
"""

import os

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def render_trace_figures(rows, out_dir):
    """Write L-curve and residual-curve PNGs for an ascent trace.

    Returns the list of file paths written.
    """
    os.makedirs(out_dir, exist_ok=True)
    iters = [r.iteration for r in rows]
    paths = []

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(iters, [r.L for r in rows], marker="o", ms=3, lw=1.2)
    ax.set_xlabel("iteration")
    ax.set_ylabel("isotropic constant L")
    ax.set_title("ascent of the isotropic constant")
    ax.grid(alpha=0.3)
    path = os.path.join(out_dir, "ascent_L.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(iters, [max(r.max_foc, 1e-17) for r in rows], label="max |FOC residual|")
    ax.semilogy(
        iters,
        [max(r.max_refl_defect, 1e-17) for r in rows],
        label="max reflection defect",
    )
    ax.set_xlabel("iteration")
    ax.set_ylabel("residual")
    ax.set_title("extremality residuals along the ascent")
    ax.legend()
    ax.grid(alpha=0.3, which="both")
    path = os.path.join(out_dir, "ascent_residuals.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    paths.append(path)
    return paths


def render_body_figure(body, out_dir, name="body.png"):
    """2-D bodies only: draw the polygon with its vertices."""
    if body.dim != 2:
        return None
    os.makedirs(out_dir, exist_ok=True)
    v = body.vertices
    center = v.mean(axis=0)
    order = np.argsort(np.arctan2(v[:, 1] - center[1], v[:, 0] - center[0]))
    loop = np.vstack([v[order], v[order[:1]]])
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.plot(loop[:, 0], loop[:, 1], "-o", ms=4)
    ax.set_aspect("equal")
    ax.grid(alpha=0.3)
    path = os.path.join(out_dir, name)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
