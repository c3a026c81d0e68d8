from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from schemas.neutral import NeutralCurve  # noqa: E402
from schemas.params import SweptParameter  # noqa: E402

AXIS_LABELS = {
    SweptParameter.RAYLEIGH_BIO: "$R_b$",
    SweptParameter.RAYLEIGH_THERMAL: "$R_T$",
}

# fixed ids and no timestamp: reruns produce identical files
plt.rcParams["svg.hashsalt"] = "biostab"


def plot_curves(path: Path, curves: dict[float, NeutralCurve]) -> Path:
    """Overlay of neutral curves, one per incidence angle."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    swept = SweptParameter.RAYLEIGH_BIO
    for theta, curve in sorted(curves.items()):
        points = sorted(curve.valid_points, key=lambda point: point.k)
        swept = curve.swept
        ax.plot(
            [point.k for point in points],
            [point.rayleigh for point in points],
            label=rf"$\theta_i = {theta:g}^\circ$",
        )

    ax.set_xlabel("$k$")
    ax.set_ylabel(AXIS_LABELS[swept])
    ax.grid(True)
    if curves:
        ax.legend()

    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
