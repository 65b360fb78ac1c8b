"""
Figures regenerated from the sweep and temporal tables
"""

from pathlib import Path
from typing import Dict, List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from ddsemantic.features.interventions.schemas import (  # noqa: E402
    SemanticResult,
    SweepCurve,
    TemporalSample,
)

# Stable element ids so identical data gives identical SVG bytes
plt.rcParams["svg.hashsalt"] = "dds-semantic"

PARAMETER_LABELS = {
    "lambda": r"$\lambda$",
    "k_d": r"$k_\mathrm{d}$",
    "k_f": r"$k_\mathrm{f}$",
    "k_b": r"$k_\mathrm{b}$",
    "k_i": r"$k_\mathrm{i}$",
}
PARAMETER_COLOURS = {
    "lambda": "tab:red",
    "k_d": "lightskyblue",
    "k_f": "tab:green",
    "k_b": "tab:orange",
    "k_i": "tab:blue",
}


def _save(fig, path: Path) -> Path:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def plot_sweep(curve: SweepCurve, result: SemanticResult, path: Path) -> Path:
    """Capacity against viability with S_eps marked and the meaningless band shaded"""
    capacities = curve.column("capacity_bps")
    viabilities = curve.column("viability")
    label = PARAMETER_LABELS[curve.spec.parameter]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(capacities, viabilities, marker=".", color=PARAMETER_COLOURS[curve.spec.parameter], label=label)

    if result.meaningless_range is not None:
        low, high = result.meaningless_range
        values = curve.column("param_value")
        band = (values >= low) & (values <= high)
        ax.axvspan(result.s_epsilon, capacities[band].max(), color="pink", alpha=0.5, label="meaningless")
    ax.axvline(
        result.s_epsilon,
        color="tab:orange",
        linestyle="--",
        label=rf"$S_\epsilon$ = {result.s_epsilon:.3f} bit/s",
    )

    ax.set_xlabel("Channel capacity [bit/s]")
    ax.set_ylabel("Viability")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(f"{label} in [{curve.spec.range_min:.4g}, {curve.spec.range_max:.4g}], tau = {curve.tau * 1e3:.4g} ms")
    ax.legend(loc="best")
    fig.tight_layout()
    return _save(fig, path)


def plot_temporal(profile: Dict[str, List[TemporalSample]], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for parameter, samples in profile.items():
        ax.plot(
            [s.tau * 1e3 for s in samples],
            [s.s_epsilon for s in samples],
            marker=".",
            color=PARAMETER_COLOURS[parameter],
            label=PARAMETER_LABELS[parameter],
        )
    ax.set_xlabel(r"$\tau$ [ms]")
    ax.set_ylabel(r"$S_\epsilon(\tau)$ [bit/s]")
    ax.legend(loc="best")
    fig.tight_layout()
    return _save(fig, path)
