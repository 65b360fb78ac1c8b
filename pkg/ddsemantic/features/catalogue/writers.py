"""
CSV and JSON emitters
Column names are part of the output contract and must not change
"""

from pathlib import Path
from typing import Dict, List

import pandas as pd
import structlog

from ddsemantic.features.catalogue.schemas import SemanticCatalogue
from ddsemantic.features.interventions.schemas import SweepCurve, TemporalSample
from ddsemantic.features.reactive_channel.schemas import ImpulseResponse

logger = structlog.get_logger(__name__)

SWEEP_COLUMNS = ["param", "value", "p_i", "mu_p", "c_int", "viability", "capacity_bps"]
IMPULSE_COLUMNS = ["t", "p_i", "stderr"]
TEMPORAL_COLUMNS = ["param", "tau", "s_epsilon"]
CAPACITY_COLUMNS = ["mu_p", "p1_star", "mutual_info_bits", "capacity_bps"]

CATALOGUE_FILE = "catalogue.json"
TEMPORAL_FILE = "temporal_profile.csv"
IMPULSE_FILE = "impulse.csv"


def sweep_filename(parameter: str, suffix: str = "csv") -> str:
    return f"sweep_{parameter}.{suffix}"


def _write_frame(frame: pd.DataFrame, path: Path) -> Path:
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.debug("file_written", path=str(path), rows=len(frame))
    return path


def sweep_frame(curve: SweepCurve) -> pd.DataFrame:
    return pd.DataFrame(
        [
            (
                curve.spec.parameter,
                p.param_value,
                p.p_i_at_tau,
                p.mu_p,
                p.c_int,
                p.viability,
                p.capacity_bps,
            )
            for p in curve.points
        ],
        columns=SWEEP_COLUMNS,
    )


def write_sweep_csv(curve: SweepCurve, path: Path) -> Path:
    return _write_frame(sweep_frame(curve), path)


def write_impulse_csv(impulse: ImpulseResponse, path: Path) -> Path:
    frame = pd.DataFrame(
        {"t": impulse.times, "p_i": impulse.p_i, "stderr": impulse.stderr},
        columns=IMPULSE_COLUMNS,
    )
    return _write_frame(frame, path)


def write_temporal_csv(profile: Dict[str, List[TemporalSample]], path: Path) -> Path:
    rows = [
        (parameter, sample.tau, sample.s_epsilon)
        for parameter, samples in profile.items()
        for sample in samples
    ]
    return _write_frame(pd.DataFrame(rows, columns=TEMPORAL_COLUMNS), path)


def write_capacity_csv(rows: List[tuple], path: Path) -> Path:
    return _write_frame(pd.DataFrame(rows, columns=CAPACITY_COLUMNS), path)


def write_catalogue_json(catalogue: SemanticCatalogue, path: Path) -> Path:
    path.write_text(catalogue.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.debug("file_written", path=str(path))
    return path
