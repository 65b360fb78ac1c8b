"""
Catalogue Service
Runs every sweep and the temporal profile, then persists the catalogue
"""

import shutil
import tempfile
import time
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Dict, List, Tuple

import structlog

from ddsemantic import __version__
from ddsemantic.core.exceptions import OutputError
from ddsemantic.features.catalogue.plots import plot_sweep, plot_temporal
from ddsemantic.features.catalogue.schemas import (
    CatalogueEntry,
    OutputFormat,
    RunConfig,
    RunMetadata,
    SemanticCatalogue,
)
from ddsemantic.features.catalogue.writers import (
    CATALOGUE_FILE,
    TEMPORAL_FILE,
    sweep_filename,
    write_catalogue_json,
    write_sweep_csv,
    write_temporal_csv,
)
from ddsemantic.features.interventions.schemas import TemporalSample
from ddsemantic.features.interventions.semantic import (
    REFERENCE_RESULTS,
    extract_pooled_semantic_information,
    extract_semantic_information,
    reference_deviation,
)
from ddsemantic.features.interventions.service import (
    baseline_viability_at,
    curve_from_impulses,
    simulate_baseline,
    simulate_family,
    temporal_profile,
)

logger = structlog.get_logger(__name__)


def _versions() -> Dict[str, str]:
    found = {"dds-semantic": __version__}
    for package in ("numpy", "scipy", "pandas", "pydantic"):
        try:
            found[package] = version(package)
        except PackageNotFoundError:
            found[package] = "unknown"
    return found


def build_catalogue(config: RunConfig, workers: int = 1) -> SemanticCatalogue:
    """Compute every family, the temporal profile and the pooled result"""
    params, settings = config.system, config.simulation
    tau_grid = config.temporal.tau_grid
    horizon = max([params.tau, *tau_grid])

    baseline = simulate_baseline(params, settings, horizon, workers)
    v_base = baseline_viability_at(params, baseline, params.tau)
    diagnostics: List[str] = list(baseline.diagnostics)

    entries: List[CatalogueEntry] = []
    families = {}
    for spec in config.interventions:
        impulses = simulate_family(spec, params, settings, horizon, workers)
        families[spec.parameter] = impulses
        for impulse in impulses:
            diagnostics.extend(d for d in impulse.diagnostics if d not in diagnostics)

        curve = curve_from_impulses(spec, params, impulses, params.tau, v_base)
        result = extract_semantic_information(
            curve, params.epsilon, interpolate=config.output.interpolate_critical
        )
        reference = reference_deviation(result) if spec.parameter in REFERENCE_RESULTS else None
        if reference is not None and not reference.within_band:
            logger.warning(
                "reference_deviation",
                parameter=spec.parameter,
                s_epsilon=result.s_epsilon,
                s_epsilon_rel_error=round(reference.s_epsilon_rel_error, 4),
                critical_value_rel_error=round(reference.critical_value_rel_error, 4),
            )
        logger.info(
            "family_finished",
            parameter=spec.parameter,
            s_epsilon=result.s_epsilon,
            critical_value=result.critical_value,
        )
        entries.append(CatalogueEntry(spec=spec, curve=curve, result=result, reference=reference))

    temporal: Dict[str, List[TemporalSample]] = {}
    if tau_grid and config.interventions:
        temporal = temporal_profile(
            config.interventions, params, settings, tau_grid, workers, families=families
        )

    pooled = None
    if entries:
        pooled = extract_pooled_semantic_information([e.curve for e in entries], params.epsilon)

    metadata = RunMetadata(
        seed=settings.seed,
        versions=_versions(),
        config=config.model_dump(mode="json", by_alias=True),
        baseline_viability=v_base,
        baseline_p_i=baseline.probability_at(params.tau),
        diagnostics=diagnostics,
    )
    return SemanticCatalogue(entries=entries, temporal=temporal, pooled=pooled, metadata=metadata)


def write_catalogue(catalogue: SemanticCatalogue, config: RunConfig, directory: Path) -> List[Path]:
    """Write the requested formats into `directory`; returns the file names written"""
    formats = set(config.output.formats)
    written: List[Path] = []
    for entry in catalogue.entries:
        parameter = entry.spec.parameter
        if OutputFormat.CSV in formats:
            written.append(write_sweep_csv(entry.curve, directory / sweep_filename(parameter)))
        if OutputFormat.SVG in formats:
            written.append(plot_sweep(entry.curve, entry.result, directory / sweep_filename(parameter, "svg")))
    if catalogue.temporal:
        if OutputFormat.CSV in formats:
            written.append(write_temporal_csv(catalogue.temporal, directory / TEMPORAL_FILE))
        if OutputFormat.SVG in formats:
            written.append(plot_temporal(catalogue.temporal, directory / "temporal_profile.svg"))
    if OutputFormat.JSON in formats:
        written.append(write_catalogue_json(catalogue, directory / CATALOGUE_FILE))
    return written


def publish(directory: Path, writer) -> List[Path]:
    """
    Run `writer(staging_dir)` and move its files into `directory`.

    Nothing lands in `directory` unless the writer finishes and every file
    moves; files moved before a failing move are removed again.
    """
    try:
        directory.mkdir(parents=True, exist_ok=True)
        staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=directory))
    except OSError as exc:
        raise OutputError(f"output directory {directory} is not writable: {exc}") from exc

    final: List[Path] = []
    try:
        for path in writer(staging):
            target = directory / path.name
            path.replace(target)
            final.append(target)
        return final
    except OSError as exc:
        for target in final:
            target.unlink(missing_ok=True)
        raise OutputError(f"failed writing results to {directory}: {exc}") from exc
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def run_catalogue(config: RunConfig, workers: int = 1) -> Tuple[SemanticCatalogue, List[Path]]:
    """Full pipeline: sweeps, temporal profile, pooled S_eps, files"""
    started_at = datetime.now(timezone.utc)
    started = time.perf_counter()
    logger.info(
        "catalogue_started",
        families=[s.parameter for s in config.interventions],
        trials=config.simulation.trials,
        seed=config.simulation.seed,
        workers=workers,
    )
    catalogue = build_catalogue(config, workers)
    metadata = catalogue.metadata.model_copy(
        update={
            "started_at": started_at.isoformat(timespec="seconds"),
            "elapsed_seconds": round(time.perf_counter() - started, 3),
        }
    )
    catalogue = catalogue.model_copy(update={"metadata": metadata})

    paths = publish(config.output.directory, lambda staging: write_catalogue(catalogue, config, staging))
    logger.info("catalogue_written", directory=str(config.output.directory), files=len(paths))
    return catalogue, paths
