from ddsemantic.features.catalogue.config_loader import dump_config, load_config, parse_config
from ddsemantic.features.catalogue.schemas import (
    CatalogueEntry,
    OutputFormat,
    RunConfig,
    RunMetadata,
    SemanticCatalogue,
)
from ddsemantic.features.catalogue.service import build_catalogue, publish, run_catalogue
from ddsemantic.features.catalogue.validation import ValidationReport, run_validation

__all__ = [
    "CatalogueEntry",
    "OutputFormat",
    "RunConfig",
    "RunMetadata",
    "SemanticCatalogue",
    "ValidationReport",
    "build_catalogue",
    "dump_config",
    "load_config",
    "parse_config",
    "publish",
    "run_catalogue",
    "run_validation",
]
