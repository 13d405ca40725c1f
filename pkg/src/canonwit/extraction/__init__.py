"""Witness-producing extractors and the independent witness verifier."""

from .paths import biclique_from_families, induced_path_or_biclique
from .pipeline import STAGES, witness_pipeline
from .rakes import canonical_from_dense_rake, densify_rake, identity_grid_model, rake_from_grid_model
from .shorten import HGraphEmbedding, ShortPath, shorten_hgraph
from .witness import (
    Biclique,
    Canonical,
    Inconclusive,
    InducedPath,
    Rake,
    RakeEmbedding,
    Witness,
    check_rake,
    verify_witness,
    witness_from_json,
    witness_to_json,
)

__all__ = [
    "STAGES",
    "Biclique",
    "Canonical",
    "HGraphEmbedding",
    "Inconclusive",
    "InducedPath",
    "Rake",
    "RakeEmbedding",
    "ShortPath",
    "Witness",
    "biclique_from_families",
    "canonical_from_dense_rake",
    "check_rake",
    "densify_rake",
    "identity_grid_model",
    "induced_path_or_biclique",
    "rake_from_grid_model",
    "shorten_hgraph",
    "verify_witness",
    "witness_pipeline",
    "witness_from_json",
    "witness_to_json",
]
