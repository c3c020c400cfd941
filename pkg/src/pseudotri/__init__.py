"""Plane Laman graphs, combinatorial pseudo-triangulations and their straight-line embeddings."""

from __future__ import annotations

from .cpt import CptLabeling, assign_cpt, check_all_subgraph_corners, validate_cpt
from .generate import generate_graph, generate_sequence
from .henneberg import HennebergSequence, HennebergStep, replay, reverse_sequence, reverse_sequence_plus_one
from .incremental import embed_incremental, embed_plane_laman
from .io import GraphDocument, generate_plane_laman, parse, serialize
from .plane_graph import PlaneGraph, build_plane_graph
from .rigidity import classify, is_laman, is_laman_plus_one
from .stretch import StretchConfig, stretch_cpt
from .verify_geom import Embedding, geometric_report

__version__ = "0.1.0"

__all__ = [
    "CptLabeling", "Embedding", "GraphDocument", "HennebergSequence", "HennebergStep", "PlaneGraph",
    "StretchConfig", "assign_cpt", "build_plane_graph", "check_all_subgraph_corners", "classify",
    "embed_incremental", "embed_plane_laman", "generate_graph", "generate_plane_laman", "generate_sequence",
    "geometric_report", "is_laman", "is_laman_plus_one", "parse", "replay", "reverse_sequence",
    "reverse_sequence_plus_one", "serialize", "stretch_cpt", "validate_cpt",
]
