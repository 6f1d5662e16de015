"""Event-B to EVT translation, model enumeration and refinement checking."""

from pathlib import Path

from ._evtforge import (
    CeilingError,
    ParseError,
    SemanticError,
    StructuralError,
    models,
    refine,
    translate,
)

__all__ = [
    "CeilingError",
    "ParseError",
    "SemanticError",
    "StructuralError",
    "models",
    "read_sources",
    "refine",
    "translate",
]


def read_sources(*paths):
    """(file name, text) pairs for the given paths, ready for the other calls."""
    return [(Path(p).name, Path(p).read_text(encoding="utf-8")) for p in paths]
