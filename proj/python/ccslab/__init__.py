"""Compositional computation structures: limits, tameness diagnostics and Newton basins."""

from ._ccslab import (
    BinaryWord,
    CantorPoint,
    CutError,
    DegreeError,
    DepthError,
    EmptySetError,
    Error,
    ParseError,
    __version__,
    apply_transition,
    chordal_distance,
    cyl_measure,
    detect_cycle,
    family_matrix,
    independence_dimension,
    limit,
    newton_limit,
    newton_orbit,
    render,
    sqrt_deep_value,
    structure_check,
    talagrand,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
