"""Exact equidistributed sequences for fixed points of binary morphisms."""

from .errors import ConsistencyError, InadmissibleInput, NuForgeError, ResourceCapExceeded
from .pipeline import Analysis, analyze, sequences
from .words import GeneralMorphism, parse_morphism

__all__ = [
    "Analysis",
    "ConsistencyError",
    "GeneralMorphism",
    "InadmissibleInput",
    "NuForgeError",
    "ResourceCapExceeded",
    "analyze",
    "parse_morphism",
    "sequences",
]

__version__ = "0.1.0"
