"""Exact combinatorial search over colouring templates on small hosts.

A template assigns a nonempty palette of colours to every ground-set
element of a host structure (complete graph edges, hypercube vertices or
edges, path edges).  The package computes exact extremal template
weights under forbidden-pattern constraints, enumerates container
families for the corresponding independence systems, and runs seeded
transference and stability experiments.  All arithmetic is exact: big
integers for weights, Fractions for ratios, no floats on any result
path.
"""

from .core import (
    EmptyPaletteError,
    ForbiddenFamily,
    Template,
    bad_pairs,
    colours_of,
    distance_to_family,
    mask_of,
    satisfies,
)
from .hosts import (
    CompleteHost,
    CubeEdgeHost,
    CubeVertexHost,
    Embedding,
    Host,
    PathHost,
    goodness_report,
    host_from_name,
)
from .encodings import family_names, forbidden_family_for
from .cases import CaseStudy, case_names, get_case

__version__ = "0.1.0"

__all__ = [
    "CaseStudy",
    "CompleteHost",
    "CubeEdgeHost",
    "CubeVertexHost",
    "Embedding",
    "EmptyPaletteError",
    "ForbiddenFamily",
    "Host",
    "PathHost",
    "Template",
    "bad_pairs",
    "case_names",
    "colours_of",
    "distance_to_family",
    "family_names",
    "forbidden_family_for",
    "get_case",
    "goodness_report",
    "host_from_name",
    "mask_of",
    "satisfies",
    "__version__",
]
