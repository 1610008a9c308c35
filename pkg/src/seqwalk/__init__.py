"""seqwalk: bound-quiver algebra analysis.

Detects sequential walks and related combinatorial obstructions in bound
quivers, runs the point-dropping/arrow-cutting reduction they induce, and
verifies the resulting string module homologically, producing machine-checked
certificates that an algebra is not shod (hence neither quasi-tilted nor
tilted).
"""

from .algebra import LinComb, TruncatedAlgebra, build_auto
from .quiver import Arrow, BoundQuiver, Path, RelationExpr, Walk

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "BoundQuiver",
    "LinComb",
    "Path",
    "RelationExpr",
    "TruncatedAlgebra",
    "Walk",
    "build_auto",
    "__version__",
]
