"""Exception types and the bound-exceeded sentinel shared across the package."""


class SeqwalkError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(SeqwalkError):
    """Malformed input file or token stream; carries a 1-based line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class RelationBranchTooShort(SeqwalkError):
    """A relation branch has length < 2."""


class MixedEndpoints(SeqwalkError):
    """Paths combined into one linear combination are not parallel."""


class PathExplosion(SeqwalkError):
    """Path enumeration exceeded the configured cap."""


class EndpointMismatch(SeqwalkError):
    """An element was handed to a block it does not belong to."""


class NotAdmissible(SeqwalkError):
    """The truncated ideal does not contain all paths of the bound length."""


class NotInIdeal(SeqwalkError):
    """Minimality was asked of an element that is not in the ideal."""


class TooManyTerms(SeqwalkError):
    """Minimality check on more terms than the configured cap allows."""


class RelationNotTop(SeqwalkError):
    """A certificate references a relation that is not a top relation."""


class NotMonomialAlgebra(SeqwalkError):
    """Operation requires every relation generator to be a single path."""


class NotStringAlgebra(SeqwalkError):
    """Operation requires the string-algebra conditions to hold."""


class EmptyPointSet(SeqwalkError):
    """A full subcategory needs at least one point."""


class CutNotConsistent(SeqwalkError):
    """Cutting the requested arrows does not split the algebra."""


class SegmentResidueZero(SeqwalkError):
    """A collapsed walk segment has no arrow class in the reduced algebra."""


class ZeroModule(SeqwalkError):
    """Operation requires a nonzero module."""


class NotAString(SeqwalkError):
    """A relation generator does not annihilate the walk representation."""


class PreconditionUnmet(SeqwalkError):
    """Structural precondition of a derived construction fails."""


class InternalInconsistency(SeqwalkError):
    """A verified certificate failed its own pipeline witness."""


class BoundExceeded:
    """Sentinel returned when a dimension computation hits its syzygy bound.

    This is a value, not an exception: hitting the bound means the dimension
    is larger than the bound, which callers may still use as information.
    """

    def __init__(self, bound):
        self.bound = bound

    def __repr__(self):
        return f"BoundExceeded({self.bound})"

    def __eq__(self, other):
        return isinstance(other, BoundExceeded) and other.bound == self.bound

    def __hash__(self):
        return hash(("BoundExceeded", self.bound))
