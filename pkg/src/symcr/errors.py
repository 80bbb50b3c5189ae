"""Exception hierarchy shared by all modules."""


class SymCRError(Exception):
    """Base class for every error raised by the package."""


class DimensionError(SymCRError, ValueError):
    """Shape does not match the triple system descriptor."""


class CertificationError(SymCRError, ValueError):
    """Input was expected to be a tripotent but is not."""


class FrameError(SymCRError, ValueError):
    """Family of tripotents is not a frame."""


class PeirceSpaceError(SymCRError, ValueError):
    """Input does not lie in the required Peirce space."""


class InvertibilityError(SymCRError, ValueError):
    """Element is not invertible in the Jordan algebra."""


class DomainPreconditionError(SymCRError, ValueError):
    """Point violates a domain precondition (exterior point, off-manifold, ...)."""


class CayleyDomainError(DomainPreconditionError):
    """Point lies outside the domain of definition of a Cayley transform."""


class UnsupportedScopeError(SymCRError, NotImplementedError):
    """Operation is not available for this kind of system."""


class SpecParseError(SymCRError, ValueError):
    """System-spec string could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
