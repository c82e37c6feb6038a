"""Error types shared by all services.

Every error carries a stable ``code`` (the class name by default) and a
human-readable ``detail``; the CLI maps them onto exit codes.
"""
from typing import ClassVar


class SphericalError(Exception):
    """Base class for every error raised by the toolkit"""

    code: ClassVar[str] = "SphericalError"
    exit_code: ClassVar[int] = 1

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.code = cls.__name__

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.code)
        self.detail = detail or self.code

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


# lattice
class ZeroVector(SphericalError):
    pass


# spherical data / automorphisms
class AxiomViolation(SphericalError):
    exit_code = 3


class NotInWeightLattice(SphericalError):
    pass


class NotAnAutomorphismCharacter(SphericalError):
    pass


class OddValueOnA(SphericalError):
    pass


# Galois actions
class InvalidGroup(SphericalError):
    pass


class NotDiagramAction(SphericalError):
    pass


class NotLatticeAutomorphism(SphericalError):
    pass


# cohomology
class CountUndefined(SphericalError):
    pass


class TooLarge(SphericalError):
    pass


class MissingCover(SphericalError):
    pass


class FiberMismatch(SphericalError):
    pass


class InconsistentCover(SphericalError):
    pass


# fans
class NotPointed(SphericalError):
    pass


class AmbiguousColorAction(SphericalError):
    pass


class UnknownColor(SphericalError):
    pass


class DimensionMismatch(SphericalError):
    pass


# fixtures and input files
class UnknownFixture(SphericalError):
    pass


class MalformedInput(SphericalError):
    """Unreadable file, bad JSON or a document that does not match its model"""

    exit_code = 2


class SwapUnavailable(SphericalError):
    pass


class InvariantBreach(SphericalError):
    """An internal consistency check failed"""

    exit_code = 3
