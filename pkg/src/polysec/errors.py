"""Exception taxonomy.

DomainError covers bad user input (CLI exit code 1).  CertificationFailure
covers internal invariant violations: a construction that should be
mathematically impossible to fail did fail (CLI exit code 3).
PullbackUnbounded is a retryable signal consumed by the K-retry ladders.
"""


class PolysecError(Exception):
    pass


class DomainError(PolysecError):
    pass


class CertificationFailure(PolysecError):
    pass


# exactgeom
class DegenerateJoin(DomainError):
    pass


class DegenerateMeet(DomainError):
    pass


class AtInfinity(DomainError):
    pass


# polygon
class NotConvex(DomainError):
    pass


class TooFewVertices(DomainError):
    pass


class DuplicateVertex(DomainError):
    pass


class MapsVertexToInfinity(DomainError):
    pass


class ImageNotConvex(DomainError):
    pass


class LineMeetsPolygon(DomainError):
    pass


class DegenerateTriple(DomainError):
    pass


# hexagon
class NotHexagon(DomainError):
    pass


class NoConcurrency(DomainError):
    pass


class ComplexitySix(DomainError):
    pass


class NormalFormConstraintViolated(CertificationFailure):
    pass


# heptagon
class NotHeptagon(DomainError):
    pass


class DegenerateConstruction(CertificationFailure):
    pass


class NoneFound(CertificationFailure):
    """A guaranteed non-crossing standardization line was not found."""


class BadK(DomainError):
    pass


# sections
class EmptySection(DomainError):
    pass


class ScaleExceeded(DomainError):
    pass


class PullbackUnbounded(PolysecError):
    """A lifted map sends some vertex to the hyperplane at infinity or beyond."""


class IncompatibleSections(DomainError):
    pass


# slack
class NoExtension(CertificationFailure):
    pass


class NotInPolytope(DomainError):
    pass


# serialization / CLI
class ParseError(DomainError):
    pass
