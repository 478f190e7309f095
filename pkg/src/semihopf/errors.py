"""Error taxonomy.

Structural problems (bad table shapes, out-of-range indices) raise
MalformedInputError and are kept distinct from *law violations*, which are
never raised: law checkers return a ValidationReport instead.
"""


class SemihopfError(Exception):
    """Base class for all package errors."""


class MalformedInputError(SemihopfError):
    """Tables or indices are structurally broken (not a law violation)."""


class ParameterError(SemihopfError):
    """An argument is outside its documented domain (e.g. modulus 0)."""


class ResourceCapError(SemihopfError):
    """A construction would exceed the configured carrier cap."""

    def __init__(self, stage: str, needed, cap: int):
        self.stage = stage
        self.needed = needed
        self.cap = cap
        super().__init__(f"resource cap exceeded during {stage}: needs {needed}, cap is {cap}")


class UnsupportedStructureError(SemihopfError):
    """The object lies outside what this implementation can represent."""


class PreconditionError(SemihopfError):
    """A documented precondition of an operation does not hold."""


class InternalConsistencyError(SemihopfError):
    """Bug trap: a property that is mathematically guaranteed failed to hold."""


class DegreeOverflowError(SemihopfError):
    """A graded product left the configured degree window.

    Raised instead of silently truncating; law checkers catch it and count
    the pair as skipped.
    """

    def __init__(self, degree: int, bound: int):
        self.degree = degree
        self.bound = bound
        super().__init__(f"product of degree {degree} exceeds the degree bound {bound}")
