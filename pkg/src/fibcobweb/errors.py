"""Exception types shared across the package."""


class CombinatoricsError(Exception):
    """Base class for every error raised by fibcobweb."""


class CapExceeded(CombinatoricsError):
    """A requested size is beyond a hard enumeration or construction cap."""


class NonIntegralFnomial(CombinatoricsError):
    pass


class UnsupportedRecurrence(CombinatoricsError):
    pass


class NonPrimeField(CombinatoricsError):
    pass


class BadRange(CombinatoricsError):
    pass


class BadVertex(CombinatoricsError):
    pass


class NotNonpermutable(CombinatoricsError):
    """Some non-identity matching admits a vertex-disjoint path system."""
