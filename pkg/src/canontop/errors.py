"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``InputError`` subclasses are input
errors (exit 2) and ``AmbientTooLarge`` is a tripped resource guard (exit 3).
"""

from __future__ import annotations


class CanonTopError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CanonTopError):
    """Malformed or inconsistent input data."""


class CategoryError(InputError):
    pass


class MissingComposite(CategoryError):
    def __init__(self, g, f):
        super().__init__(f"no composite recorded for {g!r} o {f!r}")
        self.pair = (g, f)


class NonAssociative(CategoryError):
    def __init__(self, h, g, f, left, right):
        super().__init__(
            f"associativity fails on ({h!r}, {g!r}, {f!r}): "
            f"{h!r}o({g!r}o{f!r}) = {left!r} but ({h!r}o{g!r})o{f!r} = {right!r}"
        )
        self.triple = (h, g, f)


class IdentityLawViolation(CategoryError):
    def __init__(self, ident, f, got):
        super().__init__(f"identity law fails for {ident!r} and {f!r}: got {got!r}")
        self.pair = (ident, f)


class UnknownObject(InputError):
    pass


class UnknownMorphism(InputError):
    pass


class FunctorError(InputError):
    pass


class NotNatural(InputError):
    pass


class CodomainMismatch(InputError):
    pass


class NotParallel(InputError):
    pass


class ApexMismatch(InputError):
    pass


class Mismatch(InputError):
    pass


class NotSubobject(InputError):
    pass


class SimplicialIdentityError(InputError):
    pass


class UnboundedChains(InputError):
    """The index category has a cycle of non-identity morphisms."""


class BoundaryCompositionNonzero(CanonTopError):
    pass


class RangeExceedsValidity(CanonTopError):
    pass


class HypothesisFails(CanonTopError):
    """The hypothesis of a conditional check does not hold on the instance."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AmbientTooLarge(CanonTopError):
    """An enumeration guard was exceeded; nothing was silently truncated."""

    def __init__(self, what, bound):
        super().__init__(f"{what} exceeds the configured bound {bound}")
        self.bound = bound
