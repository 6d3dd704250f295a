"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed caller input: unknown vertex, bad rank, unparseable data."""


class DivisibilityError(ArithmeticError):
    """Exact polynomial division left a remainder.

    On valid seed data the exchange recursion always divides exactly, so
    this surfacing means the caller fed corrupt data or there is a bug.
    """


class SeedInvariantError(RuntimeError):
    """A seed invariant broke after a mutation; indicates a bug upstream."""


class FoldingError(RuntimeError):
    """A group action stopped being admissible while folding."""
