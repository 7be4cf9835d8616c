"""Exception hierarchy shared by every module."""


class OrderlabError(Exception):
    """Base class for all orderlab-specific errors."""


class IndexOutOfRange(OrderlabError):
    """An element index fell outside the universe 0..n-1."""


class BadParameters(OrderlabError):
    """A constructor or generator was given out-of-bounds parameters."""


class BudgetExceeded(OrderlabError):
    """An enumeration or checker hit its configured cap."""


class PosetMismatch(OrderlabError):
    """Operands belong to different posets or universes."""


class AxiomViolation(OrderlabError):
    """A relation failed one of its defining axioms.

    kind is 'reflexivity' | 'antisymmetry' | 'transitivity' for order
    relations and 'aux-1' | 'aux-2' | 'aux-3' for auxiliary relations;
    witness is the offending pair.
    """

    def __init__(self, kind, witness):
        self.kind = kind
        self.witness = tuple(witness)
        super().__init__(f"{kind} violated at {self.witness}")


class SeedViolatesOrder(OrderlabError):
    """A closure seed contained a pair that is not in the underlying order."""

    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"seed pair {self.pair} is not within the order")


class NotLower(OrderlabError):
    """A lower set was required."""


class NotUpper(OrderlabError):
    """An upper set was required."""


class NotPreApproximating(OrderlabError):
    """The relation has a non-directed section, so it induces no topology."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"section of element {witness} is not directed")


class NotApproximating(OrderlabError):
    """The relation has a section that does not join back to its element."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"section of element {witness} does not join back to it")


class ForeignElement(OrderlabError):
    """A symbolic element does not belong to the family's signature."""


class UnknownSet(OrderlabError):
    """An unknown distinguished-set name was requested."""


class WindowTooLarge(OrderlabError):
    """A requested family window exceeds the supported size."""
