"""Exception types shared across the package."""


class StructureError(ValueError):
    """A cell, table or file is malformed: dangling references, a partial
    table that is undefined on its declared domain, or a non-composable
    pair handed to a composition operation."""


class ClosureError(StructureError):
    """A selection of cells is not closed under the required operations.

    Carries the missing cell and the operation that produced it.
    """

    def __init__(self, operation: str, missing, detail: str = ""):
        self.operation = operation
        self.missing = missing
        msg = f"selection not closed under {operation}: missing {missing!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class CategoryLawError(StructureError):
    """Raw category tables violate associativity or an identity law."""

    def __init__(self, law: str, witness, detail: str = ""):
        self.law = law
        self.witness = witness
        msg = f"category law {law!r} fails at {witness!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class OrbitBudgetError(RuntimeError):
    """Orbit fixpoint iteration ran out of budget; carries the partial result."""

    def __init__(self, partial, budget: int):
        self.partial = partial
        self.budget = budget
        super().__init__(
            f"orbit closure not reached within budget of {budget} new cells"
        )
