"""Exception hierarchy shared by every amalgkit module."""


class AlgebraError(Exception):
    """Base class for all amalgkit errors."""


class InvalidSize(AlgebraError):
    pass


class BadElement(AlgebraError):
    pass


class AxiomViolation(AlgebraError):
    """A table or map failed one of its defining axioms.

    ``axiom`` names the violated law and ``witness`` is the lexicographically
    first tuple of carrier indices exhibiting the failure.
    """

    def __init__(self, axiom, witness=None, what=""):
        self.axiom = axiom
        self.witness = tuple(witness) if witness is not None else None
        self.what = what
        msg = f"{what + ': ' if what else ''}{axiom} fails"
        if self.witness is not None:
            msg += f" at {self.witness}"
        super().__init__(msg)


class NotARing(AxiomViolation):
    pass


class NotAModule(AxiomViolation):
    pass


class NotAHom(AxiomViolation):
    pass


class NotAnIdeal(AxiomViolation):
    pass


class NotASubmodule(AxiomViolation):
    pass


class SNotMultClosed(AxiomViolation):
    pass


class IncompatibleHom(AlgebraError):
    pass


class NotProper(AlgebraError):
    pass


class ZeroIdealRejected(AlgebraError):
    pass


class EmptySubset(AlgebraError):
    pass


class NotAChain(AlgebraError):
    pass


class UnionNotProper(AlgebraError):
    pass


class IMNotInF(AlgebraError):
    pass


class BudgetExceeded(AlgebraError):
    def __init__(self, needed, budget, what=""):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what or 'check'} needs {needed} iterations, budget is {budget}")


class UnknownStatement(AlgebraError):
    pass


class NoValidInstance(AlgebraError):
    pass
