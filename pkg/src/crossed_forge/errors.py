"""Exception hierarchy.

Every error raised by the library derives from :class:`CrossedForgeError`,
and most carry the offending witness (element, pair or triple) as attributes
so callers and the CLI can report it.
"""

from __future__ import annotations


class CrossedForgeError(Exception):
    """Base class for all library errors."""


class NotInvertible(CrossedForgeError, ArithmeticError):
    def __init__(self, a: int, n: int):
        self.a, self.n = a, n
        super().__init__(f"{a} is not invertible modulo {n}")


class TooLarge(CrossedForgeError):
    """A search or enumeration would exceed its configured budget."""

    def __init__(self, size: int, budget: int, what: str = "search space"):
        self.size, self.budget = size, budget
        super().__init__(f"{what} of size {size} exceeds budget {budget}")


# crossed systems


class CrossedSystemError(CrossedForgeError):
    pass


class NotAutomorphism(CrossedSystemError):
    def __init__(self, g: int, detail: str = ""):
        self.g = g
        super().__init__(f"alpha({g}) is not an automorphism of H" + (f": {detail}" if detail else ""))


class WeakActionViolated(CrossedSystemError):
    def __init__(self, g1: int, g2: int, h: int):
        self.witness = (g1, g2, h)
        super().__init__(f"weak action condition fails at (g1, g2, h) = {self.witness}")


class CocycleViolated(CrossedSystemError):
    def __init__(self, g1: int, g2: int, g3: int):
        self.witness = (g1, g2, g3)
        super().__init__(f"cocycle condition fails at (g1, g2, g3) = {self.witness}")


class NotNormalized(CrossedSystemError):
    def __init__(self, detail: str = "f(1, 1) is not the identity"):
        super().__init__(detail)


class NotNormalSubgroup(CrossedSystemError):
    pass


class BadTransversal(CrossedSystemError):
    pass


class NotCyclicInputs(CrossedSystemError):
    pass


# cocycles


class CocycleError(CrossedForgeError):
    pass


class NotSymmetric(CocycleError):
    def __init__(self, k: int, l: int):
        self.witness = (k, l)
        super().__init__(f"cocycle is not symmetric at {self.witness}")


class NotCocycle(CocycleError):
    def __init__(self, k: int, l: int, p: int):
        self.witness = (k, l, p)
        super().__init__(f"2-cocycle identity fails at {self.witness}")


class InvalidProfile(CocycleError, ValueError):
    pass


# families


class FamilyError(CrossedForgeError, ValueError):
    pass


class HolderCongruenceFailed(FamilyError):
    def __init__(self, which: str, detail: str):
        self.which = which
        super().__init__(f"Holder condition {which} fails: {detail}")


class NotCoprime(FamilyError):
    pass


class OddOrderFlip(FamilyError):
    pass


class InfiniteFamily(FamilyError):
    pass


class NotCoprimeTriple(CrossedForgeError, ValueError):
    pass


# text format


class ParseError(CrossedForgeError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class SemanticError(ParseError):
    pass
