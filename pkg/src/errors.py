"""Exception hierarchy shared by the library and the command line."""

from typing import Any, Iterable, Tuple


class PathnetError(Exception):
    """Base class for every error raised by pathnet."""


# input errors (exit code 2)

class InputError(PathnetError, ValueError):
    """Malformed input: files, identifiers, expressions."""


class UnknownElement(InputError):
    def __init__(self, element: str):
        self.element = element
        super().__init__(f"Unknown element: {element!r}")


class AntisymmetryViolation(InputError):
    def __init__(self, a: str, b: str):
        self.a, self.b = a, b
        super().__init__(f"Order closure makes {a!r} and {b!r} equivalent")


class NotComparable(InputError):
    def __init__(self, a: str, b: str, detail: str = "not comparable"):
        self.a, self.b = a, b
        super().__init__(f"{a!r} and {b!r}: {detail}")


class NotComposable(InputError):
    def __init__(self, detail: str):
        super().__init__(f"Not composable: {detail}")


class InvalidSimplex(InputError):
    def __init__(self, simplex: Tuple[str, str, str]):
        self.simplex = simplex
        a, x, b = simplex
        super().__init__(f"[{a}^{x} {b}] is not a 1-simplex: need {a} <= {x} and {b} <= {x}")


class PathSyntaxError(InputError):
    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"Syntax error at position {position}: {message}")


# algebraic precondition failures (exit code 2)

class AlgebraError(PathnetError):
    """An operation was called outside its precondition."""


class ZeroPath(AlgebraError):
    def __init__(self, operation: str):
        super().__init__(f"{operation} is undefined on the empty path 0")


class InvalidSupport(AlgebraError):
    def __init__(self, simplex: Any, support: str):
        self.simplex, self.support = simplex, support
        super().__init__(f"{support!r} is not reachable from the support of {simplex} by comparable bounds")


class NotAdjacent(AlgebraError):
    def __init__(self, left: Any, right: Any):
        super().__init__(f"{left} and {right} do not share a middle vertex")


class NotAnUpperBound(AlgebraError):
    def __init__(self, z: str, supports: Iterable[str]):
        self.z = z
        super().__init__(f"{z!r} does not bound supports {sorted(supports)}")


class NoCommonBound(AlgebraError):
    def __init__(self, elements: Iterable[str]):
        self.elements = tuple(elements)
        super().__init__(f"No common upper bound for {list(self.elements)}")


class NotALoop(AlgebraError):
    def __init__(self, path: Any):
        super().__init__(f"{path} is not a loop")


class EndpointMismatch(AlgebraError):
    def __init__(self, left: Any, right: Any):
        super().__init__(f"Endpoints differ: {left} vs {right}")


class DisconnectedPoset(AlgebraError):
    def __init__(self, operation: str):
        super().__init__(f"{operation} requires a connected poset")


class NotDirected(AlgebraError):
    def __init__(self, operation: str):
        super().__init__(f"{operation} requires an upward directed poset")


class DirectedPoset(AlgebraError):
    def __init__(self, operation: str):
        super().__init__(f"{operation} requires a poset that is not upward directed")


class NotRelated(AlgebraError):
    def __init__(self, a: str, b: str):
        self.a, self.b = a, b
        super().__init__(f"{a!r} <= {b!r} does not hold")


class NotAChain(AlgebraError):
    def __init__(self, elements: Iterable[str]):
        super().__init__(f"{list(elements)} is not a chain a <= b <= c")


class TrivialLoop(AlgebraError):
    def __init__(self, loop: Any):
        super().__init__(f"{loop} has zero homology class")


class BadBlockIndex(AlgebraError):
    def __init__(self, index: int, arity: Any):
        self.index = index
        super().__init__(f"Block index {index} outside 1..{arity}")


# verification failures (exit code 1)

class VerificationError(PathnetError):
    """A check failed, or could not be certified on the given window."""


class WindowEscape(VerificationError):
    def __init__(self, indices: Iterable[int]):
        self.indices = tuple(sorted(indices))
        super().__init__(f"Images leave the window at indices {list(self.indices)}")


class CouplingFound(VerificationError):
    def __init__(self, row: int, col: int):
        self.row, self.col = row, col
        super().__init__(f"Entry ({row}, {col}) couples distinct S^a blocks")


class UnresolvedPair(VerificationError):
    def __init__(self, p: Any, q: Any):
        self.p, self.q = p, q
        super().__init__(f"Word problem could not decide {p} vs {q}")


class TraceMismatch(VerificationError):
    def __init__(self, detail: str):
        super().__init__(f"Trace does not replay: {detail}")


class NotInBlock(AlgebraError):
    def __init__(self, x: int, index: int):
        self.x, self.index = x, index
        super().__init__(f"{x} is not in block E_{index}")
