"""Exception types raised across the package."""


class BGError(Exception):
    """Base class for all errors raised by this package."""


# graph construction and lookup
class DuplicateLabel(BGError, ValueError):
    pass


class CrossSideEdge(BGError, ValueError):
    pass


class UnknownEndpoint(BGError, KeyError):
    pass


class UnknownVertex(BGError, KeyError):
    pass


class UnknownEdge(BGError, KeyError):
    pass


class EmptySource(BGError, ValueError):
    """A hyperedge with no source vertices."""


class EdgeNotLoose(BGError, ValueError):
    pass


class NotASubgraph(BGError, ValueError):
    pass


class DisconnectedGraph(BGError, ValueError):
    pass


# isomorphism
class SizeBoundExceeded(BGError, ValueError):
    pass


class NotABijection(BGError, ValueError):
    pass


class WitnessInvalid(BGError, ValueError):
    pass


# representations
class ParameterOutOfRange(BGError, ValueError):
    pass


class NotAQuadruple(BGError, ValueError):
    pass


class GraphMismatch(BGError, ValueError):
    pass


class EmptySum(BGError, ValueError):
    pass


class SideMismatch(BGError, ValueError):
    pass


# generic position
class SideCountMismatch(BGError, ValueError):
    pass


class Nonconvergence(BGError, RuntimeError):
    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class DegenerateBlock(BGError, RuntimeError):
    def __init__(self, message, min_singular=None):
        super().__init__(message)
        self.min_singular = min_singular


class InvariantViolation(BGError, ValueError):
    pass


class RankMismatch(BGError, ValueError):
    pass


class NotGenericPosition(BGError, ValueError):
    pass


class NotK22(BGError, ValueError):
    pass


# I/O
class ParseError(BGError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column
