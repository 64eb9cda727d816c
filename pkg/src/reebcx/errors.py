"""Exception hierarchy shared by all modules."""


class ReebError(ValueError):
    """Base class for input/contract violations raised by this package."""


class FaceClosureError(ReebError):
    pass


class ParseError(ReebError):
    pass


class LevelNotCut(ReebError):
    def __init__(self, level, known=()):
        self.level = level
        self.known = tuple(known)
        super().__init__(f"level {level} is not a cut level (cut levels: {', '.join(map(str, self.known)) or 'none'})")


class InvertedInterval(ReebError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"interval [{a}, {b}] has a > b")


class NotAFiltration(ReebError):
    pass


class NotASubcomplex(ReebError):
    pass


class InternalInconsistency(RuntimeError):
    """A homology computation produced something the algebra forbids (a bug)."""


class NotInvertible(ReebError):
    def __init__(self, message, rank=None, shape=None, context=None):
        self.rank = rank
        self.shape = shape
        self.context = context
        super().__init__(message)


class CoverInvalid(ReebError):
    def __init__(self, message, intervals=()):
        self.intervals = tuple(intervals)
        super().__init__(message)


class UncoveredSimplex(ReebError):
    def __init__(self, simplex):
        self.simplex = simplex
        super().__init__(f"simplex {simplex} is not contained in any cover piece")


class MissingCriticalLevel(ReebError):
    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f"critical or midpoint level {level} is missing from the cut levels")


class IntervalContainsCritical(ReebError):
    def __init__(self, a, b, level):
        self.a, self.b, self.level = a, b, level
        super().__init__(f"interval ({a}, {b}) contains the vertex height {level}")
