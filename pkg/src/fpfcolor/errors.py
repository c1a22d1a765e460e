"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end.
"""


class FpfColorError(Exception):
    exit_code = 5


class InputError(FpfColorError, ValueError):
    exit_code = 1


class BadRational(InputError):
    pass


class MissingVertexValue(InputError):
    pass


class NonGridAlignedDomain(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotCertifiablyFpf(FpfColorError):
    exit_code = 2

    def __init__(self, message, offending=(), depth=0):
        super().__init__(message)
        self.offending = list(offending)
        self.depth = depth


class HypothesisViolated(FpfColorError):
    exit_code = 3

    def __init__(self, message, simplex=None, slab=None):
        super().__init__(message)
        self.simplex = simplex
        self.slab = slab


class LoopDetected(FpfColorError):
    exit_code = 3

    def __init__(self, message, loops=(), depth=0):
        super().__init__(message)
        self.loops = list(loops)
        self.depth = depth


class PieceOutsideDomain(FpfColorError, ValueError):
    exit_code = 1


class ExtensionDisagreesOnX(InputError):
    pass


class PotentialVanishesOffX(InputError):
    pass


class AnnulusOverflow(FpfColorError):
    exit_code = 4


class TruncationOverflow(FpfColorError):
    exit_code = 4


class TooLarge(FpfColorError):
    exit_code = 4


class PairsNotDisjoint(FpfColorError, ValueError):
    exit_code = 3

    def __init__(self, message, index=None, witness=None):
        super().__init__(message)
        self.index = index
        self.witness = witness


class DimensionTooHigh(FpfColorError, ValueError):
    exit_code = 3


class CenterUnavoidable(FpfColorError):
    exit_code = 5


class EnlargeFailed(FpfColorError):
    exit_code = 5


class VerificationFailed(FpfColorError):
    exit_code = 5
