"""Exception hierarchy shared by all amalgamkit modules."""


class AmalgamError(Exception):
    """Base class for every error raised by amalgamkit."""


# fields

class ReducibleModulus(AmalgamError):
    pass


class DegreeMismatch(AmalgamError):
    pass


class DivisionByZero(AmalgamError, ZeroDivisionError):
    pass


class ZeroPolynomial(AmalgamError):
    pass


class PolynomialSyntaxError(AmalgamError, ValueError):
    pass


# linalg

class NonSquare(AmalgamError):
    pass


class ShapeMismatch(AmalgamError):
    pass


class FieldMismatch(AmalgamError):
    pass


class Singular(AmalgamError):
    pass


class OrderExceedsBound(AmalgamError):
    pass


class NotFixedPointFree(AmalgamError):
    pass


class WrongOrder(AmalgamError):
    pass


class NotInvariant(AmalgamError):
    pass


class NotScalarizable(AmalgamError):
    pass


# words

class WordSyntaxError(AmalgamError, SyntaxError):
    """Malformed word text. ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class EmptyWord(WordSyntaxError):
    pass


class UnboundName(AmalgamError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ScriptError(AmalgamError):
    pass


# actions

class PermutationError(AmalgamError, ValueError):
    pass


class PointNotClosed(AmalgamError):
    pass


class IndexOutOfRange(AmalgamError, IndexError):
    pass


class BadCycleType(AmalgamError, ValueError):
    pass


class NotClosed(AmalgamError):
    pass


# mtxio

class MeatAxeError(AmalgamError, ValueError):
    pass


class BadHeader(MeatAxeError):
    pass


class EntryOutOfRange(MeatAxeError):
    pass


class TruncatedPayload(MeatAxeError):
    pass


class TrailingData(MeatAxeError):
    pass


class UnsupportedField(MeatAxeError):
    pass


class FetchError(AmalgamError):
    pass


class DigestMismatch(FetchError):
    pass


class OfflineCacheMiss(FetchError):
    pass


class TransportError(FetchError):
    def __init__(self, message, attempts=0):
        super().__init__(f"{message} (after {attempts} attempts)")
        self.attempts = attempts


class ManifestError(AmalgamError):
    pass


# formula

class EnablerFails(AmalgamError):
    pass


class VerificationFails(AmalgamError):
    pass


class ZeroVector(AmalgamError, ValueError):
    pass


class BoundExceeded(AmalgamError):
    pass


# scenarios / cli

class PathUnavailable(AmalgamError):
    pass


class ConfigError(AmalgamError):
    pass
