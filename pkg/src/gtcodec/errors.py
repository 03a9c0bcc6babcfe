"""Exception hierarchy.

Every error raised on purpose derives from :class:`GTCodecError`. Data and
format problems additionally derive from :class:`DataError`, which the CLI
maps to exit code 3.
"""


class GTCodecError(Exception):
    pass


class DataError(GTCodecError, ValueError):
    pass


# graph / spectral / transforms
class InvalidSize(DataError):
    pass


class InvalidWeight(DataError):
    pass


class NotSymmetric(DataError):
    pass


class NoConvergence(GTCodecError, ArithmeticError):
    pass


class NonPowerOfTwo(InvalidSize):
    pass


class DimensionMismatch(DataError):
    pass


# codec
class EmptySignal(DataError):
    pass


class InvalidK(DataError):
    pass


class InvalidConfig(DataError):
    pass


class HeaderMismatch(DataError):
    pass


class MalformedStream(DataError):
    pass


class BadMagic(MalformedStream):
    pass


class UnsupportedVersion(MalformedStream):
    pass


class TruncatedStream(MalformedStream):
    pass


class CorruptFrame(MalformedStream):
    pass


# metrics
class LengthMismatch(DataError):
    pass


class EmptyInput(DataError):
    pass


class ZeroReference(DataError):
    pass


class ZeroEnergy(DataError):
    pass


# audio_io
class WavError(DataError):
    pass


class NotRiff(WavError):
    pass


class UnsupportedCodec(WavError):
    pass


class CorruptHeader(WavError):
    pass


class EmptyAudio(WavError):
    pass


# bench
class EmptyCorpus(DataError):
    pass


class NoRows(DataError):
    pass
