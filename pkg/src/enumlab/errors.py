"""Shared exception types.

Everything raised on purpose by this package derives from EnumlabError so
callers (and the CLI) can distinguish domain errors from genuine bugs.
"""

from __future__ import annotations


class EnumlabError(Exception):
    """Base class for all errors raised by enumlab."""


class AsmError(EnumlabError):
    """Assembly-time failure; carries the 1-based source line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedRunError(EnumlabError):
    """Execution fell off the end of the program without HALT or FAIL."""


class NondeterminismError(EnumlabError):
    """A CHOOSE instruction reached the deterministic runner."""


class InconsistentBranchesError(EnumlabError):
    """Halting branches of a nondeterministic run disagree on the output."""

    def __init__(self, program_name: str, samples: list[tuple[int, int]]):
        self.program_name = program_name
        self.samples = samples
        super().__init__(
            f"program {program_name!r}: halting branches disagree on output: "
            + ", ".join(f"steps={s} output={o}" for s, o in samples[:6])
        )


class EvaluationError(EnumlabError):
    """A listing failed to produce a value for some input."""

    def __init__(self, listing_name: str, index: int, status: str):
        self.listing_name = listing_name
        self.index = index
        self.status = status
        super().__init__(f"listing {listing_name!r} failed at n={index}: {status}")


class InjectivityError(EnumlabError):
    """A prefix that must be duplicate-free contains a repeated value."""

    def __init__(self, i: int, j: int, value: int):
        self.pair = (i, j)
        self.value = value
        super().__init__(f"duplicate value {value} at indices {i} and {j}")


class LengthMismatchError(EnumlabError):
    """Two sequences that must be compared pointwise have unequal lengths."""


class UnfittableProfileError(EnumlabError):
    """A profile is too short or too degenerate for a growth fit."""


class InvalidCertificateError(EnumlabError):
    """A certificate operation was applied to an unsuitable certificate."""


class SearchExhaustedError(EnumlabError):
    """A bounded search ended before finding what was asked for."""


class UnknownNameError(EnumlabError):
    """No corpus entry with the requested name."""


class SatCodecError(EnumlabError):
    """A formula violates the size caps or a code does not decode."""
