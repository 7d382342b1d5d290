"""Exception hierarchy and resource limits.

Domain errors (bad mathematical input: mismatched ambients, inadmissible
centers, non-integral weight tuples, ...) derive from DomainError and map to
CLI exit code 1.  Parse and resource errors map to exit code 2.

The degree cap guards against runaway polynomial expansions: any product or
power whose total degree would exceed the cap raises ResourceLimitError.
The default of 64 is generous for everything this library computes.
"""

from __future__ import annotations

import os

DEFAULT_DEGREE_CAP = 64

_degree_cap = DEFAULT_DEGREE_CAP


class WeightedResError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class DomainError(WeightedResError):
    """Mathematically invalid input (exit code 1 in the CLI)."""

    code = "domain-error"


class AmbientMismatchError(DomainError):
    code = "ambient-mismatch"


class InvalidMultiOrderError(DomainError):
    code = "invalid-multiorder"


class AdmissibilityError(DomainError):
    code = "inadmissible"


class NonIntegralCenterError(DomainError):
    code = "non-integral"


class NoContactError(DomainError):
    """Unit ideal: no maximal contact exists."""

    code = "no-contact"


class ContactAlignmentError(DomainError):
    """A maximal contact exists but cannot be aligned to a coordinate by a
    polynomial triangular substitution (e.g. it is only defined after
    localization)."""

    code = "contact-alignment"


class IrrationalPointError(DomainError):
    """A continuation point of a blowup driver has no rational representative."""

    code = "irrational-point"


class NotATubeError(DomainError):
    code = "not-a-tube"


class UnrepresentableError(DomainError):
    """Input falls outside the representable desk-scale class."""

    code = "unrepresentable"


class CertificateError(DomainError):
    """Constructive certification failed; the center was not canonical."""

    code = "fails-to-certify"


class ParseError(WeightedResError):
    code = "parse-error"


class ResourceLimitError(WeightedResError):
    code = "resource-cap"


def degree_cap() -> int:
    return _degree_cap


def set_degree_cap(cap: int) -> None:
    global _degree_cap
    if cap < 1:
        raise ValueError("degree cap must be positive")
    _degree_cap = cap


def degree_cap_from_env() -> int:
    """Read the default degree cap from WEIGHTEDRES_DEGREE_CAP, if set."""
    raw = os.environ.get("WEIGHTEDRES_DEGREE_CAP")
    if raw is None:
        return DEFAULT_DEGREE_CAP
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_DEGREE_CAP
