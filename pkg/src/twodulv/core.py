"""Value types and elementary operations for 2-dimensional uncertain
linguistic variables (2DULVs).

A 2DULV pairs an I-class judgment interval [s_a, s_b] (the assessment
itself) with a II-class reliability interval [s_c, s_d] (the assessor's
confidence in it). Subscripts are real-valued: aggregation produces
"virtual" terms such as s_4.667 that fall between the grid points of the
term set.

Everything here is an immutable value; every function is pure.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, ValidationError

#: Two expectations closer than this are considered tied. All arithmetic
#: up to eigen-solving is exact on small rationals, so anything closer is
#: numerical noise.
COMPARISON_TOL = 1e-9


@dataclass(frozen=True)
class LinguisticScale:
    """Cardinalities of the two term sets: ``l`` for the I-class judgment
    set {s_0 .. s_{l-1}} and ``z`` for the II-class reliability set
    {s_0 .. s_{z-1}}. Both must be >= 2 so the normalizing denominators
    l-1 and z-1 are nonzero."""

    l: int
    z: int

    def __post_init__(self):
        if self.l < 2 or self.z < 2:
            raise ValidationError(
                f"scale requires l >= 2 and z >= 2, got l={self.l}, z={self.z}")


@dataclass(frozen=True)
class UncertainInterval:
    """A closed interval of real-valued linguistic subscripts, lo <= hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValidationError(f"non-finite interval endpoint [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValidationError(f"reversed interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2.0


@dataclass(frozen=True)
class TwoDULV:
    """A 2-dimensional uncertain linguistic variable."""

    judgment: UncertainInterval
    reliability: UncertainInterval


def dulv(a: float, b: float, c: float, d: float) -> TwoDULV:
    """Shorthand constructor from the four subscripts ([a,b],[c,d])."""
    return TwoDULV(UncertainInterval(a, b), UncertainInterval(c, d))


def canonicalize(a, b, c, d, scale: LinguisticScale, label: str = "") -> tuple[TwoDULV, bool]:
    """Build a TwoDULV from raw (possibly reversed) subscripts.

    Reversed intervals occur in real data entry (the reference dataset
    contains entries like ([s5,s3],[s4,s3])); they are repaired by
    endpoint swap rather than rejected. Returns ``(value, swapped)`` so
    callers can record a normalization warning for audit.

    Raises ValidationError when a subscript is non-finite, negative, or
    above the scale bound (l-1 for judgment, z-1 for reliability).
    """
    where = f" at {label}" if label else ""
    problems = []
    for name, x in (("a", a), ("b", b), ("c", c), ("d", d)):
        if not (isinstance(x, (int, float)) and math.isfinite(x)):
            problems.append(f"subscript {name}={x!r} is not a finite number{where}")
    if problems:
        raise ValidationError(problems)
    for name, x, bound in (("a", a, scale.l - 1), ("b", b, scale.l - 1),
                           ("c", c, scale.z - 1), ("d", d, scale.z - 1)):
        if x < 0:
            problems.append(f"subscript {name}={x} is negative{where}")
        elif x > bound:
            problems.append(f"subscript {name}={x} exceeds scale bound {bound}{where}")
    if problems:
        raise ValidationError(problems)
    swapped = a > b or c > d
    value = dulv(min(a, b), max(a, b), min(c, d), max(c, d))
    return value, swapped


# ---------------------------------------------------------------------------
# Interval arithmetic (judgment-interval operational rules)

def interval_add(x: UncertainInterval, y: UncertainInterval) -> UncertainInterval:
    return UncertainInterval(x.lo + y.lo, x.hi + y.hi)


def interval_mul(x: UncertainInterval, y: UncertainInterval) -> UncertainInterval:
    return UncertainInterval(x.lo * y.lo, x.hi * y.hi)


def interval_div(x: UncertainInterval, y: UncertainInterval) -> UncertainInterval:
    if y.lo <= 0 or y.hi <= 0:
        raise DomainError(f"division by interval [{y.lo}, {y.hi}] touching zero")
    return UncertainInterval(x.lo / y.hi, x.hi / y.lo)


def interval_scale(lam: float, x: UncertainInterval) -> UncertainInterval:
    if lam < 0:
        raise DomainError(f"scalar multiple requires lambda >= 0, got {lam}")
    return UncertainInterval(lam * x.lo, lam * x.hi)


def interval_arith(kind: str, x: UncertainInterval, y) -> UncertainInterval:
    """Dispatch by operation name: add | mul | div | scale.

    For ``scale``, ``y`` is the nonnegative scalar (operand order follows
    the written form ``lambda * x``, i.e. interval_arith("scale", x, lam)).
    """
    if kind == "add":
        return interval_add(x, y)
    if kind == "mul":
        return interval_mul(x, y)
    if kind == "div":
        return interval_div(x, y)
    if kind == "scale":
        return interval_scale(y, x)
    raise ValueError(f"unknown interval operation {kind!r}")


# ---------------------------------------------------------------------------
# 2DULV operational rules. Reliability always combines by min: a result is
# only as trustworthy as its least trustworthy operand.

def _min_reliability(x: TwoDULV, y: TwoDULV) -> UncertainInterval:
    return UncertainInterval(min(x.reliability.lo, y.reliability.lo),
                             min(x.reliability.hi, y.reliability.hi))


def dulv_add(x: TwoDULV, y: TwoDULV) -> TwoDULV:
    return TwoDULV(interval_add(x.judgment, y.judgment), _min_reliability(x, y))


def dulv_mul(x: TwoDULV, y: TwoDULV) -> TwoDULV:
    return TwoDULV(interval_mul(x.judgment, y.judgment), _min_reliability(x, y))


def dulv_div(x: TwoDULV, y: TwoDULV) -> TwoDULV:
    return TwoDULV(interval_div(x.judgment, y.judgment), _min_reliability(x, y))


def dulv_scale(lam: float, x: TwoDULV) -> TwoDULV:
    """lam * x: judgment scaled, reliability untouched."""
    return TwoDULV(interval_scale(lam, x.judgment), x.reliability)


def dulv_pow(x: TwoDULV, lam: float) -> TwoDULV:
    """x ** lam: judgment raised componentwise, reliability untouched.

    Negative exponents need strictly positive judgment subscripts; the
    endpoint order then flips, so the result is re-sorted into lo <= hi.
    """
    a, b = x.judgment.lo, x.judgment.hi
    if lam < 0 and a <= 0:
        raise DomainError(
            f"negative exponent {lam} undefined for judgment interval [{a}, {b}]")
    pa, pb = a ** lam, b ** lam
    return TwoDULV(UncertainInterval(min(pa, pb), max(pa, pb)), x.reliability)


# ---------------------------------------------------------------------------
# Scalarization, comparison, distance, uncertainty

def expectation(x: TwoDULV, scale: LinguisticScale) -> float:
    """Expectation score: normalized judgment midpoint times normalized
    reliability midpoint. In [0, 1] whenever the subscripts are within
    the scale bounds; monotone in each subscript."""
    e_j = (x.judgment.lo + x.judgment.hi) / (2.0 * (scale.l - 1))
    e_r = (x.reliability.lo + x.reliability.hi) / (2.0 * (scale.z - 1))
    return e_j * e_r


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare(x: TwoDULV, y: TwoDULV, scale: LinguisticScale,
            tol: float = COMPARISON_TOL) -> Ordering:
    """Total preorder induced by the expectation score."""
    ex, ey = expectation(x, scale), expectation(y, scale)
    if abs(ex - ey) <= tol:
        return Ordering.EQUAL
    return Ordering.GREATER if ex > ey else Ordering.LESS


def hamming_distance(x: TwoDULV, y: TwoDULV, scale: LinguisticScale) -> float:
    """Hamming distance: mean absolute difference of the four
    reliability-weighted judgment cross terms, normalized by l-1."""
    zm = scale.z - 1
    a1, b1 = x.judgment.lo, x.judgment.hi
    c1, d1 = x.reliability.lo, x.reliability.hi
    a2, b2 = y.judgment.lo, y.judgment.hi
    c2, d2 = y.reliability.lo, y.reliability.hi
    total = (abs(a1 * c1 / zm - a2 * c2 / zm)
             + abs(a1 * d1 / zm - a2 * d2 / zm)
             + abs(b1 * c1 / zm - b2 * c2 / zm)
             + abs(b1 * d1 / zm - b2 * d2 / zm))
    return total / (4.0 * (scale.l - 1))


def uncertainty_degree(x: TwoDULV, scale: LinguisticScale) -> float:
    """Mean of the normalized interval widths; 0 iff both intervals are
    degenerate. Denominators are l-1 and z-1 (the published formula
    prints l and t, but its own worked values force the -1 forms)."""
    return 0.5 * (x.judgment.width / (scale.l - 1)
                  + x.reliability.width / (scale.z - 1))


# ---------------------------------------------------------------------------
# Textual form: ([s<a>,s<b>],[s<c>,s<d>]) with subscripts to 3 decimals.

_DULV_RE = re.compile(
    r"""^\(\s*\[\s*s(?P<a>-?\d+(?:\.\d+)?)\s*,\s*s(?P<b>-?\d+(?:\.\d+)?)\s*\]\s*,
         \s*\[\s*s(?P<c>-?\d+(?:\.\d+)?)\s*,\s*s(?P<d>-?\d+(?:\.\d+)?)\s*\]\s*\)$""",
    re.VERBOSE)


def format_dulv(x: TwoDULV) -> str:
    return ("([s{:.3f},s{:.3f}],[s{:.3f},s{:.3f}])"
            .format(x.judgment.lo, x.judgment.hi, x.reliability.lo, x.reliability.hi))


def parse_dulv(text: str) -> TwoDULV:
    """Inverse of format_dulv; whitespace between tokens is optional."""
    m = _DULV_RE.match(text.strip())
    if m is None:
        raise ValidationError(f"cannot parse 2DULV from {text!r}")
    return dulv(float(m.group("a")), float(m.group("b")),
                float(m.group("c")), float(m.group("d")))
