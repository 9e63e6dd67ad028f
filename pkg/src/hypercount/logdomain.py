"""Log-domain representation for counts too large for floating point.

Quantities like 2^((k-1)n) * exp(...) overflow doubles almost immediately,
so estimates are carried as natural logarithms and only combined through
log-sum-exp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, float, Fraction]


def log_sum_exp(values: Iterable[float]) -> float:
    vals = list(values)
    if not vals:
        return float("-inf")
    peak = max(vals)
    if peak == float("-inf"):
        return peak
    return peak + math.log(sum(math.exp(v - peak) for v in vals))


@dataclass(frozen=True, order=True)
class LogValue:
    """A non-negative real stored as its natural logarithm."""

    log: float

    @classmethod
    def of(cls, x: Number) -> "LogValue":
        if x < 0:
            raise ValueError("LogValue represents non-negative reals")
        if x == 0:
            return cls(float("-inf"))
        if isinstance(x, Fraction):
            # split into numerator/denominator to survive huge integers
            return cls(_log_int(x.numerator) - _log_int(x.denominator))
        if isinstance(x, int):
            return cls(_log_int(x))
        return cls(math.log(x))

    @classmethod
    def from_log(cls, log: float) -> "LogValue":
        return cls(float(log))

    def __mul__(self, other: "LogValue") -> "LogValue":
        return LogValue(self.log + other.log)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        return LogValue(self.log - other.log)

    def __add__(self, other: "LogValue") -> "LogValue":
        return LogValue(log_sum_exp([self.log, other.log]))

    @property
    def log10(self) -> float:
        return self.log / math.log(10)

    def to_float(self) -> float:
        """Plain float value; inf when out of double range."""
        try:
            return math.exp(self.log)
        except OverflowError:
            return float("inf")

    def __str__(self) -> str:
        if self.log == float("-inf"):
            return "0"
        exp10 = self.log10
        mantissa = 10 ** (exp10 - math.floor(exp10))
        return f"{mantissa:.6f}e{math.floor(exp10):+d}"


def _log_int(n: int) -> float:
    try:
        return math.log(n)
    except OverflowError:
        # n >= 2^1024: go through the bit length
        bits = n.bit_length() - 1
        scaled = n >> max(0, bits - 53)
        return math.log(scaled) + max(0, bits - 53) * math.log(2)
