"""Conversion between non-negative integers and base-p digit expansions.

Digits are stored least-significant first, so ``digits[i]`` is the
coefficient of ``base**i``. Zero is the one-digit expansion ``(0,)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidBaseError, InvalidDigitError, LengthError


def check_base(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        raise InvalidBaseError(f"base must be an integer >= 2, got {p!r}")


@dataclass(frozen=True)
class DigitString:
    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        check_base(self.base)
        object.__setattr__(self, "digits", tuple(self.digits))
        if not self.digits:
            raise LengthError("a digit string needs at least one digit")
        for d in self.digits:
            if not 0 <= d < self.base:
                raise InvalidDigitError(f"digit {d} out of range for base {self.base}")

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def is_minimal(self) -> bool:
        return len(self.digits) == 1 or self.digits[-1] != 0

    def msd_first(self) -> str:
        """Human-readable MSD-first rendering, e.g. ``"110"`` for 6 in base 2."""
        sep = "" if self.base <= 10 else ","
        return sep.join(str(d) for d in reversed(self.digits))


def to_digits(p: int, x: int) -> DigitString:
    check_base(p)
    if x < 0:
        raise InvalidDigitError(f"cannot expand negative integer {x}")
    if x == 0:
        return DigitString(p, (0,))
    out = []
    while x:
        x, d = divmod(x, p)
        out.append(d)
    return DigitString(p, tuple(out))


def from_digits(d: DigitString) -> int:
    value = 0
    for digit in reversed(d.digits):
        value = value * d.base + digit
    return value


def digits_value(p: int, digits: Sequence[int]) -> int:
    """Value of an LSD-first digit sequence, validating every digit."""
    return from_digits(DigitString(p, tuple(digits)))


def digit_length(p: int, x: int) -> int:
    """Number of digits in the minimal expansion; ``digit_length(p, 0) == 1``."""
    check_base(p)
    if x < 0:
        raise InvalidDigitError(f"cannot expand negative integer {x}")
    n = 1
    bound = p
    while x >= bound:
        bound *= p
        n += 1
    return n


def pad_to_length(d: DigitString, length: int) -> tuple[int, ...]:
    if length < len(d.digits):
        raise LengthError(f"cannot pad {len(d.digits)} digits down to length {length}")
    return d.digits + (0,) * (length - len(d.digits))
