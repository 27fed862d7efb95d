"""Small exact-arithmetic helpers shared by the geometry modules."""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError


def sign(x) -> int:
    return (x > 0) - (x < 0)


def rat_from_str(text: str) -> Fraction:
    """Parse "p/q" (or a bare integer string) into a Fraction."""
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            f = Fraction(int(num), int(den))
        else:
            f = Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational literal {text!r}: {exc}") from None
    return f


def rat_to_str(x: Fraction) -> str:
    """Reduced "p/q" form with positive denominator (q = 1 kept explicit)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
