"""Exact complex numbers with rational real and imaginary parts.

Stored as (a + b*i) / d with integer a, b and positive d, gcd(a, b, d) = 1.
All arithmetic is exact, so rank decisions downstream never depend on a
floating tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class ComplexRational:
    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=1, _normalized=False):
        if isinstance(a, Fraction) or isinstance(b, Fraction):
            ra, rb = Fraction(a), Fraction(b)
            den = ra.denominator * rb.denominator // gcd(
                ra.denominator, rb.denominator
            )
            a = ra.numerator * (den // ra.denominator)
            b = rb.numerator * (den // rb.denominator)
            d = den * d
            _normalized = False
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        if _normalized:
            self.a, self.b, self.d = a, b, d
            return
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a, b, d = a // g, b // g, d // g
        self.a, self.b, self.d = a, b, d

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self.d, other.d
        if d1 == 1 and d2 == 1:
            return ComplexRational(self.a + other.a, self.b + other.b, 1)
        return ComplexRational(
            self.a * d2 + other.a * d1, self.b * d2 + other.b * d1, d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.a, -self.b, self.d, _normalized=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        re = a1 * a2 - b1 * b2
        im = a1 * b2 + b1 * a2
        if self.d == 1 and other.d == 1:
            # already canonical: gcd(re, im, 1) == 1
            return ComplexRational(re, im, 1, _normalized=True)
        return ComplexRational(re, im, self.d * other.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero ComplexRational")
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        norm = a2 * a2 + b2 * b2
        return ComplexRational(
            (a1 * a2 + b1 * b2) * other.d,
            (b1 * a2 - a1 * b2) * other.d,
            self.d * norm,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.a, -self.b, self.d, _normalized=True)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __complex__(self):
        return complex(self.a / self.d, self.b / self.d)

    def __repr__(self):
        return f"ComplexRational({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


ZERO = ComplexRational(0)
ONE = ComplexRational(1)


def _coerce(value):
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, int):
        return ComplexRational(value, 0, 1, _normalized=value != 0 or True)
    if isinstance(value, Fraction):
        return ComplexRational(value)
    return NotImplemented


def _fmt_rational(num: int, den: int) -> str:
    return str(num) if den == 1 else f"{num}/{den}"


def format_rational(value: Fraction) -> str:
    return _fmt_rational(value.numerator, value.denominator)


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (no floats accepted)."""
    text = text.strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc
    if "." in text or "e" in text.lower():
        raise ValueError(f"malformed rational {text!r} (floats rejected)")
    return value


def format_scalar(z: ComplexRational) -> str:
    """Render as "re+imi" with both parts in p/q form, e.g. "1/2-3i"."""
    re = z.re
    im = z.im
    sign = "-" if im < 0 else "+"
    return f"{format_rational(re)}{sign}{format_rational(abs(im))}i"


def parse_scalar(text: str) -> ComplexRational:
    """Inverse of format_scalar."""
    body = text.strip()
    if not body.endswith("i"):
        raise ValueError(f"malformed scalar {text!r}: missing imaginary part")
    body = body[:-1]
    # split at the sign that separates the two parts (not a leading sign,
    # not the sign inside a denominator -- denominators are positive)
    for pos in range(len(body) - 1, 0, -1):
        ch = body[pos]
        if ch in "+-" and body[pos - 1] not in "+-/":
            re_text, im_text = body[:pos], body[pos:]
            break
    else:
        raise ValueError(f"malformed scalar {text!r}")
    re = parse_rational(re_text)
    im = parse_rational(im_text[1:] if im_text[0] == "+" else im_text)
    return ComplexRational(re, im)
