"""Exact arithmetic in the real quadratic field Q(sqrt5).

Every quantity that decides membership, rank or sign anywhere in this
package is a :class:`GoldenScalar`, i.e. a number a + b*sqrt(5) with
rational a, b.  Floating point is used for rendering only.
"""

from __future__ import annotations

import math
import re

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a normal install
    from fractions import Fraction as _Q

_SQRT5_FLOAT = math.sqrt(5.0)


def _as_q(x):
    if isinstance(x, (int, str)):
        return _Q(x)
    return _Q(x)


class GoldenScalar:
    """The real number a + b*sqrt(5) with a, b rational, kept exact.

    Instances are immutable and hashable; comparisons follow the real
    embedding with sqrt(5) > 0 and are decided without floating point.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _as_q(a))
        object.__setattr__(self, "b", _as_q(b))

    def __setattr__(self, name, value):
        raise AttributeError("GoldenScalar is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def rational(cls, num, den=1):
        return cls(_Q(num) / _Q(den))

    @classmethod
    def coerce(cls, x) -> "GoldenScalar":
        if isinstance(x, GoldenScalar):
            return x
        return cls(_as_q(x))

    # -- field operations -----------------------------------------------------

    def __add__(self, other):
        other = GoldenScalar.coerce(other)
        return GoldenScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenScalar(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-GoldenScalar.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = GoldenScalar.coerce(other)
        return GoldenScalar(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GoldenScalar":
        # 1/(a+b*sqrt5) = (a-b*sqrt5)/(a^2-5b^2); the norm vanishes only at 0.
        norm = self.a * self.a - 5 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        return GoldenScalar(self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        return self * GoldenScalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GoldenScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GoldenScalar":
        """Galois conjugation sqrt(5) -> -sqrt(5)."""
        return GoldenScalar(self.a, -self.b)

    # -- predicates -----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real value a + b*sqrt(5)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # a and b*sqrt5 compete: the larger square wins.
        aa = self.a * self.a
        bb = 5 * self.b * self.b
        if aa == bb:
            return 0
        return sa if aa > bb else sb

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (GoldenScalar, int)) or type(other) is type(self.a):
            other = GoldenScalar.coerce(other)
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - GoldenScalar.coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - GoldenScalar.coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - GoldenScalar.coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - GoldenScalar.coerce(other)).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- output ---------------------------------------------------------------

    def to_float(self) -> float:
        """Nearest-ish float; error stays within a few ulp at catalog sizes."""
        return float(self.a) + float(self.b) * _SQRT5_FLOAT

    __float__ = to_float

    def __repr__(self):
        return f"GoldenScalar({self.a!r}, {self.b!r})"

    def __str__(self):
        return format_golden(self)


# -- text serialization -------------------------------------------------------

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<root1>sqrt5))?
          | (?P<root2>sqrt5)
        )\s*""",
    re.VERBOSE,
)


def format_golden(x: GoldenScalar) -> str:
    """Canonical text form, e.g. ``-1/4+1/4*sqrt5``; parses back exactly."""
    parts = []
    if x.a != 0 or x.b == 0:
        parts.append(str(x.a))
    if x.b != 0:
        coef = str(abs(x.b))
        term = "sqrt5" if coef == "1" else f"{coef}*sqrt5"
        if x.b < 0:
            parts.append("-" + term)
        elif parts:
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)


def parse_golden(text: str) -> GoldenScalar:
    """Parse ``a/b+c/d*sqrt5`` style text (spaces and parens tolerated)."""
    s = text.strip().strip("()").strip()
    if not s:
        raise ValueError("empty GoldenScalar literal")
    a = _Q(0)
    b = _Q(0)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse GoldenScalar literal {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if not first and m.group("sign") == "":
            raise ValueError(f"missing sign between terms in {text!r}")
        if m.group("root2"):
            b += sign
        else:
            coef = _Q(m.group("coef"))
            if m.group("root1"):
                b += sign * coef
            else:
                a += sign * coef
        pos = m.end()
        first = False
    return GoldenScalar(a, b)


ZERO = GoldenScalar(0)
ONE = GoldenScalar(1)
SQRT5 = GoldenScalar(0, 1)
TAU = GoldenScalar(_Q(1, 2), _Q(1, 2))        # golden ratio (1+sqrt5)/2
TAU_PRIME = GoldenScalar(_Q(1, 2), _Q(-1, 2))  # conjugate (1-sqrt5)/2


def golden(a, b=0) -> GoldenScalar:
    """Shorthand constructor accepting ints, rationals or strings."""
    return GoldenScalar(_as_q(a), _as_q(b))
