"""Exact integer, rational and quadratic-surd arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import InvalidInputError


def isqrt(n: int) -> int:
    """Return floor(sqrt(n)) for a non-negative integer ``n``."""
    if n < 0:
        raise InvalidInputError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = k**2 * core`` with ``core`` squarefree and return ``(k, core)``.

    Trial division runs only up to the cube root of the unfactored part: once
    p**3 exceeds it, what is left is 1, a prime, a product of two distinct
    primes or the square of a prime, and only the last one is a square.
    """
    if n < 1:
        raise InvalidInputError(f"squarefree_decompose needs n >= 1, got {n}")
    k, core = 1, 1
    p = 2
    while p * p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            k *= p ** (e // 2)
            if e % 2:
                core *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if n > 1 and r * r == n:
        k *= r
    else:
        core *= n
    return k, core


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Surd:
    """The real number ``a + b*sqrt(m)`` with rational ``a``, ``b``.

    Construction normalizes eagerly: ``m`` is reduced to its squarefree part
    (the square factor moves into ``b``), and rational values are stored with
    ``b == 0`` and ``m == 1``. Equal numbers therefore have equal fields.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    m: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 1:
            raise InvalidInputError(f"radicand must be a positive integer, got {self.m!r}")
        a, b = Fraction(self.a), Fraction(self.b)
        k, core = squarefree_decompose(self.m)
        b *= k
        if core == 1:
            a += b
            b = Fraction(0)
        if b == 0:
            core = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "m", core)

    @classmethod
    def sqrt(cls, m: int) -> Surd:
        return cls(Fraction(0), Fraction(1), m)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _common(self, other: Surd) -> int:
        if self.m == other.m or other.m == 1:
            return self.m
        if self.m == 1:
            return other.m
        raise InvalidInputError(f"radicand mismatch: sqrt({self.m}) vs sqrt({other.m})")

    @staticmethod
    def _coerce(other) -> Surd | None:
        if isinstance(other, Surd):
            return other
        if isinstance(other, Rational):
            return Surd(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Surd(self.a + o.a, self.b + o.b, self._common(o))

    __radd__ = __add__

    def __neg__(self) -> Surd:
        return Surd(-self.a, -self.b, self.m)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = self._common(o)
        return Surd(self.a * o.a + self.b * o.b * m, self.a * o.b + self.b * o.a, m)

    __rmul__ = __mul__

    def conj(self) -> Surd:
        return Surd(self.a, -self.b, self.m)

    def norm(self) -> Fraction:
        """``a**2 - m*b**2``, the product of the number with its conjugate."""
        return self.a * self.a - self.m * self.b * self.b

    def inverse(self) -> Surd:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero surd")
        c = self.conj()
        return Surd(c.a / n, c.b / n, self.m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def sign(self) -> int:
        """Exact sign, decided by comparing ``a**2`` with ``m*b**2``."""
        sa, sb = _sgn(self.a), _sgn(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        return sa if self.a * self.a > self.m * self.b * self.b else sb

    def __abs__(self) -> Surd:
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b, self.m) == (o.a, o.b, o.m)

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.m))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.m)

    def evaluate(self, ctx):
        """Value as an mpf of the given mpmath context."""
        a = ctx.mpf(self.a.numerator) / self.a.denominator
        b = ctx.mpf(self.b.numerator) / self.b.denominator
        return a + b * ctx.sqrt(self.m)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        coef = "" if self.b == 1 else "-" if self.b == -1 else f"{self.b}*"
        rad = f"{coef}sqrt({self.m})"
        if self.a == 0:
            return rad
        if rad.startswith("-"):
            return f"{self.a}{rad}"
        return f"{self.a}+{rad}"
