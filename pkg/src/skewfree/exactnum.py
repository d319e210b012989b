"""Exact scalars: arbitrary-precision rationals and real quadratic irrationals.

Every predicate here (sign, ordering, absolute-value comparisons) is decided
by integer arithmetic alone.  Nothing rounds and nothing touches floating
point, so results of the certificate routines built on top are proofs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Fraction

RatLike = Union[int, str, Fraction]


def as_rat(value: RatLike) -> Rat:
    """Coerce ints, Fractions, or strings like ``"3/2"`` to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise ValueError(f"cannot interpret {value!r} as an exact rational")


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n == s*s*d`` with d squarefree; return ``(s, d)``.  Needs n >= 0."""
    if n < 0:
        raise ValueError("squarefree decomposition requires a non-negative integer")
    s, d, k = 1, n, 2
    while k * k <= d:
        kk = k * k
        while d % kk == 0:
            d //= kk
            s *= k
        k += 1
    return s, d


class QuadExt:
    """An element ``p + q*sqrt(d)`` of the real quadratic field Q(sqrt(d)).

    ``d`` is a squarefree integer >= 0, with ``d == 0`` encoding a plain
    rational.  Elements of two different nonzero d never mix (that is an
    error, not a coercion); rationals embed into any d.  Values are
    immutable and hashable.
    """

    __slots__ = ("rational_part", "radical_part", "d")

    def __init__(self, rational_part: RatLike = 0, radical_part: RatLike = 0, d: int = 0):
        p = as_rat(rational_part)
        q = as_rat(radical_part)
        if d < 0:
            raise ValueError("only real quadratic fields are supported (d >= 0)")
        if d in (0, 1):
            # sqrt(0) = 0, sqrt(1) = 1: both collapse to the rationals
            p, q, d = (p + q, Fraction(0), 0) if d == 1 else (p, Fraction(0), 0)
        else:
            s, d0 = squarefree_decompose(d)
            if s != 1:
                q *= s
                d = d0
            if d == 1:
                p, q, d = p + q, Fraction(0), 0
        if q == 0:
            d = 0
            q = Fraction(0)
        object.__setattr__(self, "rational_part", p)
        object.__setattr__(self, "radical_part", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def from_rat(cls, value: RatLike) -> "QuadExt":
        return cls(as_rat(value))

    @classmethod
    def sqrt_of(cls, n: int) -> "QuadExt":
        """Exact sqrt(n) for a non-negative integer n."""
        s, d = squarefree_decompose(n)
        return cls(0, s, d)

    # -- coercion ---------------------------------------------------------

    def _match(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if self.d != 0 and other.d != 0 and self.d != other.d:
                raise ValueError(
                    f"cannot mix sqrt({self.d}) and sqrt({other.d}) values"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other)
        return NotImplemented  # type: ignore[return-value]

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def as_rat(self) -> Rat:
        if self.d != 0:
            raise ValueError(f"{self} is irrational")
        return self.rational_part

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.d or other.d
        return QuadExt(self.rational_part + other.rational_part,
                       self.radical_part + other.radical_part, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.rational_part, -self.radical_part, self.d)

    def __sub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.d or other.d
        p1, q1 = self.rational_part, self.radical_part
        p2, q2 = other.rational_part, other.radical_part
        return QuadExt(p1 * p2 + q1 * q2 * d, p1 * q2 + q1 * p2, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        # (p + q*sqrt(d))^-1 = (p - q*sqrt(d)) / (p^2 - q^2 d)
        norm = self.rational_part**2 - self.radical_part**2 * self.d
        return QuadExt(self.rational_part / norm, -self.radical_part / norm, self.d)

    def __truediv__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadExt(other) / self if isinstance(other, (int, Fraction)) else NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadExt(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.rational_part, -self.radical_part, self.d)

    # -- order ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.rational_part == 0 and self.radical_part == 0

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}, decided by comparing squares."""
        p, q, d = self.rational_part, self.radical_part, self.d
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # opposite signs: |p| vs |q|*sqrt(d)  <=>  p^2 vs q^2 d
        lhs, rhs = p * p, q * q * d
        if lhs == rhs:
            return 0
        bigger_rational = lhs > rhs
        return (1 if p > 0 else -1) if bigger_rational else (1 if q > 0 else -1)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadExt(other)
        if not isinstance(other, QuadExt):
            return NotImplemented
        return (self.rational_part == other.rational_part
                and self.radical_part == other.radical_part
                and self.d == other.d)

    def __hash__(self):
        if self.d == 0:
            return hash(self.rational_part)
        return hash((self.rational_part, self.radical_part, self.d))

    def _cmp(self, other) -> int:
        other = self._match(other)
        if other is NotImplemented:
            raise TypeError("cannot compare")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        if self.d == 0:
            return str(self.rational_part)
        q = self.radical_part
        if q < 0:
            return f"{self.rational_part} - {-q}*sqrt({self.d})"
        return f"{self.rational_part} + {q}*sqrt({self.d})"

    def __repr__(self) -> str:
        return f"QuadExt({self.rational_part!r}, {self.radical_part!r}, d={self.d})"


def quad_sign(q: QuadExt) -> int:
    """Exact sign of ``q`` in {-1, 0, +1}."""
    return q.sign()


def quad_abs_geq(q: QuadExt, bound: RatLike) -> bool:
    """Decide ``|q| >= bound`` exactly."""
    return abs(q) >= QuadExt(as_rat(bound))
