"""Sparse exact polynomials and Laurent polynomials in x and y over Q.

Exponent pairs are packed into single integers so that multiplication is a
plain integer-keyed convolution; the packing is linear, i.e. the packed key
of a product of monomials is the sum of the packed keys.
"""

from __future__ import annotations

import math
import re
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator

from .exactnum import Rat, RatLike, as_rat

_SHIFT = 40
_BASE = 1 << _SHIFT
_HALF = 1 << (_SHIFT - 1)


def pack(i: int, j: int) -> int:
    """Pack an exponent pair into one integer; addition of keys adds exponents."""
    return i * _BASE + j


def unpack(key: int) -> tuple[int, int]:
    j = ((key + _HALF) % _BASE) - _HALF
    return (key - j) >> _SHIFT, j


def term_order_key(key: int) -> tuple[int, int]:
    """Canonical order: total degree descending, then exponent of x descending."""
    i, j = unpack(key)
    return (-(i + j), -i)


class Mode(str, Enum):
    POLY = "POLY"
    LAURENT = "LAURENT"


class WeightedDegree:
    """Positive integer weights for x and y."""

    __slots__ = ("w_x", "w_y")

    def __init__(self, w_x: int, w_y: int):
        if w_x < 1 or w_y < 1:
            raise ValueError("weights must be >= 1")
        self.w_x = w_x
        self.w_y = w_y

    def __eq__(self, other):
        return (isinstance(other, WeightedDegree)
                and (self.w_x, self.w_y) == (other.w_x, other.w_y))

    def __hash__(self):
        return hash((self.w_x, self.w_y))

    def __repr__(self):
        return f"WeightedDegree({self.w_x}, {self.w_y})"


def _as_weights(w) -> WeightedDegree:
    if isinstance(w, WeightedDegree):
        return w
    return WeightedDegree(*w)


class Poly:
    """Sparse polynomial (or Laurent polynomial) in x, y with Fraction coefficients.

    Terms map packed exponent keys to nonzero coefficients.  Instances are
    treated as immutable; all operations return new values.
    """

    __slots__ = ("mode", "terms", "_hash")

    def __init__(self, terms: dict[int, Fraction], mode: Mode = Mode.POLY, *,
                 _clean: bool = False):
        if not _clean:
            cleaned = {}
            for key, coeff in terms.items():
                coeff = as_rat(coeff)
                if coeff == 0:
                    continue
                if mode is Mode.POLY:
                    i, j = unpack(key)
                    if i < 0 or j < 0:
                        raise ValueError(
                            "negative exponents require LAURENT mode")
                cleaned[key] = coeff
            terms = cleaned
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        if name == "_hash" and getattr(self, "_hash", None) is None:
            object.__setattr__(self, name, value)
            return
        raise AttributeError("Poly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, mode: Mode = Mode.POLY) -> "Poly":
        return cls({}, mode, _clean=True)

    @classmethod
    def constant(cls, c: RatLike, mode: Mode = Mode.POLY) -> "Poly":
        c = as_rat(c)
        return cls({} if c == 0 else {0: c}, mode, _clean=True)

    @classmethod
    def monomial(cls, c: RatLike, i: int, j: int, mode: Mode = Mode.POLY) -> "Poly":
        c = as_rat(c)
        if c == 0:
            return cls.zero(mode)
        if mode is Mode.POLY and (i < 0 or j < 0):
            raise ValueError("negative exponents require LAURENT mode")
        return cls({pack(i, j): c}, mode, _clean=True)

    @classmethod
    def x(cls, mode: Mode = Mode.POLY) -> "Poly":
        return cls.monomial(1, 1, 0, mode)

    @classmethod
    def y(cls, mode: Mode = Mode.POLY) -> "Poly":
        return cls.monomial(1, 0, 1, mode)

    # -- plumbing ---------------------------------------------------------

    def _require_same_mode(self, other: "Poly") -> None:
        if self.mode is not other.mode:
            raise ValueError(f"mode mismatch: {self.mode.value} vs {other.mode.value}")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def iter_terms(self) -> Iterator[tuple[int, int, Fraction]]:
        """Yield (i, j, coeff) in canonical order."""
        for key in sorted(self.terms, key=term_order_key):
            i, j = unpack(key)
            yield i, j, self.terms[key]

    def support(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, _ in self.iter_terms()]

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.terms.get(pack(i, j), Fraction(0))

    def constant_coefficient(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def leading_term(self) -> tuple[int, int, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = min(self.terms, key=term_order_key)
        i, j = unpack(key)
        return i, j, self.terms[key]

    def as_laurent(self) -> "Poly":
        if self.mode is Mode.LAURENT:
            return self
        return Poly(dict(self.terms), Mode.LAURENT, _clean=True)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.mode)
        if not isinstance(other, Poly):
            return NotImplemented
        self._require_same_mode(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            new = out.get(key, 0) + coeff
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        return Poly(out, self.mode, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -c for k, c in self.terms.items()}, self.mode, _clean=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.mode)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_rat(other)
            if c == 0:
                return Poly.zero(self.mode)
            return Poly({k: v * c for k, v in self.terms.items()}, self.mode,
                        _clean=True)
        if not isinstance(other, Poly):
            return NotImplemented
        self._require_same_mode(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.mode)
        num1, den1 = _int_form(self.terms)
        num2, den2 = _int_form(other.terms) if other.terms is not self.terms else (num1, den1)
        if self.terms is other.terms:
            conv = _convolve_square(list(num1.items()))
        else:
            conv = _convolve(list(num1.items()), list(num2.items()))
        den = den1 * den2
        if den == 1:
            out = {k: Fraction(v) for k, v in conv.items() if v}
        else:
            out = {}
            for k, v in conv.items():
                if v:
                    out[k] = Fraction(v, den)
        return Poly(out, self.mode, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.unit_inverse() ** (-n)
        out = Poly.constant(1, self.mode)
        base = self
        while n:
            if n & 1:
                out = out * base
            if n > 1:
                base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.mode)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.mode is other.mode and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.mode, tuple(sorted(self.terms.items()))))
            self._hash = h
        return h

    # -- units and monomials ----------------------------------------------

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial_data(self) -> tuple[Fraction, int, int]:
        if len(self.terms) != 1:
            raise ValueError("not a monomial")
        (key, coeff), = self.terms.items()
        i, j = unpack(key)
        return coeff, i, j

    @property
    def is_unit(self) -> bool:
        """Unit of the ring: nonzero scalar, or any monomial in LAURENT mode."""
        if len(self.terms) != 1:
            return False
        if self.mode is Mode.LAURENT:
            return True
        return next(iter(self.terms)) == 0

    def unit_inverse(self) -> "Poly":
        if not self.is_unit:
            raise ValueError(f"{self} is not a unit")
        (key, coeff), = self.terms.items()
        i, j = unpack(key)
        return Poly({pack(-i, -j): Fraction(1) / coeff}, self.mode, _clean=True)

    def is_proportional_to(self, other: "Poly") -> bool:
        """True iff one of self, other is a rational multiple of the other."""
        if self.is_zero or other.is_zero:
            return True
        if set(self.terms) != set(other.terms):
            return False
        key = next(iter(self.terms))
        ratio = other.terms[key] / self.terms[key]
        return all(other.terms[k] == c * ratio for k, c in self.terms.items())

    # -- degrees ----------------------------------------------------------

    def weighted_degree(self, w) -> int:
        """max of w_x*i + w_y*j over the support.  Error on the zero polynomial."""
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        w = _as_weights(w)
        if self.mode is not Mode.POLY:
            raise ValueError("weighted degrees are defined in POLY mode")
        best = None
        for key in self.terms:
            i, j = unpack(key)
            deg = w.w_x * i + w.w_y * j
            if best is None or deg > best:
                best = deg
        return best

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return max(i + j for i, j in (unpack(k) for k in self.terms))

    def degree_in(self, variable: str) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        idx = 0 if variable == "x" else 1
        return max(unpack(k)[idx] for k in self.terms)

    def is_univariate_in(self, variable: str) -> bool:
        idx = 1 if variable == "x" else 0
        return all(unpack(k)[idx] == 0 for k in self.terms)

    # -- substitution -----------------------------------------------------

    def substitute(self, img_x: "Poly", img_y: "Poly") -> "Poly":
        """Evaluate self at (img_x, img_y); exact ring homomorphism."""
        self._require_same_mode(img_x)
        self._require_same_mode(img_y)
        if not self.terms:
            return Poly.zero(self.mode)
        if img_x.is_monomial and img_y.is_monomial:
            return self._substitute_monomial(img_x, img_y)
        neg = any(i < 0 or j < 0 for i, j in (unpack(k) for k in self.terms))
        if neg and not (img_x.is_unit and img_y.is_unit):
            raise ValueError("negative exponents need unit substitution images")
        # cache images' powers; exponent ranges are small in practice
        pow_x = _PowerCache(img_x)
        pow_y = _PowerCache(img_y)
        acc: dict[int, Fraction] = {}
        for key, coeff in self.terms.items():
            i, j = unpack(key)
            piece = pow_x.get(i) * pow_y.get(j)
            for pkey, pcoeff in piece.terms.items():
                new = acc.get(pkey, 0) + coeff * pcoeff
                if new == 0:
                    acc.pop(pkey, None)
                else:
                    acc[pkey] = new
        return Poly(acc, self.mode, _clean=True)

    def _substitute_monomial(self, img_x: "Poly", img_y: "Poly") -> "Poly":
        cx, ax, bx = img_x.monomial_data()
        cy, ay, by = img_y.monomial_data()
        out: dict[int, Fraction] = {}
        plain = cx == 1 and cy == 1
        for key, coeff in self.terms.items():
            i, j = unpack(key)
            ni = ax * i + ay * j
            nj = bx * i + by * j
            if self.mode is Mode.POLY and (ni < 0 or nj < 0):
                raise ValueError("substitution left POLY mode; negative exponent")
            if not plain:
                coeff = coeff * cx**i * cy**j
            nkey = pack(ni, nj)
            new = out.get(nkey, 0) + coeff
            if new == 0:
                out.pop(nkey, None)
            else:
                out[nkey] = new
        return Poly(out, self.mode, _clean=True)

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, j, coeff in self.iter_terms():
            factors = []
            if i != 0:
                factors.append("x" if i == 1 else f"x^{i}")
            if j != 0:
                factors.append("y" if j == 1 else f"y^{j}")
            mag = abs(coeff)
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, mode={self.mode.value})"


class _PowerCache:
    """Successive powers of one polynomial, computed on demand."""

    def __init__(self, base: Poly):
        self.base = base
        self.pos = [Poly.constant(1, base.mode)]
        self.neg: dict[int, Poly] = {}

    def get(self, n: int) -> Poly:
        if n < 0:
            out = self.neg.get(n)
            if out is None:
                out = self.base.unit_inverse() ** (-n)
                self.neg[n] = out
            return out
        while len(self.pos) <= n:
            self.pos.append(self.pos[-1] * self.base)
        return self.pos[n]


def _int_form(terms: dict[int, Fraction]) -> tuple[dict[int, int], int]:
    """Clear denominators: return (integer terms, common denominator)."""
    den = 1
    for coeff in terms.values():
        d = coeff.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return {k: c.numerator for k, c in terms.items()}, 1
    return {k: (c * den).numerator for k, c in terms.items()}, den


def _convolve(items1: list[tuple[int, int]], items2: list[tuple[int, int]]) -> dict[int, int]:
    if len(items1) > len(items2):
        items1, items2 = items2, items1
    out: dict[int, int] = {}
    get = out.get
    for e1, c1 in items1:
        for e2, c2 in items2:
            k = e1 + e2
            v = get(k)
            out[k] = c1 * c2 if v is None else v + c1 * c2
    return out


def _convolve_square(items: list[tuple[int, int]]) -> dict[int, int]:
    out: dict[int, int] = {}
    get = out.get
    n = len(items)
    for a in range(n):
        e1, c1 = items[a]
        k = e1 + e1
        v = get(k)
        out[k] = c1 * c1 if v is None else v + c1 * c1
        c2 = c1 + c1
        for e2, c3 in items[a + 1:]:
            k = e1 + e2
            v = get(k)
            out[k] = c2 * c3 if v is None else v + c2 * c3
    return out


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\^)|(\*)|(\+)|(-)|(/)|(.))")


def parse_poly(text: str, mode: Mode = Mode.POLY) -> Poly:
    """Parse strings like ``"1 + y - 2x^2"`` or ``"x^-1*y^3"`` (LAURENT)."""
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(8) is not None:
            raise ValueError(f"unexpected character {m.group(8)!r} in polynomial {text!r}")
        for idx, name in ((1, "num"), (2, "var"), (3, "pow"), (4, "mul"),
                          (5, "plus"), (6, "minus"), (7, "slash")):
            if m.group(idx) is not None:
                tokens.append((name, m.group(idx)))
                break
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_int() -> int:
        sign = 1
        while peek() == "minus":
            take()
            sign = -sign
        if peek() != "num":
            raise ValueError(f"expected integer in polynomial {text!r}")
        return sign * int(take()[1])

    def parse_factor() -> Poly:
        kind = peek()
        if kind == "num":
            value = Fraction(int(take()[1]))
            if peek() == "slash":
                take()
                if peek() != "num":
                    raise ValueError(f"expected denominator in {text!r}")
                value /= int(take()[1])
            return Poly.constant(value, mode)
        if kind == "var":
            name = take()[1]
            exp = 1
            if peek() == "pow":
                take()
                exp = parse_int()
            if name == "x":
                return Poly.monomial(1, exp, 0, mode)
            return Poly.monomial(1, 0, exp, mode)
        raise ValueError(f"unexpected token in polynomial {text!r}")

    def parse_term() -> Poly:
        out = parse_factor()
        while True:
            kind = peek()
            if kind == "mul":
                take()
                out = out * parse_factor()
            elif kind in ("num", "var"):
                out = out * parse_factor()
            else:
                return out

    def parse_expr() -> Poly:
        sign = 1
        while peek() in ("plus", "minus"):
            if take()[0] == "minus":
                sign = -sign
        out = parse_term() * sign
        while peek() in ("plus", "minus"):
            sign = 1
            while peek() in ("plus", "minus"):
                if take()[0] == "minus":
                    sign = -sign
            out = out + parse_term() * sign
        return out

    if not tokens:
        raise ValueError("empty polynomial string")
    result = parse_expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in polynomial {text!r}")
    return result


# module-level operation aliases

def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def substitute(f: Poly, img_x: Poly, img_y: Poly) -> Poly:
    return f.substitute(img_x, img_y)


def weighted_degree(f: Poly, w) -> int:
    return f.weighted_degree(w)
