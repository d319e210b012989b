"""The twisted polynomial ring R[t;sigma] and its Laurent version R[t,t^-1;sigma].

Elements are finite sums sum_i f_i t^i with f_i in R; the product is the
bilinear extension of (f t^i)(g t^j) = f sigma^i(g) t^(i+j).  Words over a
finite alphabet of generators (each a ring coefficient with a t-power), and
linear combinations thereof, are the witnesses handled by the freeness
engine.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, NamedTuple

from .autom import Automorphism
from .exactnum import as_rat
from .ring import Mode, Poly


class SkewPoly:
    """A finite sum ``sum_i f_i t^i`` tied to one automorphism.

    Negative t-degrees are only allowed when the automorphism lives on the
    Laurent ring, where the ambient object is the skew Laurent extension.
    """

    __slots__ = ("sigma", "coeffs")

    def __init__(self, sigma: Automorphism, coeffs: dict[int, Poly]):
        cleaned: dict[int, Poly] = {}
        for deg, poly in coeffs.items():
            if poly.is_zero:
                continue
            if poly.mode is not sigma.mode:
                raise ValueError("coefficient mode differs from the automorphism mode")
            if deg < 0 and sigma.mode is not Mode.LAURENT:
                raise ValueError("negative t-degrees need the skew Laurent extension")
            cleaned[deg] = poly
        self.sigma = sigma
        self.coeffs = cleaned

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, sigma: Automorphism) -> "SkewPoly":
        return cls(sigma, {})

    @classmethod
    def one(cls, sigma: Automorphism) -> "SkewPoly":
        return cls(sigma, {0: Poly.constant(1, sigma.mode)})

    @classmethod
    def from_poly(cls, sigma: Automorphism, f: Poly, t_degree: int = 0) -> "SkewPoly":
        return cls(sigma, {t_degree: f})

    @classmethod
    def t(cls, sigma: Automorphism, power: int = 1) -> "SkewPoly":
        return cls(sigma, {power: Poly.constant(1, sigma.mode)})

    # -- plumbing ---------------------------------------------------------

    def _require_same_ring(self, other: "SkewPoly") -> None:
        if self.sigma is not other.sigma and not self.sigma.same_map(other.sigma):
            raise ValueError("operands live over different automorphisms")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, t_degree: int) -> Poly:
        return self.coeffs.get(t_degree, Poly.zero(self.sigma.mode))

    def t_degrees(self) -> list[int]:
        return sorted(self.coeffs)

    @property
    def is_homogeneous(self) -> bool:
        return len(self.coeffs) <= 1

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = SkewPoly.from_poly(self.sigma, _as_poly(other, self.sigma.mode))
        if not isinstance(other, SkewPoly):
            return NotImplemented
        self._require_same_ring(other)
        out = dict(self.coeffs)
        for deg, poly in other.coeffs.items():
            acc = out.get(deg)
            merged = poly if acc is None else acc + poly
            if merged.is_zero:
                out.pop(deg, None)
            else:
                out[deg] = merged
        return SkewPoly(self.sigma, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly(self.sigma, {d: -p for d, p in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = SkewPoly.from_poly(self.sigma, _as_poly(other, self.sigma.mode))
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            f = _as_poly(other, self.sigma.mode)
            return SkewPoly(self.sigma, {d: p * f for d, p in self.coeffs.items()})
        if not isinstance(other, SkewPoly):
            return NotImplemented
        self._require_same_ring(other)
        out: dict[int, Poly] = {}
        for i, f in self.coeffs.items():
            for j, g in other.coeffs.items():
                piece = f * self.sigma.apply_power(i, g)
                deg = i + j
                acc = out.get(deg)
                merged = piece if acc is None else acc + piece
                if merged.is_zero:
                    out.pop(deg, None)
                else:
                    out[deg] = merged
        return SkewPoly(self.sigma, out)

    def __rmul__(self, other):
        # ring elements and scalars commute past nothing: f * (g t^j) = (f g) t^j
        if isinstance(other, (int, Fraction, Poly)):
            f = _as_poly(other, self.sigma.mode)
            return SkewPoly(self.sigma, {d: f * p for d, p in self.coeffs.items()})
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.sigma.same_map(other.sigma) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted((d, p) for d, p in self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for deg in sorted(self.coeffs):
            f = self.coeffs[deg]
            body = str(f) if f.num_terms == 1 else f"({f})"
            if deg == 0:
                pieces.append(body)
            else:
                t = "t" if deg == 1 else f"t^{deg}"
                pieces.append(t if body == "1" else f"{body}*{t}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"SkewPoly({str(self)!r})"


def _as_poly(value, mode: Mode) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.constant(value, mode)


def skew_mul(u: SkewPoly, v: SkewPoly) -> SkewPoly:
    return u * v


# -- words ------------------------------------------------------------------

class Letter(NamedTuple):
    name: str
    poly: Poly
    t_power: int


class Word:
    """A product of generator letters, e.g. (xt)(xt)(yt)."""

    __slots__ = ("sigma", "letters")

    def __init__(self, sigma: Automorphism, letters: Iterable[Letter]):
        letters = tuple(letters)
        if not letters:
            raise ValueError("a word needs at least one letter")
        for letter in letters:
            if letter.poly.mode is not sigma.mode:
                raise ValueError("letter coefficients must share the automorphism mode")
        self.sigma = sigma
        self.letters = letters

    @property
    def t_degree(self) -> int:
        return sum(letter.t_power for letter in self.letters)

    def name_key(self) -> tuple[str, ...]:
        return tuple(letter.name for letter in self.letters)

    def expand(self) -> SkewPoly:
        """Multiply the letters out: coefficient prod_k sigma^(d_k)(f_k) at t^sum."""
        shift = 0
        coeff = Poly.constant(1, self.sigma.mode)
        for letter in self.letters:
            coeff = coeff * self.sigma.apply_power(shift, letter.poly)
            shift += letter.t_power
        return SkewPoly(self.sigma, {shift: coeff})

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.sigma.same_map(other.sigma) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        pieces = []
        run_start = 0
        letters = self.letters
        for idx in range(1, len(letters) + 1):
            if idx == len(letters) or letters[idx] != letters[run_start]:
                letter = letters[run_start]
                t = "t" if letter.t_power == 1 else f"t^{letter.t_power}"
                atom = f"({letter.name}{t})"
                count = idx - run_start
                pieces.append(atom if count == 1 else f"{atom}^{count}")
                run_start = idx
        return "".join(pieces)

    def __repr__(self):
        return f"Word({str(self)!r})"


def expand_word(word: Word) -> SkewPoly:
    return word.expand()


# -- relations ---------------------------------------------------------------

class Relation:
    """An exact linear dependence among words of one t-degree.

    ``sum coeff * expand(word) == 0`` must hold; ``verify`` recomputes it.
    """

    __slots__ = ("sigma", "terms")

    def __init__(self, terms: dict[Word, Fraction]):
        items = [(w, as_rat(c)) for w, c in terms.items() if c != 0]
        if len(items) < 2:
            raise ValueError("a relation needs at least two nonzero terms")
        degrees = {w.t_degree for w, _ in items}
        if len(degrees) != 1:
            raise ValueError("all words in a relation must share one t-degree")
        sigma = items[0][0].sigma
        for w, _ in items:
            if not w.sigma.same_map(sigma):
                raise ValueError("all words must live over one automorphism")
        items.sort(key=lambda item: item[0].name_key())
        self.sigma = sigma
        self.terms = tuple(items)

    @property
    def t_degree(self) -> int:
        return self.terms[0][0].t_degree

    def verify(self) -> bool:
        total = SkewPoly.zero(self.sigma)
        for word, coeff in self.terms:
            total = total + word.expand() * coeff
        return total.is_zero

    def __str__(self):
        pieces = []
        for word, coeff in self.terms:
            mag = abs(coeff)
            body = str(word) if mag == 1 else f"{mag}*{word}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"Relation({str(self)!r})"


# -- structural isomorphisms --------------------------------------------------

def conjugate_map(u: SkewPoly, tau: Automorphism) -> SkewPoly:
    """Image of u under f t^j -> tau(f) s^j, landing in R[s; tau sigma tau^-1]."""
    if tau.mode is not u.sigma.mode:
        raise ValueError("mode mismatch in conjugation")
    new_sigma = tau.compose(u.sigma).compose(tau.inverse())
    return SkewPoly(new_sigma, {d: tau.apply(f) for d, f in u.coeffs.items()})


def gauge_map(u: SkewPoly, a: Poly) -> SkewPoly:
    """Degree-preserving twist g t^m -> a_m g t^m with a_m = a sigma(a)...sigma^(m-1)(a).

    Requires a to be a unit (a Laurent monomial, or a nonzero scalar), so
    that the negative-degree factors a_(-m) = sigma^(-m)(a_m)^(-1) exist.
    """
    if not a.is_unit:
        raise ValueError("the gauge element must be a unit of the coefficient ring")
    if a.mode is not u.sigma.mode:
        raise ValueError("mode mismatch in gauge twist")
    sigma = u.sigma
    out: dict[int, Poly] = {}
    for deg, f in u.coeffs.items():
        out[deg] = _gauge_factor(sigma, a, deg) * f
    return SkewPoly(sigma, out)


def _gauge_factor(sigma: Automorphism, a: Poly, m: int) -> Poly:
    if m == 0:
        return Poly.constant(1, a.mode)
    if m > 0:
        acc = Poly.constant(1, a.mode)
        for i in range(m):
            acc = acc * sigma.apply_power(i, a)
        return acc
    positive = _gauge_factor(sigma, a, -m)
    return sigma.apply_power(m, positive).unit_inverse()


# -- word parsing -------------------------------------------------------------

_ATOM = re.compile(
    r"\(\s*(?P<name>[A-Za-z][A-Za-z0-9_]*?)\s*t(?:\^(?P<tp>\d+))?\s*\)(?:\^(?P<rep>\d+))?"
)


def parse_word(text: str, sigma: Automorphism, bindings: dict[str, Poly],
               t_power: int = 1) -> Word:
    """Parse word syntax like ``(xt)^2(yt)`` against named generators."""
    letters: list[Letter] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _ATOM.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        name = m.group("name")
        if name not in bindings:
            raise ValueError(f"unknown generator {name!r} in word {text!r}")
        tp = int(m.group("tp")) if m.group("tp") else t_power
        rep = int(m.group("rep")) if m.group("rep") else 1
        letters.extend([Letter(name, bindings[name], tp)] * rep)
        pos = m.end()
    if not letters:
        raise ValueError(f"empty word {text!r}")
    return Word(sigma, letters)


def parse_relation(text: str, sigma: Automorphism, bindings: dict[str, Poly],
                   t_power: int = 1) -> Relation:
    """Parse a linear combination of words, e.g. ``(xt)^2(yt) - (yt)^2(xt)``."""
    terms: dict[Word, Fraction] = {}
    pos = 0
    text = text.strip()
    sign = 1
    coeff_re = re.compile(r"\s*(?:(\d+)(?:/(\d+))?\s*\*?)?\s*")
    while pos < len(text):
        while pos < len(text) and text[pos] in "+- \t":
            if text[pos] == "-":
                sign = -sign
            pos = pos + 1
        if pos >= len(text):
            break
        m = coeff_re.match(text, pos)
        coeff = Fraction(1)
        if m and m.group(1):
            coeff = Fraction(int(m.group(1)), int(m.group(2) or 1))
            pos = m.end()
        else:
            pos = m.end() if m else pos
        start = pos
        letters: list[Letter] = []
        while pos < len(text):
            atom = _ATOM.match(text, pos)
            if atom is None:
                break
            name = atom.group("name")
            if name not in bindings:
                raise ValueError(f"unknown generator {name!r} in relation {text!r}")
            tp = int(atom.group("tp")) if atom.group("tp") else t_power
            rep = int(atom.group("rep")) if atom.group("rep") else 1
            letters.extend([Letter(name, bindings[name], tp)] * rep)
            pos = atom.end()
        if not letters:
            raise ValueError(f"cannot parse relation {text!r} at position {start}")
        word = Word(sigma, letters)
        terms[word] = terms.get(word, Fraction(0)) + sign * coeff
        sign = 1
    if not terms:
        raise ValueError(f"empty relation {text!r}")
    return Relation(terms)
