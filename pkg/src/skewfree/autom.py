"""Automorphisms of k[x,y] and k[x^-1,y^-1]: construction, composition, iteration.

An automorphism carries verified images AND inverse images of x and y; both
round trips are checked when a value is built from user input.  Values
produced by composition or powering of already-verified automorphisms skip
the recheck (it holds by construction and would be expensive on the large
iterate images).

Convention, pinned by the tests: for a monomial map with matrix
``(a b; c d)`` the exponent action is ``x^i y^j -> x^(a*i+c*j) y^(b*i+d*j)``,
i.e. row vectors of exponents multiply the matrix from the left, and the
matrix of ``compose(s, t)`` is ``matrix(t) * matrix(s)``.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .exactnum import RatLike, as_rat
from .ring import Mode, Poly, parse_poly


class IntMat2:
    """A 2x2 integer matrix (a b; c d)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        for v in (a, b, c, d):
            if not isinstance(v, int):
                raise ValueError("matrix entries must be integers")
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls) -> "IntMat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_string(cls, text: str) -> "IntMat2":
        """Parse ``"a,b;c,d"``."""
        try:
            row1, row2 = text.split(";")
            a, b = (int(v) for v in row1.split(","))
            c, d = (int(v) for v in row2.split(","))
        except Exception as exc:
            raise ValueError(f"cannot parse matrix spec {text!r}; want 'a,b;c,d'") from exc
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __mul__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "IntMat2":
        det = self.det
        if det not in (1, -1):
            raise ValueError(f"matrix with det {det} is not invertible over the integers")
        return IntMat2(det * self.d, -det * self.b, -det * self.c, det * self.a)

    def __pow__(self, n: int) -> "IntMat2":
        if n < 0:
            return self.inverse() ** (-n)
        out = IntMat2.identity()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def apply_to(self, i: int, j: int) -> tuple[int, int]:
        """Row-vector action: (i, j) -> (a*i + c*j, b*i + d*j)."""
        return self.a * i + self.c * j, self.b * i + self.d * j

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def finite_order(self, max_k: int = 12) -> int | None:
        """Smallest k <= max_k with M^k = I, else None.

        Torsion orders in GL(2,Z) divide 12, so max_k = 12 is exhaustive.
        """
        power = IntMat2.identity()
        for k in range(1, max_k + 1):
            power = power * self
            if power == IntMat2.identity():
                return k
        return None

    def __eq__(self, other):
        return (isinstance(other, IntMat2)
                and (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d))

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def entries(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __repr__(self):
        return f"IntMat2({self.a}, {self.b}; {self.c}, {self.d})"

    def __str__(self):
        return f"{self.a},{self.b};{self.c},{self.d}"


class Kind(str, Enum):
    MONOMIAL = "MONOMIAL"
    ELEMENTARY = "ELEMENTARY"
    HENON = "HENON"
    CUSTOM = "CUSTOM"


class Automorphism:
    """A k-algebra automorphism of k[x,y] (POLY) or k[x^-1,y^-1] (LAURENT)."""

    __slots__ = ("mode", "img_x", "img_y", "inv_x", "inv_y", "kind", "matrix",
                 "spec", "_fwd_images", "_bwd_images")

    def __init__(self, img_x: Poly, img_y: Poly, inv_x: Poly, inv_y: Poly, *,
                 kind: Kind = Kind.CUSTOM, matrix: IntMat2 | None = None,
                 spec: str | None = None, verify: bool = True):
        mode = img_x.mode
        for p in (img_y, inv_x, inv_y):
            if p.mode is not mode:
                raise ValueError("all four images must share one mode")
        self.mode = mode
        self.img_x, self.img_y = img_x, img_y
        self.inv_x, self.inv_y = inv_x, inv_y
        self.kind = kind
        self.matrix = matrix
        self.spec = spec
        self._fwd_images: list[tuple[Poly, Poly]] = [(Poly.x(mode), Poly.y(mode))]
        self._bwd_images: list[tuple[Poly, Poly]] = [(Poly.x(mode), Poly.y(mode))]
        if verify:
            self._verify_inverse()

    def _verify_inverse(self) -> None:
        X, Y = Poly.x(self.mode), Poly.y(self.mode)
        checks = (
            self.img_x.substitute(self.inv_x, self.inv_y) == X,
            self.img_y.substitute(self.inv_x, self.inv_y) == Y,
            self.inv_x.substitute(self.img_x, self.img_y) == X,
            self.inv_y.substitute(self.img_x, self.img_y) == Y,
        )
        if not all(checks):
            raise ValueError("images and inverse images do not compose to the identity")

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, mode: Mode = Mode.POLY) -> "Automorphism":
        X, Y = Poly.x(mode), Poly.y(mode)
        matrix = IntMat2.identity() if mode is Mode.LAURENT else None
        kind = Kind.MONOMIAL if mode is Mode.LAURENT else Kind.ELEMENTARY
        return cls(X, Y, X, Y, kind=kind, matrix=matrix, verify=False)

    @classmethod
    def monomial(cls, matrix: IntMat2) -> "Automorphism":
        if matrix.det not in (1, -1):
            raise ValueError(
                f"det {matrix.det} is not +-1: not an automorphism of the Laurent ring")
        inv = matrix.inverse()
        mode = Mode.LAURENT
        img_x = Poly.monomial(1, matrix.a, matrix.b, mode)
        img_y = Poly.monomial(1, matrix.c, matrix.d, mode)
        inv_x = Poly.monomial(1, inv.a, inv.b, mode)
        inv_y = Poly.monomial(1, inv.c, inv.d, mode)
        return cls(img_x, img_y, inv_x, inv_y, kind=Kind.MONOMIAL, matrix=matrix)

    @classmethod
    def elementary(cls, a: RatLike, b: RatLike, c: RatLike, p: Poly) -> "Automorphism":
        """x -> a*x + p(y), y -> b*y + c with a, b nonzero and p univariate in y."""
        a, b, c = as_rat(a), as_rat(b), as_rat(c)
        if a == 0 or b == 0:
            raise ValueError("elementary automorphism needs a != 0 and b != 0")
        if p.mode is not Mode.POLY:
            raise ValueError("elementary automorphisms act on the polynomial ring")
        if not p.is_univariate_in("y"):
            raise ValueError("p must be a polynomial in y alone")
        mode = Mode.POLY
        X, Y = Poly.x(mode), Poly.y(mode)
        img_x = X * a + p
        img_y = Y * b + c
        y_back = (Y - c) * (Fraction(1) / b)
        inv_x = (X - p.substitute(X, y_back)) * (Fraction(1) / a)
        inv_y = y_back
        return cls(img_x, img_y, inv_x, inv_y, kind=Kind.ELEMENTARY)

    @classmethod
    def henon(cls, p: Poly, a: RatLike) -> "Automorphism":
        """x -> p(x) - a*y, y -> x with deg p >= 2 and a nonzero."""
        a = as_rat(a)
        if a == 0:
            raise ValueError("Henon automorphism needs a != 0")
        if p.mode is not Mode.POLY or not p.is_univariate_in("x"):
            raise ValueError("p must be a polynomial in x alone")
        if p.is_zero or p.degree_in("x") < 2:
            raise ValueError("Henon automorphism needs deg(p) >= 2")
        mode = Mode.POLY
        X, Y = Poly.x(mode), Poly.y(mode)
        img_x = p - Y * a
        img_y = X
        inv_x = Y
        inv_y = (p.substitute(Y, X) - X) * (Fraction(1) / a)
        return cls(img_x, img_y, inv_x, inv_y, kind=Kind.HENON)

    @classmethod
    def henon_quadratic(cls, a: RatLike, b: RatLike) -> "Automorphism":
        """The quadratic Henon family x -> 1 + y - a*x^2, y -> b*x (a, b nonzero)."""
        a, b = as_rat(a), as_rat(b)
        if a == 0 or b == 0:
            raise ValueError("the quadratic Henon family needs a != 0 and b != 0")
        mode = Mode.POLY
        X, Y = Poly.x(mode), Poly.y(mode)
        img_x = Poly.constant(1, mode) + Y - Poly.monomial(a, 2, 0, mode)
        img_y = X * b
        inv_x = Y * (Fraction(1) / b)
        inv_y = X - 1 + Poly.monomial(a / b**2, 0, 2, mode)
        kind = Kind.HENON if b == 1 else Kind.CUSTOM
        return cls(img_x, img_y, inv_x, inv_y, kind=kind)

    @classmethod
    def custom(cls, img_x: Poly, img_y: Poly, inv_x: Poly, inv_y: Poly) -> "Automorphism":
        return cls(img_x, img_y, inv_x, inv_y, kind=Kind.CUSTOM)

    # -- action -----------------------------------------------------------

    def apply(self, f: Poly) -> Poly:
        if f.mode is not self.mode:
            raise ValueError(f"mode mismatch: {f.mode.value} vs {self.mode.value}")
        return f.substitute(self.img_x, self.img_y)

    def iterated_images(self, n: int) -> tuple[Poly, Poly]:
        """Images of x and y under the n-th iterate (n may be negative)."""
        if n >= 0:
            cache, img_x, img_y = self._fwd_images, self.img_x, self.img_y
        else:
            cache, img_x, img_y = self._bwd_images, self.inv_x, self.inv_y
            n = -n
        while len(cache) <= n:
            X, Y = cache[-1]
            # sigma^(k+1)(x) = sigma^k(sigma(x)); the base image is small
            cache.append((img_x.substitute(X, Y), img_y.substitute(X, Y)))
        return cache[n]

    def apply_power(self, n: int, f: Poly) -> Poly:
        if f.mode is not self.mode:
            raise ValueError("mode mismatch")
        if n == 0 or f.is_zero:
            return f
        if self.matrix is not None:
            m = self.matrix**n
            img_x = Poly.monomial(1, m.a, m.b, self.mode)
            img_y = Poly.monomial(1, m.c, m.d, self.mode)
            return f.substitute(img_x, img_y)
        X, Y = self.iterated_images(n)
        return f.substitute(X, Y)

    def inverse(self) -> "Automorphism":
        matrix = self.matrix.inverse() if self.matrix is not None else None
        kind = Kind.MONOMIAL if matrix is not None else Kind.CUSTOM
        return Automorphism(self.inv_x, self.inv_y, self.img_x, self.img_y,
                            kind=kind, matrix=matrix, verify=False)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: apply(compose(s, t), f) == apply(s, apply(t, f))."""
        if self.mode is not other.mode:
            raise ValueError("mode mismatch in composition")
        img_x = other.img_x.substitute(self.img_x, self.img_y)
        img_y = other.img_y.substitute(self.img_x, self.img_y)
        inv_x = self.inv_x.substitute(other.inv_x, other.inv_y)
        inv_y = self.inv_y.substitute(other.inv_x, other.inv_y)
        matrix = None
        kind = Kind.CUSTOM
        if self.matrix is not None and other.matrix is not None:
            matrix = other.matrix * self.matrix
            kind = Kind.MONOMIAL
        return Automorphism(img_x, img_y, inv_x, inv_y, kind=kind, matrix=matrix,
                            verify=False)

    def power(self, n: int) -> "Automorphism":
        if n == 0:
            return Automorphism.identity(self.mode)
        if self.matrix is not None:
            return Automorphism.monomial(self.matrix**n)
        X, Y = self.iterated_images(n)
        iX, iY = self.iterated_images(-n)
        return Automorphism(X, Y, iX, iY, kind=Kind.CUSTOM, verify=False)

    # -- predicates -------------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return (self.img_x == Poly.x(self.mode)) and (self.img_y == Poly.y(self.mode))

    def same_map(self, other: "Automorphism") -> bool:
        return (self.mode is other.mode
                and self.img_x == other.img_x
                and self.img_y == other.img_y)

    def describe(self) -> str:
        if self.spec:
            return self.spec
        return f"x -> {self.img_x}, y -> {self.img_y}"

    def __repr__(self):
        return f"Automorphism({self.describe()}, mode={self.mode.value})"


# -- module-level operation aliases ----------------------------------------

def monomial_autom(matrix: IntMat2) -> Automorphism:
    return Automorphism.monomial(matrix)


def elementary_autom(a: RatLike, b: RatLike, c: RatLike, p: Poly) -> Automorphism:
    return Automorphism.elementary(a, b, c, p)


def henon_autom(p: Poly, a: RatLike) -> Automorphism:
    return Automorphism.henon(p, a)


def compose(sigma: Automorphism, tau: Automorphism) -> Automorphism:
    return sigma.compose(tau)


def power(sigma: Automorphism, n: int) -> Automorphism:
    return sigma.power(n)


def apply(sigma: Automorphism, f: Poly) -> Poly:
    return sigma.apply(f)


def parse_automorphism(spec: str, mode: Mode | None = None) -> Automorphism:
    """Parse CLI syntax: ``monomial:a,b;c,d``, ``elementary:a,b,c,p(y)``,
    ``henon:a,b`` (quadratic family), ``custom:img_x|img_y|inv_x|inv_y``."""
    if ":" not in spec:
        raise ValueError(f"automorphism spec {spec!r} needs a 'kind:' prefix")
    head, _, body = spec.partition(":")
    head = head.strip().lower()
    if head == "monomial":
        out = Automorphism.monomial(IntMat2.from_string(body))
    elif head == "elementary":
        parts = body.split(",", 3)
        if len(parts) != 4:
            raise ValueError(f"elementary spec needs 'a,b,c,p(y)', got {body!r}")
        a, b, c = (as_rat(v.strip()) for v in parts[:3])
        p = parse_poly(parts[3], Mode.POLY)
        out = Automorphism.elementary(a, b, c, p)
    elif head == "henon":
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"henon spec needs 'a,b', got {body!r}")
        out = Automorphism.henon_quadratic(as_rat(parts[0].strip()), as_rat(parts[1].strip()))
    elif head == "custom":
        parts = body.split("|")
        if len(parts) != 4:
            raise ValueError(f"custom spec needs 'img_x|img_y|inv_x|inv_y', got {body!r}")
        use_mode = mode or Mode.POLY
        polys = [parse_poly(part, use_mode) for part in parts]
        out = Automorphism.custom(*polys)
    else:
        raise ValueError(f"unknown automorphism kind {head!r}")
    out.spec = spec
    return out
