"""Fast exact analysis of monomial automorphisms of the Laurent ring.

For sigma(x) = x^a y^b, sigma(y) = x^c y^d everything reduces to integer
matrix arithmetic: graded dimensions are cardinalities of exponent-vector
sumsets, and an eigenvector (1, alpha) of the matrix yields the valuation
nu(x^i y^j) = i + j*alpha with nu(sigma(z)) = beta*nu(z), which certifies
freeness in all degrees once |beta| >= 2 and nu(x) != nu(y).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .autom import Automorphism, IntMat2
from .caps import check_depth, check_entries, max_monomial_depth
from .exactnum import QuadExt, quad_abs_geq, squarefree_decompose
from .ring import Mode, Poly
from .skew import Letter, Relation, Word

BRANCH_FINITE_ORDER = "FINITE_ORDER"
BRANCH_UNIPOTENT = "UNIPOTENT"
BRANCH_GOLDEN = "GOLDEN"
BRANCH_LARGE = "LARGE"

GOLDEN_RATIO = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)

CERT_CERTIFIED = "CERTIFIED"
CERT_NOT_APPLICABLE = "NOT_APPLICABLE"

OBSTRUCTED = "OBSTRUCTED"
NOT_OBSTRUCTED = "NOT_OBSTRUCTED"


@dataclass
class Valuation:
    """nu(x^i y^j) = i + j*alpha, scaled by beta under the automorphism."""

    w_x: QuadExt
    w_y: QuadExt
    beta: QuadExt

    def value(self, i: int, j: int) -> QuadExt:
        return self.w_x * i + self.w_y * j

    def of_poly(self, f: Poly) -> QuadExt:
        """min of the term values; the standard monomial valuation."""
        if f.is_zero:
            raise ValueError("the zero polynomial has no valuation")
        return min(self.value(i, j) for i, j, _ in f.iter_terms())

    @property
    def alpha(self) -> QuadExt:
        return self.w_y


@dataclass
class CatalogRelation:
    condition: str
    relation: Relation


@dataclass
class ClassificationReport:
    matrix: IntMat2
    trace: int
    det: int
    rho: QuadExt
    branch: str
    order: int | None
    catalog: list[CatalogRelation]
    free_t_power_hint: int | None
    even_t_power_hint: int | None


@dataclass
class CertificateResult:
    status: str
    matrix: IntMat2
    t_power: int
    reason: str | None = None
    beta: QuadExt | None = None
    alpha: QuadExt | None = None
    valuation: Valuation | None = None


def _require_unimodular(matrix: IntMat2) -> None:
    if matrix.det not in (1, -1):
        raise ValueError(f"det {matrix.det} is not +-1")


def spectral_radius(matrix: IntMat2) -> QuadExt:
    """rho(M), exactly, from the characteristic polynomial."""
    _require_unimodular(matrix)
    tr, det = matrix.trace, matrix.det
    disc = tr * tr - 4 * det
    if disc < 0:
        # complex conjugate pair with |lambda|^2 = det = 1
        return QuadExt(1)
    s, d = squarefree_decompose(disc)
    if d in (0, 1):
        # perfect-square discriminant: rational eigenvalues (tr +- sq)/2
        sq = s if d == 1 else 0
        lam1 = abs(Fraction(tr + sq, 2))
        lam2 = abs(Fraction(tr - sq, 2))
        return QuadExt(max(lam1, lam2))
    return QuadExt(Fraction(abs(tr), 2), Fraction(s, 2), d)


def eigen_data(matrix: IntMat2) -> Valuation:
    """The eigenvalue of largest modulus and the slope of its (1, alpha) eigenvector.

    Defined when the eigenvalues are real and irrational (equivalently
    rho(M) > 1 for a unimodular matrix).
    """
    _require_unimodular(matrix)
    tr, det = matrix.trace, matrix.det
    disc = tr * tr - 4 * det
    if disc < 0:
        raise ValueError("no real eigenvalues")
    if disc == 0:
        raise ValueError("repeated eigenvalue; no dominant direction")
    s, d = squarefree_decompose(disc)
    if d == 1:
        raise ValueError("rational eigenvalues have modulus 1 here; no valuation")
    if matrix.b == 0:
        raise ValueError("b = 0 admits no eigenvector of the form (1, alpha)")
    sign = 1 if tr > 0 else -1
    beta = QuadExt(Fraction(tr, 2), Fraction(sign * s, 2), d)
    alpha = (beta - matrix.a) / Fraction(matrix.b)
    # exact eigen equation check: M acts on (1, alpha) as multiplication by beta
    if matrix.a + alpha * matrix.b != beta or QuadExt(matrix.c) + alpha * matrix.d != alpha * beta:
        raise AssertionError("eigen data failed its exactness check")
    if alpha == 1:
        raise AssertionError("alpha = 1 cannot occur for an irrational eigenvalue")
    return Valuation(w_x=QuadExt(1), w_y=alpha, beta=beta)


def word_exponents(matrix: IntMat2, n: int) -> set[tuple[int, int]]:
    """Exponent vectors of all 2^n degree-n words in x and y.

    These are the sums e_(i_0) + e_(i_1) M + ... + e_(i_(n-1)) M^(n-1) over
    row vectors e_1, e_2, built by exact integer set arithmetic.
    """
    _require_unimodular(matrix)
    check_depth(n, max_monomial_depth(), "exponent sumset")
    sums = {(0, 0)}
    power = IntMat2.identity()
    for _ in range(n):
        (r1a, r1b), (r2a, r2b) = power.rows()
        sums = {step
                for (i, j) in sums
                for step in ((i + r1a, j + r1b), (i + r2a, j + r2b))}
        check_entries(len(sums), "exponent sumset")
        power = power * matrix
    return sums


def exp_set_dimension(matrix: IntMat2, n: int) -> int:
    """Dimension of the degree-n component: the number of distinct exponents."""
    if n < 1:
        raise ValueError("the degree must be positive")
    return len(word_exponents(matrix, n))


def valuation_certificate(matrix: IntMat2, t_power: int = 1) -> CertificateResult:
    """Certify k{x t^p, y t^p} free in ALL degrees, or report why not.

    CERTIFIED needs the powered matrix to have a real eigenvalue of modulus
    >= 2 with an eigenvector slope alpha != 1; the induced valuation then
    separates all 2^n word values in every degree.
    """
    _require_unimodular(matrix)
    if t_power < 1:
        raise ValueError("t_power must be positive")
    powered = matrix**t_power
    try:
        val = eigen_data(powered)
    except ValueError as exc:
        return CertificateResult(status=CERT_NOT_APPLICABLE, matrix=matrix,
                                 t_power=t_power, reason=str(exc))
    if not quad_abs_geq(val.beta, 2):
        return CertificateResult(
            status=CERT_NOT_APPLICABLE, matrix=matrix, t_power=t_power,
            reason=f"|beta| = |{val.beta}| < 2", beta=val.beta, alpha=val.alpha,
            valuation=val)
    if val.alpha == 1:
        return CertificateResult(
            status=CERT_NOT_APPLICABLE, matrix=matrix, t_power=t_power,
            reason="nu(x) = nu(y)", beta=val.beta, alpha=val.alpha, valuation=val)
    return CertificateResult(status=CERT_CERTIFIED, matrix=matrix, t_power=t_power,
                             beta=val.beta, alpha=val.alpha, valuation=val)


def parity_obstruction(matrix: IntMat2) -> str:
    """OBSTRUCTED iff a+b = c+d (mod 2): every graded piece then sits in one
    total-degree parity class, so the algebra generated by xt, yt contains no
    unit-rescaled copy of the full coordinate ring."""
    _require_unimodular(matrix)
    if (matrix.a + matrix.b) % 2 == (matrix.c + matrix.d) % 2:
        return OBSTRUCTED
    return NOT_OBSTRUCTED


# -- relation catalog ---------------------------------------------------------

def _word(sigma: Automorphism, x: Poly, y: Poly, pattern: str) -> Word:
    gens = {"x": x, "y": y}
    return Word(sigma, [Letter(ch, gens[ch], 1) for ch in pattern])


def _difference_relation(sigma: Automorphism, left: str, right: str) -> Relation:
    x, y = Poly.x(Mode.LAURENT), Poly.y(Mode.LAURENT)
    return Relation({
        _word(sigma, x, y, left): Fraction(1),
        _word(sigma, x, y, right): Fraction(-1),
    })


def catalog_relations(matrix: IntMat2) -> list[CatalogRelation]:
    """All trace/det-indexed identities satisfied by xt and yt for this matrix."""
    _require_unimodular(matrix)
    sigma = Automorphism.monomial(matrix)
    tr, det = matrix.trace, matrix.det
    entries: list[CatalogRelation] = []

    def add(condition: str, left: str, right: str) -> None:
        entries.append(CatalogRelation(condition, _difference_relation(sigma, left, right)))

    if tr == 0:
        add("trace 0 (fourth power is the identity)", "xxxxyyyy", "yyyyxxxx")
    if tr == 1 and det == -1:
        add("trace 1, det -1", "xxy", "yyx")
    if tr == -1 and det == -1:
        add("trace -1, det -1", "xyy", "yxx")
    if det == 1 and tr == 2:
        add("trace 2, det 1", "xyyx", "yxxy")
    if det == 1 and tr == -2:
        add("trace -2, det 1", "xxyy", "yyxx")
    if det == 1 and tr == 1:
        add("trace 1, det 1", "xyx", "yxy")
        add("trace 1, det 1 (sixth power is the identity)",
            "xxxxxxyyyyyy", "yyyyyyxxxxxx")
    if det == 1 and tr == -1:
        add("trace -1, det 1", "xxx", "yyy")
    order = matrix.finite_order()
    if order is not None:
        add(f"finite order {order}", "x" * order + "y" * order,
            "y" * order + "x" * order)
    return entries


def classify(matrix: IntMat2) -> ClassificationReport:
    """Exact spectral classification with the applicable relation catalog.

    Branches: FINITE_ORDER (rho = 1 and M^k = I for some k <= 12),
    UNIPOTENT (rho = 1, infinite order: trace +-2, det 1, M != +-I),
    GOLDEN (rho = (1+sqrt(5))/2), LARGE (rho > 2).
    """
    _require_unimodular(matrix)
    rho = spectral_radius(matrix)
    order = matrix.finite_order()
    if rho == 1:
        branch = BRANCH_FINITE_ORDER if order is not None else BRANCH_UNIPOTENT
    elif rho == GOLDEN_RATIO:
        branch = BRANCH_GOLDEN
    else:
        branch = BRANCH_LARGE
        if not rho > 2:
            raise AssertionError("trichotomy violated: 1 < rho <= 2 off the golden value")
    free_hint: int | None = None
    even_hint: int | None = None
    if rho > 1:
        for p in range(1, 5):
            if valuation_certificate(matrix, p).status == CERT_CERTIFIED:
                free_hint = p
                break
        for p in range(2, 9, 2):
            if valuation_certificate(matrix, p).status == CERT_CERTIFIED:
                even_hint = p
                break
    return ClassificationReport(
        matrix=matrix,
        trace=matrix.trace,
        det=matrix.det,
        rho=rho,
        branch=branch,
        order=order,
        catalog=catalog_relations(matrix),
        free_t_power_hint=free_hint,
        even_t_power_hint=even_hint,
    )
