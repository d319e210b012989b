"""Growth series for subspaces of the twisted ring, and desk-scale GK estimates.

dim(W^n) is computed exactly by streaming products of basis representatives
into an incremental integer echelon form.  The GK estimate is a windowed
regression, labelled a heuristic: it never proves a dimension, it reads a
slope off the observed series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .caps import check_entries
from .linalg import IntEchelon, clear_denominators
from .skew import SkewPoly

CLASS_POLYNOMIAL = "POLYNOMIAL"
CLASS_EXPONENTIAL = "EXPONENTIAL"


@dataclass
class GrowthSeries:
    dims: list[int]          # dims[n] = dim of the n-th space, n = 0..N
    basis_spec: str
    graded: bool


@dataclass
class GkEstimate:
    classification: str
    raw_slope: float
    degree: int | None = None        # rounded slope, POLYNOMIAL only
    growth_rate: float | None = None  # fitted ratio, EXPONENTIAL only


def _skew_vector(u: SkewPoly) -> dict[tuple[int, int], Fraction]:
    out: dict[tuple[int, int], Fraction] = {}
    for t_deg, poly in u.coeffs.items():
        for key, coeff in poly.terms.items():
            out[(t_deg, key)] = coeff
    return out


def _to_int_vector(u: SkewPoly) -> dict[tuple[int, int], int]:
    ints, _ = clear_denominators(_skew_vector(u))
    return ints


def _check_shared_sigma(gens: list[SkewPoly]) -> None:
    if not gens:
        raise ValueError("need at least one generator")
    sigma = gens[0].sigma
    for g in gens[1:]:
        if not g.sigma.same_map(sigma):
            raise ValueError("all generators must live over one automorphism")


def _spec_string(gens: list[SkewPoly], with_one: bool) -> str:
    parts = (["1"] if with_one else []) + [str(g) for g in gens]
    return "span{" + ", ".join(parts) + "}"


def filtration_dims(gens: list[SkewPoly], n_max: int) -> GrowthSeries:
    """Exact dim(W^n) for W = span(1, gens) and n = 0..n_max."""
    _check_shared_sigma(gens)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    sigma = gens[0].sigma
    echelon = IntEchelon()
    one = SkewPoly.one(sigma)
    echelon.insert(_to_int_vector(one))
    dims = [len(echelon)]
    frontier = [one]
    for _ in range(n_max):
        next_frontier: list[SkewPoly] = []
        for f in frontier:
            for g in gens:
                h = f * g
                if h.is_zero:
                    continue
                if echelon.insert(_to_int_vector(h)):
                    next_frontier.append(h)
        check_entries(echelon.nnz(), "growth filtration")
        dims.append(len(echelon))
        frontier = next_frontier
        if not frontier:
            # span stabilized: remaining dims are constant
            while len(dims) <= n_max:
                dims.append(dims[-1])
            break
    return GrowthSeries(dims=dims, basis_spec=_spec_string(gens, True), graded=False)


def graded_dims(gens: list[SkewPoly], n_max: int) -> GrowthSeries:
    """Exact dim of span(products of exactly n generators) for n = 0..n_max."""
    _check_shared_sigma(gens)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    sigma = gens[0].sigma
    dims = [1]
    frontier = [SkewPoly.one(sigma)]
    for _ in range(n_max):
        echelon = IntEchelon()
        next_frontier: list[SkewPoly] = []
        for f in frontier:
            for g in gens:
                h = f * g
                if h.is_zero:
                    continue
                if echelon.insert(_to_int_vector(h)):
                    next_frontier.append(h)
        check_entries(echelon.nnz(), "graded growth")
        dims.append(len(echelon))
        frontier = next_frontier
        if not frontier:
            while len(dims) <= n_max:
                dims.append(0)
            break
    return GrowthSeries(dims=dims, basis_spec=_spec_string(gens, False), graded=True)


def _least_squares_slope(points: list[tuple[float, float]]) -> float:
    n = len(points)
    mean_x = sum(p[0] for p in points) / n
    mean_y = sum(p[1] for p in points) / n
    sxx = sum((p[0] - mean_x) ** 2 for p in points)
    sxy = sum((p[0] - mean_x) * (p[1] - mean_y) for p in points)
    if sxx == 0:
        return 0.0
    return sxy / sxx


def _fit_residual(points: list[tuple[float, float]]) -> float:
    slope = _least_squares_slope(points)
    n = len(points)
    mean_x = sum(p[0] for p in points) / n
    mean_y = sum(p[1] for p in points) / n
    intercept = mean_y - slope * mean_x
    return sum((y - (slope * x + intercept)) ** 2 for x, y in points)


def gk_estimate(series: GrowthSeries) -> GkEstimate:
    """Windowed growth classification; a heuristic, never a theorem.

    EXPONENTIAL needs the top quartile of the series to clear (6/5)^n exactly
    AND the semilog fit to beat the log-log fit; otherwise the log-log slope
    over the upper half window is reported as a polynomial degree.
    """
    dims = series.dims
    n_max = len(dims) - 1
    if len(dims) < 8:
        raise ValueError("series too short: need at least 8 entries")
    window = [n for n in range(2, n_max + 1) if dims[n] >= 1]
    if len(window) < 4:
        raise ValueError("series too sparse to fit")
    semilog = [(float(n), math.log(dims[n])) for n in window]
    loglog = [(math.log(n), math.log(dims[n])) for n in window]
    upper = [n for n in window if n >= max(2, n_max // 2)]
    upper_loglog = [(math.log(n), math.log(dims[n])) for n in upper]
    raw_slope = _least_squares_slope(upper_loglog)

    quartile = [n for n in window if n > n_max - max(1, (n_max + 3) // 4)]
    # dims[n] >= (6/5)^n decided in integers
    gate = all(dims[n] * 5**n >= 6**n for n in quartile)
    exponential_shape = _fit_residual(semilog) < _fit_residual(loglog)
    if gate and exponential_shape:
        upper_semilog = [(float(n), math.log(dims[n])) for n in upper]
        rate = math.exp(_least_squares_slope(upper_semilog))
        return GkEstimate(classification=CLASS_EXPONENTIAL,
                          raw_slope=round(raw_slope, 6),
                          growth_rate=round(rate, 6))
    return GkEstimate(classification=CLASS_POLYNOMIAL,
                      raw_slope=round(raw_slope, 6),
                      degree=round(raw_slope))
