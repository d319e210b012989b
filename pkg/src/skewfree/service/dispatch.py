"""Shared execution engine behind the HTTP endpoints and the CLI.

``run`` maps a RunConfig to ``(exit_code, report_dict)``:

    0  verified / certified
    1  refuted, with a verified witness relation in the report
    2  inconclusive at the requested depth or horizon
    3  input error (malformed specs, contract violations, resource caps)

Reports are plain dictionaries with deterministic content: identical
configurations produce byte-identical serialized output.
"""

from __future__ import annotations

import re
from typing import Any, Callable

from .. import freeness, growth, monomial_analysis
from ..autom import Automorphism, IntMat2, parse_automorphism
from ..caps import ResourceCapError
from ..exactnum import as_rat
from ..ring import Mode, Poly, WeightedDegree, parse_poly
from ..skew import SkewPoly, parse_relation
from .models import SCHEMA_VERSION, RunConfig

EXIT_VERIFIED = 0
EXIT_REFUTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT_ERROR = 3


def run(config: RunConfig) -> tuple[int, dict[str, Any]]:
    handler = _HANDLERS[config.command]
    try:
        return handler(config)
    except (ValueError, ResourceCapError) as exc:
        report = {
            "schema": SCHEMA_VERSION,
            "command": config.command,
            "exit_code": EXIT_INPUT_ERROR,
            "error": str(exc),
        }
        return EXIT_INPUT_ERROR, report


def _base(config: RunConfig) -> dict[str, Any]:
    return {"schema": SCHEMA_VERSION, "command": config.command}


def _need_matrix(config: RunConfig) -> IntMat2:
    if not config.matrix:
        raise ValueError(f"command {config.command!r} needs a matrix (-M a,b;c,d)")
    return IntMat2.from_string(config.matrix)


def _need_sigma(config: RunConfig) -> Automorphism:
    if not config.sigma:
        raise ValueError(f"command {config.command!r} needs an automorphism (--sigma)")
    mode = Mode(config.mode) if config.mode else None
    return parse_automorphism(config.sigma, mode)


def _parse_generators(config: RunConfig, sigma: Automorphism) -> tuple[list[Poly], list[str]]:
    specs = [s.strip() for s in config.gens.split(",") if s.strip()]
    if len(specs) != 2:
        raise ValueError(f"need exactly two generators, got {config.gens!r}")
    polys = [parse_poly(s, sigma.mode) for s in specs]
    names = []
    for spec, poly, fallback in zip(specs, polys, ("a", "b")):
        names.append(spec if spec in ("x", "y") else fallback)
    return polys, names


_GEN_WITH_T = re.compile(r"^(?P<poly>.*?)\s*\*?\s*t(?:\^(?P<k>-?\d+))?\s*$")


def parse_skew_generator(text: str, sigma: Automorphism) -> SkewPoly:
    """Parse generator specs like ``t``, ``x*t``, ``y^2`` or ``x t^2``."""
    text = text.strip()
    m = _GEN_WITH_T.match(text)
    if m is not None:
        body = m.group("poly").strip()
        k = int(m.group("k")) if m.group("k") else 1
        poly = Poly.constant(1, sigma.mode) if not body else parse_poly(body, sigma.mode)
        return SkewPoly.from_poly(sigma, poly, k)
    return SkewPoly.from_poly(sigma, parse_poly(text, sigma.mode), 0)


def _quad_str(value) -> str | None:
    return None if value is None else str(value)


# -- handlers -----------------------------------------------------------------

def _run_classify(config: RunConfig) -> tuple[int, dict[str, Any]]:
    matrix = _need_matrix(config)
    result = monomial_analysis.classify(matrix)
    report = _base(config)
    report.update({
        "exit_code": EXIT_VERIFIED,
        "matrix": matrix.entries(),
        "trace": result.trace,
        "det": result.det,
        "rho": str(result.rho),
        "branch": result.branch,
        "order": result.order,
        "catalog": [
            {
                "condition": entry.condition,
                "relation": str(entry.relation),
                "t_degree": entry.relation.t_degree,
                "verified": entry.relation.verify(),
            }
            for entry in result.catalog
        ],
        "free_t_power_hint": result.free_t_power_hint,
        "even_t_power_hint": result.even_t_power_hint,
    })
    return EXIT_VERIFIED, report


def _run_check_free(config: RunConfig) -> tuple[int, dict[str, Any]]:
    sigma = _need_sigma(config)
    (gen_a, gen_b), names = _parse_generators(config, sigma)
    result = freeness.check_free(sigma, gen_a, gen_b, config.t_power, config.depth,
                                 names=(names[0], names[1]))
    if result.verdict == freeness.VERDICT_NOT_FREE:
        assert result.witness is not None and result.witness.verify()
        code = EXIT_REFUTED
    elif result.certificate in (freeness.CERT_VALUATION, freeness.CERT_DEGREE_DOUBLING):
        code = EXIT_VERIFIED
    else:
        code = EXIT_INCONCLUSIVE
    report = _base(config)
    report.update({
        "exit_code": code,
        "sigma": config.sigma,
        "mode": sigma.mode.value,
        "generators": [str(gen_a), str(gen_b)],
        "generator_names": list(result.generator_names),
        "t_power": result.t_power,
        "depth": result.depth,
        "dims": result.dims,
        "expected": result.expected,
        "verdict": result.verdict,
        "certificate": result.certificate,
        "witness": None if result.witness is None else str(result.witness),
        "first_deficient": result.first_deficient,
    })
    return code, report


def _run_certify(config: RunConfig) -> tuple[int, dict[str, Any]]:
    matrix = _need_matrix(config)
    result = monomial_analysis.valuation_certificate(matrix, config.t_power)
    certified = result.status == monomial_analysis.CERT_CERTIFIED
    code = EXIT_VERIFIED if certified else EXIT_INCONCLUSIVE
    p = config.t_power
    if certified:
        conclusion = (f"k{{x t^{p}, y t^{p}}} is free in every degree" if p != 1
                      else "k{x t, y t} is free in every degree")
    else:
        conclusion = "certificate not applicable at this power"
    report = _base(config)
    report.update({
        "exit_code": code,
        "matrix": matrix.entries(),
        "t_power": config.t_power,
        "status": result.status,
        "reason": result.reason,
        "beta": _quad_str(result.beta),
        "alpha": _quad_str(result.alpha),
        "nu_x": _quad_str(result.valuation.w_x) if result.valuation else None,
        "nu_y": _quad_str(result.valuation.w_y) if result.valuation else None,
        "conclusion": conclusion,
    })
    return code, report


def _run_verify_relation(config: RunConfig) -> tuple[int, dict[str, Any]]:
    sigma = _need_sigma(config)
    if not config.relation:
        raise ValueError("verify-relation needs a --relation string")
    (gen_a, gen_b), names = _parse_generators(config, sigma)
    bindings = {names[0]: gen_a, names[1]: gen_b}
    relation = parse_relation(config.relation, sigma, bindings, config.t_power)
    holds = relation.verify()
    code = EXIT_VERIFIED if holds else EXIT_REFUTED
    report = _base(config)
    report.update({
        "exit_code": code,
        "sigma": config.sigma,
        "relation": str(relation),
        "holds": holds,
        "t_degree": relation.t_degree,
    })
    return code, report


def _run_dims(config: RunConfig) -> tuple[int, dict[str, Any]]:
    matrix = _need_matrix(config)
    depth = config.depth
    dims_fast = dims_rank = None
    if config.oracle in ("fast", "both"):
        dims_fast = [monomial_analysis.exp_set_dimension(matrix, n)
                     for n in range(1, depth + 1)]
    if config.oracle in ("rank", "both"):
        sigma = Automorphism.monomial(matrix)
        x, y = Poly.x(Mode.LAURENT), Poly.y(Mode.LAURENT)
        dims_rank = [freeness.component_dimension(sigma, x, y, n)
                     for n in range(1, depth + 1)]
    if dims_fast is not None and dims_rank is not None and dims_fast != dims_rank:
        raise AssertionError("exponent-set and rank dimensions disagree")
    expected = [2**n for n in range(1, depth + 1)]
    observed = dims_fast if dims_fast is not None else dims_rank
    report = _base(config)
    report.update({
        "exit_code": EXIT_VERIFIED,
        "matrix": matrix.entries(),
        "depth": depth,
        "dims_fast": dims_fast,
        "dims_rank": dims_rank,
        "expected": expected,
        "all_maximal": observed == expected,
    })
    return EXIT_VERIFIED, report


def _run_henon_degrees(config: RunConfig) -> tuple[int, dict[str, Any]]:
    a, b = as_rat(config.a), as_rat(config.b)
    sigma = Automorphism.henon_quadratic(a, b)
    try:
        w_parts = [int(v) for v in config.weights.split(",")]
        weights = WeightedDegree(*w_parts)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"cannot parse weights {config.weights!r}; want 'w_x,w_y'") from exc
    horizon = config.horizon
    degrees_x = []
    degrees_y = []
    for n in range(horizon + 1):
        X, Y = sigma.iterated_images(n)
        degrees_x.append(X.weighted_degree(weights))
        degrees_y.append(Y.weighted_degree(weights))
    g = parse_poly(config.g, Mode.POLY)
    doubling = freeness.degree_doubling_certificate(sigma, g, weights, horizon)
    code = EXIT_VERIFIED if doubling.status == "CERTIFIED" else EXIT_INCONCLUSIVE
    report = _base(config)
    report.update({
        "exit_code": code,
        "a": str(a),
        "b": str(b),
        "weights": [weights.w_x, weights.w_y],
        "horizon": horizon,
        "degrees_x": degrees_x,
        "degrees_y": degrees_y,
        "doubling_element": str(g),
        "doubling_status": doubling.status,
        "doubling_degrees": doubling.degrees,
        "min_t_power": doubling.min_t_power,
        "failed_at": doubling.failed_at,
    })
    return code, report


def _run_growth(config: RunConfig) -> tuple[int, dict[str, Any]]:
    sigma = _need_sigma(config)
    specs = [s.strip() for s in config.gens.split(",") if s.strip()]
    if not specs:
        raise ValueError("growth needs at least one generator")
    gens = [parse_skew_generator(s, sigma) for s in specs]
    builder = growth.graded_dims if config.graded else growth.filtration_dims
    series = builder(gens, config.length)
    estimate = growth.gk_estimate(series) if len(series.dims) >= 8 else None
    report = _base(config)
    report.update({
        "exit_code": EXIT_VERIFIED,
        "sigma": config.sigma,
        "generators": [str(g) for g in gens],
        "length": config.length,
        "graded": config.graded,
        "basis_spec": series.basis_spec,
        "dims": series.dims,
        "classification": estimate.classification if estimate else "SERIES_TOO_SHORT",
        "raw_slope": estimate.raw_slope if estimate else None,
        "degree": estimate.degree if estimate else None,
        "growth_rate": estimate.growth_rate if estimate else None,
    })
    return EXIT_VERIFIED, report


def _run_parity(config: RunConfig) -> tuple[int, dict[str, Any]]:
    matrix = _need_matrix(config)
    status = monomial_analysis.parity_obstruction(matrix)
    report = _base(config)
    report.update({
        "exit_code": EXIT_VERIFIED,
        "matrix": matrix.entries(),
        "status": status,
        "row_parities": [(matrix.a + matrix.b) % 2, (matrix.c + matrix.d) % 2],
    })
    return EXIT_VERIFIED, report


_HANDLERS: dict[str, Callable[[RunConfig], tuple[int, dict[str, Any]]]] = {
    "classify": _run_classify,
    "check-free": _run_check_free,
    "certify": _run_certify,
    "verify-relation": _run_verify_relation,
    "dims": _run_dims,
    "henon-degrees": _run_henon_degrees,
    "growth": _run_growth,
    "parity": _run_parity,
}
