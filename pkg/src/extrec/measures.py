"""Extropy-type information functionals of distributions and their k-records.

All cdf-based measures are evaluated in quantile form, i.e. as integrals of
``w(u) / dqf`` over (0, 1), which treats bounded and unbounded supports
uniformly; the direct support-form integrals are provided as independent
cross-check routines (``*_via_support``).  Plain and generalized, base-level
and record-level measures share one integral core, so the reduction
identities (m=2 generalized == plain, n=k=1 record == base) hold exactly.

Divergent measures come back as signed markers (value +/-inf), never as a
saturated finite number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .dist import Distribution
from .quad import DEFAULT_TOL, QuadResult, QuadStatus, integrate_support, integrate_unit
from .records import SIDES, PhiKernel, RecordLaw

__all__ = [
    "MeasureValue",
    "extropy",
    "crj",
    "cpj",
    "gcrj",
    "gcpj",
    "record_crj_upper",
    "record_cpj_lower",
    "record_gcrj_upper",
    "record_gcpj_lower",
    "kij_record",
    "crij_upper",
    "cpij_lower",
    "extropy_via_quantile",
    "crj_via_support",
    "cpj_via_support",
    "gcrj_via_support",
    "gcpj_via_support",
    "record_crj_upper_via_support",
    "record_cpj_lower_via_support",
    "kij_record_via_support",
    "crij_upper_via_support",
    "cpij_lower_via_support",
]


@dataclass(frozen=True)
class MeasureValue:
    """A computed functional: finite value or signed divergence marker.

    ``value`` is +/-inf when the defining integral diverges (``quad_status``
    then carries the matching diverged status, oriented after the -1/2
    prefactor).  Every finite extropy-type value is <= 0.
    """

    measure_id: str
    value: float
    quad_status: QuadStatus
    abs_error: float
    params: Mapping[str, object] = field(default_factory=dict)

    @property
    def is_finite(self) -> bool:
        return self.quad_status is QuadStatus.CONVERGED

    @property
    def is_divergent(self) -> bool:
        return self.quad_status in (QuadStatus.DIVERGED_POSITIVE, QuadStatus.DIVERGED_NEGATIVE)

    def display(self) -> str:
        if self.quad_status is QuadStatus.DIVERGED_POSITIVE:
            return "divergent(+)"
        if self.quad_status is QuadStatus.DIVERGED_NEGATIVE:
            return "divergent(-)"
        if self.quad_status is QuadStatus.NO_CONVERGENCE:
            return "no_convergence"
        return f"{self.value:.12g}"


def scaled_result(measure_id: str, qr: QuadResult, scale: float,
                  params: Mapping[str, object] | None = None) -> MeasureValue:
    """Apply a constant prefactor to a QuadResult, reorienting divergence signs."""
    status = qr.status
    if status is QuadStatus.CONVERGED:
        return MeasureValue(measure_id, scale * qr.value, status,
                            abs(scale) * qr.abs_error_estimate, dict(params or {}))
    if status is QuadStatus.DIVERGED_POSITIVE or status is QuadStatus.DIVERGED_NEGATIVE:
        positive = (status is QuadStatus.DIVERGED_POSITIVE) == (scale > 0)
        status = QuadStatus.DIVERGED_POSITIVE if positive else QuadStatus.DIVERGED_NEGATIVE
        return MeasureValue(measure_id, math.inf if positive else -math.inf,
                            status, math.inf, dict(params or {}))
    return MeasureValue(measure_id, math.nan, status, math.inf, dict(params or {}))


def _validate_nkm(n: int, k: int, m: int = 1) -> None:
    for label, v in (("n", n), ("k", k), ("m", m)):
        if not (isinstance(v, int) and v >= 1):
            raise ValueError(f"{label} must be an integer >= 1, got {v!r}")


def _phi_power_quantile(d: Distribution, n: int, k: int, m: int,
                        complement: bool, tol: float) -> QuadResult:
    """Core integral of phi_n(u)^m over the reciprocal density-quantile."""
    phi = PhiKernel(n, k)
    den: Callable[[float], float] = d.dqf_c if complement else d.dqf

    def f(u: float) -> float:
        return phi._eval(u) ** m / den(u)

    return integrate_unit(f, tol)


def extropy(d: Distribution, tol: float = DEFAULT_TOL) -> MeasureValue:
    """J(X) = -1/2 * integral of f^2 over the support."""
    qr = integrate_support(lambda x: d.pdf(x) ** 2, d.support, tol)
    return scaled_result("extropy", qr, -0.5)


def crj(d: Distribution, tol: float = DEFAULT_TOL) -> MeasureValue:
    """Cumulative residual extropy, -1/2 * integral of u^2/dqf(1-u)."""
    qr = _phi_power_quantile(d, 1, 1, 2, complement=True, tol=tol)
    return scaled_result("crj", qr, -0.5)


def cpj(d: Distribution, tol: float = DEFAULT_TOL) -> MeasureValue:
    """Cumulative past extropy, -1/2 * integral of u^2/dqf(u)."""
    qr = _phi_power_quantile(d, 1, 1, 2, complement=False, tol=tol)
    return scaled_result("cpj", qr, -0.5)


def gcrj(d: Distribution, m: int, tol: float = DEFAULT_TOL) -> MeasureValue:
    """Generalized cumulative residual extropy of order m."""
    _validate_nkm(1, 1, m)
    qr = _phi_power_quantile(d, 1, 1, m, complement=True, tol=tol)
    return scaled_result("gcrj", qr, -0.5, {"m": m})


def gcpj(d: Distribution, m: int, tol: float = DEFAULT_TOL) -> MeasureValue:
    """Generalized cumulative past extropy of order m."""
    _validate_nkm(1, 1, m)
    qr = _phi_power_quantile(d, 1, 1, m, complement=False, tol=tol)
    return scaled_result("gcpj", qr, -0.5, {"m": m})


def record_crj_upper(d: Distribution, n: int, k: int, tol: float = DEFAULT_TOL) -> MeasureValue:
    """CRJ of the n-th upper k-record, -1/2 * integral of phi_n^2(u)/dqf(1-u)."""
    _validate_nkm(n, k)
    qr = _phi_power_quantile(d, n, k, 2, complement=True, tol=tol)
    return scaled_result("record_crj_upper", qr, -0.5, {"n": n, "k": k})


def record_cpj_lower(d: Distribution, n: int, k: int, tol: float = DEFAULT_TOL) -> MeasureValue:
    """CPJ of the n-th lower k-record, -1/2 * integral of phi_n^2(u)/dqf(u)."""
    _validate_nkm(n, k)
    qr = _phi_power_quantile(d, n, k, 2, complement=False, tol=tol)
    return scaled_result("record_cpj_lower", qr, -0.5, {"n": n, "k": k})


def record_gcrj_upper(d: Distribution, n: int, k: int, m: int,
                      tol: float = DEFAULT_TOL) -> MeasureValue:
    """Order-m GCRJ of the n-th upper k-record."""
    _validate_nkm(n, k, m)
    qr = _phi_power_quantile(d, n, k, m, complement=True, tol=tol)
    return scaled_result("record_gcrj_upper", qr, -0.5, {"n": n, "k": k, "m": m})


def record_gcpj_lower(d: Distribution, n: int, k: int, m: int,
                      tol: float = DEFAULT_TOL) -> MeasureValue:
    """Order-m GCPJ of the n-th lower k-record."""
    _validate_nkm(n, k, m)
    qr = _phi_power_quantile(d, n, k, m, complement=False, tol=tol)
    return scaled_result("record_gcpj_lower", qr, -0.5, {"n": n, "k": k, "m": m})


def _record_pdf_weight(n: int, k: int) -> Callable[[float], float]:
    # k * u^(k-1) * (-k log u)^(n-1) / (n-1)!  -- the record density in u-space
    if n <= 20:
        inv_fact = 1.0 / math.factorial(n - 1)
    else:
        inv_fact = math.exp(-math.lgamma(n))

    def w(u: float) -> float:
        lam = -k * math.log(u)
        return k * u ** (k - 1) * lam ** (n - 1) * inv_fact

    return w


def kij_record(d: Distribution, n: int, k: int, side: str,
               tol: float = DEFAULT_TOL) -> MeasureValue:
    """Inaccuracy extropy between the (n, k) record law and the base law.

    Upper: -1/2 * integral of w(u) * dqf(1-u); lower: same with dqf(u),
    where w is the record density transported to u-space.
    """
    _validate_nkm(n, k)
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    w = _record_pdf_weight(n, k)
    den = d.dqf_c if side == "upper" else d.dqf

    def f(u: float) -> float:
        return w(u) * den(u)

    qr = integrate_unit(f, tol)
    return scaled_result("kij_record", qr, -0.5, {"n": n, "k": k, "side": side})


def crij_upper(d: Distribution, n: int, k: int, tol: float = DEFAULT_TOL) -> MeasureValue:
    """Cumulative residual extropy inaccuracy of the upper record vs the base.

    Kernel psi(u) = u * phi_n(u) = u^(k+1) * sum_{i<n} (-k log u)^i / i!.
    """
    _validate_nkm(n, k)
    phi = PhiKernel(n, k)

    def f(u: float) -> float:
        return u * phi._eval(u) / d.dqf_c(u)

    qr = integrate_unit(f, tol)
    return scaled_result("crij_upper", qr, -0.5, {"n": n, "k": k})


def cpij_lower(d: Distribution, n: int, k: int, tol: float = DEFAULT_TOL) -> MeasureValue:
    """Cumulative past extropy inaccuracy of the lower record vs the base."""
    _validate_nkm(n, k)
    phi = PhiKernel(n, k)

    def f(u: float) -> float:
        return u * phi._eval(u) / d.dqf(u)

    qr = integrate_unit(f, tol)
    return scaled_result("cpij_lower", qr, -0.5, {"n": n, "k": k})


# ---------------------------------------------------------------------------
# Support-form cross-checks.  These integrate over the x-axis directly and are
# kept as independent oracles for the quantile-form primaries above.


def extropy_via_quantile(d: Distribution, tol: float = DEFAULT_TOL) -> MeasureValue:
    qr = integrate_unit(lambda u: d.dqf(u), tol)
    return scaled_result("extropy", qr, -0.5)


def _support_power(d: Distribution, g: Callable[[float], float], m: int, tol: float) -> QuadResult:
    return integrate_support(lambda x: g(x) ** m, d.support, tol)


def crj_via_support(d: Distribution, tol: float = DEFAULT_TOL) -> MeasureValue:
    return scaled_result("crj", _support_power(d, d.sf, 2, tol), -0.5)


def cpj_via_support(d: Distribution, tol: float = DEFAULT_TOL) -> MeasureValue:
    return scaled_result("cpj", _support_power(d, d.cdf, 2, tol), -0.5)


def gcrj_via_support(d: Distribution, m: int, tol: float = DEFAULT_TOL) -> MeasureValue:
    _validate_nkm(1, 1, m)
    return scaled_result("gcrj", _support_power(d, d.sf, m, tol), -0.5, {"m": m})


def gcpj_via_support(d: Distribution, m: int, tol: float = DEFAULT_TOL) -> MeasureValue:
    _validate_nkm(1, 1, m)
    return scaled_result("gcpj", _support_power(d, d.cdf, m, tol), -0.5, {"m": m})


def record_crj_upper_via_support(d: Distribution, n: int, k: int,
                                 tol: float = DEFAULT_TOL) -> MeasureValue:
    law = RecordLaw(d, n, k, "upper")
    qr = integrate_support(lambda x: (1.0 - law.cdf(x)) ** 2, d.support, tol)
    return scaled_result("record_crj_upper", qr, -0.5, {"n": n, "k": k})


def record_cpj_lower_via_support(d: Distribution, n: int, k: int,
                                 tol: float = DEFAULT_TOL) -> MeasureValue:
    law = RecordLaw(d, n, k, "lower")
    qr = integrate_support(lambda x: law.cdf(x) ** 2, d.support, tol)
    return scaled_result("record_cpj_lower", qr, -0.5, {"n": n, "k": k})


def kij_record_via_support(d: Distribution, n: int, k: int, side: str,
                           tol: float = DEFAULT_TOL) -> MeasureValue:
    law = RecordLaw(d, n, k, side)
    qr = integrate_support(lambda x: law.pdf(x) * d.pdf(x), d.support, tol)
    return scaled_result("kij_record", qr, -0.5, {"n": n, "k": k, "side": side})


def crij_upper_via_support(d: Distribution, n: int, k: int,
                           tol: float = DEFAULT_TOL) -> MeasureValue:
    law = RecordLaw(d, n, k, "upper")
    qr = integrate_support(lambda x: (1.0 - law.cdf(x)) * d.sf(x), d.support, tol)
    return scaled_result("crij_upper", qr, -0.5, {"n": n, "k": k})


def cpij_lower_via_support(d: Distribution, n: int, k: int,
                           tol: float = DEFAULT_TOL) -> MeasureValue:
    law = RecordLaw(d, n, k, "lower")
    qr = integrate_support(lambda x: law.cdf(x) * d.cdf(x), d.support, tol)
    return scaled_result("cpij_lower", qr, -0.5, {"n": n, "k": k})
