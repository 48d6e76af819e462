"""Catalog of analytic continuous distributions.

Each law exposes ``pdf``/``cdf``/``sf``/``quantile`` together with the
density-quantile function ``dqf(u) = f(F^-1(u))`` and its complement form
``dqf_c(u) = f(F^-1(1-u))``.  The complement is a first-class method because
every quantile-space integral downstream needs it evaluated without the
catastrophic cancellation of computing ``1 - u`` first; catalog members
provide closed forms (for symmetric laws it coincides with ``dqf`` exactly).

Spec-string grammar (see :func:`make_distribution`)::

    name
    name:key=value
    name:key=value,key=value

Keys are case-sensitive, values are decimal literals (scientific notation
accepted).  Catalog: ``uniform``, ``exponential(rate)``, ``power(theta)``,
``pareto(theta)``, ``normal(mu, sigma)``, ``laplace(mu, b)``,
``logistic(mu, s)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

__all__ = [
    "DistributionError",
    "SpecParseError",
    "Distribution",
    "Uniform",
    "Exponential",
    "PowerFunction",
    "Pareto",
    "Normal",
    "Laplace",
    "Logistic",
    "Scaled",
    "CATALOG",
    "make_distribution",
    "sample",
    "scale",
]

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)


class DistributionError(ValueError):
    """Invalid distribution parameter or argument."""


class SpecParseError(DistributionError):
    """Malformed or out-of-domain distribution spec string."""


class Distribution:
    """Continuous law over an open interval support.

    Subclasses provide ``pdf``/``cdf`` and the support; ``quantile`` falls
    back to bracketed bisection on the cdf with a Newton polish (tolerance
    1e-12, at most 200 bisections), so user-defined laws only need the two
    basics.  All instances are immutable and safe for concurrent use.
    """

    name: ClassVar[str] = "distribution"

    @property
    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    @property
    def params(self) -> dict[str, float]:
        return {}

    def pdf(self, x: float) -> float:
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def sf(self, x: float) -> float:
        """Survival function; override when 1 - cdf loses the right tail."""
        return 1.0 - self.cdf(x)

    def quantile(self, u: float) -> float:
        _check_unit_open(u)
        lo, hi = self._bracket(u)
        # Bisection to ~1e-12 relative bracket width, then Newton polish.
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) < u:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-12 * max(1.0, abs(lo), abs(hi)):
                break
        x = 0.5 * (lo + hi)
        for _ in range(3):
            fx = self.pdf(x)
            if fx <= 0.0:
                break
            step = (self.cdf(x) - u) / fx
            x_new = x - step
            if not lo <= x_new <= hi:
                break
            x = x_new
            if abs(step) <= 1e-15 * max(1.0, abs(x)):
                break
        return x

    def _bracket(self, u: float) -> tuple[float, float]:
        lo, hi = self.support
        if math.isinf(lo):
            lo = min(hi, 0.0) - 1.0 if math.isinf(hi) else hi - 1.0
            step = 1.0
            while self.cdf(lo) > u:
                lo -= step
                step *= 2.0
        if math.isinf(hi):
            hi = max(lo, 0.0) + 1.0
            step = 1.0
            while self.cdf(hi) < u:
                hi += step
                step *= 2.0
        return lo, hi

    def dqf(self, u: float) -> float:
        """Density-quantile function f(F^-1(u)), u in (0, 1)."""
        _check_unit_open(u)
        return self.pdf(self.quantile(u))

    def dqf_c(self, u: float) -> float:
        """Complement form f(F^-1(1-u)); override with a stable closed form."""
        _check_unit_open(u)
        return self.dqf(1.0 - u)

    def quantile_array(self, u: np.ndarray) -> np.ndarray:
        return np.fromiter((self.quantile(float(v)) for v in np.ravel(u)),
                           dtype=float, count=np.size(u))

    def spec_string(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.name}:{inner}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec_string()!r})"


def _check_unit_open(u: float) -> None:
    if not 0.0 < u < 1.0:
        raise DistributionError(f"u must lie strictly inside (0, 1), got {u!r}")


@dataclass(frozen=True, repr=False)
class Uniform(Distribution):
    """Uniform law on (0, 1)."""

    name: ClassVar[str] = "uniform"

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def pdf(self, x: float) -> float:
        return 1.0 if 0.0 < x < 1.0 else 0.0

    def cdf(self, x: float) -> float:
        return min(1.0, max(0.0, x))

    def quantile(self, u: float) -> float:
        _check_unit_open(u)
        return u

    def dqf(self, u: float) -> float:
        _check_unit_open(u)
        return 1.0

    dqf_c = dqf

    def quantile_array(self, u: np.ndarray) -> np.ndarray:
        return np.asarray(u, dtype=float).copy()


@dataclass(frozen=True, repr=False)
class Exponential(Distribution):
    """Exponential law with the given rate; support (0, inf)."""

    rate: float = 1.0
    name: ClassVar[str] = "exponential"

    def __post_init__(self):
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DistributionError(f"exponential: rate must be > 0, got {self.rate}")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    @property
    def params(self) -> dict[str, float]:
        return {"rate": self.rate}

    def pdf(self, x: float) -> float:
        return self.rate * math.exp(-self.rate * x) if x > 0.0 else 0.0

    def cdf(self, x: float) -> float:
        return -math.expm1(-self.rate * x) if x > 0.0 else 0.0

    def sf(self, x: float) -> float:
        return math.exp(-self.rate * x) if x > 0.0 else 1.0

    def quantile(self, u: float) -> float:
        _check_unit_open(u)
        return -math.log1p(-u) / self.rate

    def dqf(self, u: float) -> float:
        _check_unit_open(u)
        return self.rate * (1.0 - u)

    def dqf_c(self, u: float) -> float:
        _check_unit_open(u)
        return self.rate * u

    def quantile_array(self, u: np.ndarray) -> np.ndarray:
        return -np.log1p(-np.asarray(u, dtype=float)) / self.rate


@dataclass(frozen=True, repr=False)
class PowerFunction(Distribution):
    """Power-function law: density theta * x^(theta-1) on (0, 1)."""

    theta: float = 1.0
    name: ClassVar[str] = "power"

    def __post_init__(self):
        if not (self.theta > 0 and math.isfinite(self.theta)):
            raise DistributionError(f"power: theta must be > 0, got {self.theta}")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, 1.0)

    @property
    def params(self) -> dict[str, float]:
        return {"theta": self.theta}

    def pdf(self, x: float) -> float:
        return self.theta * x ** (self.theta - 1.0) if 0.0 < x < 1.0 else 0.0

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return min(1.0, x ** self.theta)

    def quantile(self, u: float) -> float:
        _check_unit_open(u)
        return u ** (1.0 / self.theta)

    def dqf(self, u: float) -> float:
        _check_unit_open(u)
        return self.theta * u ** ((self.theta - 1.0) / self.theta)

    def dqf_c(self, u: float) -> float:
        _check_unit_open(u)
        return self.theta * (1.0 - u) ** ((self.theta - 1.0) / self.theta)

    def quantile_array(self, u: np.ndarray) -> np.ndarray:
        return np.asarray(u, dtype=float) ** (1.0 / self.theta)


@dataclass(frozen=True, repr=False)
class Pareto(Distribution):
    """Pareto law: density theta * x^(-theta-1) on (1, inf)."""

    theta: float = 1.0
    name: ClassVar[str] = "pareto"

    def __post_init__(self):
        if not (self.theta > 0 and math.isfinite(self.theta)):
            raise DistributionError(f"pareto: theta must be > 0, got {self.theta}")

    @property
    def support(self) -> tuple[float, float]:
        return (1.0, math.inf)

    @property
    def params(self) -> dict[str, float]:
        return {"theta": self.theta}

    def pdf(self, x: float) -> float:
        return self.theta * x ** (-self.theta - 1.0) if x > 1.0 else 0.0

    def cdf(self, x: float) -> float:
        return -math.expm1(-self.theta * math.log(x)) if x > 1.0 else 0.0

    def sf(self, x: float) -> float:
        return x ** -self.theta if x > 1.0 else 1.0

    def quantile(self, u: float) -> float:
        _check_unit_open(u)
        return (1.0 - u) ** (-1.0 / self.theta)

    def dqf(self, u: float) -> float:
        _check_unit_open(u)
        return self.theta * (1.0 - u) ** ((self.theta + 1.0) / self.theta)

    def dqf_c(self, u: float) -> float:
        _check_unit_open(u)
        return self.theta * u ** ((self.theta + 1.0) / self.theta)

    def quantile_array(self, u: np.ndarray) -> np.ndarray:
        return (1.0 - np.asarray(u, dtype=float)) ** (-1.0 / self.theta)


# Acklam's rational approximation to the standard normal quantile
# (|relative error| < 1.15e-9), refined below by one Halley step.
_ACK_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
          1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_ACK_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
          6.680131188771972e+01, -1.328068155288572e+01)
_ACK_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
          -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_ACK_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
          3.754408661907416e+00)
_ACK_PLOW = 0.02425


def _std_normal_tail_x(p: float) -> float:
    """Lower-tail branch of the rational approximation, p < _ACK_PLOW."""
    q = math.sqrt(-2.0 * math.log(p))
    c, d = _ACK_C, _ACK_D
    num = ((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]
    den = (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
    return num / den


def _std_normal_quantile(p: float) -> float:
    if p < _ACK_PLOW:
        x = _std_normal_tail_x(p)
    elif p > 1.0 - _ACK_PLOW:
        x = -_std_normal_tail_x(1.0 - p)
    else:
        q = p - 0.5
        r = q * q
        a, b = _ACK_A, _ACK_B
        num = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
        den = ((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0
        x = num / den
    if abs(x) < 8.0:  # Halley polish; skipped in the far tail where exp overflows
        e = 0.5 * math.erfc(-x / _SQRT2) - p
        t = e * _SQRT2PI * math.exp(0.5 * x * x)
        x -= t / (1.0 + 0.5 * x * t)
    return x


@dataclass(frozen=True, repr=False)
class Normal(Distribution):
    """Normal law with mean mu and standard deviation sigma."""

    mu: float = 0.0
    sigma: float = 1.0
    name: ClassVar[str] = "normal"

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DistributionError(f"normal: sigma must be > 0, got {self.sigma}")
        if not math.isfinite(self.mu):
            raise DistributionError(f"normal: mu must be finite, got {self.mu}")

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    @property
    def params(self) -> dict[str, float]:
        return {"mu": self.mu, "sigma": self.sigma}

    def pdf(self, x: float) -> float:
        z = (x - self.mu) / self.sigma
        return math.exp(-0.5 * z * z) / (self.sigma * _SQRT2PI)

    def cdf(self, x: float) -> float:
        z = (x - self.mu) / self.sigma
        return 0.5 * math.erfc(-z / _SQRT2)

    def sf(self, x: float) -> float:
        z = (x - self.mu) / self.sigma
        return 0.5 * math.erfc(z / _SQRT2)

    def quantile(self, u: float) -> float:
        _check_unit_open(u)
        return self.mu + self.sigma * _std_normal_quantile(u)

    def dqf(self, u: float) -> float:
        return self.pdf(self.quantile(u))

    def dqf_c(self, u: float) -> float:
        # symmetric about mu: f(F^-1(1-u)) == f(F^-1(u))
        return self.dqf(u)


@dataclass(frozen=True, repr=False)
class Laplace(Distribution):
    """Laplace law with location mu and scale b."""

    mu: float = 0.0
    b: float = 1.0
    name: ClassVar[str] = "laplace"

    def __post_init__(self):
        if not (self.b > 0 and math.isfinite(self.b)):
            raise DistributionError(f"laplace: b must be > 0, got {self.b}")
        if not math.isfinite(self.mu):
            raise DistributionError(f"laplace: mu must be finite, got {self.mu}")

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    @property
    def params(self) -> dict[str, float]:
        return {"mu": self.mu, "b": self.b}

    def pdf(self, x: float) -> float:
        return math.exp(-abs(x - self.mu) / self.b) / (2.0 * self.b)

    def cdf(self, x: float) -> float:
        z = (x - self.mu) / self.b
        return 0.5 * math.exp(z) if z < 0.0 else 1.0 - 0.5 * math.exp(-z)

    def sf(self, x: float) -> float:
        z = (x - self.mu) / self.b
        return 0.5 * math.exp(-z) if z > 0.0 else 1.0 - 0.5 * math.exp(z)

    def quantile(self, u: float) -> float:
        _check_unit_open(u)
        if u < 0.5:
            return self.mu + self.b * math.log(2.0 * u)
        if u > 0.5:
            return self.mu - self.b * math.log(2.0 * (1.0 - u))
        return self.mu

    def dqf(self, u: float) -> float:
        _check_unit_open(u)
        return min(u, 1.0 - u) / self.b

    dqf_c = dqf


@dataclass(frozen=True, repr=False)
class Logistic(Distribution):
    """Logistic law with location mu and scale s."""

    mu: float = 0.0
    s: float = 1.0
    name: ClassVar[str] = "logistic"

    def __post_init__(self):
        if not (self.s > 0 and math.isfinite(self.s)):
            raise DistributionError(f"logistic: s must be > 0, got {self.s}")
        if not math.isfinite(self.mu):
            raise DistributionError(f"logistic: mu must be finite, got {self.mu}")

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    @property
    def params(self) -> dict[str, float]:
        return {"mu": self.mu, "s": self.s}

    def pdf(self, x: float) -> float:
        t = math.exp(-abs(x - self.mu) / self.s)
        return t / (self.s * (1.0 + t) ** 2)

    def cdf(self, x: float) -> float:
        z = (x - self.mu) / self.s
        if z >= 0.0:
            return 1.0 / (1.0 + math.exp(-z))
        t = math.exp(z)
        return t / (1.0 + t)

    def sf(self, x: float) -> float:
        return self.cdf(2.0 * self.mu - x)

    def quantile(self, u: float) -> float:
        _check_unit_open(u)
        return self.mu + self.s * (math.log(u) - math.log1p(-u))

    def dqf(self, u: float) -> float:
        _check_unit_open(u)
        return u * (1.0 - u) / self.s

    dqf_c = dqf


@dataclass(frozen=True, repr=False)
class Scaled(Distribution):
    """Law of a*X for a base law X and a > 0; used for scale-covariance checks."""

    base: Distribution = None  # type: ignore[assignment]
    a: float = 1.0
    name: ClassVar[str] = "scaled"

    def __post_init__(self):
        if self.base is None:
            raise DistributionError("scaled: base distribution required")
        if not (self.a > 0 and math.isfinite(self.a)):
            raise DistributionError(f"scaled: a must be > 0, got {self.a}")

    @property
    def support(self) -> tuple[float, float]:
        lo, hi = self.base.support
        return (self.a * lo, self.a * hi)

    @property
    def params(self) -> dict[str, float]:
        return {"a": self.a, **{f"base_{k}": v for k, v in self.base.params.items()}}

    def pdf(self, x: float) -> float:
        return self.base.pdf(x / self.a) / self.a

    def cdf(self, x: float) -> float:
        return self.base.cdf(x / self.a)

    def sf(self, x: float) -> float:
        return self.base.sf(x / self.a)

    def quantile(self, u: float) -> float:
        return self.a * self.base.quantile(u)

    def dqf(self, u: float) -> float:
        return self.base.dqf(u) / self.a

    def dqf_c(self, u: float) -> float:
        return self.base.dqf_c(u) / self.a

    def quantile_array(self, u: np.ndarray) -> np.ndarray:
        return self.a * self.base.quantile_array(u)


def scale(d: Distribution, a: float) -> Scaled:
    return Scaled(base=d, a=a)


CATALOG: dict[str, type[Distribution]] = {
    cls.name: cls
    for cls in (Uniform, Exponential, PowerFunction, Pareto, Normal, Laplace, Logistic)
}


def make_distribution(spec: str) -> Distribution:
    """Build a catalog member from a spec string like ``power:theta=2``.

    Raises :class:`SpecParseError` on unknown names, malformed key=value
    pairs, or parameters outside their domain.
    """
    if not isinstance(spec, str) or not spec.strip():
        raise SpecParseError(f"empty distribution spec {spec!r}")
    name, _, rest = spec.strip().partition(":")
    cls = CATALOG.get(name)
    if cls is None:
        known = ", ".join(sorted(CATALOG))
        raise SpecParseError(f"unknown distribution {name!r}; expected one of: {known}")
    kwargs: dict[str, float] = {}
    if rest:
        valid = {f.name for f in cls.__dataclass_fields__.values()}  # type: ignore[attr-defined]
        for item in rest.split(","):
            key, eq, raw = item.partition("=")
            key = key.strip()
            if not eq or not key or not raw.strip():
                raise SpecParseError(f"malformed parameter {item!r} in spec {spec!r}; expected key=value")
            if key not in valid:
                raise SpecParseError(f"unknown parameter {key!r} for {name!r}; expected one of: "
                                     + ", ".join(sorted(valid)))
            if key in kwargs:
                raise SpecParseError(f"duplicate parameter {key!r} in spec {spec!r}")
            try:
                val = float(raw.strip())
            except ValueError:
                raise SpecParseError(f"parameter {key!r} has non-decimal value {raw.strip()!r}") from None
            if not math.isfinite(val):
                raise SpecParseError(f"parameter {key!r} must be finite, got {raw.strip()!r}")
            kwargs[key] = val
    try:
        return cls(**kwargs)
    except DistributionError as exc:
        raise SpecParseError(f"bad parameters in spec {spec!r}: {exc}") from None


def sample(d: Distribution, count: int, seed: int) -> np.ndarray:
    """``count`` iid draws from ``d`` by inverse transform; deterministic in ``seed``."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    u = rng.random(count)
    # keep draws strictly inside (0, 1) for quantile safety
    np.maximum(u, 2.0 ** -53, out=u)
    return d.quantile_array(u)
