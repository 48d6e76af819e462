"""Laws of the n-th upper/lower k-record of an iid sequence.

The n-th upper k-record of X_1, X_2, ... is the value that becomes the k-th
largest observation when, for the n-th time, a new observation enters the
running top-k (for n = 1 this is the k-th largest of the first k draws,
i.e. their minimum).  Lower k-records mirror with the running bottom-k.

The analytic cdf of either record is a composition of the base cdf with the
kernel ``phi_n(u) = u^k * sum_{i<n} (-k log u)^i / i!``, which is also the
lower tail of a Poisson(-k log u) variable at n-1; all record-level measure
integrals downstream are built from that kernel.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dist import Distribution

__all__ = ["PhiKernel", "RecordLaw", "RecordSample", "simulate_records", "SIDES"]

SIDES = ("upper", "lower")

#: Largest -k*log(u) for which the plain ascending recurrence is safe; above
#: this the terms can overflow for large n and we switch to the log domain.
_LAM_DIRECT_MAX = 680.0


@dataclass(frozen=True)
class PhiKernel:
    """Kernel u -> u^k * sum_{i=0}^{n-1} (-k log u)^i / i! on (0, 1).

    Nondecreasing, with limits 0 at 0+ and 1 at 1-.
    """

    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError(f"k must be an integer >= 1, got {self.k!r}")

    def __call__(self, u: float) -> float:
        if not 0.0 < u < 1.0:
            raise ValueError(f"phi is defined on open (0, 1), got u={u!r}")
        return self._eval(u)

    def _eval(self, u: float) -> float:
        # partial sums accumulated ascending in i; log-domain fallback keeps
        # u^k * sum from turning into 0 * inf near u = 0
        if u < 1e-300:
            return 0.0
        lam = -self.k * math.log(u)
        if lam <= _LAM_DIRECT_MAX:
            term = 1.0
            total = 1.0
            for i in range(1, self.n):
                term *= lam / i
                total += term
            return min(1.0, u ** self.k * total)
        log_lam = math.log(lam)
        m = -math.inf
        logs = []
        for i in range(self.n):
            g = i * log_lam - math.lgamma(i + 1)
            logs.append(g)
            m = max(m, g)
        s = sum(math.exp(g - m) for g in logs)
        return min(1.0, math.exp(-lam + m + math.log(s)))

    def at(self, u: float) -> float:
        """Closed-interval extension used by record cdfs: 0 at u<=0, 1 at u>=1."""
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 1.0
        return self._eval(u)


def _record_coefficient(n: int, k: int) -> float:
    # k^n / (n-1)!, in log space once the factorial leaves exact-double range
    if n <= 20:
        return k ** n / math.factorial(n - 1)
    return math.exp(n * math.log(k) - math.lgamma(n))


@dataclass(frozen=True)
class RecordLaw:
    """Law of the n-th upper or lower k-record of iid draws from ``base``."""

    base: Distribution
    n: int
    k: int
    side: str = "upper"

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError(f"k must be an integer >= 1, got {self.k!r}")
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {self.side!r}")

    @cached_property
    def _phi(self) -> PhiKernel:
        return PhiKernel(self.n, self.k)

    def pdf(self, x: float) -> float:
        """Record density; 0 outside the base support (closed-support convention)."""
        lo, hi = self.base.support
        if not lo < x < hi:
            return 0.0
        p = self.base.sf(x) if self.side == "upper" else self.base.cdf(x)
        coef = _record_coefficient(self.n, self.k)
        if p <= 0.0:
            # sf/cdf underflow deep in a tail; the n=1 record is X_{1:k} whose
            # density k * p^(k-1) * f is still meaningful there (0^0 == 1)
            return coef * p ** (self.k - 1) * self.base.pdf(x) if self.n == 1 else 0.0
        lam = max(0.0, -math.log(p))
        return coef * lam ** (self.n - 1) * p ** (self.k - 1) * self.base.pdf(x)

    def cdf(self, x: float) -> float:
        if self.side == "upper":
            return 1.0 - self._phi.at(self.base.sf(x))
        return self._phi.at(self.base.cdf(x))


@dataclass(frozen=True)
class RecordSample:
    """Simulated record values plus the number of realizations that hit the draw guard."""

    values: np.ndarray
    aborted: int


def _scan_one(base: Distribution, n: int, k: int, upper: bool, rng: np.random.Generator,
              max_draws: int) -> float | None:
    """Literal definitional scan of one iid stream until the n-th k-record."""
    sign = 1.0 if upper else -1.0

    def draw(m: int) -> np.ndarray:
        u = rng.random(m)
        np.maximum(u, 2.0 ** -53, out=u)
        return sign * base.quantile_array(u)

    top = list(draw(k))  # min-heap of the k largest (sign-flipped for lower)
    heapq.heapify(top)
    drawn = k
    seen = 1
    if seen == n:
        return sign * top[0]
    batch = 128
    while drawn < max_draws:
        m = min(batch, max_draws - drawn)
        xs = draw(m)
        drawn += m
        threshold = top[0]
        pos = 0
        while pos < m:
            hits = xs[pos:] > threshold
            if not hits.any():
                break
            j = pos + int(np.argmax(hits))
            heapq.heapreplace(top, float(xs[j]))
            threshold = top[0]
            seen += 1
            if seen == n:
                return sign * threshold
            pos = j + 1
        batch = min(batch * 2, 65536)
    return None


def simulate_records(base: Distribution, n: int, k: int, side: str, count: int,
                     seed: int, max_draws: int = 10_000_000) -> RecordSample:
    """``count`` independent realizations of the n-th (upper|lower) k-record.

    Each realization scans its own iid stream, maintaining the running top-k
    (bottom-k) and emitting the k-th extreme each time it changes, exactly as
    the record process is defined.  Realizations use seeds derived from
    ``(seed, index)``, so results are deterministic and independent of any
    execution schedule.  A realization whose stream exceeds ``max_draws`` is
    aborted and counted in ``aborted``.
    """
    law = RecordLaw(base, n, k, side)  # reuse argument validation
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if max_draws < k:
        raise ValueError(f"max_draws must be >= k, got {max_draws}")
    upper = law.side == "upper"
    out = []
    aborted = 0
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        v = _scan_one(base, n, k, upper, rng, max_draws)
        if v is None:
            aborted += 1
        else:
            out.append(v)
    return RecordSample(values=np.asarray(out, dtype=float), aborted=aborted)
