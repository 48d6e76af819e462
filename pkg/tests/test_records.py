import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extrec.dist import Exponential, Normal, Uniform
from extrec.quad import QuadStatus, integrate_support
from extrec.records import PhiKernel, RecordLaw, simulate_records

from conftest import assert_close, ks_distance

KS_CRIT_99 = 1.63 / math.sqrt(10_000)


class TestPhiKernel:
    def test_first_record_is_identity(self):
        ph = PhiKernel(1, 1)
        for u in (0.1, 0.5, 0.9):
            assert ph(u) == u

    def test_two_term_value(self):
        # u*(1 - log u) at u = 1/e
        assert_close(PhiKernel(2, 1)(math.exp(-1)), 2 * math.exp(-1), 1e-15, "phi_2")

    def test_partial_sums_nondecreasing_in_n(self):
        u = 0.9
        assert PhiKernel(2, 2)(u) <= PhiKernel(3, 2)(u) <= 1.0

    def test_domain_errors(self):
        ph = PhiKernel(2, 1)
        for bad in (0.0, 1.0, -0.1, 1.1):
            with pytest.raises(ValueError):
                ph(bad)

    def test_argument_validation(self):
        for n, k in ((0, 1), (1, 0), (-2, 3)):
            with pytest.raises(ValueError):
                PhiKernel(n, k)

    def test_limits(self):
        ph = PhiKernel(3, 2)
        assert ph(1e-250) < 1e-200
        assert ph(1.0 - 1e-12) > 1.0 - 1e-9
        assert ph.at(0.0) == 0.0 and ph.at(1.0) == 1.0

    def test_log_domain_path_tiny_u(self):
        # forces the log-domain branch; Poisson lower tail stays in [0, 1]
        for n, k in ((2, 1), (5, 3), (40, 2)):
            v = PhiKernel(n, k)._eval(1e-305)
            assert 0.0 <= v <= 1.0

    def test_log_domain_matches_direct_at_crossover(self):
        # direct and log-domain branches agree near the switch point
        ph = PhiKernel(4, 2)
        u = math.exp(-330.0)  # lam = 660 (direct); compare to log-domain formula
        direct = ph._eval(u)
        lam = -2 * math.log(u)
        logs = [i * math.log(lam) - math.lgamma(i + 1) for i in range(4)]
        m = max(logs)
        via_log = math.exp(-lam + m + math.log(sum(math.exp(g - m) for g in logs)))
        assert abs(direct - via_log) <= 1e-12 * max(direct, via_log)

    def test_large_n_no_overflow(self):
        v = PhiKernel(500, 1)._eval(math.exp(-400.0))
        assert 0.0 <= v <= 1.0 and math.isfinite(v)


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=6),
    k=st.integers(min_value=1, max_value=6),
    u=st.floats(min_value=1e-6, max_value=1 - 1e-6),
    v=st.floats(min_value=1e-6, max_value=1 - 1e-6),
)
def test_phi_monotone_and_bounded(n, k, u, v):
    ph = PhiKernel(n, k)
    pu, pv = ph(u), ph(v)
    assert 0.0 <= pu <= 1.0
    if u < v:
        assert pu <= pv + 1e-12


def test_phi_monotone_dense_grid():
    grid = np.linspace(0.001, 0.999, 1024)
    for n in range(1, 7):
        for k in range(1, 7):
            ph = PhiKernel(n, k)
            vals = [ph(float(u)) for u in grid]
            assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


class TestRecordLaw:
    def test_first_record_pdf_is_base_pdf(self):
        d = Exponential(rate=1.0)
        law = RecordLaw(d, 1, 1, "upper")
        for x in (0.1, 1.0, 3.0):
            assert law.pdf(x) == d.pdf(x)
            assert abs(law.cdf(x) - d.cdf(x)) < 1e-15

    def test_exponential_n2_pdf_value(self):
        law = RecordLaw(Exponential(rate=1.0), 2, 1, "upper")
        assert_close(law.pdf(1.0), math.exp(-1), 1e-12, "x e^-x at 1")

    def test_exponential_n2_cdf_value(self):
        law = RecordLaw(Exponential(rate=1.0), 2, 1, "upper")
        assert_close(law.cdf(1.0), 1 - 2 * math.exp(-1), 1e-12, "1 - e^-x (1+x)")

    def test_pdf_outside_support_is_zero(self):
        law = RecordLaw(Uniform(), 2, 1, "upper")
        assert law.pdf(-0.5) == 0.0 and law.pdf(1.5) == 0.0

    def test_cdf_limits(self):
        law = RecordLaw(Exponential(rate=1.0), 3, 2, "upper")
        assert law.cdf(-1.0) == 0.0
        assert law.cdf(1e9) == 1.0

    def test_pdf_integrates_to_one(self):
        for side in ("upper", "lower"):
            for n, k in ((1, 1), (2, 1), (2, 3), (3, 2)):
                law = RecordLaw(Exponential(rate=1.0), n, k, side)
                r = integrate_support(law.pdf, law.base.support, 1e-8)
                assert r.status is QuadStatus.CONVERGED
                assert abs(r.value - 1.0) < 1e-7, (side, n, k, r.value)

    def test_cdf_derivative_matches_pdf(self):
        law = RecordLaw(Exponential(rate=1.0), 2, 2, "upper")
        for x in np.linspace(0.2, 3.0, 25):
            h = 1e-5 * max(1.0, abs(x))
            deriv = (law.cdf(x + h) - law.cdf(x - h)) / (2 * h)
            assert abs(deriv - law.pdf(x)) < 1e-5 * max(1.0, law.pdf(x))

    @pytest.mark.parametrize("base", [Uniform(), Normal()], ids=("uniform", "normal"))
    def test_upper_lower_duality_symmetric_base(self, base):
        c = 0.5 if isinstance(base, Uniform) else 0.0
        for n, k in ((1, 1), (2, 1), (3, 3)):
            upper = RecordLaw(base, n, k, "upper")
            lower = RecordLaw(base, n, k, "lower")
            for t in (0.0, 0.1, 0.25, 0.4) if isinstance(base, Uniform) else (0.0, 0.5, 1.5, 3.0):
                s = upper.cdf(c + t) + lower.cdf(c - t)
                assert abs(s - 1.0) < 1e-9, (n, k, t, s)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            RecordLaw(Uniform(), 0, 1, "upper")
        with pytest.raises(ValueError):
            RecordLaw(Uniform(), 1, 1, "sideways")


class TestSimulateRecords:
    def test_first_record_recovers_base_law(self):
        d = Uniform()
        rs = simulate_records(d, 1, 1, "upper", 10_000, seed=11)
        assert rs.aborted == 0
        assert ks_distance(rs.values, d.cdf) < KS_CRIT_99

    def test_gamma_moment_cross_check(self):
        # upper 1-records of the exponential stack up as Gamma(n, 1)
        rs = simulate_records(Exponential(rate=1.0), 3, 1, "upper", 10_000, seed=11)
        tol = 3.0 * math.sqrt(3.0 / 10_000)
        assert abs(rs.values.mean() - 3.0) < tol

    def test_empirical_cdf_matches_analytic(self):
        d = Exponential(rate=1.0)
        rs = simulate_records(d, 2, 2, "upper", 10_000, seed=11)
        law = RecordLaw(d, 2, 2, "upper")
        assert ks_distance(rs.values, law.cdf) < KS_CRIT_99

    def test_lower_records(self):
        d = Exponential(rate=1.0)
        rs = simulate_records(d, 2, 1, "lower", 10_000, seed=11)
        law = RecordLaw(d, 2, 1, "lower")
        assert ks_distance(rs.values, law.cdf) < KS_CRIT_99

    def test_deterministic_under_seed(self):
        a = simulate_records(Uniform(), 2, 2, "upper", 64, seed=5)
        b = simulate_records(Uniform(), 2, 2, "upper", 64, seed=5)
        assert np.array_equal(a.values, b.values) and a.aborted == b.aborted

    def test_abort_guard_counts(self):
        # a tiny draw budget cannot reach the 3rd record most of the time
        rs = simulate_records(Uniform(), 3, 1, "upper", 50, seed=1, max_draws=4)
        assert rs.aborted > 0
        assert rs.values.size == 50 - rs.aborted

    def test_validation(self):
        with pytest.raises(ValueError):
            simulate_records(Uniform(), 1, 1, "upper", 0, seed=1)
        with pytest.raises(ValueError):
            simulate_records(Uniform(), 1, 3, "upper", 5, seed=1, max_draws=2)
