"""Transfer functions and time-domain responses of the point-feedback loop."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointfeedback import dde, kernels, laplace, transfer
from pointfeedback.errors import PoleHit, TailNotBounded
from pointfeedback.transfer import FeedbackParams, SubordinationConfig

INV_E = 1.0 / math.e


class TestHeatKernelTransform:
    def test_closed_form(self):
        got = transfer.heat_kernel_transform(4.0, 2.0)
        assert got == pytest.approx(math.exp(-4.0) / 4.0, rel=1e-14)

    def test_matches_forward_transform_of_kernel_trace(self):
        f = laplace.TimeFunction(lambda t: kernels.heat_kernel(t, 1.5) if t > 0 else 0.0)
        for s in (1.0, 3.0):
            num = laplace.forward_laplace(f, s, t_max=80.0, tol=1e-11)
            assert abs(num - transfer.heat_kernel_transform(s, 1.5)) < 1e-9

    def test_array_and_scalar_agree(self):
        s = np.array([1.0 + 0.0j, 2.0 + 1.0j])
        arr = transfer.heat_kernel_transform(s, 0.5)
        assert arr[1] == transfer.heat_kernel_transform(complex(2.0, 1.0), 0.5)

    def test_rejections(self):
        with pytest.raises(ValueError):
            transfer.heat_kernel_transform(1.0, -0.1)
        with pytest.raises(ValueError):
            transfer.heat_kernel_transform(0.0, 1.0)


class TestDelayedTransfer:
    @pytest.mark.parametrize("a", [0.25, INV_E, 1.0, 2.5])
    @pytest.mark.parametrize("s", [0.7, 2.0, complex(1.0, 3.0)])
    def test_renewal_algebra(self, a, s):
        # s P(s) - 1/2 = -a e^{-s} P(s): transform of P' = -a P(t-1), P(0+) = 1/2
        p = transfer.delayed_transfer(s, FeedbackParams(a, 0.0))
        assert abs(s * p - 0.5 + a * cmath.exp(-complex(s)) * p) < 1e-13

    def test_shift_law(self):
        base = FeedbackParams(0.8, 0.0)
        shifted = FeedbackParams(0.8, 1.7)
        for s in (0.5, complex(2.0, -1.0)):
            want = cmath.exp(-1.7 * complex(s)) * transfer.delayed_transfer(s, base)
            assert abs(transfer.delayed_transfer(s, shifted) - want) < 1e-14

    def test_matches_forward_transform_of_response(self):
        params = FeedbackParams(0.25, 1.0)
        f = laplace.TimeFunction(lambda t: float(transfer.delayed_response(params, t)))
        for s in (1.0, complex(2.0, 1.0)):
            num = laplace.forward_laplace(f, s, t_max=60.0, tol=1e-10)
            assert abs(num - transfer.delayed_transfer(s, params)) < 1e-8

    def test_pole_hit_on_characteristic_root(self):
        root = dde.lambert_w(0, complex(-1.0))
        with pytest.raises(PoleHit):
            transfer.delayed_transfer(root, FeedbackParams(1.0, 0.0))


class TestDelayedResponse:
    def test_zero_then_half_at_arrival(self):
        params = FeedbackParams(0.3, 1.0)
        assert transfer.delayed_response(params, 0.999) == 0.0
        assert transfer.delayed_response(params, 1.0) == 0.5

    def test_piecewise_values_by_hand(self):
        # one delay past arrival: P = (1 - a (t - offset - 1)) / 2
        params = FeedbackParams(0.3, 1.0)
        assert float(transfer.delayed_response(params, 2.5)) == pytest.approx(
            0.425, abs=1e-15
        )

    def test_positive_in_certified_band_dips_beyond(self):
        ts = np.linspace(0.5, 30.0, 1200)
        assert np.min(transfer.delayed_response(FeedbackParams(INV_E, 0.5), ts)) > 0.0
        assert np.min(transfer.delayed_response(FeedbackParams(1.0, 0.5), ts)) < 0.0

    def test_scalar_matches_array(self):
        params = FeedbackParams(0.7, 0.25)
        arr = transfer.delayed_response(params, np.array([0.1, 2.3]))
        assert transfer.delayed_response(params, 2.3) == arr[1]


class TestSubordination:
    def test_zero_gain_reduces_to_free_kernel(self):
        got = transfer.feedback_response_subordinate(FeedbackParams(0.0, 1.0), 2.0)
        assert got == pytest.approx(kernels.heat_kernel(2.0, 1.0), abs=1e-10)

    def test_frozen_reference_point(self):
        got = transfer.feedback_response_subordinate(FeedbackParams(INV_E, 1.0), 1.0)
        assert got == pytest.approx(0.19191013168844975, abs=1e-9)

    def test_transform_consistency_dual_route(self):
        # numerically transforming the time-domain response recovers the
        # closed s-domain formula, tying the two constructions together
        params = FeedbackParams(INV_E, 1.0)
        f = laplace.TimeFunction(
            lambda t: transfer.feedback_response_subordinate(params, t) if t > 0 else 0.0
        )
        for s in (1.0, 2.0):
            num = laplace.forward_laplace(f, s, t_max=60.0, tol=1e-9)
            assert abs(num - transfer.feedback_transfer(s, params)) < 1e-7

    def test_feedback_only_ever_drains(self):
        # nonnegative gain cannot exceed the free response at the same point
        for t in (0.5, 1.0, 3.0):
            free = kernels.heat_kernel(t, 1.0)
            fed = transfer.feedback_response_subordinate(FeedbackParams(INV_E, 1.0), t)
            assert 0.0 < fed < free + 1e-12

    def test_tail_budget_enforced(self):
        with pytest.raises(TailNotBounded):
            transfer.feedback_response_subordinate(
                FeedbackParams(INV_E, 1.0),
                4.0,
                SubordinationConfig(tau_max=2.0, tol=1e-12),
            )

    def test_tail_cap_for_strong_growth(self):
        with pytest.raises(TailNotBounded):
            transfer.feedback_response_subordinate(FeedbackParams(2.0, 1.0), 6000.0)

    def test_requires_positive_time(self):
        with pytest.raises(ValueError):
            transfer.feedback_response_subordinate(FeedbackParams(0.5, 1.0), 0.0)


class TestGridRoutes:
    def test_grid_matches_adaptive_scalar(self):
        params = FeedbackParams(1.0, 1.0)
        ts = np.array([0.5, 1.5, 4.0])
        grid = transfer.feedback_response_grid(params, ts, method="subordinate")
        for t, g in zip(ts, grid):
            scalar = transfer.feedback_response_subordinate(params, float(t))
            assert abs(g - scalar) < 2e-6

    @pytest.mark.parametrize("a", [0.25, INV_E, 1.0])
    def test_composition_vs_contour(self, a):
        ts = np.arange(0.25, 6.0, 0.25)
        params = FeedbackParams(a, 1.0)
        sub = transfer.feedback_response_grid(params, ts, method="subordinate")
        bro = transfer.feedback_response_grid(params, ts, method="bromwich")
        assert np.max(np.abs(sub - bro)) < 1e-3

    def test_auto_switches_on_amplitude(self):
        ts = np.array([1.0, 2.0])
        low = transfer.feedback_response_grid(FeedbackParams(1.5, 1.0), ts, "auto")
        want = transfer.feedback_response_grid(FeedbackParams(1.5, 1.0), ts, "subordinate")
        assert np.array_equal(low, want)
        high = transfer.feedback_response_grid(FeedbackParams(3.0, 1.0), ts, "auto")
        want = transfer.feedback_response_grid(FeedbackParams(3.0, 1.0), ts, "bromwich")
        assert np.array_equal(high, want)

    def test_rejections(self):
        with pytest.raises(ValueError):
            transfer.feedback_response_grid(FeedbackParams(0.5, 1.0), [0.0, 1.0])
        with pytest.raises(ValueError):
            transfer.feedback_response_grid(FeedbackParams(0.5, 1.0), [1.0], "simpson")


class TestPoleSet:
    def test_residual_contract(self):
        for a in (0.2, 5.0, 50.0):
            for source in ("delayed", "diffusive"):
                ps = transfer.pole_set(a, 3, source)
                assert np.all(ps.residuals <= 1e-10 * (1.0 + a))

    def test_delayed_poles_are_branch_values(self):
        ps = transfer.pole_set(2.0, 2, "delayed")
        assert ps.poles.size == 5
        assert ps.principal == dde.lambert_w(0, complex(-2.0))
        for w in ps.poles:
            assert abs(w * cmath.exp(w) + 2.0) < 1e-10

    def test_diffusive_sheet_filter_by_regime(self):
        # below pi/2 no branch value has positive real part: empty set
        assert transfer.pole_set(1.0, 3, "diffusive").poles.size == 0
        # between pi/2 and the critical gain: decaying oscillation, Re < 0
        mid = transfer.pole_set(5.0, 3, "diffusive")
        assert mid.poles.size > 0
        assert np.max(mid.poles.real) < 0.0
        # beyond the critical gain the principal pair crosses into growth
        high = transfer.pole_set(50.0, 3, "diffusive")
        assert np.max(high.poles.real) > 0.0
        assert high.principal == pytest.approx(
            complex(1.1926226174100263, 12.68609901433762), abs=1e-9
        )

    def test_diffusive_poles_come_in_conjugate_pairs(self):
        # conjugation maps branch k to -(k+1), so a |k| <= 3 truncation leaves
        # exactly one unpaired member at the edge; everything above it pairs up
        ps = transfer.pole_set(50.0, 3, "diffusive")
        pts = sorted(ps.poles, key=lambda p: -p.real)
        paired, edge = pts[:-1], pts[-1]
        for p in paired:
            assert any(abs(q - p.conjugate()) < 1e-9 for q in paired)
        assert edge.real == pytest.approx(min(p.real for p in pts))

    def test_rejections(self):
        with pytest.raises(ValueError):
            transfer.pole_set(0.0)
        with pytest.raises(ValueError):
            transfer.pole_set(1.0, 3, "laplace")


class TestFeedbackTransfer:
    def test_shift_law_in_sqrt_s(self):
        for s in (1.5, complex(2.0, 1.0)):
            p0 = transfer.feedback_transfer(s, FeedbackParams(0.9, 0.0))
            p2 = transfer.feedback_transfer(s, FeedbackParams(0.9, 2.0))
            assert abs(p2 - cmath.exp(-2.0 * cmath.sqrt(complex(s))) * p0) < 1e-14

    def test_pole_hit_on_squared_root(self):
        w = dde.lambert_w(0, complex(-50.0))
        with pytest.raises(PoleHit):
            transfer.feedback_transfer(w * w, FeedbackParams(50.0, 1.0))

    def test_frozen_value(self):
        got = transfer.feedback_transfer(1.0, FeedbackParams(INV_E, 1.0))
        assert got == pytest.approx(0.16201356841597134 + 0.0j, abs=1e-12)


class TestCriticalAmplitude:
    def test_against_closed_form(self):
        # at the crossing the principal branch value has phase pi/4, which
        # pins it to (3 pi sqrt2 / 4) e^{i pi/4}; the gain is its magnitude
        # times e^{Re} = (3 pi sqrt2 / 4) e^{3 pi / 4}
        want = 3.0 * math.pi * math.sqrt(2.0) / 4.0 * math.exp(3.0 * math.pi / 4.0)
        assert transfer.critical_amplitude() == pytest.approx(want, rel=1e-12)

    def test_frozen_digits(self):
        assert transfer.critical_amplitude() == pytest.approx(35.15672398085248, abs=1e-9)

    def test_pole_real_part_changes_sign_across(self):
        a_star = transfer.critical_amplitude()
        below = transfer.pole_set(a_star - 0.5, 1, "diffusive")
        above = transfer.pole_set(a_star + 0.5, 1, "diffusive")
        assert np.max(below.poles.real) < 0.0 < np.max(above.poles.real)


class TestCriticalCurve:
    def test_algebraic_form(self):
        assert transfer.critical_curve_value(FeedbackParams(2.0, 0.25)) == -0.5
        assert transfer.critical_curve_value(FeedbackParams(2.0, 0.75)) == 0.5

    @given(
        st.floats(min_value=1.5, max_value=9.0),
        st.floats(min_value=0.0, max_value=3.0),
    )
    @settings(max_examples=50, deadline=None)
    def test_sign_iff_below_wedge(self, a, beta):
        val = transfer.critical_curve_value(FeedbackParams(a, beta))
        assert (val < 0.0) == (beta < (a - 1.0) / a)


class TestSampleResponses:
    def test_zero_before_first_arrival(self):
        # mass at 1.6: distances to the samples are 0.6 and 2.6
        assert transfer.left_sample_response(INV_E, 1.6, 0.5) == 0.0

    def test_frozen_point(self):
        got = transfer.left_sample_response(INV_E, 1.6, 4.0)
        assert got == pytest.approx(-0.13756811, abs=1e-7)

    def test_bounded_by_half_gain(self):
        ts = np.linspace(0.0, 40.0, 800)
        for a in (0.05, 0.2, INV_E):
            v = transfer.left_sample_response(a, 1.3, ts)
            assert np.max(np.abs(v)) <= a / 2.0 * (1.0 + 1e-12)
            assert np.all(v <= 0.0)

    def test_mirror_symmetry(self):
        ts = np.linspace(0.0, 10.0, 101)
        left = transfer.left_sample_response(0.2, -0.8, ts)
        right = transfer.right_sample_response(0.2, 0.8, ts)
        assert np.array_equal(left, right)

    def test_rejects_oscillatory_gain(self):
        with pytest.raises(ValueError):
            transfer.left_sample_response(0.5, 1.0, 1.0)


class TestDefaultContour:
    def test_clears_growing_pole(self):
        cfg = transfer.default_contour(50.0)
        assert cfg.sigma == pytest.approx(1.1926226174100263 + 0.1, abs=1e-9)

    def test_static_margin_when_no_pole(self):
        assert transfer.default_contour(1.0).sigma == pytest.approx(0.1)
        assert transfer.default_contour(0.0).sigma == pytest.approx(0.1)
