"""Transform machinery: forward integral, two inversion routes, final value.

Round-trip accuracy of the truncated contour depends on how much of the
transform's mass sits beyond the truncation: transforms decaying like 1/s or
faster invert cleanly, transforms of functions with a jump or an integrable
singularity at t = 0 decay too slowly and the documented tolerance is not
reachable at the pinned contour parameters. Those legs are marked xfail
rather than loosened.
"""

import math

import numpy as np
import pytest

from pointfeedback import kernels, laplace
from pointfeedback.errors import ContourBelowPole, NoConvergence, PrecisionLoss

DEFAULT = laplace.BromwichConfig(sigma=0.1, half_width=50.0, n_nodes=4001)


class TestForwardLaplace:
    def test_exponential(self):
        f = laplace.TimeFunction(lambda t: math.exp(-2.0 * t), growth_bound=-2.0)
        for s in (0.5, 1.0, 3.0):
            t_max = laplace.suggest_horizon(-2.0, complex(s), 1e-12)
            got = laplace.forward_laplace(f, s, t_max, tol=1e-12)
            assert got.real == pytest.approx(1.0 / (s + 2.0), rel=1e-9)
            assert got.imag == 0.0

    def test_complex_argument(self):
        f = laplace.TimeFunction(lambda t: math.exp(-t), growth_bound=-1.0)
        s = complex(1.0, 2.0)
        t_max = laplace.suggest_horizon(-1.0, s, 1e-12)
        got = laplace.forward_laplace(f, s, t_max, tol=1e-12)
        assert abs(got - 1.0 / (s + 1.0)) < 1e-9

    def test_kernel_trace_closed_form(self):
        # the pair driving the transfer algebra: K(., beta) <-> e^{-b rs}/(2 rs)
        for beta in (0.0, 1.0, 2.0):
            f = laplace.TimeFunction(lambda t, b=beta: kernels.heat_kernel(t, b))
            for s in (1.0, 2.0, 4.0):
                t_max = laplace.suggest_horizon(0.0, complex(s), 1e-12)
                got = laplace.forward_laplace(f, s, t_max, tol=1e-12)
                rs = math.sqrt(s)
                want = math.exp(-beta * rs) / (2.0 * rs)
                assert got.real == pytest.approx(want, rel=1e-8)

    def test_rejects_s_below_growth_bound(self):
        f = laplace.TimeFunction(lambda t: math.exp(t), growth_bound=1.0)
        with pytest.raises(ValueError):
            laplace.forward_laplace(f, 0.5, 10.0)


class TestBromwichInvert:
    @pytest.mark.parametrize(
        "label,f,F",
        [
            ("ramp", lambda t: t, lambda s: 1.0 / (s * s)),
            ("exp_decay_sq", lambda t: t * math.exp(-t), lambda s: (s + 1.0) ** -2),
            (
                "offset_kernel",
                lambda t: kernels.heat_kernel(t, 1.0),
                lambda s: np.exp(-np.sqrt(s)) / (2.0 * np.sqrt(s)),
            ),
        ],
    )
    def test_round_trip_smooth(self, label, f, F):
        ts = np.arange(0.1, 4.0 + 0.025, 0.05)
        sdf = laplace.SDomainFunction(F, abscissa=0.0)
        inv = laplace.bromwich_invert(sdf, ts, DEFAULT)
        exact = np.array([f(t) for t in ts])
        assert np.max(np.abs(inv - exact)) < 5e-3

    @pytest.mark.parametrize(
        "label,f,F",
        [
            ("step", lambda t: 1.0, lambda s: 1.0 / s),
            ("exp_decay", lambda t: math.exp(-t), lambda s: 1.0 / (s + 1.0)),
            (
                "zero_offset_kernel",
                lambda t: kernels.heat_kernel(t, 0.0),
                lambda s: 1.0 / (2.0 * np.sqrt(s)),
            ),
        ],
    )
    @pytest.mark.xfail(
        strict=True,
        reason="jump or singularity at t=0: transform decays like 1/s or "
        "slower, so the L=50 truncation tail exceeds 5e-3 near the left "
        "end of the window",
    )
    def test_round_trip_jump_at_zero(self, label, f, F):
        ts = np.arange(0.1, 4.0 + 0.025, 0.05)
        sdf = laplace.SDomainFunction(F, abscissa=0.0)
        inv = laplace.bromwich_invert(sdf, ts, DEFAULT)
        exact = np.array([f(t) for t in ts])
        assert np.max(np.abs(inv - exact)) < 5e-3

    def test_jump_functions_fine_away_from_zero(self):
        # same transforms, but sampled where the tail has died down
        ts = np.arange(2.0, 4.0 + 0.05, 0.1)
        sdf = laplace.SDomainFunction(lambda s: 1.0 / (s + 1.0), abscissa=-1.0)
        inv = laplace.bromwich_invert(sdf, ts, DEFAULT)
        assert np.max(np.abs(inv - np.exp(-ts))) < 5e-3

    def test_contour_must_clear_abscissa(self):
        sdf = laplace.SDomainFunction(lambda s: 1.0 / (s - 1.0), abscissa=1.0)
        with pytest.raises(ContourBelowPole):
            laplace.bromwich_invert(sdf, np.array([1.0]), DEFAULT)

    def test_scalar_time_in(self):
        sdf = laplace.SDomainFunction(lambda s: 1.0 / (s * s), abscissa=0.0)
        got = laplace.bromwich_invert(sdf, 2.0, DEFAULT)
        assert np.shape(got) == ()
        assert float(got) == pytest.approx(2.0, abs=5e-3)


class TestCauchyDerivative:
    def test_against_closed_form(self):
        # n-th derivative of 1/(s+1) at c is (-1)^n n! / (c+1)^{n+1}
        F = laplace.SDomainFunction(lambda s: 1.0 / (s + 1.0), abscissa=-1.0)
        for n in (1, 3, 8):
            val, noise = laplace.cauchy_derivative(F, center=2.0, order=n, radius=1.5)
            want = (-1.0) ** n / 3.0 ** (n + 1)  # already divided by n!
            assert val == pytest.approx(want, rel=1e-10)
            assert noise < abs(val) * 1e-6

    def test_noise_estimate_grows_with_order(self):
        F = laplace.SDomainFunction(lambda s: 1.0 / (s + 1.0), abscissa=-1.0)
        _, noise_small = laplace.cauchy_derivative(F, center=2.0, order=2, radius=0.5)
        _, noise_large = laplace.cauchy_derivative(F, center=2.0, order=24, radius=0.5)
        assert noise_large > noise_small


class TestPostWidder:
    def test_order_sweep_converges(self):
        F = laplace.SDomainFunction(lambda s: 1.0 / (s + 1.0), abscissa=-1.0)
        t = 1.0
        errs = [
            abs(laplace.post_widder_invert(F, t, n) - math.exp(-1.0))
            for n in (5, 10, 20, 40)
        ]
        assert errs == sorted(errs, reverse=True)
        assert errs[-1] < 5e-3

    def test_reference_value_at_order_forty(self):
        # the classical O(1/n) bias at n=40 is about e/(2n) relative
        F = laplace.SDomainFunction(lambda s: 1.0 / (s + 1.0), abscissa=-1.0)
        got = laplace.post_widder_invert(F, 1.0, 40)
        assert got == pytest.approx(math.exp(-1.0), rel=2.0 / 40.0)

    def test_cross_agreement_with_contour(self):
        F = laplace.SDomainFunction(
            lambda s: np.exp(-np.sqrt(s)) / (2.0 * np.sqrt(s)), abscissa=0.0
        )
        for t in (0.5, 1.0, 2.0):
            pw = laplace.post_widder_invert(F, t, 24)
            br = float(laplace.bromwich_invert(F, t, DEFAULT))
            assert abs(pw - br) < 0.05

    def test_precision_loss_raised_when_noise_dominates(self):
        # abscissa 0 pins the circle radius to 0.75 n/t, so the noise factor
        # (1/0.75)^n outruns any value once n is large enough
        F = laplace.SDomainFunction(
            lambda s: np.exp(-np.sqrt(s)) / (2.0 * np.sqrt(s)), abscissa=0.0
        )
        with pytest.raises(PrecisionLoss):
            laplace.post_widder_invert(F, 1.0, 150)


class TestCompleteMonotonicity:
    def test_kernel_transform_alternates(self):
        # transform of a nonnegative function: (-1)^n F^(n)(s) >= 0
        F = laplace.SDomainFunction(
            lambda s: np.exp(-np.sqrt(s)) / (2.0 * np.sqrt(s)), abscissa=0.0
        )
        for n in range(5):
            val, _ = laplace.cauchy_derivative(F, center=1.5, order=n, radius=1.0)
            assert (-1.0) ** n * val > 0.0


class TestFinalValue:
    def test_constant_limit(self):
        F = laplace.SDomainFunction(lambda s: 3.0 / s, abscissa=0.0)
        assert laplace.final_value(F) == pytest.approx(3.0, rel=1e-8)

    def test_exponential_approach(self):
        # f = 2 - e^{-t}: F = 2/s - 1/(s+1)
        F = laplace.SDomainFunction(lambda s: 2.0 / s - 1.0 / (s + 1.0))
        assert laplace.final_value(F) == pytest.approx(2.0, rel=1e-8)

    def test_square_root_approach(self):
        # f = 1 - e^{t} erfc(sqrt t) has sF - 1 ~ -1/sqrt(s): the slow branch
        # the probe ladder must extrapolate through
        F = laplace.SDomainFunction(lambda s: 1.0 / s - 1.0 / (s + np.sqrt(s)))
        assert laplace.final_value(F) == pytest.approx(1.0, rel=1e-6)

    def test_divergent_input_is_refused(self):
        # f = e^{t}: s F(s) blows up near 0, there is no finite limit
        F = laplace.SDomainFunction(lambda s: 1.0 / (s - 1.0), abscissa=1.0)
        with pytest.raises(NoConvergence):
            laplace.final_value(F)

    def test_oscillatory_input_is_refused(self):
        # f = cos t has no limit; sF(s) = s^2/(s^2+1) -> 0 fakes one, but the
        # disagreement between probe levels must be caught
        F = laplace.SDomainFunction(lambda s: s / (s * s + 1.0))
        try:
            val = laplace.final_value(F)
        except NoConvergence:
            return
        # if a value comes back it must at least be the Abel mean, 0
        assert abs(val) < 1e-6


class TestBromwichConfig:
    def test_even_node_count_bumped(self):
        cfg = laplace.BromwichConfig(n_nodes=100)
        assert cfg.n_nodes == 101

    def test_too_few_nodes_rejected(self):
        with pytest.raises(ValueError):
            laplace.BromwichConfig(n_nodes=8)

    def test_horizon_suggestion_covers_tolerance(self):
        # the formula is designed to land on the tolerance itself
        t_max = laplace.suggest_horizon(0.0, complex(2.0), 1e-10)
        assert math.exp(-2.0 * t_max) / 2.0 < 1.01e-10
