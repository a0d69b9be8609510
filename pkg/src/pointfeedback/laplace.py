"""Laplace-transform machinery: forward transform, two independent inversion
routes, and a final-value extrapolator.

The two inversion routes are deliberately kept apart. The contour route
(truncated vertical line, composite Simpson) is fast and vectorizes over t;
the Post-Widder route needs only real samples of the transform near the
positive axis and serves as an independent cross-check. Numerical analysis
notes live next to the code that owns them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate

from .errors import ContourBelowPole, NoConvergence, PrecisionLoss

__all__ = [
    "TimeFunction",
    "SDomainFunction",
    "BromwichConfig",
    "forward_laplace",
    "suggest_horizon",
    "bromwich_invert",
    "cauchy_derivative",
    "post_widder_invert",
    "final_value",
]


@dataclass(frozen=True)
class TimeFunction:
    """A function of t >= 0 with a declared exponential growth bound.

    evaluator must accept a float and return a float; growth_bound is the
    smallest omega the caller is willing to certify with |f(t)| <= M e^{omega t}.
    """

    evaluator: Callable[[float], float]
    growth_bound: float = 0.0
    label: str = ""

    def __call__(self, t: float) -> float:
        return self.evaluator(t)


@dataclass(frozen=True)
class SDomainFunction:
    """A transform F(s), analytic to the right of the declared abscissa."""

    evaluator: Callable[[complex], complex]
    abscissa: float = 0.0
    label: str = ""

    def __call__(self, s: complex) -> complex:
        return self.evaluator(s)


@dataclass(frozen=True)
class BromwichConfig:
    """Truncated-contour quadrature parameters.

    The contour is s = sigma + i xi, xi in [-half_width, half_width], sampled
    at n_nodes points for composite Simpson. n_nodes must be at least 64; an
    even count is bumped by one so the panel count stays even.
    """

    sigma: float = 0.1
    half_width: float = 50.0
    n_nodes: int = 4001

    def __post_init__(self):
        if self.half_width <= 0.0:
            raise ValueError("half_width must be positive")
        if self.n_nodes < 64:
            raise ValueError("n_nodes must be at least 64")
        if self.n_nodes % 2 == 0:
            object.__setattr__(self, "n_nodes", self.n_nodes + 1)


def suggest_horizon(growth_bound: float, s: complex, tol: float, amplitude: float = 1.0) -> float:
    """Smallest t_max with amplitude * e^{(omega - Re s) t}/(Re s - omega) < tol."""
    gap = s.real - growth_bound
    if gap <= 0.0:
        raise ValueError("Re s must exceed the growth bound")
    t_max = math.log(max(amplitude / (tol * gap), 2.0)) / gap
    return max(t_max, 1.0)


def forward_laplace(f: TimeFunction, s: complex, t_max: float, tol: float = 1e-10) -> complex:
    """Numerical transform integral_0^{t_max} f(t) e^{-st} dt.

    Re s must exceed f.growth_bound; t_max is the caller's truncation choice
    (see suggest_horizon). Real and imaginary parts are integrated separately
    with absolute target tol each, so the combined error is at most 2*tol
    plus the declared truncation tail.
    """
    s = complex(s)
    if s.real <= f.growth_bound:
        raise ValueError("Re s must exceed the declared growth bound")
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")

    def real_part(t: float) -> float:
        return f.evaluator(t) * math.exp(-s.real * t) * math.cos(s.imag * t)

    def imag_part(t: float) -> float:
        return -f.evaluator(t) * math.exp(-s.real * t) * math.sin(s.imag * t)

    re_val, _ = integrate.quad(real_part, 0.0, t_max, epsabs=tol, epsrel=1e-12, limit=400)
    if s.imag == 0.0:
        return complex(re_val, 0.0)
    im_val, _ = integrate.quad(imag_part, 0.0, t_max, epsabs=tol, epsrel=1e-12, limit=400)
    return complex(re_val, im_val)


def _simpson_weights(n_nodes: int) -> np.ndarray:
    w = np.ones(n_nodes)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w


def bromwich_invert(
    F: SDomainFunction,
    t,
    config: BromwichConfig | None = None,
    poles: Sequence[complex] = (),
) -> np.ndarray | float:
    """Invert F along the truncated vertical contour at sigma.

    t may be a scalar or an array of positive times. If any supplied pole has
    real part >= sigma, or sigma does not clear the declared abscissa, raises
    ContourBelowPole.

    The truncation tail is the dominant error for transforms that decay like
    1/s (time functions with a jump at 0): its envelope scales like
    e^{sigma t}/(t sqrt(half_width)), so small times are the hard regime no
    matter how many nodes are spent.
    """
    cfg = config or BromwichConfig()
    for p in poles:
        if complex(p).real >= cfg.sigma:
            raise ContourBelowPole(
                f"pole at {complex(p):.6g} not strictly left of sigma={cfg.sigma:.6g}"
            )
    if cfg.sigma <= F.abscissa:
        raise ContourBelowPole(
            f"sigma={cfg.sigma:.6g} does not clear declared abscissa {F.abscissa:.6g}"
        )

    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr <= 0.0):
        raise ValueError("bromwich_invert requires t > 0")

    xi = np.linspace(-cfg.half_width, cfg.half_width, cfg.n_nodes)
    h = xi[1] - xi[0]
    fvals = np.array([F.evaluator(complex(cfg.sigma, x)) for x in xi], dtype=complex)
    weighted = fvals * _simpson_weights(cfg.n_nodes)
    # values[j] = sum_k Re(e^{i t_j xi_k} F(sigma + i xi_k)) w_k
    phase = np.exp(1j * np.outer(t_arr, xi))
    integral = (phase @ weighted).real * (h / 3.0)
    out = np.exp(cfg.sigma * t_arr) / (2.0 * math.pi) * integral
    if np.isscalar(t):
        return float(out[0])
    return out


def _circle_mean(
    F: SDomainFunction, center: float, order: int, radius: float, n_nodes: int | None
) -> tuple[float, float]:
    """Trapezoid mean of F(c + r e^{i th}) e^{-i n th} and max |F| on the ring.

    The mean equals F^(n)(c) r^n / n!; callers apply the r^{-n} scale (in log
    space if need be).
    """
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    m = n_nodes or max(64, 4 * order)
    theta = 2.0 * math.pi * np.arange(m) / m
    ring = center + radius * np.exp(1j * theta)
    vals = np.array([F.evaluator(complex(z)) for z in ring], dtype=complex)
    mean = np.mean(vals * np.exp(-1j * order * theta))
    return float(mean.real), float(np.max(np.abs(vals)))


def cauchy_derivative(
    F: SDomainFunction,
    center: float,
    order: int,
    radius: float,
    n_nodes: int | None = None,
) -> tuple[float, float]:
    """n-th derivative of F at a real center via the circle integral.

    Returns (derivative / order!, roundoff_estimate / order!): the scaled form
    is what Post-Widder consumes and it avoids forming order! at all. The
    roundoff estimate is eps * max|F| / radius^order, the cancellation floor
    of the trapezoid mean.
    """
    mean_real, max_abs = _circle_mean(F, center, order, radius, n_nodes)
    scale = radius ** (-order) if order < 600 else math.exp(-order * math.log(radius))
    return mean_real * scale, 2.3e-16 * max_abs * scale


def post_widder_invert(
    F: SDomainFunction,
    t: float,
    n: int,
    radius_factor: float = 0.75,
    n_nodes: int | None = None,
) -> float:
    """Post-Widder approximant ((-1)^n/n!) (n/t)^{n+1} F^(n)(n/t).

    The derivative comes from a Cauchy circle centered at n/t. The circle
    radius is radius_factor times the distance from the center to the
    declared abscissa: tying it to that distance (rather than to n/t alone)
    keeps the binomial cancellation in the circle mean far below the value
    being extracted. Raises PrecisionLoss when the roundoff estimate is not
    comfortably below the result.
    """
    if t <= 0.0:
        raise ValueError("t must be positive")
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 < radius_factor < 1.0:
        raise ValueError("radius_factor must lie in (0, 1)")
    center = n / t
    gap = center - F.abscissa
    if gap <= 0.0:
        raise ValueError("n/t must exceed the declared abscissa")
    radius = radius_factor * gap
    mean_real, max_abs = _circle_mean(F, center, n, radius, n_nodes)
    # assemble (n/t)^{n+1} r^{-n} in log space: either factor alone can
    # overflow a double while the combined gain stays representable
    log_gain = (n + 1) * math.log(center) - n * math.log(radius)
    sign = -1.0 if n % 2 else 1.0
    if log_gain > 700.0:
        value = math.inf
        estimate = math.inf
    else:
        gain = math.exp(log_gain)
        value = sign * gain * mean_real
        estimate = 2.3e-16 * max_abs * gain
    if not math.isfinite(value) or estimate > 0.1 * abs(value) + 1e-10:
        raise PrecisionLoss(
            f"roundoff estimate {estimate:.3g} too large for Post-Widder value "
            f"{value:.3g} at n={n}, t={t:.6g}",
            estimate=estimate,
        )
    return value


_DEFAULT_PROBES = tuple(10.0 ** (-k) for k in range(1, 10))


def final_value(F: SDomainFunction, s_probe: Iterable[float] | None = None) -> float:
    """Limit of f(t) as t -> infinity via s F(s) along a real probe ladder.

    Probes default to 10^-1 ... 10^-9. Successive triples with a common
    log-ratio give an observed convergence order; each triple is Richardson
    extrapolated at that order, which handles the half-power corrections that
    diffusion problems produce. Raises NoConvergence when the last two
    extrapolants disagree beyond 1e-4 (relative to max(1, value)).
    """
    if F.abscissa > 0.0:
        # the final-value theorem needs s F(s) analytic up to the axis;
        # a positive declared abscissa means f grows and no limit exists
        raise NoConvergence(
            f"declared abscissa {F.abscissa:.6g} > 0: f has no finite limit"
        )
    probes = sorted((float(p) for p in (s_probe or _DEFAULT_PROBES)), reverse=True)
    if len(probes) < 3:
        raise ValueError("need at least three probe points")
    g = np.array([complex(s * F.evaluator(complex(s))).real for s in probes])
    if not np.all(np.isfinite(g)):
        raise NoConvergence("probe values are not finite")

    extrapolants: list[float] = []
    for k in range(len(probes) - 2):
        s1, s2, s3 = probes[k : k + 3]
        g1, g2, g3 = g[k : k + 3]
        d1, d2 = g1 - g2, g2 - g3
        scale = max(1.0, abs(g3))
        if abs(d1) < 1e-13 * scale and abs(d2) < 1e-13 * scale:
            extrapolants.append(g3)
            continue
        ratio = s1 / s2
        if d2 == 0.0 or d1 / d2 <= 0.0:
            extrapolants.append(g3)
            continue
        p_hat = math.log(d1 / d2) / math.log(ratio)
        if p_hat <= 0.0:
            # corrections are growing as s shrinks: s F(s) has no limit
            raise NoConvergence(
                f"probe differences grow toward s=0 (observed order {p_hat:.3g})"
            )
        extrapolants.append(g3 + (g3 - g2) / (ratio**p_hat - 1.0))

    last, prev = extrapolants[-1], extrapolants[-2]
    if abs(last - prev) > 1e-4 * max(1.0, abs(last)):
        raise NoConvergence(
            f"extrapolants did not settle: {prev:.8g} vs {last:.8g}"
        )
    return float(last)
