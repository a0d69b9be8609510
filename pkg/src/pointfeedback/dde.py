"""Scalar delay differential equation y'(t) = A y(t - 1) with constant history.

The solution on [k, k+1] is a degree-k polynomial; three evaluation routes are
provided. The closed-form series is the textbook object but is catastrophically
ill-conditioned once t is large (terms near 1e5 can cancel to 1e-20), so the
method of steps carries the workload: its recursion touches only
nonnegative-power coefficients of the local variable and stays exactly
conditioned for |A| <= 1. Explicit Euler is the third, deliberately crude,
route used for cross-checks.

Characteristic roots are z e^z = A, i.e. branches of the Lambert W function,
which is implemented here via Halley iteration.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NonConvergence, Overflow, RootNotFound

__all__ = [
    "DdeProblem",
    "DdeSolution",
    "MonotoneReport",
    "eta_series",
    "integer_node_values",
    "solution_values",
    "solve_steps",
    "solve_euler",
    "lambert_w",
    "characteristic_root",
    "classify_behavior",
    "diblik_monotone_check",
]

_MAX_HORIZON = 1000.0


@dataclass(frozen=True)
class DdeProblem:
    """y'(t) = coefficient * y(t-1) for t >= 1, y = history_value on [0, 1]."""

    coefficient: float
    history_value: float = 1.0
    t_end: float = 50.0

    def __post_init__(self):
        if self.t_end <= 1.0:
            raise ValueError("t_end must exceed 1")


@dataclass(frozen=True)
class DdeSolution:
    grid: np.ndarray
    values: np.ndarray
    method: str  # one of {"series", "steps", "euler"}


@dataclass(frozen=True)
class MonotoneReport:
    rate: float
    grid: np.ndarray
    transformed: np.ndarray
    nondecreasing: bool
    min_increment: float


def eta_series(A: float, t: float, *, with_condition: bool = False):
    """Literal closed form sum_{m<=t} A^m (t-m)^m / m!, compensated summation.

    The condition number sum|terms| / |sum| is returned on request; values
    with condition beyond ~1e14 carry no correct digits in double precision.
    Prefer solution_values for anything downstream.
    """
    if t < 0.0:
        return (0.0, 1.0) if with_condition else 0.0
    acc = 0.0
    comp = 0.0
    abs_acc = 0.0
    m_max = int(math.floor(t + 1e-12))
    term = 1.0  # A^m / m! running factor at m=0
    for m in range(m_max + 1):
        if m > 0:
            term *= A / m
        val = term * (t - m) ** m
        abs_acc += abs(val)
        y = val - comp
        s = acc + y
        comp = (s - acc) - y
        acc = s
    if with_condition:
        cond = abs_acc / abs(acc) if acc != 0.0 else math.inf
        return acc, cond
    return acc


def integer_node_values(A: float, k_max: int) -> np.ndarray:
    """Values Y[k] = y(k) for unit history, via Y[k+1] = sum_j A^j/j! Y[k-j].

    The recursion reuses the polynomial coefficients of the previous interval,
    so no large-term cancellation ever appears for |A| <= 1.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    coeff = np.empty(k_max + 1)
    coeff[0] = 1.0
    for j in range(1, k_max + 1):
        coeff[j] = coeff[j - 1] * A / j
    y = np.empty(k_max + 1)
    y[0] = 1.0
    for k in range(k_max):
        y[k + 1] = float(np.dot(coeff[: k + 1], y[k::-1]))
        if not math.isfinite(y[k + 1]):
            raise Overflow(f"integer-node value overflowed at k={k + 1} for A={A}")
    return y


def solution_values(A: float, ts, history_value: float = 1.0) -> np.ndarray:
    """Stable evaluation of y at arbitrary times ts >= 0.

    On [k, k+1] the solution is sum_j (A^j/j!) Y[k-j] s^j with s = t - k;
    points are grouped by interval and each group is evaluated by Horner.
    """
    t_arr = np.atleast_1d(np.asarray(ts, dtype=float))
    if np.any(t_arr < 0.0):
        raise ValueError("solution_values requires t >= 0")
    out = np.empty_like(t_arr)
    if t_arr.size == 0:
        return out
    k_arr = np.floor(t_arr + 1e-12).astype(int)
    k_top = int(k_arr.max())
    y_int = integer_node_values(A, k_top)
    coeff = np.empty(k_top + 1)
    coeff[0] = 1.0
    for j in range(1, k_top + 1):
        coeff[j] = coeff[j - 1] * A / j
    for k in np.unique(k_arr):
        sel = k_arr == k
        s = t_arr[sel] - k
        # Horner over c_j = coeff[j] * Y[k-j], highest power first
        c = coeff[: k + 1] * y_int[k::-1]
        acc = np.full(s.shape, c[k])
        for j in range(k - 1, -1, -1):
            acc = acc * s + c[j]
        out[sel] = acc
    return out * history_value


def solve_steps(problem: DdeProblem, nodes_per_interval: int = 32) -> DdeSolution:
    """Method-of-steps solution sampled on a uniform per-interval grid."""
    if nodes_per_interval < 2:
        raise ValueError("nodes_per_interval must be at least 2")
    if problem.t_end >= _MAX_HORIZON:
        raise Overflow(f"horizon {problem.t_end} exceeds the supported {_MAX_HORIZON}")
    step = 1.0 / nodes_per_interval
    grid = np.arange(0.0, problem.t_end + step / 2, step)
    if grid[-1] < problem.t_end - 1e-12:
        grid = np.append(grid, problem.t_end)
    vals = solution_values(problem.coefficient, grid, problem.history_value)
    if not np.all(np.isfinite(vals)):
        raise Overflow("solution overflowed double range before t_end")
    return DdeSolution(grid=grid, values=vals, method="steps")


def solve_series(problem: DdeProblem, nodes_per_interval: int = 32) -> DdeSolution:
    """Literal series evaluation on the same grid as solve_steps.

    Only safe while the series condition number stays small; see eta_series.
    """
    step = 1.0 / nodes_per_interval
    grid = np.arange(0.0, problem.t_end + step / 2, step)
    if grid[-1] < problem.t_end - 1e-12:
        grid = np.append(grid, problem.t_end)
    vals = np.array([eta_series(problem.coefficient, t) for t in grid])
    vals = vals * problem.history_value
    return DdeSolution(grid=grid, values=vals, method="series")


def solve_euler(problem: DdeProblem, dt: float) -> DdeSolution:
    """Explicit Euler with the delay resolved on exact grid multiples.

    dt must divide 1 exactly so the delayed index is an integer offset.
    """
    m = int(round(1.0 / dt))
    if abs(m * dt - 1.0) > 1e-9:
        raise ValueError("dt must divide the unit delay exactly")
    n_steps = int(round(problem.t_end / dt))
    if abs(n_steps * dt - problem.t_end) > 1e-9:
        raise ValueError("dt must divide t_end exactly")
    if problem.t_end >= _MAX_HORIZON:
        raise Overflow(f"horizon {problem.t_end} exceeds the supported {_MAX_HORIZON}")
    y = np.empty(n_steps + 1)
    y[: m + 1] = problem.history_value
    A = problem.coefficient
    for n in range(m, n_steps):
        y[n + 1] = y[n] + dt * A * y[n - m]
    grid = dt * np.arange(n_steps + 1)
    return DdeSolution(grid=grid, values=y, method="euler")


def _halley_start(z: complex, branch: int) -> complex:
    if branch == 0:
        if abs(z) < 0.25:
            # Maclaurin start; a couple of terms is plenty for Halley
            return z * (1.0 - z + 1.5 * z * z)
        if abs(z + 1.0 / math.e) < 0.25:
            p = cmath.sqrt(2.0 * (math.e * z + 1.0))
            return -1.0 + p - p * p / 3.0 + 11.0 * p**3 / 72.0
        if z.imag == 0.0 and -1.0 / math.e <= z.real < 0.0:
            p = math.sqrt(2.0 * (math.e * z.real + 1.0))
            return complex(-1.0 + p - p * p / 3.0 + 11.0 * p**3 / 72.0)
        if abs(z) < 4.0 and abs(cmath.phase(z)) < 2.0:
            # near the positive real axis log(z) - log(log(z)) can step onto
            # an adjacent sheet; log(1+z) stays on the principal one
            return cmath.log(1.0 + z)
    if branch == -1 and z.imag == 0.0 and -1.0 / math.e <= z.real < 0.0:
        lz = math.log(-z.real)
        arg = -lz
        return complex(lz - math.log(arg)) if arg > 0.0 else complex(-1.0)
    shift = 2.0j * math.pi * branch
    lz = cmath.log(z) + shift
    if abs(lz) < 1e-6:
        lz += 1e-6  # z ~ 1 on branch 0: keep the start away from log(0)
    return lz - cmath.log(lz)


def lambert_w(branch: int, z: complex, max_iter: int = 100) -> complex:
    """Branch `branch` of w e^w = z by Halley iteration.

    Residual contract |w e^w - z| <= 1e-12 (1 + |z|); NonConvergence after
    max_iter steps.
    """
    z = complex(z)
    if z == 0.0:
        if branch == 0:
            return 0.0 + 0.0j
        raise NonConvergence("only the principal branch passes through 0")
    w = _halley_start(z, branch)
    target = 1e-13 * (1.0 + abs(z))
    for _ in range(max_iter):
        ew = cmath.exp(w)
        f = w * ew - z
        if abs(f) < target:
            return w
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        w = w - f / denom
    if abs(w * cmath.exp(w) - z) <= 1e-12 * (1.0 + abs(z)):
        return w
    raise NonConvergence(f"Lambert W branch {branch} failed at z={z:.6g}")


def characteristic_root(A: float, branch: int = 0) -> complex:
    """Root of z e^z = A on the requested branch."""
    return lambert_w(branch, complex(A))


def classify_behavior(A: float) -> str:
    """Qualitative long-time behavior of the unit-history solution.

    Boundaries are the classical ones: -1/e separates monotone decay from
    oscillatory decay, -pi/2 separates decay from growth of the oscillation.
    """
    if A == 0.0:
        return "constant"
    if A > 0.0:
        return "positive_growth"
    if A >= -1.0 / math.e:
        return "positive_decay"
    root = characteristic_root(A)
    if abs(A + math.pi / 2.0) <= 1e-12 or abs(root.real) <= 1e-13:
        return "undamped_oscillation"
    return "damped_oscillation" if root.real < 0.0 else "unstable_oscillation"


def diblik_monotone_check(A: float, solution: DdeSolution, tol: float = 1e-9) -> MonotoneReport:
    """Check that y(t) e^{-lambda t} is nondecreasing past the first interval.

    lambda is the larger (closer to zero) real characteristic root, which
    exists exactly for A in [-1/e, 0). RootNotFound if the root cannot be
    produced with a clean residual.
    """
    if not -1.0 / math.e <= A < 0.0:
        raise ValueError("monotone comparison requires A in [-1/e, 0)")
    root = lambert_w(0, complex(A))
    if abs(root.imag) > 1e-10:
        raise RootNotFound(f"principal root not real for A={A}: {root:.6g}")
    lam = root.real
    residual = abs(lam * math.exp(lam) - A)
    if residual > 1e-10 * (1.0 + abs(A)):
        raise RootNotFound(f"root residual {residual:.3g} too large for A={A}")
    sel = solution.grid >= 1.0 - 1e-12
    grid = solution.grid[sel]
    v = solution.values[sel] * np.exp(-lam * grid)
    inc = np.diff(v)
    scale = max(1.0, float(np.max(np.abs(v))))
    min_inc = float(inc.min()) if inc.size else 0.0
    return MonotoneReport(
        rate=lam,
        grid=grid,
        transformed=v,
        nondecreasing=bool(min_inc >= -tol * scale),
        min_increment=min_inc,
    )
