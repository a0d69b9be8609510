"""Named initial profiles, simulation scenarios and sweep presets.

Scenario dictionaries mirror the JSON schema accepted by the `simulate`
subcommand, so a preset and a user file go through the same validation.
"""

from __future__ import annotations

import math

from .survey import SurveyConfig

INV_E = 1.0 / math.e

# heat_profile is the unit-mass Gaussian the closed-form traces like best:
# evolving it for time t just shifts the variance, which gives exact
# reference values for the oracle checks.
INITIAL_PRESETS: dict[str, dict] = {
    "heat_profile": {
        "kind": "gaussian_bump",
        "center": 0.0,
        "width": 2.0,
        "height": 1.0 / math.sqrt(4.0 * math.pi),
        "claims_even": True,
        "claims_monotone_outside": True,
    },
    "tent": {
        "kind": "tent",
        "claims_even": True,
        "claims_monotone_outside": True,
    },
    "offset_bump": {
        "kind": "gaussian_bump",
        "center": 1.0,
        "width": 0.3,
        "height": 1.0,
    },
    "wide_bump": {
        "kind": "gaussian_bump",
        "center": -0.7,
        "width": 0.5,
        "height": 2.0,
    },
    "symmetric_pair": {
        "kind": "symmetric_pair",
        "center": 1.5,
        "width": 0.4,
        "height": 1.0,
        "claims_even": True,
    },
    # all the mass parked just outside the right sampling point: the right
    # trace spikes first, the feedback then drags the still-empty left trace
    # below zero before diffusion can fill it
    "counterexample": {
        "kind": "tabulated",
        "x_points": (1.0, 1.6, 2.2),
        "values": (0.0, 12.0, 0.0),
    },
}

SCENARIOS: dict[str, dict] = {
    "thm2": {
        "schema_version": 1,
        "amplitude": INV_E,
        "forcing": {"kind": "constant", "level": 1.0},
        "initial": {"preset": "tent"},
        "t_end": 50.0,
        "dx": 0.02,
        "dt": 0.01,
        "domain_half_width": 20.0,
        "scheme": "implicit_euler",
        "expectations": {"nonnegative_outside_unit": True},
    },
    "prop24": {
        "schema_version": 1,
        "amplitude": INV_E,
        "forcing": {"kind": "constant", "level": 0.0},
        "initial": {"preset": "symmetric_pair"},
        "t_end": 50.0,
        "dx": 0.02,
        "dt": 0.01,
        "domain_half_width": 20.0,
        "scheme": "implicit_euler",
        "expectations": {"nonnegative_outside_unit": True},
    },
    "counterexample": {
        "schema_version": 1,
        "amplitude": INV_E,
        "forcing": {"kind": "constant", "level": 0.0},
        "initial": {"preset": "counterexample"},
        "t_end": 12.0,
        "dx": 0.02,
        "dt": 0.01,
        "domain_half_width": 20.0,
        "scheme": "implicit_euler",
        "expectations": {"nonnegative_outside_unit": True},
    },
    "steady": {
        "schema_version": 1,
        "amplitude": INV_E,
        "forcing": {"kind": "constant", "level": 1.0},
        "initial": {"preset": "tent"},
        "t_end": 120.0,
        "dx": 0.05,
        "dt": 0.01,
        "domain_half_width": 15.0,
        "scheme": "implicit_euler",
        "expectations": {"nonnegative_outside_unit": True},
    },
}

SURVEY_PRESETS: dict[str, SurveyConfig] = {
    # 20k uniform pairs, short window, amplitude floor; the full diffusive
    # pipeline with the cheap pre-filter in front
    "fig71": SurveyConfig(
        a_range=(0.0, 10.0),
        beta_range=(0.0, 3.0),
        n_points=20000,
        sampling="uniform",
        window_end=4.0,
        window_dt=0.02,
        epsilon=0.01,
        ratio_threshold=0.0,
        seed=0,
        target="diffusive",
        enforce_window_margin=False,
    ),
    # 20x20 grid, very long window: only the delayed response stays
    # numerically meaningful out there, and it is the object classified
    "grid400": SurveyConfig(
        a_range=(0.08, 10.0),
        beta_range=(0.0, 3.0),
        n_points=400,
        sampling="grid",
        grid_shape=(20, 20),
        window_end=400.0,
        window_dt=0.05,
        epsilon=0.0,
        ratio_threshold=1e-5,
        seed=0,
        target="delayed",
        enforce_window_margin=False,
    ),
}

FIGURE_IDS = ("4.2", "6.1", "6.2", "6.3", "6.4", "7.1", "B.1", "B.2")
