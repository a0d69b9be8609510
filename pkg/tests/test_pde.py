"""Direct finite-difference solver: convergence, conservation, and its role
as an independent oracle for the renewal route."""

import math

import numpy as np
import pytest

from pointfeedback import boundary, kernels, pde
from pointfeedback.boundary import ForcingSpec, InitialCondition
from pointfeedback.errors import ConfigError
from pointfeedback.presets import INITIAL_PRESETS

INV_E = 1.0 / math.e
NO_FORCING = ForcingSpec("constant", level=0.0)
UNIT_FORCING = ForcingSpec("constant", level=1.0)
ZERO_IC = InitialCondition("gaussian_bump", center=0.0, width=1.0, height=0.0)


def preset_ic(name: str) -> InitialCondition:
    return InitialCondition(**INITIAL_PRESETS[name])


def center_index(x_grid: np.ndarray) -> int:
    return int(np.argmin(np.abs(x_grid)))


class TestAgainstClosedForms:
    def test_free_flow_reproduces_heat_semigroup(self):
        # the reference Gaussian is K(1, x), so after time 1 the solution is
        # K(2, x); no source, no feedback
        cfg = pde.PdeConfig(0.0, NO_FORCING, preset_ic("heat_profile"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 1.0, sample_times=[1.0])
        snap = run.snapshots[-1]
        want = kernels.heat_kernel(2.0, run.x_grid)
        assert np.max(np.abs(snap.values - want)) < 1e-3
        i0 = center_index(run.x_grid)
        assert snap.values[i0] == pytest.approx(kernels.heat_kernel(2.0, 0.0), abs=2e-4)

    def test_pure_source_matches_duhamel_integral(self):
        # zero data, unit forcing, zero gain: u(t, 0) = sqrt(t / pi)
        cfg = pde.PdeConfig(0.0, UNIT_FORCING, ZERO_IC,
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 1.0, sample_times=[1.0])
        got = run.snapshots[-1].values[center_index(run.x_grid)]
        assert got == pytest.approx(math.sqrt(1.0 / math.pi), rel=3e-3)

    def test_crank_nicolson_is_sharper(self):
        want = kernels.heat_kernel(2.0, 0.0)
        errs = {}
        for scheme in ("implicit_euler", "crank_nicolson"):
            cfg = pde.PdeConfig(0.0, NO_FORCING, preset_ic("heat_profile"),
                                domain_half_width=10.0, dx=0.02, dt=0.01, scheme=scheme)
            run = pde.run(cfg, 1.0, sample_times=[1.0])
            errs[scheme] = abs(run.snapshots[-1].values[center_index(run.x_grid)] - want)
        assert errs["crank_nicolson"] < 0.05 * errs["implicit_euler"]


class TestConservationAndSymmetry:
    def test_mass_balance_tracks_source_intensity(self):
        # d/dt (total mass) = psi(t): the integrated intensity must account
        # for the mass change (far-end leakage is negligible at this horizon)
        cfg = pde.PdeConfig(INV_E, UNIT_FORCING, preset_ic("heat_profile"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 2.0)
        mass = run.audit["mass"]
        gained = float(np.trapezoid(run.audit["source_intensity"], dx=cfg.dt))
        assert mass[-1] - mass[0] == pytest.approx(gained, abs=5e-3)

    def test_even_data_keeps_difference_trace_at_zero(self):
        cfg = pde.PdeConfig(INV_E, UNIT_FORCING, preset_ic("heat_profile"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 2.0)
        assert np.max(np.abs(run.trace.u_minus)) < 1e-12

    def test_intensity_is_forcing_minus_scaled_sum_trace(self):
        cfg = pde.PdeConfig(INV_E, UNIT_FORCING, preset_ic("tent"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 1.0)
        want = 1.0 - INV_E * run.trace.u_plus
        assert np.allclose(run.audit["source_intensity"], want, atol=1e-12)


class TestOracleAgreement:
    def test_matches_renewal_route(self):
        ren = boundary.solve_u_plus_renewal(
            preset_ic("heat_profile"), UNIT_FORCING, INV_E, t_end=1.0, dt=0.005
        )
        cfg = pde.PdeConfig(INV_E, UNIT_FORCING, preset_ic("heat_profile"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 1.0)
        up = np.interp(ren.t_grid, run.trace.t_grid, run.trace.u_plus)
        assert np.max(np.abs(up - ren.u_plus)) < 2e-3

    def test_error_halves_with_the_grid(self):
        # refining (dx, dt) together must shrink the gap to the independent
        # renewal solution by at least 1.8x per halving
        ren = boundary.solve_u_plus_renewal(
            preset_ic("heat_profile"), UNIT_FORCING, INV_E, t_end=1.0, dt=0.005
        )
        errs = []
        for dx, dt in ((0.04, 0.02), (0.02, 0.01), (0.01, 0.005)):
            cfg = pde.PdeConfig(INV_E, UNIT_FORCING, preset_ic("heat_profile"),
                                domain_half_width=10.0, dx=dx, dt=dt)
            run = pde.run(cfg, 1.0)
            up = np.interp(ren.t_grid, run.trace.t_grid, run.trace.u_plus)
            errs.append(float(np.max(np.abs(up - ren.u_plus))))
        assert errs[0] / errs[1] >= 1.8
        assert errs[1] / errs[2] >= 1.8

    def test_hat_source_stays_close_to_single_node(self):
        runs = {}
        for profile in ("single", "hat"):
            cfg = pde.PdeConfig(INV_E, UNIT_FORCING, preset_ic("heat_profile"),
                                domain_half_width=10.0, dx=0.02, dt=0.01,
                                source_profile=profile)
            runs[profile] = pde.run(cfg, 1.0)
        gap = np.max(np.abs(runs["hat"].trace.u_plus - runs["single"].trace.u_plus))
        assert gap < 1e-3


class TestSignAudit:
    def test_one_sided_mass_drives_the_far_trace_negative(self):
        cfg = pde.PdeConfig(INV_E, NO_FORCING, preset_ic("counterexample"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 1.5)
        audit = run.audit
        assert audit["min_outside_unit"] < -5e-3
        assert audit["argmin_x"] == pytest.approx(-1.0)
        assert audit["min_left_trace"] < -5e-3
        assert audit["min_right_trace"] >= 0.0

    def test_certified_band_clean_audit(self):
        cfg = pde.PdeConfig(INV_E, UNIT_FORCING, preset_ic("tent"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 2.0)
        assert run.audit["min_outside_unit"] >= 0.0
        assert run.trace.min_point_value() >= 0.0
        assert run.trace.provenance == "pde_oracle"


class TestSnapshots:
    def test_requested_times_are_snapped_and_sorted(self):
        cfg = pde.PdeConfig(0.0, NO_FORCING, preset_ic("heat_profile"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 1.0, sample_times=[0.5001, 0.0, 1.0, 0.5001])
        assert [s.t for s in run.snapshots] == [0.0, 0.5, 1.0]
        assert run.snapshots[0].mass == pytest.approx(
            boundary.initial_mass(preset_ic("heat_profile")), abs=1e-6
        )

    def test_snapshot_values_live_on_the_grid(self):
        cfg = pde.PdeConfig(0.0, NO_FORCING, preset_ic("heat_profile"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        run = pde.run(cfg, 0.5, sample_times=[0.5])
        assert run.snapshots[0].values.shape == run.x_grid.shape


class TestConfigValidation:
    def test_rejections(self):
        ok = dict(amplitude=0.0, forcing=NO_FORCING, initial=preset_ic("tent"))
        with pytest.raises(ConfigError):
            pde.PdeConfig(**ok, domain_half_width=8.0)
        with pytest.raises(ConfigError):
            pde.PdeConfig(**ok, dx=0.03)
        with pytest.raises(ConfigError):
            pde.PdeConfig(**ok, domain_half_width=10.01)
        with pytest.raises(ConfigError):
            pde.PdeConfig(**ok, dx=0.02, dt=0.05)
        with pytest.raises(ConfigError):
            pde.PdeConfig(**ok, scheme="explicit")
        with pytest.raises(ConfigError):
            pde.PdeConfig(**ok, source_profile="delta")
        with pytest.raises(ConfigError):
            pde.PdeConfig(**ok, dx=0.02, dt=-0.01)

    def test_run_horizon_and_step_checks(self):
        cfg = pde.PdeConfig(0.0, NO_FORCING, preset_ic("tent"),
                            domain_half_width=10.0, dx=0.02, dt=0.01)
        with pytest.raises(ConfigError):
            pde.run(cfg, 0.0)
        with pytest.raises(ConfigError):
            pde.run(cfg, 1001.0)
        with pytest.raises(ConfigError):
            pde.run(cfg, 0.005)
