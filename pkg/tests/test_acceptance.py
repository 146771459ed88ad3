"""Acceptance suite: one test per criterion, tolerances pinned.

Each test prints one `[criterion N] PASS/FAIL` line (visible with `pytest -s`)
and then asserts.  Criteria 4 (Type III), 5, and 6 are known to measure
outside their stated slope windows on this desk-scale setup; the tests state
the measured cause in their failure messages and the analysis lives in the
decisions ledger.  They are intentionally not weakened.
"""

import math
import time
import warnings

import mpmath
import numpy as np
import pytest

import movewin as mw
from movewin import harness
from movewin.config import SimConfig
from movewin.harness import (analytic_reference, make_reference, sweep_space,
                             sweep_time, window_for_modes)
from movewin.spectral import Field, make_grid
from movewin.window import WindowPolicy

from oracles import convolution_product, phi1_series

warnings.filterwarnings("ignore", message=".*lower bound.*")
warnings.filterwarnings("ignore", message=".*slow path.*")

RNG = np.random.default_rng(987654321)


def _report(num, ok, detail):
    print(f"\n[criterion {num}] {'PASS' if ok else 'FAIL'}: {detail}")


def _random_field(grid):
    c = RNG.normal(size=grid.shape) + 1j * RNG.normal(size=grid.shape)
    return Field.from_coeffs(grid, c)


class TestCriterion1SpectralExactness:
    def test_criterion_01(self):
        t0 = time.monotonic()
        worst = {"roundtrip": 0.0, "parseval": 0.0, "projection": 0.0,
                 "dealias": 0.0}
        # transform round trips, 100 random instances over N in {4..64}
        for i in range(100):
            N = int(RNG.integers(4, 65))
            g = make_grid(1, float(RNG.uniform(0.5, 20.0)), N)
            s = RNG.normal(size=g.shape) + 1j * RNG.normal(size=g.shape)
            err = np.abs(mw.inverse(g, mw.forward(g, s)) - s).max()
            worst["roundtrip"] = max(worst["roundtrip"], err / np.abs(s).max())
            c = RNG.normal(size=g.shape) + 1j * RNG.normal(size=g.shape)
            err = np.abs(mw.forward(g, mw.inverse(g, c)) - c).max()
            worst["roundtrip"] = max(worst["roundtrip"], err / np.abs(c).max())
        # Parseval between quadrature and coefficient norms
        for d in (1, 2):
            g = make_grid(d, 3.0, 12)
            f = _random_field(g)
            phys = math.sqrt(g.spacing ** d * float(np.sum(np.abs(f.samples) ** 2)))
            worst["parseval"] = max(worst["parseval"],
                                    abs(phys - mw.l2_norm(f)) / mw.l2_norm(f))
        # projection idempotence and contraction
        g = make_grid(1, 2.0, 32)
        for _ in range(50):
            f = _random_field(g)
            p = mw.project(f, 11)
            worst["projection"] = max(
                worst["projection"],
                max(0.0, (mw.l2_norm(p) - mw.l2_norm(f)) / mw.l2_norm(f)))
            again = mw.project(p, 11)
            worst["projection"] = max(
                worst["projection"],
                np.abs(again.coeffs - p.coeffs).max())
        # dealiased product against the dense convolution oracle
        for d, N in [(1, 8), (2, 4)]:
            g = make_grid(d, 1.5, N)
            f, h = _random_field(g), _random_field(g)
            got = mw.multiply_dealiased(f, h).coeffs
            want = convolution_product(f.coeffs, h.coeffs, N, d)
            worst["dealias"] = max(worst["dealias"],
                                   np.abs(got - want).max()
                                   / np.abs(want).max())
        elapsed = time.monotonic() - t0
        bad = {k: v for k, v in worst.items() if v > 1e-12}
        ok = not bad and elapsed < 10
        _report(1, ok, f"worst={ {k: f'{v:.2e}' for k, v in worst.items()} } "
                       f"elapsed={elapsed:.1f}s")
        assert not bad, f"exactness above 1e-12: {bad}"
        assert elapsed < 10


class TestCriterion2PropagatorAndPhi1:
    def test_criterion_02(self):
        t0 = time.monotonic()
        g = make_grid(1, 5.0, 128)
        worst_unitary = 0.0
        worst_compose = 0.0
        for _ in range(20):
            f = _random_field(g)
            out = mw.free_propagate(f, float(RNG.uniform(-2, 2)))
            worst_unitary = max(worst_unitary,
                                abs(mw.l2_norm(out) - mw.l2_norm(f))
                                / mw.l2_norm(f))
            t1, t2 = RNG.uniform(-1, 1, 2)
            two = mw.free_propagate(mw.free_propagate(f, t1), t2)
            one = mw.free_propagate(f, t1 + t2)
            worst_compose = max(worst_compose,
                                np.abs(two.coeffs - one.coeffs).max())
        worst_phi1 = 0.0
        with mpmath.workdps(50):
            for mag in [1e-5, 5e-5, 9.9e-5, 1.01e-4, 2e-4, 1e-3]:
                for arg in np.linspace(0, 2 * math.pi, 9):
                    z = mag * np.exp(1j * arg)
                    want = complex((mpmath.e ** mpmath.mpc(z) - 1)
                                   / mpmath.mpc(z))
                    worst_phi1 = max(worst_phi1,
                                     abs(mw.phi1(complex(z)) - want)
                                     / abs(want))
        series_err = abs(mw.phi1(1e-5j) - phi1_series(1e-5j))
        elapsed = time.monotonic() - t0
        ok = (worst_unitary <= 1e-13 and worst_compose <= 1e-13
              and worst_phi1 <= 1e-15 and series_err <= 1e-15 and elapsed < 5)
        _report(2, ok, f"unitarity={worst_unitary:.2e} "
                       f"composition={worst_compose:.2e} "
                       f"phi1={worst_phi1:.2e} elapsed={elapsed:.1f}s")
        assert worst_unitary <= 1e-13
        assert worst_compose <= 1e-13
        assert worst_phi1 <= 1e-15
        assert series_err <= 1e-15
        assert elapsed < 5


class TestCriterion3FreeEquationAccuracy:
    def test_criterion_03(self):
        t0 = time.monotonic()
        base = SimConfig(d=1, L0=4.0, N0=16, tau=1e-3, T=1.0,
                         potential_id="zero", initial_id="free-gaussian",
                         window=WindowPolicy(enabled=False))
        ref = analytic_reference(mw.FreeGaussian(), "free-gaussian")
        table = sweep_space(base, [2 ** k for k in range(4, 10)], ref)
        errs = table.errors()
        ratios = [math.log(a / b) for a, b in zip(errs, errs[1:])]
        decreasing = all(b < a for a, b in zip(errs, errs[1:]))
        accelerating = all(r2 > r1 for r1, r2 in zip(ratios, ratios[1:]))
        elapsed = time.monotonic() - t0
        ok = decreasing and accelerating and errs[-1] <= 1e-6 and elapsed < 120
        _report(3, ok, f"errors={[f'{e:.2e}' for e in errs]} "
                       f"elapsed={elapsed:.0f}s")
        assert decreasing, f"errors not strictly decreasing: {errs}"
        assert accelerating, f"log-ratios not increasing: {ratios}"
        assert errs[-1] <= 1e-6
        assert elapsed < 120


class TestCriterion4TemporalOrderGamma2:
    def test_criterion_04(self):
        t0 = time.monotonic()
        taus = [2.0 ** -k for k in range(4, 10)]
        slopes = {}
        for init in ["tunnel-I", "tunnel-III-H2"]:
            base = SimConfig(d=1, L0=64.0, N0=2 ** 12, tau=taus[0], T=1.0,
                             potential_id="tunnel-bump", initial_id=init,
                             window=WindowPolicy(enabled=False))
            ref = make_reference(base.with_overrides(tau=2.0 ** -13))
            table = sweep_time(base, taus, "fixed-N", ref)
            slopes[init] = table.slope
        elapsed = time.monotonic() - t0
        ok = all(0.85 <= s <= 1.15 for s in slopes.values()) and elapsed < 600
        _report(4, ok, f"slopes={ {k: f'{v:.3f}' for k, v in slopes.items()} } "
                       f"elapsed={elapsed:.0f}s")
        assert elapsed < 600
        for init, slope in slopes.items():
            assert 0.85 <= slope <= 1.15, (
                f"{init}: fitted slope {slope:.3f} outside [0.85, 1.15]. "
                f"The tau=2^-4 and 2^-5 runs are outside the integrator's "
                f"asymptotic regime (tau*max|V| up to 4.6, errors saturate "
                f"near the solution norm), which steepens the fit; the "
                f"small-tau tail of this sweep is cleanly first order. "
                f"See notes/decisions.md.")


class TestCriterion5SpatialOrderH2:
    def test_criterion_05(self):
        t0 = time.monotonic()
        base = SimConfig(d=1, L0=11.25, N0=2 ** 7, tau=2.0 ** -13, T=1.0,
                         potential_id="tunnel-bump",
                         initial_id="tunnel-III-H2",
                         window=WindowPolicy(enabled=False))
        ref = make_reference(base.with_overrides(
            N0=2 ** 13, L0=window_for_modes(2 ** 13)))
        table = sweep_space(base, [2 ** k for k in range(7, 12)], ref)
        elapsed = time.monotonic() - t0
        ok = -1.25 <= table.slope <= -0.75 and elapsed < 900
        _report(5, ok, f"slope={table.slope:.3f} "
                       f"errors={[f'{e:.2e}' for e in table.errors()]} "
                       f"elapsed={elapsed:.0f}s")
        assert elapsed < 900
        assert -1.25 <= table.slope <= -0.75, (
            f"fitted slope {table.slope:.3f} outside [-1.25, -0.75]. "
            f"At N=2^7 and 2^8 the coupling L=sqrt(N) puts the cutoff "
            f"plateau (aL = 5.6 and 8) inside the initial packet centered "
            f"at x=-8, so those points carry O(1e-1) window-truncation "
            f"error that decays super-algebraically with L and steepens "
            f"the fit well beyond the asymptotic -1 rate. "
            f"See notes/decisions.md.")


class TestCriterion6HalfOrderGamma1:
    def test_criterion_06(self):
        t0 = time.monotonic()
        base = SimConfig(d=1, L0=11.25, N0=2 ** 7, tau=2.0 ** -7, T=1.0,
                         potential_id="tunnel-bump",
                         initial_id="tunnel-II-H1",
                         window=WindowPolicy(enabled=False))
        ref = make_reference(base.with_overrides(
            N0=2 ** 13, L0=window_for_modes(2 ** 13), tau=2.0 ** -13))
        taus = [2.0 ** -k for k in range(7, 12)]
        table = sweep_time(base, taus, "inverse-tau", ref)
        elapsed = time.monotonic() - t0
        ok = 0.35 <= table.slope <= 0.65 and elapsed < 900
        _report(6, ok, f"slope={table.slope:.3f} "
                       f"errors={[f'{e:.2e}' for e in table.errors()]} "
                       f"elapsed={elapsed:.0f}s")
        assert elapsed < 900
        assert 0.35 <= table.slope <= 0.65, (
            f"fitted slope {table.slope:.3f} outside [0.35, 0.65]. "
            f"The tau=2^-7 point (N=2^7, L=11.25) carries O(1e-1) "
            f"window-truncation error from the cutoff clipping the initial "
            f"packet at x=-8 (plateau 5.6); the remaining four points fit "
            f"at 0.59. See notes/decisions.md.")


class TestCriterion7ProjectionRates:
    def test_criterion_07(self):
        t0 = time.monotonic()
        Ns = [2 ** k for k in range(6, 11)]
        f1 = lambda x: np.abs(x) ** 0.51 * np.exp(-x ** 2) + 1.0 / (1.0 + x ** 2)
        f2 = lambda x: (np.abs(x) ** 1.51 * np.exp(-x ** 2)
                        + (1.0 + x ** 2) ** -1.5)
        slope1 = harness.projection_rate_check(f1, 1.0, Ns).slope
        slope2 = harness.projection_rate_check(f2, 2.0, Ns).slope
        elapsed = time.monotonic() - t0
        ok = slope1 <= -0.4 and slope2 <= -0.9 and elapsed < 120
        _report(7, ok, f"gamma1 slope={slope1:.3f} (<= -0.4), "
                       f"gamma2 slope={slope2:.3f} (<= -0.9), "
                       f"elapsed={elapsed:.0f}s")
        assert slope1 <= -0.4
        assert slope2 <= -0.9
        assert elapsed < 120


class TestCriterion8DomainExtensionEquivalence:
    def test_criterion_08(self):
        t0 = time.monotonic()
        # free case: L0=20 with extension vs L=40 direct at T=6
        free_small = SimConfig(d=1, L0=20.0, N0=800, tau=1e-3, T=6.0,
                               potential_id="zero",
                               initial_id="free-gaussian",
                               window=WindowPolicy(eps=1e-3, enabled=True))
        free_big = free_small.with_overrides(L0=40.0, N0=1600,
                                             window_enabled=False)
        res_small = mw.evolve(free_small.validated())
        res_big = mw.evolve(free_big.validated())
        rel_free = (mw.l2_distance(res_small.state.field, res_big.state.field)
                    / mw.l2_norm(res_big.state.field))

        # threshold scan: some threshold reproduces an extension in (3.0, 3.5)
        scan_hits = {}
        for eps in [1e-2, 3e-3, 1e-3, 3e-4, 1e-4]:
            cfg = free_small.with_overrides(window_eps=eps)
            events = mw.evolve(cfg.validated()).extensions
            if events:
                scan_hits[eps] = events[0].t
        in_window = {eps: t for eps, t in scan_hits.items() if 3.0 < t < 3.5}

        # tunneling case: Type I, L0=20 with extension vs L=80 direct at T=2
        tun_small = SimConfig(d=1, L0=20.0, N0=800, tau=2.5e-4, T=2.0,
                              potential_id="tunnel-bump",
                              initial_id="tunnel-I",
                              window=WindowPolicy(eps=1e-3, enabled=True))
        tun_big = tun_small.with_overrides(L0=80.0, N0=3200,
                                           window_enabled=False)
        res_tun_small = mw.evolve(tun_small.validated())
        res_tun_big = mw.evolve(tun_big.validated())
        rel_tun = (mw.l2_distance(res_tun_small.state.field,
                                  res_tun_big.state.field)
                   / mw.l2_norm(res_tun_big.state.field))
        elapsed = time.monotonic() - t0
        ok = (rel_free <= 1e-2 and rel_tun <= 1e-2 and bool(in_window)
              and elapsed < 300)
        _report(8, ok, f"free rel={rel_free:.2e}, tunnel rel={rel_tun:.2e}, "
                       f"extension times by threshold={ {k: round(v, 4) for k, v in scan_hits.items()} }, "
                       f"elapsed={elapsed:.0f}s")
        assert rel_free <= 1e-2
        assert rel_tun <= 1e-2
        assert in_window, (f"no scanned threshold puts the first extension "
                           f"in (3.0, 3.5); observed {scan_hits}")
        assert len(res_tun_small.extensions) >= 2
        assert elapsed < 300


class TestCriterion9TwoDimensional:
    def test_criterion_09(self):
        t0 = time.monotonic()
        base = SimConfig(d=2, L0=5.75, N0=2 ** 5, tau=2.0 ** -10, T=0.25,
                         potential_id="lattice", initial_id="scatter-II-H2",
                         window=WindowPolicy(enabled=False))
        ref = make_reference(base.with_overrides(
            N0=2 ** 9, L0=window_for_modes(2 ** 9)))
        space = sweep_space(base, [2 ** 5, 2 ** 6, 2 ** 7], ref)

        base_t = base.with_overrides(N0=2 ** 7, L0=window_for_modes(2 ** 7))
        ref_t = make_reference(base_t)
        taus = [2.0 ** -k for k in range(4, 9)]
        time_table = sweep_time(base_t, taus, "fixed-N", ref_t)

        u0 = mw.initial_field("scatter-II-H2", ref.field.grid)
        drift = abs(mw.l2_norm(ref.field) - mw.l2_norm(u0)) / mw.l2_norm(u0)
        finite = bool(np.all(np.isfinite(ref.field.coeffs)))
        elapsed = time.monotonic() - t0
        ok = (-1.3 <= space.slope <= -0.7 and 0.8 <= time_table.slope <= 1.2
              and drift <= 1e-2 and finite and elapsed < 1800)
        _report(9, ok, f"spatial slope={space.slope:.3f}, "
                       f"temporal slope={time_table.slope:.3f}, "
                       f"norm drift={drift:.2e}, elapsed={elapsed:.0f}s")
        assert finite, "reference run produced non-finite values"
        assert -1.3 <= space.slope <= -0.7, \
            f"2-D spatial slope {space.slope:.3f} outside [-1.3, -0.7]"
        assert 0.8 <= time_table.slope <= 1.2, \
            f"2-D temporal slope {time_table.slope:.3f} outside [0.8, 1.2]"
        assert drift <= 1e-2
        assert elapsed < 1800


class TestCriterion10NegativeControl:
    def test_criterion_10(self):
        t0 = time.monotonic()
        small = SimConfig(d=1, L0=20.0, N0=800, tau=1e-3, T=6.0,
                          potential_id="zero", initial_id="free-gaussian",
                          window=WindowPolicy(enabled=False))
        big = small.with_overrides(L0=40.0, N0=1600)
        res_small = mw.evolve(small.validated())
        res_big = mw.evolve(big.validated())
        rel = (mw.l2_distance(res_small.state.field, res_big.state.field)
               / mw.l2_norm(res_big.state.field))
        # the packet does reach the fixed boundary by T=6
        indicator = mw.boundary_indicator(res_small.state.field)
        elapsed = time.monotonic() - t0
        ok = rel >= 1e-1 and indicator > 1e-3
        _report(10, ok, f"relative error without extension={rel:.2e}, "
                        f"boundary indicator={indicator:.2e}, "
                        f"elapsed={elapsed:.0f}s")
        assert indicator > 1e-3, "packet never reached the boundary"
        assert rel >= 1e-1
