"""Acceptance criteria at their stated tolerances.

Each test logs one PASS/FAIL line with its runtime; the lines are repeated
in the terminal summary under "acceptance criteria".
"""
import math

import numpy as np

from qlb import kernels
from qlb.catalog import gaussian
from qlb.checks import node_ensemble, random_field
from qlb.functionals import TriangleDomain, bony_lemma_check, random_bony_instance, triangle_balance
from qlb.harness import (
    StudyConfig,
    consistency_study,
    manufactured_pair,
    nonsolution_pairs,
    plane_wave_pair,
    round_trip_error,
    self_convergence_study,
    shift_stability_refinement,
)
from qlb.lattice import Grid, ModelParams, charge, sample_initial
from qlb.stepper import evolve, run_trajectory

GN = ModelParams.gross_neveu(1.0)
TH = ModelParams.thirring(1.0)
SEED = 20240611


def ensemble(n, seed):
    return node_ensemble(np.random.default_rng(seed), n, amp=1e3, coupling=10.0)


def test_01_node_conservation(criterion):
    with criterion("criterion 01 per-node charge conservation") as rec:
        u, v, m, a, b, h = ensemble(10**6, SEED)
        zero = np.zeros_like(u)
        uh, vh, _ = kernels.node_update(u, v, zero, zero, h, m, a, b)
        before = np.abs(u) ** 2 + np.abs(v) ** 2
        rel = np.abs(np.abs(uh) ** 2 + np.abs(vh) ** 2 - before) / before
        worst = float(rel.max())
        rec["passed"] = worst <= 1e-13
        rec["detail"] = f"max relative violation {worst:.3e} over 1e6 nodes (tol 1e-13)"
    assert rec["passed"]
    assert rec["runtime"] < 10.0, f"runtime {rec['runtime']:.1f} s"


def test_02_determinant_bound(criterion):
    with criterion("criterion 02 determinant lower bound") as rec:
        u, v, m, a, b, h = ensemble(10**6, SEED)
        zero = np.zeros_like(u)
        _, _, det2 = kernels.node_update(u, v, zero, zero, h, m, a, b)
        low = float(det2.min())
        rec["passed"] = low >= 1.0 - 1e-12
        rec["detail"] = f"min |J|^2 = {low!r} over 1e6 nodes (bound 1 - 1e-12)"
    assert rec["passed"]


def test_03_global_conservation(criterion):
    with criterion("criterion 03 global charge, 4000 Gross-Neveu steps at h=1/512") as rec:
        data = gaussian(amp=1.0, width=0.5)
        f0 = sample_initial(data, Grid.covering(*data.support_hint, 1 / 512))
        q0 = charge(f0)
        drift = []
        f, _ = evolve(f0, GN, 4000, observers=[lambda k, f, r: drift.append(abs(r.charge_after - q0) / q0)])
        worst = max(drift)
        rec["passed"] = worst <= 1e-11
        rec["detail"] = f"max relative drift {worst:.3e} over {len(drift)} steps, final width {f.grid.size} (tol 1e-11)"
    assert rec["passed"]
    assert rec["runtime"] < 30.0, f"runtime {rec['runtime']:.1f} s"


def test_04_streaming_exactness(criterion):
    with criterion("criterion 04 streaming bit-exact over 1000 steps") as rec:
        f0 = random_field(np.random.default_rng(SEED), 1 / 64, 200)
        bad = []

        def compare(k, f, report):
            u, _ = f.window(f0.grid.n_min + k, f0.grid.n_max + k)
            _, v = f.window(f0.grid.n_min - k, f0.grid.n_max - k)
            if not (np.array_equal(u, f0.u) and np.array_equal(v, f0.v)):
                bad.append(k)

        evolve(f0, ModelParams(0.0, 0.0, 0.0), 1000, observers=[compare])
        rec["passed"] = not bad
        rec["detail"] = "all 1000 levels are exact translates" if not bad else f"first mismatch at step {bad[0]}"
    assert rec["passed"]


def test_05_forced_round_trip(criterion):
    with criterion("criterion 05 forced-scheme round trip, 3 non-solution pairs x 100 steps") as rec:
        errs = {}
        for pair in nonsolution_pairs():
            for name, params in (("gross-neveu", GN), ("thirring", TH)):
                errs[f"{pair.descriptor}/{name}"] = round_trip_error(pair, params, 1 / 64, 100)
        worst = max(errs.values())
        rec["passed"] = len(nonsolution_pairs()) == 3 and worst <= 1e-12
        rec["detail"] = f"max relative deviation {worst:.3e} over {len(errs)} runs (tol 1e-12)"
    assert rec["passed"], errs


def test_06_consistency_order(criterion):
    with criterion("criterion 06 consistency slope, h = 1/32 .. 1/256") as rec:
        hs = (1 / 32, 1 / 64, 1 / 128, 1 / 256)
        pw = plane_wave_pair(m=1.0, kappa=2.0)
        slopes = {
            "plane-wave": consistency_study(pw, StudyConfig(ModelParams(1.0, 0.0, 0.0), 1.0, hs)).fitted_slope(),
            "manufactured": consistency_study(manufactured_pair(GN), StudyConfig(GN, 1.0, hs)).fitted_slope(),
        }
        rec["passed"] = all(s is not None and s >= 0.9 for s in slopes.values())
        rec["detail"] = ", ".join(f"{k} slope {v:.4f}" for k, v in slopes.items()) + " (need >= 0.9)"
    assert rec["passed"]
    assert rec["runtime"] < 120.0, f"runtime {rec['runtime']:.1f} s"


def test_07_self_convergence(criterion):
    with criterion("criterion 07 self-convergence, T=1, h = 1/32 .. 1/512") as rec:
        hs = (1 / 32, 1 / 64, 1 / 128, 1 / 256, 1 / 512)
        data = gaussian(amp=1.0, width=0.5)
        parts, ok = [], True
        for name, params in (("thirring", TH), ("gross-neveu", GN)):
            tab = self_convergence_study(data, StudyConfig(params, 1.0, hs))
            e = dict(zip(tab.h, tab.error))
            ratio = e[1 / 256] / e[1 / 32]
            ok = ok and tab.strictly_decreasing and ratio < 0.25
            parts.append(f"{name}: decreasing={tab.strictly_decreasing}, e(1/256)/e(1/32)={ratio:.4f}")
        rec["passed"] = ok
        rec["detail"] = "; ".join(parts)
    assert rec["passed"]
    assert rec["runtime"] < 300.0, f"runtime {rec['runtime']:.1f} s"


def test_08_bony_lemma(criterion):
    with criterion("criterion 08 Bony lemma, 1000 instances of 32 levels") as rec:
        rng = np.random.default_rng(SEED)
        worst, failures = math.inf, 0
        for i in range(1000):
            rep = bony_lemma_check(*random_bony_instance(rng, 32, exact=bool(i % 2)))
            worst = min(worst, rep.worst)
            failures += not rep.ok
        rec["passed"] = failures == 0
        rec["detail"] = f"{failures} failures, worst normalized slack {worst:.3e} (need >= -1e-12)"
    assert rec["passed"]
    assert rec["runtime"] < 10.0, f"runtime {rec['runtime']:.1f} s"


def test_09_triangle_balance(criterion):
    with criterion("criterion 09 triangle balance, 100 trajectories") as rec:
        rng = np.random.default_rng(SEED)
        worst_res, worst_slack, failures = 0.0, math.inf, 0
        for _ in range(100):
            params = ModelParams(rng.uniform(0, 5), rng.uniform(-5, 5), rng.uniform(-5, 5))
            f0 = random_field(rng, rng.uniform(0.01, 0.5), int(rng.integers(4, 60)))
            k0 = int(rng.integers(0, 10))
            k1 = k0 + int(rng.integers(0, 51))
            n1 = int(rng.integers(f0.grid.n_min - 10, f0.grid.n_max + 11))
            rep = triangle_balance(run_trajectory(f0, params, k1 + 1), TriangleDomain(n1, k1, k0))
            worst_res = max(worst_res, rep.max_relative_residual)
            worst_slack = min(worst_slack, rep.min_slack / max(rep.base, np.finfo(float).tiny))
            failures += not rep.ok
        rec["passed"] = failures == 0
        rec["detail"] = (
            f"max relative balance residual {worst_res:.3e} (tol 1e-11), "
            f"min slack/base {worst_slack:.3e}, {failures} failures"
        )
    assert rec["passed"]


def test_10_shift_stability(criterion):
    with criterion("criterion 10 shift stability, n0=1, h=1/64 and 1/128") as rec:
        data = gaussian(amp=0.2, width=0.4)
        cfg = StudyConfig(GN, 2.0, (1 / 64, 1 / 128))
        q = charge(sample_initial(data, Grid.covering(*data.support_hint, 1 / 128)))
        studies, spread = shift_stability_refinement(data, 1, cfg)
        ratios = [s.ratio for s in studies]
        rec["passed"] = q <= 0.1 and spread <= 2.0
        rec["detail"] = (
            f"charge {q:.4f}, max F1/F1(k0) = {ratios[0]:.6f} at h=1/64 and {ratios[1]:.6f} at h=1/128, "
            f"spread {spread:.4f} (need <= 2)"
        )
    assert rec["passed"]


def test_11_gauge_covariance(criterion):
    with criterion("criterion 11 gauge covariance over 1e5 states") as rec:
        rng = np.random.default_rng(SEED + 11)
        u, v, m, a, b, h = node_ensemble(rng, 10**5, amp=1e3, coupling=10.0)
        rot = np.exp(2j * np.pi * rng.random(len(u)))
        zero = np.zeros_like(u)
        uh, vh, _ = kernels.node_update(u, v, zero, zero, h, m, a, b)
        ur, vr, _ = kernels.node_update(rot * u, rot * v, zero, zero, h, m, a, b)
        norm = np.sqrt(np.abs(u) ** 2 + np.abs(v) ** 2)
        rel = np.maximum(np.abs(ur - rot * uh), np.abs(vr - rot * vh)) / norm
        worst = float(rel.max())
        rec["passed"] = worst <= 1e-13
        over = int(np.count_nonzero(rel > 1e-13))
        rec["detail"] = f"max relative deviation {worst:.3e}, {over} of {len(u)} states above tol 1e-13"
    assert rec["passed"]
