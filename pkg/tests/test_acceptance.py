"""Acceptance suite: one test per criterion, one printed PASS/FAIL line per clause.

Criteria 1 and 4 contain clauses that this implementation demonstrably cannot
meet with the pinned scheme and configurations (coarse-step Crank-Nicolson
pre-asymptotics, and the frozen-nonlinearity bootstrap's O(dt^2) mass kick);
they are asserted literally anyway and fail with the measured numbers.  See
README "Known-red acceptance clauses" for the analysis.
"""

import time
from dataclasses import replace

import numpy as np
import pytest

from dnls_spectral import (
    ExperimentConfig,
    ModelParams,
    PeriodicGrid,
    SpectralField,
    apply_semigroup,
    converge_space,
    converge_time,
    dealias_pad_product,
    extend,
    fit_power_exponent,
    hs_norm,
    initial_field,
    limit_sweep,
    linear_symbol,
    nonlinear_term,
    picard_solve,
    run_simulation,
    validate_linear,
)
from helpers import random_field, triple_convolution

TABLE_PARAMS = ModelParams(alpha=-1.0, beta=0.5, gamma=0.5, eta=0.5)


def report(criterion, ok, detail):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def table_config(**kw):
    base = dict(params=TABLE_PARAMS, L=50.0, N=2**12, dt=0.5, T=1.0, u0_center=25.0, snapshots=1)
    base.update(kw)
    return ExperimentConfig(**base)


def fig3_config(eta, **kw):
    base = dict(
        params=ModelParams(alpha=-1.0, beta=0.0, gamma=0.0, eta=eta),
        L=50.0,
        N=2**9,
        dt=0.015,
        T=0.75,
        u0_center=25.0,
    )
    base.update(kw)
    return ExperimentConfig(**base)


def test_criterion_1_temporal_order():
    # Table-1 protocol: alpha=-1, beta=gamma=eta=0.5, u0=exp(-(x-25)^2),
    # L=50, N=2^12, T=1, five halving levels from dt=T/2; the order column
    # is the contract: every observed order in [1.9, 2.1].
    started = time.perf_counter()
    rep = converge_time(table_config(), levels=5)
    elapsed = time.perf_counter() - started
    orders = rep.orders
    ok_runtime = report("1", elapsed <= 60.0, f"runtime {elapsed:.1f}s <= 60s")
    in_band = np.all((orders >= 1.9) & (orders <= 2.1))
    detail = (
        f"orders from dt=T/2: {np.round(orders, 4).tolist()} all in [1.9, 2.1]"
        " (coarse pairs are pre-asymptotic for this configuration: 6% of the"
        " pulse's spectral mass has |m_k| dt > 2 at dt = 0.5, the CN saturation"
        " regime; the ladder reaches the band from dt = T/32, see README)"
    )
    ok_orders = report("1", bool(in_band), detail)
    assert ok_runtime
    assert ok_orders, detail


def test_criterion_1_companion_asymptotic_tail():
    # not a criterion: documents that the order column does settle into the
    # contract band once the ladder is asymptotic, matching the published
    # pattern 2.004 -> 2.000
    rep = converge_time(table_config(), levels=9)
    tail = rep.orders[-4:]
    ok = report("1*", bool(np.all((tail >= 1.9) & (tail <= 2.1))), f"tail orders {np.round(tail, 4).tolist()}")
    assert ok


def test_criterion_2_spatial_protocol():
    started = time.perf_counter()
    cfg = table_config(N=32, dt=1e-4, T=0.05)
    rep = converge_space(cfg, levels=5)
    elapsed = time.perf_counter() - started
    errors = rep.errors
    ok_runtime = report("2", elapsed <= 300.0, f"runtime {elapsed:.1f}s <= 300s")
    floor = 1e-11
    reached = np.flatnonzero(errors <= floor)
    ok_floor = report("2", reached.size > 0, f"floor <= {floor:g} reached: errors {[f'{e:.2e}' for e in errors]}")
    first = int(reached[0]) if reached.size else len(errors)
    ratios = errors[:first][:-1] / errors[:first][1:] if first >= 2 else np.array([])
    pre_floor_ok = bool(np.all(errors[: first + 1][:-1] > errors[: first + 1][1:])) and bool(
        np.all(ratios >= 8.0)
    )
    ok_ratios = report(
        "2", pre_floor_ok, f"pre-floor per-doubling ratios {[f'{r:.1f}' for r in ratios]} all >= 8"
    )
    assert ok_runtime and ok_floor and ok_ratios


def test_criterion_3_linear_validation():
    cfg = ExperimentConfig(
        params=ModelParams(alpha=0.0, beta=1.0, gamma=-1.0, eta=1.0),
        L=100.0,
        N=2**10,
        dt=0.1,
        T=10.0,
        u0_center=30.0,
    )
    result = validate_linear(cfg, levels=3)
    errors = result.report.errors
    ratios = errors[:-1] / errors[1:]
    ok = report(
        "3",
        bool(np.all(np.abs(ratios - 4.0) <= 0.4)),
        f"stepped-vs-exact sup error ratios {np.round(ratios, 3).tolist()} within 4 +/- 0.4",
    )
    assert ok


def test_criterion_4_mass_law():
    # eta = 0: relative drift of the s=0 norm, every step of the full run
    def norm_track(dt):
        cfg = fig3_config(0.0, dt=dt, snapshots=int(round(0.75 / dt)))
        traj = run_simulation(cfg)
        norms = np.array([hs_norm(f, 0.0) for f in traj.fields])
        return np.max(np.abs(norms - norms[0])) / norms[0]

    drift = norm_track(0.015)
    drift_half = norm_track(0.0075)
    ratio = drift / drift_half
    ok_ratio = report("4", 3.0 <= ratio <= 5.0, f"drift shrinks {ratio:.2f}x under dt halving (~4x)")

    cfg5 = fig3_config(0.5, snapshots=50)
    traj = run_simulation(cfg5)
    norms = np.array([hs_norm(f, 0.0) for f in traj.fields])
    increases = np.diff(norms)
    ok_monotone = report(
        "4",
        bool(np.all(increases <= 1e-10 * norms[0])),
        f"eta=0.5 norm non-increasing within 1e-10 (max step change {np.max(increases):.2e})",
    )
    detail = (
        f"eta=0 relative drift {drift:.3e} <= 1e-4 at dt=0.015"
        " (the frozen-nonlinearity first step injects a one-off 1.9e-4 = 0.86*dt^2"
        " mass kick, scheme-independent; see README)"
    )
    ok_bound = report("4", drift <= 1e-4, detail)
    assert ok_ratio and ok_monotone
    assert ok_bound, detail


def test_criterion_5_semigroup_smoothing():
    grid = PeriodicGrid(50.0, 128)
    params = ModelParams(alpha=-1.0, beta=0.3, gamma=-0.2, eta=0.7)
    symbol = linear_symbol(params, grid)
    rng = np.random.default_rng(2024)
    k2 = 1.0 + grid.k.astype(float) ** 2
    kk2 = grid.k.astype(float) ** 2
    worst = -np.inf
    for _ in range(100):
        u = random_field(grid, rng, decay=0.5)
        for s in (0.0, 1.0):
            for lam in (0.5, 1.0, 2.0):
                for t in (0.01, 0.1, 1.0):
                    lhs = hs_norm(apply_semigroup(symbol, t, u), s + lam) ** 2
                    rhs = np.max(k2**lam * np.exp(-symbol.theta * kk2 * t)) * hs_norm(u, s) ** 2
                    worst = max(worst, (lhs - rhs) / rhs)
    ok = report("5", worst <= 1e-12, f"1800 bound checks, worst relative violation {worst:.2e} <= 1e-12")
    assert ok


def test_criterion_6_oracle_triangle():
    dists = []
    for dt in (1e-2, 5e-3, 2.5e-3):
        cfg = table_config(dt=dt)
        a = run_simulation(cfg).fields[-1]
        b = run_simulation(replace(cfg, scheme="etd2")).fields[-1]
        dists.append(hs_norm(a - b, 0.0))
    ratios = np.array(dists[:-1]) / np.array(dists[1:])
    ok_pair = report(
        "6", bool(np.all(np.abs(ratios - 4.0) <= 0.8)), f"cnab2-etd2 distance ratios {np.round(ratios, 3).tolist()} ~ 4"
    )

    grid = PeriodicGrid(50.0, 2**12)
    cfg = table_config(dt=1e-4, T=0.05)
    u0 = initial_field(cfg, grid)
    traj = picard_solve(TABLE_PARAMS, grid, u0, 0.05, 64, tol=1e-10)
    ref = run_simulation(cfg).fields[-1]
    picard_dist = hs_norm(traj.fields[-1] - ref, 0.0)
    ok_picard = report("6", picard_dist <= 1e-5, f"picard vs cnab2(dt=1e-4) distance {picard_dist:.2e} <= 1e-5")

    worst = 0.0
    rng = np.random.default_rng(77)
    for n in (8, 16, 32, 64):
        g = PeriodicGrid(2 * np.pi, n)
        f = random_field(g, rng, decay=0.0)
        f = SpectralField(g, f.coeffs / np.max(np.abs(f.coeffs)))
        worst = max(worst, float(np.max(np.abs(dealias_pad_product(f, f, f).coeffs - triple_convolution(f)))))
    ok_conv = report("6", worst <= 1e-12, f"FFT cubic vs O(N^3) convolution, worst |diff| {worst:.2e} <= 1e-12")
    assert ok_pair and ok_picard and ok_conv


def test_criterion_7_limit_sweeps():
    values = [0.5, 0.25, 0.125, 0.0625, 0.0]

    started = time.perf_counter()
    rep_eta = limit_sweep(fig3_config(1.0), "eta", values)
    elapsed_eta = time.perf_counter() - started
    d = rep_eta.distances[:-1]
    mono = all(a > b for a, b in zip(d, d[1:]))
    p_eta = fit_power_exponent(rep_eta)
    ok_eta = report(
        "7",
        mono and p_eta >= 0.4 and elapsed_eta <= 180.0,
        f"eta sweep distances {[f'{x:.3e}' for x in d]} decreasing, p={p_eta:.3f} >= 0.4, {elapsed_eta:.1f}s",
    )

    started = time.perf_counter()
    cfg4 = ExperimentConfig(
        params=ModelParams(alpha=-1.0, beta=1.0, gamma=0.0, eta=0.0),
        L=100.0,
        N=2**10,
        dt=0.015,
        T=0.75,
        u0_center=50.0,
    )
    rep_beta = limit_sweep(cfg4, "beta", values)
    elapsed_beta = time.perf_counter() - started
    db = rep_beta.distances[:-1]
    mono_b = all(a > b for a, b in zip(db, db[1:]))
    p_beta = fit_power_exponent(rep_beta)
    ok_beta = report(
        "7",
        mono_b and p_beta >= 0.4 and elapsed_beta <= 180.0,
        f"beta sweep distances {[f'{x:.3e}' for x in db]} decreasing, p={p_beta:.3f} >= 0.4, {elapsed_beta:.1f}s",
    )
    assert ok_eta and ok_beta


def test_criterion_8_cubic_lipschitz_bound():
    rng = np.random.default_rng(4096)
    violations = 0
    worst = 0.0
    for _ in range(1000):
        n = int(rng.choice([8, 16, 32, 64]))
        g = PeriodicGrid(2 * np.pi, n)
        u = random_field(g, rng, decay=float(rng.choice([1.0, 1.5, 2.0])))
        v = random_field(g, rng, decay=float(rng.choice([1.0, 1.5, 2.0])))
        ub, vb = extend(u, 4 * n), extend(v, 4 * n)
        lhs = hs_norm(dealias_pad_product(ub, ub, ub) - dealias_pad_product(vb, vb, vb), 1.0)
        rhs = 4.0 * (hs_norm(u, 1.0) ** 2 + hs_norm(v, 1.0) * hs_norm(u + v, 1.0)) * hs_norm(u - v, 1.0)
        if lhs > rhs:
            violations += 1
        if rhs > 0:
            worst = max(worst, lhs / rhs)
    ok = report("8", violations == 0, f"1000 pairs, C=4: {violations} violations (max LHS/RHS {worst:.3f})")
    assert ok
