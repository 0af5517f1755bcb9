"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines alongside the pytest verdicts.
"""

import time

import numpy as np

from cornercut import (
    BoundaryPolicy,
    EpsilonPolicy,
    GridSpec,
    LevelSequence,
    SchemeConfig,
    asymptotic_equivalence_profile,
    franke_1d,
    grid_point,
    initial_state,
    nucc_mask,
    nucc_mask_alternative,
    order_table,
    refine_step,
    run,
    run_traced,
    sample_initial,
    smoothness_probe,
    symbol_from_mask,
)
from test_masks import oracle_alt_quad, oracle_nucc_quad

# Clean third-order columns need an epsilon that is negligible against the
# sampled values; the robustness default 2^-2k0 shifts the shape parameters
# by ~eps/f and inflates the coarse rows, so the order experiments pin an
# explicitly tiny epsilon.
ORDER_EPS = EpsilonPolicy(1e-9)


def _report(num, desc, ok, details):
    print("criterion %2d %s: %s (%s)" % (num, "PASS" if ok else "FAIL", desc, details))
    assert ok, "criterion %d failed: %s" % (num, details)


def test_criterion_01_order_reproduction_adaptive():
    t0 = time.time()
    rows = order_table(franke_1d, SchemeConfig(scheme="nucc", eps=ORDER_EPS),
                       range(0, 8), (-2.0, 8.0), eval_level=8)
    elapsed = time.time() - t0
    orders = {r.k0: r.est_order for r in rows}
    tail = [orders[k0] for k0 in range(3, 8)]
    ok = all(2.7 <= o <= 3.3 for o in tail) and 2.85 <= np.mean(tail) <= 3.15 and elapsed < 30
    _report(1, "third-order accuracy of the adaptive scheme", ok,
            "orders k0=3..7: %s, mean %.3f, %.1fs" % (["%.2f" % o for o in tail], np.mean(tail), elapsed))


def test_criterion_02_order_reproduction_exp_bspline():
    t0 = time.time()
    rows = order_table(franke_1d, SchemeConfig(scheme="expb", gamma=0.5),
                       range(0, 8), (-2.0, 8.0), eval_level=8)
    elapsed = time.time() - t0
    tail = [r.est_order for r in rows if r.k0 >= 3]
    ok = all(1.8 <= o <= 2.2 for o in tail) and elapsed < 30
    _report(2, "second-order accuracy of the exponential B-spline baseline", ok,
            "orders k0=3..7: %s, %.1fs" % (["%.2f" % o for o in tail], elapsed))


def test_criterion_03_absolute_errors_informational_only():
    rows = order_table(franke_1d, SchemeConfig(scheme="nucc", eps=ORDER_EPS),
                       range(0, 8), (-2.0, 8.0), eval_level=8)
    errs = [r.max_error for r in rows]
    ok = all(np.isfinite(e) and e > 0 for e in errs)
    _report(3, "absolute error magnitudes reported but not binding", ok,
            "max errors: %s" % ", ".join("%.3e" % e for e in errs))


def test_criterion_04_exponential_reproduction():
    t0 = time.time()
    worst = 0.0
    cases = [
        (1.0, np.exp),
        (1.0, lambda t: 0.3 * np.exp(t) + 1.7 * np.exp(-t)),
        (-1.0, np.cos),
        (-1.0, lambda t: np.cos(t) + 0.2 * np.sin(t)),
    ]
    for lam, func in cases:
        cfg = SchemeConfig(scheme="nucc", fixed_gamma_override=lam)
        x = grid_point(GridSpec(0, 0), np.arange(-6, 8))
        st = run(LevelSequence(func(x), -6), cfg, 6)
        exact = func(st.f.grid_points())
        worst = max(worst, float(np.max(np.abs(st.f.values - exact)) / np.max(np.abs(exact))))
    elapsed = time.time() - t0
    ok = worst <= 1e-10 and elapsed < 1
    _report(4, "exponential/trigonometric span reproduced over 6 levels", ok,
            "max relative error %.2e, %.2fs" % (worst, elapsed))


def test_criterion_05_degeneration_on_affine_data():
    t0 = time.time()
    worst = 0.0
    for slope, offset in ((3.0, 1.0), (0.1, 0.7), (-2.0, 5.0)):
        f0 = LevelSequence(slope * np.arange(-4, 8) + offset, first_index=-4)
        for levels in (1, 3, 5):
            a = run(f0, SchemeConfig(scheme="nucc"), levels).f.values
            b = run(f0, SchemeConfig(scheme="chaikin"), levels).f.values
            worst = max(worst, float(np.max(np.abs(a - b))))
    elapsed = time.time() - t0
    ok = worst <= 1e-15 and elapsed < 1
    _report(5, "adaptive scheme equals Chaikin on affine data at every level", ok,
            "max |difference| %.2e, %.2fs" % (worst, elapsed))


def test_criterion_06_oracle_equivalence():
    t0 = time.time()
    rng = np.random.default_rng(2024)
    worst_p = worst_a = 0.0
    for _ in range(1000):
        lam_e, lam_o = rng.uniform(-4.0, 4.0, 2)
        k = int(rng.integers(0, 11))
        m = nucc_mask(lam_e, lam_o, k, clamp=False)
        ref = oracle_nucc_quad(lam_e, lam_o, k)
        worst_p = max(worst_p, max(abs(a - b) for a, b in zip(m.as_tuple(), ref)))
        g_e, g_o = rng.uniform(-4.0, 4.0, 2)
        ma = nucc_mask_alternative(g_e, g_o, k)
        refa = oracle_alt_quad(g_e, g_o, k)
        worst_a = max(worst_a, max(abs(a - b) for a, b in zip(ma.as_tuple(), refa)))
    elapsed = time.time() - t0
    ok = worst_p <= 1e-10 and worst_a <= 1e-10 and elapsed < 1
    _report(6, "closed-form masks match the 2x2 reproduction solve", ok,
            "max |dev| primary %.2e, alternative %.2e, %.2fs" % (worst_p, worst_a, elapsed))


def test_criterion_07_partition_of_unity():
    t0 = time.time()
    rng = np.random.default_rng(7)
    worst1 = worst2 = 0.0
    for _ in range(1000):
        g_e, g_o = rng.uniform(-6.0, 6.0, 2)
        k = int(rng.integers(0, 11))
        s = symbol_from_mask(nucc_mask_alternative(g_e, g_o, k))
        worst1 = max(worst1, abs(s(1.0) - 2.0))
        worst2 = max(worst2, abs(s(-1.0)))
    # also along an actual all-alternative refinement run
    t = np.arange(-10, 11) - 0.5
    f0 = LevelSequence(0.04 * np.sin(2 * t), -10)
    _, trace = run_traced(f0, SchemeConfig(scheme="nucc", variant_threshold=0.05), 10)
    rep = asymptotic_equivalence_profile(trace)
    worst1 = max(worst1, max(rep.sym_one_dev))
    worst2 = max(worst2, max(rep.sym_minus_one_dev))
    elapsed = time.time() - t0
    ok = worst1 <= 1e-14 and worst2 <= 1e-14 and elapsed < 1
    _report(7, "alternative-variant symbols satisfy a(1)=2, a(-1)=0", ok,
            "max |a(1)-2| %.1e, max |a(-1)| %.1e, %.2fs" % (worst1, worst2, elapsed))


def test_criterion_08_asymptotic_equivalence_decay():
    t0 = time.time()
    f0 = sample_initial(franke_1d, 2, (-2.0, 8.0))
    _, trace = run_traced(f0, SchemeConfig(scheme="nucc"), 13)
    rep = asymptotic_equivalence_profile(trace, fit_min_level=3)
    t = np.arange(-10, 11) - 0.5
    osc = LevelSequence(0.04 * np.sin(2 * t), -10)
    _, trace_a = run_traced(osc, SchemeConfig(scheme="nucc", variant_threshold=0.05), 13)
    rep_a = asymptotic_equivalence_profile(trace_a, fit_min_level=3)
    elapsed = time.time() - t0
    ok = (1.7 <= rep.ae_decay_exponent <= 2.3) and (0.8 <= rep_a.ae_decay_exponent <= 1.2) and elapsed < 5
    _report(8, "mask deviations decay at the expected per-variant rates", ok,
            "primary exponent %.3f, alternative %.3f, %.1fs"
            % (rep.ae_decay_exponent, rep_a.ae_decay_exponent, elapsed))


def test_criterion_09_property_a_diagnostic():
    t0 = time.time()
    f0 = sample_initial(franke_1d, 2, (-2.0, 8.0))
    _, trace = run_traced(f0, SchemeConfig(scheme="nucc"), 13)
    rep = asymptotic_equivalence_profile(trace, fit_min_level=3)
    elapsed = time.time() - t0
    ok = rep.d1_decay_exponent >= 1.7 and elapsed < 5
    _report(9, "first-order symbol differences decay like the smoothness bound", ok,
            "fitted exponent %.3f, %.1fs" % (rep.d1_decay_exponent, elapsed))


def test_criterion_10_smoothness_probe():
    t0 = time.time()
    details = []
    ok = True
    for scheme in ("chaikin", "nucc"):
        rep = smoothness_probe(SchemeConfig(scheme=scheme, eps=EpsilonPolicy(1.0)), 14)
        ratios = rep.increment_ratios()[5:12]  # increments at levels 6..12
        ok = ok and all(0.35 <= r <= 0.65 for r in ratios)
        details.append("%s ratios %.3f..%.3f" % (scheme, min(ratios), max(ratios)))
    elapsed = time.time() - t0
    ok = ok and elapsed < 5
    _report(10, "divided-difference increments halve per level (C^1 signature)", ok,
            "%s, %.1fs" % ("; ".join(details), elapsed))


def test_criterion_11_stability_proxy():
    t0 = time.time()
    rng = np.random.default_rng(31337)
    cfg = SchemeConfig(scheme="nucc")
    worst = 0.0
    for i in range(100):
        n = int(rng.integers(8, 40))
        boundary = BoundaryPolicy.PERIODIC if i % 2 else BoundaryPolicy.REPLICATE_END
        f0 = LevelSequence(rng.uniform(-1.0, 1.0, n), 0, 0, 0, boundary)
        st = initial_state(f0, cfg)
        for _ in range(10):
            st = refine_step(st, cfg)
            worst = max(worst, float(np.abs(st.f.values).max()))
    elapsed = time.time() - t0
    ok = worst <= 5.0 and elapsed < 10
    _report(11, "no blow-up on random unit-bounded inputs over 10 levels", ok,
            "max sup-norm %.3f, %.1fs" % (worst, elapsed))
