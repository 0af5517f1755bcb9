"""Symbol-level diagnostics and empirical accuracy experiments.

The diagnostics view each mask through its Laurent symbol
a(z) = sum_n a_n z^n and track two decay profiles along a refinement run:
the sup deviation of the applied masks from the Chaikin mask (whose level
sums must stay summable for convergence to transfer), and the first-order
symbol difference D_1(z) = a^{j}(z) - z a^{j-1}(z) at z = +-1 that controls
smoothness.  The experiments reproduce the empirical accuracy picture:
order tables over shrinking sampling density and a delta-sequence
smoothness probe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .masks import CHAIKIN, MaskQuad
from .sequences import BoundaryPolicy, LevelSequence, forward_difference, second_difference
from .subdivision import SchemeConfig, initial_state, limit_samples, refine_step, run


@dataclass(frozen=True)
class LaurentSymbol:
    """Finitely supported Laurent polynomial sum_n a_n z^n."""

    coeffs: dict

    def __call__(self, z):
        return sum(a * z ** n for n, a in sorted(self.coeffs.items()))


def symbol_from_mask(m: MaskQuad) -> LaurentSymbol:
    return LaurentSymbol({-2: m.a_m2, -1: m.a_m1, 0: m.a_0, 1: m.a_1})


def property_a_d1(sym_j: LaurentSymbol, sym_jm1: LaurentSymbol, z) -> float:
    """|a^{j}(z) - z * a^{j-1}(z)| at z = +1 or -1."""
    if z not in (-1, 1):
        raise ValueError("z must be -1 or +1")
    return abs(sym_j(z) - z * sym_jm1(z))


def fit_decay_exponent(levels, values, min_level=None):
    """Least-squares exponent p with values ~ C * 2^(-p*level).

    Non-positive values are skipped; returns None when fewer than two points
    remain.
    """
    pts = [
        (k, v)
        for k, v in zip(levels, values)
        if v > 0 and (min_level is None or k >= min_level)
    ]
    if len(pts) < 2:
        return None
    ks = np.array([p[0] for p in pts], dtype=float)
    logs = np.log2([p[1] for p in pts])
    slope = np.polyfit(ks, logs, 1)[0]
    return float(-slope)


@dataclass(frozen=True)
class DiagnosticReport:
    """Per-level symbol diagnostics of one refinement run."""

    levels: list
    ae_deviation: list  # sup_j sum_n |a^{j,k}_n - chaikin_n|
    ae_partial_sum: list
    d1_sup: list  # sup_j max(|D_1(+1)|, |D_1(-1)|)
    sym_one_dev: list  # sup_j |a^{j,k}(1) - 2|
    sym_minus_one_dev: list  # sup_j |a^{j,k}(-1)|
    ae_decay_exponent: float | None
    d1_decay_exponent: float | None


def asymptotic_equivalence_profile(run_trace, fit_min_level=3) -> DiagnosticReport:
    """Deviation-from-Chaikin and D_1 profiles for a per-level mask trace."""
    if not run_trace:
        raise ValueError("empty mask trace")
    chaikin = np.array(CHAIKIN)
    levels, ae_dev, d1_sup, s1_dev, sm1_dev = [], [], [], [], []
    for masks in run_trace:
        arr = np.array([m.as_tuple() for m in masks])
        levels.append(masks[0].level)
        ae_dev.append(float(np.abs(arr - chaikin).sum(axis=1).max()))
        s1 = arr.sum(axis=1)
        sm1 = arr[:, 0] - arr[:, 1] + arr[:, 2] - arr[:, 3]
        s1_dev.append(float(np.abs(s1 - 2.0).max()))
        sm1_dev.append(float(np.abs(sm1).max()))
        if len(arr) >= 2:
            d1_plus = np.abs(s1[1:] - s1[:-1]).max()
            d1_minus = np.abs(sm1[1:] + sm1[:-1]).max()
            d1_sup.append(float(max(d1_plus, d1_minus)))
        else:
            d1_sup.append(0.0)
    partial = list(np.cumsum(ae_dev))
    return DiagnosticReport(
        levels=levels,
        ae_deviation=ae_dev,
        ae_partial_sum=[float(p) for p in partial],
        d1_sup=d1_sup,
        sym_one_dev=s1_dev,
        sym_minus_one_dev=sm1_dev,
        ae_decay_exponent=fit_decay_exponent(levels, ae_dev, fit_min_level),
        d1_decay_exponent=fit_decay_exponent(levels, d1_sup, fit_min_level),
    )


def franke_1d(t):
    """Sum of four Gaussian bumps used as the accuracy test function.

    Accepts scalars or arrays.
    """
    s = 1.125 * np.asarray(t, dtype=float)
    return (
        0.75 * np.exp(-((s - 2.0) ** 2) / 4.0)
        + 0.75 * np.exp(-((s + 1.0) ** 2) / 49.0)
        + 0.5 * np.exp(-((s - 7.0) ** 2) / 4.0)
        - 0.2 * np.exp(-((s - 4.0) ** 2))
    )


@dataclass(frozen=True)
class OrderTableRow:
    k0: int
    max_error: float
    est_order: float | None


def order_estimate(prev_error, error):
    """log2 of the error drop between consecutive density halvings."""
    return float(np.log2(prev_error / error))


def sample_initial(f, k0, domain) -> LevelSequence:
    """Sample f at the level-0 dual grid 2^-k0 * (n - 1/2) covering ``domain``."""
    lo, hi = domain
    if not hi > lo:
        raise ValueError("domain too small: empty interval")
    n_lo = math.ceil(lo * 2.0 ** k0 + 0.5)
    n_hi = math.floor(hi * 2.0 ** k0 + 0.5)
    if n_hi - n_lo + 1 < 4:
        raise ValueError("domain too small: fewer than 4 samples at density 2^-%d" % k0)
    idx = np.arange(n_lo, n_hi + 1)
    x = (idx - 0.5) * 2.0 ** -k0
    return LevelSequence(np.asarray(f(x), dtype=float), n_lo, 0, k0, BoundaryPolicy.REPLICATE_END)


def order_table(f, scheme_cfg: SchemeConfig, k0_range, domain=(-2.0, 8.0), eval_level=8,
                boundary_exclude=None):
    """Max-error rows over shrinking sampling density, with order estimates.

    For each k0 the initial data samples f with density 2^-k0 over ``domain``,
    refines ``eval_level`` levels, reads the limit through the 1-6-1 stencil
    and takes the max deviation from exact samples over an interior window:
    ``boundary_exclude`` indices per side (default 2*eval_level) are dropped
    to keep end effects out of the scan.  The order estimate is log2 of the
    ratio of consecutive max errors.

    Clean third-order columns need a config whose epsilon magnitude is
    negligible against the sampled values; an epsilon comparable to 2^-2k0
    shifts the shape parameters by ~eps/f and visibly inflates the coarse
    rows.
    """
    rows = []
    prev_err = None
    margin = 2 * eval_level if boundary_exclude is None else int(boundary_exclude)
    for k0 in k0_range:
        f0 = sample_initial(f, k0, domain)
        state = run(f0, scheme_cfg, eval_level)
        lim = limit_samples(state.f)
        if len(lim) <= 2 * margin + 1:
            raise ValueError("domain too small: boundary exclusion leaves no interior window")
        keep = slice(margin, -margin) if margin else slice(None)
        vals = lim.values[keep]
        exact = np.asarray(f(lim.grid_points()[keep]), dtype=float)
        err = float(np.abs(vals - exact).max())
        # undefined at the rounding floor where either error is exactly zero
        est = order_estimate(prev_err, err) if prev_err and err else None
        rows.append(OrderTableRow(k0=k0, max_error=err, est_order=est))
        prev_err = err
    return rows


@dataclass(frozen=True)
class SmoothnessReport:
    """Divided-difference convergence data from the delta-sequence probe."""

    levels: list
    grad_sup: list  # sup |first divided differences| per level
    increments: list  # sup |grad^{k+1} - upsampled grad^k|, entry k
    limit_grid: np.ndarray
    limit_values: np.ndarray
    first_dd_grid: np.ndarray
    first_dd_values: np.ndarray
    second_dd_grid: np.ndarray
    second_dd_values: np.ndarray

    def increment_ratios(self):
        return [
            b / a if a > 0 else float("nan")
            for a, b in zip(self.increments[:-1], self.increments[1:])
        ]


def _grad_increment(g0: LevelSequence, g1: LevelSequence) -> float:
    # Each child divided difference sits inside parent interval ceil(i/2).
    idx = g1.indices()
    parents = (idx + 1) // 2
    return float(np.abs(g1.values - g0.value_at(parents)).max())


def smoothness_probe(scheme_cfg: SchemeConfig, levels: int, half_width=8, initial=None) -> SmoothnessReport:
    """Refine the Kronecker delta and track first divided differences.

    Reports sup norms of the first divided differences per level and their
    successive increments (the Cauchy profile whose geometric decay is the
    empirical C^1 signature), plus the final limit samples and first/second
    divided-difference curves for plotting.  ``initial`` substitutes other
    level-0 data for the delta sequence.
    """
    if levels < 4:
        raise ValueError("levels must be >= 4")
    if initial is not None:
        f0 = initial
    else:
        n = 2 * half_width + 1
        values = np.zeros(n)
        values[half_width] = 1.0
        f0 = LevelSequence(values, -half_width, 0, 0, BoundaryPolicy.REPLICATE_END)
    state = initial_state(f0, scheme_cfg)
    grads = [forward_difference(state.f)]
    lvl = [0]
    for _ in range(levels):
        state = refine_step(state, scheme_cfg)
        grads.append(forward_difference(state.f))
        lvl.append(state.level)
    grad_sup = [float(np.abs(g.values).max()) for g in grads]
    increments = [_grad_increment(g0, g1) for g0, g1 in zip(grads[:-1], grads[1:])]
    lim = limit_samples(state.f)
    first_dd = grads[-1]
    second_dd = second_difference(state.f)
    dd_grid = first_dd.grid_points() - 0.5 * 2.0 ** -(first_dd.level + first_dd.base_density_exp)
    return SmoothnessReport(
        levels=lvl,
        grad_sup=grad_sup,
        increments=increments,
        limit_grid=lim.grid_points(),
        limit_values=lim.values,
        first_dd_grid=dd_grid,
        first_dd_values=first_dd.values,
        second_dd_grid=second_dd.grid_points(),
        second_dd_values=second_dd.values,
    )
