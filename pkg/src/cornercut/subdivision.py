"""Refinement engine for level- and position-dependent corner cutting.

One step maps a sequence at level k to level k+1 through the local rules

    f_{2j}   = a_0 * f_j + a_-2 * f_{j+1}
    f_{2j+1} = a_1 * f_j + a_-1 * f_{j+1}

For the adaptive scheme the coefficients at pair j come from a squared
shape parameter lam = d_j / (f_j + eps), where d is the second difference
of the initial data propagated by plain Chaikin steps.  Where f itself is
below a switch threshold the exp-ratio variant driven by the slope takes
over, and where both are tiny the rule degenerates to Chaikin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .masks import (
    DEFAULT_KERNEL,
    EpsilonPolicy,
    MaskQuad,
    RatioKernelConfig,
    clamp_array,
    exp_bspline_mask,
    exp_ratio_array,
    sinh_pair_array,
)
from .sequences import BoundaryPolicy, LevelSequence, second_difference

SCHEMES = ("chaikin", "expb", "nucc")


@dataclass(frozen=True)
class SchemeConfig:
    """Which rule family to refine with, and its knobs.

    ``eps`` and ``variant_threshold`` default to 2^(-2*k0) for the density
    exponent k0 of the data being refined (so 1.0 in curve mode, where
    k0 = 0).  ``fixed_gamma_override`` pins the squared shape parameter
    everywhere, bypassing the data-adaptive selection; it exists for
    reproduction experiments.
    """

    scheme: str = "nucc"
    gamma: float = 0.5  # expb only
    eps: EpsilonPolicy | None = None
    variant_threshold: float | None = None
    clamp: bool = True
    fixed_gamma_override: float | None = None
    boundary: BoundaryPolicy | None = None
    kernel: RatioKernelConfig = DEFAULT_KERNEL

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError("unknown scheme %r (expected one of %s)" % (self.scheme, ", ".join(SCHEMES)))
        if self.variant_threshold is not None and self.variant_threshold <= 0:
            raise ValueError("variant_threshold must be positive")


@dataclass(frozen=True)
class RefinementState:
    """Current sequence f, its auxiliary curvature sequence d, and the level."""

    f: LevelSequence
    d: LevelSequence
    level: int


@dataclass(frozen=True)
class ControlPolygon:
    """2D control points; closed polygons refine periodically."""

    points: np.ndarray
    closed: bool = False

    def __post_init__(self):
        p = np.array(self.points, dtype=float)
        if p.ndim != 2 or p.shape[1] != 2:
            raise ValueError("points must be an (n, 2) array")
        if len(p) < (3 if self.closed else 2):
            raise ValueError("need >= 3 points for a closed polygon, >= 2 for an open one")
        p.flags.writeable = False
        object.__setattr__(self, "points", p)

    def __len__(self):
        return len(self.points)


def _pair_values(seq: LevelSequence):
    """Left/right parent values for every refinement pair in the window."""
    v = seq.values
    if seq.boundary is BoundaryPolicy.PERIODIC:
        return v, np.roll(v, -1)
    if len(v) < 2:
        raise ValueError("insufficient support: need >= 2 values to refine")
    return v[:-1], v[1:]


def _resolve_eps(cfg: SchemeConfig, k0: int) -> EpsilonPolicy:
    return cfg.eps if cfg.eps is not None else EpsilonPolicy(2.0 ** (-2 * k0))


def _resolve_threshold(cfg: SchemeConfig, k0: int) -> float:
    return cfg.variant_threshold if cfg.variant_threshold is not None else 2.0 ** (-2 * k0)


def _sanitize(arr, cap):
    arr = np.where(np.isnan(arr), 0.0, arr)
    return np.clip(arr, -cap, cap)


def _level_coefficients(state: RefinementState, cfg: SchemeConfig):
    """Coefficient quadruple (a_-2, a_-1, a_0, a_1) per pair; scalars when uniform."""
    k = state.level
    if cfg.scheme == "chaikin":
        return 0.25, 0.75, 0.75, 0.25
    if cfg.scheme == "expb":
        # The reproduced pair exp(+-gamma x) lives in physical units, so the
        # mask argument tracks the absolute grid density 2^-(k0+k), not the
        # step count.  (The adaptive scheme needs no such shift: its shape
        # parameter comes from the data and already carries the k0 scale.)
        m = exp_bspline_mask(cfg.gamma, state.f.base_density_exp + k, cfg.kernel)
        return m.a_m2, m.a_m1, m.a_0, m.a_1

    h = 2.0 ** -k
    kern = cfg.kernel
    fj, fj1 = _pair_values(state.f)

    if cfg.fixed_gamma_override is not None:
        lam = np.full_like(fj, cfg.fixed_gamma_override)
        lo, hi = sinh_pair_array(lam, h, kern)
        if cfg.clamp:
            lo = clamp_array(lo, 0.25)
            hi = clamp_array(hi, 0.75)
        return lo, hi, hi, lo

    k0 = state.f.base_density_exp
    eps = _resolve_eps(cfg, k0)
    thr = _resolve_threshold(cfg, k0)
    dj, dj1 = _pair_values(state.d)
    grad = 2.0 ** k * (fj1 - fj)
    cap = kern.lambda_cap
    gcap = math.sqrt(cap)

    out = {}
    for nu, (f_loc, d_loc) in enumerate(((fj, dj), (fj1, dj1))):
        primary = np.abs(f_loc) >= thr
        alt = ~primary & (np.abs(grad) >= thr)
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = np.where(primary, d_loc / (f_loc + eps.signed_array(f_loc)), 0.0)
            gam = np.where(alt, d_loc / (grad + eps.signed_array(grad)), 0.0)
        lam = _sanitize(lam, cap)
        gam = _sanitize(gam, gcap)
        lo_p, hi_p = sinh_pair_array(lam, h, kern)
        if cfg.clamp:
            lo_p = clamp_array(lo_p, 0.25)
            hi_p = clamp_array(hi_p, 0.75)
        if nu == 0:
            r = exp_ratio_array(gam, h, 0.25, kern)
            out["a_m2"] = np.where(primary, lo_p, np.where(alt, r, 0.25))
            out["a_0"] = np.where(primary, hi_p, np.where(alt, 1.0 - r, 0.75))
        else:
            r = exp_ratio_array(gam, h, 0.75, kern)
            out["a_m1"] = np.where(primary, hi_p, np.where(alt, r, 0.75))
            out["a_1"] = np.where(primary, lo_p, np.where(alt, 1.0 - r, 0.25))
    return out["a_m2"], out["a_m1"], out["a_0"], out["a_1"]


def level_masks(state: RefinementState, cfg: SchemeConfig) -> list[MaskQuad]:
    """The per-pair masks one refine_step would apply to ``state``."""
    fj, _ = _pair_values(state.f)
    n = len(fj)
    a_m2, a_m1, a_0, a_1 = (np.broadcast_to(a, n) for a in _level_coefficients(state, cfg))
    first = state.f.first_index
    return [
        MaskQuad(a_m2[i], a_m1[i], a_0[i], a_1[i], j=first + i, level=state.level)
        for i in range(n)
    ]


def _child_sequence(seq: LevelSequence, even, odd) -> LevelSequence:
    out = np.empty(2 * len(even))
    out[0::2] = even
    out[1::2] = odd
    return seq.with_values(out, first_index=2 * seq.first_index, level=seq.level + 1)


def refine_step(state: RefinementState, cfg: SchemeConfig) -> RefinementState:
    """One refinement level: apply the scheme to f and a Chaikin step to d."""
    if state.f.level != state.level or state.d.level != state.level:
        raise ValueError("inconsistent refinement state")
    a_m2, a_m1, a_0, a_1 = _level_coefficients(state, cfg)
    fj, fj1 = _pair_values(state.f)
    f_next = _child_sequence(state.f, a_0 * fj + a_m2 * fj1, a_1 * fj + a_m1 * fj1)
    dj, dj1 = _pair_values(state.d)
    d_next = _child_sequence(state.d, 0.75 * dj + 0.25 * dj1, 0.25 * dj + 0.75 * dj1)
    return RefinementState(f_next, d_next, state.level + 1)


def _initial_d(f0: LevelSequence) -> LevelSequence:
    """Second difference seeding the curvature sequence.

    For open data the end entries replicate the nearest interior value
    instead of using boundary lookups: a replicated-end second difference
    would see a spurious first-difference-sized kink at the window ends,
    which both breaks the exact Chaikin degeneration on affine data and
    poisons the accuracy experiments near open boundaries.
    """
    if f0.boundary is BoundaryPolicy.PERIODIC:
        return second_difference(f0)
    v = f0.values
    if len(v) < 3:
        raise ValueError("insufficient support: need >= 3 values for a second difference")
    core = (v[:-2] - 2.0 * v[1:-1]) + v[2:]
    return f0.with_values(np.concatenate(([core[0]], core, [core[-1]])))


def initial_state(f0: LevelSequence, cfg: SchemeConfig) -> RefinementState:
    if f0.level != 0:
        raise ValueError("initial sequence must be at level 0")
    if cfg.boundary is not None and cfg.boundary is not f0.boundary:
        f0 = LevelSequence(f0.values, f0.first_index, f0.level, f0.base_density_exp, cfg.boundary)
    needs_d = cfg.scheme == "nucc" and cfg.fixed_gamma_override is None
    try:
        d0 = _initial_d(f0)
    except ValueError:
        if needs_d:
            raise
        d0 = f0.with_values(np.zeros(len(f0)))
    return RefinementState(f0, d0, 0)


def run(f0: LevelSequence, cfg: SchemeConfig, levels: int) -> RefinementState:
    """Refine ``levels`` times from level-0 data, seeding d with its second difference."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    state = initial_state(f0, cfg)
    for _ in range(levels):
        state = refine_step(state, cfg)
    return state


def run_traced(f0: LevelSequence, cfg: SchemeConfig, levels: int):
    """Like ``run`` but also returns the per-level mask lists that were applied."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    state = initial_state(f0, cfg)
    trace = []
    for _ in range(levels):
        trace.append(level_masks(state, cfg))
        state = refine_step(state, cfg)
    return state, trace


def refine_curve(poly: ControlPolygon, cfg: SchemeConfig, levels: int) -> ControlPolygon:
    """Refine a 2D control polygon componentwise (k0 = 0, boundary from closedness)."""
    boundary = BoundaryPolicy.PERIODIC if poly.closed else BoundaryPolicy.REPLICATE_END
    cfg = replace(cfg, boundary=boundary)
    cols = []
    for c in range(2):
        f0 = LevelSequence(poly.points[:, c], 0, 0, 0, boundary)
        cols.append(run(f0, cfg, levels).f.values)
    return ControlPolygon(np.column_stack(cols), poly.closed)


def limit_samples(seq: LevelSequence) -> LevelSequence:
    """Limit values at the sequence's own grid points via the 1-6-1 stencil.

    (f_{j-1} + 6 f_j + f_{j+1}) / 8 evaluates the quadratic B-spline curve
    with coefficients f exactly at the dual grid points, which is the limit
    of continuing to refine with the stationary Chaikin tail.  The window is
    trimmed by one index per side for open data and wraps for periodic data.
    """
    v = seq.values
    if seq.boundary is BoundaryPolicy.PERIODIC:
        out = (np.roll(v, 1) + 6.0 * v + np.roll(v, -1)) / 8.0
        return seq.with_values(out)
    if len(v) < 3:
        raise ValueError("insufficient support: need >= 3 values for a limit readout")
    out = (v[:-2] + 6.0 * v[1:-1] + v[2:]) / 8.0
    return seq.with_values(out, first_index=seq.first_index + 1)


def operator_norm(masks) -> float:
    """sup over rules of max(|a_-2| + |a_0|, |a_-1| + |a_1|)."""
    if not masks:
        raise ValueError("operator_norm of an empty mask list")
    return max(
        max(abs(m.a_m2) + abs(m.a_0), abs(m.a_m1) + abs(m.a_1)) for m in masks
    )
