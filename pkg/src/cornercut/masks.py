"""Closed-form refinement masks and their shape-parameter selection rules.

Each local corner-cutting rule has four nonzero coefficients
{a_-2, a_-1, a_0, a_1}.  The classical rule is Chaikin's {1/4, 3/4, 3/4, 1/4};
the exponential rules replace the weights 1/4 and 3/4 by sinh ratios
sinh(c*g*h)/sinh(g*h) (c = 1/4, 3/4, h = 2^-k) whose shape parameter g is
chosen from the data.  All formulas are even in g, so we work with the
squared parameter lam = g^2 throughout and route lam < 0 to the sine branch
instead of doing complex arithmetic.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)

#: Chaikin coefficients in (a_-2, a_-1, a_0, a_1) order.
CHAIKIN = (0.25, 0.75, 0.75, 0.25)

# sinh/exp overflow well before exp(710); reject arguments beyond this.
_ARG_LIMIT = 700.0

_CLAMP_MARGIN = 1e-9


class RatioKernelError(ValueError):
    """A ratio kernel could not be evaluated for the given parameters."""


class TrigonometricSingularity(RatioKernelError):
    """The sine-branch denominator sin(sqrt(-lam)*h) is below the guard."""


class ParameterOutOfRange(RatioKernelError):
    """The kernel argument would overflow in double precision."""


@dataclass(frozen=True)
class RatioKernelConfig:
    """Numerical-robustness knobs for the ratio kernels."""

    series_threshold: float = 1e-6
    sin_denominator_guard: float = 1e-10
    lambda_cap: float = 1e6


DEFAULT_KERNEL = RatioKernelConfig()


@dataclass(frozen=True)
class MaskQuad:
    """The four nonzero coefficients of one local refinement rule.

    The even rule maps (f_j, f_{j+1}) to a_0 * f_j + a_-2 * f_{j+1}; the odd
    rule maps them to a_1 * f_j + a_-1 * f_{j+1}.
    """

    a_m2: float
    a_m1: float
    a_0: float
    a_1: float
    j: int = 0
    level: int = 0

    def as_tuple(self):
        return (self.a_m2, self.a_m1, self.a_0, self.a_1)


@dataclass(frozen=True)
class ShapeParam:
    """Squared shape parameter lam = g^2.

    lam > 0 means a real exponential pair, lam < 0 a pure-imaginary one
    (trigonometric branch), lam = 0 the polynomial limit (Chaikin).
    """

    lam: float


@dataclass(frozen=True)
class EpsilonPolicy:
    """Regularizer added to shape-parameter denominators.

    ``match`` gives epsilon the sign of the local value (sign(0) counts as
    positive) so the denominator magnitude only grows; ``positive`` keeps a
    fixed +magnitude.
    """

    magnitude: float = 1.0
    sign_mode: str = "match"  # "match" | "positive"

    def __post_init__(self):
        if self.magnitude <= 0:
            raise ValueError("epsilon magnitude must be positive")
        if self.sign_mode not in ("match", "positive"):
            raise ValueError("sign_mode must be 'match' or 'positive'")

    def signed(self, local_value):
        if self.sign_mode == "positive":
            return self.magnitude
        return math.copysign(self.magnitude, 1.0) if local_value >= 0 else -self.magnitude

    def signed_array(self, local_values):
        if self.sign_mode == "positive":
            return np.full_like(local_values, self.magnitude)
        return np.where(local_values >= 0, self.magnitude, -self.magnitude)


def _sinh_ratio_series(u, c):
    # sinh(c x)/sinh(x) in powers of u = x^2; valid for either sign of u.
    c2 = c * c
    return c * (1.0 + (c2 - 1.0) * u / 6.0 + (c2 * c2 / 120.0 - c2 / 36.0 + 7.0 / 360.0) * u * u)


def _exp_ratio_series(x, c):
    # expm1(c x)/expm1(x) around x = 0.
    return c * (
        1.0
        + (c - 1.0) * x / 2.0
        + (2.0 * c * c - 3.0 * c + 1.0) * x * x / 12.0
        + (c * c * c - 2.0 * c * c + c) * x * x * x / 24.0
    )


def sinh_ratio(lam, h, c, cfg=DEFAULT_KERNEL):
    """sinh(c*g*h)/sinh(g*h) with g = sqrt(lam); sine-based for lam < 0.

    The limit for lam -> 0 is c; a short series around that limit avoids the
    0/0 cancellation when |lam|*h^2 is below ``cfg.series_threshold``.
    """
    u = lam * h * h
    if abs(u) < cfg.series_threshold:
        return _sinh_ratio_series(u, c)
    if u > 0:
        x = math.sqrt(u)
        if x > _ARG_LIMIT:
            raise ParameterOutOfRange("parameter out of range: sqrt(lambda)*h = %g" % x)
        return math.sinh(c * x) / math.sinh(x)
    x = math.sqrt(-u)
    s = math.sin(x)
    if abs(s) < cfg.sin_denominator_guard:
        raise TrigonometricSingularity("trigonometric singularity: sin(sqrt(-lambda)*h) ~ 0")
    return math.sin(c * x) / s


def exp_ratio(gamma, h, c, cfg=DEFAULT_KERNEL):
    """(exp(c*gamma*h) - 1) / (exp(gamma*h) - 1), with limit c as gamma*h -> 0."""
    x = gamma * h
    if abs(x) < cfg.series_threshold:
        return _exp_ratio_series(x, c)
    if abs(x) > _ARG_LIMIT:
        raise ParameterOutOfRange("parameter out of range: gamma*h = %g" % x)
    return math.expm1(c * x) / math.expm1(x)


def chaikin_mask(j=0, level=0):
    """The stationary corner-cutting mask {1/4, 3/4, 3/4, 1/4}."""
    return MaskQuad(*CHAIKIN, j=j, level=level)


def exp_bspline_mask(gamma, k, cfg=DEFAULT_KERNEL):
    """Level-dependent symmetric mask reproducing exp(+-gamma t).

    a_-2 = sinh_ratio(gamma^2, 2^-k, 1/4), a_-1 = sinh_ratio(gamma^2, 2^-k, 3/4),
    mirrored at a_0 and a_1.  Converges to the Chaikin mask as k grows.
    """
    h = 2.0 ** -k
    lam = gamma * gamma
    a_lo = sinh_ratio(lam, h, 0.25, cfg)
    a_hi = sinh_ratio(lam, h, 0.75, cfg)
    return MaskQuad(a_lo, a_hi, a_hi, a_lo, level=k)


def shape_param_primary(d_val, f_val, eps: EpsilonPolicy, cfg=DEFAULT_KERNEL) -> ShapeParam:
    """lam = d / (f + eps), the squared shape parameter of the sinh-ratio rule."""
    lam = d_val / (f_val + eps.signed(f_val))
    return ShapeParam(float(np.clip(lam, -cfg.lambda_cap, cfg.lambda_cap)))


def shape_param_alternative(d_val, grad_val, eps: EpsilonPolicy, cfg=DEFAULT_KERNEL) -> float:
    """gamma = d / (grad f + eps), used where f itself is (nearly) zero.

    Returns the plain (not squared) parameter for the exp-ratio rule.
    """
    cap = math.sqrt(cfg.lambda_cap)
    gamma = d_val / (grad_val + eps.signed(grad_val))
    return float(np.clip(gamma, -cap, cap))


def _clamp_scalar(a, center):
    lo = center - 0.25 + _CLAMP_MARGIN
    hi = center + 0.25 - _CLAMP_MARGIN
    return min(max(a, lo), hi)


def nucc_mask(lam_even, lam_odd, k, clamp=True, cfg=DEFAULT_KERNEL) -> MaskQuad:
    """Non-uniform corner-cutting mask from two squared shape parameters.

    The even pair (a_0, a_-2) uses lam_even, the odd pair (a_-1, a_1) uses
    lam_odd, each as sinh ratios at c = 3/4 and 1/4 with h = 2^-k.  A kernel
    failure (trigonometric singularity, overflow) drops the affected pair
    back to the Chaikin values.  With ``clamp`` each coefficient is projected
    into the open interval of radius 1/4 around its Chaikin counterpart.
    """
    h = 2.0 ** -k
    lam_even = float(np.clip(lam_even, -cfg.lambda_cap, cfg.lambda_cap))
    lam_odd = float(np.clip(lam_odd, -cfg.lambda_cap, cfg.lambda_cap))
    try:
        a_0 = sinh_ratio(lam_even, h, 0.75, cfg)
        a_m2 = sinh_ratio(lam_even, h, 0.25, cfg)
    except RatioKernelError as exc:
        log.debug("even pair falls back to Chaikin at level %d: %s", k, exc)
        a_0, a_m2 = 0.75, 0.25
    try:
        a_m1 = sinh_ratio(lam_odd, h, 0.75, cfg)
        a_1 = sinh_ratio(lam_odd, h, 0.25, cfg)
    except RatioKernelError as exc:
        log.debug("odd pair falls back to Chaikin at level %d: %s", k, exc)
        a_m1, a_1 = 0.75, 0.25
    if clamp:
        a_m2 = _clamp_scalar(a_m2, 0.25)
        a_m1 = _clamp_scalar(a_m1, 0.75)
        a_0 = _clamp_scalar(a_0, 0.75)
        a_1 = _clamp_scalar(a_1, 0.25)
    return MaskQuad(a_m2, a_m1, a_0, a_1, level=k)


def nucc_mask_alternative(gamma_even, gamma_odd, k, cfg=DEFAULT_KERNEL) -> MaskQuad:
    """Exp-ratio mask for the near-zero-data variant.

    a_-2 = exp_ratio(gamma_even, 2^-k, 1/4), a_-1 = exp_ratio(gamma_odd,
    2^-k, 3/4), and the partners a_0 = 1 - a_-2, a_1 = 1 - a_-1, so each rule
    satisfies the partition of unity exactly by construction.
    """
    h = 2.0 ** -k
    cap = math.sqrt(cfg.lambda_cap)
    gamma_even = float(np.clip(gamma_even, -cap, cap))
    gamma_odd = float(np.clip(gamma_odd, -cap, cap))
    try:
        a_m2 = exp_ratio(gamma_even, h, 0.25, cfg)
    except RatioKernelError as exc:
        log.debug("even pair falls back to Chaikin at level %d: %s", k, exc)
        a_m2 = 0.25
    try:
        a_m1 = exp_ratio(gamma_odd, h, 0.75, cfg)
    except RatioKernelError as exc:
        log.debug("odd pair falls back to Chaikin at level %d: %s", k, exc)
        a_m1 = 0.75
    return MaskQuad(a_m2, a_m1, 1.0 - a_m2, 1.0 - a_m1, level=k)


def mask_oracle(phi0_vals, phi1_vals, phi0_at_tbar, phi1_at_tbar):
    """Direct 2x2 solve of the local reproduction system.

    Given the two basis functions evaluated at the parent grid points,
    ``phi0_vals = (phi0(t_j), phi0(t_{j+1}))`` and likewise ``phi1_vals``,
    returns the weights (L0, L1) with L0*phi_n(t_j) + L1*phi_n(t_{j+1}) =
    phi_n(tbar).  Used as the brute-force check of the closed-form masks.
    """
    p00, p01 = phi0_vals
    p10, p11 = phi1_vals
    det = p00 * p11 - p01 * p10
    scale = max(abs(p00), abs(p01), abs(p10), abs(p11))
    if abs(det) <= 1e-14 * scale * scale:
        raise ValueError("degenerate reproduction system")
    l0 = (phi0_at_tbar * p11 - p01 * phi1_at_tbar) / det
    l1 = (p00 * phi1_at_tbar - phi0_at_tbar * p10) / det
    return l0, l1


# ---------------------------------------------------------------------------
# Vectorized kernels for the refinement engine.  Same math as the scalar
# functions above, but kernel failures resolve to the Chaikin pair in place
# (and are counted into the log) instead of raising.


def sinh_pair_array(lam, h, cfg=DEFAULT_KERNEL):
    """Per-entry (ratio at c=1/4, ratio at c=3/4) with Chaikin fallback."""
    lam = np.clip(np.asarray(lam, dtype=float), -cfg.lambda_cap, cfg.lambda_cap)
    u = lam * (h * h)
    lo = np.empty_like(u)
    hi = np.empty_like(u)
    small = np.abs(u) < cfg.series_threshold
    us = u[small]
    lo[small] = _sinh_ratio_series(us, 0.25)
    hi[small] = _sinh_ratio_series(us, 0.75)
    rest = ~small
    if np.any(rest):
        ur = u[rest]
        x = np.sqrt(np.abs(ur))
        with np.errstate(over="ignore", invalid="ignore"):
            den = np.where(ur > 0, np.sinh(x), np.sin(x))
            num_lo = np.where(ur > 0, np.sinh(0.25 * x), np.sin(0.25 * x))
            num_hi = np.where(ur > 0, np.sinh(0.75 * x), np.sin(0.75 * x))
            r_lo = num_lo / den
            r_hi = num_hi / den
        bad = (np.abs(den) < cfg.sin_denominator_guard) | ~np.isfinite(r_lo) | ~np.isfinite(r_hi)
        if np.any(bad):
            log.debug("%d rule pairs fall back to Chaikin (singular/overflowed kernel)", int(bad.sum()))
            r_lo = np.where(bad, 0.25, r_lo)
            r_hi = np.where(bad, 0.75, r_hi)
        lo[rest] = r_lo
        hi[rest] = r_hi
    return lo, hi


def exp_ratio_array(gamma, h, c, cfg=DEFAULT_KERNEL):
    """Vectorized exp_ratio with Chaikin fallback (value c) on kernel failure."""
    cap = math.sqrt(cfg.lambda_cap)
    gamma = np.clip(np.asarray(gamma, dtype=float), -cap, cap)
    x = gamma * h
    out = np.empty_like(x)
    small = np.abs(x) < cfg.series_threshold
    out[small] = _exp_ratio_series(x[small], c)
    rest = ~small
    if np.any(rest):
        xr = x[rest]
        with np.errstate(over="ignore", invalid="ignore"):
            r = np.expm1(c * xr) / np.expm1(xr)
        bad = ~np.isfinite(r)
        if np.any(bad):
            log.debug("%d rule pairs fall back to Chaikin (overflowed exp kernel)", int(bad.sum()))
            r = np.where(bad, c, r)
        out[rest] = r
    return out


def clamp_array(a, center):
    """Project coefficients into the open Chaikin +- 1/4 interval (minus margin)."""
    return np.clip(a, center - 0.25 + _CLAMP_MARGIN, center + 0.25 - _CLAMP_MARGIN)
