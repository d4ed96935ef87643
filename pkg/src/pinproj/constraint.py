"""Per-point policies for the pinned projection axis.

Four policies govern how a proposed displacement on the fixed axis is applied:

* ``vanilla``       -- no pinning, the axis updates like any other.
* ``strict``        -- the axis never moves.
* ``normal_range``  -- the axis moves freely until the cumulative drift from
  its original value would leave (-a, +a); an out-of-range update is skipped
  outright (no clamping), so the bound holds at every iteration.
* ``gaussian_range`` -- every proposed displacement is attenuated by a
  Gaussian bell centred on the original value, so points move consistently
  but ever harder the farther they drift; slight excursions past +-a are
  accepted by design.

For the Gaussian policy the bell width comes from the user's half-range a and
confidence ci: sigma = a / z with z the (1+ci)/2 standard-normal quantile, so
that (-a, +a) covers probability ci of the bell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

POLICY_KINDS = ("vanilla", "strict", "normal_range", "gaussian_range")

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)

# Acklam's rational approximation of the standard normal quantile.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


@dataclass(frozen=True)
class ConstraintPolicy:
    """Tagged policy variant; build via the classmethod constructors.

    ``gauss_premove`` switches the Gaussian displacement argument from the
    hypothetical post-move offset (default) to the current pre-move offset.
    """

    kind: str
    half_range: float | None = None
    confidence: float | None = None
    gauss_premove: bool = False

    def __post_init__(self):
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.kind in ("normal_range", "gaussian_range"):
            if self.half_range is None or not self.half_range > 0:
                raise ValueError(f"{self.kind} needs half_range > 0")
        if self.kind == "gaussian_range":
            if self.confidence is None or not 0.0 < self.confidence < 1.0:
                raise ValueError("gaussian_range needs confidence in (0, 1)")

    @classmethod
    def vanilla(cls) -> "ConstraintPolicy":
        return cls("vanilla")

    @classmethod
    def strict(cls) -> "ConstraintPolicy":
        return cls("strict")

    @classmethod
    def normal_range(cls, half_range: float) -> "ConstraintPolicy":
        return cls("normal_range", half_range=half_range)

    @classmethod
    def gaussian_range(cls, half_range: float, confidence: float,
                       premove: bool = False) -> "ConstraintPolicy":
        return cls("gaussian_range", half_range=half_range, confidence=confidence,
                   gauss_premove=premove)

    @property
    def needs_fixed_feature(self) -> bool:
        return self.kind != "vanilla"


@dataclass(frozen=True)
class GaussianParams:
    """Bell parameters sigma = half_range / z, with z = quantile((1+ci)/2)."""

    sigma: float
    z: float
    half_range: float


def normal_cdf(z: float) -> float:
    """Standard normal CDF via erfc (accurate in both tails)."""
    return 0.5 * math.erfc(-z / _SQRT2)


def inverse_normal_cdf(p: float) -> float:
    """Standard normal quantile: the z with normal_cdf(z) = p, |error| < 1e-9.

    Acklam's rational approximation (~1e-9 on its own) refined by one Newton
    step against the erfc-based CDF. p > 0.5 is reduced to the complement
    first (exact in floating point) so the refinement's residual never
    cancels against a CDF value near 1.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly inside (0, 1), got {p}")
    if p > 0.5:
        return -_quantile_lower_half(1.0 - p)
    return _quantile_lower_half(p)


def _quantile_lower_half(p: float) -> float:
    # 0 < p <= 0.5
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        z = (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
            ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    else:
        q = p - 0.5
        r = q * q
        z = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / \
            (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0)
    density = math.exp(-0.5 * z * z) / _SQRT2PI
    if density > 0.0:
        z -= (normal_cdf(z) - p) / density
    return z


def gaussian_params(half_range: float, confidence: float) -> GaussianParams:
    """Derive the bell width for a half-range and confidence level.

    Uses the positive-tail quantile z = Phi^-1((1+ci)/2) so sigma > 0; the
    equal-magnitude negative-tail z would only flip the sign.
    """
    if not half_range > 0:
        raise ValueError(f"half_range must be positive, got {half_range}")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence}")
    z = inverse_normal_cdf((1.0 + confidence) / 2.0)
    return GaussianParams(sigma=half_range / z, z=z, half_range=half_range)


def moving_ratio(x: float, params: GaussianParams) -> float:
    """Fraction of a proposed displacement applied at offset x from origin.

    exp(-x^2 / (2 sigma^2)): exactly 1 at x = 0, symmetric, and strictly
    decreasing in |x|. The bell's normalization constant cancels against the
    ratio's own normalization, leaving the bare exponential.
    """
    return math.exp(-(x * x) / (2.0 * params.sigma * params.sigma))


def apply_constraint(policy: ConstraintPolicy, origin_value: float,
                     current_value: float, proposed_delta: float) -> float:
    """Route one proposed fixed-axis displacement through a policy.

    Returns the new fixed-axis value. ``origin_value`` is the value assigned
    at initialization; drift is always measured against it, cumulatively.
    """
    if policy.kind == "vanilla":
        return current_value + proposed_delta
    if policy.kind == "strict":
        return current_value
    if policy.kind == "normal_range":
        moved = current_value + proposed_delta
        if abs(moved - origin_value) <= policy.half_range:
            return moved
        return current_value
    params = gaussian_params(policy.half_range, policy.confidence)
    if policy.gauss_premove:
        x = current_value - origin_value
    else:
        x = (current_value + proposed_delta) - origin_value
    return current_value + proposed_delta * moving_ratio(x, params)
