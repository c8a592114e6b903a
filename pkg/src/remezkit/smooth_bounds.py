"""Remez-type bounds for smooth functions.

Everything here combines a Remez constant R_d with an approximation-error
bound E_d: any valid upper bounds may be supplied.  The Taylor route uses
E_d = M_{d+1}/(d+1)!, where M_l bounds the sum of absolute values of all
order-l partials over the unit ball.  No continuity-modulus refinement of
the top derivative is attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .errors import InputError
from .remez_bounds import RemezConstant

RULE_MIN_OVER_DEGREES = "min-over-degrees"
RULE_TAYLOR_MIN = "taylor-min-over-degrees"
RULE_FIXED_DEGREE = "fixed-degree"
RULE_FIXED_DEGREE_OBSTRUCTION = "fixed-degree-obstruction"
RULE_CURVE_FIXED_DEGREE = "curve-fixed-degree"
RULE_UNIFORM_M = "uniform-M"
RULE_UNIFORM_M_DIRECT = "uniform-M-direct"

_EXACT_FACTORIAL_MAX = 170  # largest n with n! representable in float64


def _div_factorial(value: float, n: int) -> float:
    """value / n!, falling back to log space once n! overflows float64."""
    if n <= _EXACT_FACTORIAL_MAX:
        return value / math.factorial(n)
    if value == 0.0:
        return 0.0
    return math.exp(math.log(value) - math.lgamma(n + 1.0))


def _safe_pow(base: float, exponent: int) -> float:
    try:
        return base**exponent
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class SmoothFnSpec:
    """Smoothness order k and derivative-norm bounds M_0..M_k."""

    k: int
    deriv_bounds: tuple[float, ...]
    uniform_M: Optional[float] = None

    def __post_init__(self):
        if self.k < 1:
            raise InputError(f"k: smoothness order must be >= 1, got {self.k}")
        bounds = tuple(float(b) for b in self.deriv_bounds)
        if len(bounds) != self.k + 1:
            raise InputError(
                f"deriv_bounds: expected M_0..M_{self.k} ({self.k + 1} values), "
                f"got {len(bounds)}"
            )
        if any(b < 0 or math.isnan(b) for b in bounds):
            raise InputError("deriv_bounds: derivative bounds must be nonnegative")
        object.__setattr__(self, "deriv_bounds", bounds)
        if self.uniform_M is not None:
            if any(b > self.uniform_M for b in bounds):
                raise InputError("uniform_M: must dominate every listed M_l")

    def bound(self, l: int) -> float:
        if not (0 <= l <= self.k):
            raise InputError(f"l: derivative order must lie in 0..{self.k}, got {l}")
        return self.deriv_bounds[l]


@dataclass(frozen=True)
class BoundReport:
    """A computed inequality: chosen degree, the bound, and its inputs.

    log10_bound is set only when the bound is mathematically finite but
    overflows float64 (bound is then inf and log10_bound holds the size).
    """

    bound: float
    chosen_degree: int
    r_d_used: Optional[RemezConstant]
    e_d_used: float
    L: float
    rule: str
    log10_bound: Optional[float] = None

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.bound) and self.log10_bound is None

    def to_dict(self) -> dict:
        out = {
            "bound": "inf" if math.isinf(self.bound) else float(self.bound),
            "chosen_degree": self.chosen_degree,
            "r_d": None if self.r_d_used is None else self.r_d_used.to_dict(),
            "e_d": float(self.e_d_used),
            "L": float(self.L),
            "rule": self.rule,
        }
        if self.log10_bound is not None:
            out["log10_bound"] = float(self.log10_bound)
        return out

    def csv_row(self) -> list:
        r = "inf" if self.r_d_used is None or self.r_d_used.is_infinite else self.r_d_used.value
        return [self.rule, self.chosen_degree, r, self.e_d_used, self.L,
                "inf" if math.isinf(self.bound) else self.bound]


def taylor_remainder(spec: SmoothFnSpec, d: int) -> float:
    """Degree-d Taylor remainder bound M_{d+1}/(d+1)!."""
    if d < 0:
        raise InputError(f"d: degree must be >= 0, got {d}")
    if d >= spec.k:
        raise InputError(
            f"d: missing derivative bound M_{d + 1}; only M_0..M_{spec.k} are available"
        )
    return _div_factorial(spec.deriv_bounds[d + 1], d + 1)


def smooth_remez(
    L: float, entries: Iterable[tuple[RemezConstant, float]], rule: str = RULE_MIN_OVER_DEGREES
) -> BoundReport:
    """min over entries of R_d (L + E_d) + E_d; any valid E_d upper bounds do.

    Entries with infinite R_d are skipped; if all are infinite the bound is
    infinite.  Ties between degrees go to the lowest degree.
    """
    if L < 0:
        raise InputError(f"L: sampled maximum must be >= 0, got {L!r}")
    entries = list(entries)
    if not entries:
        raise InputError("entries: at least one (R_d, E_d) pair is required")
    best: Optional[BoundReport] = None
    fallback: Optional[tuple[RemezConstant, float]] = None
    for r, e in entries:
        if e < 0:
            raise InputError(f"E_d: approximation errors must be >= 0, got {e!r}")
        if r.is_infinite:
            if fallback is None or r.d < fallback[0].d:
                fallback = (r, e)
            continue
        value = r.value * (L + e) + e
        if best is None or value < best.bound or (value == best.bound and r.d < best.chosen_degree):
            best = BoundReport(value, r.d, r, float(e), float(L), rule)
    if best is not None:
        return best
    r, e = fallback
    return BoundReport(math.inf, r.d, r, float(e), float(L), rule)


def taylor_remez(
    spec: SmoothFnSpec, L: float, R_provider: Callable[[int], RemezConstant]
) -> BoundReport:
    """Minimize R_d (L + E^T_d) + E^T_d over d = 0..k-1 with Taylor remainders."""
    entries = [(R_provider(d), taylor_remainder(spec, d)) for d in range(spec.k)]
    return smooth_remez(L, entries, rule=RULE_TAYLOR_MIN)


def fixed_degree_bound(R_s: RemezConstant, L: float, M_next: float, s: int) -> BoundReport:
    """Single-degree bound using only L and M_{s+1}.

    An infinite R_s means the maximum cannot be bounded this way at all
    (polynomials of degree s vanishing on Z are unbounded on the ball).
    """
    if s < 0:
        raise InputError(f"s: degree must be >= 0, got {s}")
    if L < 0 or M_next < 0:
        raise InputError("L, M_next: must be nonnegative")
    e = _div_factorial(M_next, s + 1)
    if R_s.is_infinite:
        return BoundReport(math.inf, s, R_s, e, float(L), RULE_FIXED_DEGREE_OBSTRUCTION)
    return BoundReport(R_s.value * (L + e) + e, s, R_s, e, float(L), RULE_FIXED_DEGREE)


def curve_smooth_bound(
    sigma: float, eps0: float, s: int, L: float, M_next: float
) -> BoundReport:
    """Bound along a plane curve: (8/kappa_s)^s (L + E^T_s) + E^T_s.

    kappa_s = (1/(2l))(1 - 24/m) with l = 1/(eps0*sigma), m = sigma/s;
    requires s <= sigma/24 - 1 so that kappa_s stays positive.
    """
    from .set_models import Curve

    Curve(sigma, eps0)  # validate the (sigma, eps0) pair
    if s < 1:
        raise InputError(f"s: degree must be >= 1, got {s}")
    if s > sigma / 24.0 - 1.0:
        raise InputError(
            f"s: degree too large for this curve; need s <= sigma/24 - 1 = {sigma / 24.0 - 1.0!r}"
        )
    if L < 0 or M_next < 0:
        raise InputError("L, M_next: must be nonnegative")
    l = 1.0 / (eps0 * sigma)
    m = sigma / s
    kappa = (1.0 / (2.0 * l)) * (1.0 - 24.0 / m)
    if kappa <= 0:
        raise InputError(f"s: degree too large, entropy factor vanished (kappa={kappa!r})")
    e = _div_factorial(M_next, s + 1)
    factor = _safe_pow(8.0 / kappa, s)
    r = RemezConstant(value=factor, provenance="entropy-bound", d=s, n=2)
    return BoundReport(factor * (L + e) + e, s, r, e, float(L), RULE_CURVE_FIXED_DEGREE)


def select_d0(L: float, M: float, k: int) -> int:
    """Degree selection from the relative size of L and M.

    d0 = 0 when L > M; d0 = k-1 when L <= M/k!; otherwise the smallest
    degree with M/(d0+1)! <= L, which then also satisfies L <= M/d0!.
    At exact factorial thresholds consecutive degrees both satisfy the
    two-sided inequality; this scan resolves the tie deterministically
    toward the smaller degree, matching the worked reference values.
    """
    if not (M > 0):
        raise InputError(f"M: uniform derivative bound must be positive, got {M!r}")
    if k < 1:
        raise InputError(f"k: smoothness order must be >= 1, got {k}")
    if L < 0:
        raise InputError(f"L: sampled maximum must be >= 0, got {L!r}")
    if L > M:
        return 0
    if L <= _div_factorial(M, k):
        return k - 1
    d0 = 1
    while _div_factorial(M, d0 + 1) > L:
        d0 += 1
    return d0


def general_bound(q: float, L: float, M: float, k: int) -> BoundReport:
    """Uniform-derivative bound 2 q^d0 L + M/(d0+1)! with automatic d0.

    For L > M the direct form L + 2M applies instead (one sampled value
    plus a gradient sweep across the ball).
    """
    if not (q > 0):
        raise InputError(f"q: must be positive, got {q!r}")
    d0 = select_d0(L, M, k)
    e = _div_factorial(M, d0 + 1)
    if L > M:
        return BoundReport(L + 2.0 * M, 0, None, M, float(L), RULE_UNIFORM_M_DIRECT)
    bound = 2.0 * _safe_pow(q, d0) * L + e
    log10_bound = None
    if math.isinf(bound) and L > 0:
        # The value exceeds float64; report its magnitude in log10.
        t1 = math.log10(2.0) + d0 * math.log10(q) + math.log10(L)
        t2 = math.log10(e) if e > 0 else -math.inf
        top, rest = max(t1, t2), min(t1, t2)
        log10_bound = top + math.log10(1.0 + 10.0 ** (rest - top))
    return BoundReport(bound, d0, None, e, float(L), RULE_UNIFORM_M, log10_bound=log10_bound)


def entropy_remez_provider(profile, n: int = 1) -> Callable[[int], RemezConstant]:
    """Degree -> RemezConstant map backed by a covering profile.

    Degree 0 is exact: degree-0 polynomials are constants, so R_0 = 1 for
    any nonempty set.  Higher degrees take the entropy upper bound at the
    certified lower end of omega_d.
    """
    from .entropy import omega_from_profile
    from .remez_bounds import remez_constant_upper

    def provider(d: int) -> RemezConstant:
        if d == 0:
            return RemezConstant(1.0, "closed-form", 0, n)
        return remez_constant_upper(n, d, omega_from_profile(profile, d).lo)

    return provider


def whitney_lower(R_d: RemezConstant, d: int) -> float:
    """Lower bound (d+1)!/(R_d + 1) on M_{d+1} of any smooth extension that
    vanishes on Z and reaches 1 somewhere in the ball.

    An infinite R_d gives the vacuous bound 0.
    """
    if d < 0:
        raise InputError(f"d: degree must be >= 0, got {d}")
    if R_d.is_infinite:
        return 0.0
    if d + 1 <= _EXACT_FACTORIAL_MAX:
        return math.factorial(d + 1) / (R_d.value + 1.0)
    # Log-space fallback; shaded down a hair so it stays a valid lower bound.
    try:
        value = math.exp(math.lgamma(d + 2.0) - math.log(R_d.value + 1.0))
    except OverflowError:
        import sys

        return sys.float_info.max
    return value * (1.0 - 1e-9)
