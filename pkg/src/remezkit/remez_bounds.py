"""Chebyshev polynomials and Remez-constant bounds.

Evaluation outside [-1, 1] uses the three-term recurrence on scaled
(mantissa, exponent) pairs rather than the cosh closed form: integer
inputs stay exact and the recurrence cannot overflow even where the value
exceeds the float64 range.  The public chebyshev_T returns inf once the
true value is unrepresentable; chebyshev_T_log10 stays finite there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import InputError

_LOG10_2 = math.log10(2.0)


def _cheb_scaled(d: int, x: float) -> tuple[float, int]:
    """T_d(|x|) as (mantissa, exponent) with value = mantissa * 2**exponent."""
    if d == 0:
        return 1.0, 0
    x = abs(x)
    pm, pe = 1.0, 0  # T_0
    cm, ce = math.frexp(x) if x != 0.0 else (0.0, 0)  # T_1
    for _ in range(d - 1):
        # T_{k+1} = 2x*T_k - T_{k-1}; align the smaller exponent.
        nm = 2.0 * x * cm
        ne = ce
        shift = pe - ne
        if shift > -1080:
            nm -= math.ldexp(pm, shift)
        pm, pe = cm, ce
        if nm == 0.0:
            cm, ce = 0.0, 0
        else:
            f, e = math.frexp(nm)
            cm, ce = f, e + ne
    return cm, ce


def chebyshev_T(d: int, x: float) -> float:
    """T_d(x), exact for exact inputs, inf if the value overflows float64."""
    if d < 0:
        raise InputError(f"d: degree must be >= 0, got {d}")
    m, e = _cheb_scaled(d, x)
    sign = -1.0 if (x < 0 and d % 2 == 1) else 1.0
    try:
        val = math.ldexp(m, e)
    except OverflowError:
        return sign * math.inf
    return sign * val


def chebyshev_T_log10(d: int, x: float) -> float:
    """log10 |T_d(x)|; -inf when T_d(x) = 0."""
    if d < 0:
        raise InputError(f"d: degree must be >= 0, got {d}")
    m, e = _cheb_scaled(d, x)
    if m == 0.0:
        return -math.inf
    return math.log10(abs(m)) + e * _LOG10_2


@dataclass(frozen=True)
class RemezConstant:
    """An upper or lower bound on the Remez constant R_d(Z).

    value is math.inf exactly when the constant is infinite (Z inside the
    zero set of a degree-d polynomial gives no bound at all); in that case
    log10_value is None.  For finite constants log10_value is always
    finite, even if value itself overflows float64.
    """

    value: float
    provenance: str  # "closed-form" | "entropy-bound" | "lp-exact-lower"
    d: int
    n: int
    log10_value: Optional[float] = None

    def __post_init__(self):
        if self.provenance not in ("closed-form", "entropy-bound", "lp-exact-lower"):
            raise InputError(f"provenance: unknown kind {self.provenance!r}")
        if self.log10_value is None:
            if not math.isinf(self.value):
                object.__setattr__(self, "log10_value", math.log10(max(self.value, 1.0)))
        elif math.isnan(self.value):
            raise InputError("value: must not be NaN")

    @classmethod
    def infinite(cls, provenance: str, d: int, n: int) -> "RemezConstant":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "value", math.inf)
        object.__setattr__(obj, "provenance", provenance)
        object.__setattr__(obj, "d", d)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "log10_value", None)
        return obj

    @property
    def is_infinite(self) -> bool:
        return self.log10_value is None

    def to_dict(self) -> dict:
        value = "inf" if math.isinf(self.value) else float(self.value)
        return {"value": value, "provenance": self.provenance, "d": self.d, "n": self.n}


def remez_factor_1d(d: int, m: float) -> float:
    """Classical growth factor T_d((4 - m)/m) for a set of measure m in [-1, 1]."""
    if d < 0:
        raise InputError(f"d: degree must be >= 0, got {d}")
    if m > 2.0:
        raise InputError(f"m: measure inside [-1, 1] cannot exceed 2, got {m!r}")
    if m <= 0.0:
        return math.inf
    return chebyshev_T(d, (4.0 - m) / m)


def remez_factor_nd(n: int, d: int, lam: float) -> float:
    """Multivariate factor T_d((1 + w)/(1 - w)), w = (1 - lambda)^(1/n)."""
    if n < 1:
        raise InputError(f"n: dimension must be >= 1, got {n}")
    if d < 0:
        raise InputError(f"d: degree must be >= 0, got {d}")
    if not (0.0 < lam <= 1.0):
        raise InputError(f"lambda: volume ratio must lie in (0, 1], got {lam!r}")
    w = (1.0 - lam) ** (1.0 / n)
    if w >= 1.0:
        return math.inf
    return chebyshev_T(d, (1.0 + w) / (1.0 - w))


def remez_constant_upper(n: int, d: int, omega: float) -> RemezConstant:
    """Entropy upper bound on R_d(Z) from omega = omega_d(Z).

    omega plays the role of a measure surrogate, so the Chebyshev factor is
    evaluated at the volume ratio lambda = omega / 2^n of the cube [-1, 1]^n
    enclosing the ball.  For n = 1 that reduces to the classical factor
    T_d((4 - omega)/omega), which is sharp for interval-like sets; plugging
    omega in unnormalized is unsound (a two-point set already beats it).
    The Chebyshev branch is used for omega < 1 together with the
    exponential form (4n/omega)^d, whichever is smaller; for omega >= 1
    only the exponential form applies, and omega <= 0 gives no bound at
    all (infinite).  Callers pass a certified LOWER bound on omega: the
    result is decreasing in omega, so that keeps it a valid upper bound
    on R_d(Z).
    """
    if n < 1:
        raise InputError(f"n: dimension must be >= 1, got {n}")
    if d < 0:
        raise InputError(f"d: degree must be >= 0, got {d}")
    if not (omega > 0):
        return RemezConstant.infinite("entropy-bound", d, n)
    try:
        exp_value = (4.0 * n / omega) ** d
    except OverflowError:
        exp_value = math.inf
    exp_log10 = d * math.log10(4.0 * n / omega)
    if omega < 1.0:
        lam = omega / 2.0**n
        w = (1.0 - lam) ** (1.0 / n)
        arg = (1.0 + w) / (1.0 - w)
        value = min(chebyshev_T(d, arg), exp_value)
        log10_value = min(chebyshev_T_log10(d, arg), exp_log10)
    else:
        value, log10_value = exp_value, exp_log10
    # R_d(Z) >= 1 always holds for Z inside the ball.
    return RemezConstant(
        value=max(value, 1.0),
        provenance="entropy-bound",
        d=d,
        n=n,
        log10_value=max(log10_value, 0.0),
    )


def q_of_set(n: int, omega: float) -> float:
    """The base q = 4n/omega used by the uniform-derivative bound.

    The returned value is the raw ratio; it drops below 4n when omega > 1,
    which callers flag rather than clamp.
    """
    if n < 1:
        raise InputError(f"n: dimension must be >= 1, got {n}")
    if not (omega > 0):
        raise InputError(f"omega: must be positive for a finite q, got {omega!r}")
    return 4.0 * n / omega
