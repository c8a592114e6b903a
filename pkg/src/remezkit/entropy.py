"""Covering numbers, covering profiles, and the entropy quantity omega_d.

Ball convention (important)
---------------------------
Throughout this package an "eps-ball" is an l-infinity cube of SIDE LENGTH
eps; in one dimension, a closed interval of length eps.  This is the unique
convention under which the regular grid G_s satisfies the closed form
omega_d(G_s) = 2(s-d)/(s-1) (the supremum is the left limit at the grid
spacing, eps -> (2/(s-1))^-, of eps*(s-d)) and under which
eps^n * M(eps, Z) >= m_n(Z) for every measurable Z.

For a finite 1D set, eps -> M(eps, Z) is a nonincreasing integer step
function whose jumps occur at pairwise differences of the points; a
CoveringProfile stores those jump locations together with the count that
holds immediately to the LEFT of each jump (closed intervals make the count
drop AT the jump itself).  omega_d is then an exact finite maximum: on each
constancy region the objective eps*(M - d) increases in eps, so the
supremum over the region is attained in the left limit at its right
endpoint.

The supremum in the definition omega_d(Z) = sup_eps eps^n [M(eps,Z) - M_d(eps)]
is reported as 0 (with degenerate=True) when the bracket is negative for
every eps; for finite sets the supremum is then approached as eps -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    InputError,
    UnsupportedDescriptorError,
    UnsupportedDimensionError,
)
from .set_models import (
    Curve,
    FinitePoints,
    GeometricSequence,
    MeasurableBody,
    PowerSequence,
    RegularGrid,
    SetDescriptor,
    descriptor_dimension,
    materialize,
)

BREAKPOINT_TOL = 1e-13
PLANAR_SAMPLES_PER_DECADE = 64


@dataclass(frozen=True)
class CoveringProfile:
    """The full step function eps -> M(eps, Z) for a finite 1D set.

    breakpoints: ascending (eps, count_left) pairs; count_left is M on the
    constancy region immediately left of eps.  tail_count is M beyond the
    last breakpoint (1 for a nonempty bounded set).  Breakpoints are exact
    where they coincide with a pairwise difference of the points, and are
    otherwise located to absolute tolerance BREAKPOINT_TOL.
    """

    breakpoints: tuple[tuple[float, int], ...]
    tail_count: int = 1

    def __post_init__(self):
        if self.tail_count < 1:
            raise InputError("tail_count: must be >= 1 for a nonempty set")
        prev_eps, prev_count = 0.0, None
        for eps, count in self.breakpoints:
            if eps <= prev_eps:
                raise InputError("breakpoints: eps values must be strictly increasing")
            if prev_count is not None and count >= prev_count:
                raise InputError("breakpoints: counts must strictly decrease")
            prev_eps, prev_count = eps, count
        if self.breakpoints and self.breakpoints[-1][1] <= self.tail_count:
            raise InputError("breakpoints: counts must stay above tail_count")

    def count_at(self, eps: float) -> int:
        """M(eps): the count of the region containing eps (closed-cube rule)."""
        if eps <= 0:
            raise InputError("eps: must be positive")
        for b_eps, count in self.breakpoints:
            if eps < b_eps:
                return count
        return self.tail_count

    def to_dict(self) -> dict:
        return {
            "breakpoints": [[float(e), int(c)] for e, c in self.breakpoints],
            "tail": int(self.tail_count),
        }


@dataclass(frozen=True)
class OmegaEstimate:
    """Certified two-sided bounds on omega_d(Z).

    witness_eps is the eps achieving lo and is meaningful only when the
    estimate is not degenerate.
    """

    lo: float
    hi: float
    witness_eps: float
    exact: bool
    degenerate: bool

    def __post_init__(self):
        if self.lo < 0:
            raise InputError("lo: omega estimates are nonnegative by convention")
        if self.lo > self.hi:
            raise InputError("lo: must not exceed hi")
        if self.exact and self.lo != self.hi:
            raise InputError("exact: requires lo == hi")
        if not (self.witness_eps > 0):
            raise InputError("witness_eps: must be positive")

    def to_dict(self) -> dict:
        hi = "inf" if math.isinf(self.hi) else float(self.hi)
        return {
            "lo": float(self.lo),
            "hi": hi,
            "witness_eps": float(self.witness_eps),
            "exact": self.exact,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True)
class VitushkinParams:
    """Coefficients C_i(n, d) of the covering-number polynomial M_d(eps)."""

    n: int
    d: int
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if self.n < 1:
            raise UnsupportedDimensionError(f"n: dimension must be >= 1, got {self.n}")
        if self.d < 1:
            raise InputError(f"d: degree must be >= 1, got {self.d}")
        if len(self.coefficients) != self.n:
            raise InputError(
                f"coefficients: expected {self.n} values C_0..C_{self.n - 1}, "
                f"got {len(self.coefficients)}"
            )

    @classmethod
    def for_dimension(cls, n: int, d: int) -> "VitushkinParams":
        if n == 1:
            return cls(1, d, (float(d),))
        if n == 2:
            return cls(2, d, (float((2 * d - 1) ** 2), 8.0 * d))
        raise UnsupportedDimensionError(
            f"n: built-in coefficients exist only for n in {{1, 2}}, got {n}"
        )

    def evaluate(self, eps: float) -> float:
        if eps <= 0:
            raise InputError("eps: must be positive")
        return sum(c * (1.0 / eps) ** i for i, c in enumerate(self.coefficients))


def vitushkin_Md(n: int, d: int, eps: float, params: Optional[VitushkinParams] = None) -> float:
    """M_d(eps): d for n=1 and (2d-1)^2 + 8d/eps for n=2.

    Other dimensions require user-supplied coefficients.
    """
    if params is not None:
        return params.evaluate(eps)
    return VitushkinParams.for_dimension(n, d).evaluate(eps)


# --- 1D covering counts and profiles ----------------------------------------


def _ascending_unique(points) -> np.ndarray:
    if isinstance(points, FinitePoints):
        arr = points.values_1d()
    else:
        arr = np.asarray(points, dtype=float).reshape(-1)
    if arr.size == 0:
        raise InputError("points: the set must be nonempty")
    return np.unique(arr)


def covering_number_1d(points, eps: float) -> int:
    """Minimal number of closed length-eps intervals covering the points.

    The left-anchored greedy sweep is optimal in one dimension.  `points`
    must be sorted ascending (a FinitePoints set or an array).
    """
    if isinstance(points, FinitePoints):
        arr = points.values_1d()
    else:
        arr = np.asarray(points, dtype=float).reshape(-1)
    if arr.size == 0:
        raise InputError("points: the set must be nonempty")
    if not (eps > 0):
        raise InputError(f"eps: must be positive, got {eps!r}")
    if np.any(np.diff(arr) < 0):
        raise InputError("points: must be sorted ascending")
    return _greedy_count(arr, float(eps))


def _greedy_count(x: np.ndarray, eps: float) -> int:
    m = x.size
    if m > 1024:
        # One vectorized searchsorted, then follow the anchor chain.
        nxt = np.searchsorted(x, x + eps, side="right")
        i = 0
        count = 0
        while i < m:
            count += 1
            i = int(nxt[i])
        return count
    xs = x.tolist()
    i = 0
    count = 0
    while i < m:
        limit = xs[i] + eps
        count += 1
        i += 1
        while i < m and xs[i] <= limit:
            i += 1
    return count


def covering_profile_1d(points) -> CoveringProfile:
    """Complete breakpoint list of eps -> M(eps, Z) for a finite 1D set.

    Jumps are bracketed by bisection to absolute tolerance BREAKPOINT_TOL
    over (0, diameter], then snapped to the exact pairwise difference that
    realizes the drop whenever one lies inside the bracket (it always does,
    up to floating-point noise).
    """
    x = _ascending_unique(points)
    m = int(x.size)
    if m == 1:
        return CoveringProfile((), 1)
    diam = float(x[-1] - x[0])

    memo: dict[float, int] = {}

    def count(eps: float) -> int:
        if eps <= 0.0:
            return m
        c = memo.get(eps)
        if c is None:
            c = _greedy_count(x, eps)
            memo[eps] = c
        return c

    breaks: list[tuple[float, int]] = []

    def refine(lo: float, c_lo: int, hi: float, c_hi: int) -> None:
        if c_lo == c_hi:
            return
        if hi - lo <= BREAKPOINT_TOL:
            breaks.append((_snap_break(x, lo, hi, c_hi, count), c_lo))
            return
        mid = 0.5 * (lo + hi)
        c_mid = count(mid)
        refine(lo, c_lo, mid, c_mid)
        refine(mid, c_mid, hi, c_hi)

    refine(0.0, m, diam, count(diam))
    breaks.sort()
    # Merge brackets that collapsed onto the same snapped eps.
    merged: list[tuple[float, int]] = []
    for eps, c_left in breaks:
        if merged and merged[-1][0] >= eps:
            continue
        merged.append((eps, c_left))
    return CoveringProfile(tuple(merged), 1)


def _snap_break(x: np.ndarray, lo: float, hi: float, c_hi: int, count) -> float:
    """Replace the bracket endpoint by the exact difference where M drops."""
    left = np.searchsorted(x, x + lo, side="right")
    right = np.searchsorted(x, x + hi, side="right")
    cands: set[float] = set()
    for i in range(x.size):
        a, b = int(left[i]), int(right[i])
        if b > a:
            if b - a > 64:
                return hi
            for j in range(a, b):
                cands.add(float(x[j] - x[i]))
    good = sorted(c for c in cands if lo < c <= hi and count(c) <= c_hi)
    return good[0] if good else hi


# --- omega_d -----------------------------------------------------------------


def omega_from_profile(profile: CoveringProfile, d: int) -> OmegaEstimate:
    """Exact omega_d for n = 1, read off the covering profile."""
    if d < 1:
        raise InputError(f"d: degree must be >= 1, got {d}")
    best = -math.inf
    best_eps = 0.0
    for eps, c_left in profile.breakpoints:
        v = eps * (c_left - d)
        if v > best:
            best, best_eps = v, eps
    if not profile.breakpoints:
        best, best_eps = -math.inf, 1.0
    degenerate = not (best > 0)
    value = best if best > 0 else 0.0
    return OmegaEstimate(
        lo=value, hi=value, witness_eps=best_eps if best_eps > 0 else 1.0,
        exact=True, degenerate=degenerate,
    )


def omega_d(Z: SetDescriptor, d: int, n: Optional[int] = None) -> OmegaEstimate:
    """First-principles omega_d(Z) from covering counts.

    n = 1: exact (profile route).  n = 2: certified lo/hi sandwich from
    packing and greedy-covering counts over a logarithmic eps sweep.
    Curves and measurable bodies have no finite materialization; use
    omega_closed_form / omega_lower_from_measure for those.
    """
    if isinstance(Z, (Curve, MeasurableBody)):
        raise UnsupportedDescriptorError(
            "set: curves and bodies cannot be materialized; "
            "use the closed-form route instead"
        )
    dim = descriptor_dimension(Z)
    if n is not None and n != dim:
        raise InputError(f"n: descriptor has dimension {dim}, got n={n}")
    if d < 1:
        raise InputError(f"d: degree must be >= 1, got {d}")
    pts = materialize(Z)
    if dim == 1:
        return omega_from_profile(covering_profile_1d(pts), d)
    if dim == 2:
        return _omega_planar(pts.coords, d)
    raise UnsupportedDimensionError(
        f"n: first-principles omega is implemented for n in {{1, 2}}, got {dim}"
    )


def omega_lower_from_measure(body: MeasurableBody) -> OmegaEstimate:
    """omega_d(Z) >= m_n(Z) for measurable Z, valid for every degree."""
    return OmegaEstimate(
        lo=float(body.measure), hi=math.inf, witness_eps=1.0,
        exact=False, degenerate=not (body.measure > 0),
    )


def curve_omega_lower(sigma: float, eps0: float, d: int) -> OmegaEstimate:
    """Entropy lower bound for a connected smooth curve of length sigma in B^2.

    With l = 1/(eps0*sigma) and m = sigma/d the bound is (1/(2l))(1 - 24/m);
    it is positive exactly when the curve is longer than 24d.  Nonpositive
    values are reported as 0 with the degenerate flag set.
    """
    desc = Curve(sigma, eps0)  # validates sigma > 0 and 0 < eps0 <= 1/sigma
    if d < 1:
        raise InputError(f"d: degree must be >= 1, got {d}")
    l = 1.0 / (desc.eps0 * desc.sigma)
    m = desc.sigma / d
    value = (1.0 / (2.0 * l)) * (1.0 - 24.0 / m)
    degenerate = not (value > 0)
    return OmegaEstimate(
        lo=value if value > 0 else 0.0, hi=math.inf, witness_eps=desc.eps0,
        exact=False, degenerate=degenerate,
    )


def omega_closed_form(Z: SetDescriptor, d: int) -> tuple[float, str]:
    """Closed-form value of omega_d with its kind.

    Grids are exact; power and geometric sequences give the reference scale
    of the asymptotic equivalence (the implied constants are unknown, and
    the logarithm is natural); curves give a lower bound.
    """
    if d < 1:
        raise InputError(f"d: degree must be >= 1, got {d}")
    if isinstance(Z, RegularGrid):
        return max(2.0 * (Z.s - d) / (Z.s - 1), 0.0), "exact"
    if isinstance(Z, PowerSequence):
        r = Z.r
        scale = r**r / (r + 1.0) ** (r + 1.0)
        return scale / d**r, "asymptotic-scale"
    if isinstance(Z, GeometricSequence):
        return Z.q**d / math.log(1.0 / Z.q), "asymptotic-scale"
    if isinstance(Z, Curve):
        return curve_omega_lower(Z.sigma, Z.eps0, d).lo, "lower-bound"
    raise UnsupportedDescriptorError(
        f"set: no closed form for descriptor {type(Z).__name__}"
    )


# --- planar (n = 2) covering machinery ---------------------------------------


def covering_number_box(points, eps: float) -> tuple[int, int]:
    """(lo, hi) bounds on the covering number of a point set in R^n, n >= 2.

    hi comes from a greedy cube covering; lo counts a maximal eps-separated
    packing (two points at l-infinity distance > eps need distinct cubes),
    so lo <= M(eps, Z) <= hi.
    """
    pts = points.coords if isinstance(points, FinitePoints) else np.atleast_2d(
        np.asarray(points, dtype=float)
    )
    if pts.size == 0:
        raise InputError("points: the set must be nonempty")
    if pts.shape[1] < 2:
        raise InputError("points: use covering_number_1d for one-dimensional sets")
    if not (eps > 0):
        raise InputError(f"eps: must be positive, got {eps!r}")
    return _packing_count(pts, float(eps)), _greedy_cover_count(pts, float(eps))


def _lex_order(pts: np.ndarray) -> np.ndarray:
    return np.lexsort(tuple(pts[:, i] for i in reversed(range(pts.shape[1]))))


def _packing_count(pts: np.ndarray, eps: float) -> int:
    order = _lex_order(pts)
    kept = np.empty_like(pts)
    k = 0
    for idx in order:
        p = pts[idx]
        if k == 0 or np.abs(kept[:k] - p).max(axis=1).min() > eps:
            kept[k] = p
            k += 1
    return k


def _greedy_cover_count(pts: np.ndarray, eps: float) -> int:
    srt = pts[_lex_order(pts)]
    m, n = srt.shape
    alive = np.ones(m, dtype=bool)
    base = 0
    count = 0
    while True:
        while base < m and not alive[base]:
            base += 1
        if base >= m:
            return count
        p = srt[base]
        count += 1
        cand = alive & (srt[:, 0] <= p[0] + eps)
        if n == 2:
            # Slide the cube along the second axis to cover as much as possible;
            # the window [a, a + eps] must still contain p.
            ys = srt[cand, 1]
            anchors = np.unique(ys[(ys >= p[1] - eps) & (ys <= p[1])])
            best_a, best_cov = p[1], -1
            for a in anchors:
                cov = int(((ys >= a) & (ys <= a + eps)).sum())
                if cov > best_cov:
                    best_a, best_cov = float(a), cov
            covered = cand & (srt[:, 1] >= best_a) & (srt[:, 1] <= best_a + eps)
        else:
            covered = cand & np.all((srt >= p) & (srt <= p + eps), axis=1)
        alive &= ~covered


def _min_linf_gap(pts: np.ndarray) -> float:
    m = pts.shape[0]
    best = math.inf
    step = 256
    for i in range(0, m, step):
        chunk = pts[i : i + step]
        d = np.abs(chunk[:, None, :] - pts[None, :, :]).max(axis=2)
        for a in range(chunk.shape[0]):
            d[a, i + a] = math.inf
        best = min(best, float(d.min()))
    return best


def _omega_planar(pts: np.ndarray, d: int, samples_per_decade: int = PLANAR_SAMPLES_PER_DECADE) -> OmegaEstimate:
    pts = np.unique(pts, axis=0)  # the left-edge count below needs distinct points
    m = pts.shape[0]
    md = VitushkinParams.for_dimension(2, d)

    def objective_lo(eps: float) -> float:
        return eps * eps * (_packing_count(pts, eps) - md.evaluate(eps))

    if m == 1:
        return OmegaEstimate(lo=0.0, hi=0.0, witness_eps=1.0, exact=False, degenerate=True)

    diam = float(np.ptp(pts, axis=0).max())
    gap = _min_linf_gap(pts)
    eps_lo = max(gap / 4.0, 1e-12)
    eps_hi = max(diam, eps_lo * 2.0)
    decades = math.log10(eps_hi / eps_lo)
    k = max(int(math.ceil(decades * samples_per_decade)) + 1, 8)
    grid = np.geomspace(eps_lo, eps_hi, k)

    pack = np.array([_packing_count(pts, e) for e in grid], dtype=float)
    cover = np.array([_greedy_cover_count(pts, e) for e in grid], dtype=float)
    mds = np.array([md.evaluate(e) for e in grid])

    lo_vals = grid * grid * (pack - mds)
    j = int(np.argmax(lo_vals))
    lo = float(lo_vals[j])
    witness = float(grid[j])

    # Golden-section refinement of the lower bound around the best sample.
    a = float(grid[j - 1]) if j > 0 else eps_lo
    b = float(grid[j + 1]) if j + 1 < k else eps_hi
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1, f2 = objective_lo(x1), objective_lo(x2)
    for _ in range(24):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = objective_lo(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = objective_lo(x1)
        fbest, xbest = (f1, x1) if f1 >= f2 else (f2, x2)
        if fbest > lo:
            lo, witness = float(fbest), float(xbest)

    # Certified upper bound: between consecutive samples M(eps) <= cover(eps_i)
    # and M_d(eps) >= M_d(eps_{i+1}) by monotonicity, and below the first
    # sample M(eps) = m exactly because eps < min pairwise gap.
    hi = grid[0] * grid[0] * (m - md.coefficients[0]) - md.coefficients[1] * grid[0]
    for i in range(k - 1):
        hi = max(hi, grid[i + 1] ** 2 * (cover[i] - mds[i + 1]))

    lo = max(lo, 0.0)
    hi = max(hi, lo, 0.0)
    degenerate = lo <= 0.0
    return OmegaEstimate(
        lo=lo, hi=float(hi), witness_eps=witness, exact=False, degenerate=degenerate
    )
