"""Brute-force ground truth used to certify the library's inequalities.

The key operation answers: over all polynomials of degree <= d with
|P| <= 1 on a finite set Z, how large can |P(x)| be at a given x?  That is
a pair of small linear programs over the dense coefficient vector, solved
by a deterministic Bland-rule simplex.  An unbounded LP certifies that Z
lies inside the zero set of some degree-d polynomial, i.e. the Remez
constant is infinite; the improving ray is such a polynomial.

Everything returned from a grid sweep is a certified LOWER bound on the
corresponding supremum, and all acceptance checks are oriented so that
this one-sidedness keeps them sound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from ._simplex import UNBOUNDED, SimplexTableau
from .errors import InputError
from .remez_bounds import RemezConstant, chebyshev_T
from .set_models import FinitePoints

_ROOT_TOL = 1e-13
_CHEB_BASIS_MIN_DEGREE = 9  # monomials below, Chebyshev basis from here up


# --- polynomials -------------------------------------------------------------


def multi_indices(n: int, d: int) -> list[tuple[int, ...]]:
    """All exponent multi-indices of total degree <= d, graded lexicographic."""
    if n == 1:
        return [(t,) for t in range(d + 1)]
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    for total in range(d + 1):
        rec((), total, n)
    return out


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Dense polynomial on R^n with coefficients over multi-indices of
    total degree <= d (C(n+d, d) entries, graded-lex order)."""

    n: int
    d: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=float).reshape(-1)
        expected = len(multi_indices(self.n, self.d))
        if arr.size != expected:
            raise InputError(
                f"coeffs: dense degree-{self.d} polynomial in {self.n} variables "
                f"needs {expected} coefficients, got {arr.size}"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def univariate(cls, coeffs: Sequence[float]) -> "Polynomial":
        arr = np.asarray(coeffs, dtype=float).reshape(-1)
        return cls(1, arr.size - 1, arr)

    def evaluate(self, x) -> np.ndarray:
        if self.n == 1:
            return np.polynomial.polynomial.polyval(np.asarray(x, dtype=float), self.coeffs)
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        vals = np.zeros(pts.shape[0])
        for idx, c in zip(multi_indices(self.n, self.d), self.coeffs):
            if c != 0.0:
                term = np.full(pts.shape[0], c)
                for axis, e in enumerate(idx):
                    if e:
                        term *= pts[:, axis] ** e
                vals += term
        return vals

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "coeffs": [
                list(idx) + [float(c)] for idx, c in zip(multi_indices(self.n, self.d), self.coeffs)
            ],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Polynomial":
        n, d = int(obj["n"]), int(obj["d"])
        index = {tuple(map(int, row[:-1])): float(row[-1]) for row in obj["coeffs"]}
        coeffs = [index.get(idx, 0.0) for idx in multi_indices(n, d)]
        return cls(n, d, np.asarray(coeffs))


@dataclass(frozen=True)
class IntervalUnion:
    """Disjoint closed intervals inside [-1, 1], sorted ascending."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        prev = -math.inf
        for a, b in self.intervals:
            if b < a:
                raise InputError(f"intervals: degenerate interval ({a}, {b})")
            if a < -1.0 - 1e-12 or b > 1.0 + 1e-12:
                raise InputError("intervals: must lie inside [-1, 1]")
            if a <= prev:
                raise InputError("intervals: must be sorted and pairwise disjoint")
            prev = b

    @property
    def total_length(self) -> float:
        return float(sum(b - a for a, b in self.intervals))

    def to_list(self) -> list[list[float]]:
        return [[float(a), float(b)] for a, b in self.intervals]


# --- univariate root isolation -----------------------------------------------


def _trim(c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=float).reshape(-1)
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if nz.size else c[:1]


def _deriv(c: np.ndarray) -> np.ndarray:
    return np.polynomial.polynomial.polyder(c) if c.size > 1 else np.zeros(1)


def _eval(c: np.ndarray, x) -> np.ndarray:
    return np.polynomial.polynomial.polyval(x, c)


def _bisect_root(c: np.ndarray, lo: float, hi: float, flo: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= _ROOT_TOL:
            return mid
        fm = float(_eval(c, mid))
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _real_roots(c: np.ndarray, lo: float = -1.0, hi: float = 1.0) -> list[float]:
    """Roots of c in [lo, hi] via the recursive critical-point partition.

    Each monotone piece between critical points holds at most one sign
    change, located by bisection; roots landing exactly on partition points
    are kept once.
    """
    c = _trim(c)
    deg = c.size - 1
    if deg == 0:
        return []
    if deg == 1:
        r = -c[0] / c[1]
        return [float(r)] if lo <= r <= hi else []
    crit = _real_roots(_deriv(c), lo, hi)
    cuts = sorted({lo, hi, *crit})
    vals = [float(_eval(c, t)) for t in cuts]
    roots: list[float] = []
    for t, v in zip(cuts, vals):
        if v == 0.0:
            roots.append(t)
    for (a, fa), (b, fb) in zip(zip(cuts, vals), zip(cuts[1:], vals[1:])):
        if fa == 0.0 or fb == 0.0:
            continue
        if (fa > 0) != (fb > 0):
            roots.append(_bisect_root(c, a, b, fa))
    return sorted(set(roots))


def sublevel_intervals(P: Polynomial, rho: float) -> IntervalUnion:
    """{x in [-1, 1] : |P(x)| <= rho} as a union of closed intervals.

    Boundaries are roots of P -+ rho located to 1e-13; the classification
    between consecutive boundaries is by midpoint sign.  Tangency points
    where |P| merely touches rho from above have measure zero and are
    omitted (equivalent to perturbing rho by one part in 1e14).
    """
    if P.n != 1:
        raise InputError("P: sublevel intervals are implemented for univariate polynomials")
    if not (rho > 0):
        raise InputError(f"rho: level must be positive, got {rho!r}")
    if P.d > 32:
        raise InputError(f"d: degree must be <= 32 for root isolation, got {P.d}")
    c = _trim(P.coeffs)
    if c.size == 1:
        if abs(c[0]) <= rho:
            return IntervalUnion((((-1.0), 1.0),))
        return IntervalUnion(())
    c_hi = c.copy()
    c_hi[0] -= rho
    c_lo = c.copy()
    c_lo[0] += rho
    cuts = sorted({-1.0, 1.0, *_real_roots(c_hi), *_real_roots(c_lo)})
    pieces: list[tuple[float, float]] = []
    for a, b in zip(cuts, cuts[1:]):
        mid = 0.5 * (a + b)
        if abs(float(_eval(c, mid))) <= rho:
            if pieces and pieces[-1][1] >= a - 1e-12:
                pieces[-1] = (pieces[-1][0], b)
            else:
                pieces.append((a, b))
    return IntervalUnion(tuple(pieces))


def covering_number_intervals(V: IntervalUnion, eps: float) -> int:
    """Exact minimal number of closed length-eps intervals covering the union.

    Left-anchored greedy across components is optimal in one dimension; a
    single interval may span a gap between components when the gap is small.
    """
    if not (eps > 0):
        raise InputError(f"eps: must be positive, got {eps!r}")
    count = 0
    covered = -math.inf  # everything <= covered is already covered
    for a, b in V.intervals:
        if b <= covered:
            continue
        start = a if a > covered else covered
        while True:
            count += 1
            covered = start + eps
            if covered >= b:
                break
            start = covered
    return count


# --- the LP oracle ------------------------------------------------------------


def _basis_matrix(points: np.ndarray, d: int, n: int) -> np.ndarray:
    """Design matrix of the degree-<= d basis evaluated at the points.

    Monomials are well conditioned enough below degree 9; beyond that the
    Chebyshev product basis keeps the tableau stable.  The LP optimum is
    basis independent.
    """
    pts = np.atleast_2d(points)
    idxs = multi_indices(n, d)
    cheb = d >= _CHEB_BASIS_MIN_DEGREE
    cols = []
    for idx in idxs:
        col = np.ones(pts.shape[0])
        for axis, e in enumerate(idx):
            if e:
                if cheb:
                    col = col * np.array([chebyshev_T(e, t) for t in pts[:, axis]])
                else:
                    col = col * pts[:, axis] ** e
        cols.append(col)
    return np.column_stack(cols)


class PointwiseMaximizer:
    """max |P(x)| over polynomials of degree <= d with |P| <= level on Z.

    Holds two warm-startable tableaus (one per sign of the objective) so a
    sweep over many x re-solves from the previous optimal vertex.
    """

    def __init__(self, Z: FinitePoints, d: int, level: float = 1.0):
        if d < 0:
            raise InputError(f"d: degree must be >= 0, got {d}")
        if not (level > 0):
            raise InputError(f"level: constraint level must be positive, got {level!r}")
        self.Z = Z
        self.d = d
        self.n = Z.n
        phi = _basis_matrix(Z.coords, d, self.n)
        m = phi.shape[0]
        # Coefficients are free: split c = u - v with u, v >= 0.
        A = np.vstack([np.hstack([phi, -phi]), np.hstack([-phi, phi])])
        b = np.full(2 * m, float(level))
        self._tab_pos = SimplexTableau(A, b)
        self._tab_neg = SimplexTableau(A, b)
        self._width = phi.shape[1]
        self.last_ray: Optional[np.ndarray] = None

    def _objective(self, x) -> np.ndarray:
        phi_x = _basis_matrix(np.atleast_2d(np.asarray(x, dtype=float)), self.d, self.n)[0]
        return np.concatenate([phi_x, -phi_x])

    def value_at(self, x) -> float:
        """The exact pointwise maximum; inf when the LP is unbounded."""
        c = self._objective(x)
        best = -math.inf
        for tab, sgn in ((self._tab_pos, 1.0), (self._tab_neg, -1.0)):
            tab.set_objective(sgn * c)
            res = tab.solve()
            if res.status == UNBOUNDED:
                ray = res.ray
                self.last_ray = ray[: self._width] - ray[self._width :]
                return math.inf
            best = max(best, res.value)
        return best


def lp_max_at_point(Z: FinitePoints, d: int, x, level: float = 1.0) -> float:
    """max { |P(x)| : deg P <= d, |P(z)| <= level on Z }; inf if unbounded."""
    return PointwiseMaximizer(Z, d, level=level).value_at(x)


def _golden_max(f: Callable[[float], float], a: float, b: float, iters: int = 60) -> float:
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1, f2 = f(x1), f(x2)
    best = max(f1, f2)
    for _ in range(iters):
        if math.isinf(best):
            return best
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = f(x1)
        best = max(best, f1, f2)
    return best


def remez_constant_exact(Z: FinitePoints, d: int, resolution: int) -> RemezConstant:
    """Certified lower bound on R_d(Z) converging to it with resolution.

    Sweeps the pointwise LP maximum over a uniform grid on the ball; for
    n = 1 a golden-section refinement around the best grid cell sharpens
    the result.  Any unbounded LP short-circuits to the infinite constant.
    """
    if resolution < 2:
        raise InputError(f"resolution: must be >= 2, got {resolution}")
    maximizer = PointwiseMaximizer(Z, d)
    n = Z.n
    if n == 1:
        xs = np.linspace(-1.0, 1.0, resolution)
        best, best_i = -math.inf, 0
        for i, x in enumerate(xs):
            v = maximizer.value_at(float(x))
            if math.isinf(v):
                return RemezConstant.infinite("lp-exact-lower", d, n)
            if v > best:
                best, best_i = v, i
        a = float(xs[max(best_i - 1, 0)])
        b = float(xs[min(best_i + 1, resolution - 1)])
        refined = _golden_max(lambda t: maximizer.value_at(t), a, b)
        if math.isinf(refined):
            return RemezConstant.infinite("lp-exact-lower", d, n)
        return RemezConstant(max(best, refined), "lp-exact-lower", d, n)
    if n == 2:
        axis = np.linspace(-1.0, 1.0, resolution)
        best = -math.inf
        for x1 in axis:
            for x2 in axis:
                if x1 * x1 + x2 * x2 > 1.0 + 1e-12:
                    continue
                v = maximizer.value_at((float(x1), float(x2)))
                if math.isinf(v):
                    return RemezConstant.infinite("lp-exact-lower", d, n)
                best = max(best, v)
        return RemezConstant(best, "lp-exact-lower", d, n)
    raise InputError(f"n: the LP sweep supports n in {{1, 2}}, got {n}")


# --- grid maximization and approximation oracles ------------------------------


def _ball_grid(n: int, resolution: int) -> np.ndarray:
    axis = np.linspace(-1.0, 1.0, resolution)
    if n == 1:
        return axis.reshape(-1, 1)
    mesh = np.meshgrid(*([axis] * n), indexing="ij")
    pts = np.column_stack([m.ravel() for m in mesh])
    return pts[(pts * pts).sum(axis=1) <= 1.0 + 1e-12]


def max_abs_on_grid(f, n: int, resolution: int) -> float:
    """max |f| over a uniform grid on the ball: a lower bound on sup |f|."""
    if resolution < 2:
        raise InputError(f"resolution: must be >= 2, got {resolution}")
    pts = _ball_grid(n, resolution)
    arg = pts[:, 0] if n == 1 else pts
    try:
        vals = np.asarray(f(arg), dtype=float)
        if vals.shape != (pts.shape[0],):
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([float(f(p[0] if n == 1 else p)) for p in pts])
    return float(np.abs(vals).max())


def poly_derivative_norm(P: Polynomial, l: int) -> float:
    """Exact max of |P^(l)| on [-1, 1] via critical-point enumeration."""
    if P.n != 1:
        raise InputError("P: derivative norms are implemented for univariate polynomials")
    if l < 0:
        raise InputError(f"l: derivative order must be >= 0, got {l}")
    c = _trim(P.coeffs)
    for _ in range(l):
        c = _trim(_deriv(c))
    if c.size == 1:
        return abs(float(c[0]))
    candidates = [-1.0, 1.0, *_real_roots(_deriv(c))]
    return float(max(abs(float(_eval(c, t))) for t in candidates))


def best_approx_upper(f, d: int, grid_resolution: int = 10_000) -> float:
    """Upper bound on the best uniform degree-d approximation error on [-1, 1].

    Interpolates f at the d+1 Chebyshev nodes and reports the dense-grid
    maximum of |f - p|.  The interpolant is one admissible polynomial, so
    its uniform error dominates the best one; the grid estimate of that
    error is what is returned.
    """
    if d < 0:
        raise InputError(f"d: degree must be >= 0, got {d}")
    k = np.arange(d + 1)
    nodes = np.cos((2.0 * k + 1.0) * math.pi / (2.0 * (d + 1)))
    fvals = np.array([float(f(t)) for t in nodes])
    coeffs = np.polynomial.chebyshev.chebfit(nodes, fvals, d)
    xs = np.linspace(-1.0, 1.0, grid_resolution)
    try:
        fx = np.asarray(f(xs), dtype=float)
        if fx.shape != xs.shape:
            raise TypeError
    except (TypeError, ValueError):
        fx = np.array([float(f(t)) for t in xs])
    px = np.polynomial.chebyshev.chebval(xs, coeffs)
    return float(np.abs(fx - px).max())
