"""The certification suite behind `remezkit verify`.

Each criterion is a self-contained check of one inequality or closed form
against an independent route (brute-force enumeration, dense grids, the LP
oracle, or exact arithmetic), with a runtime budget.  Randomized criteria
use a fixed seed so every run and report is identical.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .entropy import (
    covering_profile_1d,
    curve_omega_lower,
    omega_d,
    omega_from_profile,
    _packing_count,
)
from .oracle import (
    Polynomial,
    covering_number_intervals,
    max_abs_on_grid,
    poly_derivative_norm,
    remez_constant_exact,
    sublevel_intervals,
)
from .remez_bounds import q_of_set, remez_constant_upper, remez_factor_nd
from .set_models import (
    FinitePoints,
    GeometricSequence,
    PowerSequence,
    RegularGrid,
    grid_points,
    materialize,
)
from .smooth_bounds import (
    SmoothFnSpec,
    entropy_remez_provider,
    fixed_degree_bound,
    general_bound,
    select_d0,
    taylor_remez,
)


@dataclass(frozen=True)
class CriterionResult:
    cid: int
    name: str
    passed: bool
    elapsed: float
    limit: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.cid:>2} {self.name:<28} "
            f"{self.elapsed:6.2f}s (limit {self.limit:g}s)  {self.detail}"
        )

    def to_dict(self) -> dict:
        return {
            "id": self.cid,
            "name": self.name,
            "passed": self.passed,
            "elapsed_s": round(self.elapsed, 3),
            "limit_s": self.limit,
            "detail": self.detail,
        }


def _criterion_1() -> tuple[bool, str]:
    """Exact grid closed form 2(s-d)/(s-1) for all s in 2..50, 1 <= d < s."""
    worst = 0.0
    for s in range(2, 51):
        prof = covering_profile_1d(grid_points(s))
        for d in range(1, s):
            est = omega_from_profile(prof, d)
            want = 2.0 * (s - d) / (s - 1)
            err = abs(est.lo - want)
            worst = max(worst, err)
            if err > 1e-9 or not est.exact:
                return False, f"s={s} d={d}: got {est.lo!r}, want {want!r}"
    return True, f"1224 cells, max deviation {worst:.2e}"


def _criterion_2() -> tuple[bool, str]:
    """omega_d nonincreasing in d on random and structured 1D sets."""
    rng = np.random.default_rng(90210)
    sets: list = []
    for _ in range(30):
        m = int(rng.integers(5, 61))
        sets.append(FinitePoints.from_1d(np.sort(rng.uniform(-1, 1, size=m))))
    sets += [
        materialize(RegularGrid(17)),
        materialize(PowerSequence(1.5, 64)),
        materialize(GeometricSequence(0.5, 64)),
    ]
    checked = 0
    for z in sets:
        prof = covering_profile_1d(z)
        prev = None
        for d in range(1, 11):
            est = omega_from_profile(prof, d)
            if prev is not None:
                if est.lo > prev.lo + 1e-12 or est.hi > prev.hi + 1e-12:
                    return False, f"omega_{d} exceeds omega_{d - 1} on a {z.size}-point set"
                checked += 1
            prev = est
    return True, f"{checked} adjacent degree pairs"


def _criterion_3() -> tuple[bool, str]:
    """Discretized measure domination: omega_d >= (b-a) - (d+1)h."""
    worst = math.inf
    for a, b in ((-0.35, 0.4), (0.1, 0.55)):
        for h in (1e-3, 1e-4):
            s = int(round((b - a) / h)) + 1
            pts = a + h * np.arange(s)
            prof = covering_profile_1d(FinitePoints.from_1d(pts))
            for d in range(1, 6):
                lo = omega_from_profile(prof, d).lo
                need = (b - a) - (d + 1) * h
                worst = min(worst, lo - need)
                if lo < need:
                    return False, f"[{a},{b}] h={h} d={d}: {lo} < {need}"
    return True, f"min slack {worst:.2e}"


def _criterion_4() -> tuple[bool, str]:
    """Chebyshev factor <= (4n/lambda)^d across the full parameter box."""
    count = 0
    for n in (1, 2, 3):
        for d in range(1, 11):
            for i in range(1, 100):
                lam = i / 100.0
                cheb = remez_factor_nd(n, d, lam)
                expo = (4.0 * n / lam) ** d
                count += 1
                if not (cheb <= expo):
                    return False, f"n={n} d={d} lambda={lam}: {cheb} > {expo}"
    return True, f"{count} combinations, zero violations"


def _criterion_5() -> tuple[bool, str]:
    """LP-exact lower bound never exceeds the entropy upper bound."""
    rng = np.random.default_rng(55_2024)
    worst = math.inf
    tested = 0
    for d in range(1, 6):
        for _ in range(10):
            m = int(rng.integers(d + 2, 31))
            z = FinitePoints.from_1d(np.sort(rng.uniform(-1, 1, size=m)))
            est = omega_from_profile(covering_profile_1d(z), d)
            if est.degenerate:
                continue
            upper = remez_constant_upper(1, d, est.lo)
            lower = remez_constant_exact(z, d, 2001)
            tested += 1
            worst = min(worst, upper.value / lower.value)
            if not (lower.value <= upper.value * (1.0 + 1e-9)):
                return False, f"d={d} |Z|={m}: lp {lower.value} > upper {upper.value}"
    return True, f"{tested} sets, min upper/lower ratio {worst:.4f}"


def _criterion_6() -> tuple[bool, str]:
    """Hand-derived LP cases: R_1({0, 1/2}) = 5 near x = -1; R_2({-1,1}) infinite."""
    z = FinitePoints.from_1d([0.0, 0.5])
    r = remez_constant_exact(z, 1, 2001)
    if abs(r.value - 5.0) > 1e-6:
        return False, f"R_1({{0, 0.5}}) = {r.value}, want 5"
    from .oracle import lp_max_at_point

    at_minus1 = lp_max_at_point(z, 1, -1.0)
    if abs(at_minus1 - 5.0) > 1e-9:
        return False, f"pointwise max at x=-1 is {at_minus1}, want 5"
    r2 = remez_constant_exact(FinitePoints.from_1d([-1.0, 1.0]), 2, 2001)
    if not r2.is_infinite:
        return False, f"R_2({{-1, 1}}) = {r2.value}, want infinite"
    return True, f"R_1 = {r.value}, R_2 infinite as required"


def _criterion_7() -> tuple[bool, str]:
    """Covering counts of polynomial sublevel sets obey the n=1 entropy bound."""
    rng = np.random.default_rng(77_1931)
    for trial in range(200):
        deg = int(rng.integers(1, 9))
        coeffs = rng.uniform(-1.0, 1.0, size=deg + 1)
        if coeffs[-1] == 0.0:
            coeffs[-1] = 0.5
        p = Polynomial.univariate(coeffs)
        rho = float(10.0 ** rng.uniform(-3, 0))
        eps = float(10.0 ** rng.uniform(-2, 0))
        v = sublevel_intervals(p, rho)
        count = covering_number_intervals(v, eps)
        bound = deg + v.total_length / eps + 1e-9
        if count > bound:
            return False, f"trial {trial}: count {count} > {bound} (deg {deg})"
    return True, "200 random (P, rho, eps) triples, zero violations"


def _criterion_8() -> tuple[bool, str]:
    """Every smooth bound dominates the dense-grid maximum of sin(w x)."""
    emitted = 0
    for w in (1, 3, 5):
        oracle = max_abs_on_grid(lambda x, w=w: np.sin(w * x), 1, 10_000)
        for s in (6, 11, 21):
            z = grid_points(s)
            prof = covering_profile_1d(z)
            big_l = float(np.abs(np.sin(w * z.values_1d())).max())
            provider = entropy_remez_provider(prof, 1)
            for k in (3, 5, 8):
                spec = SmoothFnSpec(k, tuple(float(w) ** l for l in range(k + 1)))
                bounds = [
                    taylor_remez(spec, big_l, provider).bound,
                    fixed_degree_bound(provider(k - 1), big_l, float(w) ** k, k - 1).bound,
                ]
                est = omega_from_profile(prof, k - 1)
                if est.lo > 0:
                    q = q_of_set(1, est.lo)
                    uniform = max(float(w) ** l for l in range(k + 1))
                    b = general_bound(q, big_l, uniform, k).bound
                    if not math.isfinite(b):
                        return False, f"w={w} s={s} k={k}: uniform bound not finite"
                    bounds.append(b)
                for b in bounds:
                    emitted += 1
                    if b < oracle - 1e-9:
                        return False, f"w={w} s={s} k={k}: bound {b} < oracle {oracle}"
    return True, f"{emitted} bounds all dominate the grid maximum"


def _criterion_9() -> tuple[bool, str]:
    """d0 selection partition plus the two exact worked bound values."""
    if general_bound(2.0, 3.0, 1.0, 5).bound != 5.0:
        return False, "general_bound(q=2, L=3, M=1) != 5"
    if general_bound(2.0, 1.0, 12.0, 3).bound != 10.0:
        return False, "general_bound(q=2, L=1, M=12, k=3) != 10"
    checked = 0
    for k in (1, 2, 3, 5, 8):
        for big_m in (0.5, 1.0, 6.0, 12.0):
            for big_l in np.geomspace(big_m / (math.factorial(k) * 10.0), 10.0 * big_m, 10):
                big_l = float(big_l)
                d0 = select_d0(big_l, big_m, k)
                checked += 1
                if big_l > big_m:
                    ok = d0 == 0
                elif big_l <= big_m / math.factorial(k):
                    ok = d0 == k - 1
                else:
                    ok = (
                        1 <= d0 <= k - 1
                        and big_m / math.factorial(d0 + 1) <= big_l <= big_m / math.factorial(d0)
                    )
                if not ok:
                    return False, f"L={big_l} M={big_m} k={k}: d0={d0} breaks its case"
    return True, f"{checked} grid points match the three-case partition"


def _criterion_10() -> tuple[bool, str]:
    """Explicit Whitney extensions meet the factorial lower bound."""
    rng = np.random.default_rng(41_4141)
    worst = math.inf
    for _ in range(30):
        d = int(rng.integers(1, 6))
        pts = np.sort(rng.uniform(-1, 1, size=d + 1))
        x = float(rng.uniform(-1, 1))
        while np.min(np.abs(pts - x)) < 1e-6:
            x = float(rng.uniform(-1, 1))
        c = 1.0 / float(np.prod(x - pts))
        coeffs = np.polynomial.polynomial.polyfromroots(pts) * c
        deriv_norm = poly_derivative_norm(Polynomial.univariate(coeffs), d + 1)
        r_lp = remez_constant_exact(FinitePoints.from_1d(pts), d, 2001)
        rhs = math.factorial(d + 1) / (r_lp.value + 1.0)
        worst = min(worst, deriv_norm - rhs)
        if deriv_norm < rhs - 1e-9:
            return False, f"d={d}: M_(d+1) {deriv_norm} < {rhs}"
    return True, f"30 extensions, min slack {worst:.3e}"


def _spiral_sample(target_len: float = 30.0, max_r: float = 0.9, spacing: float = 0.015) -> np.ndarray:
    """Arc-length samples of an Archimedean spiral of given length in B^2."""

    def length(theta_max: float) -> float:
        a = max_r / theta_max
        return a * 0.5 * (theta_max * math.sqrt(theta_max**2 + 1) + math.asinh(theta_max))

    lo_t, hi_t = 1.0, 1000.0
    for _ in range(200):
        mid = 0.5 * (lo_t + hi_t)
        if length(mid) < target_len:
            lo_t = mid
        else:
            hi_t = mid
    theta_max = 0.5 * (lo_t + hi_t)
    a = max_r / theta_max
    pts = [(0.0, 0.0)]
    th = 0.0
    while th < theta_max:
        speed = math.hypot(a * th, a)
        th = min(th + spacing / max(speed, 1e-9), theta_max)
        r = a * th
        pts.append((r * math.cos(th), r * math.sin(th)))
    return np.array(pts)


def _criterion_11() -> tuple[bool, str]:
    """Curve bound plug-in plus a sampled spiral beating its own curve bound."""
    plug = curve_omega_lower(48.0, 1.0 / 48.0, 1)
    if plug.lo != 0.25:
        return False, f"plug-in value {plug.lo}, want exactly 0.25"
    pts = _spiral_sample()
    seg = np.diff(pts, axis=0)
    sigma = float(np.hypot(seg[:, 0], seg[:, 1]).sum())
    # Measured injectivity radius: the largest eps such that each smaller
    # delta still certifies M(delta, S) >= sigma/(2 delta); packing counts
    # certify from below, and the descriptor invariant caps at 1/sigma.
    ok_up_to = 0.0
    for delta in np.geomspace(0.018, 1.0, 40):
        if _packing_count(pts, float(delta)) >= sigma / (2.0 * delta):
            ok_up_to = float(delta)
        else:
            break
    eps0 = min(ok_up_to, 1.0 / sigma)
    if eps0 <= 0:
        return False, "failed to certify any injectivity radius for the spiral"
    want = curve_omega_lower(sigma, eps0, 1).lo
    est = omega_d(FinitePoints(pts), 1, 2)
    if est.lo < 0.95 * want:
        return False, f"packing route {est.lo} < 0.95 * {want}"
    return True, f"spiral of length {sigma:.2f}: packing omega {est.lo:.3f} >= bound {want:.4f}"


def _criterion_12() -> tuple[bool, str]:
    """Scale stability of omega_d on geometric sequences Z(q), N = 128."""
    for q in (0.3, 0.5, 0.7):
        pts = materialize(GeometricSequence(q, 128))
        prof = covering_profile_1d(pts)
        omegas = [omega_from_profile(prof, d).lo for d in range(1, 17)]
        for d in range(1, 16):
            ratio = omegas[d - 1] / (q**d / math.log(1.0 / q))
            if not (1.0 / 8.0 <= ratio <= 8.0):
                return False, f"q={q} d={d}: ratio {ratio} outside [1/8, 8]"
        for d in range(8, 15):
            succ = omegas[d] / omegas[d - 1]
            if abs(succ - q) > 0.1 * q:
                return False, f"q={q} d={d}: successive ratio {succ} not within 10% of q"
    return True, "ratios within [1/8, 8]; successive ratios converge to q"


_CRITERIA: list[tuple[int, str, float, Callable[[], tuple[bool, str]]]] = [
    (1, "grid-closed-form", 2.0, _criterion_1),
    (2, "omega-monotonicity", 5.0, _criterion_2),
    (3, "measure-domination", 5.0, _criterion_3),
    (4, "chebyshev-exponential-chain", 1.0, _criterion_4),
    (5, "entropy-vs-lp-oracle", 60.0, _criterion_5),
    (6, "lp-hand-cases", 1.0, _criterion_6),
    (7, "vitushkin-1d", 10.0, _criterion_7),
    (8, "smooth-remez-soundness", 10.0, _criterion_8),
    (9, "d0-selection", 1.0, _criterion_9),
    (10, "whitney-lower-bound", 30.0, _criterion_10),
    (11, "curve-lower-bound", 30.0, _criterion_11),
    (12, "geometric-scale-stability", 10.0, _criterion_12),
]

CRITERION_IDS = [cid for cid, _, _, _ in _CRITERIA]


def run_criterion(cid: int) -> CriterionResult:
    for c, name, limit, fn in _CRITERIA:
        if c == cid:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failure, not an abort
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - t0
            passed = ok and elapsed < limit
            if ok and elapsed >= limit:
                detail = f"checks passed but runtime {elapsed:.2f}s exceeded {limit:g}s"
            return CriterionResult(cid, name, passed, elapsed, limit, detail)
    raise ValueError(f"criteria: unknown criterion id {cid}")


def run_all(ids: Optional[Sequence[int]] = None) -> list[CriterionResult]:
    ids = list(ids) if ids is not None else CRITERION_IDS
    return [run_criterion(cid) for cid in ids]
