"""Self-contained dense primal simplex with Bland's rule.

Solves max c.y subject to A y <= b, y >= 0 with b >= 0, so the all-slack
basis is feasible and no phase 1 is needed.  Bland's rule (smallest
eligible entering index, smallest basic-variable index among ratio ties)
guarantees termination and makes every run bit-deterministic.

The tableau's constraint rows depend only on the basis, not on the
objective, so the objective may be swapped and the solve resumed from the
current vertex; sweeps of nearby objectives then cost a few pivots each.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import LpFailureError

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"

_COST_TOL = 1e-9
_PIVOT_TOL = 1e-11
_MAX_PIVOTS = 50_000


@dataclass
class LpResult:
    status: str
    value: float
    y: Optional[np.ndarray]  # structural variable values at the optimum
    ray: Optional[np.ndarray]  # improving ray in structural variables if unbounded


class SimplexTableau:
    def __init__(self, A: np.ndarray, b: np.ndarray):
        A = np.asarray(A, dtype=float)
        b = np.asarray(b, dtype=float)
        if np.any(b < 0):
            raise LpFailureError("rhs must be nonnegative for the all-slack start")
        m, n = A.shape
        self.m, self.n = m, n
        self.T = np.hstack([A, np.eye(m), b.reshape(-1, 1)])
        self.basis = np.arange(n, n + m)
        self.cost = np.zeros(n + m)

    def set_objective(self, c: np.ndarray) -> None:
        self.cost[: self.n] = c

    def _reduced_costs(self) -> np.ndarray:
        cb = self.cost[self.basis]
        return self.cost - cb @ self.T[:, :-1]

    def solve(self) -> LpResult:
        T = self.T
        for _ in range(_MAX_PIVOTS):
            r = self._reduced_costs()
            improving = np.nonzero(r > _COST_TOL)[0]
            if improving.size == 0:
                return LpResult(OPTIMAL, self._value(), self._solution(), None)
            j = int(improving[0])  # Bland: smallest entering index
            col = T[:, j]
            rows = np.nonzero(col > _PIVOT_TOL)[0]
            if rows.size == 0:
                return LpResult(UNBOUNDED, np.inf, None, self._ray(j, col))
            ratios = T[rows, -1] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-15 * (1.0 + abs(best))]
            i = int(ties[np.argmin(self.basis[ties])])  # Bland: smallest basic index
            self._pivot(i, j)
        raise LpFailureError("simplex exceeded the pivot limit", basis=self.basis)

    def _pivot(self, i: int, j: int) -> None:
        T = self.T
        T[i] /= T[i, j]
        col = T[:, j].copy()
        col[i] = 0.0
        T -= np.outer(col, T[i])
        T[:, j] = 0.0
        T[i, j] = 1.0
        self.basis[i] = j

    def _value(self) -> float:
        return float(self.cost[self.basis] @ self.T[:, -1])

    def _solution(self) -> np.ndarray:
        y = np.zeros(self.n + self.m)
        y[self.basis] = self.T[:, -1]
        return y[: self.n]

    def _ray(self, j: int, col: np.ndarray) -> np.ndarray:
        ray = np.zeros(self.n + self.m)
        ray[j] = 1.0
        ray[self.basis] = -col
        return ray[: self.n]
