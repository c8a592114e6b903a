"""Sampling-set descriptors and their materialization.

All sets live in the closed Euclidean unit ball B^n (the interval [-1, 1]
for n = 1).  Descriptors are symbolic: structured families (grids, power
and geometric sequences, curves, measurable bodies) keep their parameters
so closed-form computations never require materialization.  The infinite
sequences are truncated to a finite number of points when materialized;
the default truncation is 64 points and doubling it changes downstream
covering quantities at the degrees we certify by far less than 1e-9.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ._jsonio import dumps
from .errors import DescriptorError

DEFAULT_TRUNCATION = 64

_BALL_SLACK = 1e-12


@dataclass(frozen=True)
class Point:
    """A point of the closed unit ball B^n."""

    coords: tuple[float, ...]

    def __post_init__(self):
        if len(self.coords) < 1:
            raise DescriptorError("coords: a point needs at least one coordinate")
        norm = math.sqrt(sum(c * c for c in self.coords))
        if norm > 1.0 + _BALL_SLACK:
            raise DescriptorError(f"coords: point has norm {norm!r} > 1, outside B^n")

    @property
    def n(self) -> int:
        return len(self.coords)


@dataclass(frozen=True, eq=False)
class FinitePoints:
    """An explicit finite subset of B^n, stored as an (m, n) array."""

    coords: np.ndarray

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.coords, dtype=float))
        if arr.size == 0:
            raise DescriptorError("points: the set must be nonempty")
        if arr.ndim != 2:
            raise DescriptorError("points: coords must be a list of coordinate vectors")
        if not np.all(np.isfinite(arr)):
            raise DescriptorError("points: coordinates must be finite")
        norms = np.sqrt((arr * arr).sum(axis=1))
        if norms.max() > 1.0 + _BALL_SLACK:
            raise DescriptorError(
                f"points: point with norm {norms.max()!r} lies outside the unit ball"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coords", arr)

    @classmethod
    def from_1d(cls, values) -> "FinitePoints":
        return cls(np.asarray(values, dtype=float).reshape(-1, 1))

    @property
    def n(self) -> int:
        return self.coords.shape[1]

    @property
    def size(self) -> int:
        return self.coords.shape[0]

    def values_1d(self) -> np.ndarray:
        if self.n != 1:
            raise DescriptorError("points: expected a one-dimensional point set")
        return self.coords[:, 0]

    def __eq__(self, other):
        return isinstance(other, FinitePoints) and np.array_equal(self.coords, other.coords)


@dataclass(frozen=True)
class RegularGrid:
    """s equally spaced points on [-1, 1], endpoints included."""

    s: int

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 2:
            raise DescriptorError(f"s: a regular grid needs s >= 2, got {self.s!r}")


@dataclass(frozen=True)
class PowerSequence:
    """Truncation of {1, 1/2^r, 1/3^r, ...} to its first N points."""

    r: float
    N: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if not (self.r > 0):
            raise DescriptorError(f"r: power-sequence exponent must be positive, got {self.r!r}")
        if not isinstance(self.N, int) or self.N < 1:
            raise DescriptorError(f"N: truncation count must be a positive integer, got {self.N!r}")


@dataclass(frozen=True)
class GeometricSequence:
    """Truncation of {1, q, q^2, ...}, 0 < q < 1, to its first N points."""

    q: float
    N: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise DescriptorError(f"q: geometric ratio must lie in (0, 1), got {self.q!r}")
        if not isinstance(self.N, int) or self.N < 1:
            raise DescriptorError(f"N: truncation count must be a positive integer, got {self.N!r}")


@dataclass(frozen=True)
class Curve:
    """Summary of a connected smooth curve in B^2: length and injectivity radius.

    The injectivity radius eps0 can never exceed 1/sigma for a curve of
    length sigma inside the unit disk.
    """

    sigma: float
    eps0: float

    def __post_init__(self):
        if not (self.sigma > 0):
            raise DescriptorError(f"sigma: curve length must be positive, got {self.sigma!r}")
        if not (0.0 < self.eps0 <= 1.0 / self.sigma):
            raise DescriptorError(
                f"eps0: injectivity radius must lie in (0, 1/sigma], got {self.eps0!r}"
            )


@dataclass(frozen=True)
class MeasurableBody:
    """A measurable subset of B^n known only through its n-measure."""

    n: int
    measure: float

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DescriptorError(f"n: dimension must be a positive integer, got {self.n!r}")
        if not (self.measure >= 0):
            raise DescriptorError(f"measure: must be nonnegative, got {self.measure!r}")


SetDescriptor = Union[
    FinitePoints, RegularGrid, PowerSequence, GeometricSequence, Curve, MeasurableBody
]


def grid_points(s: int) -> FinitePoints:
    """Materialize the regular grid: x_i = -1 + 2(i-1)/(s-1), i = 1..s."""
    if not isinstance(s, int) or s < 2:
        raise DescriptorError(f"s: a regular grid needs s >= 2, got {s!r}")
    xs = np.array([-1.0 + 2.0 * i / (s - 1) for i in range(s)])
    return FinitePoints.from_1d(xs)


def power_sequence_points(r: float, N: int = DEFAULT_TRUNCATION) -> FinitePoints:
    """First N points of {1/k^r : k = 1, 2, ...}, in descending order."""
    desc = PowerSequence(r, N)
    xs = np.array([(k + 1.0) ** -desc.r for k in range(desc.N)])
    return FinitePoints.from_1d(xs)


def geometric_points(q: float, N: int = DEFAULT_TRUNCATION) -> FinitePoints:
    """Points q^j for j = 0..N-1 (descending)."""
    desc = GeometricSequence(q, N)
    xs = np.array([desc.q**j for j in range(desc.N)])
    return FinitePoints.from_1d(xs)


def materialize(desc: SetDescriptor) -> FinitePoints:
    """Turn a descriptor into explicit points; curves and bodies have none."""
    if isinstance(desc, FinitePoints):
        return desc
    if isinstance(desc, RegularGrid):
        return grid_points(desc.s)
    if isinstance(desc, PowerSequence):
        return power_sequence_points(desc.r, desc.N)
    if isinstance(desc, GeometricSequence):
        return geometric_points(desc.q, desc.N)
    raise DescriptorError(
        f"type: descriptor {type(desc).__name__} has no finite materialization"
    )


def descriptor_dimension(desc: SetDescriptor) -> int:
    """Ambient dimension of the descriptor's point set."""
    if isinstance(desc, FinitePoints):
        return desc.n
    if isinstance(desc, (RegularGrid, PowerSequence, GeometricSequence)):
        return 1
    if isinstance(desc, Curve):
        return 2
    return desc.n


# --- JSON wire format ------------------------------------------------------
#
# {"type": "points" | "grid" | "power" | "geometric" | "curve" | "body", ...}
# Floats are written with 17 significant digits so parsing is lossless.


def parse_descriptor(text) -> SetDescriptor:
    """Parse the JSON descriptor form (a string or an already-decoded dict)."""
    if isinstance(text, (str, bytes)):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"descriptor: not valid JSON ({exc})") from exc
    else:
        obj = text
    if not isinstance(obj, dict):
        raise DescriptorError("descriptor: expected a JSON object")
    kind = obj.get("type")
    if kind is None:
        raise DescriptorError("type: missing descriptor type")
    try:
        if kind == "points":
            coords = _require(obj, "coords", list)
            return FinitePoints(np.asarray(coords, dtype=float))
        if kind == "grid":
            return RegularGrid(_require_int(obj, "s"))
        if kind == "power":
            return PowerSequence(
                _require_real(obj, "r"),
                _require_int(obj, "N") if "N" in obj else DEFAULT_TRUNCATION,
            )
        if kind == "geometric":
            return GeometricSequence(
                _require_real(obj, "q"),
                _require_int(obj, "N") if "N" in obj else DEFAULT_TRUNCATION,
            )
        if kind == "curve":
            return Curve(_require_real(obj, "sigma"), _require_real(obj, "eps0"))
        if kind == "body":
            return MeasurableBody(_require_int(obj, "n"), _require_real(obj, "measure"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DescriptorError):
            raise
        raise DescriptorError(f"descriptor: {exc}") from exc
    raise DescriptorError(f"type: unknown descriptor type {kind!r}")


def descriptor_to_dict(desc: SetDescriptor) -> dict:
    if isinstance(desc, FinitePoints):
        return {"type": "points", "coords": [[float(c) for c in row] for row in desc.coords]}
    if isinstance(desc, RegularGrid):
        return {"type": "grid", "s": desc.s}
    if isinstance(desc, PowerSequence):
        return {"type": "power", "r": float(desc.r), "N": desc.N}
    if isinstance(desc, GeometricSequence):
        return {"type": "geometric", "q": float(desc.q), "N": desc.N}
    if isinstance(desc, Curve):
        return {"type": "curve", "sigma": float(desc.sigma), "eps0": float(desc.eps0)}
    if isinstance(desc, MeasurableBody):
        return {"type": "body", "n": desc.n, "measure": float(desc.measure)}
    raise DescriptorError(f"type: cannot serialize {type(desc).__name__}")


def serialize_descriptor(desc: SetDescriptor) -> str:
    return dumps(descriptor_to_dict(desc))


def _require(obj: dict, name: str, typ):
    if name not in obj:
        raise DescriptorError(f"{name}: required field missing")
    val = obj[name]
    if not isinstance(val, typ):
        raise DescriptorError(f"{name}: expected {typ.__name__}, got {type(val).__name__}")
    return val


def _require_int(obj: dict, name: str) -> int:
    val = _require(obj, name, (int, float))
    if isinstance(val, bool) or (isinstance(val, float) and not val.is_integer()):
        raise DescriptorError(f"{name}: expected an integer, got {val!r}")
    return int(val)


def _require_real(obj: dict, name: str) -> float:
    val = _require(obj, name, (int, float))
    if isinstance(val, bool):
        raise DescriptorError(f"{name}: expected a number, got {val!r}")
    return float(val)
