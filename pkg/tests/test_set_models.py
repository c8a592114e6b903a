import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from remezkit.errors import DescriptorError
from remezkit.set_models import (
    Curve,
    FinitePoints,
    GeometricSequence,
    MeasurableBody,
    Point,
    PowerSequence,
    RegularGrid,
    descriptor_to_dict,
    geometric_points,
    grid_points,
    materialize,
    parse_descriptor,
    power_sequence_points,
    serialize_descriptor,
)


class TestGridPoints:
    def test_endpoints_only(self):
        assert grid_points(2).values_1d().tolist() == [-1.0, 1.0]

    def test_midpoint_symmetry(self):
        assert grid_points(3).values_1d().tolist() == [-1.0, 0.0, 1.0]

    def test_spacing_half(self):
        assert grid_points(5).values_1d().tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]

    def test_invalid_s(self):
        with pytest.raises(DescriptorError):
            grid_points(1)

    @pytest.mark.parametrize("s", range(2, 101))
    def test_min_gap_is_spacing(self, s):
        # Exact float equality can be off by a few ulps of the step for
        # non-dyadic s; the gap must still match to that resolution.
        xs = grid_points(s).values_1d()
        step = 2.0 / (s - 1)
        gaps = np.diff(xs)
        assert xs[0] == -1.0 and xs[-1] == 1.0
        assert abs(gaps.min() - step) <= 64 * math.ulp(step)
        assert abs(gaps.max() - step) <= 64 * math.ulp(step)


class TestSequences:
    def test_power_r1(self):
        assert power_sequence_points(1.0, 3).values_1d().tolist() == [1.0, 0.5, 1.0 / 3.0]

    def test_power_r2(self):
        assert power_sequence_points(2.0, 2).values_1d().tolist() == [1.0, 0.25]

    def test_power_single(self):
        assert power_sequence_points(3.0, 1).values_1d().tolist() == [1.0]

    def test_geometric(self):
        assert geometric_points(0.5, 3).values_1d().tolist() == [1.0, 0.5, 0.25]
        assert geometric_points(0.1, 2).values_1d().tolist() == [1.0, 0.1]
        assert geometric_points(0.9, 1).values_1d().tolist() == [1.0]

    def test_geometric_ratio_range(self):
        with pytest.raises(DescriptorError):
            geometric_points(1.0, 4)
        with pytest.raises(DescriptorError):
            geometric_points(0.0, 4)

    def test_all_points_inside_ball(self):
        for pts in (grid_points(37), power_sequence_points(0.3, 64), geometric_points(0.97, 64)):
            assert np.abs(pts.values_1d()).max() <= 1.0 + 1e-12


class TestPointInvariants:
    def test_point_norm(self):
        Point((0.6, 0.8))
        with pytest.raises(DescriptorError):
            Point((0.8, 0.8))

    def test_finite_points_ball(self):
        with pytest.raises(DescriptorError):
            FinitePoints(np.array([[1.0, 1.0]]))

    def test_empty_rejected(self):
        with pytest.raises(DescriptorError):
            FinitePoints(np.empty((0, 1)))


class TestCurveDescriptor:
    def test_injectivity_cap(self):
        Curve(48.0, 1.0 / 48.0)
        with pytest.raises(DescriptorError):
            Curve(48.0, 1.0 / 40.0)  # eps0 > 1/sigma


class TestParsing:
    def test_grid(self):
        assert parse_descriptor('{"type":"grid","s":5}') == RegularGrid(5)

    def test_geometric(self):
        assert parse_descriptor('{"type":"geometric","q":0.5,"N":8}') == GeometricSequence(0.5, 8)

    def test_grid_invariant(self):
        with pytest.raises(DescriptorError):
            parse_descriptor('{"type":"grid","s":1}')

    def test_unknown_type(self):
        with pytest.raises(DescriptorError, match="type"):
            parse_descriptor('{"type":"moebius"}')

    def test_missing_field_named(self):
        with pytest.raises(DescriptorError, match="q"):
            parse_descriptor('{"type":"geometric","N":8}')

    def test_points(self):
        desc = parse_descriptor('{"type":"points","coords":[[-1],[1]]}')
        assert isinstance(desc, FinitePoints)
        assert desc.values_1d().tolist() == [-1.0, 1.0]

    def test_default_truncation(self):
        assert parse_descriptor('{"type":"power","r":2}').N == 64

    @pytest.mark.parametrize(
        "desc",
        [
            RegularGrid(7),
            PowerSequence(1.5, 32),
            GeometricSequence(0.123456789012345, 16),
            Curve(48.0, 1.0 / 48.0),
            MeasurableBody(2, 0.7),
            FinitePoints(np.array([[-1.0], [0.1234567890123456], [1.0]])),
        ],
    )
    def test_roundtrip(self, desc):
        assert parse_descriptor(serialize_descriptor(desc)) == desc

    @given(
        q=st.floats(min_value=1e-6, max_value=1.0 - 1e-9, exclude_max=True),
        n=st.integers(min_value=1, max_value=500),
    )
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_geometric_property(self, q, n):
        desc = GeometricSequence(q, n)
        assert parse_descriptor(serialize_descriptor(desc)) == desc

    @given(st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=1, max_size=20))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_points_property(self, values):
        desc = FinitePoints(np.array(values).reshape(-1, 1))
        assert parse_descriptor(serialize_descriptor(desc)) == desc

    def test_seventeen_digit_floats(self):
        text = serialize_descriptor(GeometricSequence(1.0 / 3.0, 8))
        assert json.loads(text)["q"] == 1.0 / 3.0


class TestMaterialize:
    def test_curve_not_materializable(self):
        with pytest.raises(DescriptorError):
            materialize(Curve(48.0, 1.0 / 48.0))

    def test_body_not_materializable(self):
        with pytest.raises(DescriptorError):
            materialize(MeasurableBody(1, 0.5))

    def test_descriptor_dict_fields(self):
        d = descriptor_to_dict(MeasurableBody(2, 0.25))
        assert d == {"type": "body", "n": 2, "measure": 0.25}
