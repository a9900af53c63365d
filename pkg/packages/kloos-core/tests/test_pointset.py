import io
import math
from fractions import Fraction

import numpy as np
import pytest

from kloos.core import Box, CapacityError, InversePair, PointCloud, PreconditionError, Settings, generate, oracles
from kloos.core.aggregate import complete_sums
from kloos.core.pointset import empty_box_witnesses, export_csv, export_svg


# skipcq: PY-D0003
def test_generate_small(s4):
    assert [pair.as_tuple() for pair in s4] == [(1, 1, 1), (1, 1, 2), (1, 1, 3), (2, 2, 3), (1, 1, 4), (3, 3, 4)]
    assert s4.count == len(s4) == 6
    assert repr(s4) == "<PointSet(X=4, count=6)>"
    assert s4.label == "S(4)"


# skipcq: PY-D0003
def test_generate_matches_brute_force(s10):
    assert sorted(pair.as_tuple() for pair in s10) == sorted(oracles.inverse_points(10))
    assert s10.count == 32


# skipcq: PY-D0003
def test_generate_threads_give_identical_sets(settings, threaded_settings):
    single = generate(300, settings)
    threaded = generate(300, threaded_settings)
    assert np.array_equal(single.a, threaded.a)
    assert np.array_equal(single.b, threaded.b)
    assert np.array_equal(single.c, threaded.c)


# skipcq: PY-D0003
def test_generate_capacity():
    with pytest.raises(CapacityError):
        generate(11, Settings(point_cap=10))
    with pytest.raises(PreconditionError):
        generate(0)


# skipcq: PY-D0003
def test_point_set_is_read_only(s10):
    with pytest.raises(ValueError):
        s10.a[0] = 2


# skipcq: PY-D0003
def test_contains(s10):
    assert (1, 1, 1) in s10
    assert InversePair(2, 3, 5) in s10
    assert (2, 2, 5) not in s10
    assert (1, 1, 11) not in s10


# skipcq: PY-D0003
def test_symmetry_under_swap(s100):
    pairs = {pair.as_tuple() for pair in s100}
    assert all((b, a, c) in pairs for a, b, c in pairs)
    assert all(c - a == 0 or (c - a, c - b, c) in pairs for a, b, c in pairs)


# skipcq: PY-D0003
def test_witness(s10):
    assert s10.witness(0) == InversePair(1, 1, 1)
    assert s10.witness(3) == InversePair(2, 2, 3)
    assert s10.coordinates(3) == (Fraction(2, 3), Fraction(2, 3))
    assert PointCloud.witness(s10, 3) == s10.coordinates(3)


# skipcq: PY-D0003
def test_count_in_box(s100):
    assert s100.count_in_box(Box(0, 0, "1/10", "1/10")) == 91
    assert s100.count_in_box(Box(0, 0, 1, 1)) == s100.count
    assert s100.count_in_box(Box("0.3", "0.6", 0, 0)) == 0
    boxes = [Box(0, 0, "1/10", "1/10"), Box(0, 0, 1, 1)]
    assert s100.count_in_boxes(boxes) == [91, s100.count]
    assert s100.count_in_boxes([]) == []


# skipcq: PY-D0003
def test_count_in_box_wraps_around(s10):
    box = Box("0.9", "0.9", "0.2", "0.2")
    expected = sum(
        1
        for pair in s10
        if (pair.x >= Fraction(9, 10) or pair.x <= Fraction(1, 10))
        and (pair.y >= Fraction(9, 10) or pair.y <= Fraction(1, 10))
    )
    assert s10.count_in_box(box) == expected


# skipcq: PY-D0003
def test_closed_and_open_boxes(s10):
    box = Box("1/3", "1/3", "1/3", "1/3")
    closed = s10.count_in_box(box)
    interior = s10.count_in_box(box, closed=False)
    assert closed >= interior
    assert closed - interior == 2


# skipcq: PY-D0003
def test_empty_box_witnesses(s100):
    boxes = empty_box_witnesses(100)
    assert len(boxes) == 2
    assert all(s100.count_in_box(box) == 0 for box in boxes)
    assert len(empty_box_witnesses(4)) == 1


# skipcq: PY-D0003
def test_count_in_disc(s10):
    assert s10.count_in_disc((0.5, 0.5), 0.01) == 1
    assert s10.count_in_disc((0.5, 0.5), 0.0) == 0
    assert s10.count_in_disc((0.0, 0.0), 0.49) > s10.count_in_disc((0.5, 0.5), 0.1)


# skipcq: PY-D0003
def test_weyl_sum_is_complete_sum(s100):
    for m1, m2 in [(1, 1), (0, 3), (-2, 5)]:
        value = s100.weyl_sum(m1, m2)
        assert value.real == pytest.approx(complete_sums([(m1, m2)], 100)[0], abs=1e-7)
        assert abs(value.imag) < 1e-7


# skipcq: PY-D0003
def test_weyl_sums_match_single_sums(s100):
    vectors = [(1, 1), (0, 3), (-2, 5), (0, 0)]
    values = s100.weyl_sums(vectors)
    assert values[-1] == pytest.approx(s100.count)
    for vector, value in zip(vectors, values.tolist()):
        assert value == pytest.approx(s100.weyl_sum(*vector), abs=1e-7)
    assert len(s100.weyl_sums([])) == 0


@pytest.mark.parametrize("X", [2, 10, 40])
# skipcq: PY-D0003
def test_min_pairwise_distance(X: int):
    ps = generate(X)
    distance, (first, second) = ps.min_pairwise_distance()
    assert distance == pytest.approx(oracles.min_pairwise_distance(ps))
    assert isinstance(first, InversePair)
    assert first != second


# skipcq: PY-D0003
def test_min_pairwise_distance_values():
    assert generate(2).min_pairwise_distance()[0] == pytest.approx(math.sqrt(2) / 2)
    assert generate(10).min_pairwise_distance()[0] == pytest.approx(math.sqrt(2) / 90)


# skipcq: PY-D0003
def test_min_pairwise_distance_needs_two_points(single_point):
    with pytest.raises(PreconditionError):
        single_point.min_pairwise_distance()


# skipcq: PY-D0003
def test_hyperbola_points():
    assert [pair.c for pair in generate(9).hyperbola_points()] == [4, 5, 6, 7, 8, 9]
    points = generate(100).hyperbola_points()
    assert len(points) == 90
    assert all(pair.a == pair.b == 1 for pair in points)


# skipcq: PY-D0003
def test_point_cloud_validation():
    with pytest.raises(PreconditionError):
        PointCloud(np.array([1, 2]), np.array([1]), np.array([3, 3]))
    with pytest.raises(PreconditionError):
        PointCloud(np.array([1]), np.array([1]), np.array([0]))


# skipcq: PY-D0003
def test_subset(s10):
    subset = s10.subset([0, 5, 7], label="few")
    assert subset.count == 3
    assert subset.label == "few"
    assert subset.witness(1) == s10.coordinates(5)


# skipcq: PY-D0003
def test_export_csv(s4):
    buffer = io.StringIO()
    assert export_csv(s4, buffer) == 6
    lines = buffer.getvalue().splitlines()
    assert lines[0] == "a,b,c"
    assert lines[1:3] == ["1,1,1", "1,1,2"]
    assert len(lines) == 7


# skipcq: PY-D0003
def test_export_csv_to_path(s4, tmp_path):
    target = tmp_path / "points.csv"
    export_csv(s4, target)
    assert target.read_text(encoding="utf-8").startswith("a,b,c\n1,1,1\n")


# skipcq: PY-D0003
def test_export_svg(s4):
    buffer = io.StringIO()
    assert export_svg(s4, buffer) == 6
    svg = buffer.getvalue()
    assert svg.startswith("<svg")
    assert svg.count("<circle") == 6
    assert '<circle cx="1000" cy="0" r="0.5"/>' in svg
    assert '<circle cx="500" cy="500" r="0.5"/>' in svg


# skipcq: PY-D0003
def test_export_rejects_unknown_target(s4):
    with pytest.raises(TypeError):
        export_csv(s4, 42)
