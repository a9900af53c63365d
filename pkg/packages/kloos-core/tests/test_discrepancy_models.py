import math
from fractions import Fraction

import numpy as np
import pytest

from kloos.core import Box, ConvexPolygon, Disc, HyperbolaRegion, PreconditionError
from kloos.core.discrepancy.models import DiscrepancyResult, ErrorEstimate, HyperbolaBound


# skipcq: PY-D0003
def test_box():
    box = Box("1/4", 0.5, "0.25", 1)
    assert box.xi == Fraction(1, 4)
    assert box.measure == Fraction(1, 4)
    assert box.to_json() == {
        "xi": 0.25,
        "zeta": 0.5,
        "alpha": 0.25,
        "beta": 1.0,
        "exact": {"xi": "1/4", "zeta": "1/2", "alpha": "1/4", "beta": "1"},
    }
    assert repr(box) == "<Box(xi=1/4, zeta=1/2, alpha=1/4, beta=1)>"


# skipcq: PY-D0003
def test_box_parse():
    box = Box(0, 0, "1/2", "1/2")
    assert Box.parse(box) is box
    assert Box.parse({"xi": 0, "zeta": 0, "alpha": "1/2", "beta": "1/2"}) == box
    assert Box.parse([0, 0, 0.5, 0.5]) == box
    with pytest.raises(TypeError):
        Box.parse("box")


@pytest.mark.parametrize("args", [(-0.1, 0, 0.5, 0.5), (0, 0, 1.5, 0.5), (0, 0, 0.5, "x"), (0, math.inf, 0, 0)])
# skipcq: PY-D0003
def test_box_rejects_bad_sides(args: tuple):
    with pytest.raises(PreconditionError):
        Box(*args)


# skipcq: PY-D0003
def test_box_eq_other_class():
    with pytest.raises(TypeError):
        _ = Box(0, 0, 1, 1) == (0, 0, 1, 1)


# skipcq: PY-D0003
def test_box_eq_compares_coordinates(mocker):
    assert Box(0, "0.5", "1/4", 1) == Box("0", "1/2", 0.25, "1")
    mocker.patch.object(Box, "__hash__", return_value=0)
    assert Box(0, 0, "1/2", "1/2") != Box(0, 0, "1/2", "1/4")
    assert Box(0, 0, "1/2", "1/2").as_tuple() == (0, 0, Fraction(1, 2), Fraction(1, 2))


# skipcq: PY-D0003
def test_disc():
    disc = Disc.parse({"center": [0.5, 0.25], "R": 0.1})
    assert disc.center == (0.5, 0.25)
    assert disc.measure == pytest.approx(math.pi * 0.01)
    assert disc.to_json() == {"center": [0.5, 0.25], "R": 0.1}
    with pytest.raises(PreconditionError):
        Disc((0.5, 0.5), 0.5)
    with pytest.raises(PreconditionError):
        Disc((1.5, 0.5), 0.1)
    with pytest.raises(TypeError):
        Disc.parse([0.5, 0.5, 0.1])


# skipcq: PY-D0003
def test_polygon_orientation_and_area():
    square = [(0, 0), ("1/2", 0), ("1/2", "1/2"), (0, "1/2")]
    counterclockwise = ConvexPolygon(square)
    clockwise = ConvexPolygon(list(reversed(square)))
    assert counterclockwise.exact_area == Fraction(1, 4)
    assert clockwise.exact_area == Fraction(1, 4)
    assert clockwise.vertices == counterclockwise.vertices
    assert counterclockwise.y_bounds() == (0.0, 0.5)


# skipcq: PY-D0003
def test_polygon_rejects_bad_input():
    with pytest.raises(PreconditionError):
        ConvexPolygon([(0, 0), (0.5, 0)])
    with pytest.raises(PreconditionError):
        ConvexPolygon([(0, 0), (0.5, 0), (1, 0.5)])
    with pytest.raises(PreconditionError):
        ConvexPolygon([(0, 0), (0.25, 0), (0.5, 0), (0.25, 0.5)])
    with pytest.raises(PreconditionError):
        ConvexPolygon([(0, 0), (0.5, 0.5), (0.5, 0), (0, 0.5)])


# skipcq: PY-D0003
def test_polygon_contains_is_closed(pentagon: ConvexPolygon):
    x_num = np.array([1, 6, 5, 0, 9, 10])
    y_num = np.array([2, 5, 5, 0, 4, 10])
    den = np.array([10, 100, 10, 10, 10, 10])
    assert pentagon.contains(x_num, y_num, den).tolist() == [True, False, True, False, True, False]


# skipcq: PY-D0003
def test_polygon_square_inside(pentagon: ConvexPolygon):
    inside = pentagon.square_inside(np.array([4, 0]), np.array([4, 0]), np.array([1, 1]), np.array([10, 10]))
    assert inside.tolist() == [True, False]


# skipcq: PY-D0003
def test_polygon_parse(pentagon: ConvexPolygon):
    assert ConvexPolygon.parse(pentagon) is pentagon
    parsed = ConvexPolygon.parse([[0.1, 0.1], [0.5, 0.1], [0.1, 0.5]])
    assert parsed.area == pytest.approx(0.08)
    assert parsed.to_json() == [[0.1, 0.1], [0.5, 0.1], [0.1, 0.5]]


# skipcq: PY-D0003
def test_hyperbola_region():
    region = HyperbolaRegion(4)
    assert region.area == pytest.approx(1 - (1 + math.log(4)) / 4)
    x_num = np.array([1, 1, 1, 2])
    y_num = np.array([1, 1, 1, 2])
    den = np.array([1, 2, 3, 3])
    assert region.contains(x_num, y_num, den).tolist() == [True, True, False, True]
    assert region.y_bounds() == (0.25, 1.0)
    assert region.to_json() == {"hyperbola": 4}
    with pytest.raises(PreconditionError):
        HyperbolaRegion(0)


# skipcq: PY-D0003
def test_discrepancy_result_to_json():
    result = DiscrepancyResult(0.5, Box(0, 0, 1, "1/2"), "exact-small", 2, 4)
    payload = result.to_json()
    assert payload["value"] == 0.5
    assert payload["closed"] is True
    assert payload["lower_bound"] is False
    assert payload["witness"]["exact"]["beta"] == "1/2"


# skipcq: PY-D0003
def test_error_estimate_unpacks():
    estimate = ErrorEstimate(0.3, 0.1, 10, 11.0)
    E, relative = estimate
    assert (E, relative) == (0.3, 0.1)
    assert estimate.to_json()["absolute"] is False


# skipcq: PY-D0003
def test_hyperbola_bound():
    bound = HyperbolaBound(3, 2, 4, HyperbolaRegion(3).area, 2.5)
    assert bound.area == pytest.approx(0.30046, abs=1e-5)
    assert bound.measured == pytest.approx(0.19954, abs=1e-5)
    assert bound.floor == pytest.approx((math.log(3) - 2.5) / 3)
    assert bound.holds
    assert bound.to_json()["holds"] is True
