import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcii.errors import NegativeInput, NonFiniteInput
from pcii.indicators import kii_triad
from pcii.normalization import (
    KINDS,
    NormalizationMap,
    apply,
    check_unit_interval_stability,
    closed_under_product,
    square_exceeds,
)

MAPS = [
    NormalizationMap("exponential"),
    NormalizationMap("logistic"),
    NormalizationMap("logistic", {"k": 3.0}),
    NormalizationMap("gompertz"),
    NormalizationMap("gompertz", {"b": 2.5, "c": 0.4}),
]


def test_exponential_examples():
    exp = NormalizationMap()
    assert apply(exp, 0.0) == 0.0
    assert apply(exp, abs(math.log(5 / 6))) == pytest.approx(1 / 6, abs=1e-12)
    assert apply(exp, 1.0) == pytest.approx(1 - math.exp(-1), abs=1e-15)
    assert apply(exp, 1.0) == pytest.approx(0.63212, abs=1e-5)


def test_logistic_and_gompertz_closed_forms():
    t = 0.7
    assert apply(NormalizationMap("logistic", {"k": 2.0}), t) == pytest.approx(2 / (1 + math.exp(-2 * t)) - 1)
    b, c = 1.5, 0.8
    expected = (math.exp(-b * math.exp(-c * t)) - math.exp(-b)) / (1 - math.exp(-b))
    assert apply(NormalizationMap("gompertz", {"b": b, "c": c}), t) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("nmap", MAPS, ids=repr)
def test_zero_maps_to_zero(nmap):
    assert apply(nmap, 0.0) == 0.0


@pytest.mark.parametrize("nmap", MAPS, ids=repr)
# kept below saturation, where distinct exact values round to the same double
@given(t1=st.floats(min_value=0, max_value=5), gap=st.floats(min_value=1e-3, max_value=5))
def test_strictly_increasing(nmap, t1, gap):
    assert apply(nmap, t1) < apply(nmap, t1 + gap)


@pytest.mark.parametrize("nmap", MAPS, ids=repr)
@given(t=st.floats(min_value=0, max_value=1e300))
def test_range(nmap, t):
    assert 0.0 <= apply(nmap, t) < 1.0


@pytest.mark.parametrize("nmap", MAPS, ids=repr)
def test_huge_input_stays_below_one(nmap):
    assert apply(nmap, 1e300) < 1.0
    assert apply(nmap, 1e300) > 0.999


def test_only_exponential_reproduces_kii():
    triads = [(2, 5, 3), (1, 2, 1), (0.3, 7, 4), (9, 0.5, 2)]
    for kind in KINDS:
        nmap = NormalizationMap(kind)
        match = all(abs(apply(nmap, abs(math.log(y / (x * z)))) - kii_triad(x, y, z)) <= 1e-12
                    for x, y, z in triads)
        assert match == (kind == "exponential")


def test_input_validation():
    exp = NormalizationMap()
    with pytest.raises(NegativeInput):
        apply(exp, -0.1)
    with pytest.raises(NonFiniteInput):
        apply(exp, math.inf)
    with pytest.raises(NonFiniteInput):
        apply(exp, math.nan)


def test_map_validation():
    with pytest.raises(ValueError):
        NormalizationMap("sigmoid")
    with pytest.raises(ValueError):
        NormalizationMap("logistic", {"k": -1.0})
    with pytest.raises(ValueError):
        NormalizationMap("exponential", {"k": 1.0})


def test_map_is_callable():
    assert NormalizationMap("logistic")(0.0) == 0.0


def test_unit_interval_stability():
    assert check_unit_interval_stability(10**6, seed=1)
    assert check_unit_interval_stability(1, seed=0)
    with pytest.raises(ValueError):
        check_unit_interval_stability(0, seed=0)


def test_boundary_points():
    assert closed_under_product(1.0, 1.0)
    assert closed_under_product(0.0, 1.0)
    assert (1 + 0.5) ** 2 == 2.25 and 1 + 0.5 == 1.5
    assert square_exceeds(0.5)
    assert not closed_under_product(1.5, 1.5)


@given(st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1))
def test_closed_under_product(t, u):
    assert closed_under_product(t, u)


@given(st.floats(min_value=1e-12, max_value=1.0))
def test_any_extension_escapes(alpha):
    assert square_exceeds(alpha)
