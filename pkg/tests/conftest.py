from fractions import Fraction

import pytest

from motive_series import Branch, Curve

ONE = Fraction(1)


@pytest.fixture
def smooth_branch():
    return Curve(2, [Branch([{1: ONE}, {}])])


@pytest.fixture
def transverse_lines():
    return Curve(2, [Branch([{1: ONE}, {}]), Branch([{}, {1: ONE}])])


@pytest.fixture
def cusp_curve():
    return Curve(2, [Branch([{2: ONE}, {3: ONE}])])


@pytest.fixture
def curve_c():
    return Curve(
        5,
        [
            Branch([{2: ONE}, {3: ONE}, {2: ONE}, {4: ONE}, {5: ONE}]),
            Branch([{2: ONE}, {3: ONE}, {4: ONE}, {2: ONE}, {6: ONE}]),
        ],
    )


@pytest.fixture
def curve_cprime():
    return Curve(
        6,
        [
            Branch([{3: ONE}, {4: ONE}, {5: ONE}, {4: ONE}, {5: ONE}, {6: ONE}]),
            Branch([{3: ONE}, {4: ONE}, {5: ONE}, {5: ONE}, {6: ONE}, {7: ONE}]),
        ],
    )
