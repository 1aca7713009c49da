import pytest

from motive_series.errors import InvalidInput
from motive_series.formulas import (
    TermIndex,
    curve_series,
    divisorial_poincare_product,
    divisorial_poincare_product_edges,
    divisorial_series,
    enumerate_terms,
    hilbert_ie_series,
    semigroup_class_series,
    term_codimension,
    term_v,
)
from motive_series.graph import DualGraph, build_intersection
from motive_series.laurent import LaurentPoly
from motive_series.mseries import first_mismatch

ONE = LaurentPoly.one()
L = LaurentPoly.l_power(1)
Q = LaurentPoly.q_power(1)

SINGLE = DualGraph((-1,), ())
TWO_ARROWS = DualGraph((-1,), (), (0, 0))
CUSP_ARROW = DualGraph((-3, -2, -1), ((0, 2), (1, 2)), (2,))
CHAIN = DualGraph((-2, -1), ((0, 1),))


def terms_list(g, hi, mode):
    d = build_intersection(g)
    return list(enumerate_terms(g, d, hi, mode))


def test_enumerate_zero_window():
    assert len(terms_list(SINGLE, (0,), "divisorial")) == 1
    assert len(terms_list(TWO_ARROWS, (0, 0), "curve")) == 1


def test_enumerate_single_divisorial():
    terms = terms_list(SINGLE, (2,), "divisorial")
    assert sorted(t.n for t in terms) == [(0,), (1,), (2,)]


def test_enumerate_two_arrows():
    terms = terms_list(TWO_ARROWS, (2, 1), "curve")
    d = build_intersection(TWO_ARROWS)
    at_21 = [t for t in terms if term_v(t, d, TWO_ARROWS) == (2, 1)]
    assert len(at_21) == 1
    (t,) = at_21
    assert t.arrows == (0,) and t.atilde == (1,) and t.btilde == (1,)
    assert len(terms) == 3


def test_enumerate_each_term_once():
    d = build_intersection(CUSP_ARROW)
    terms = list(enumerate_terms(CUSP_ARROW, d, (8,), "curve"))
    assert len(terms) == len(set(terms))
    for t in terms:
        v = term_v(t, d, CUSP_ARROW)
        assert v[0] <= 8


def test_term_codimension_examples():
    d = build_intersection(TWO_ARROWS)
    zero = TermIndex((), (), (0,), (), (), (), ())
    assert term_codimension(zero, d, TWO_ARROWS) == 0
    contact = TermIndex((), (0,), (0,), (), (), (1,), (1,))
    assert term_codimension(contact, d, TWO_ARROWS) == 3
    for n in range(6):
        t = TermIndex((), (), (n,), (), (), (), ())
        assert term_codimension(t, d, TWO_ARROWS) == n * (n + 3) // 2


def test_exponents_nonnegative():
    d = build_intersection(CUSP_ARROW)
    for t in enumerate_terms(CUSP_ARROW, d, (8,), "curve"):
        assert (
            term_codimension(t, d, CUSP_ARROW)
            - sum(t.n)
            - len(t.edges)
            - len(t.arrows)
            >= 0
        )


def test_curve_series_constant_term():
    assert curve_series(TWO_ARROWS, (3, 3)).coeff((0, 0)) == ONE
    assert curve_series(CUSP_ARROW, (6,)).coeff((0,)) == ONE


def test_curve_series_two_arrows_coefficient():
    s = curve_series(TWO_ARROWS, (2, 1))
    assert s.coeff((2, 1)) == Q ** 2 - Q ** 3


def test_curve_series_cusp_at_one():
    s = curve_series(CUSP_ARROW, (8,)).at_one()
    # value semigroup generated by 2 and 3
    expected = {(n,): ONE for n in [0, 2, 3, 4, 5, 6, 7, 8]}
    assert s.coeffs == expected


def test_curve_series_needs_arrows():
    with pytest.raises(InvalidInput):
        curve_series(SINGLE, (3,))


def test_divisorial_series_single():
    s = divisorial_series(SINGLE, (4,))
    assert s.coeff((0,)) == ONE
    assert s.coeff((1,)) == Q + Q ** 2
    # coefficient q^h(w) * (1 + q + ... ) pattern: at w the lowest power is
    # q^(w(w+1)/2)
    assert s.coeff((3,)).max_power() == -6


def test_class_series_single():
    s = semigroup_class_series(SINGLE, (4,))
    assert s.coeff((0,)) == ONE
    assert s.coeff((2,)) == ONE + L + L ** 2


def test_product_single():
    s = divisorial_poincare_product(SINGLE, (5,))
    assert s.coeffs == {(n,): LaurentPoly.const(n + 1) for n in range(6)}


def test_product_empty_window():
    s = divisorial_poincare_product(CHAIN, (0, 0))
    assert s.coeffs == {(0, 0): ONE}


def test_product_cusp_drops_valency_two_factor():
    g = DualGraph((-3, -2, -1), ((0, 2), (1, 2)))
    d = build_intersection(g)
    hi = (8, 8, 8)
    from motive_series.mseries import MSeries, expand_rational

    direct = expand_rational(
        MSeries.one(3), [(ONE, d.row(0)), (ONE, d.row(1))], hi
    )
    assert first_mismatch(
        divisorial_poincare_product(g, hi), direct, (0, 0, 0), hi
    ) is None


def test_product_forms_agree():
    for g, hi in ((SINGLE, (6,)), (CHAIN, (4, 4)), (CUSP_ARROW, (6, 6, 6))):
        e10 = divisorial_poincare_product(g, hi)
        e11 = divisorial_poincare_product_edges(g, hi)
        assert first_mismatch(e10, e11, (0,) * len(hi), hi) is None


def test_class_series_at_one_matches_product():
    for g, hi in ((SINGLE, (6,)), (CHAIN, (5, 5))):
        t3 = semigroup_class_series(g, hi).at_one()
        e10 = divisorial_poincare_product(g, hi)
        assert first_mismatch(t3, e10, (0,) * len(hi), hi) is None


def test_ie_series_from_hilbert_function():
    # closed form for vanishing order at a smooth point: h(w) = w(w+1)/2
    s = hilbert_ie_series(lambda w: w[0] * (w[0] + 1) // 2, 1, (5,))
    assert first_mismatch(s, divisorial_series(SINGLE, (5,)), (0,), (5,)) is None


def test_thread_partitioning_is_deterministic(monkeypatch):
    base = curve_series(CUSP_ARROW, (8,))
    monkeypatch.setenv("MOTIVE_SERIES_THREADS", "3")
    threaded = curve_series(CUSP_ARROW, (8,))
    assert base == threaded
    explicit = divisorial_series(CHAIN, (5, 5), threads=2)
    assert explicit == divisorial_series(CHAIN, (5, 5), threads=1)
