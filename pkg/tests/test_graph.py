import pytest

from motive_series.errors import InvalidInput, NotBlowupGraph, NotUnimodular
from motive_series.graph import (
    DualGraph,
    build_intersection,
    chi_bullet,
    chi_open,
    hoskin_deligne,
    w_of_nhat,
)

SINGLE = DualGraph((-1,), ())
CHAIN = DualGraph((-2, -1), ((0, 1),))
CUSP = DualGraph((-3, -2, -1), ((0, 2), (1, 2)), (2,))


def test_single_vertex():
    d = build_intersection(SINGLE)
    assert d.A == ((-1,),)
    assert d.M == ((1,),)


def test_chain():
    d = build_intersection(CHAIN)
    assert d.A == ((-2, 1), (1, -1))
    assert d.M == ((1, 1), (1, 2))


def test_cusp_rows():
    d = build_intersection(CUSP)
    assert d.M == ((1, 1, 2), (1, 2, 3), (2, 3, 6))


def test_not_unimodular():
    with pytest.raises(NotUnimodular):
        build_intersection(DualGraph((-2,), ()))
    with pytest.raises(NotUnimodular):
        # determinant 0
        build_intersection(DualGraph((-1, -1), ((0, 1),)))


def test_not_blowup_graph():
    # unimodular tree whose inverse has a zero entry
    with pytest.raises(NotBlowupGraph):
        build_intersection(DualGraph((-1, -1, -1), ((0, 1), (1, 2))))


def test_graph_validation():
    with pytest.raises(InvalidInput):
        DualGraph((-1, -2), ())  # disconnected
    with pytest.raises(InvalidInput):
        DualGraph((1,), ())  # nonnegative self-intersection
    with pytest.raises(InvalidInput):
        DualGraph((-1, -1, -1), ((0, 1), (1, 2), (0, 2)))  # cycle
    with pytest.raises(InvalidInput):
        DualGraph((-1, -1), ((0, 1), (0, 1)))  # duplicate edge


def test_chi_counts():
    assert chi_open(CUSP, 2) == -1  # two edges and the arrow
    assert chi_bullet(CUSP, 2) == 0
    assert chi_bullet(CUSP, 0) == 1
    assert chi_open(SINGLE, 0) == 2
    two_arrows = DualGraph((-1,), (), (0, 0))
    assert chi_open(two_arrows, 0) == 0


def test_w_of_nhat():
    d = build_intersection(CUSP)
    assert w_of_nhat(d, (0, 0, 0)) == (0, 0, 0)
    assert w_of_nhat(d, (0, 0, 1)) == (2, 3, 6)
    ds = build_intersection(SINGLE)
    assert w_of_nhat(ds, (3,)) == (3,)


def test_hoskin_deligne_values():
    ds = build_intersection(SINGLE)
    assert hoskin_deligne(ds, SINGLE, (0,)) == 0
    # vanishing-order-n conditions at a smooth point cut n(n+1)/2 dimensions
    for n in range(7):
        assert hoskin_deligne(ds, SINGLE, (n,)) == n * (n + 1) // 2
    dc = build_intersection(CHAIN)
    assert hoskin_deligne(dc, CHAIN, (0, 1)) == 2


def test_hoskin_deligne_monotone():
    d = build_intersection(CUSP)
    for i in range(3):
        for nhat in [(0, 0, 0), (1, 0, 1), (2, 1, 0)]:
            bumped = tuple(x + (1 if j == i else 0) for j, x in enumerate(nhat))
            assert hoskin_deligne(d, CUSP, bumped) > hoskin_deligne(d, CUSP, nhat)


def test_codimension_shift_identity():
    # the term codimension exceeds the divisorial codimension by sum(nhat);
    # algebraically M A 1 = -1
    from motive_series.formulas import TermIndex, term_codimension

    for g in (SINGLE, CHAIN, CUSP):
        d = build_intersection(g)
        s = g.nvertices
        for nhat in [(1,) * s, tuple(range(1, s + 1)), (2,) * s]:
            t = TermIndex((), (), nhat, (), (), (), ())
            assert term_codimension(t, d, g) == hoskin_deligne(d, g, nhat) + sum(nhat)


def test_chi_ordering():
    for g in (SINGLE, CHAIN, CUSP):
        for i in range(g.nvertices):
            assert chi_open(g, i) <= chi_bullet(g, i) <= 2


def test_json_round_trip():
    doc = CUSP.to_json()
    assert doc["edges"] == [[1, 3], [2, 3]]
    assert DualGraph.from_json(doc) == CUSP
    with pytest.raises(InvalidInput):
        DualGraph.from_json({"vertices": "nope"})
