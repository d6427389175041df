import pytest

from holey.errors import InvalidParameters
from holey.graphs import (
    CyclePacking,
    HoledGraph,
    Leave,
    canonical_cycle,
    cycle_edges,
    edge,
)


def test_edge_normalizes_order():
    assert edge(5, 2) == (2, 5)
    assert edge(2, 5) == (2, 5)


def test_canonical_cycle_rotation_and_reflection():
    base = canonical_cycle((0, 3, 1, 4))
    assert canonical_cycle((3, 1, 4, 0)) == base
    assert canonical_cycle((0, 4, 1, 3)) == base
    assert canonical_cycle((4, 3, 0, 1)) != canonical_cycle((4, 0, 3, 1))


def test_holed_graph_edge_count():
    g = HoledGraph(3, 9)
    assert g.edge_count == 36 - 3
    assert len(list(g.edges())) == g.edge_count
    assert not g.has_edge(0, 1)
    assert g.has_edge(0, 5)
    assert g.has_edge(5, 6)


def test_pure_and_twin():
    g = HoledGraph(3, 9)
    assert g.is_pure(4, 7)
    assert not g.is_pure(1, 7)
    assert g.are_twin(0, 2)
    assert g.are_twin(4, 8)
    assert not g.are_twin(1, 4)


def test_packing_rejects_hole_edge():
    g = HoledGraph(3, 9)
    with pytest.raises(InvalidParameters):
        CyclePacking(g, [(0, 1, 5)])


def test_packing_rejects_edge_reuse():
    g = HoledGraph(1, 7)
    with pytest.raises(InvalidParameters):
        CyclePacking(g, [(1, 2, 3), (1, 2, 4)])


def test_leave_accounts_for_all_edges():
    g = HoledGraph(1, 7)
    cyc = (1, 2, 3)
    p = CyclePacking(g, [cyc])
    l = p.leave()
    assert len(l) == g.edge_count - 3
    assert all(e not in l.edge_set for e in cycle_edges(cyc))


def test_leave_pure_edge_count():
    g = HoledGraph(3, 9)
    l = Leave({edge(3, 4), edge(0, 5), edge(1, 5)})
    assert l.pure_edge_count(g) == 1
    assert l.degrees()[5] == 2
