import pytest

from holey.base import (
    _derive_counts,
    base_decomposition,
    base_decomposition_9,
    mixed_cycles,
    r_list,
)
from holey.errors import PreconditionViolation
from holey.graphs import HoledGraph, cycle_edges
from holey.oracles import SolverConfig

CFG = SolverConfig(seed=0, time_budget=120.0)


def test_r_list_values():
    assert r_list(0) == []
    assert r_list(8) == [4, 4]
    assert r_list(6) == [6]
    assert r_list(10) == [4, 6]
    assert r_list(12) == [4, 4, 4]
    for l in (0, 4, 6, 8, 10, 12, 14, 16, 18):
        assert sum(r_list(l)) == l


def test_r_list_rejects_unsplittable():
    with pytest.raises(PreconditionViolation):
        r_list(2)


def test_derived_counts_for_9_9_19():
    assert _derive_counts(9, 9, 19) == (11, 2, 4)


def test_derived_counts_reject_bad_divisibility():
    with pytest.raises(PreconditionViolation):
        _derive_counts(11, 21, 33)


def test_mixed_cycles_cover_exactly():
    c = tuple(range(10, 18))
    n_set = list(range(18, 22))
    cycles = mixed_cycles(c, n_set, 0, 1, 4)
    assert sorted(map(len, cycles)) == [3] * 4 + [5] * 4
    seen = set()
    c_edges = set(cycle_edges(c))
    for cyc in cycles:
        hits = 0
        for e in cycle_edges(cyc):
            assert e not in seen
            seen.add(e)
            hits += e in c_edges
        assert hits == 1
    assert c_edges <= seen


def _check_exact_tiling(packing, g):
    seen = set()
    for c in packing.cycles:
        for e in cycle_edges(c):
            assert g.has_edge(*e) and e not in seen
            seen.add(e)
    assert len(seen) == g.edge_count


def test_base_decomposition_11_11_23():
    packing, par = base_decomposition(11, 11, 23, CFG)
    g = HoledGraph(11, 23)
    _check_exact_tiling(packing, g)
    assert par.k == 13 and par.x == 5
    lengths = sorted(map(len, packing.cycles))
    assert lengths.count(11) == par.x
    for c in packing.cycles:
        if len(c) == 11:
            continue
        pures = sum(1 for x, y in cycle_edges(c) if x >= 11 and y >= 11)
        assert pures <= 1


def test_base_decomposition_9_multiset():
    packing, par = base_decomposition_9(9, 19, CFG)
    g = HoledGraph(9, 19)
    _check_exact_tiling(packing, g)
    expected = sorted([3] * (par.k - par.kp) + [6] * (par.k - par.kp)
                      + [4] * par.kp + [5] * par.kp + [9] * par.x)
    assert sorted(map(len, packing.cycles)) == expected


def test_base_rejects_even_or_small_m():
    with pytest.raises(PreconditionViolation):
        base_decomposition(9, 9, 19, CFG)
    with pytest.raises(PreconditionViolation):
        base_decomposition(12, 11, 23, CFG)
