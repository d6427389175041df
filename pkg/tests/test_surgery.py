"""Seeded spot checks of the leave-reshaping operations.

The heavy randomized contract suites live in test_acceptance.py; these runs
keep each operation honest at unit scale with a fixed generator seed.
"""

import random

import pytest

from holey.chains import split_chain_or_ring
from holey.errors import HypothesisViolation
from holey.graphs import HoledGraph, cycle_edges
from holey.leaves import as_two_cycles
from holey.merging import (
    component_bound,
    join_to_two_m_cycles,
    pick_apart,
    resolve_to_good_chain,
)
from holey.surgery import split_two_chain
from tests.generators import (
    make_good_chain,
    make_good_ring,
    make_two_chain,
    packing_with_leave,
)


def _leave_packing(g, cycles, rng):
    edges = [e for c in cycles for e in cycle_edges(c)]
    return packing_with_leave(g, edges, rng)


def test_split_two_chain_reaches_target():
    rng = random.Random(0)
    done = 0
    while done < 20:
        g = HoledGraph(7, 19)
        cyc = make_two_chain(g, 5, 7, "odd", rng)
        if cyc is None:
            continue
        p = _leave_packing(g, cyc, rng)
        try:
            q = split_two_chain(p, 9)
        except HypothesisViolation:
            continue
        l = q.reduced_leave()
        assert as_two_cycles(l, g, 9, 3) is not None
        assert l.pure_edge_count(g) == 2
        done += 1


def test_split_two_chain_even_spread():
    rng = random.Random(1)
    done = 0
    while done < 20:
        g = HoledGraph(7, 19)
        cyc = make_two_chain(g, 6, 8, "even", rng)
        if cyc is None:
            continue
        p = _leave_packing(g, cyc, rng)
        try:
            q = split_two_chain(p, 7)
        except HypothesisViolation:
            continue
        assert as_two_cycles(q.reduced_leave(), g, 7, 7) is not None
        done += 1


def test_split_chain_or_ring_on_rings():
    rng = random.Random(2)
    done = 0
    while done < 15:
        g = HoledGraph(9, 23)
        cyc = make_good_ring(g, [5, 4, 5], rng)
        if cyc is None:
            continue
        p = _leave_packing(g, cyc, rng)
        try:
            q = split_chain_or_ring(p, 7, 7)
        except HypothesisViolation:
            continue
        assert as_two_cycles(q.reduced_leave(), g, 7, 7) is not None
        done += 1


def test_pick_apart_profile():
    rng = random.Random(3)
    done = 0
    while done < 15:
        g = HoledGraph(9, 23)
        cyc = make_good_chain(g, [4, 5, 3, 4], rng)
        if cyc is None:
            continue
        p = _leave_packing(g, cyc, rng)
        try:
            q = pick_apart(p)
        except HypothesisViolation:
            continue
        degs = sorted(q.reduced_leave().degrees().values(), reverse=True)
        assert degs[0] == 4 and all(d == 2 for d in degs[1:])
        done += 1


def test_resolve_to_good_chain_reaches_two_cycles():
    rng = random.Random(4)
    done = 0
    while done < 15:
        g = HoledGraph(11, 25)
        cyc = make_good_chain(g, [5, 4, 5], rng)
        if cyc is None:
            continue
        p = _leave_packing(g, cyc, rng)
        try:
            q = resolve_to_good_chain(p, 7, 7)
        except HypothesisViolation:
            continue
        assert as_two_cycles(q.reduced_leave(), g, 7, 7) is not None
        done += 1


def test_join_produces_two_m_cycles():
    rng = random.Random(5)
    done = 0
    while done < 15:
        g = HoledGraph(9, 23)
        cyc = make_two_chain(g, 7, 11, "odd", rng)
        if cyc is None:
            continue
        p = _leave_packing(g, cyc, rng)
        before = len(p.reduced_leave())
        try:
            q, c1, c2 = join_to_two_m_cycles(p, 9)
        except HypothesisViolation:
            continue
        assert len(c1) == len(c2) == 9
        assert len(q.reduced_leave()) == before - 18
        done += 1


def test_join_rejects_wrong_leave_size():
    rng = random.Random(6)
    g = HoledGraph(9, 23)
    while True:
        cyc = make_two_chain(g, 5, 7, "odd", rng)
        if cyc is not None:
            break
    p = _leave_packing(g, cyc, rng)
    with pytest.raises(HypothesisViolation):
        join_to_two_m_cycles(p, 9)


def test_component_bound_formula():
    rng = random.Random(7)
    g = HoledGraph(9, 23)
    while True:
        cyc = make_two_chain(g, 5, 9, "odd", rng)
        if cyc is not None:
            break
    p = _leave_packing(g, cyc, rng)
    assert component_bound(p.reduced_leave()) == (14 - 6) // 4 + 1
