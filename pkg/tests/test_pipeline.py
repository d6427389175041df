import pytest

from holey.certify import verify
from holey.errors import (
    InvalidInputSystem,
    NotAdmissible,
    OutOfCoveredRange,
    ResourceExhausted,
    Unsupported,
)
from holey.oracles import SolverConfig
from holey.pipeline import admissible, construct, embed_system, nu

CFG = SolverConfig(seed=0, time_budget=60.0)


def test_admissible_examples():
    assert admissible(9, 5, 11).admissible
    rep = admissible(9, 5, 7)
    assert not rep.n3
    rep = admissible(9, 4, 12)
    assert not rep.n1


def test_even_m_unsupported():
    with pytest.raises(Unsupported):
        admissible(8, 5, 11)


def test_ratio_bound_is_exact_at_the_boundary():
    # m=3 demands v >= 2u+1; a float version of u(m+1)/(m-1)+1 can tip
    # either way at equality
    assert admissible(3, 13, 27).n3
    assert not admissible(3, 13, 25).n3


def test_nu_values():
    assert nu(9, 5) == 11
    assert nu(9, 1) == 9
    assert nu(11, 13) == 21


def test_construct_counts_edges():
    cert = construct(9, 9, 19, CFG)
    assert len(cert.cycles) == 15
    assert verify(cert).ok


def test_construct_rejects_inadmissible():
    with pytest.raises(NotAdmissible):
        construct(9, 4, 12, CFG)
    with pytest.raises(NotAdmissible):
        construct(9, 5, 7, CFG)


def test_unresolved_window_reported():
    with pytest.raises(OutOfCoveredRange):
        construct(17, 19, 33, CFG)


def test_tiny_budget_exhausts():
    with pytest.raises(ResourceExhausted):
        construct(9, 17, 23, SolverConfig(seed=0, time_budget=0.001))


def test_boundary_triangles_route():
    cert = construct(3, 17, 35, SolverConfig(seed=0, time_budget=5.0))
    assert verify(cert).ok and len(cert.cycles) == 153


def test_near_boundary_triangles_route():
    for u, v in ((13, 31), (15, 33)):
        cert = construct(3, u, v, SolverConfig(seed=0, time_budget=20.0))
        assert verify(cert).ok


def test_embed_trivial_system():
    base = construct(9, 1, 9, CFG)
    out = embed_system(base, 19, CFG)
    assert out.u == 1 and out.v == 19
    assert verify(out).ok


def test_embed_keeps_input_cycles():
    base = construct(9, 1, 9, CFG)
    out = embed_system(base, 19, CFG)
    assert set(base.cycles) <= set(out.cycles)
    assert len(out.cycles) == 19


def test_embed_rejects_holed_input():
    holed = construct(9, 5, 11, CFG)
    with pytest.raises(InvalidInputSystem):
        embed_system(holed, 21, CFG)


def test_embed_rejects_too_small_target():
    base = construct(9, 1, 9, CFG)
    with pytest.raises(NotAdmissible):
        embed_system(base, 11, CFG)


def test_nesting_route():
    cert = construct(9, 1, 37, SolverConfig(seed=0, time_budget=120.0))
    assert verify(cert).ok and len(cert.cycles) == 74
