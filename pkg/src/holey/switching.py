"""The (a,b)-switch: the single repacking move everything else is built on.

Given a packing with leave L and twin vertices a, b, an eligible origin is a
vertex adjacent in L to exactly one of a, b.  The switch produces a new
packing whose leave differs from L only by toggling the four pairs
a-origin, a-terminus, b-origin, b-terminus, where the terminus is another
eligible vertex determined by a trail in an auxiliary pairing graph.

Realization: build a pairing graph T on V \ {a, b}.  A cycle containing
exactly one of a, b contributes the edge joining that vertex's two cycle
neighbors; traversing it transposes a and b in the whole cycle.  A cycle
containing both is split at a and b into two paths, and each path of length
at least 3 contributes the edge joining a's neighbor and b's neighbor within
that path; traversing it transposes a and b on that path only (restitching
the path interior to the opposite endpoints).  T has maximum degree 2 and
its degree-1 vertices are exactly the eligible origins, so the maximal path
of T from the origin ends at a distinct degree-1 terminus.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Set, Tuple

from .errors import NotTwin, OriginNotEligible
from .graphs import CyclePacking, CycleT, HoledGraph, HostGraph, cycle_edges


def switch_candidates(p: CyclePacking, a: int, b: int) -> Set[int]:
    """Vertices adjacent in the leave to exactly one of a, b."""
    if not p.ambient.are_twin(a, b):
        raise NotTwin(f"{a} and {b} are not twins")
    lv = p.leave()
    na = lv.neighbors(a)
    nb = lv.neighbors(b)
    return (na ^ nb) - {a, b}


@dataclass
class SwitchOutcome:
    new_packing: CyclePacking
    origin: int
    terminus: int
    touched_cycles: Dict[int, str] = field(default_factory=dict)


def _rotate_to(c: Sequence[int], v: int) -> Tuple[int, ...]:
    i = c.index(v) if isinstance(c, list) else tuple(c).index(v)
    c = tuple(c)
    return c[i:] + c[:i]


def perform_switch(p: CyclePacking, a: int, b: int, origin: int) -> SwitchOutcome:
    if not p.ambient.are_twin(a, b):
        raise NotTwin(f"{a} and {b} are not twins")

    # Pairing graph: edges as (endpoints, action). Actions:
    #   ("whole", i)        transpose a,b throughout cycle i
    #   ("half", i, which)  transpose a,b on one a-b path of cycle i
    t_edges: List[Tuple[int, int, tuple]] = []
    for i, c in enumerate(p.cycles):
        has_a = a in c
        has_b = b in c
        if not (has_a or has_b):
            continue
        if has_a and has_b:
            rot = _rotate_to(c, a)
            ib = rot.index(b)
            fwd = rot[: ib + 1]                      # path a ... b
            bwd = (a,) + tuple(reversed(rot[ib + 1:])) + (b,)
            for which, path in ((0, fwd), (1, bwd)):
                if len(path) >= 4:                   # shorter paths transpose to themselves
                    t_edges.append((path[1], path[-2], ("half", i, which)))
        else:
            rot = _rotate_to(c, a if has_a else b)
            t_edges.append((rot[1], rot[-1], ("whole", i)))

    adj: Dict[int, List[int]] = {}
    for eid, (x, y, _act) in enumerate(t_edges):
        adj.setdefault(x, []).append(eid)
        adj.setdefault(y, []).append(eid)
    for x, ids in adj.items():
        assert len(ids) <= 2, f"pairing graph degree {len(ids)} at {x}"

    if origin not in switch_candidates(p, a, b):
        raise OriginNotEligible(f"origin {origin} not eligible for ({a},{b})-switch")
    assert len(adj.get(origin, ())) == 1

    # walk the maximal path of T from the origin
    used: Set[int] = set()
    cur = origin
    while True:
        nxt = [eid for eid in adj.get(cur, ()) if eid not in used]
        if not nxt:
            break
        eid = nxt[0]
        used.add(eid)
        x, y, _ = t_edges[eid]
        cur = y if cur == x else x
    terminus = cur
    assert terminus != origin

    per_cycle: Dict[int, List[tuple]] = {}
    for eid in used:
        act = t_edges[eid][2]
        per_cycle.setdefault(act[1], []).append(act)

    swap = {a: b, b: a}
    new_cycles = list(p.cycles)
    touched: Dict[int, str] = {}
    for i, acts in per_cycle.items():
        c = p.cycles[i]
        if len(acts) == 2 or acts[0][0] == "whole":
            new_cycles[i] = tuple(swap.get(v, v) for v in c)
            touched[i] = "transposed"
        else:
            _, _, which = acts[0]
            rot = _rotate_to(c, a)
            ib = rot.index(b)
            if which == 0:
                new_cycles[i] = (a,) + tuple(reversed(rot[1:ib])) + rot[ib:]
                touched[i] = "half-transposed-P"
            else:
                new_cycles[i] = rot[: ib + 1] + tuple(reversed(rot[ib + 1:]))
                touched[i] = "half-transposed-P†"
    return SwitchOutcome(p.replace_cycles(new_cycles), origin, terminus, touched)


def _signature(g: HostGraph, c: CycleT) -> Tuple[int, int]:
    if isinstance(g, HoledGraph):
        pure = sum(1 for x, y in cycle_edges(c) if x >= g.u and y >= g.u)
        return (len(c), pure)
    return (len(c), 0)


def is_repacking(p: CyclePacking, q: CyclePacking) -> bool:
    """Same ambient and matchable cycles: equal length and pure/cross split."""
    if p.ambient != q.ambient and repr(p.ambient) != repr(q.ambient):
        return False
    sig_p = Counter(_signature(p.ambient, c) for c in p.cycles)
    sig_q = Counter(_signature(q.ambient, c) for c in q.cycles)
    return sig_p == sig_q
