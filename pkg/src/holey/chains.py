"""Splitting a good s-chain or s-ring leave into two prescribed odd cycles.

A chain is good when an end cycle carries a pure edge with its link vertex
outside the hole and every internal cycle has one link on each side of the
hole; a ring is good when the links alternate sides (with one special
all-outside pure cycle when the ring is odd).  The split first balances the
leave into two paths of the target lengths and then closes each path into a
cycle with one switch; rings are opened into chains by switching a link
vertex against a twin that is absent from the leave.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from .errors import (
    HypothesisViolation,
    InternalInvariantViolation,
)
from .graphs import CyclePacking, HoledGraph, Leave, cycle_edges, edge, path_edges
from .leaves import (
    ChainForm,
    RingForm,
    as_two_cycles,
    classify_leave,
)
from .surgery import split_two_chain
from .switching import perform_switch, switch_candidates


@dataclass
class GoodnessReport:
    is_good: bool
    good_end: Optional[int] = None  # index of a qualifying end cycle
    reason: str = ""


def _pure(g: HoledGraph, a: int, b: int) -> bool:
    return a >= g.u and b >= g.u


def _cycle_has_pure(c: Sequence[int], g: HoledGraph) -> bool:
    return any(_pure(g, a, b) for a, b in cycle_edges(c))


def goodness(shape, g: HoledGraph) -> GoodnessReport:
    if isinstance(shape, ChainForm):
        if shape.s == 2:
            return GoodnessReport(True, reason="2-chains are always good")
        for i in range(1, shape.s - 1):
            la, lb = shape.links[i - 1], shape.links[i]
            if (la < g.u) == (lb < g.u):
                return GoodnessReport(False, reason=f"internal cycle {i} links on one side")
        good_end = None
        for end, link in ((0, shape.links[0]), (shape.s - 1, shape.links[-1])):
            if link >= g.u and _cycle_has_pure(shape.cycles[end], g):
                good_end = end
                break
        if good_end is None:
            return GoodnessReport(False, reason="no end cycle with pure edge and outside link")
        return GoodnessReport(True, good_end=good_end)
    if isinstance(shape, RingForm):
        if shape.s == 2:
            a, b = shape.shared
            ok = (a < g.u) != (b < g.u)
            return GoodnessReport(ok, reason="2-ring link sides")
        sides = []
        for i in range(shape.s):
            la = shape.links[i - 1]
            lb = shape.links[i]
            sides.append(((la < g.u), (lb < g.u)))
        if shape.s % 2 == 0:
            ok = all(sa != sb for sa, sb in sides)
            return GoodnessReport(ok, reason="even ring alternation")
        special = [
            i
            for i, (sa, sb) in enumerate(sides)
            if not sa and not sb and _cycle_has_pure(shape.cycles[i], g)
        ]
        rest_ok = all(
            sa != sb for i, (sa, sb) in enumerate(sides) if i not in special[:1]
        )
        ok = bool(special) and rest_ok
        return GoodnessReport(ok, good_end=special[0] if special else None)
    raise HypothesisViolation(f"not a chain or ring: {shape}")


def find_isolated_twin(
    l: Leave, g: HoledGraph, side: str, part: str = "ii"
) -> int:
    """A vertex on the given side ('hole' or 'outside') absent from the leave.

    The counting preconditions guaranteeing existence are checked: part 'i'
    needs |E(L)| <= 2(u+1) and a hole vertex of degree >= 4; part 'ii' needs
    |E(L)| <= 2 min(u+2, v-u) and two degree-4 (or one degree >= 6) vertices
    on the requested side.
    """
    size = len(l)
    degs = l.degrees()
    u, v = g.u, g.v
    in_side = (lambda x: x < u) if side == "hole" else (lambda x: x >= u)
    if part == "i":
        if side != "hole":
            raise HypothesisViolation("part (i) applies to the hole side")
        if size > 2 * (u + 1):
            raise HypothesisViolation("leave too large for isolated-vertex bound")
        if not any(d >= 4 for x, d in degs.items() if x < u):
            raise HypothesisViolation("no hole vertex of degree 4")
    elif part == "ii":
        if size > 2 * min(u + 2, v - u):
            raise HypothesisViolation("leave too large for isolated-vertex bound")
        heavy = [x for x, d in degs.items() if in_side(x) and d >= 4]
        if not (len(heavy) >= 2 or any(degs[x] >= 6 for x in heavy)):
            raise HypothesisViolation("side lacks the required high-degree vertices")
    else:
        raise HypothesisViolation(f"unknown part {part!r}")
    pool = range(u) if side == "hole" else range(u, v)
    for y in pool:
        if y not in l:
            return y
    raise InternalInvariantViolation("isolated twin guaranteed but not found")


def deg4_with_isolated_twin(l: Leave, g: HoledGraph) -> Tuple[int, int]:
    """A degree->=4 vertex x and a twin y absent from the leave (part (iii))."""
    size = len(l)
    if size > 2 * min(g.u + 2, g.v - g.u):
        raise HypothesisViolation("leave too large for isolated-vertex bound")
    degs = l.degrees()
    heavy = sorted(x for x, d in degs.items() if d >= 4)
    if not (len(heavy) >= 2 or any(degs[x] >= 6 for x in heavy)):
        raise HypothesisViolation("leave lacks the required high-degree vertices")
    for x in heavy:
        side = "hole" if x < g.u else "outside"
        pool = range(g.u) if x < g.u else range(g.u, g.v)
        for y in pool:
            if y not in l and y != x:
                return x, y
    raise InternalInvariantViolation("no degree-4 vertex has an isolated twin")


def _arcs(cycle: Sequence[int], a: int, b: int) -> List[List[int]]:
    """The two a..b arcs of a cycle."""
    c = list(cycle)
    i = c.index(a)
    rot = c[i:] + c[:i]
    j = rot.index(b)
    back = [rot[0]] + rot[len(rot) - 1: j - 1: -1]
    return [rot[: j + 1], back]


def _path_decompositions(chain: ChainForm, g: HoledGraph, m1: int):
    """Yield (P, length) decompositions of the chain into two paths sharing
    end vertices outside the hole, each with one pure edge, ordered by
    increasing |P| among lengths >= m1."""
    s = chain.s
    total = sum(chain.lengths)
    ends_a = [x for x in chain.cycles[0] if x != chain.links[0] and x >= g.u]
    ends_b = [x for x in chain.cycles[-1] if x != chain.links[-1] and x >= g.u]
    results = {}
    for e1 in ends_a:
        for e2 in ends_b:
            anchors = [(e1, chain.links[0])]
            anchors += [
                (chain.links[i - 1], chain.links[i]) for i in range(1, s - 1)
            ]
            anchors.append((chain.links[-1], e2))
            per_cycle = []
            for cyc, (a, b) in zip(chain.cycles, anchors):
                arcs = _arcs(cyc, a, b)
                per_cycle.append(
                    [
                        (
                            arc,
                            len(arc) - 1,
                            sum(1 for x, y in path_edges(arc) if _pure(g, x, y)),
                        )
                        for arc in arcs
                    ]
                )
            # choose one arc per cycle; P needs odd length and one pure edge
            for choice in itertools.product(*[range(2) for _ in range(s)]):
                plen = sum(per_cycle[i][choice[i]][1] for i in range(s))
                ppure = sum(per_cycle[i][choice[i]][2] for i in range(s))
                if plen % 2 == 0 or ppure != 1 or plen < m1 or total - plen < 3:
                    continue
                path = [e1]
                for i in range(s):
                    arc = per_cycle[i][choice[i]][0]
                    path.extend(arc[1:])
                key = (plen, e1, e2, choice)
                results[key] = path
    for key in sorted(results, key=lambda k: k[0]):
        yield results[key], key[0]


def _pure_in_good_end(path: List[int], chain: ChainForm, g: HoledGraph) -> bool:
    pe = [e for e in path_edges(path) if _pure(g, *e)]
    if len(pe) != 1:
        return False
    (a, b) = pe[0]
    for end, link in ((0, chain.links[0]), (chain.s - 1, chain.links[-1])):
        if link >= g.u and {a, b} <= set(chain.cycles[end]):
            return True
    return False


def rebalance_paths(
    p: CyclePacking, chain: ChainForm, m1: int, m2: int
) -> Tuple[CyclePacking, List[int], List[int]]:
    """Repack until the leave splits into an m1-path and an m2-path, each
    with one pure edge and ends outside the hole."""
    g: HoledGraph = p.ambient
    if m1 % 2 == 0 or m2 % 2 == 0 or min(m1, m2) < chain.s or chain.s < 3:
        raise HypothesisViolation("need odd m1, m2 >= s >= 3")
    if sum(chain.lengths) != m1 + m2:
        raise HypothesisViolation("chain size must be m1 + m2")
    if not goodness(chain, g).is_good:
        raise HypothesisViolation("chain is not good")
    lo = min(m1, m2)
    path = None
    for cand, plen in _path_decompositions(chain, g, lo):
        if plen == lo:
            path = cand
            break
        if lo == chain.s and not _pure_in_good_end(cand, chain, g):
            continue
        path = cand
        break
    if path is None:
        raise InternalInvariantViolation("no initial two-path decomposition found")
    for _ in range(sum(chain.lengths)):
        if len(path) - 1 == lo:
            break
        p, path = _reduce_path_once(p, path)
    else:
        raise InternalInvariantViolation("path reduction did not terminate")
    other = _complement_path(p.reduced_leave(), path)
    if m1 != lo:
        path, other = other, path
    assert len(path) - 1 == m1 and len(other) - 1 == m2
    return p, path, other


def _complement_path(l: Leave, path: List[int]) -> List[int]:
    pe = set(path_edges(path))
    rest = [e for e in l.edge_set if e not in pe]
    adj = {}
    for x, y in rest:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    ends = [x for x, nb in adj.items() if len(nb) % 2 == 1]
    assert sorted(ends) == sorted((path[0], path[-1]))
    out = [path[0]]
    used = set()
    while True:
        nxt = [
            y
            for y in adj[out[-1]]
            if edge(out[-1], y) not in used
        ]
        if not nxt:
            break
        y = nxt[0]
        used.add(edge(out[-1], y))
        out.append(y)
    if len(used) != len(rest):
        raise InternalInvariantViolation("leave complement is not a path")
    return out


def _reduce_path_once(p: CyclePacking, path: List[int]):
    """One step of the path-length reduction; returns (packing, new path)."""
    g: HoledGraph = p.ambient
    for _ in range(4 * len(path)):
        l = p.reduced_leave()
        degs = l.degrees()
        best = None
        for seq in (path, list(reversed(path))):
            pure_seen = False
            for r in range(1, len(seq)):
                if _pure(g, seq[r - 1], seq[r]):
                    pure_seen = True
                if pure_seen:
                    break
                if r >= 2 and degs[seq[r - 1]] == 2 and degs[seq[r]] == 2:
                    if best is None or r < best[1]:
                        best = (seq, r)
                    break
        if best is None:
            # endgame: every cycle meets the path in at most two edges
            shape = classify_leave(l, g)
            assert isinstance(shape, ChainForm)
            assert len(path) - 1 == shape.s + 3
            return p, path[1:-1]
        seq, r = best
        if r == 2:
            return p, seq[2:]
        assert degs[seq[r - 2]] == 4
        out = perform_switch(p, seq[r], seq[r - 2], seq[r - 3])
        p = out.new_packing
        if out.terminus != seq[r + 1]:
            return p, seq[: r - 2] + seq[r:]
        path = seq[: r - 2] + [seq[r], seq[r - 1], seq[r - 2]] + seq[r + 1:]
    raise InternalInvariantViolation("path reduction step looped")


def split_chain_or_ring(p: CyclePacking, m1: int, m2: int) -> CyclePacking:
    """Leave a good s-chain or s-ring of size m1+m2 with two pure edges ->
    repacking whose leave is the union of an m1-cycle and an m2-cycle."""
    g: HoledGraph = p.ambient
    if m1 % 2 == 0 or m2 % 2 == 0 or min(m1, m2) < 3:
        raise HypothesisViolation("need odd cycle lengths")
    if m1 + m2 > 2 * min(g.u + 2, g.v - g.u):
        raise HypothesisViolation("host too small for the split")
    if 3 in (m1, m2) and m1 + m2 > 2 * (g.u + 1):
        raise HypothesisViolation("host hole too small for a triangle split")
    for _ in range(m1 + m2):
        l = p.reduced_leave()
        if as_two_cycles(l, g, m1, m2) is not None:
            return p
        shape = classify_leave(l, g)
        if isinstance(shape, ChainForm) and shape.s == 2:
            if 3 in (m1, m2) and shape.links[0] < g.u:
                raise HypothesisViolation("2-chain link inside hole blocks a triangle")
            return split_two_chain(p, m1)
        if isinstance(shape, RingForm) and shape.s == 2:
            p = _open_two_ring(p, shape, m1, m2)
            continue
        if isinstance(shape, ChainForm):
            if min(m1, m2) < shape.s:
                raise HypothesisViolation("target lengths below chain size")
            p = _chain_case(p, shape, m1, m2)
            continue
        if isinstance(shape, RingForm):
            if min(m1, m2) < shape.s:
                raise HypothesisViolation("target lengths below ring size")
            p = _ring_case(p, shape)
            continue
        raise HypothesisViolation(f"leave is not a chain or ring: {shape}")
    raise InternalInvariantViolation("chain/ring split did not terminate")


def _open_two_ring(p: CyclePacking, shape: RingForm, m1: int, m2: int) -> CyclePacking:
    g: HoledGraph = p.ambient
    l = p.reduced_leave()
    if 3 in (m1, m2):
        xs = [x for x in shape.shared if x < g.u]
        if not xs:
            raise HypothesisViolation("triangle split needs a shared vertex in the hole")
        x = xs[0]
        y = find_isolated_twin(l, g, "hole", part="i")
    else:
        x, y = deg4_with_isolated_twin(l, g)
        if x not in shape.shared:
            raise InternalInvariantViolation("degree-4 vertex not a shared vertex")
    origin = sorted(switch_candidates(p, x, y))[0]
    out = perform_switch(p, x, y, origin)
    res = classify_leave(out.new_packing.reduced_leave(), g)
    if not (isinstance(res, ChainForm) and res.s == 2):
        raise InternalInvariantViolation("2-ring did not open into a 2-chain")
    return out.new_packing


def _chain_case(p: CyclePacking, shape: ChainForm, m1: int, m2: int) -> CyclePacking:
    g: HoledGraph = p.ambient
    p, pa, _pb = rebalance_paths(p, shape, m1, m2)
    out = perform_switch(p, pa[0], pa[-1], pa[1])
    return out.new_packing


def _ring_case(p: CyclePacking, shape: RingForm) -> CyclePacking:
    g: HoledGraph = p.ambient
    l = p.reduced_leave()
    s = shape.s
    cand_idx = None
    for i in range(s):
        la, lb = shape.links[i - 1], shape.links[i]
        if not _cycle_has_pure(shape.cycles[i], g):
            continue
        if s % 2 == 1 and not (la >= g.u and lb >= g.u):
            continue
        cand_idx = i
        break
    if cand_idx is None:
        raise HypothesisViolation("no eligible ring cycle for opening")
    a_cycle = shape.cycles[cand_idx]
    links = (shape.links[cand_idx - 1], shape.links[cand_idx])
    if s % 2 == 0:
        xs = [x for x in links if x < g.u]
        side = "hole"
    else:
        xs = [x for x in links if x >= g.u]
        side = "outside"
    if not xs:
        raise InternalInvariantViolation("ring goodness violated at chosen cycle")
    x = xs[0]
    y = find_isolated_twin(l, g, side, part="ii")
    in_a = [z for z in switch_candidates(p, x, y) if z in set(a_cycle)]
    if not in_a:
        raise InternalInvariantViolation("no switch origin inside the ring cycle")
    out = perform_switch(p, x, y, in_a[0])
    return out.new_packing
