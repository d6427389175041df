"""Merging short cycles of a leave into two long cycles.

The driver works on packings whose leave has exactly two pure edges and
splits into cycle components plus at most one chain.  Leaves with high
degree vertices are first picked apart into a single 2-chain plus cycles,
the cycle components are then absorbed into the chain one switch at a
time, and the resulting good chain is split into the two target cycles.
"""

from __future__ import annotations

from typing import List, Optional, Set, Tuple

from .errors import (
    HypothesisViolation,
    InternalInvariantViolation,
)
from .graphs import CyclePacking, CycleT, HoledGraph, Leave, edge
from .leaves import ChainForm, as_two_cycles, classify_leave
from .chains import find_isolated_twin, goodness, split_chain_or_ring
from .switching import perform_switch, switch_candidates


def component_bound(l: Leave) -> int:
    """Largest possible number of components of a leave with one degree-4
    vertex and all other degrees 2."""
    degs = sorted(l.degrees().values(), reverse=True)
    if not degs or degs[0] != 4 or any(d != 2 for d in degs[1:]):
        raise HypothesisViolation("leave must have one degree-4 vertex")
    return (len(l) - 6) // 4 + 1


def _excess(l: Leave) -> int:
    return sum(d - 2 for d in l.degrees().values()) // 2


def _deg4_with_isolated_twin(l: Leave, g: HoledGraph) -> Tuple[int, int]:
    degs = l.degrees()
    for x in sorted(x for x, d in degs.items() if d >= 4):
        pool = range(g.u) if x < g.u else range(g.u, g.v)
        for y in pool:
            if y != x and y not in l:
                return x, y
    raise InternalInvariantViolation("no high-degree vertex has a free twin")


def pick_apart(p: CyclePacking) -> CyclePacking:
    """Repack until the leave has exactly one degree-4 vertex.

    Each switch pairs a high-degree vertex with a twin outside the leave,
    moving two of its edges onto the twin; the total degree excess drops by
    one per switch.
    """
    g: HoledGraph = p.ambient
    l = p.reduced_leave()
    if len(l) > 2 * min(g.u + 2, g.v - g.u):
        raise HypothesisViolation("leave too large to pick apart")
    if l.pure_edge_count(g) != 2:
        raise HypothesisViolation("leave must have exactly two pure edges")
    d = _excess(l)
    if d < 1:
        raise HypothesisViolation("leave has no degree-4 vertex")
    for _ in range(d - 1):
        l = p.reduced_leave()
        x, y = _deg4_with_isolated_twin(l, g)
        origin = sorted(switch_candidates(p, x, y))[0]
        p = perform_switch(p, x, y, origin).new_packing
    l = p.reduced_leave()
    if _excess(l) != 1 or max(l.degrees().values()) != 4:
        raise InternalInvariantViolation("pick apart missed the target profile")
    return p


def _split_components(l: Leave, g: HoledGraph):
    """The leave's components as (chain shape or None, list of cycles)."""
    chain: Optional[ChainForm] = None
    cycles: List[CycleT] = []
    for comp in l.components():
        sub = Leave(l.edges_within(comp))
        shape = classify_leave(sub, g)
        if isinstance(shape, ChainForm) and shape.s == 1:
            cycles.append(shape.cycles[0])
            continue
        from .leaves import CycleUnion

        if isinstance(shape, CycleUnion) and len(shape.cycles) == 1:
            cycles.append(shape.cycles[0])
        elif isinstance(shape, ChainForm):
            if chain is not None:
                raise HypothesisViolation("leave has two chain components")
            chain = shape
        else:
            raise HypothesisViolation(
                f"component is neither a cycle nor a chain: {shape}"
            )
    return chain, cycles


def _pure_count(c: CycleT, g: HoledGraph) -> int:
    from .graphs import cycle_edges

    return sum(1 for x, y in cycle_edges(c) if x >= g.u and y >= g.u)


def _orient_chain(chain: ChainForm, g: HoledGraph) -> ChainForm:
    """Put a pure-edge end cycle first (the good end when there is one)."""
    rep = goodness(chain, g)
    first = rep.good_end
    if first is None:
        ends = [0, chain.s - 1]
        with_pure = [i for i in ends if _pure_count(chain.cycles[i], g) > 0]
        first = with_pure[0] if with_pure else 0
    if first == 0:
        return chain
    return ChainForm(
        cycles=list(reversed(chain.cycles)),
        links=list(reversed(chain.links)),
    )


def _switch_from(
    p: CyclePacking, a: int, b: int, origin_pool: Set[int]
):
    cands = switch_candidates(p, a, b)
    origins = sorted(cands & origin_pool)
    if not origins:
        raise InternalInvariantViolation("no switch origin in the required cycle")
    return perform_switch(p, a, b, origins[0])


def resolve_to_good_chain(
    p: CyclePacking, m1: int, m2: int
) -> CyclePacking:
    """Leave = cycle components plus one good chain, two pure edges total ->
    repacking whose leave is an m1-cycle and an m2-cycle, edge-disjoint.

    Cycle components are absorbed into the chain one at a time: a switch
    between a chain end vertex and a cycle vertex either splices the cycle
    onto the chain or lengthens the chain by one; degenerate 2-chains are
    first repaired so their pure edge and link vertex sit correctly.
    """
    g: HoledGraph = p.ambient
    l = p.reduced_leave()
    if l.pure_edge_count(g) != 2:
        raise HypothesisViolation("leave must have exactly two pure edges")
    if len(l) != m1 + m2:
        raise HypothesisViolation("leave size must be m1 + m2")
    chain, cycles = _split_components(l, g)
    if chain is None:
        raise HypothesisViolation("leave has no chain component")
    k = len(cycles) + 1
    if min(m1, m2) < k + chain.s - 1:
        raise HypothesisViolation("target lengths below component budget")
    for _ in range(4 * (m1 + m2)):
        l = p.reduced_leave()
        chain, cycles = _split_components(l, g)
        if chain is None:
            raise InternalInvariantViolation("chain component vanished")
        if not cycles:
            return split_chain_or_ring(p, m1, m2)
        chain = _orient_chain(chain, g)
        t = chain.s
        chain_pure = sum(_pure_count(c, g) for c in chain.cycles)
        link_in_hole = t == 2 and chain.links[0] < g.u
        end_pure = _pure_count(chain.cycles[0], g) > 0
        if t >= 3 or (t == 2 and end_pure and not link_in_hole):
            p = _absorb_case1(p, chain, cycles, g)
        elif t == 2 and chain_pure == 2 and link_in_hole:
            p = _absorb_case3(p, chain, cycles, g)
        else:
            p = _absorb_case2(p, chain, cycles, g)
    raise InternalInvariantViolation("component absorption did not terminate")


def _pick_cycle(cycles: List[CycleT], g: HoledGraph, need_pure: bool) -> CycleT:
    for c in cycles:
        if not need_pure or _pure_count(c, g) > 0:
            return c
    raise InternalInvariantViolation("no cycle component with a pure edge")


def _absorb_case1(
    p: CyclePacking, chain: ChainForm, cycles: List[CycleT], g: HoledGraph
) -> CyclePacking:
    t = chain.s
    chain_pure = sum(_pure_count(c, g) for c in chain.cycles)
    c = _pick_cycle(cycles, g, need_pure=chain_pure <= 1)
    far = chain.cycles[-1]
    links = set(chain.links)
    if t % 2 == 1:
        xs = [x for x in far if x >= g.u and x not in links]
        ys = [y for y in c if y >= g.u]
    else:
        xs = [x for x in far if x < g.u and x not in links]
        ys = [y for y in c if y < g.u]
    if not xs or not ys:
        raise InternalInvariantViolation("no same-side pair for the splice")
    out = _switch_from(p, xs[0], ys[0], set(far))
    return out.new_packing


def _absorb_case2(
    p: CyclePacking, chain: ChainForm, cycles: List[CycleT], g: HoledGraph
) -> CyclePacking:
    c = _pick_cycle(cycles, g, need_pure=True)
    link = chain.links[0]
    ws = [w for w in c if w >= g.u]
    xs = [x for x in chain.cycles[0] if x >= g.u and x != link]
    if not ws or not xs:
        raise InternalInvariantViolation("no outside pair for the splice")
    out = _switch_from(p, ws[0], xs[0], set(chain.cycles[0]))
    p = out.new_packing
    if out.terminus in set(c):
        return p
    # the chain grew to three cycles; repair it when both links landed
    # outside the hole
    l = p.reduced_leave()
    grown, _rest = _split_components(l, g)
    if grown is None or grown.s != 3:
        raise InternalInvariantViolation("splice did not grow the chain")
    if goodness(grown, g).is_good:
        return p
    if any(x < g.u for x in grown.links):
        raise InternalInvariantViolation("ungood 3-chain with a hole link")
    grown = _orient_chain(grown, g)
    y = grown.links[1]
    z = find_isolated_twin(l, g, "outside", part="ii")
    out = _switch_from(p, y, z, set(grown.cycles[2]))
    return out.new_packing


def _absorb_case3(
    p: CyclePacking, chain: ChainForm, cycles: List[CycleT], g: HoledGraph
) -> CyclePacking:
    x = chain.links[0]
    c = None
    for cand in cycles:
        if any(y < g.u for y in cand):
            c = cand
            break
    if c is None:
        raise InternalInvariantViolation("no cycle component meets the hole")
    y = sorted(z for z in c if z < g.u)[0]
    out = _switch_from(p, x, y, set(chain.cycles[1]))
    return out.new_packing


def _merge_partition(lengths: List[int], m: int) -> Optional[List[int]]:
    """Indices of a sub-multiset of lengths summing to m, or None."""
    reach = {0: []}
    for i, a in enumerate(lengths):
        new = {}
        for tot, idxs in reach.items():
            if tot + a <= m and tot + a not in reach:
                new[tot + a] = idxs + [i]
        reach.update(new)
        if m in reach:
            break
    return reach.get(m)


def join_to_two_m_cycles(
    p: CyclePacking, m: int
) -> Tuple[CyclePacking, CycleT, CycleT]:
    """Leave = union of cycles splittable into two groups of total length m
    -> (packing, C', C'') where the packing extends a repacking of p by the
    two m-cycles C', C''."""
    g: HoledGraph = p.ambient
    if m % 2 == 0 or not 7 <= m <= min(g.u + 2, g.v - g.u - 1):
        raise HypothesisViolation("m out of range for merging")
    l = p.reduced_leave()
    if len(l) != 2 * m:
        raise HypothesisViolation("leave size must be 2m")
    if l.pure_edge_count(g) != 2:
        raise HypothesisViolation("leave must have exactly two pure edges")
    for _ in range(4 * m):
        l = p.reduced_leave()
        two = as_two_cycles(l, g, m, m)
        if two is not None:
            c1, c2 = two
            q = p.with_cycles([c1, c2])
            return q, c1, c2
        degs = l.degrees()
        if max(degs.values()) >= 4:
            p = pick_apart(p)
            bound = component_bound(p.reduced_leave())
            comps = p.reduced_leave().components()
            if len(comps) > bound:
                raise InternalInvariantViolation("component bound violated")
            p = resolve_to_good_chain(p, m, m)
            continue
        chain, cycles = _split_components(l, g)
        if chain is not None:
            p = resolve_to_good_chain(p, m, m)
            continue
        lengths = [len(c) for c in cycles]
        group = _merge_partition(lengths, m)
        if group is None:
            raise HypothesisViolation("cycle lengths do not split into m + m")
        if len(group) == 1:
            group = [i for i in range(len(cycles)) if i not in group]
        # merge the two longest cycles of the chosen group
        i, j = sorted(group, key=lambda i: -lengths[i])[:2]
        xs = [x for x in cycles[i] if x >= g.u]
        ys = [y for y in cycles[j] if y >= g.u]
        if not xs or not ys:
            raise InternalInvariantViolation("cycle with no outside vertex")
        origin = sorted(switch_candidates(p, xs[0], ys[0]))[0]
        p = perform_switch(p, xs[0], ys[0], origin).new_packing
    raise InternalInvariantViolation("merging did not terminate")
