"""Surgery on packings whose reduced leave is a 2-chain with two pure edges.

The goal is a repacking whose reduced leave is the edge-disjoint union of an
m-cycle and a (p+q-m)-cycle.  The figure-of-eight steps trade leave shape
between (p,q)-chains along the sequence m, 4, m-2, 6, ...; the local
rearrangement step shifts a pure edge two positions along the larger cycle.
All moves are single switches, so every intermediate packing is a repacking
of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .errors import (
    HypothesisViolation,
    InternalInvariantViolation,
    MalformedLeave,
)
from .graphs import CyclePacking, HoledGraph, HostGraph, cycle_edges, edge
from .leaves import ChainForm, as_two_cycles, classify_leave
from .switching import perform_switch


@dataclass
class TwoChainLabel:
    """(x_1,...,x_{p-1},c).(c,y_1,...,y_{q-1}); x(0) and y(0) are c."""

    link: int
    xs: Tuple[int, ...]
    ys: Tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.xs) + 1

    @property
    def q(self) -> int:
        return len(self.ys) + 1

    def x(self, i: int) -> int:
        return self.link if i % self.p == 0 else self.xs[i % self.p - 1]

    def y(self, j: int) -> int:
        return self.link if j % self.q == 0 else self.ys[j % self.q - 1]

    def edges(self):
        return cycle_edges((self.link,) + self.xs) + cycle_edges((self.link,) + self.ys)


def _check_label(p: CyclePacking, lab: TwoChainLabel) -> None:
    if set(lab.edges()) != set(p.leave().edge_set):
        raise InternalInvariantViolation("chain label does not match leave")


def two_chain_labelings(shape: ChainForm) -> Iterator[TwoChainLabel]:
    """All eight labelings of a 2-chain (cycle choice and directions)."""
    assert shape.s == 2
    link = shape.links[0]
    rots = []
    for c in shape.cycles:
        i = c.index(link)
        rot = c[i:] + c[:i]
        rots.append(rot[1:])
    for xi, yi in ((0, 1), (1, 0)):
        for xs in (rots[xi], tuple(reversed(rots[xi]))):
            for ys in (rots[yi], tuple(reversed(rots[yi]))):
                yield TwoChainLabel(link, tuple(xs), tuple(ys))


def _pure(g: HoledGraph, a: int, b: int) -> bool:
    return a >= g.u and b >= g.u


def _y_pure_positions(lab: TwoChainLabel, g: HoledGraph) -> List[int]:
    return [r for r in range(lab.q) if _pure(g, lab.y(r), lab.y(r + 1))]


def _fo_step_odd(p: CyclePacking, lab: TwoChainLabel, m: int):
    """One figure-of-eight step for odd p: the (x_1, y_{m-p+1})-switch."""
    pp, q = lab.p, lab.q
    out = perform_switch(p, lab.x(1), lab.y(m - pp + 1), lab.x(2))
    if out.terminus == lab.y(m - pp):
        xs = (lab.x(1),) + tuple(lab.y(j) for j in range(m - pp, 0, -1))
        ys = tuple(lab.x(i) for i in range(pp - 1, 1, -1)) + tuple(
            lab.y(j) for j in range(m - pp + 1, q)
        )
        return out.new_packing, TwoChainLabel(lab.link, xs, ys)
    if out.terminus not in (lab.link, lab.y(m - pp + 2)):
        raise InternalInvariantViolation("unexpected switch terminus")
    return out.new_packing, None


def _fo_step_even(p: CyclePacking, lab: TwoChainLabel, m: int):
    """One figure-of-eight step for even p: the (x_2, y_{m-p+2})-switch."""
    pp, q = lab.p, lab.q
    out = perform_switch(p, lab.x(2), lab.y(m - pp + 2), lab.x(3))
    if out.terminus == lab.y(m - pp + 1):
        xs = (lab.x(1), lab.x(2)) + tuple(lab.y(j) for j in range(m - pp + 1, 0, -1))
        ys = tuple(lab.x(i) for i in range(pp - 1, 2, -1)) + tuple(
            lab.y(j) for j in range(m - pp + 2, q)
        )
        return out.new_packing, TwoChainLabel(lab.link, xs, ys)
    if out.terminus not in (lab.y(m - pp + 3), lab.x(1)):
        raise InternalInvariantViolation("unexpected switch terminus")
    return out.new_packing, None


def _check_fo_hypotheses(g: HostGraph, lab: TwoChainLabel, m: int) -> None:
    pp = lab.p
    if pp % 2:
        group1 = [lab.x(1)] + [lab.y(j) for j in range(3, m - pp + 2, 2)]
        group2 = [lab.y(j) for j in range(2, m - pp + 3, 2)]
    else:
        group1 = [lab.x(i) for i in range(1, pp - 2, 2)]
        group2 = [lab.y(m - pp + 2)] + [lab.x(i) for i in range(2, pp - 1, 2)]
    for grp in (group1, group2):
        for t in grp[1:]:
            if not g.are_twin(grp[0], t):
                raise HypothesisViolation("figure-of-eight twin hypothesis fails")


def figure_of_eight_reduce(p: CyclePacking, lab: TwoChainLabel, m: int) -> CyclePacking:
    """Iterate figure-of-eight steps until the leave holds an m-cycle."""
    g = p.ambient
    total = lab.p + lab.q
    if m < lab.p or total - m < 3 or m % 2 == 0:
        raise HypothesisViolation(f"need odd m >= p and p+q-m >= 3; m={m}")
    if lab.p != m:
        _check_fo_hypotheses(g, lab, m)
    for _ in range(m + 2):
        if lab.p == m:
            return p
        step = _fo_step_even if lab.p % 2 == 0 else _fo_step_odd
        p, lab = step(p, lab, m)
        if lab is None:
            return p
    raise InternalInvariantViolation("figure-of-eight did not terminate")


def rearrange_local(p: CyclePacking, lab: TwoChainLabel):
    """The (y_0, y_{q-2})-switch; returns (packing, label or None, grown)."""
    q = lab.q
    if q < 5:
        raise HypothesisViolation("rearrangement needs q >= 5")
    out = perform_switch(p, lab.link, lab.y(q - 2), lab.y(q - 3))
    if out.terminus == lab.y(1):
        ys = (lab.y(q - 1), lab.y(q - 2)) + tuple(lab.y(j) for j in range(1, q - 2))
        return out.new_packing, TwoChainLabel(lab.link, lab.xs, ys), False
    if out.terminus not in (lab.x(1), lab.x(lab.p - 1)):
        raise InternalInvariantViolation("unexpected rearrangement terminus")
    return out.new_packing, None, True


def _two_chain_shape(p: CyclePacking) -> ChainForm:
    shape = classify_leave(p.reduced_leave(), p.ambient)
    if not isinstance(shape, ChainForm) or shape.s != 2:
        raise InternalInvariantViolation(f"expected a 2-chain leave, got {shape}")
    return shape


def _split_odd(p: CyclePacking, m: int) -> CyclePacking:
    """Both chain cycles carry one pure edge; p, q odd."""
    g: HoledGraph = p.ambient
    total = len(p.leave())
    big = max(m, total - m)
    for _outer in range(total + 2):
        if as_two_cycles(p.reduced_leave(), g, m, total - m) is not None:
            return p
        shape = _two_chain_shape(p)
        # the x-cycle is the one grown toward length `big`; prefer labelings
        # that keep growing the same cycle, or a Case-1 labeling when one
        # exists (pure edge far enough along the y-cycle)
        case1 = None
        case2 = None
        for lab in two_chain_labelings(shape):
            if lab.p > big or _pure(g, lab.link, lab.x(1)):
                continue
            rs = _y_pure_positions(lab, g)
            if len(rs) != 1:
                raise MalformedLeave("expected exactly one pure edge per cycle")
            r = rs[0]
            if big - lab.p + 2 <= r <= lab.q - 1:
                if case1 is None or lab.p > case1.p:
                    case1 = lab
            elif (lab.q - 1) / 2 <= r <= lab.q - 1:
                if case2 is None or lab.p > case2[0].p:
                    case2 = (lab, r)
        if case1 is not None and (case2 is None or case1.p >= case2[0].p):
            return figure_of_eight_reduce(p, case1, big)
        if case2 is None:
            raise InternalInvariantViolation("no eligible 2-chain labeling")
        lab, r = case2
        assert r <= big - lab.p + 1
        for _inner in range(lab.q):
            p, lab2, grown = rearrange_local(p, lab)
            if grown:
                break
            lab = lab2
            r = _y_pure_positions(lab, g)[0]
            if r >= big - lab.p + 2:
                return figure_of_eight_reduce(p, lab, big)
    raise InternalInvariantViolation("odd-cycle split did not terminate")


def _split_even(p: CyclePacking, m: int) -> CyclePacking:
    """One chain cycle has no pure edge, the other two; p, q even."""
    g: HoledGraph = p.ambient
    total = len(p.leave())
    big = max(m, total - m)
    for _outer in range(total + 2):
        if as_two_cycles(p.reduced_leave(), g, m, total - m) is not None:
            return p
        shape = _two_chain_shape(p)

        def labelings():
            for lab in two_chain_labelings(shape):
                # the x-cycle must be the one without pure edges
                if any(
                    _pure(g, a, b) for a, b in cycle_edges((lab.link,) + lab.xs)
                ):
                    continue
                yield lab

        case1 = None
        case2 = None
        for lab in labelings():
            rs = _y_pure_positions(lab, g)
            if len(rs) != 2:
                raise MalformedLeave("expected two pure edges in one cycle")
            r, s = rs
            if r < s <= lab.q - 1 and r <= big - 2 and s >= big - lab.p + 1:
                case1 = (lab, r, s)
                break
            if case2 is None and r < s and r <= lab.q / 2:
                case2 = (lab, r, s)
        if case1 is not None:
            lab, r, s = case1
            return _even_case1_step(p, lab, r, s, m, big)
        if case2 is None:
            raise InternalInvariantViolation("no eligible even-branch labeling")
        lab, r, s = case2
        assert lab.q >= 6 and s < big - lab.p + 1
        for _inner in range(lab.q):
            p, lab2, grown = rearrange_local(p, lab)
            if grown:
                break
            lab = lab2
            r, s = _y_pure_positions(lab, g)
            if s in (big - lab.p + 1, big - lab.p + 2):
                assert r <= big - 2 and s >= big - lab.p + 1
                return _even_case1_step(p, lab, r, s, m, big)
    raise InternalInvariantViolation("even-cycle split did not terminate")


def _even_case1_step(
    p: CyclePacking, lab: TwoChainLabel, r: int, s: int, m: int, big: int
) -> CyclePacking:
    t = max(r + 1, big - lab.p + 1)
    a = lab.x(big - t)
    b = lab.y(t)
    out = perform_switch(p, a, b, lab.x(big - t - 1))
    if out.terminus != lab.y(t - 1):
        return out.new_packing
    return _split_odd(out.new_packing, m)


def split_two_chain(p: CyclePacking, m: int) -> CyclePacking:
    """Reduced leave a 2-chain with two pure edges -> union of an m-cycle
    and a cycle on the remaining edges."""
    g = p.ambient
    if not isinstance(g, HoledGraph):
        raise HypothesisViolation("pure-edge surgery needs a holed ambient graph")
    shape = _two_chain_shape(p)
    total = sum(shape.lengths)
    rest = total - m
    if m % 2 == 0 or m < 3 or rest < 3:
        raise HypothesisViolation(f"need odd m with m, p+q-m >= 3; m={m}, rest={rest}")
    pures = shape.pure_counts(g)
    if sum(pures) != 2:
        raise HypothesisViolation("leave must contain exactly two pure edges")
    if 3 in (m, rest) and shape.links[0] < g.u:
        raise HypothesisViolation("link vertex must lie outside the hole here")
    if sorted(pures) == [1, 1]:
        result = _split_odd(p, m)
    elif sorted(pures) == [0, 2]:
        result = _split_even(p, m)
    else:
        raise MalformedLeave(f"unexpected pure edge spread {pures}")
    if as_two_cycles(result.reduced_leave(), g, m, rest) is None:
        raise InternalInvariantViolation("split did not reach the target shape")
    return result
