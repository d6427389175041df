"""Recognizers for the leave shapes the surgery and merge steps operate on.

A chain is an edge-disjoint union of cycles A_1..A_s where consecutive
cycles share exactly one vertex (the link) and non-consecutive ones are
disjoint.  A ring is the cyclic analogue; a 2-ring is two cycles sharing
exactly two vertices.  In the leave graph the links are the degree-4
vertices, so classification reduces to analysing the multigraph of
segments between degree-4 vertices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import InternalInvariantViolation, MalformedLeave
from .graphs import CycleT, HoledGraph, Leave, ReducedLeave, cycle_edges, leave_cycle_split


def _cycle_pure_count(c: Sequence[int], g: HoledGraph) -> int:
    return sum(1 for x, y in cycle_edges(c) if x >= g.u and y >= g.u)


@dataclass
class ChainForm:
    """An (a_1,...,a_s)-chain; cycles[i] and cycles[i+1] share links[i]."""

    cycles: List[CycleT]
    links: List[int]

    @property
    def s(self) -> int:
        return len(self.cycles)

    @property
    def lengths(self) -> List[int]:
        return [len(c) for c in self.cycles]

    def pure_counts(self, g: HoledGraph) -> List[int]:
        return [_cycle_pure_count(c, g) for c in self.cycles]

    def reversed(self) -> "ChainForm":
        return ChainForm(list(reversed(self.cycles)), list(reversed(self.links)))


@dataclass
class RingForm:
    """Ring cycles in cyclic order; for s >= 3, cycles[i] and cycles[i+1]
    share links[i] (indices mod s).  For s = 2 the two cycles share the two
    vertices in `shared` and the pairing of the four connecting segments
    into two cycles is one of several equivalent choices."""

    cycles: List[CycleT]
    links: List[int] = field(default_factory=list)
    shared: Tuple[int, int] | None = None
    segments: List[Tuple[int, ...]] | None = None  # only for s = 2

    @property
    def s(self) -> int:
        return len(self.cycles)

    @property
    def lengths(self) -> List[int]:
        return [len(c) for c in self.cycles]

    def pure_counts(self, g: HoledGraph) -> List[int]:
        return [_cycle_pure_count(c, g) for c in self.cycles]


@dataclass
class CycleUnion:
    cycles: List[CycleT]


@dataclass
class OtherShape:
    degree_profile: Counter
    reason: str = ""


LeaveShape = ChainForm | RingForm | CycleUnion | OtherShape


def _segments_from_joints(l: Leave, joints: Set[int]) -> List[Tuple[int, ...]]:
    """Maximal paths between degree-4 vertices through degree-2 interiors."""
    used: Set[Tuple[int, int]] = set()
    segs: List[Tuple[int, ...]] = []

    def edge_key(x, y):
        return (x, y) if x < y else (y, x)

    for j in sorted(joints):
        for nb in sorted(l.neighbors(j)):
            if edge_key(j, nb) in used:
                continue
            path = [j, nb]
            used.add(edge_key(j, nb))
            while path[-1] not in joints:
                x = path[-1]
                nxt = [y for y in l.neighbors(x) if edge_key(x, y) not in used]
                if len(nxt) != 1:
                    raise InternalInvariantViolation("segment walk stuck")
                path.append(nxt[0])
                used.add(edge_key(x, nxt[0]))
            segs.append(tuple(path))
    if len(used) != len(l.edge_set):
        raise InternalInvariantViolation("segments missed edges")
    return segs


def _join_segments(sa: Tuple[int, ...], sb: Tuple[int, ...]) -> CycleT:
    """Two x..y segments into one cycle."""
    if sa[0] != sb[0]:
        sb = tuple(reversed(sb))
    assert sa[0] == sb[0] and sa[-1] == sb[-1]
    return sa + tuple(reversed(sb[1:-1]))


def classify_leave(l: ReducedLeave, g: HoledGraph) -> LeaveShape:
    if len(l) == 0:
        raise MalformedLeave("empty leave")
    degs = l.degrees()
    profile = Counter(degs.values())
    if any(d % 2 for d in degs.values()):
        raise MalformedLeave(f"odd degree in leave: {profile}")
    if any(d >= 6 for d in degs.values()):
        return OtherShape(profile, "degree >= 6")

    joints = {x for x, d in degs.items() if d == 4}
    if not joints:
        return CycleUnion(leave_cycle_split(l))

    comps = l.components()
    if len(comps) > 1:
        return OtherShape(profile, "disconnected with degree-4 vertex")

    segs = _segments_from_joints(l, joints)
    # multigraph on joints
    loops: Dict[int, List[Tuple[int, ...]]] = {j: [] for j in joints}
    between: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}
    for s in segs:
        a, b = s[0], s[-1]
        if a == b:
            loops[a].append(s)
        else:
            between.setdefault((min(a, b), max(a, b)), []).append(s)

    if len(joints) == 1:
        (j,) = joints
        if len(loops[j]) != 2:
            return OtherShape(profile, "loop count mismatch")
        c1, c2 = (s[:-1] for s in loops[j])
        return ChainForm([c1, c2], [j])

    if len(joints) == 2 and not any(loops.values()):
        key = next(iter(between))
        ss = between[key]
        if len(ss) == 4:
            ss = sorted(ss, key=len)
            a = _join_segments(ss[0], ss[1])
            b = _join_segments(ss[2], ss[3])
            return RingForm([a, b], shared=key, segments=ss)
        # falls through to the general ring case when len(ss) == 2 is impossible
        # (two joints, no loops, degree 4 each needs 4 segment ends per joint)
        return OtherShape(profile, "two joints, unexpected segments")

    # general chain or ring: every consecutive joint pair doubly connected
    if any(len(ss) != 2 for ss in between.values()):
        return OtherShape(profile, "non-double segment bundle")
    nbrs: Dict[int, List[int]] = {j: [] for j in joints}
    for (a, b) in between:
        nbrs[a].append(b)
        nbrs[b].append(a)
    loop_joints = [j for j in joints if loops[j]]
    if any(len(loops[j]) > 1 for j in joints) or len(loop_joints) not in (0, 2):
        return OtherShape(profile, "loop placement mismatch")

    if len(loop_joints) == 2:
        # chain: loop joints are the ends of a joint path
        order = [loop_joints[0]]
        while True:
            ext = [x for x in nbrs[order[-1]] if x not in order]
            if not ext:
                break
            if len(ext) > 1:
                return OtherShape(profile, "branching joint path")
            order.append(ext[0])
        if set(order) != joints or order[-1] != loop_joints[1]:
            return OtherShape(profile, "joint path mismatch")
        cycles: List[CycleT] = [loops[order[0]][0][:-1]]
        for a, b in zip(order, order[1:]):
            sa, sb = between[(min(a, b), max(a, b))]
            if sa[0] != a:
                sa = tuple(reversed(sa))
            cyc = _join_segments(sa, sb if sb[0] == a else tuple(reversed(sb)))
            cycles.append(cyc)
        cycles.append(loops[order[-1]][0][:-1])
        return ChainForm(cycles, order)

    # ring with s >= 3 joints: nbrs forms a single cycle
    if any(len(v) != 2 for v in nbrs.values()):
        return OtherShape(profile, "joint degrees not ring-like")
    start = min(joints)
    order = [start]
    prev = None
    while True:
        nxt = [x for x in nbrs[order[-1]] if x != prev]
        prev = order[-1]
        if nxt[0] == start:
            break
        order.append(nxt[0])
        if len(order) > len(joints):
            return OtherShape(profile, "joint cycle walk failed")
    if set(order) != joints:
        return OtherShape(profile, "joints not on one cycle")
    cycles = []
    links = []
    s = len(order)
    for i in range(s):
        a, b = order[i], order[(i + 1) % s]
        sa, sb = between[(min(a, b), max(a, b))]
        if sa[0] != a:
            sa = tuple(reversed(sa))
        cyc = _join_segments(sa, sb if sb[0] == a else tuple(reversed(sb)))
        cycles.append(cyc)
        links.append(b)
    # cycles[i] runs from order[i] to order[i+1]; cycles[i], cycles[i+1] share links[i]
    return RingForm(cycles, links=links)


def _single_cycle(edges) -> Optional[CycleT]:
    """The vertex sequence of a simple cycle tiling the given edges, or None."""
    adj: Dict[int, List[int]] = {}
    for x, y in edges:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    if not adj or any(len(nb) != 2 for nb in adj.values()):
        return None
    start = min(adj)
    walk = [start]
    prev: Optional[int] = None
    cur = start
    while True:
        a, b = adj[cur]
        nxt = a if a != prev else b
        if nxt == start:
            break
        walk.append(nxt)
        prev, cur = cur, nxt
    if len(walk) != len(list(edges)):
        return None
    return tuple(walk)


def as_two_cycles(
    l: ReducedLeave, g: HoledGraph, m1: int, m2: int
) -> Optional[Tuple[CycleT, CycleT]]:
    """Decompose the leave into an m1-cycle and an m2-cycle if possible.

    Only edge-disjointness is required; the two cycles may share any number
    of vertices.  The search walks simple cycles of the first length through
    the minimum leave vertex (branching only at degree-4 vertices) and
    checks that the remaining edges form one cycle of the other length.
    """
    if len(l) != m1 + m2:
        return None
    verts = sorted(l.vertex_set)
    if not verts:
        return None
    adj = {x: sorted(l.neighbors(x)) for x in verts}
    v0 = verts[0]
    all_edges = l.edge_set

    def search(target: int, other: int) -> Optional[Tuple[CycleT, CycleT]]:
        stack: List[Tuple[List[int], Set[int]]] = [([v0], {v0})]
        while stack:
            path, seen = stack.pop()
            cur = path[-1]
            if len(path) == target:
                if v0 not in adj[cur]:
                    continue
                cyc = tuple(path)
                rest = all_edges - set(cycle_edges(cyc))
                comp = _single_cycle(rest)
                if comp is not None and len(comp) == other:
                    return cyc, comp
                continue
            for y in adj[cur]:
                if y not in seen:
                    stack.append((path + [y], seen | {y}))
        return None

    res = search(m1, m2)
    if res is not None:
        return res
    if m1 != m2:
        res = search(m2, m1)
        if res is not None:
            return res[1], res[0]
    return None


def verify_shape(shape: LeaveShape, l: Leave) -> bool:
    """Independent recheck: tagged cycles tile the leave with the claimed
    intersection pattern.  Used by tests and as a cheap internal guard."""
    if isinstance(shape, OtherShape):
        return True
    if isinstance(shape, CycleUnion):
        cycles = shape.cycles
        seen_v: Set[int] = set()
        for c in cycles:
            if seen_v & set(c):
                return False
            seen_v |= set(c)
    elif isinstance(shape, ChainForm):
        cycles = shape.cycles
        for i, a in enumerate(cycles):
            for j in range(i + 1, len(cycles)):
                inter = set(a) & set(cycles[j])
                want = {shape.links[i]} if j == i + 1 else set()
                if inter != want:
                    return False
    elif isinstance(shape, RingForm):
        cycles = shape.cycles
        if shape.s == 2:
            if set(cycles[0]) & set(cycles[1]) != set(shape.shared):
                return False
        else:
            n = shape.s
            for i in range(n):
                for j in range(i + 1, n):
                    inter = set(cycles[i]) & set(cycles[j])
                    if j == i + 1:
                        want = {shape.links[i]}
                    elif i == 0 and j == n - 1:
                        want = {shape.links[n - 1]}
                    else:
                        want = set()
                    if inter != want:
                        return False
    else:
        return False
    es: Set[Tuple[int, int]] = set()
    for c in cycles:
        for e in cycle_edges(c):
            if e in es:
                return False
            es.add(e)
    return es == set(l.edge_set)
