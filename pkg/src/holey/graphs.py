"""Core value types: complete graphs with holes, cycles, packings, leaves.

Vertices are integers.  In a `HoledGraph` of order v with hole size u the
hole is always {0, ..., u-1}; an edge exists between two distinct vertices
unless both lie in the hole.  A *pure* edge has both endpoints outside the
hole, a *cross* edge has at least one endpoint inside it.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Set, Tuple

from .errors import InvalidParameters, MalformedLeave, NoSuchEdge

Edge = Tuple[int, int]
CycleT = Tuple[int, ...]


def edge(x: int, y: int) -> Edge:
    """Normalized undirected edge."""
    return (x, y) if x < y else (y, x)


def canonical_cycle(seq: Sequence[int]) -> CycleT:
    """Rotation/reflection-invariant form: least vertex first, smaller direction."""
    seq = tuple(seq)
    if len(seq) < 3 or len(set(seq)) != len(seq):
        raise InvalidParameters(f"not a valid cycle: {seq}")
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    rev = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, rev)


def cycle_edges(seq: Sequence[int]) -> List[Edge]:
    return [edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))]


def path_edges(seq: Sequence[int]) -> List[Edge]:
    return [edge(seq[i], seq[i + 1]) for i in range(len(seq) - 1)]


class HostGraph:
    """A graph together with its twin structure.

    Subclasses define vertex set, edge membership and the partition of the
    vertices into twin classes (vertices interchangeable by symmetry).
    """

    vertex_count: int

    def vertices(self) -> range:
        return range(self.vertex_count)

    def has_edge(self, x: int, y: int) -> bool:
        raise NotImplementedError

    def twin_class(self, x: int) -> int:
        raise NotImplementedError

    def are_twin(self, a: int, b: int) -> bool:
        if a == b:
            raise InvalidParameters("twin test requires distinct vertices")
        if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
            raise InvalidParameters("vertex out of range")
        return self.twin_class(a) == self.twin_class(b)

    def edges(self) -> Iterator[Edge]:
        n = self.vertex_count
        for x in range(n):
            for y in range(x + 1, n):
                if self.has_edge(x, y):
                    yield (x, y)

    @property
    def edge_count(self) -> int:
        raise NotImplementedError


class HoledGraph(HostGraph):
    """K_v - K_u with hole {0, ..., u-1}."""

    def __init__(self, u: int, v: int):
        if v < 1 or u < 0 or u > v:
            raise InvalidParameters(f"need 0 <= u <= v, v >= 1; got u={u}, v={v}")
        self.u = u
        self.v = v
        self.vertex_count = v

    def has_edge(self, x: int, y: int) -> bool:
        if x == y:
            return False
        if not (0 <= x < self.v and 0 <= y < self.v):
            return False
        return not (x < self.u and y < self.u)

    def twin_class(self, x: int) -> int:
        return 0 if x < self.u else 1

    def in_hole(self, x: int) -> bool:
        return x < self.u

    def is_pure(self, x: int, y: int) -> bool:
        """True for edges with both endpoints outside the hole."""
        if not self.has_edge(x, y):
            raise NoSuchEdge(f"no edge {{{x},{y}}}")
        return x >= self.u and y >= self.u

    def classify_edge(self, x: int, y: int) -> str:
        return "pure" if self.is_pure(x, y) else "cross"

    @property
    def edge_count(self) -> int:
        return self.v * (self.v - 1) // 2 - self.u * (self.u - 1) // 2

    @property
    def pure_edge_count(self) -> int:
        w = self.v - self.u
        return w * (w - 1) // 2

    def __repr__(self):
        return f"HoledGraph(u={self.u}, v={self.v})"

    def __eq__(self, other):
        return isinstance(other, HoledGraph) and (self.u, self.v) == (other.u, other.v)

    def __hash__(self):
        return hash(("HoledGraph", self.u, self.v))


class BipartiteHost(HostGraph):
    """K_{a,b} with parts {0..a-1} and {a..a+b-1}; twin classes are the parts."""

    def __init__(self, a: int, b: int):
        if a < 1 or b < 1:
            raise InvalidParameters("parts must be nonempty")
        self.a = a
        self.b = b
        self.vertex_count = a + b

    def has_edge(self, x: int, y: int) -> bool:
        if x == y or not (0 <= x < self.vertex_count and 0 <= y < self.vertex_count):
            return False
        return (x < self.a) != (y < self.a)

    def twin_class(self, x: int) -> int:
        return 0 if x < self.a else 1

    @property
    def edge_count(self) -> int:
        return self.a * self.b

    def __repr__(self):
        return f"BipartiteHost(a={self.a}, b={self.b})"


def build_holed_graph(u: int, v: int) -> HoledGraph:
    return HoledGraph(u, v)


class Leave:
    """An explicit vertex/edge set; the uncovered part of a packing."""

    def __init__(self, edges: Iterable[Edge]):
        self.edge_set: FrozenSet[Edge] = frozenset(edge(x, y) for x, y in edges)
        adj: Dict[int, Set[int]] = {}
        for x, y in self.edge_set:
            adj.setdefault(x, set()).add(y)
            adj.setdefault(y, set()).add(x)
        self.adj = adj

    @property
    def vertex_set(self) -> Set[int]:
        return set(self.adj)

    def degree(self, x: int) -> int:
        return len(self.adj.get(x, ()))

    def degrees(self) -> Dict[int, int]:
        return {x: len(nb) for x, nb in self.adj.items()}

    def neighbors(self, x: int) -> Set[int]:
        return set(self.adj.get(x, ()))

    def has_edge(self, x: int, y: int) -> bool:
        return edge(x, y) in self.edge_set

    def __len__(self):
        return len(self.edge_set)

    def __contains__(self, x: int) -> bool:
        return x in self.adj

    def pure_edge_count(self, g: HoledGraph) -> int:
        return sum(1 for x, y in self.edge_set if x >= g.u and y >= g.u)

    def components(self) -> List[Set[int]]:
        seen: Set[int] = set()
        comps = []
        for start in sorted(self.adj):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def edges_within(self, vs: Set[int]) -> List[Edge]:
        return [e for e in self.edge_set if e[0] in vs and e[1] in vs]


ReducedLeave = Leave  # a Leave never stores isolated vertices


class CyclePacking:
    """An ordered collection of pairwise edge-disjoint cycles in a host graph."""

    def __init__(self, ambient: HostGraph, cycles: Iterable[Sequence[int]], check: bool = True):
        self.ambient = ambient
        self.cycles: Tuple[CycleT, ...] = tuple(tuple(c) for c in cycles)
        self._leave: Leave | None = None
        if check:
            self._validate()

    def _validate(self):
        seen: Set[Edge] = set()
        for c in self.cycles:
            if len(c) < 3 or len(set(c)) != len(c):
                raise InvalidParameters(f"not a cycle: {c}")
            for e in cycle_edges(c):
                if not self.ambient.has_edge(*e):
                    raise InvalidParameters(f"cycle edge {e} not in ambient graph")
                if e in seen:
                    raise InvalidParameters(f"edge {e} used twice")
                seen.add(e)

    def leave(self) -> Leave:
        if self._leave is None:
            used: Set[Edge] = set()
            for c in self.cycles:
                used.update(cycle_edges(c))
            self._leave = Leave(e for e in self.ambient.edges() if e not in used)
        return self._leave

    def reduced_leave(self) -> ReducedLeave:
        return self.leave()

    def replace_cycles(self, new_cycles: Sequence[Sequence[int]]) -> "CyclePacking":
        return CyclePacking(self.ambient, new_cycles, check=False)

    def without(self, indices: Iterable[int]) -> "CyclePacking":
        drop = set(indices)
        return CyclePacking(
            self.ambient,
            [c for i, c in enumerate(self.cycles) if i not in drop],
            check=False,
        )

    def with_cycles(self, extra: Iterable[Sequence[int]]) -> "CyclePacking":
        return CyclePacking(self.ambient, list(self.cycles) + [tuple(c) for c in extra], check=False)

    def canonical_cycle_set(self) -> FrozenSet[CycleT]:
        return frozenset(canonical_cycle(c) for c in self.cycles)

    def cycle_signature(self, i: int) -> Tuple[int, int]:
        """(length, pure edge count) of cycle i; only meaningful on HoledGraph."""
        g = self.ambient
        assert isinstance(g, HoledGraph)
        c = self.cycles[i]
        pure = sum(1 for x, y in cycle_edges(c) if x >= g.u and y >= g.u)
        return (len(c), pure)

    def __len__(self):
        return len(self.cycles)


def reduced_leave(p: CyclePacking) -> ReducedLeave:
    """Leave of the packing with isolated vertices dropped."""
    return p.reduced_leave()


def leave_cycle_split(leave: Leave) -> List[CycleT]:
    """Greedy decomposition of an even graph into cycles (Veblen walk).

    Raises MalformedLeave on odd degrees.
    """
    adj = {x: set(nb) for x, nb in leave.adj.items()}
    for x, nb in adj.items():
        if len(nb) % 2:
            raise MalformedLeave(f"vertex {x} has odd degree {len(nb)}")
    cycles: List[CycleT] = []
    while any(adj.values()):
        start = min(x for x, nb in adj.items() if nb)
        walk = [start]
        pos = {start: 0}
        x = start
        while True:
            y = min(adj[x])
            adj[x].discard(y)
            adj[y].discard(x)
            if y in pos:
                cycles.append(tuple(walk[pos[y]:]))
                for z in walk[pos[y] + 1:]:
                    del pos[z]
                del walk[pos[y] + 1:]
                x = y
                if x == start and not adj[start]:
                    break
            else:
                pos[y] = len(walk)
                walk.append(y)
                x = y
        # remaining open walk should be empty
        if len(walk) > 1:
            raise MalformedLeave("graph did not close into cycles")
    return cycles


class LengthList:
    """Multiset of cycle lengths; zeros are dropped on construction."""

    def __init__(self, values: Iterable[int] = ()):  # noqa: B008
        vals = [int(x) for x in values if int(x) != 0]
        for x in vals:
            if x < 3:
                raise InvalidParameters(f"cycle length {x} < 3")
        self.counts = Counter(vals)

    @property
    def total(self) -> int:
        return sum(k * n for k, n in self.counts.items())

    def multiplicity(self, k: int) -> int:
        return self.counts.get(k, 0)

    def as_sorted(self) -> List[int]:
        return sorted(self.counts.elements())

    def __add__(self, other: "LengthList") -> "LengthList":
        out = LengthList()
        out.counts = self.counts + other.counts
        return out

    def __eq__(self, other):
        return isinstance(other, LengthList) and self.counts == other.counts

    def __len__(self):
        return sum(self.counts.values())

    def __iter__(self):
        return iter(self.as_sorted())

    def __repr__(self):
        return f"LengthList({self.as_sorted()})"


def classify_edge(g: HoledGraph, x: int, y: int) -> str:
    return g.classify_edge(x, y)


def are_twin(g: HostGraph, a: int, b: int) -> bool:
    return g.are_twin(a, b)
