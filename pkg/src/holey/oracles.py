"""Bounded solvers for the classical decompositions the base builder needs.

Existence of these decompositions (complete graph minus a perfect matching,
complete bipartite graphs, and small ad-hoc hosts) is classical; this module
finds explicit ones at the instance sizes the constructions use, by seeded
randomized search with restarts, and verifies every result before returning
it.  A search that runs out of budget raises ResourceExhausted; it never
claims nonexistence.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import PreconditionViolation, ResourceExhausted
from .graphs import CycleT, Edge, cycle_edges, edge


@dataclass
class SolverConfig:
    max_vertices: int = 64
    time_budget: float = 30.0
    seed: int = 0


def _check_lengths(m_list: Sequence[int], n_vertices: int, n_edges: int):
    if any(l < 3 or l > n_vertices for l in m_list):
        raise PreconditionViolation("cycle lengths out of range")
    if sum(m_list) != n_edges:
        raise PreconditionViolation(
            f"lengths sum to {sum(m_list)}, graph has {n_edges} edges"
        )


def _dfs_cycle(
    adj: Dict[int, Set[int]], length: int, rng: random.Random,
    node_cap: int = 30000,
) -> Optional[CycleT]:
    """A simple cycle of the given length in the graph, found by randomized
    depth-first search with a node budget."""
    live = [x for x in adj if adj[x]]
    if not live:
        return None
    start = max(rng.sample(live, min(3, len(live))), key=lambda x: len(adj[x]))
    path = [start]
    onpath = {start}
    iters = [iter(rng.sample(sorted(adj[start]), len(adj[start])))]
    nodes = 0
    while iters:
        nodes += 1
        if nodes > node_cap:
            return None
        cur = path[-1]
        nxt = next(iters[-1], None)
        if nxt is None:
            iters.pop()
            onpath.discard(path.pop())
            continue
        if len(path) == length:
            if nxt == start:
                return tuple(path)
            continue
        if nxt in onpath:
            continue
        path.append(nxt)
        onpath.add(nxt)
        nbs = sorted(adj[nxt])
        iters.append(iter(rng.sample(nbs, len(nbs))))
    return None


def _attempt(
    edges: Set[Edge], lengths: List[int], rng: random.Random,
    deadline: Optional[float] = None,
) -> Optional[List[CycleT]]:
    adj: Dict[int, Set[int]] = {}
    for x, y in edges:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    todo = list(lengths)
    placed: List[CycleT] = []
    repairs = 0
    max_repairs = 40 + 4 * len(lengths)
    while todo:
        if deadline is not None and time.monotonic() > deadline:
            return None
        length = todo.pop(0)
        c = None
        for _ in range(12):
            c = _dfs_cycle(adj, length, rng)
            if c is not None:
                break
        if c is None:
            # local repair: free a few placed cycles and keep going
            if repairs >= max_repairs or not placed:
                return None
            repairs += 1
            todo.append(length)
            for _ in range(min(len(placed), 1 + rng.randrange(3))):
                victim = placed.pop(rng.randrange(len(placed)))
                for x, y in cycle_edges(victim):
                    adj[x].add(y)
                    adj[y].add(x)
                todo.append(len(victim))
            rng.shuffle(todo)
            todo.sort(key=lambda l: -l * rng.random())
            continue
        for x, y in cycle_edges(c):
            adj[x].discard(y)
            adj[y].discard(x)
        placed.append(c)
    return placed


def _verify(edges: Set[Edge], cycles: List[CycleT], m_list: Sequence[int]):
    seen: Set[Edge] = set()
    for c in cycles:
        if len(set(c)) != len(c):
            raise PreconditionViolation("solver produced a non-simple cycle")
        for e in cycle_edges(c):
            if e in seen or e not in edges:
                raise PreconditionViolation("solver output is not edge-disjoint")
            seen.add(e)
    if seen != edges or Counter(len(c) for c in cycles) != Counter(m_list):
        raise PreconditionViolation("solver output does not match the request")


def solve_list_decomposition(
    edges, m_list: Sequence[int], cfg: Optional[SolverConfig] = None
) -> List[CycleT]:
    """Decompose the given edge set into simple cycles of the given lengths.

    Randomized greedy search, longest cycles first, restarting until the
    time budget runs out.
    """
    cfg = cfg or SolverConfig()
    edge_set = {edge(x, y) for x, y in edges}
    verts = {x for e in edge_set for x in e}
    if len(verts) > cfg.max_vertices:
        raise PreconditionViolation("instance above the configured size cap")
    m_list = [l for l in m_list if l != 0]
    _check_lengths(m_list, len(verts), len(edge_set))
    rng = random.Random(cfg.seed)
    deadline = time.monotonic() + cfg.time_budget
    base = sorted(m_list, reverse=True)
    attempt = 0
    while time.monotonic() < deadline:
        attempt += 1
        lengths = list(base)
        if attempt % 3 == 0:
            rng.shuffle(lengths)
        cycles = _attempt(edge_set, lengths, rng, deadline)
        if cycles is not None:
            _verify(edge_set, cycles, m_list)
            return cycles
    raise ResourceExhausted(
        f"no decomposition found within {cfg.time_budget}s "
        f"({attempt} attempts); existence is not refuted"
    )


def one_factor(n: int) -> List[Edge]:
    """The perfect matching {2i, 2i+1} on {0..n-1}."""
    if n % 2:
        raise PreconditionViolation("one-factors need an even order")
    return [(2 * i, 2 * i + 1) for i in range(n // 2)]


def decompose_even_complete_minus_factor(
    n: int, m_list: Sequence[int], cfg: Optional[SolverConfig] = None
) -> Tuple[List[CycleT], List[Edge]]:
    """An (m_list)-decomposition of K_n minus the standard perfect matching."""
    if n % 2 or n < 4:
        raise PreconditionViolation("order must be even and at least 4")
    factor = set(one_factor(n))
    edges = {
        (x, y) for x in range(n) for y in range(x + 1, n)
        if (x, y) not in factor
    }
    m_list = [l for l in m_list if l != 0]
    _check_lengths(m_list, n, len(edges))
    cycles = solve_list_decomposition(edges, m_list, cfg)
    return cycles, sorted(factor)


def _uniform_four_cycles(a: int, b: int) -> List[CycleT]:
    out = []
    for i in range(0, a, 2):
        for j in range(a, a + b, 2):
            out.append((i, j, i + 1, j + 1))
    return out


def decompose_bipartite(
    a: int, b: int, m_list: Sequence[int], cfg: Optional[SolverConfig] = None
) -> List[CycleT]:
    """An (m_list)-decomposition of K_{a,b} on parts {0..a-1}, {a..a+b-1}."""
    if a % 2 or b % 2 or a < 2 or b < 2:
        raise PreconditionViolation("both parts must be even and positive")
    m_list = [l for l in m_list if l != 0]
    if any(l % 2 or l < 4 for l in m_list):
        raise PreconditionViolation("bipartite cycle lengths must be even, >= 4")
    if sum(m_list) != a * b:
        raise PreconditionViolation("lengths must sum to ab")
    if all(l == 4 for l in m_list):
        return _uniform_four_cycles(a, b)
    edges = {(x, y) for x in range(a) for y in range(a, a + b)}
    return solve_list_decomposition(edges, m_list, cfg)


def apply_permutation(
    cycles: Sequence[CycleT], perm: Dict[int, int]
) -> List[CycleT]:
    return [tuple(perm.get(x, x) for x in c) for c in cycles]
