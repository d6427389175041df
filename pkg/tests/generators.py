"""Random instance builders shared by the test suite.

Leaves of prescribed shape are constructed explicitly (side patterns around
each cycle, then a random embedding into hole/outside vertices), and the
complement of the leave is packed into cycles by a randomized walk; every
even graph splits into cycles, so this always succeeds.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Set, Tuple

from holey.graphs import CyclePacking, HoledGraph, Leave, cycle_edges, edge


def random_cycle_split(edges, rng: random.Random) -> List[Tuple[int, ...]]:
    """Split an even graph into cycles with random walk choices."""
    adj: Dict[int, Set[int]] = {}
    for x, y in edges:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    assert all(len(nb) % 2 == 0 for nb in adj.values())
    cycles = []
    active = [x for x in adj if adj[x]]
    while active:
        start = rng.choice(active)
        walk = [start]
        pos = {start: 0}
        x = start
        while True:
            y = rng.choice(sorted(adj[x]))
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
        active = [x for x in adj if adj[x]]
    return cycles


def packing_with_leave(
    g: HoledGraph, leave_edges, rng: random.Random
) -> CyclePacking:
    leave_set = {edge(x, y) for x, y in leave_edges}
    rest = [e for e in g.edges() if e not in leave_set]
    cycles = random_cycle_split(rest, rng)
    return CyclePacking(g, cycles)


def _embed(patterns: List[List[str]], glue: List[Tuple[int, int, int, int]],
           g: HoledGraph, rng: random.Random) -> Optional[List[Tuple[int, ...]]]:
    """Assign real vertices to side patterns ('I' hole, 'O' outside).

    glue lists (cycle_a, idx_a, cycle_b, idx_b) pairs forced to share a
    vertex.  Returns None when the host is too small.
    """
    alias: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for ca, ia, cb, ib in glue:
        assert patterns[ca][ia] == patterns[cb][ib]
        alias[(cb, ib)] = (ca, ia)
    slots = [
        (ci, i)
        for ci, pat in enumerate(patterns)
        for i in range(len(pat))
        if (ci, i) not in alias
    ]
    need_hole = sum(1 for ci, i in slots if patterns[ci][i] == "I")
    need_out = len(slots) - need_hole
    if need_hole > g.u or need_out > g.v - g.u:
        return None
    holes = rng.sample(range(g.u), need_hole)
    outs = rng.sample(range(g.u, g.v), need_out)
    assign: Dict[Tuple[int, int], int] = {}
    hi = oi = 0
    for ci, i in slots:
        if patterns[ci][i] == "I":
            assign[(ci, i)] = holes[hi]
            hi += 1
        else:
            assign[(ci, i)] = outs[oi]
            oi += 1
    for k, tgt in alias.items():
        assign[k] = assign[tgt]
    return [
        tuple(assign[(ci, i)] for i in range(len(pat)))
        for ci, pat in enumerate(patterns)
    ]


def one_pure_cycle_pattern(n: int, rng: random.Random) -> List[str]:
    """Odd cycle, exactly one pure edge (between positions 0 and 1)."""
    assert n % 2 == 1 and n >= 3
    pat = ["O", "O"]
    side = "I"
    for _ in range(n - 2):
        pat.append(side)
        side = "O" if side == "I" else "I"
    pat = pat[:n]
    assert pat[-1] == "I"
    k = rng.randrange(n)
    return pat[k:] + pat[:k]


def no_pure_cycle_pattern(n: int, rng: random.Random) -> List[str]:
    assert n % 2 == 0 and n >= 4
    pat = ["I" if i % 2 == 0 else "O" for i in range(n)]
    k = rng.randrange(n)
    return pat[k:] + pat[:k]


def two_pure_cycle_pattern(n: int, rng: random.Random) -> List[str]:
    """Even cycle with exactly two pure edges; arc lengths between them even."""
    assert n % 2 == 0 and n >= 4
    arc1 = 2 * rng.randrange(0, (n - 2) // 2)
    arc2 = n - 2 - arc1
    pat = ["O"]
    side = "O"
    # pure edge 0-1, then arc1 cross edges, pure edge, arc2 cross edges
    pat.append("O")
    for _ in range(arc1):
        side = "I" if pat[-1] == "O" else "O"
        pat.append(side)
    assert pat[-1] == "O"
    pat.append("O")
    for _ in range(arc2 - 1):
        pat.append("I" if pat[-1] == "O" else "O")
    pat = pat[:n]
    assert len(pat) == n and pat[-1] == "I"
    k = rng.randrange(n)
    return pat[k:] + pat[:k]


def make_two_chain(
    g: HoledGraph,
    p: int,
    q: int,
    spread: str,
    rng: random.Random,
    link_side: Optional[str] = None,
) -> Optional[List[Tuple[int, ...]]]:
    """Two cycles of lengths p, q sharing one vertex; spread is 'odd'
    ((1,1) pure edges) or 'even' ((0,2))."""
    for _ in range(60):
        if spread == "odd":
            pa = one_pure_cycle_pattern(p, rng)
            pb = one_pure_cycle_pattern(q, rng)
        else:
            pa = no_pure_cycle_pattern(p, rng)
            pb = two_pure_cycle_pattern(q, rng)
        sides = set(pa) & set(pb)
        if link_side is not None:
            sides &= {link_side}
        if not sides:
            continue
        side = rng.choice(sorted(sides))
        ia = rng.choice([i for i, s in enumerate(pa) if s == side])
        ib = rng.choice([i for i, s in enumerate(pb) if s == side])
        cycles = _embed([pa, pb], [(0, ia, 1, ib)], g, rng)
        if cycles is None:
            return None
        es = set()
        ok = True
        for c in cycles:
            for e in cycle_edges(c):
                if e in es or not g.has_edge(*e):
                    ok = False
                es.add(e)
        if ok:
            return cycles
    return None


def _pattern(n: int, k: int, rng: random.Random) -> List[str]:
    """Cyclic side pattern of length n with exactly k pure (O-O) adjacencies
    and no I-I adjacency."""
    j = (n - k) // 2
    assert (n - k) % 2 == 0 and j >= 0
    if j == 0:
        pat = ["O"] * n
    else:
        runs = [1] * j
        for _ in range(n - 2 * j):
            runs[rng.randrange(j)] += 1
        pat = []
        for rl in runs:
            pat.append("I")
            pat.extend(["O"] * rl)
    k0 = rng.randrange(n)
    return pat[k0:] + pat[:k0]


def _slot(pat: List[str], side: str, rng: random.Random,
          avoid: Sequence[int] = ()) -> Optional[int]:
    opts = [i for i, sd in enumerate(pat) if sd == side and i not in avoid]
    return rng.choice(opts) if opts else None


def _valid_cycles(g: HoledGraph, cycles) -> bool:
    es = set()
    for c in cycles:
        if len(set(c)) != len(c):
            return False
        for e in cycle_edges(c):
            if e in es or not g.has_edge(*e):
                return False
            es.add(e)
    return True


def _front_load_odd(lengths: List[int]) -> List[int]:
    """Move one odd length (if any) to the front."""
    odd = [i for i, n in enumerate(lengths) if n % 2 == 1]
    out = list(lengths)
    if odd and 0 not in odd:
        i = odd[0]
        out[0], out[i] = out[i], out[0]
    return out


def _pure_counts(lengths: List[int], rng: random.Random,
                 front: bool) -> List[int]:
    """One pure edge on each odd cycle, or two on one even cycle; when front
    is set the double goes to cycle 0."""
    pures = [0] * len(lengths)
    odd = [i for i, n in enumerate(lengths) if n % 2 == 1]
    if odd:
        for i in odd:
            pures[i] = 1
    else:
        pures[0 if front else rng.randrange(len(lengths))] = 2
    return pures


def make_good_chain(
    g: HoledGraph, lengths: Sequence[int], rng: random.Random
) -> Optional[List[Tuple[int, ...]]]:
    """A good s-chain: cycles of the given lengths, consecutive pairs sharing
    one vertex, link sides alternating from an outside link at the good end,
    two pure edges total with one in cycle 0."""
    s = len(lengths)
    lens = _front_load_odd(list(lengths))
    pures = _pure_counts(lens, rng, front=True)
    link_sides = ["O" if i % 2 == 0 else "I" for i in range(s - 1)]
    for _ in range(60):
        pats = [_pattern(n, k, rng) for n, k in zip(lens, pures)]
        glue = []
        ok = True
        prev_right = None
        for i in range(s):
            left = None
            if i > 0:
                left = _slot(pats[i], link_sides[i - 1], rng)
                if left is None:
                    ok = False
                    break
                glue.append((i - 1, prev_right, i, left))
            if i < s - 1:
                prev_right = _slot(
                    pats[i], link_sides[i], rng,
                    avoid=[left] if left is not None else (),
                )
                if prev_right is None:
                    ok = False
                    break
        if not ok:
            continue
        cycles = _embed(pats, glue, g, rng)
        if cycles is None:
            return None
        if _valid_cycles(g, cycles):
            return cycles
    return None


def make_good_ring(
    g: HoledGraph, lengths: Sequence[int], rng: random.Random
) -> Optional[List[Tuple[int, ...]]]:
    """A good s-ring: cycle i shares one vertex with cycle i+1 (mod s); link
    sides alternate, with one all-outside pure cycle when s is odd; for s = 2
    the two shared vertices sit on opposite sides."""
    s = len(lengths)
    if s == 2:
        lens = list(lengths)
        pures = _pure_counts(lens, rng, front=False)
        for _ in range(60):
            pats = [_pattern(n, k, rng) for n, k in zip(lens, pures)]
            a0 = _slot(pats[0], "O", rng)
            b0 = _slot(pats[1], "O", rng)
            a1 = _slot(pats[0], "I", rng, avoid=[a0])
            b1 = _slot(pats[1], "I", rng, avoid=[b0])
            if None in (a0, b0, a1, b1):
                continue
            cycles = _embed(pats, [(0, a0, 1, b0), (0, a1, 1, b1)], g, rng)
            if cycles is None:
                return None
            if _valid_cycles(g, cycles):
                return cycles
        return None
    if s % 2 == 1:
        lens = _front_load_odd(list(lengths))
        pures = _pure_counts(lens, rng, front=True)
        # link i joins cycles i and i+1 (mod s); cycle 0 gets two outside
        # links, every other cycle one link on each side
        link_sides = ["O" if i % 2 == 0 else "I" for i in range(s)]
    else:
        lens = list(lengths)
        pures = _pure_counts(lens, rng, front=False)
        link_sides = ["O" if i % 2 == 0 else "I" for i in range(s)]
    for _ in range(60):
        pats = [_pattern(n, k, rng) for n, k in zip(lens, pures)]
        slots = []
        ok = True
        for i in range(s):
            la = _slot(pats[i], link_sides[i - 1], rng)
            lb = _slot(pats[i], link_sides[i], rng,
                       avoid=[la] if la is not None else ())
            if la is None or lb is None:
                ok = False
                break
            slots.append((la, lb))
        if not ok:
            continue
        glue = [
            (i, slots[i][1], (i + 1) % s, slots[(i + 1) % s][0])
            for i in range(s)
        ]
        cycles = _embed(pats, glue, g, rng)
        if cycles is None:
            return None
        if _valid_cycles(g, cycles):
            return cycles
    return None


def make_components(
    g: HoledGraph,
    chain_lengths: Sequence[int],
    cycle_lengths: Sequence[int],
    pures: Sequence[int],
    link_sides: Optional[Sequence[str]],
    rng: random.Random,
) -> Optional[List[Tuple[int, ...]]]:
    """A leave made of one chain (possibly empty) plus disjoint cycles.

    pures allocates pure-edge counts to the chain cycles then the free
    cycles, in order; link_sides gives the chain link sides (defaults to
    alternating with an outside link first).
    """
    sc = len(chain_lengths)
    lens = list(chain_lengths) + list(cycle_lengths)
    assert len(pures) == len(lens)
    assert all((n - k) % 2 == 0 and k <= n for n, k in zip(lens, pures))
    if link_sides is None:
        link_sides = ["O" if i % 2 == 0 else "I" for i in range(sc - 1)]
    for _ in range(60):
        pats = [_pattern(n, k, rng) for n, k in zip(lens, pures)]
        glue = []
        ok = True
        prev_right = None
        for i in range(sc):
            left = None
            if i > 0:
                left = _slot(pats[i], link_sides[i - 1], rng)
                if left is None:
                    ok = False
                    break
                glue.append((i - 1, prev_right, i, left))
            if i < sc - 1:
                prev_right = _slot(
                    pats[i], link_sides[i], rng,
                    avoid=[left] if left is not None else (),
                )
                if prev_right is None:
                    ok = False
                    break
        if not ok:
            continue
        cycles = _embed(pats, glue, g, rng)
        if cycles is None:
            return None
        if _valid_cycles(g, cycles):
            return cycles
    return None
