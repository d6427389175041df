"""Admissibility, dispatch, and the high-level construction drivers.

construct() routes an admissible (m, u, v) to one of four strategies: the
base-plus-merging driver for large holes, nesting of two decompositions for
large orders over a small hole, bounded switching search for the small
sporadic cases, and the plain solver for m at most 7.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from .base import base_decomposition, base_decomposition_9, r_list
from .certify import Certificate, make_certificate, verify
from .errors import (
    InternalInvariantViolation,
    InvalidInputSystem,
    NotAdmissible,
    OutOfCoveredRange,
    PreconditionViolation,
    ResourceExhausted,
    Unsupported,
)
from .graphs import CyclePacking, CycleT, HoledGraph, cycle_edges
from .merging import join_to_two_m_cycles
from .oracles import SolverConfig, _dfs_cycle
from .switching import perform_switch, switch_candidates


@dataclass
class AdmissibilityReport:
    m: int
    u: int
    v: int
    n1: bool
    n2: bool
    n3: bool
    n4: bool

    @property
    def admissible(self) -> bool:
        return self.n1 and self.n2 and self.n3 and self.n4


@dataclass
class DispatchTrace:
    route: str = ""
    seed: int = 0
    sub_calls: List[str] = field(default_factory=list)
    elapsed: float = 0.0


def admissible(m: int, u: int, v: int) -> AdmissibilityReport:
    """The four necessary conditions for an m-cycle decomposition of
    K_v-K_u, decided with exact arithmetic."""
    if m % 2 == 0:
        raise Unsupported("only odd cycle lengths are supported")
    if m < 3 or u < 1 or v <= u:
        raise PreconditionViolation("need m >= 3 and 1 <= u < v")
    n1 = u % 2 == 1 and v % 2 == 1
    n2 = (comb(v, 2) - comb(u, 2)) % m == 0
    n3 = Fraction(v) >= Fraction(u * (m + 1), m - 1) + 1
    n4 = (v - m) * (v - 1) >= u * (u - 1)
    return AdmissibilityReport(m, u, v, n1, n2, n3, n4)


def nu(m: int, u: int) -> int:
    """The smallest x > u making (u, x) m-admissible."""
    if m % 2 == 0:
        raise Unsupported("only odd cycle lengths are supported")
    if m < 3 or u < 1 or u % 2 == 0:
        raise PreconditionViolation("need odd m >= 3 and odd u >= 1")
    x = u + 1
    while not admissible(m, u, x).admissible:
        x += 1
    # any y = u (mod 2m) past the ratio bound is admissible, so x is at most
    # the first such y
    bound = Fraction(u * (m + 1), m - 1) + 1
    y = u
    while y < bound or y <= u:
        y += 2 * m
    assert x <= y
    return x


def _pure_count(c: CycleT, g: HoledGraph) -> int:
    return sum(1 for a, b in cycle_edges(c) if a >= g.u and b >= g.u)


def _group_lists(params) -> List[List[int]]:
    """Length lists for the short-cycle groups, each summing to m with one
    odd entry and one pure edge."""
    m = params.m
    if m == 9:
        return ([[3, 6]] * (params.k - params.kp)
                + [[4, 5]] * params.kp)
    groups = [[3] + r_list(m - 3) for _ in range(params.k - 1)]
    if params.t > 0:
        groups.append([3, params.h] + r_list(m - params.h - 3))
    else:
        groups.append([3] + r_list(m - 3))
    return groups


def _check_driver_state(p: CyclePacking, m: int, x: int):
    g: HoledGraph = p.ambient
    odd_pure = 0
    for c in p.cycles:
        pure = _pure_count(c, g)
        if len(c) < m:
            if pure != (1 if len(c) % 2 else 0):
                raise InternalInvariantViolation(
                    "short cycle with unexpected pure edge count"
                )
        elif pure != 1:
            odd_pure += 1
    if odd_pure > x:
        raise InternalInvariantViolation(
            "too many long cycles without a single pure edge"
        )


def almost_everything(
    m: int, u: int, v: int, cfg: SolverConfig,
    trace: Optional[DispatchTrace] = None,
) -> List[CycleT]:
    """Base decomposition followed by merging every short-cycle group into
    m-cycles, two at a time."""
    if m == 9:
        p, params = base_decomposition_9(u, v, cfg)
    else:
        p, params = base_decomposition(m, u, v, cfg)
    g = p.ambient
    groups = _group_lists(params)
    k, x = params.k, params.x
    if k < 2:
        raise InternalInvariantViolation("merging needs at least two groups")
    if trace is not None:
        trace.sub_calls.append(f"base k={k} x={x} t={params.t}")

    def remove_and_join(p: CyclePacking, lens: List[int],
                        with_m_cycle: bool) -> CyclePacking:
        cycles = list(p.cycles)
        idxs: List[int] = []
        if with_m_cycle:
            for i in range(len(cycles) - 1, -1, -1):
                if len(cycles[i]) == m and _pure_count(cycles[i], g) == 1:
                    idxs.append(i)
                    break
            else:
                raise InternalInvariantViolation(
                    "no merged cycle with a single pure edge to recycle"
                )
        for ln in lens:
            for i in range(len(cycles) - 1, -1, -1):
                if i not in idxs and len(cycles[i]) == ln:
                    idxs.append(i)
                    break
            else:
                raise InternalInvariantViolation(f"no cycle of length {ln}")
        q = p.without(idxs)
        leave = q.reduced_leave()
        if len(leave) != 2 * m or leave.pure_edge_count(g) != 2:
            raise InternalInvariantViolation("removed group is malformed")
        q, _, _ = join_to_two_m_cycles(q, m)
        return q

    p = remove_and_join(p, groups[k - 2] + groups[k - 1], False)
    _check_driver_state(p, m, x)
    for i in range(1, k - 1):
        p = remove_and_join(p, groups[k - i - 2], True)
        _check_driver_state(p, m, x)
    if any(len(c) != m for c in p.cycles) or p.leave().edge_set:
        raise InternalInvariantViolation("merging left short cycles behind")
    if trace is not None:
        trace.sub_calls.append(f"joins={k - 1}")
    return list(p.cycles)


def _extract_greedy(
    p: CyclePacking, m: int, rng: random.Random
) -> CyclePacking:
    adj = {}
    for a, b in p.leave().edge_set:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    new = []
    while True:
        c = None
        for _ in range(8):
            c = _dfs_cycle(adj, m, rng, node_cap=8000)
            if c is not None:
                break
        if c is None:
            break
        new.append(c)
        for a, b in cycle_edges(c):
            adj[a].discard(b)
            adj[b].discard(a)
    return p.with_cycles(new) if new else p


def _random_switch(
    p: CyclePacking, rng: random.Random
) -> Optional[CyclePacking]:
    g: HoledGraph = p.ambient
    verts = sorted(p.reduced_leave().vertex_set)
    if not verts:
        return None
    for _ in range(8):
        a = rng.choice(verts)
        side = range(g.u) if a < g.u else range(g.u, g.v)
        pool = [x for x in side if x != a]
        if not pool:
            continue
        b = rng.choice(pool)
        cands = sorted(switch_candidates(p, a, b))
        if cands:
            origin = rng.choice(cands)
            return perform_switch(p, a, b, origin).new_packing
    return None


def _completion_move(
    p: CyclePacking, m: int, rng: random.Random
) -> Optional[CyclePacking]:
    """Close an (m-1)-path of the leave into an m-cycle by switching a
    leave edge onto the missing closing edge."""
    g: HoledGraph = p.ambient
    leave = p.leave()
    adj = {}
    for a, b in leave.edge_set:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if not adj:
        return None
    starts = rng.sample(sorted(adj), min(6, len(adj)))
    for v0 in starts:
        path = [v0]
        seen = {v0}
        while len(path) < m:
            nxt = [x for x in adj[path[-1]] if x not in seen
                   and (len(path) < m - 1 or not (x < g.u and v0 < g.u))]
            if not nxt:
                break
            cur = rng.choice(nxt)
            path.append(cur)
            seen.add(cur)
        if len(path) < m:
            continue
        end = path[-1]
        if v0 in adj[end]:
            continue
        for d in sorted(adj[end] - seen):
            if (d < g.u) != (v0 < g.u):
                continue
            cands = switch_candidates(p, d, v0)
            if end in cands:
                return perform_switch(p, d, v0, end).new_packing
    return None


def search_small(
    m: int, u: int, v: int, cfg: Optional[SolverConfig] = None,
    trace: Optional[DispatchTrace] = None,
) -> List[CycleT]:
    """Greedy m-cycle packing with switching to free stuck edges, plus
    cycle drops and restarts."""
    cfg = cfg or SolverConfig()
    if not admissible(m, u, v).admissible:
        raise PreconditionViolation(f"({u},{v}) is not {m}-admissible")
    if v > cfg.max_vertices:
        raise PreconditionViolation("instance above the configured size cap")
    g = HoledGraph(u, v)
    target = g.edge_count // m
    rng = random.Random(cfg.seed)
    deadline = time.monotonic() + cfg.time_budget
    restarts = 0
    while time.monotonic() < deadline:
        restarts += 1
        p = CyclePacking(g, [])
        stall = 0
        while stall < 80 and time.monotonic() < deadline:
            p = _extract_greedy(p, m, rng)
            if len(p.cycles) == target:
                if p.leave().edge_set:
                    raise InternalInvariantViolation("packing miscounted")
                if trace is not None:
                    trace.sub_calls.append(f"search restarts={restarts}")
                return list(p.cycles)
            stall += 1
            moved = False
            for _ in range(4):
                q = _completion_move(p, m, rng)
                if q is not None:
                    p = q
                    moved = True
            if moved:
                stall = max(0, stall - 1)
            for _ in range(1 + rng.randrange(3)):
                q = _random_switch(p, rng)
                if q is not None:
                    p = q
            if stall % 5 == 0 and p.cycles:
                drop = rng.sample(range(len(p.cycles)),
                                  min(len(p.cycles), 1 + rng.randrange(2)))
                p = p.without(drop)
    raise ResourceExhausted(
        f"no decomposition of K_{v}-K_{u} into {m}-cycles found within "
        f"{cfg.time_budget}s ({restarts} restarts); existence is not refuted"
    )


def _nest(
    m: int, u: int, ustar: int, v: int, cfg: SolverConfig,
    trace: Optional[DispatchTrace],
) -> List[CycleT]:
    inner = _construct_cycles(m, u, ustar, cfg, trace)
    if trace is not None:
        trace.sub_calls.append(f"nest inner ({u},{ustar})")
    outer = almost_everything(m, ustar, v, cfg, trace)
    return list(inner) + list(outer)


def _boundary_triangles(u: int) -> List[CycleT]:
    """Triangles tiling K_{2u+1}-K_u directly.

    At the ratio bound v = 2u+1 every triangle must pair a hole vertex with
    a pure edge, so the pure edges seen by each hole vertex form a perfect
    matching on the outside and the decomposition amounts to a proper
    1-factorization of K_{u+1}, built here by the rotating round-robin
    schedule.
    """
    w = u + 1
    out: List[CycleT] = []
    for i in range(u):
        out.append((i, u + w - 1, u + i))
        for j in range(1, w // 2):
            out.append((i, u + (i + j) % (w - 1), u + (i - j) % (w - 1)))
    return out


def _near_boundary_triangles(
    u: int, v: int, rng: random.Random, deadline: float,
) -> Optional[List[CycleT]]:
    """Triangles tiling K_v-K_u when v is 2u+3 or 2u+5.

    Any triangle here has at most one hole vertex, so a decomposition is u
    perfect matchings of the outside clique (one per hole vertex) plus a
    triangle decomposition of the leftover.  With this little slack the
    leftover is 2- or 4-regular and divisibility forces 3 | w, so it can be
    taken as one or two vertex-disjoint triangle factors up front.  The
    matchings then come from splitting Hamilton cycles of what remains,
    (u-1)/2 cycles of two matchings each plus the final 1-regular rest.
    """
    w = v - u
    slack = v - 2 * u - 1
    if w % 3 != 0 or w < 9:
        return None
    s = w // 3
    factors = [[(3 * i, 3 * i + 1, 3 * i + 2) for i in range(s)]]
    if slack == 4:
        factors.append([(i, i + s, i + 2 * s) for i in range(s)])
    base_adj = {x: set(range(w)) - {x} for x in range(w)}
    for fac in factors:
        for a, b, c in fac:
            for x, y in ((a, b), (b, c), (a, c)):
                base_adj[x].discard(y)
                base_adj[y].discard(x)
    while time.monotonic() < deadline:
        adj = {x: set(ys) for x, ys in base_adj.items()}
        matchings: List[List[Tuple[int, int]]] = []
        for _ in range((u - 1) // 2):
            ham = None
            for _ in range(40):
                ham = _dfs_cycle(adj, w, rng)
                if ham is not None:
                    break
            if ham is None:
                break
            for i, x in enumerate(ham):
                y = ham[(i + 1) % w]
                adj[x].discard(y)
                adj[y].discard(x)
            pairs = [(ham[i], ham[(i + 1) % w]) for i in range(w)]
            matchings.append(pairs[0::2])
            matchings.append(pairs[1::2])
        else:
            matchings.append(sorted((x, min(ys)) for x, ys in adj.items()
                                    if ys and x < min(ys)))
            out: List[CycleT] = [tuple(u + x for x in tri)
                                 for fac in factors for tri in fac]
            for i, match in enumerate(matchings):
                out.extend((i, u + a, u + b) for a, b in match)
            return out
    return None


def _construct_cycles(
    m: int, u: int, v: int, cfg: SolverConfig,
    trace: Optional[DispatchTrace] = None,
) -> List[CycleT]:
    w = v - u
    if m <= 7:
        if m == 3 and v == 2 * u + 1:
            if trace is not None:
                trace.route = trace.route or "Search"
                trace.sub_calls.append("round-robin boundary triangles")
            return _boundary_triangles(u)
        if m == 3 and v - 2 * u - 1 in (2, 4):
            rng = random.Random(cfg.seed)
            deadline = time.monotonic() + cfg.time_budget / 2
            got = _near_boundary_triangles(u, v, rng, deadline)
            if got is not None:
                if trace is not None:
                    trace.route = trace.route or "Search"
                    trace.sub_calls.append("matching-split near-boundary triangles")
                return got
        if trace is not None:
            trace.route = trace.route or "Search"
        return search_small(m, u, v, cfg, trace)
    big_hole = (m >= 17 and u >= m - 2) or (m <= 15 and u >= m)
    if w >= m + 1 and big_hole:
        if trace is not None:
            trace.route = trace.route or "AmostEverything"
        return almost_everything(m, u, v, cfg, trace)
    if m <= 15 and u == m - 2 and w >= m + 1:
        if v in (2 * m + 3, 3 * m - 2):
            if trace is not None:
                trace.route = trace.route or "Search"
            return search_small(m, u, v, cfg, trace)
        if v >= 4 * m + 3:
            if trace is not None:
                trace.route = trace.route or "Nesting"
            return _nest(m, u, 2 * m + 3, v, cfg, trace)
        # admissibility leaves no other orders in this regime, but fall
        # back to search rather than refuse
        if trace is not None:
            trace.route = trace.route or "Search"
        return search_small(m, u, v, cfg, trace)
    if u < m - 2:
        ustar = max(m, u + 1)
        if ustar % 2 == 0:
            ustar += 1
        while ustar + m + 1 <= v and not admissible(m, u, ustar).admissible:
            ustar += 2
        if (ustar + m + 1 <= v and admissible(m, u, ustar).admissible
                and admissible(m, ustar, v).admissible):
            if trace is not None:
                trace.route = trace.route or "Nesting"
            return _nest(m, u, ustar, v, cfg, trace)
        if v <= cfg.max_vertices:
            if trace is not None:
                trace.route = trace.route or "Search"
            return search_small(m, u, v, cfg, trace)
        raise OutOfCoveredRange(
            f"({u},{v}) needs a small-case decomposition beyond the "
            f"configured search size"
        )
    # hole at least m-2 but the orders are too close for the main route
    if m <= 15 and v <= cfg.max_vertices:
        if trace is not None:
            trace.route = trace.route or "Search"
        return search_small(m, u, v, cfg, trace)
    raise OutOfCoveredRange(
        f"existence for ({u},{v}) with m={m} falls in the unresolved "
        f"window nu_m(u) <= v <= u+m-1"
    )


def construct(
    m: int, u: int, v: int, cfg: Optional[SolverConfig] = None,
    trace: Optional[DispatchTrace] = None,
) -> Certificate:
    """A verified certificate of an m-cycle decomposition of K_v-K_u."""
    cfg = cfg or SolverConfig(time_budget=120.0)
    if m % 2 == 0:
        raise Unsupported("only odd cycle lengths are supported")
    rep = admissible(m, u, v)
    if not rep.admissible:
        failed = [n for n in ("n1", "n2", "n3", "n4") if not getattr(rep, n)]
        raise NotAdmissible(
            f"({u},{v}) is not {m}-admissible (fails {', '.join(failed)})"
        )
    if trace is not None:
        trace.seed = cfg.seed
    t0 = time.monotonic()
    cycles = _construct_cycles(m, u, v, cfg, trace)
    if trace is not None:
        trace.elapsed = time.monotonic() - t0
    cert = make_certificate(m, u, v, cycles)
    report = verify(cert)
    if not report.ok:
        raise InternalInvariantViolation(
            "constructed decomposition failed verification: "
            + "; ".join(report.failures[:3])
        )
    return cert


def embed_system(
    system: Certificate, v: int, cfg: Optional[SolverConfig] = None
) -> Certificate:
    """Extend an m-cycle system of order u to one of order v containing it."""
    m = system.m
    if system.u > 1:
        raise InvalidInputSystem("input must be a full system, not a holed one")
    rep = verify(system)
    if not rep.ok:
        raise InvalidInputSystem(
            "input system fails verification: " + "; ".join(rep.failures[:3])
        )
    u = system.v
    if v <= u:
        raise PreconditionViolation("target order must exceed the input order")
    if u == 1:
        if not admissible(m, 1, v).admissible:
            raise NotAdmissible(f"no {m}-cycle system of order {v}")
        return construct(m, 1, v, cfg)
    hole = construct(m, u, v, cfg)
    cert = make_certificate(m, 1, v, list(system.cycles) + list(hole.cycles))
    rep = verify(cert)
    if not rep.ok:
        raise InternalInvariantViolation(
            "embedding failed verification: " + "; ".join(rep.failures[:3])
        )
    return cert
