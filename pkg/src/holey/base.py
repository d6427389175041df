"""Base decompositions of K_v-K_u into m-cycles and short-cycle scaffolds.

The construction places the hole on {0..u-1} (y_1..y_u) and the outside on
{u..v-1} (z_1..z_w).  It assembles five families: a decomposition of the
outside clique minus a perfect matching, a bipartite decomposition between
most of the hole and the outside, triangle/pentagon covers of the reserved
cycles, and a small patch family stitching the two distinguished cycles
together.  Every cycle shorter than m ends up with at most one pure edge,
which is what the merging driver needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import InternalInvariantViolation, PreconditionViolation
from .graphs import CyclePacking, CycleT, HoledGraph, cycle_edges, path_edges
from .leaves import _single_cycle
from .oracles import (
    SolverConfig,
    decompose_even_complete_minus_factor,
    solve_list_decomposition,
)


@dataclass
class BaseParams:
    m: int
    u: int
    v: int
    w: int
    k: int
    t: int
    x: int
    p: int
    q: int
    pp: int          # p'
    qp: int          # q'   (q'_3 + q'_5 when m = 9, case t > 0)
    qpp: int         # q''
    h: int = 0       # only meaningful for m >= 11
    q3: int = 0      # m = 9 only
    q5: int = 0      # m = 9 only
    kp: int = 0      # k' for the m = 9 multiset


def r_list(ell: int) -> List[int]:
    """The standard splitting of an even length into 4s and at most one 6."""
    if ell % 2:
        raise PreconditionViolation("length must be even")
    if ell == 0:
        return []
    if ell % 4 == 0:
        return [4] * (ell // 4)
    if ell % 4 == 2 and ell >= 6:
        return [4] * ((ell - 6) // 4) + [6]
    raise PreconditionViolation(f"no 4/6 splitting of {ell}")


def mixed_cycles(
    c: Sequence[int], n_set: Sequence[int], y: int, z: int, a: int
) -> List[CycleT]:
    """Decompose the join of {y,z} with cycle C plus isolated set N into
    a triangles and |C|-a pentagons, each containing one edge of C."""
    kk = len(c)
    if kk < 3 or a % 2 or a < 0 or a > kk or len(n_set) != kk - a:
        raise PreconditionViolation("triangle/pentagon split parameters invalid")
    forbidden = set(c) | set(n_set)
    if y in forbidden or z in forbidden or y == z:
        raise PreconditionViolation("apex vertices must be disjoint from C and N")
    cv = list(c)
    xs = list(n_set)
    out: List[CycleT] = []
    for j in range(1, a + 1):
        apex = y if j % 2 == 1 else z
        out.append((apex, cv[(j - 2) % kk], cv[j - 1]))
    for i in range(1, kk - a + 1):
        out.append((y, cv[(a + i - 2) % kk], cv[(a + i - 1) % kk], z, xs[i - 1]))
    return out


def _check_cycle_list(cycles: List[CycleT], edges: Set[Tuple[int, int]]):
    seen: Set[Tuple[int, int]] = set()
    for c in cycles:
        for e in cycle_edges(c):
            if e in seen or e not in edges:
                raise InternalInvariantViolation("families overlap or escape host")
            seen.add(e)
    if seen != edges:
        raise InternalInvariantViolation("families do not tile the host")


def _pick_cycles(
    cycles: List[CycleT], wanted: Sequence[int]
) -> Tuple[List[CycleT], List[CycleT]]:
    """Remove one cycle per wanted length (in order); returns (picked, rest)."""
    rest = list(cycles)
    picked = []
    for length in wanted:
        for i, c in enumerate(rest):
            if len(c) == length:
                picked.append(rest.pop(i))
                break
        else:
            raise InternalInvariantViolation(f"no cycle of length {length} found")
    return picked, rest


def _relabel_outside(
    u: int, w: int, anchors: Dict[int, int]
) -> Dict[int, int]:
    """A bijection 0..w-1 -> u..u+w-1 extending the given anchor mapping."""
    used = set(anchors.values())
    free = [lab for lab in range(u, u + w) if lab not in used]
    perm = dict(anchors)
    for src in range(w):
        if src not in perm:
            perm[src] = free.pop()
    if len(set(perm.values())) != w:
        raise InternalInvariantViolation("outside relabeling is not a bijection")
    return perm


def _strip_four_cycles(ya: int, yb: int, zs: List[int]) -> List[CycleT]:
    if len(zs) % 2:
        raise InternalInvariantViolation("strip needs an even vertex count")
    return [(ya, zs[2 * i], yb, zs[2 * i + 1]) for i in range(len(zs) // 2)]


def _remove_multiset(lengths: List[int], drop: List[int]) -> List[int]:
    out = list(lengths)
    for d in drop:
        out.remove(d)
    return out


_K66_CACHE: Optional[List[CycleT]] = None


def _k66_pattern(cfg: SolverConfig) -> List[CycleT]:
    """Six 6-cycles tiling K_{6,6} on rows 0..5 and columns 6..11."""
    global _K66_CACHE
    if _K66_CACHE is None:
        edges = {(r, 6 + c) for r in range(6) for c in range(6)}
        _K66_CACHE = solve_list_decomposition(edges, [6] * 6, cfg)
    return _K66_CACHE


def _solve_bipartite_rest(
    rows: List[int],
    cols: List[int],
    c_dag: Optional[CycleT],
    lengths: List[int],
    cfg: SolverConfig,
) -> List[CycleT]:
    """Tile a complete bipartite block, minus the stitch cycle if present,
    with cycles of the given lengths.

    Rows away from the stitch cycle are peeled off first, in groups of six
    as blocks of 6-cycles and in pairs as strips of 4-cycles, so the generic
    solver only sees a few rows.
    """
    host = {(r, c) for r in rows for c in cols}
    if c_dag:
        host -= set(cycle_edges(c_dag))
    dag_rows = set(c_dag) & set(rows) if c_dag else set()
    free = [r for r in rows if r not in dag_rows]
    lens = list(lengths)
    out: List[CycleT] = []
    w = len(cols)

    def consume(block: List[CycleT], lns: List[int]):
        for ln in lns:
            lens.remove(ln)
        for c in block:
            host.difference_update(cycle_edges(c))
        out.extend(block)

    # groups of six rows carry 6-cycle blocks plus a short strip of 4s
    n_six = 6 * (w // 6)
    tail = cols[6 * (w // 6):]
    n_four = 3 * len(tail) // 2
    while (w >= 6 and len(free) >= 6
           and lens.count(6) >= n_six and lens.count(4) >= n_four):
        if lens.count(6) > n_six and len(free) - 6 + len(dag_rows) < 3:
            break
        grp = [free.pop() for _ in range(6)]
        block: List[CycleT] = []
        for i in range(w // 6):
            six = cols[6 * i:6 * (i + 1)]
            for pat in _k66_pattern(cfg):
                block.append(tuple(grp[s] if s < 6 else six[s - 6] for s in pat))
        for j in range(3):
            block += _strip_four_cycles(grp[2 * j], grp[2 * j + 1], tail)
        consume(block, [6] * n_six + [4] * n_four)

    # remaining row pairs carry strips of 4-cycles
    while len(free) >= 2 and lens.count(4) >= w // 2:
        big = [ln for ln in lens if ln > 4]
        floor = max([ln // 2 for ln in big], default=0)
        if len(free) - 2 + len(dag_rows) < floor:
            break
        r1, r2 = free.pop(), free.pop()
        consume(_strip_four_cycles(r1, r2, list(cols)), [4] * (w // 2))

    if host or lens:
        out += solve_list_decomposition(host, lens, cfg)
    return out


def _bridge_cycle(
    cpp: CycleT, n_path: int, bridge: List[int], m: int
) -> CycleT:
    """Close (C'' minus its leading path of n_path edges) with the bridge."""
    es = set(cycle_edges(cpp))
    for e in path_edges(list(cpp[: n_path + 1])):
        es.discard(e)
    for e in path_edges(bridge):
        es.add(e)
    cyc = _single_cycle(es)
    if cyc is None or len(cyc) != m:
        raise InternalInvariantViolation("patched long cycle is malformed")
    return cyc


def _derive_counts(m: int, u: int, v: int) -> Tuple[int, int, int]:
    w = v - u
    k, t = divmod(u * w, m - 1)
    total = comb(v, 2) - comb(u, 2)
    if total % m:
        raise PreconditionViolation("edge count is not divisible by m")
    x = total // m - k
    if x < 0 or (t > 0 and x < 1):
        raise PreconditionViolation("too few long cycles for the base layout")
    return k, t, x


def base_decomposition(
    m: int, u: int, v: int, cfg: Optional[SolverConfig] = None
) -> Tuple[CyclePacking, BaseParams]:
    """A verified (m^x, 3^k, h, R-lists)-decomposition of K_v-K_u for m >= 11
    in which every cycle shorter than m has at most one pure edge."""
    if m % 2 == 0 or m < 11:
        raise PreconditionViolation("this layout needs odd m >= 11")
    if u % 2 == 0 or v % 2 == 0:
        raise PreconditionViolation("u and v must be odd")
    w = v - u
    if w < m + 1:
        raise PreconditionViolation("outside must exceed m")
    if (m <= 15 and u < m) or (m >= 17 and u < m - 2):
        raise PreconditionViolation("hole too small for the base layout")
    cfg = cfg or SolverConfig()
    k, t, x = _derive_counts(m, u, v)
    p, q = divmod(k - w // 2, w)
    if u * w != (2 * w * p + w + 2 * q) * (m - 1) // 2 + t:
        raise InternalInvariantViolation("edge bookkeeping failed")

    if t > 0:
        if q == 0:
            raise InternalInvariantViolation("t > 0 forces q > 0")
        if q <= 4:
            pp, qp, qpp = p - 1, w, q
        elif q % 2 == 1:
            pp, qp, qpp = p, q - 1, 1
        else:
            pp, qp, qpp = p, q - 2, 2
    else:
        if q == 1:
            raise InternalInvariantViolation("t = 0 excludes q = 1")
        if q in (0, 3, 5):
            pp, qp, qpp = p - 1, w, q
        elif q == 2:
            pp, qp, qpp = p - 1, w - 2, 4
        elif q % 2 == 0:
            pp, qp, qpp = p, q, 0
        else:
            pp, qp, qpp = p, q - 3, 3
    if pp < 0:
        raise InternalInvariantViolation("reserved long-cycle count is negative")
    if w * (2 * pp + 1) // 2 + qp + qpp != k:
        raise InternalInvariantViolation("short-cycle budget mismatch")

    h = 0
    if t > 0:
        options = list(range(4, m - 6, 2)) + [m - 3]
        h = min(o for o in options if 3 * o >= 2 * qpp + t)
        if pp == p - 1:
            assert 3 * (2 * qpp + t + h) <= 4 * m + 28
        else:
            assert 3 * (2 * qpp + t + h) <= 4 * m + 9

    params = BaseParams(m, u, v, w, k, t, x, p, q, pp, qp, qpp, h=h)

    def zf(i: int) -> int:
        return u + i - 1

    def yf(i: int) -> int:
        return i - 1

    # distinguished-cycle layout on the outside clique minus a matching
    if t > 0:
        len_cpp = m + qpp - t
        if len_cpp > w:
            raise InternalInvariantViolation("patched cycle exceeds the outside")
        d1_lengths = [w] * pp + [m] * (x - 1) + [qp, len_cpp]
    else:
        len_cpp = qpp
        d1_lengths = [m] * x + [w] * pp + [qp] + ([qpp] if qpp else [])
    raw_cycles, raw_factor = decompose_even_complete_minus_factor(
        w, d1_lengths, cfg
    )
    wanted = ([len_cpp] if len_cpp else []) + [qp] + [w] * pp
    picked, d1_keep = _pick_cycles(raw_cycles, wanted)
    cpp_raw = picked[0] if len_cpp else None
    cp_raw = picked[1 if len_cpp else 0]
    hs_raw = picked[(2 if len_cpp else 1):]

    anchors: Dict[int, int] = {}
    if t > 0:
        for i in range(qpp + 1):
            anchors[cpp_raw[i]] = zf(i + 1)
        outside_cpp = [s for s in range(w) if s not in set(cpp_raw)]
        need = t // 2 - 1
        if len(outside_cpp) < need:
            raise InternalInvariantViolation("no room for the avoided labels")
        for i in range(need):
            anchors[outside_cpp[i]] = zf(qpp + 2 + i)
    elif qpp:
        for i in range(qpp):
            anchors[cpp_raw[i]] = zf(i + 1)
    perm = _relabel_outside(u, w, anchors)
    d1_keep = [tuple(perm[s] for s in c) for c in d1_keep]
    hs = [tuple(perm[s] for s in c) for c in hs_raw]
    cp = tuple(perm[s] for s in cp_raw)
    cpp = tuple(perm[s] for s in cpp_raw) if cpp_raw else None
    factor = [tuple(sorted((perm[a], perm[b]))) for a, b in raw_factor]

    # bipartite layer between most of the hole and the whole outside
    ya, yb = yf(u - 2 * pp - 2), yf(u - 2 * pp - 1)
    strip_zs = sorted(set(range(u, v)) - set(cp))
    strip = _strip_four_cycles(ya, yb, strip_zs)
    if t > 0:
        d2_full = [2 * qpp + t, h] + r_list(m - 3) * (k - 1) + r_list(m - h - 3)
    else:
        d2_full = ([2 * qpp] if qpp else []) + r_list(m - 3) * k
    rest_lengths = _remove_multiset(d2_full, [4] * len(strip))

    n_dag = qpp + t // 2 if t > 0 else qpp
    if n_dag > u - 2 * pp - 3:
        raise InternalInvariantViolation("stitch cycle exceeds the hole slice")
    if n_dag:
        c_dag: CycleT = tuple(
            x_ for i in range(1, n_dag + 1) for x_ in (yf(i), zf(i))
        )
        rest_lengths = _remove_multiset(rest_lengths, [len(c_dag)])
    else:
        c_dag = None
    d2_rest = _solve_bipartite_rest(
        list(range(0, u - 2 * pp - 3)), list(range(u, v)),
        c_dag, rest_lengths, cfg,
    )

    # triangle covers of the reserved cycles and the matching
    d3 = mixed_cycles(cp, [], ya, yb, a=qp)
    d4: List[CycleT] = []
    for i in range(1, pp + 1):
        pair = (yf(u - 2 * pp - 1 + i), yf(u - pp - 1 + i))
        d4 += mixed_cycles(hs[i - 1], [], pair[0], pair[1], a=w)
    d4 += [(yf(u), a, b) for a, b in factor]

    # stitch the two distinguished cycles into triangles plus one m-cycle
    d5: List[CycleT] = []
    if t > 0:
        for i in range(1, qpp + 1):
            d5.append((zf(i), yf(i + 1), zf(i + 1)))
        bridge = [zf(qpp + 1)]
        for j in range(qpp + 2, qpp + t // 2 + 1):
            bridge += [yf(j), zf(j)]
        bridge += [yf(1), zf(1)]
        d5.append(_bridge_cycle(cpp, qpp, bridge, m))
    elif qpp:
        for i in range(1, qpp):
            d5.append((zf(i), yf(i + 1), zf(i + 1)))
        d5.append((zf(qpp), yf(1), zf(1)))

    all_cycles = d1_keep + strip + d2_rest + d3 + d4 + d5
    g = HoledGraph(u, v)
    _check_cycle_list(all_cycles, set(g.edges()))
    packing = CyclePacking(g, all_cycles)
    _check_base_multiset(packing, m, k, x, [h] if t > 0 else [], t, g)
    return packing, params


def _check_base_multiset(
    packing: CyclePacking, m: int, k: int, x: int,
    extra: List[int], t: int, g: HoledGraph,
):
    from collections import Counter

    got = Counter(len(c) for c in packing.cycles)
    if t > 0:
        want = Counter([m] * x + [3] * k + extra
                       + r_list(m - 3) * (k - 1) + r_list(m - extra[0] - 3))
    else:
        want = Counter([m] * x + [3] * k + r_list(m - 3) * k)
    if got != want:
        raise InternalInvariantViolation(
            f"length multiset mismatch: got {sorted(got.items())}, "
            f"want {sorted(want.items())}"
        )
    for c in packing.cycles:
        if len(c) < m:
            pure = sum(1 for a, b in cycle_edges(c) if a >= g.u and b >= g.u)
            if pure > 1:
                raise InternalInvariantViolation(
                    "short cycle with more than one pure edge"
                )


def base_decomposition_9(
    u: int, v: int, cfg: Optional[SolverConfig] = None
) -> Tuple[CyclePacking, BaseParams]:
    """A verified (3^{k-k'},4^{k'},5^{k'},6^{k-k'},9^x)-decomposition of
    K_v-K_u in which every cycle shorter than 9 has at most one pure edge."""
    m = 9
    if u % 2 == 0 or v % 2 == 0:
        raise PreconditionViolation("u and v must be odd")
    w = v - u
    if w < 10:
        raise PreconditionViolation("outside must be at least 10")
    if u < 9:
        raise PreconditionViolation("hole must be at least 9")
    cfg = cfg or SolverConfig()
    k, t, x = _derive_counts(m, u, v)
    half = w // 2
    p, q = divmod(k, half)
    p -= 1
    if p < 1:
        raise InternalInvariantViolation("reserved cycle count must be positive")
    if u * w != 8 * ((p + 1) * half + q) + t:
        raise InternalInvariantViolation("edge bookkeeping failed")

    def zf(i: int) -> int:
        return u + i - 1

    def yf(i: int) -> int:
        return i - 1

    if t > 0:
        if q == 0:
            raise InternalInvariantViolation("t > 0 forces q > 0")
        if q <= 3:
            pp, q3, q5, qpp = p - 1, 2 * q - 2, half + 1 - q, 1
        else:
            pp, q3, q5, qpp = p, 0, q - 1, 1
        qp = q3 + q5
    else:
        if q == 0:
            pp, qp, qpp = p - 1, half, 0
        elif q in (1, 2):
            pp, qp, qpp = p - 1, half - 3 + q, 3
        else:
            pp, qp, qpp = p, q, 0
        q3, q5 = 0, qp
    if pp < 0 or (pp + 1) * half + qp + qpp != k:
        raise InternalInvariantViolation("short-cycle budget mismatch")
    kp = pp * half + (q5 if t > 0 else qp)
    params = BaseParams(m, u, v, w, k, t, x, p, q, pp, qp, qpp,
                        q3=q3, q5=q5, kp=kp)

    if t > 0:
        len_cpp = 9 + 1 - t
        d1_lengths = [9] * (x - 1) + [half] * pp + [qp, len_cpp]
    else:
        len_cpp = qpp
        d1_lengths = [9] * x + [half] * pp + [qp] + ([qpp] if qpp else [])
    raw_cycles, raw_factor = decompose_even_complete_minus_factor(
        w, d1_lengths, cfg
    )
    wanted = ([len_cpp] if len_cpp else []) + [qp] + [half] * pp
    picked, d1_keep = _pick_cycles(raw_cycles, wanted)
    cpp_raw = picked[0] if len_cpp else None
    cp_raw = picked[1 if len_cpp else 0]
    hs_raw = picked[(2 if len_cpp else 1):]

    anchors: Dict[int, int] = {}
    if t > 0:
        anchors[cpp_raw[0]] = zf(1)
        anchors[cpp_raw[1]] = zf(2)
        outside_cpp = [s for s in range(w) if s not in set(cpp_raw)]
        need = t // 2 - 1
        for i in range(need):
            anchors[outside_cpp[i]] = zf(3 + i)
    elif qpp:
        for i in range(qpp):
            anchors[cpp_raw[i]] = zf(i + 1)
    perm = _relabel_outside(u, w, anchors)
    d1_keep = [tuple(perm[s] for s in c) for c in d1_keep]
    hs = [tuple(perm[s] for s in c) for c in hs_raw]
    cp = tuple(perm[s] for s in cp_raw)
    cpp = tuple(perm[s] for s in cpp_raw) if cpp_raw else None
    factor = [tuple(sorted((perm[a], perm[b]))) for a, b in raw_factor]

    # reserve a pentagon anchor set disjoint from the short reserved cycle
    n_q = q5 if t > 0 else qp
    q_set = sorted(set(range(u, v)) - set(cp))[:n_q]
    if len(q_set) != n_q:
        raise InternalInvariantViolation("no room for the pentagon anchors")

    ya, yb = yf(u - 2 * pp - 2), yf(u - 2 * pp - 1)
    strip_zs = sorted(set(range(u, v)) - set(cp) - set(q_set))
    strip = _strip_four_cycles(ya, yb, strip_zs)
    four_total = pp * half + (q5 if t > 0 else qp)
    six_total = half + (q3 if t > 0 else 0) + qpp
    d2_full = [4] * four_total + [6] * six_total
    if t > 0:
        d2_full.append(t + 2 * qpp)
    elif qpp:
        d2_full.append(2 * qpp)
    rest_lengths = _remove_multiset(d2_full, [4] * len(strip))

    n_dag = t // 2 + 1 if t > 0 else qpp
    if n_dag > u - 2 * pp - 3:
        raise InternalInvariantViolation("stitch cycle exceeds the hole slice")
    if n_dag:
        c_dag: CycleT = tuple(
            x_ for i in range(1, n_dag + 1) for x_ in (yf(i), zf(i))
        )
        rest_lengths = _remove_multiset(rest_lengths, [len(c_dag)])
    else:
        c_dag = None
    d2_rest = _solve_bipartite_rest(
        list(range(0, u - 2 * pp - 3)), list(range(u, v)),
        c_dag, rest_lengths, cfg,
    )

    d3 = mixed_cycles(cp, q_set, ya, yb, a=q3 if t > 0 else 0)
    d4: List[CycleT] = []
    for i in range(1, pp + 1):
        pair = (yf(u - 2 * pp - 1 + i), yf(u - pp - 1 + i))
        n_set = sorted(set(range(u, v)) - set(hs[i - 1]))
        d4 += mixed_cycles(hs[i - 1], n_set, pair[0], pair[1], a=0)
    d4 += [(yf(u), a, b) for a, b in factor]

    d5: List[CycleT] = []
    if t > 0:
        d5.append((zf(1), yf(2), zf(2)))
        bridge = [zf(2)]
        for j in range(3, t // 2 + 2):
            bridge += [yf(j), zf(j)]
        bridge += [yf(1), zf(1)]
        d5.append(_bridge_cycle(cpp, 1, bridge, 9))
    elif qpp:
        for i in range(1, qpp):
            d5.append((zf(i), yf(i + 1), zf(i + 1)))
        d5.append((zf(qpp), yf(1), zf(1)))

    all_cycles = d1_keep + strip + d2_rest + d3 + d4 + d5
    g = HoledGraph(u, v)
    _check_cycle_list(all_cycles, set(g.edges()))
    packing = CyclePacking(g, all_cycles)

    from collections import Counter

    got = Counter(len(c) for c in packing.cycles)
    want = Counter(
        [3] * (k - kp) + [4] * kp + [5] * kp + [6] * (k - kp) + [9] * x
    )
    if got != want:
        raise InternalInvariantViolation(
            f"length multiset mismatch: got {sorted(got.items())}, "
            f"want {sorted(want.items())}"
        )
    for c in packing.cycles:
        if len(c) < 9:
            pure = sum(1 for a, b in cycle_edges(c) if a >= u and b >= u)
            if pure > 1:
                raise InternalInvariantViolation(
                    "short cycle with more than one pure edge"
                )
    return packing, params
