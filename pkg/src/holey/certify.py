"""Certificates of cycle decompositions: model, verifier and file formats.

The verifier is deliberately self-contained.  It re-derives edges and hole
membership from first principles rather than calling the construction
helpers, so a bug in the builders cannot hide from it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .errors import ParseError


@dataclass(frozen=True)
class Certificate:
    m: int
    u: int
    v: int
    hole: Tuple[int, ...]
    cycles: Tuple[Tuple[int, ...], ...]

    def canonical(self) -> "Certificate":
        cycles = tuple(sorted(_canon(c) for c in self.cycles))
        return Certificate(self.m, self.u, self.v, tuple(self.hole), cycles)


@dataclass
class VerificationReport:
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, msg: str):
        self.failures.append(msg)


def _canon(c: Sequence[int]) -> Tuple[int, ...]:
    c = tuple(c)
    i = c.index(min(c))
    fwd = c[i:] + c[:i]
    rev = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, rev)


def make_certificate(m: int, u: int, v: int, cycles) -> Certificate:
    return Certificate(m, u, v, tuple(range(u)), tuple(
        tuple(c) for c in cycles
    )).canonical()


def verify(c: Certificate) -> VerificationReport:
    """Check that the certificate is an m-cycle decomposition of K_v-K_u."""
    rep = VerificationReport()
    m, u, v = c.m, c.u, c.v
    if not (0 <= u < v):
        rep.add(f"orders out of range: u={u}, v={v}")
        return rep
    if list(c.hole) != list(range(u)):
        rep.add("hole is not the canonical set 0..u-1")
    covered = {}
    for idx, cyc in enumerate(c.cycles):
        if len(cyc) != m:
            rep.add(f"cycle {idx} has length {len(cyc)}, expected {m}")
            continue
        if len(set(cyc)) != len(cyc):
            rep.add(f"cycle {idx} repeats a vertex")
            continue
        if any(not (0 <= x < v) for x in cyc):
            rep.add(f"cycle {idx} uses a vertex outside 0..{v - 1}")
            continue
        for i in range(len(cyc)):
            a, b = cyc[i], cyc[(i + 1) % len(cyc)]
            e = (a, b) if a < b else (b, a)
            if a < u and b < u:
                rep.add(f"cycle {idx} uses hole edge {e}")
            elif e in covered:
                rep.add(f"edge {e} covered twice (cycles {covered[e]} and {idx})")
            else:
                covered[e] = idx
    expected = v * (v - 1) // 2 - u * (u - 1) // 2
    if expected % m == 0 and len(c.cycles) != expected // m:
        rep.add(
            f"cycle count {len(c.cycles)} differs from "
            f"{expected // m} = ({v} choose 2 - {u} choose 2)/{m}"
        )
    if rep.failures:
        return rep
    if len(covered) != expected:
        missing = expected - len(covered)
        rep.add(f"{missing} edges of the host are uncovered")
    return rep


def write_certificate(c: Certificate, path: str):
    c = c.canonical()
    payload = {
        "schema": 1,
        "m": c.m,
        "u": c.u,
        "v": c.v,
        "hole": list(c.hole),
        "cycles": [list(cy) for cy in c.cycles],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, separators=(",", ":"), sort_keys=True)
        f.write("\n")


def _from_json(text: str, path: str) -> Certificate:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at offset {exc.pos}") from exc
    if not isinstance(payload, dict):
        raise ParseError(f"{path}: expected a JSON object")
    if payload.get("schema") != 1:
        raise ParseError(f"{path}: unknown schema version {payload.get('schema')!r}")
    try:
        return Certificate(
            int(payload["m"]), int(payload["u"]), int(payload["v"]),
            tuple(int(x) for x in payload["hole"]),
            tuple(tuple(int(x) for x in cy) for cy in payload["cycles"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed certificate field: {exc}") from exc


def _from_text(text: str, path: str) -> Certificate:
    """Plain format: one cycle per line, space-separated vertex labels.

    The parameters are inferred: m from the line length, v from the largest
    label, and the hole from the vertices of less than full degree.
    """
    cycles = []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#")[0].strip()
        if not line:
            continue
        try:
            cyc = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(f"{path}: line {ln}: non-integer label")
        if len(cyc) < 3:
            raise ParseError(f"{path}: line {ln}: cycle shorter than 3")
        cycles.append(cyc)
    if not cycles:
        raise ParseError(f"{path}: no cycles found")
    m = len(cycles[0])
    v = max(max(c) for c in cycles) + 1
    deg = {x: 0 for x in range(v)}
    for c in cycles:
        for x in c:
            deg[x] += 2
    inner = sorted(x for x in range(v) if deg[x] < v - 1)
    u = len(inner) if inner else 1
    return Certificate(m, u, v, tuple(range(u)), tuple(cycles))


def read_certificate(path: str) -> Certificate:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        return _from_json(text, path)
    return _from_text(text, path)
