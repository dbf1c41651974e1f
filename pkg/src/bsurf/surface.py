"""Branched surfaces, switch systems and carried surfaces.

A branched surface is stored combinatorially: sectors (the regular
strata, each a compact surface-with-corners whose Euler characteristic
and orientability are declared), branch arcs (the smooth pieces of the
singular locus, each with a single-sheet side and two merging sheets)
and triple points (transverse crossings of two branch arcs).

Weights are nonnegative integers per sector subject to the switch
equation at every branch arc: the single-sheet side carries the sum of
the two merging stacks.  A weight vector determines a carried surface,
assembled here as an explicit cell complex: ``w[i]`` parallel copies of
sector ``i``, glued stack-to-stack along branch arcs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class Side(str, Enum):
    """Which side of a branch arc a sector boundary edge occupies."""

    MERGED = "merged"   # single-sheet side (positive side of the branch direction)
    UPPER = "upper"     # first merging sheet
    LOWER = "lower"     # second merging sheet


CLOSED = "closed"


@dataclass(frozen=True)
class CycleRef:
    """One boundary edge of a sector, lying along a branch arc.

    ``along`` is +1 if the boundary cycle traverses the arc from
    endpoint 0 to endpoint 1, -1 otherwise (irrelevant for closed arcs).
    """

    arc: int
    side: Side
    along: int = 1

    def __post_init__(self):
        if self.along not in (1, -1):
            raise ValueError("along must be +1 or -1")


@dataclass(frozen=True)
class Sector:
    index: int
    euler_char: int
    boundary_cycles: tuple[tuple[CycleRef, ...], ...] = ()
    orientable: bool = True
    name: str = ""


@dataclass(frozen=True)
class BranchArc:
    """A smooth piece of the branch locus.

    ``merged_sector`` lies on the single-sheet side; ``upper_sector``
    and ``lower_sector`` are the two merging sheets (self-incidence is
    legal and kept per side).  ``endpoints`` is either ``CLOSED`` for an
    embedded circle or a pair of triple-point ids; a loop based at one
    triple point repeats the id.  ``reversed_upper``/``reversed_lower``
    record whether the transverse co-orientation flips when the upper
    (resp. lower) stack continues into the merged stack.
    """

    index: int
    merged_sector: int
    upper_sector: int
    lower_sector: int
    endpoints: object = CLOSED
    reversed_upper: bool = False
    reversed_lower: bool = False

    @property
    def is_closed(self) -> bool:
        return self.endpoints == CLOSED

    def endpoint(self, end: int) -> int:
        if self.is_closed:
            raise ValueError(f"arc {self.index} is closed and has no endpoints")
        return self.endpoints[end]


@dataclass(frozen=True)
class TriplePoint:
    index: int
    arcs: tuple[int, int]


@dataclass(frozen=True)
class BranchedSurface:
    sectors: tuple[Sector, ...]
    branch_arcs: tuple[BranchArc, ...]
    triple_points: tuple[TriplePoint, ...] = ()
    name: str = ""

    @property
    def num_sectors(self) -> int:
        return len(self.sectors)


@dataclass(frozen=True)
class Violation:
    rule: str
    location: str
    detail: str

    def __str__(self):
        return f"[{self.rule}] at {self.location}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()

    def __bool__(self):
        return self.ok


def _sector_refs(b: BranchedSurface) -> dict[tuple[int, Side], list[tuple[int, int, int]]]:
    """Map (arc, side) -> list of (sector, cycle index, position) using it."""
    refs: dict[tuple[int, Side], list[tuple[int, int, int]]] = {}
    for sec in b.sectors:
        for ci, cycle in enumerate(sec.boundary_cycles):
            for pos, ref in enumerate(cycle):
                refs.setdefault((ref.arc, ref.side), []).append((sec.index, ci, pos))
    return refs


def validate(b: BranchedSurface) -> ValidationReport:
    """Check the structural invariants; failures are reported, not raised."""
    bad: list[Violation] = []
    nsec = len(b.sectors)
    arc_ids = {a.index for a in b.branch_arcs}
    tp_ids = {t.index for t in b.triple_points}

    for i, sec in enumerate(b.sectors):
        if sec.index != i:
            bad.append(Violation("sector-index", f"sector {sec.index}", f"expected index {i}"))
    for i, arc in enumerate(b.branch_arcs):
        if arc.index != i:
            bad.append(Violation("arc-index", f"arc {arc.index}", f"expected index {i}"))
        for role, s in (("merged", arc.merged_sector), ("upper", arc.upper_sector),
                        ("lower", arc.lower_sector)):
            if not 0 <= s < nsec:
                bad.append(Violation("dangling sector reference", f"arc {arc.index}",
                                     f"{role} sector {s} does not exist"))
        if not arc.is_closed:
            if (not isinstance(arc.endpoints, (tuple, list))) or len(arc.endpoints) != 2:
                bad.append(Violation("arc-endpoints", f"arc {arc.index}",
                                     "endpoints must be 'closed' or a pair of triple points"))
            else:
                for t in arc.endpoints:
                    if t not in tp_ids:
                        bad.append(Violation("dangling triple-point reference",
                                             f"arc {arc.index}", f"triple point {t} does not exist"))
    for tp in b.triple_points:
        incident = {a.index for a in b.branch_arcs
                    if not a.is_closed and tp.index in a.endpoints}
        if set(tp.arcs) != incident or len(set(tp.arcs)) != 2:
            bad.append(Violation("triple-point-arcs", f"triple point {tp.index}",
                                 f"must be an endpoint of exactly two distinct arcs, got {sorted(incident)}"))

    # Slot coverage: each arc side is occupied by exactly one boundary edge,
    # and it belongs to the sector the arc declares for that side.
    refs = _sector_refs(b)
    for sec in b.sectors:
        for ci, cycle in enumerate(sec.boundary_cycles):
            for pos, ref in enumerate(cycle):
                if ref.arc not in arc_ids:
                    bad.append(Violation("dangling arc reference",
                                         f"sector {sec.index} cycle {ci}",
                                         f"arc {ref.arc} does not exist"))
    if not bad:
        for arc in b.branch_arcs:
            for side, owner in ((Side.MERGED, arc.merged_sector),
                                (Side.UPPER, arc.upper_sector),
                                (Side.LOWER, arc.lower_sector)):
                users = refs.get((arc.index, side), [])
                if len(users) != 1:
                    bad.append(Violation("arc-side-coverage", f"arc {arc.index} {side.value}",
                                         f"expected exactly one boundary edge, got {len(users)}"))
                elif users[0][0] != owner:
                    bad.append(Violation("arc-side-owner", f"arc {arc.index} {side.value}",
                                         f"occupied by sector {users[0][0]}, declared {owner}"))
        # Corner consistency: consecutive edges of a cycle must meet at a
        # common triple point (closed arcs cannot share a cycle with others).
        for sec in b.sectors:
            for ci, cycle in enumerate(sec.boundary_cycles):
                closed_refs = [r for r in cycle if b.branch_arcs[r.arc].is_closed]
                if closed_refs and len(cycle) != 1:
                    bad.append(Violation("cycle-closed-arc", f"sector {sec.index} cycle {ci}",
                                         "a closed arc must form a whole boundary cycle"))
                    continue
                if closed_refs:
                    continue
                for pos, ref in enumerate(cycle):
                    nxt = cycle[(pos + 1) % len(cycle)]
                    a, an = b.branch_arcs[ref.arc], b.branch_arcs[nxt.arc]
                    leave = a.endpoint(1 if ref.along == 1 else 0)
                    enter = an.endpoint(0 if nxt.along == 1 else 1)
                    if leave != enter:
                        bad.append(Violation("corner-mismatch",
                                             f"sector {sec.index} cycle {ci} position {pos}",
                                             f"arc {ref.arc} ends at {leave}, arc {nxt.arc} starts at {enter}"))

    return ValidationReport(ok=not bad, violations=tuple(bad))


def incidence_components(b: BranchedSurface) -> tuple[frozenset, ...]:
    """Connected components of the sector/arc incidence graph.

    Components are implicit in the data; each one is connected by
    construction, so validation has nothing to enforce here.
    """
    adj: dict[int, set[int]] = {s.index: set() for s in b.sectors}
    for arc in b.branch_arcs:
        trio = {arc.merged_sector, arc.upper_sector, arc.lower_sector}
        for u, v in itertools.combinations(sorted(trio), 2):
            adj[u].add(v)
            adj[v].add(u)
    out = []
    seen: set[int] = set()
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        out.append(frozenset(comp))
    return tuple(out)


# ---------------------------------------------------------------------------
# Switch system


def switch_system(b: BranchedSurface):
    """Integer relation matrix of the switch equations, one row per arc.

    Row for an arc merging sectors j, k into i reads x_i - x_j - x_k = 0;
    a self-incident merging sheet contributes coefficient 2.
    """
    from .hilbert import ConeSystem

    report = validate(b)
    if not report.ok:
        raise ValueError("switch_system requires a valid branched surface: "
                         + "; ".join(str(v) for v in report.violations))
    rows = []
    for arc in b.branch_arcs:
        row = [0] * len(b.sectors)
        row[arc.merged_sector] += 1
        row[arc.upper_sector] -= 1
        row[arc.lower_sector] -= 1
        rows.append(tuple(row))
    return ConeSystem(dimension=len(b.sectors), relations=tuple(rows), provenance=b)


def satisfies_switch(b: BranchedSurface, weights: Sequence[int]) -> bool:
    if len(weights) != len(b.sectors):
        return False
    if any(w < 0 for w in weights):
        return False
    for arc in b.branch_arcs:
        if weights[arc.merged_sector] != weights[arc.upper_sector] + weights[arc.lower_sector]:
            return False
    return True


def fully_carried(b: BranchedSurface, weights: Sequence[int]) -> bool:
    """True iff the carried surface meets every fiber: all weights positive."""
    if not satisfies_switch(b, weights):
        raise ValueError("weight vector violates the switch system")
    return all(w > 0 for w in weights)


# ---------------------------------------------------------------------------
# Carried surface assembly


class Classification(str, Enum):
    TORUS = "torus"
    KLEIN_BOTTLE = "klein_bottle"
    OTHER = "other"


@dataclass(frozen=True)
class Component:
    index: int
    euler_char: int
    orientable: bool
    classification: Classification


@dataclass(frozen=True)
class CarriedSurface:
    source: BranchedSurface
    weight: tuple[int, ...]
    components: tuple[Component, ...]

    @property
    def euler_char(self) -> int:
        return sum(c.euler_char for c in self.components)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def classify(euler_char: int, orientable: bool) -> Classification:
    if euler_char == 0 and orientable:
        return Classification.TORUS
    if euler_char == 0 and not orientable:
        return Classification.KLEIN_BOTTLE
    return Classification.OTHER


def _stack_pairs(arc: BranchArc, w_u: int, w_l: int):
    """Pairs (merged index k) -> ((role, copy), flip) along one arc.

    The merged stack is the upper stack followed by the lower stack,
    innermost at the single-sheet side; a reversed continuation enters
    in reversed copy order and flips the transverse co-orientation.
    """
    for k in range(w_u + w_l):
        if k < w_u:
            copy = w_u - 1 - k if arc.reversed_upper else k
            yield k, (Side.UPPER, copy), arc.reversed_upper
        else:
            j = k - w_u
            copy = w_l - 1 - j if arc.reversed_lower else j
            yield k, (Side.LOWER, copy), arc.reversed_lower


def carried_surface(b: BranchedSurface, weights: Sequence[int]) -> CarriedSurface:
    """Assemble the surface carried at a weight vector.

    Faces are (sector, copy); each branch arc glues the merged stack to
    the concatenated merging stacks.  chi is counted as interior cells
    (sum of w_i * chi_i) minus glued segment edges plus vertex classes
    over triple points; components come from a union-find over faces
    and orientability from co-orientation propagation.
    """
    weights = tuple(int(w) for w in weights)
    if not satisfies_switch(b, weights):
        raise ValueError("weight vector violates the switch system")
    if all(w == 0 for w in weights):
        raise ValueError("zero weight vector carries nothing")

    refs = _sector_refs(b)

    def ref_at(arc_id: int, side: Side) -> tuple[int, int, int]:
        return refs[(arc_id, side)][0]

    faces = _UnionFind()
    corners = _UnionFind()
    # gluing interfaces, with their co-orientation flip parity
    sign_edges: list[tuple[tuple[int, int], tuple[int, int], bool]] = []

    for sec in b.sectors:
        for c in range(weights[sec.index]):
            faces.find((sec.index, c))

    # Corner instances: (sector, copy, cycle, position, end) where end is the
    # arc endpoint index (0 or 1) of the edge at that cycle position.
    for sec in b.sectors:
        for ci, cycle in enumerate(sec.boundary_cycles):
            if len(cycle) == 1 and b.branch_arcs[cycle[0].arc].is_closed:
                continue
            for c in range(weights[sec.index]):
                for pos, ref in enumerate(cycle):
                    npos = (pos + 1) % len(cycle)
                    nref = cycle[npos]
                    leave_end = 1 if ref.along == 1 else 0
                    enter_end = 0 if nref.along == 1 else 1
                    corners.union((sec.index, c, ci, pos, leave_end),
                                  (sec.index, c, ci, npos, enter_end))

    for arc in b.branch_arcs:
        w_u = weights[arc.upper_sector]
        w_l = weights[arc.lower_sector]
        if w_u + w_l == 0:
            continue
        m_sec, m_ci, m_pos = ref_at(arc.index, Side.MERGED)
        side_ref = {Side.UPPER: ref_at(arc.index, Side.UPPER),
                    Side.LOWER: ref_at(arc.index, Side.LOWER)}
        for k, (side, copy), flip in _stack_pairs(arc, w_u, w_l):
            o_sec, o_ci, o_pos = side_ref[side]
            fm = (m_sec, k)
            fo = (o_sec, copy)
            faces.union(fm, fo)
            sign_edges.append((fm, fo, flip))
            if not arc.is_closed:
                for end in (0, 1):
                    corners.union((m_sec, k, m_ci, m_pos, end),
                                  (o_sec, copy, o_ci, o_pos, end))

    # Component membership per face copy.
    all_faces = [(s.index, c) for s in b.sectors for c in range(weights[s.index])]
    roots = sorted({faces.find(f) for f in all_faces})
    comp_of_root = {r: i for i, r in enumerate(roots)}
    comp_of_face = {f: comp_of_root[faces.find(f)] for f in all_faces}

    # chi bookkeeping per component.
    interior = [0] * len(roots)
    for s, c in all_faces:
        interior[comp_of_face[(s, c)]] += b.sectors[s].euler_char

    edges = [0] * len(roots)
    for arc in b.branch_arcs:
        if arc.is_closed:
            continue
        w_u = weights[arc.upper_sector]
        w_l = weights[arc.lower_sector]
        for k in range(w_u + w_l):
            edges[comp_of_face[(arc.merged_sector, k)]] += 1

    vertex_roots: dict = {}
    for key in list(corners.parent):
        root = corners.find(key)
        vertex_roots.setdefault(root, key)
    vertices = [0] * len(roots)
    for root in vertex_roots:
        s, c = root[0], root[1]
        vertices[comp_of_face[(s, c)]] += 1

    # Orientability: any non-orientable sector poisons its component, else
    # propagate co-orientation signs and look for a contradiction.
    nonorientable = [False] * len(roots)
    for s, c in all_faces:
        if not b.sectors[s].orientable:
            nonorientable[comp_of_face[(s, c)]] = True
    sign: dict[tuple[int, int], int] = {}
    adj: dict[tuple[int, int], list[tuple[tuple[int, int], bool]]] = {f: [] for f in all_faces}
    for fa, fb, flip in sign_edges:
        adj[fa].append((fb, flip))
        adj[fb].append((fa, flip))
    for f in all_faces:
        if f in sign:
            continue
        sign[f] = 1
        queue = [f]
        while queue:
            u = queue.pop()
            for v, flip in adj[u]:
                want = -sign[u] if flip else sign[u]
                if v not in sign:
                    sign[v] = want
                    queue.append(v)
                elif sign[v] != want:
                    nonorientable[comp_of_face[v]] = True

    components = []
    for i in range(len(roots)):
        chi = interior[i] - edges[i] + vertices[i]
        orient = not nonorientable[i]
        components.append(Component(i, chi, orient, classify(chi, orient)))
    return CarriedSurface(source=b, weight=weights, components=tuple(components))


def klein_double(b: BranchedSurface, w_klein: Sequence[int]) -> tuple[int, ...]:
    """Weight of the boundary torus of a tubular neighborhood: 2 * w.

    Rejects weights that do not carry a single Klein-bottle component.
    """
    w_klein = tuple(int(w) for w in w_klein)
    carried = carried_surface(b, w_klein)
    if not (carried.connected
            and carried.components[0].classification is Classification.KLEIN_BOTTLE):
        raise ValueError("input weight does not carry a Klein bottle component")
    doubled = tuple(2 * w for w in w_klein)
    assert satisfies_switch(b, doubled)
    return doubled


def adjacency_graph(b: BranchedSurface) -> list[tuple[str, list[str]]]:
    """Plain adjacency-list view of the branch locus (for exports)."""
    out = []
    for sec in b.sectors:
        nbrs = sorted({f"arc{ref.arc}" for cycle in sec.boundary_cycles for ref in cycle})
        out.append((f"sector{sec.index}", nbrs))
    for arc in b.branch_arcs:
        nbrs = [f"sector{arc.merged_sector}", f"sector{arc.upper_sector}",
                f"sector{arc.lower_sector}"]
        if not arc.is_closed:
            nbrs += [f"tp{t}" for t in arc.endpoints]
        out.append((f"arc{arc.index}", nbrs))
    return out


def carried_adjacency_graph(s: CarriedSurface) -> list[tuple[str, list[str]]]:
    """Adjacency list of sheet copies of a carried surface."""
    b = s.source
    weights = s.weight
    refs = _sector_refs(b)
    edges: dict[str, set[str]] = {}
    for sec in b.sectors:
        for c in range(weights[sec.index]):
            edges.setdefault(f"s{sec.index}c{c}", set())
    for arc in b.branch_arcs:
        w_u = weights[arc.upper_sector]
        w_l = weights[arc.lower_sector]
        for k, (side, copy), _flip in _stack_pairs(arc, w_u, w_l):
            o_sec = arc.upper_sector if side is Side.UPPER else arc.lower_sector
            a = f"s{arc.merged_sector}c{k}"
            bb = f"s{o_sec}c{copy}"
            edges[a].add(bb)
            edges[bb].add(a)
    return [(k, sorted(v)) for k, v in sorted(edges.items())]
