"""Dividing multicurves on triangle faces, in hexagon normal form.

A face is modelled as a hexagon: three edges, each carrying an ordered
list of slots (the intersections of the dividing set with the edge away
from the corner safety triangles), and three slot-free corner triangles.
A dividing set is a perfect non-crossing matching of the slots; closed
components are unrepresentable by construction.

Bypass surgery comes in the two shapes used downstream: the interior
square rewrite (three parallel strands, coloring rotated by a quarter
turn) and the boundary half-disk excision, which removes a
boundary-parallel arc and raises the edge twisting number by one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class FaceModel:
    face: str
    edge_slots: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    oriented_ccw: bool = True

    def __post_init__(self):
        seen = set()
        for edge in self.edge_slots:
            for s in edge:
                if s in seen:
                    raise ValueError(f"slot {s} declared twice on face {self.face}")
                seen.add(s)

    @property
    def slots(self) -> tuple[int, ...]:
        return tuple(s for edge in self.edge_slots for s in edge)

    def edge_of(self, slot: int) -> int:
        for e, edge in enumerate(self.edge_slots):
            if slot in edge:
                return e
        raise KeyError(f"slot {slot} not on face {self.face}")

    def boundary_items(self) -> tuple[tuple[str, int], ...]:
        """Cyclic order around the hexagon: slots of edge k, then corner k."""
        items: list[tuple[str, int]] = []
        for e in range(3):
            items.extend(("slot", s) for s in self.edge_slots[e])
            items.append(("corner", e))
        return tuple(items)

    def positions(self) -> dict[int, int]:
        return {it[1]: i for i, it in enumerate(self.boundary_items()) if it[0] == "slot"}


def _between(a: int, b: int, x: int) -> bool:
    """x strictly between a and b going forward in the cyclic order."""
    if a < b:
        return a < x < b
    return x > a or x < b


@dataclass(frozen=True)
class DividingSet:
    face: FaceModel
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        used = []
        for a in self.arcs:
            if len(a) != 2 or a[0] == a[1]:
                raise ValueError(f"malformed arc {a}")
            used.extend(a)
        slots = self.face.slots
        if sorted(used) != sorted(slots):
            raise ValueError(f"face {self.face.face}: every slot must be used by exactly one arc")
        pos = self.face.positions()
        for (a, b), (c, d) in itertools.combinations(self.arcs, 2):
            pa, pb = pos[a], pos[b]
            inside_c = _between(pa, pb, pos[c])
            inside_d = _between(pa, pb, pos[d])
            if inside_c != inside_d:
                raise ValueError(
                    f"non-planar dividing set: arcs {(a, b)} and {(c, d)} cross")

    def arc_of(self, slot: int) -> tuple[int, int]:
        for arc in self.arcs:
            if slot in arc:
                return arc
        raise KeyError(f"slot {slot} is not matched")

    def normal_form(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(tuple(sorted(a)) for a in self.arcs))


def make_dividing_set(face: FaceModel, arcs: Iterable[Sequence[int]]) -> DividingSet:
    return DividingSet(face=face, arcs=tuple(tuple(a) for a in arcs))


# ---------------------------------------------------------------------------
# Twisting numbers


def tb_from_intersections(count: int) -> Fraction:
    """Twisting of a boundary curve from its dividing-set crossings: -count/2."""
    if count < 0:
        raise ValueError("intersection count must be nonnegative")
    return Fraction(-count, 2)


def tb_edge(d: DividingSet, edge: int) -> Fraction:
    return tb_from_intersections(len(d.face.edge_slots[edge]))


def tb_face(d: DividingSet) -> Fraction:
    return tb_from_intersections(len(d.face.slots))


class InvalidFaceCertificate(ValueError):
    """A face whose boundary twisting violates the tightness constraint."""


def tb_triangulation(faces: Sequence[DividingSet]) -> int:
    """Total twisting number: sum over faces of half the crossing count.

    Every face must satisfy tb(boundary) <= -1, i.e. carry at least one
    arc; the total is then at least the number of faces.
    """
    total = Fraction(0)
    for d in faces:
        t = tb_face(d)
        if t > -1:
            raise InvalidFaceCertificate(
                f"face {d.face.face}: tb(boundary) = {t} > -1")
        total += -t
    assert total == int(total)
    total = int(total)
    assert total >= len(faces)
    return total


# ---------------------------------------------------------------------------
# Boundary-parallel arcs


@dataclass(frozen=True)
class BoundaryParallelArc:
    arc: tuple[int, int]
    edge: int
    usable: bool


def boundary_parallel_arcs(d: DividingSet) -> tuple[BoundaryParallelArc, ...]:
    """Arcs cutting an empty half-disk off a single edge.

    Both endpoints lie on one edge with no slot between them.  On a disk
    with a connected dividing set (a single arc) the half-disk cannot be
    used to build a bypass, so that case is flagged non-usable.
    """
    f = d.face
    out = []
    single = len(d.arcs) == 1
    for arc in d.arcs:
        a, b = arc
        try:
            e = f.edge_of(a)
        except KeyError:
            continue
        if f.edge_of(b) != e:
            continue
        slots = f.edge_slots[e]
        ia, ib = slots.index(a), slots.index(b)
        if abs(ia - ib) == 1:
            out.append(BoundaryParallelArc(arc=arc, edge=e, usable=not single))
    return tuple(out)


# ---------------------------------------------------------------------------
# Bypass surgery


class Side(str, Enum):
    POSITIVE = "pos"
    NEGATIVE = "neg"


@dataclass(frozen=True)
class SquareSite:
    """Interior site: three parallel strands crossing a square.

    Each strand is given by the slot at its designated top end; the
    strand's arc supplies the bottom end.  Strand 2 must separate
    strand 1 from strand 3.
    """

    top_slots: tuple[int, int, int]


@dataclass(frozen=True)
class HalfDiskSite:
    """Boundary site at a boundary-parallel arc (half-disk excision)."""

    arc: tuple[int, int]


def _separates(chord: tuple[int, int], x: int, y: int, pos) -> bool:
    inside_x = _between(pos[chord[0]], pos[chord[1]], pos[x])
    inside_y = _between(pos[chord[0]], pos[chord[1]], pos[y])
    return inside_x != inside_y


def _site_strands(d: DividingSet, site: SquareSite):
    strands = []
    for t in site.top_slots:
        arc = d.arc_of(t)
        b = arc[1] if arc[0] == t else arc[0]
        strands.append((arc, t, b))
    arcs = [s[0] for s in strands]
    if len({tuple(sorted(a)) for a in arcs}) != 3:
        raise ValueError("site strands must be three pairwise distinct arcs")
    return strands


def _check_square(d: DividingSet, strands) -> None:
    pos = d.face.positions()
    (a1, t1, b1), (a2, t2, b2), (a3, t3, b3) = strands
    # parallel pattern t1 t2 t3 b3 b2 b1 up to rotation, others interspersed
    ring = sorted([t1, t2, t3, b3, b2, b1], key=lambda s: pos[s])
    start = ring.index(t1)
    rotated = ring[start:] + ring[:start]
    if rotated != [t1, t2, t3, b3, b2, b1]:
        raise ValueError("malformed square: strand ends are not in parallel position")
    # no other arc may separate consecutive strands
    strand_set = {tuple(sorted((t1, b1))), tuple(sorted((t2, b2))), tuple(sorted((t3, b3)))}
    for (x1, y1), (x2, y2) in (((t1, b1), (t2, b2)), ((t2, b2), (t3, b3))):
        for other in d.arcs:
            if tuple(sorted(other)) in strand_set:
                continue
            if (_separates(other, x1, x2, pos) or _separates(other, x1, y2, pos)
                    or _separates(other, y1, x2, pos) or _separates(other, y1, y2, pos)):
                raise ValueError(f"malformed square: arc {other} crosses the square region")


def bypass_surgery(d: DividingSet, site, side: Side = Side.POSITIVE) -> DividingSet:
    """Rewrite the dividing set by a bypass attachment.

    Interior squares follow the quarter-turn rule: with strands
    (t1,b1), (t2,b2), (t3,b3), attachment from the positive side
    reconnects them as (t1,t2), (b1,t3), (b2,b3); from the negative side
    as (b1,b2), (t1,b3), (t2,t3).  A half-disk site deletes its
    boundary-parallel arc together with its two slots.
    """
    if isinstance(site, HalfDiskSite):
        return _halfdisk_surgery(d, site)
    strands = _site_strands(d, site)
    _check_square(d, strands)
    (_, t1, b1), (_, t2, b2), (_, t3, b3) = strands
    old = {tuple(sorted((t1, b1))), tuple(sorted((t2, b2))), tuple(sorted((t3, b3)))}
    if side is Side.POSITIVE:
        new = [(t1, t2), (b1, t3), (b2, b3)]
    else:
        new = [(b1, b2), (t1, b3), (t2, t3)]
    arcs = [a for a in d.arcs if tuple(sorted(a)) not in old]
    arcs.extend(new)
    return DividingSet(face=d.face, arcs=tuple(arcs))


def _halfdisk_surgery(d: DividingSet, site: HalfDiskSite) -> DividingSet:
    wanted = tuple(sorted(site.arc))
    candidates = {tuple(sorted(b.arc)): b for b in boundary_parallel_arcs(d)}
    if wanted not in candidates:
        raise ValueError(f"arc {site.arc} is not a boundary-parallel half-disk site")
    gone = set(wanted)
    f = d.face
    new_face = FaceModel(
        face=f.face,
        edge_slots=tuple(tuple(s for s in edge if s not in gone) for edge in f.edge_slots),
        oriented_ccw=f.oriented_ccw)
    arcs = tuple(a for a in d.arcs if tuple(sorted(a)) != wanted)
    return DividingSet(face=new_face, arcs=arcs)


def rotated_site(d: DividingSet, site: SquareSite) -> SquareSite:
    """The same square read after a positive surgery, for the reverse move.

    Feeding the result to a negative surgery undoes the positive one.
    """
    strands = _site_strands(d, site)
    (_, t1, b1), (_, t2, b2), (_, t3, b3) = strands
    return SquareSite(top_slots=(t2, t3, b3))


# ---------------------------------------------------------------------------
# Pieces


class PieceKind(str, Enum):
    ORDINARY = "ordinary"
    EXTRAORDINARY = "extraordinary"


class PieceRole(str, Enum):
    STACK = "stack"               # member of one of the three quadrilateral stacks
    HALF_DISK = "half_disk"       # extremal half-disk (one chord, empty interval)
    CORNER = "corner"             # touches a safety triangle
    CENTRAL = "central"           # bounded by three or more chords
    HEXAGON = "hexagon"           # empty dividing set
    STRAY = "stray"               # ordinary but outside the maximal stacks


@dataclass(frozen=True)
class Piece:
    index: int
    kind: PieceKind
    role: PieceRole
    chords: tuple[tuple[int, int], ...]
    corner_intervals: tuple[tuple[int, ...], ...]
    edges: Optional[tuple[int, int]] = None   # edge pair for ordinary pieces


@dataclass(frozen=True)
class PieceReport:
    pieces: tuple[Piece, ...]
    stacks: dict
    outside: tuple[Piece, ...]

    @property
    def total(self) -> int:
        return len(self.pieces)


def _region_split(d: DividingSet):
    """Cut the hexagon along the chords; non-crossing makes this a tree.

    Returns (chords, corner intervals) per region: the bounding chords
    and, between consecutive attachments, the tuple of corner ids.
    Slots never appear inside a final region since each one anchors a
    chord.
    """
    f = d.face
    items = f.boundary_items()
    n = len(items)
    pos = f.positions()

    def split(circle: tuple, out: list):
        # circle elements: ("pos", p) boundary items or ("chord", arc)
        inner = None
        for i, el in enumerate(circle):
            if el[0] == "pos" and items[el[1]][0] == "slot":
                arc = d.arc_of(items[el[1]][1])
                q = pos[arc[0]] if pos[arc[1]] == el[1] else pos[arc[1]]
                j = circle.index(("pos", q))
                inner = (i, j, arc)
                break
        if inner is None:
            chords = tuple(el[1] for el in circle if el[0] == "chord")
            intervals = []
            if chords:
                starts = [i for i, el in enumerate(circle) if el[0] == "chord"]
                rot = circle[starts[0] + 1:] + circle[:starts[0] + 1]
                run: list = []
                for el in rot:
                    if el[0] == "chord":
                        intervals.append(tuple(items[p][1] for (_, p) in run
                                               if items[p][0] == "corner"))
                        run = []
                    else:
                        run.append(el)
            else:
                intervals.append(tuple(items[el[1]][1] for el in circle
                                       if el[0] == "pos" and items[el[1]][0] == "corner"))
            out.append((chords, tuple(intervals)))
            return
        i, j, arc = inner
        lo, hi = min(i, j), max(i, j)
        side1 = circle[lo + 1:hi] + (("chord", arc),)
        side2 = circle[hi + 1:] + circle[:lo] + (("chord", arc),)
        split(side1, out)
        split(side2, out)

    circle = tuple(("pos", p) for p in range(n))
    out: list = []
    split(circle, out)
    return out


def classify_pieces(d: DividingSet) -> PieceReport:
    """Partition the hexagon complement and identify the three stacks."""
    f = d.face
    raw = _region_split(d)
    pieces: list[Piece] = []
    for idx, (chords, intervals) in enumerate(raw):
        corners = tuple(iv for iv in intervals)
        has_corner = any(iv for iv in corners)
        if len(chords) == 0:
            pieces.append(Piece(idx, PieceKind.EXTRAORDINARY, PieceRole.HEXAGON,
                                (), corners))
        elif len(chords) == 1:
            role = PieceRole.CORNER if has_corner else PieceRole.HALF_DISK
            pieces.append(Piece(idx, PieceKind.EXTRAORDINARY, role, chords, corners))
        elif len(chords) == 2 and not has_corner:
            # corner-free intervals lie inside single edges, so the region is
            # a quadrilateral iff both chords join the same pair of edges
            (a, b), (c, dd) = chords[0], chords[1]
            edges_1 = {f.edge_of(a), f.edge_of(b)}
            edges_2 = {f.edge_of(c), f.edge_of(dd)}
            if edges_1 == edges_2 and len(edges_1) == 2:
                ed = tuple(sorted(edges_1))
                pieces.append(Piece(idx, PieceKind.ORDINARY, PieceRole.STACK,
                                    chords, corners, edges=ed))
            else:
                pieces.append(Piece(idx, PieceKind.EXTRAORDINARY, PieceRole.CENTRAL,
                                    chords, corners))
        else:
            role = PieceRole.CORNER if has_corner else PieceRole.CENTRAL
            pieces.append(Piece(idx, PieceKind.EXTRAORDINARY, role, chords, corners))

    # maximal stacks per edge pair: longest chain of ordinary pieces
    by_chord: dict[tuple[int, int], list[Piece]] = {}
    ordinary = [p for p in pieces if p.kind is PieceKind.ORDINARY]
    for p in ordinary:
        for ch in p.chords:
            by_chord.setdefault(tuple(sorted(ch)), []).append(p)
    chains: dict[int, list[Piece]] = {}
    seen: set[int] = set()
    for p in ordinary:
        if p.index in seen:
            continue
        chain = [p]
        seen.add(p.index)
        frontier = [p]
        while frontier:
            q = frontier.pop()
            for ch in q.chords:
                for r in by_chord.get(tuple(sorted(ch)), []):
                    if r.index not in seen:
                        seen.add(r.index)
                        chain.append(r)
                        frontier.append(r)
        chains[p.index] = chain

    stacks: dict[tuple[int, int], tuple[Piece, ...]] = {}
    stray: set[int] = set()
    for chain in chains.values():
        pair = chain[0].edges
        if pair in stacks and len(stacks[pair]) >= len(chain):
            stray.update(p.index for p in chain)
        else:
            if pair in stacks:
                stray.update(p.index for p in stacks[pair])
            stacks[pair] = tuple(sorted(chain, key=lambda p: p.index))

    final = []
    for p in pieces:
        if p.kind is PieceKind.ORDINARY and p.index in stray:
            p = Piece(p.index, p.kind, PieceRole.STRAY, p.chords,
                      p.corner_intervals, p.edges)
        final.append(p)
    in_stack = {p.index for chain in stacks.values() for p in chain}
    outside = tuple(p for p in final if p.index not in in_stack)
    return PieceReport(pieces=tuple(final), stacks=stacks, outside=outside)


# ---------------------------------------------------------------------------
# Extremal components


def extremal_components(d: DividingSet):
    """Per edge-end, the arc using the slot nearest that extremity.

    In hexagon normal form an endpoint can only be pushed past another
    crossing, never created or destroyed, so the outermost crossing of
    each edge end is the extremal one.  At most six in total.
    """
    f = d.face
    per_end: dict[tuple[int, int], tuple[int, int]] = {}
    arcs: set[tuple[int, int]] = set()
    for e in range(3):
        slots = f.edge_slots[e]
        if not slots:
            continue
        for end, slot in ((0, slots[0]), (1, slots[-1])):
            arc = d.arc_of(slot)
            per_end[(e, end)] = arc
            arcs.add(tuple(sorted(arc)))
    return per_end, tuple(sorted(arcs))


def edge_parallel_extremal_report(d: DividingSet):
    """Check that every boundary-parallel component hugs an edge end.

    Interior boundary-parallel arcs are certificates that the
    configuration is not minimal; the report lists them.
    """
    f = d.face
    _, extremal = extremal_components(d)
    violations = []
    for bp in boundary_parallel_arcs(d):
        if tuple(sorted(bp.arc)) not in extremal:
            violations.append(bp.arc)
    return tuple(violations)
