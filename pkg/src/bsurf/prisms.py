"""Tetrahedra, fibered-prism selections and combinatorial holonomy.

A tetrahedron carries four hexagon face models; each of its six edges
is shared by two of them and the slot counts along the shared edge
segment must agree.  Prism selections follow the family structure: four
corner prisms plus at most one of three diagonal prisms.  Holonomy is
the composed index shift of the order-preserving matchings transporting
singular-line endpoints around a vertex corner; the validator accepts
exactly the circuits composing to -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .dividing import (DividingSet, FaceModel, PieceKind, classify_pieces,
                       tb_triangulation)


@dataclass(frozen=True)
class EdgeData:
    """One tetrahedron edge: its two adjacent faces and their local edges."""

    index: int
    vertices: tuple[str, str]
    faces: tuple[str, str]            # face ids
    face_edges: tuple[int, int]       # local edge index (0..2) within each face


@dataclass(frozen=True)
class Tetrahedron:
    index: str
    vertices: tuple[str, str, str, str]
    faces: tuple[str, str, str, str]
    edges: tuple[EdgeData, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != 4:
            raise ValueError(f"tetrahedron {self.index}: four distinct vertices required")
        if len(self.edges) != 6:
            raise ValueError(f"tetrahedron {self.index}: six edges required")

    def faces_at(self, vertex: str) -> tuple[str, ...]:
        out = []
        for e in self.edges:
            if vertex in e.vertices:
                out.extend(e.faces)
        return tuple(sorted(set(out)))

    def edges_at(self, vertex: str) -> tuple[EdgeData, ...]:
        return tuple(e for e in self.edges if vertex in e.vertices)


def validate_tetrahedron(t: Tetrahedron, face_models: dict[str, FaceModel]) -> list[str]:
    """Face/edge incidence and slot-count agreement along shared edges."""
    problems = []
    for f in t.faces:
        if f not in face_models:
            problems.append(f"tetrahedron {t.index}: face {f} has no model")
    for e in t.edges:
        for f in e.faces:
            if f not in t.faces:
                problems.append(f"tetrahedron {t.index} edge {e.index}: face {f} not on this tetrahedron")
        if len(set(e.faces)) != 2:
            problems.append(f"tetrahedron {t.index} edge {e.index}: needs two distinct faces")
            continue
        if all(f in face_models for f in e.faces):
            n0 = len(face_models[e.faces[0]].edge_slots[e.face_edges[0]])
            n1 = len(face_models[e.faces[1]].edge_slots[e.face_edges[1]])
            if n0 != n1:
                problems.append(
                    f"tetrahedron {t.index} edge {e.index}: slot counts disagree ({n0} vs {n1})")
    return problems


# ---------------------------------------------------------------------------
# Prism selections


@dataclass(frozen=True)
class PrismSelection:
    """Subset of the five-prism family: corner prisms plus one diagonal."""

    corners: frozenset
    diagonal: Optional[int] = None    # one of 0, 1, 2 or None

    def __post_init__(self):
        if self.diagonal is not None and self.diagonal not in (0, 1, 2):
            raise ValueError("diagonal prism must be 0, 1, 2 or None")

    @property
    def size(self) -> int:
        return len(self.corners) + (0 if self.diagonal is None else 1)

    def subsumed_by(self, other: "PrismSelection") -> bool:
        if not self.corners <= other.corners:
            return False
        return self.diagonal is None or self.diagonal == other.diagonal


def enumerate_prism_selections(t: Tetrahedron) -> tuple[PrismSelection, ...]:
    """All 64 selections: 2^4 corner subsets times {none, d0, d1, d2}."""
    out = []
    verts = t.vertices
    for r in range(5):
        for corners in itertools.combinations(verts, r):
            for diag in (None, 0, 1, 2):
                out.append(PrismSelection(corners=frozenset(corners), diagonal=diag))
    return tuple(sorted(out, key=lambda s: (s.size, sorted(s.corners),
                                            -1 if s.diagonal is None else s.diagonal)))


def maximal_selections(t: Tetrahedron) -> tuple[PrismSelection, ...]:
    sels = enumerate_prism_selections(t)
    return tuple(s for s in sels if s.size == 5)


def selection_order(p: PrismSelection, q: PrismSelection) -> str:
    le, ge = p.subsumed_by(q), q.subsumed_by(p)
    if le and ge:
        return "equal"
    if le:
        return "less-equal"
    if ge:
        return "greater"
    return "incomparable"


# ---------------------------------------------------------------------------
# Prism configurations


@dataclass(frozen=True)
class VerticalFace:
    """A vertical prism face, as a span of pieces on a triangulation face.

    The quadrilateral is the region between two dividing arcs of the
    same stack; both arcs are given by their slot pairs.
    """

    face: str
    bottom: tuple[int, int]
    top: tuple[int, int]


@dataclass(frozen=True)
class Prism:
    kind: str                         # "corner:<vertex>" or "diagonal:<i>"
    vertical_faces: tuple[VerticalFace, ...]


@dataclass(frozen=True)
class PrismConfiguration:
    selections: dict
    prisms: dict                      # tet id -> tuple[Prism, ...]

    def all_prisms(self):
        for tet, prisms in sorted(self.prisms.items()):
            for p in prisms:
                yield tet, p


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    certificate: Optional[str] = None

    def __bool__(self):
        return self.admissible


def validate_configuration(config: PrismConfiguration,
                           dividing: dict[str, DividingSet]) -> list[str]:
    """Pairwise prism intersections: a shared vertical quadrilateral with the
    same fibration, an arc in an edge, or empty.

    Within one tetrahedron the selected prisms come from one family and are
    disjoint by construction; across tetrahedra, vertical faces on a common
    triangulation face must either coincide exactly or not overlap at all.
    """
    problems = []
    for tid, sel in config.selections.items():
        kinds = [p.kind for p in config.prisms.get(tid, ())]
        if len(kinds) != len(set(kinds)):
            problems.append(f"tetrahedron {tid}: duplicate prism kinds {sorted(kinds)}")
        if len(kinds) > sel.size:
            problems.append(f"tetrahedron {tid}: {len(kinds)} prisms exceed the "
                            f"declared selection of size {sel.size}")
    items = list(config.all_prisms())
    for i, (ta, pa) in enumerate(items):
        for tb, pb in items[i + 1:]:
            if ta == tb:
                continue
            for va in pa.vertical_faces:
                for vb in pb.vertical_faces:
                    if va.face != vb.face or va.face not in dividing:
                        continue
                    d = dividing[va.face]
                    sa, sb = _interval_span(d, va), _interval_span(d, vb)
                    if set(sa) != set(sb):
                        continue
                    overlap = all(not (sa[e][1] < sb[e][0] or sb[e][1] < sa[e][0])
                                  for e in sa)
                    if overlap and sa != sb:
                        problems.append(
                            f"prisms {pa.kind}@{ta} and {pb.kind}@{tb} overlap on "
                            f"face {va.face} without matching fibrations")
    return problems


def _stack_between(d: DividingSet, bottom, top):
    """Pieces between two arcs of one stack, or None with a reason."""
    report = classify_pieces(d)
    b, t = tuple(sorted(bottom)), tuple(sorted(top))
    for pair, chain in report.stacks.items():
        hits = [i for i, piece in enumerate(chain)
                if {b, t} & {tuple(sorted(c)) for c in piece.chords}]
        chords = {tuple(sorted(c)) for piece in chain for c in piece.chords}
        if b in chords and t in chords:
            return list(chain[min(hits):max(hits) + 1]), None
    return None, f"arcs {bottom} and {top} do not bound a run of one ordinary stack"


def admissible(config: PrismConfiguration,
               dividing: dict[str, DividingSet]) -> AdmissibilityReport:
    """Every vertical prism face must be a union of ordinary pieces off the corners."""
    for tet, prism in config.all_prisms():
        for vf in prism.vertical_faces:
            if vf.face not in dividing:
                return AdmissibilityReport(False, f"face {vf.face}: no dividing data")
            d = dividing[vf.face]
            known = {tuple(sorted(a)) for a in d.arcs}
            for arc in (vf.bottom, vf.top):
                if tuple(sorted(arc)) not in known:
                    return AdmissibilityReport(
                        False, f"face {vf.face}: arc {arc} is not a dividing component")
            pieces, why = _stack_between(d, vf.bottom, vf.top)
            if pieces is None:
                report = classify_pieces(d)
                touching = [p for p in report.pieces
                            if tuple(sorted(vf.bottom)) in {tuple(sorted(c)) for c in p.chords}
                            or tuple(sorted(vf.top)) in {tuple(sorted(c)) for c in p.chords}]
                lam = any(any(iv for iv in p.corner_intervals) for p in touching)
                where = "safety triangle" if lam else "extraordinary piece"
                return AdmissibilityReport(
                    False, f"face {vf.face}: vertical face {vf.bottom}..{vf.top} meets a {where}")
            if any(p.kind is not PieceKind.ORDINARY for p in pieces):
                return AdmissibilityReport(
                    False, f"face {vf.face}: vertical face {vf.bottom}..{vf.top} "
                           "contains an extraordinary piece")
    return AdmissibilityReport(True)


def _interval_span(d: DividingSet, vf: VerticalFace):
    """Slot interval of a vertical face on each of its two edges."""
    f = d.face
    spans = {}
    for arc in (vf.bottom, vf.top):
        for s in arc:
            e = f.edge_of(s)
            spans.setdefault(e, []).append(f.edge_slots[e].index(s))
    return {e: (min(v), max(v)) for e, v in spans.items()}


def config_order(p: PrismConfiguration, q: PrismConfiguration,
                 dividing: dict[str, DividingSet]) -> str:
    """Containment up to the slot normal form: every prism of p inside one of q."""

    def le(c1: PrismConfiguration, c2: PrismConfiguration) -> bool:
        for tet, prism in c1.all_prisms():
            others = c2.prisms.get(tet, ())
            candidates = [o for o in others if o.kind == prism.kind]
            hit = False
            for o in candidates:
                if _prism_inside(prism, o, dividing):
                    hit = True
                    break
            if not hit:
                return False
        return True

    a, b = le(p, q), le(q, p)
    if a and b:
        return "equal"
    if a:
        return "less-equal"
    if b:
        return "greater"
    return "incomparable"


def _prism_inside(p: Prism, q: Prism, dividing) -> bool:
    if len(p.vertical_faces) != len(q.vertical_faces):
        return False
    for vf_p, vf_q in zip(sorted(p.vertical_faces, key=lambda v: v.face),
                          sorted(q.vertical_faces, key=lambda v: v.face)):
        if vf_p.face != vf_q.face:
            return False
        d = dividing[vf_p.face]
        sp, sq = _interval_span(d, vf_p), _interval_span(d, vf_q)
        if set(sp) != set(sq):
            return False
        for e in sp:
            (alo, ahi), (blo, bhi) = sp[e], sq[e]
            if not (blo <= alo and ahi <= bhi):
                return False
    return True


def tb_aggregate(dividing: dict[str, DividingSet]) -> int:
    """Complex-level total twisting number; delegates to the face calculus."""
    return tb_triangulation([dividing[fid] for fid in sorted(dividing)])


@dataclass(frozen=True)
class CoverageReport:
    """Pieces left outside the configuration, against tunable thresholds.

    The bounds on outside pieces and on the minimum stack thickness per
    vertical face are existence constants without stated values, so they
    are report inputs rather than constants.
    """

    outside_pieces: int
    thin_faces: tuple[tuple[str, int], ...]
    max_outside: int
    min_pieces_per_face: int

    @property
    def within_bounds(self) -> bool:
        return self.outside_pieces <= self.max_outside and not self.thin_faces


def coverage_report(config: PrismConfiguration, dividing: dict[str, DividingSet],
                    max_outside: int = 64, min_pieces_per_face: int = 20) -> CoverageReport:
    covered: dict[str, set] = {}
    thin = []
    for tet, prism in config.all_prisms():
        for vf in prism.vertical_faces:
            pieces, _ = _stack_between(dividing[vf.face], vf.bottom, vf.top)
            if pieces is None:
                pieces = []
            covered.setdefault(vf.face, set()).update(p.index for p in pieces)
            if len(pieces) < min_pieces_per_face:
                thin.append((vf.face, len(pieces)))
    outside = 0
    for fid, d in dividing.items():
        report = classify_pieces(d)
        outside += report.total - len(covered.get(fid, ()))
    return CoverageReport(outside_pieces=outside, thin_faces=tuple(thin),
                          max_outside=max_outside,
                          min_pieces_per_face=min_pieces_per_face)


# ---------------------------------------------------------------------------
# Holonomy


@dataclass(frozen=True)
class Crossing:
    """Transport across one edge between two faces, as an index shift."""

    edge: int
    face_from: str
    face_to: str
    shift: int


@dataclass(frozen=True)
class HolonomyData:
    tet: str
    crossings: tuple[Crossing, ...]

    def shift(self, edge: int, face_from: str, face_to: str) -> int:
        for c in self.crossings:
            if (c.edge, c.face_from, c.face_to) == (edge, face_from, face_to):
                return c.shift
        raise KeyError(f"no matching data for edge {edge}, {face_from} -> {face_to}")


@dataclass(frozen=True)
class Circuit:
    """Corner circuit: ordered (face, edge) pairs around a vertex.

    The last edge is the measuring edge; the circuit closes iff that
    edge is also adjacent to the first face.
    """

    vertex: str
    corners: tuple[tuple[str, int], ...]


def holonomy(h: HolonomyData, circuit: Circuit, t: Tetrahedron) -> int:
    """Composed index shift of the matchings around the circuit."""
    edge_by_index = {e.index: e for e in t.edges}
    corners = circuit.corners
    last_edge = edge_by_index[corners[-1][1]]
    if corners[0][0] not in last_edge.faces:
        raise ValueError(f"circuit around {circuit.vertex} does not close up: "
                         f"edge {last_edge.index} does not return to face {corners[0][0]}")
    total = 0
    for i, (face, edge) in enumerate(corners):
        nxt_face = corners[(i + 1) % len(corners)][0]
        total += h.shift(edge, face, nxt_face)
    return total


def canonical_circuits(t: Tetrahedron) -> tuple[Circuit, ...]:
    """One corner circuit per vertex, walking the three adjacent faces."""
    out = []
    for v in t.vertices:
        faces = list(t.faces_at(v))
        edges = t.edges_at(v)
        if len(faces) != 3 or len(edges) != 3:
            continue
        corners = []
        face = faces[0]
        used = set()
        for _ in range(3):
            nxt = None
            for e in edges:
                if e.index in used or face not in e.faces:
                    continue
                other = e.faces[0] if e.faces[1] == face else e.faces[1]
                nxt = (face, e.index, other)
                break
            if nxt is None:
                break
            corners.append((nxt[0], nxt[1]))
            used.add(nxt[1])
            face = nxt[2]
        if len(corners) == 3:
            out.append(Circuit(vertex=v, corners=tuple(corners)))
    return tuple(out)


@dataclass(frozen=True)
class HolonomyFinding:
    circuit: Circuit
    value: Optional[int]
    verdict: str                      # "ok", "bennequin-violation", "non-minimal", "excluded", "incomplete"
    detail: str = ""


@dataclass(frozen=True)
class HolonomyReport:
    ok: bool
    findings: tuple[HolonomyFinding, ...]

    def __bool__(self):
        return self.ok


def validate_holonomy(h: HolonomyData, t: Tetrahedron,
                      extra_circuits: Sequence[Circuit] = ()) -> HolonomyReport:
    """Pass iff every corner circuit composes to -1.

    Zero holonomy certifies a twisting violation; other values certify
    that the triangulation was not minimal.  Circuits whose etale arc
    approaches the measuring edge twice from the same face are excluded
    and flagged.
    """
    findings = []
    circuits = list(canonical_circuits(t)) + list(extra_circuits)
    if not circuits:
        findings.append(HolonomyFinding(Circuit("", ()), None, "incomplete",
                                        "no corner circuits available"))
    for c in circuits:
        if c.corners and c.corners[0][0] == c.corners[-1][0]:
            findings.append(HolonomyFinding(c, None, "excluded",
                                            "etale arc meets the measuring edge twice "
                                            "from the same face"))
            continue
        try:
            val = holonomy(h, c, t)
        except KeyError as exc:
            findings.append(HolonomyFinding(c, None, "incomplete", str(exc)))
            continue
        if val == -1:
            findings.append(HolonomyFinding(c, val, "ok"))
        elif val == 0:
            findings.append(HolonomyFinding(c, val, "bennequin-violation",
                                            "holonomy 0 contradicts the twisting bound"))
        else:
            findings.append(HolonomyFinding(c, val, "non-minimal",
                                            f"holonomy {val} certifies a non-minimal triangulation"))
    ok = all(f.verdict == "ok" for f in findings)
    return HolonomyReport(ok=ok, findings=findings)


@dataclass(frozen=True)
class CornerTransport:
    start_index: int
    landing_index: int

    @property
    def adjacent(self) -> bool:
        return abs(self.landing_index - self.start_index) == 1


def corner_transport(h: HolonomyData, circuit: Circuit, t: Tetrahedron,
                     start_index: int, stack_sizes: Optional[dict] = None) -> CornerTransport:
    """Transport a singular-line endpoint index around a corner circuit.

    With holonomy -1 the transported endpoint lands next to its start:
    the constructive adjacency behind the prism-extension argument.
    """
    idx = start_index
    edge_by_index = {e.index: e for e in t.edges}
    corners = circuit.corners
    for i, (face, edge) in enumerate(corners):
        nxt_face = corners[(i + 1) % len(corners)][0]
        shift = h.shift(edge, face, nxt_face)
        idx += shift
        if stack_sizes is not None:
            size = stack_sizes.get((edge, nxt_face))
            if size is not None and not 0 <= idx < size:
                raise ValueError(f"index {idx} out of matching range on edge {edge}")
    return CornerTransport(start_index=start_index, landing_index=idx)
