#!/usr/bin/env python3
"""Regenerate the shipped example documents under documents/."""

from __future__ import annotations

import sys
from pathlib import Path

from bsurf import domain, fixtures, io


def three_sheets_doc() -> io.ComplexDocument:
    doc = io.ComplexDocument()
    doc.surfaces["three-sheets"] = fixtures.three_sheets_surface()
    doc.domains["three-slabs"] = fixtures.three_sheets_domain()
    doc.weights["tab-a"] = ("three-sheets", (1, 1, 0))
    doc.weights["tab-b"] = ("three-sheets", (1, 0, 1))
    doc.weights["full"] = ("three-sheets", (2, 1, 1))
    fd = doc.domains["three-slabs"]
    base = fixtures.base_structure(fd)
    doc.ensembles["adjusted"] = ("three-slabs", (
        base,
        domain.structure_from_weight(base, (1, 1, 0), label="tab-a-twist"),
        domain.structure_from_weight(base, (2, 1, 1), label="full-twist"),
    ))
    return doc


def theta_doc() -> io.ComplexDocument:
    doc = io.ComplexDocument()
    doc.surfaces["theta"] = fixtures.theta_surface()
    doc.surfaces["theta-twisted"] = fixtures.theta_surface(twist=True)
    doc.weights["u1"] = ("theta", (0, 1, 1))
    doc.weights["u2"] = ("theta", (1, 0, 1))
    doc.weights["both"] = ("theta", (1, 1, 2))
    doc.weights["klein"] = ("theta-twisted", (1, 0, 1))
    return doc


def complex_doc() -> io.ComplexDocument:
    from bsurf.dividing import classify_pieces
    from bsurf.prisms import Prism, PrismConfiguration, PrismSelection, VerticalFace

    doc = io.ComplexDocument()
    t, models = fixtures.simple_tetrahedron(4, tet="G")
    doc.tetrahedra["G"] = t
    for fid in sorted(models):
        d = fixtures.stack_face(2, 2, 2, face=fid)
        doc.faces[fid] = d.face
        doc.dividing_sets[fid] = d
    doc.holonomy["G"] = fixtures.holonomy_all_minus_one(t)
    vfs = []
    for fid in t.faces[:2]:
        rep = classify_pieces(doc.dividing_sets[fid])
        pair, chain = sorted(rep.stacks.items())[0]
        chords = sorted({tuple(sorted(c)) for piece in chain for c in piece.chords})
        vfs.append(VerticalFace(face=fid, bottom=chords[0], top=chords[-1]))
    doc.prism_configs["corner"] = PrismConfiguration(
        selections={"G": PrismSelection(corners=frozenset({"s1"}))},
        prisms={"G": (Prism(kind="corner:s1", vertical_faces=tuple(vfs)),)})
    doc.surfaces["theta"] = fixtures.theta_surface()
    doc.domains["theta-domain"] = fixtures.theta_domain(boundary=(0,))
    fd = doc.domains["theta-domain"]
    base = fixtures.base_structure(fd)
    doc.ensembles["pipeline"] = ("theta-domain", (
        base,
        domain.structure_from_weight(base, (0, 1, 1), label="once"),
        domain.structure_from_weight(base, (0, 2, 2), label="twice"),
    ))
    return doc


def main() -> int:
    out = Path(__file__).resolve().parent.parent / "documents"
    out.mkdir(exist_ok=True)
    io.save(three_sheets_doc(), out / "three_sheets.json")
    io.save(theta_doc(), out / "theta.json")
    io.save(complex_doc(), out / "complex.json")
    for p in sorted(out.glob("*.json")):
        print(f"wrote {p}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
