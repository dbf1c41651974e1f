"""Command-line surface: validate / hilbert / carry / lutz / bypass / prune.

Exit codes: 0 success, 1 input error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import dividing, domain, hilbert, io, lutz, prisms, surface

OK, INPUT_ERROR, VALIDATION_FAILURE = 0, 1, 2


def _write_graph(path: str, graph) -> None:
    lines = [f"{node} {' '.join(nbrs)}".rstrip() for node, nbrs in graph]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_validate(args) -> int:
    doc = io.load(args.document)
    failures = []
    for name, b in sorted(doc.surfaces.items()):
        report = surface.validate(b)
        status = "pass" if report.ok else "FAIL"
        print(f"surface {name}: {status}")
        for v in report.violations:
            print(f"  {v}")
            failures.append(f"surface {name}")
    for name, fd in sorted(doc.domains.items()):
        report = domain.validate_domain(fd)
        print(f"domain {name}: {'pass' if report.ok else 'FAIL'}")
        for v in report.violations:
            print(f"  {v}")
            failures.append(f"domain {name}")
    if doc.dividing_sets:
        try:
            total = dividing.tb_triangulation(list(doc.dividing_sets.values()))
            print(f"tb_triangulation: {total} over {len(doc.dividing_sets)} faces: pass")
        except dividing.InvalidFaceCertificate as exc:
            print(f"tb_triangulation: FAIL ({exc})")
            failures.append("tb")
    for tid, t in sorted(doc.tetrahedra.items()):
        if tid in doc.holonomy:
            report = prisms.validate_holonomy(doc.holonomy[tid], t)
            print(f"holonomy {tid}: {'pass' if report.ok else 'FAIL'}")
            for f in report.findings:
                if f.verdict != "ok":
                    print(f"  circuit at {f.circuit.vertex}: {f.verdict} ({f.detail})")
                    failures.append(f"holonomy {tid}")
    for name, cfg in sorted(doc.prism_configs.items()):
        problems = prisms.validate_configuration(cfg, doc.dividing_sets)
        report = prisms.admissible(cfg, doc.dividing_sets)
        ok = report and not problems
        print(f"prism configuration {name}: {'admissible' if ok else 'FAIL'}")
        for p in problems:
            print(f"  {p}")
        if not report:
            print(f"  {report.certificate}")
        if not ok:
            failures.append(f"prisms {name}")
    if args.export_graph:
        graph = []
        for name, b in sorted(doc.surfaces.items()):
            graph.extend((f"{name}/{node}", [f"{name}/{n}" for n in nbrs])
                         for node, nbrs in surface.adjacency_graph(b))
        _write_graph(args.export_graph, graph)
    return VALIDATION_FAILURE if failures else OK


def _the_surface(doc, name):
    if name:
        if name not in doc.surfaces:
            raise io.DocumentError("reference error", f"surface {name}", "not declared")
        return name, doc.surfaces[name]
    if len(doc.surfaces) != 1:
        raise io.DocumentError("reference error", "document",
                               "several surfaces declared; pass --surface")
    return next(iter(doc.surfaces.items()))


def cmd_hilbert(args) -> int:
    doc = io.load(args.document)
    name, b = _the_surface(doc, args.surface)
    system = surface.switch_system(b)
    gens = hilbert.minimal_generators(system)
    print(f"surface {name}: {len(gens)} minimal generators")
    for u in gens.basis:
        print("  " + ",".join(str(x) for x in u))
    if args.oracle_bound is not None:
        oracle = hilbert.brute_force_minimals(system, args.oracle_bound)
        match = tuple(sorted(oracle)) == gens.basis
        print(f"oracle check at bound {args.oracle_bound}: "
              f"{'pass' if match else 'FAIL'}")
        if not match:
            return VALIDATION_FAILURE
    return OK


def cmd_carry(args) -> int:
    doc = io.load(args.document)
    name, b = _the_surface(doc, args.surface)
    w = doc.weight_vector(args.weight, name)
    carried = surface.carried_surface(b, w)
    print(f"surface {name} weight {','.join(str(x) for x in w)}: "
          f"{len(carried.components)} components, "
          f"chi {carried.euler_char}, fully carried: "
          f"{surface.fully_carried(b, w)}")
    for c in carried.components:
        print(f"  component {c.index}: chi {c.euler_char}, "
              f"{'orientable' if c.orientable else 'non-orientable'}, "
              f"{c.classification.value}")
    if args.export_graph:
        _write_graph(args.export_graph, surface.carried_adjacency_graph(carried))
    return OK


def cmd_lutz(args) -> int:
    doc = io.load(args.document)
    name, b = _the_surface(doc, args.surface)
    system = surface.switch_system(b)
    gens = hilbert.minimal_generators(system)
    infos = lutz.classify_generators(b, gens)
    for info in infos:
        print(f"generator {info.index} {','.join(str(x) for x in info.weight)}: "
              f"{info.classification.value}")
    base = doc.weight_vector(args.base, name) if args.base else (0,) * len(b.sectors)
    if args.action == "plan":
        target = doc.weight_vector(args.target, name)
        try:
            plan = lutz.plan_for(target, base, infos, base_label=args.base or "zero")
        except lutz.RebaseRequired as exc:
            print(f"plan: FAIL ({exc})")
            return VALIDATION_FAILURE
        coeffs = ",".join(str(n) for n in plan.coefficients)
        print(f"plan: coefficients {coeffs} over base {plan.base}")
        print(f"parity vector: {','.join(str(p) for p in plan.parity_vector)}")
    else:
        count = 0
        for w in lutz.enumerate_structures(infos, base, args.bound):
            print("  " + ",".join(str(x) for x in w))
            count += 1
        print(f"enumerated {count} weights at bound {args.bound}")
    return OK


def _parse_site(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "strands":
        slots = tuple(int(x) for x in rest.split(","))
        if len(slots) != 3:
            raise ValueError("strands site needs three top slots")
        return dividing.SquareSite(top_slots=slots)
    if kind == "halfdisk":
        slots = tuple(int(x) for x in rest.split(","))
        if len(slots) != 2:
            raise ValueError("halfdisk site needs the two slots of the arc")
        return dividing.HalfDiskSite(arc=slots)
    raise ValueError(f"unknown site kind {kind!r}; use strands:... or halfdisk:...")


def cmd_bypass(args) -> int:
    doc = io.load(args.document)
    if args.face not in doc.dividing_sets:
        raise io.DocumentError("reference error", f"face {args.face}",
                               "no dividing set declared")
    d = doc.dividing_sets[args.face]
    site = _parse_site(args.site)
    side = dividing.Side.POSITIVE if args.side == "pos" else dividing.Side.NEGATIVE
    result = dividing.bypass_surgery(d, site, side)
    print(f"face {args.face}: {len(d.arcs)} arcs -> {len(result.arcs)} arcs")
    for arc in result.normal_form():
        print(f"  {arc[0]},{arc[1]}")
    for e in range(3):
        print(f"edge {e}: tb {dividing.tb_edge(d, e)} -> {dividing.tb_edge(result, e)}")
    return OK


def cmd_prune(args) -> int:
    doc = io.load(args.document)
    names = [args.ensemble] if args.ensemble else sorted(doc.ensembles)
    if not names:
        raise io.DocumentError("reference error", "document", "no ensembles declared")
    for name in names:
        if name not in doc.ensembles:
            raise io.DocumentError("reference error", f"ensemble {name}", "not declared")
        dname, structures = doc.ensembles[name]
        fd = doc.domains[dname]
        if args.cap is not None:
            cap = Fraction(args.cap)
            for x in structures:
                for s in sorted(fd.boundary_sectors):
                    if not x.angle[s] < cap:
                        print(f"ensemble {name}: FAIL (structure {x.label!r} has angle "
                              f"{x.angle[s]} on boundary sector {s}, cap {cap})")
                        return VALIDATION_FAILURE
        results = domain.prune_to_closed(fd, structures)
        print(f"ensemble {name} on domain {dname}: {len(results)} terminal classes")
        for i, (dom, xs) in enumerate(results):
            nsec = len(dom.quotient.sectors)
            print(f"  class {i}: {nsec} sectors, boundaryless: "
                  f"{not dom.boundary_sectors}, structures: "
                  f"{','.join(x.label for x in xs) or '-'}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bsurf",
                                description="Exact branched-surface calculus")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="run every validator in the document")
    v.add_argument("document")
    v.add_argument("--export-graph")
    v.set_defaults(func=cmd_validate)

    h = sub.add_parser("hilbert", help="minimal generators of the switch cone")
    h.add_argument("document")
    h.add_argument("--surface")
    h.add_argument("--oracle-bound", type=int)
    h.set_defaults(func=cmd_hilbert)

    c = sub.add_parser("carry", help="carried surface report for a weight")
    c.add_argument("document")
    c.add_argument("--surface")
    c.add_argument("--weight", required=True)
    c.add_argument("--export-graph")
    c.set_defaults(func=cmd_carry)

    l = sub.add_parser("lutz", help="twisting plans and enumeration")
    l.add_argument("action", choices=("plan", "enumerate"))
    l.add_argument("document")
    l.add_argument("--surface")
    l.add_argument("--base")
    l.add_argument("--target")
    l.add_argument("--bound", type=int, default=0)
    l.set_defaults(func=cmd_lutz)

    bp = sub.add_parser("bypass", help="bypass surgery on a face")
    bp.add_argument("document")
    bp.add_argument("--face", required=True)
    bp.add_argument("--site", required=True,
                    help="strands:t1,t2,t3 or halfdisk:a,b")
    bp.add_argument("--side", choices=("pos", "neg"), default="pos")
    bp.set_defaults(func=cmd_bypass)

    pr = sub.add_parser("prune", help="prune ensembles to boundaryless quotients")
    pr.add_argument("document")
    pr.add_argument("--ensemble")
    pr.add_argument("--cap")
    pr.set_defaults(func=cmd_prune)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except io.DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
