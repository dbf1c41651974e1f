"""Fibered domains, angle functions and the pruning procedure.

The domain is presented through its interval-fibration quotient: a
branched surface, per-sector boundary flags, and the vertical boundary
annuli with their concavity data.  Structures tangent to the fibration
are recorded by their total rotation angle per sector, in half-turn
units and exact rationals; integer-full-turn differences against a base
structure are the weight vectors of the surface module.

Pruning deletes the sector closures through a bounded-angle boundary
point and partitions a structure ensemble by the finitely many angle
values on the deleted sectors; iterating at boundary sectors shrinks
the quotient to a boundaryless branched surface or to nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .surface import BranchedSurface, Sector, ValidationReport, Violation, validate


@dataclass(frozen=True)
class VerticalAnnulus:
    """One component of the vertical boundary: an annulus over branch arcs.

    ``arcs`` lists the branch arcs its quotient image covers; the two
    concavity flags are per boundary circle.  Fully concave annuli map
    onto the singular locus; any other annulus runs along the boundary
    of the quotient and covers no branch arc.
    """

    index: int
    arcs: tuple[int, ...] = ()
    concave: tuple[bool, bool] = (True, True)

    @property
    def fully_concave(self) -> bool:
        return all(self.concave)


@dataclass(frozen=True)
class FiberedDomain:
    quotient: BranchedSurface
    vertical_annuli: tuple[VerticalAnnulus, ...] = ()
    boundary_sectors: frozenset = frozenset()
    name: str = ""


def validate_domain(fd: FiberedDomain) -> ValidationReport:
    bad: list[Violation] = []
    base = validate(fd.quotient)
    bad.extend(base.violations)
    narcs = len(fd.quotient.branch_arcs)
    nsec = len(fd.quotient.sectors)
    coverage: dict[int, int] = {}
    covered_by_concave: set[int] = set()
    for ann in fd.vertical_annuli:
        for a in ann.arcs:
            if not 0 <= a < narcs:
                bad.append(Violation("dangling arc reference", f"annulus {ann.index}",
                                     f"arc {a} does not exist"))
                continue
            coverage[a] = coverage.get(a, 0) + 1
            if ann.fully_concave:
                covered_by_concave.add(a)
        if ann.arcs and not ann.fully_concave:
            bad.append(Violation("concavity", f"annulus {ann.index}",
                                 "an annulus covering branch arcs must be concave "
                                 "along both boundary circles"))
    for a, n in coverage.items():
        if n > 2:
            bad.append(Violation("fiber-crossing", f"arc {a}",
                                 f"covered by {n} vertical annuli; a fiber may cross "
                                 "the vertical boundary at most twice"))
    for a in range(narcs):
        if a not in covered_by_concave:
            bad.append(Violation("singular-locus", f"arc {a}",
                                 "branch arcs must be the image of a concave "
                                 "vertical component"))
    for s in fd.boundary_sectors:
        if not 0 <= s < nsec:
            bad.append(Violation("dangling sector reference", "boundary markers",
                                 f"sector {s} does not exist"))
    return ValidationReport(ok=not bad, violations=tuple(bad))


def quotient(fd: FiberedDomain) -> BranchedSurface:
    """The branched surface underlying the domain, after checking the axioms."""
    report = validate_domain(fd)
    if not report.ok:
        raise ValueError("invalid fibered domain: "
                         + "; ".join(str(v) for v in report.violations))
    return fd.quotient


# ---------------------------------------------------------------------------
# Adjusted structures


@dataclass(frozen=True)
class AngleFunction:
    """Total rotation per sector, in half-turns (value a means a * pi)."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        for i, v in enumerate(self.values):
            if v <= 0:
                raise ValueError(f"angle on sector {i} must be positive, got {v}")

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self):
        return len(self.values)


def make_angles(values: Sequence) -> AngleFunction:
    return AngleFunction(values=tuple(Fraction(v) for v in values))


@dataclass(frozen=True)
class AdjustedStructure:
    domain: FiberedDomain
    angle: AngleFunction
    label: str = ""

    def __post_init__(self):
        b = self.domain.quotient
        if len(self.angle) != len(b.sectors):
            raise ValueError("angle table length must match the sector count")


def check_adjacency(base: AdjustedStructure, other: AdjustedStructure) -> None:
    """Angle differences must satisfy the switch relations across every arc."""
    b = base.domain.quotient
    diff = [o - a for o, a in zip(other.angle.values, base.angle.values)]
    for arc in b.branch_arcs:
        lhs = diff[arc.merged_sector]
        rhs = diff[arc.upper_sector] + diff[arc.lower_sector]
        if lhs != rhs:
            raise ValueError(
                f"adjacency violated at arc {arc.index}: merged offset {lhs} != {rhs}")


def weight_of(x: AdjustedStructure, base: AdjustedStructure) -> tuple[int, ...]:
    """Integer weight (x - base) / full turn; rejects fractional differences."""
    if x.domain is not base.domain and x.domain != base.domain:
        raise ValueError("structures live on different domains")
    weights = []
    for i, (ax, a0) in enumerate(zip(x.angle.values, base.angle.values)):
        diff = ax - a0
        w = diff / 2
        if w.denominator != 1:
            raise ValueError(
                f"sector {i}: angle difference {diff} half-turns is not a whole "
                "number of full turns; the structures are not adjusted to the same base")
        weights.append(int(w))
    check_adjacency(base, x)
    b = base.domain.quotient
    for arc in b.branch_arcs:
        assert weights[arc.merged_sector] == weights[arc.upper_sector] + weights[arc.lower_sector]
    for i, w in enumerate(weights):
        assert 2 * w > -base.angle[i]
    return tuple(weights)


def structure_from_weight(base: AdjustedStructure, w: Sequence[int],
                          label: str = "") -> AdjustedStructure:
    """Inverse of weight_of: angles base + full turn * w."""
    b = base.domain.quotient
    w = tuple(int(x) for x in w)
    if len(w) != len(b.sectors):
        raise ValueError("weight length must match the sector count")
    for arc in b.branch_arcs:
        if w[arc.merged_sector] != w[arc.upper_sector] + w[arc.lower_sector]:
            raise ValueError(f"weight violates the switch equation at arc {arc.index}")
    values = []
    for i, (a0, wi) in enumerate(zip(base.angle.values, w)):
        v = a0 + 2 * wi
        if v <= 0:
            raise ValueError(f"sector {i}: angle {v} half-turns would not be positive")
        values.append(v)
    return AdjustedStructure(domain=base.domain, angle=AngleFunction(tuple(values)),
                             label=label or f"{base.label}+w")


# ---------------------------------------------------------------------------
# Pruning


@dataclass(frozen=True)
class PruneClass:
    removed_angles: tuple[Fraction, ...]
    structures: tuple[AdjustedStructure, ...]


@dataclass(frozen=True)
class PruneResult:
    domain: FiberedDomain
    removed_sectors: tuple[int, ...]
    classes: tuple[PruneClass, ...]


def _restrict_surface(b: BranchedSurface, removed: set[int]):
    """Drop sector closures: the sectors, their arcs, orphaned triple points."""
    keep_sectors = [s for s in b.sectors if s.index not in removed]
    old_to_new = {s.index: i for i, s in enumerate(keep_sectors)}
    dead_arcs = {a.index for a in b.branch_arcs
                 if removed & {a.merged_sector, a.upper_sector, a.lower_sector}}
    # A triple point dies with either of its arcs, and an arc anchored at a
    # dead triple point dies with it (its closure met the removed closures).
    while True:
        dead_tps = {t.index for t in b.triple_points
                    if any(a in dead_arcs for a in t.arcs)}
        more = {a.index for a in b.branch_arcs
                if not a.is_closed and a.index not in dead_arcs
                and any(t in dead_tps for t in a.endpoints)}
        if not more:
            break
        dead_arcs |= more
    keep_arcs = [a for a in b.branch_arcs if a.index not in dead_arcs]
    arc_to_new = {a.index: i for i, a in enumerate(keep_arcs)}
    keep_tps = [t for t in b.triple_points
                if all(arc in arc_to_new for arc in t.arcs)]
    tp_to_new = {t.index: i for i, t in enumerate(keep_tps)}

    freed: set[int] = set()
    new_sectors = []
    for s in keep_sectors:
        cycles = []
        for cycle in s.boundary_cycles:
            kept = tuple(replace(r, arc=arc_to_new[r.arc])
                         for r in cycle if r.arc in arc_to_new)
            if len(kept) < len(cycle):
                freed.add(s.index)
            if kept:
                cycles.append(kept)
        new_sectors.append(Sector(index=old_to_new[s.index], euler_char=s.euler_char,
                                  boundary_cycles=tuple(cycles), orientable=s.orientable,
                                  name=s.name))
    new_arcs = tuple(
        replace(a, index=arc_to_new[a.index],
                merged_sector=old_to_new[a.merged_sector],
                upper_sector=old_to_new[a.upper_sector],
                lower_sector=old_to_new[a.lower_sector],
                endpoints=(a.endpoints if a.is_closed
                           else (tp_to_new[a.endpoints[0]], tp_to_new[a.endpoints[1]])))
        for a in keep_arcs)
    new_tps = tuple(
        replace(t, index=tp_to_new[t.index],
                arcs=(arc_to_new[t.arcs[0]], arc_to_new[t.arcs[1]]))
        for t in keep_tps)
    new_surface = BranchedSurface(sectors=tuple(new_sectors), branch_arcs=new_arcs,
                                  triple_points=new_tps, name=b.name)
    return new_surface, old_to_new, arc_to_new, freed


def prune(fd: FiberedDomain, ensemble: Sequence[AdjustedStructure],
          at: Sequence[int], cap: Fraction) -> PruneResult:
    """Delete the sector closures through a boundary point with angles below cap.

    The ensemble splits into classes by the angle values on the removed
    sectors; each class is re-based on the smaller domain.
    """
    removed = set(int(s) for s in at)
    if not removed:
        raise ValueError("prune requires at least one sector to remove")
    for s in removed:
        if not 0 <= s < len(fd.quotient.sectors):
            raise ValueError(f"sector {s} does not exist")
    cap = Fraction(cap)
    for x in ensemble:
        for s in removed:
            if not x.angle[s] < cap:
                raise ValueError(
                    f"structure {x.label!r}: angle {x.angle[s]} on sector {s} "
                    f"is not below the cap {cap}")

    new_surface, old_to_new, arc_to_new, freed = _restrict_surface(fd.quotient, removed)
    new_annuli = []
    for ann in fd.vertical_annuli:
        if all(a in arc_to_new for a in ann.arcs):
            new_annuli.append(replace(ann, index=len(new_annuli),
                                      arcs=tuple(arc_to_new[a] for a in ann.arcs)))
    new_boundary = {old_to_new[s] for s in fd.boundary_sectors
                    if s in old_to_new}
    new_boundary |= {old_to_new[s] for s in freed}
    new_domain = FiberedDomain(quotient=new_surface,
                               vertical_annuli=tuple(new_annuli),
                               boundary_sectors=frozenset(new_boundary),
                               name=fd.name)

    removed_sorted = tuple(sorted(removed))
    keep = [s.index for s in fd.quotient.sectors if s.index not in removed]
    buckets: dict[tuple, list[AdjustedStructure]] = {}
    for x in ensemble:
        key = tuple(x.angle[s] for s in removed_sorted)
        rebased = AdjustedStructure(
            domain=new_domain,
            angle=AngleFunction(tuple(x.angle[s] for s in keep)),
            label=x.label)
        buckets.setdefault(key, []).append(rebased)
    classes = tuple(PruneClass(removed_angles=key, structures=tuple(v))
                    for key, v in sorted(buckets.items()))
    return PruneResult(domain=new_domain, removed_sectors=removed_sorted, classes=classes)


def prune_to_closed(fd: FiberedDomain,
                    ensemble: Sequence[AdjustedStructure]) -> list[tuple[FiberedDomain, tuple[AdjustedStructure, ...]]]:
    """Iterate prune at boundary sectors until no boundary remains.

    Site choice: lowest-index boundary sector first.  The cap for each
    step is inferred from the (finite) ensemble, every boundary point
    having bounded angles.  The sector count strictly decreases, so at
    most as many steps run as there are sectors; the empty domain is a
    legal terminal state.
    """
    results: list[tuple[FiberedDomain, tuple[AdjustedStructure, ...]]] = []
    work = [(fd, tuple(ensemble))]
    while work:
        domain, structures = work.pop()
        if not domain.boundary_sectors or not domain.quotient.sectors:
            results.append((domain, structures))
            continue
        site = min(domain.boundary_sectors)
        if structures:
            cap = max(x.angle[site] for x in structures) + 1
        else:
            cap = Fraction(1)
        res = prune(domain, structures, at=[site], cap=cap)
        if res.classes:
            for cls in res.classes:
                work.append((res.domain, cls.structures))
        else:
            work.append((res.domain, ()))
    return sorted(results, key=lambda r: (r[0].name, len(r[1])))
