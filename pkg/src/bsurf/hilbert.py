"""Minimal generators of the admissible-weight monoid.

The solution set of a switch system inside the nonnegative orthant is a
finitely generated monoid; its minimal elements under the componentwise
order form the unique generating set computed here.  The working
algorithm is the Contejean-Devie completion over exact integers; an
independent brute-force enumerator doubles as the test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class ConeSystem:
    """Homogeneous integer equality system r . x = 0, x >= 0."""

    dimension: int
    relations: tuple[tuple[int, ...], ...] = ()
    provenance: object = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be at least 1")
        for r in self.relations:
            if len(r) != self.dimension:
                raise ValueError(f"relation {r} has length {len(r)}, expected {self.dimension}")

    def residual(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(c * v for c, v in zip(row, x)) for row in self.relations)

    def holds(self, x: Sequence[int]) -> bool:
        return all(v == 0 for v in self.residual(x))


@dataclass(frozen=True)
class MinimalGenerators:
    basis: tuple[tuple[int, ...], ...]
    system: ConeSystem

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


def membership(w: Sequence[int], s: ConeSystem) -> bool:
    """True iff w is a nonnegative integer solution of the system."""
    if len(w) != s.dimension:
        raise ValueError(f"vector has length {len(w)}, expected {s.dimension}")
    return all(v >= 0 for v in w) and s.holds(w)


def _dominates(x: Sequence[int], y: Sequence[int]) -> bool:
    """x >= y componentwise."""
    return all(a >= b for a, b in zip(x, y))


def _minimal_filter(vectors) -> list[tuple[int, ...]]:
    vecs = sorted(set(vectors), key=lambda v: (sum(v), v))
    out: list[tuple[int, ...]] = []
    for v in vecs:
        if not any(_dominates(v, m) for m in out):
            out.append(v)
    return out


def minimal_generators(s: ConeSystem) -> MinimalGenerators:
    """Complete set of minimal nonzero solutions, in lexicographic order.

    Contejean-Devie completion: grow candidates from the unit vectors,
    extending t by e_i only while <A t, A e_i> < 0, collecting the
    solutions and pruning anything dominating a known solution.
    """
    d = s.dimension
    rows = [list(r) for r in s.relations]
    cols = [tuple(row[i] for row in rows) for i in range(d)]

    def residual(x):
        return tuple(sum(c * v for c, v in zip(row, x)) for row in rows)

    sols: list[tuple[int, ...]] = []
    frontier = []
    for i in range(d):
        e = tuple(1 if j == i else 0 for j in range(d))
        frontier.append(e)
    seen = set(frontier)

    while frontier:
        next_frontier = []
        for t in frontier:
            if any(_dominates(t, m) and t != m for m in sols):
                continue
            v = residual(t)
            if all(x == 0 for x in v):
                sols.append(t)
                continue
            for i in range(d):
                if sum(a * b for a, b in zip(v, cols[i])) < 0:
                    child = tuple(t[j] + (1 if j == i else 0) for j in range(d))
                    if child in seen:
                        continue
                    if any(_dominates(child, m) for m in sols):
                        continue
                    seen.add(child)
                    next_frontier.append(child)
        frontier = next_frontier

    basis = sorted(_minimal_filter(sols))
    return MinimalGenerators(basis=tuple(basis), system=s)


DEFAULT_BUDGET = 20_000_000
_CHUNK = 1 << 19


def _enumerate_solutions(s: ConeSystem, bound: int, budget: int):
    """Nonzero solutions with max entry <= bound, streamed in chunks."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    d = s.dimension
    total = (bound + 1) ** d
    if total > budget:
        raise ValueError(f"enumeration budget exceeded: {bound + 1}^{d} = {total} > {budget}")
    dims = (bound + 1,) * d
    A = np.array(s.relations, dtype=np.int64) if s.relations else None
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total))
        pts = np.stack(np.unravel_index(idx, dims), axis=1)
        if A is not None:
            pts = pts[np.all(A @ pts.T == 0, axis=0)]
        pts = pts[np.any(pts != 0, axis=1)]
        for p in pts:
            yield tuple(int(x) for x in p)


def brute_force_minimals(s: ConeSystem, bound: int,
                         budget: int = DEFAULT_BUDGET) -> tuple[tuple[int, ...], ...]:
    """Oracle: enumerate all of {0..bound}^d, filter, take minimal nonzero.

    Complete whenever every true minimal element has max entry <= bound.
    """
    return tuple(sorted(_minimal_filter(_enumerate_solutions(s, bound, budget))))


@dataclass(frozen=True)
class Decomposition:
    coefficients: tuple[int, ...]       # aligned with generators.basis
    generators: MinimalGenerators

    def recompose(self) -> tuple[int, ...]:
        d = self.generators.system.dimension
        out = [0] * d
        for n, u in zip(self.coefficients, self.generators.basis):
            for i in range(d):
                out[i] += n * u[i]
        return tuple(out)


class NotGeneratedError(ValueError):
    """Raised when a vector is not an N-combination of the given basis."""


def decompose(w: Sequence[int], g: MinimalGenerators) -> Decomposition:
    """Greedy repeated subtraction, lexicographically first subtractable.

    Always succeeds when g is the complete basis of its system; fails
    with NotGeneratedError only on user-truncated bases.
    """
    w = tuple(int(x) for x in w)
    if not membership(w, g.system):
        raise ValueError("vector is not an admissible element of the cone")
    if all(x == 0 for x in w):
        raise ValueError("decompose expects a nonzero vector")
    counts = [0] * len(g.basis)
    rem = list(w)
    while any(rem):
        for i, u in enumerate(g.basis):
            if all(r >= x for r, x in zip(rem, u)):
                counts[i] += 1
                rem = [r - x for r, x in zip(rem, u)]
                break
        else:
            raise NotGeneratedError(f"remainder {tuple(rem)} not generated by the basis")
    return Decomposition(coefficients=tuple(counts), generators=g)


def solutions_up_to(s: ConeSystem, bound: int,
                    budget: int = DEFAULT_BUDGET) -> tuple[tuple[int, ...], ...]:
    """All nonzero solutions with max entry <= bound (oracle-side helper)."""
    return tuple(_enumerate_solutions(s, bound, budget))
