"""Exact combinatorics of branched surfaces and their weight cones."""

from .surface import (BranchArc, BranchedSurface, CarriedSurface, Classification,
                      Component, CycleRef, Sector, Side, TriplePoint, carried_surface,
                      fully_carried, klein_double, satisfies_switch, switch_system,
                      validate)
from .hilbert import (ConeSystem, MinimalGenerators, brute_force_minimals, decompose,
                      membership, minimal_generators)
from .lutz import (GeneratorInfo, LutzPlan, RebaseRequired, classify_generators,
                   enumerate_structures, plan_for, realize)

__all__ = [name for name in dir() if not name.startswith("_")]
