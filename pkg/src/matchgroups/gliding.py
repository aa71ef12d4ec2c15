"""Gliding systems, cubic sets of glides and based cubes.

A gliding system is described by its group operations plus two predicates
(is this element a glide, are two glides independent). The even-cycle system
on the power group of a hypergraph is the instance used throughout; the
generic form exists so that other systems can be checked against the same
machinery.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, NamedTuple

from . import incidence
from .incidence import EdgeSet, Hypergraph


class GlideError(ValueError):
    pass


@dataclass(frozen=True)
class GlidingSystem:
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    unit: Any
    is_glide: Callable[[Any], bool]
    independent: Callable[[Any, Any], bool]
    key: Callable[[Any], Any] = field(default=lambda g: g)
    ambient: Hypergraph | None = None

    def product(self, elements: Iterable) -> Any:
        out = self.unit
        for g in elements:
            out = self.mul(g, out)
        return out

    def glides_at(self, a, d: Iterable) -> list:
        """Glides s with sA in ``d``, ordered by key.

        Every such glide is B A^-1 for some B in ``d``, so scanning ``d`` is
        exhaustive.
        """
        inv_a = self.inv(a)
        out = []
        for b in d:
            s = self.mul(b, inv_a)
            if s != self.unit and self.is_glide(s):
                out.append(s)
        return sorted(set(out), key=self.key)


def power_group_system(h: Hypergraph, is_glide: Callable[[EdgeSet], bool]) -> GlidingSystem:
    """Power group of the edges of ``h``; glides chosen by ``is_glide``, independent iff disjoint."""
    return GlidingSystem(
        mul=lambda a, b: a * b,
        inv=lambda a: a,
        unit=h.empty,
        is_glide=lambda s: bool(s) and is_glide(s),
        independent=lambda s, t: s != t and s.isdisjoint(t),
        key=lambda s: s.key,
        ambient=h,
    )


def _is_even_cycle(s: EdgeSet) -> bool:
    if not incidence.is_cycle(s):
        return False
    return incidence.classify_cycle(s).even


def even_cycle_system(h: Hypergraph) -> GlidingSystem:
    """Even cycles as glides; independent iff they share no vertex."""
    return GlidingSystem(
        mul=lambda a, b: a * b,
        inv=lambda a: a,
        unit=h.empty,
        is_glide=_is_even_cycle,
        independent=lambda s, t: s != t and incidence.independent(s, t),
        key=lambda s: s.key,
        ambient=h,
    )


def glide(sys: GlidingSystem, a, s):
    if not sys.is_glide(s):
        raise GlideError(f"{s!r} is not a glide")
    return sys.mul(s, a)


def is_precubic(sys: GlidingSystem, s: Sequence) -> bool:
    s = list(s)
    if len(set(s)) != len(s):
        return False
    if not all(sys.is_glide(g) for g in s):
        return False
    return all(sys.independent(x, y) for x, y in combinations(s, 2))


def subset_products(sys: GlidingSystem, s: Sequence) -> list:
    """[T] for every T subset of ``s``, T running in binary counting order."""
    prods = [sys.unit]
    for g in s:
        prods = prods + [sys.mul(g, p) for p in prods]
    return prods


def is_cubic(sys: GlidingSystem, s: Sequence) -> bool:
    if not is_precubic(sys, s):
        return False
    prods = subset_products(sys, list(s))
    return len(set(map(_hashable(sys), prods))) == len(prods)


def _hashable(sys: GlidingSystem) -> Callable[[Any], Hashable]:
    return lambda g: g if isinstance(g, Hashable) else sys.key(g)


def reflect(sys: GlidingSystem, s: Sequence, t: Sequence) -> tuple:
    """S_T = (S minus T) plus the inverses of T."""
    s, t = list(s), list(t)
    if any(x not in s for x in t):
        raise GlideError("T is not a subset of S")
    out = [x for x in s if x not in t] + [sys.inv(x) for x in t]
    return tuple(sorted(out, key=sys.key))


class CubeKey(NamedTuple):
    min_vertex: Any
    antipode: Any


@dataclass(frozen=True)
class BasedCube:
    base: Any
    directions: tuple

    @property
    def dim(self) -> int:
        return len(self.directions)


def based_cube(sys: GlidingSystem, base, directions: Iterable) -> BasedCube:
    return BasedCube(base, tuple(sorted(directions, key=sys.key)))


def cube_vertices(sys: GlidingSystem, c: BasedCube) -> list:
    verts = [sys.mul(p, c.base) for p in subset_products(sys, c.directions)]
    if len(set(map(_hashable(sys), verts))) != len(verts):
        raise GlideError("vertex collision: directions are not cubic")
    return verts


def rebase(sys: GlidingSystem, c: BasedCube, t: Sequence) -> BasedCube:
    """The equivalent based cube ([T]A, S_T)."""
    return based_cube(sys, sys.mul(sys.product(t), c.base), reflect(sys, c.directions, t))


def canonical_key(sys: GlidingSystem, c: BasedCube) -> CubeKey:
    verts = cube_vertices(sys, c)
    m = min(verts, key=sys.key)
    return CubeKey(m, sys.mul(sys.product(rebase_directions_at(sys, c, m)), m))


def rebase_directions_at(sys: GlidingSystem, c: BasedCube, vertex) -> tuple:
    """Directions of the cube rebased at one of its vertices."""
    for t_bits, p in enumerate(subset_products(sys, c.directions)):
        if sys.mul(p, c.base) == vertex:
            t = [g for i, g in enumerate(c.directions) if t_bits >> i & 1]
            return reflect(sys, c.directions, t)
    raise GlideError("not a vertex of the cube")


def faces(sys: GlidingSystem, c: BasedCube) -> list[BasedCube]:
    """All faces, one based representative each: ([T]A, S') with S', T disjoint."""
    dirs = c.directions
    k = len(dirs)
    out = []
    # each direction is either free (in S'), fixed at 0, or fixed at 1 (in T)
    for code in range(3 ** k):
        free, fixed = [], []
        x = code
        for g in dirs:
            x, r = divmod(x, 3)
            if r == 1:
                free.append(g)
            elif r == 2:
                fixed.append(g)
        out.append(based_cube(sys, sys.mul(sys.product(fixed), c.base), free))
    return out
