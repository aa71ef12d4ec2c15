"""Dimer groups and matching groups.

The dimer complex of a finite (hyper)graph is straight: any two perfect
matchings A, B span a smallest cube, their hull, based at A with directions
the cycles of AB. Paths inside hulls give the canonical homotopy classes
used by the presentation with generators x_{A,B}.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from . import incidence
from .cubecomplex import CubeComplex, build_complex
from .gliding import BasedCube, based_cube, cube_vertices, even_cycle_system
from .incidence import EdgeSet, Hypergraph, IncidenceError
from .words import Presentation, Word


class DimerError(ValueError):
    pass


@dataclass(frozen=True)
class EdgePath:
    """A path in the 1-skeleton: a starting matching and the cycles glided along."""

    base: EdgeSet
    steps: tuple = ()

    @property
    def vertices(self) -> list[EdgeSet]:
        out = [self.base]
        for s in self.steps:
            out.append(s * out[-1])
        return out

    @property
    def end(self) -> EdgeSet:
        return self.vertices[-1]

    @property
    def is_loop(self) -> bool:
        return self.end == self.base

    def __add__(self, other: EdgePath) -> EdgePath:
        if other.base != self.end:
            raise DimerError("paths do not compose: endpoint mismatch")
        return EdgePath(self.base, self.steps + other.steps)

    def reversed(self) -> EdgePath:
        return EdgePath(self.end, tuple(reversed(self.steps)))

    def __len__(self) -> int:
        return len(self.steps)

    def check(self, d: Iterable[EdgeSet] | None = None) -> None:
        """Every step alternates with the matching it is applied to; vertices lie in ``d``."""
        dset = set(d) if d is not None else None
        current = self.base
        for s in self.steps:
            if not alternates(current, s):
                raise DimerError(f"{s.label()} does not alternate with {current.label()}")
            current = s * current
            if dset is not None and current not in dset:
                raise DimerError(f"{current.label()} is outside the vertex set")


def alternates(a: EdgeSet, s: EdgeSet) -> bool:
    """s is an even cycle and s meets A in one of its halves."""
    if not incidence.is_cycle(s):
        return False
    c = incidence.classify_cycle(s)
    return c.even and (a & s) in c.halves


def congruent(a: EdgeSet, b: EdgeSet) -> bool:
    """Equal vertex boundaries (finiteness of AB is automatic here)."""
    a._check(b)
    h = a.ambient
    return h.vertex_bits(a) == h.vertex_bits(b)


def hull(a: EdgeSet, b: EdgeSet) -> BasedCube:
    if not congruent(a, b):
        raise DimerError("matchings are not congruent")
    h = a.ambient
    sys = even_cycle_system(h)
    cycles = incidence.decompose_cyclic(a * b)
    odd = [c for c in cycles if not c.even]
    if odd:
        raise DimerError(f"{odd[0].edges.label()} is an odd cycle in AB")
    cube = based_cube(sys, a, [c.edges for c in cycles])
    for v in cube_vertices(sys, cube):
        if not incidence.is_matching(v) or h.vertex_bits(v) != h.vertex_bits(a):
            raise DimerError(f"hull vertex {v.label()} is not a congruent matching")
    return cube


def hull_path(a: EdgeSet, b: EdgeSet) -> EdgePath:
    """Glide the cycles of AB in ascending order (by smallest edge id)."""
    return EdgePath(a, hull(a, b).directions)


def is_flat(a: EdgeSet, b: EdgeSet, c: EdgeSet) -> bool:
    """At every vertex at least two of the three matched edges coincide."""
    if not (congruent(a, b) and congruent(b, c)):
        raise DimerError("matchings are not congruent")
    for v in incidence.boundary_vertices(a):
        ea, eb, ec = (incidence.matched_edge(m, v) for m in (a, b, c))
        if ea != eb and eb != ec and ea != ec:
            return False
    return True


def _flat_fast(h: Hypergraph, a: EdgeSet, b: EdgeSet, c: EdgeSet) -> bool:
    # A_v != B_v exactly on the vertices of AB
    return h.vertex_bits(a * b) & h.vertex_bits(b * c) & h.vertex_bits(a * c) == 0


@dataclass(frozen=True)
class GroupoidPresentation:
    objects: tuple
    generators: tuple  # (name, source, target)
    relators: tuple


class DimerGroup:
    """The dimer group of ``h`` at the perfect matching ``base``."""

    def __init__(self, h: Hypergraph, base: EdgeSet | None = None):
        self.hypergraph = h
        pms = incidence.perfect_matchings(h)
        if base is None:
            if not pms:
                raise DimerError("the hypergraph has no perfect matching")
            base = pms[0]
        base = h.transfer(base)
        if not incidence.is_perfect_matching(base):
            raise DimerError(f"{base.label()} is not a perfect matching")
        self.base = base
        self.matchings = tuple(m for m in pms if congruent(base, m))
        self.index = {m: i for i, m in enumerate(self.matchings)}
        self.base_index = self.index[base]
        self.system = even_cycle_system(h)

    @cached_property
    def complex(self) -> CubeComplex:
        return build_complex(self.matchings, self.system)

    def name(self, a: EdgeSet, b: EdgeSet) -> str:
        return f"x{self.index[a]}_{self.index[b]}"

    def letter(self, a: EdgeSet, b: EdgeSet, e: int = 1) -> Word:
        """x_{A,B}^e as a word; x_{A,A} is the empty word."""
        return () if a == b else ((self.name(a, b), e),)

    @cached_property
    def pairs(self) -> dict:
        return {
            self.name(a, b): (a, b)
            for a in self.matchings
            for b in self.matchings
            if a != b
        }

    def flat_triples(self) -> list[tuple]:
        h = self.hypergraph
        ms = self.matchings
        out = []
        for a in ms:
            for b in ms:
                if b == a:
                    continue
                for c in ms:
                    if c != b and _flat_fast(h, a, b, c):
                        out.append((a, b, c))
        return out

    def _flat_relators(self) -> list[Word]:
        rels = []
        for a, b, c in self.flat_triples():
            rels.append(self.letter(a, b) + self.letter(b, c) + self.letter(a, c, -1))
        return rels

    def presentation(self) -> Presentation:
        gens = tuple(self.pairs)
        rels = [self.letter(self.base, m) for m in self.matchings if m != self.base]
        rels += self._flat_relators()
        return Presentation(gens, tuple(rels))

    def groupoid_presentation(self) -> GroupoidPresentation:
        gens = tuple((n, a, b) for n, (a, b) in self.pairs.items())
        return GroupoidPresentation(self.matchings, gens, tuple(self._flat_relators()))

    # -- psi and phi ---------------------------------------------------------------

    def loop_to_word(self, loop: EdgePath) -> Word:
        """psi: x_{A0,A1} x_{A1,A2} ... along the vertices of the loop."""
        if loop.base != self.base or not loop.is_loop:
            raise DimerError("not a loop at the base matching")
        vs = loop.vertices
        out: list = []
        for a, b in itertools.pairwise(vs):
            out.extend(self.letter(a, b))
        return tuple(out)

    def generator_loop(self, a: EdgeSet, b: EdgeSet) -> EdgePath:
        """phi(x_{A,B}): the loop A0 -> A -> B -> A0 through hulls."""
        return hull_path(self.base, a) + hull_path(a, b) + hull_path(b, self.base)

    def word_to_loop(self, w: Sequence) -> EdgePath:
        path = EdgePath(self.base)
        for g, e in w:
            try:
                a, b = self.pairs[g]
            except KeyError:
                raise DimerError(f"unknown generator {g!r}") from None
            piece = self.generator_loop(a, b)
            path = path + (piece if e == 1 else piece.reversed())
        return path

    def generator_loops(self) -> list[EdgePath]:
        return generator_loops(self.complex, self.base)


def dimer_presentation(h: Hypergraph, base: EdgeSet | None = None) -> Presentation:
    """Presentation at ``base``; the empty presentation when there is no perfect matching."""
    if base is None and not incidence.perfect_matchings(h):
        return Presentation((), ())
    return DimerGroup(h, base).presentation()


def groupoid_presentation(h: Hypergraph) -> GroupoidPresentation:
    pms = incidence.perfect_matchings(h)
    if not pms:
        return GroupoidPresentation((), (), ())
    return DimerGroup(h, pms[0]).groupoid_presentation()


def base_change(a: EdgeSet, b: EdgeSet, loop: EdgePath) -> EdgePath:
    """i_{A,B}: conjugate a loop at A by the hull path, giving a loop at B."""
    if loop.base != a or not loop.is_loop:
        raise DimerError("not a loop at A")
    return hull_path(b, a) + loop + hull_path(a, b)


def generator_loops(x: CubeComplex, base: EdgeSet) -> list[EdgePath]:
    """Free generators of the 1-skeleton's fundamental group, from a BFS spanning tree."""
    parent: dict[EdgeSet, tuple] = {base: None}
    queue = deque([base])
    tree = set()
    while queue:
        a = queue.popleft()
        for s, b in sorted(x.neighbours(a), key=lambda p: p[0].key):
            if b not in parent:
                parent[b] = (a, s)
                tree.add(frozenset((a, b)))
                queue.append(b)

    def down(v: EdgeSet) -> EdgePath:
        steps = []
        while parent[v] is not None:
            u, s = parent[v]
            steps.append(s)
            v = u
        return EdgePath(base, tuple(reversed(steps)))

    loops = []
    for a, b, s in x.edges():
        if a not in parent or frozenset((a, b)) in tree:
            continue
        loops.append(down(a) + EdgePath(a, (s,)) + down(b).reversed())
    return loops


# -- matching groups ---------------------------------------------------------------------


def matching_group_complex(h: Hypergraph, a: EdgeSet) -> tuple[CubeComplex, EdgeSet]:
    """Dimer complex of the induced hypergraph of ``a``, based at ``a``."""
    sub, ap = incidence.induced(h, a)
    x = build_complex(incidence.perfect_matchings(sub), even_cycle_system(sub))
    return x, ap


def inclusion_j(h: Hypergraph, a_small: EdgeSet, a: EdgeSet, loop: EdgePath) -> EdgePath:
    """j_{A',A}: carry a loop in the induced graph of A' to that of A by adding C = A - A'."""
    if not a_small.issubset(a):
        raise DimerError("A' is not contained in A")
    sub, _ap = incidence.induced(h, a)
    _small, ap_small = incidence.induced(h, a_small)
    if loop.base != ap_small:
        raise DimerError("loop is not based at A'")
    extra = sub.transfer(a - a_small)
    base = sub.transfer(loop.base) | extra
    return EdgePath(base, tuple(sub.transfer(s) for s in loop.steps))


def transfer_path(target: Hypergraph, path: EdgePath) -> EdgePath:
    try:
        return EdgePath(target.transfer(path.base), tuple(target.transfer(s) for s in path.steps))
    except IncidenceError as exc:
        raise DimerError(str(exc)) from None
