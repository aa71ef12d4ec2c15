"""Dimer labelings and the evaluation map from cube points to edge labelings.

All arithmetic is exact (``fractions.Fraction``).
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from . import incidence
from .incidence import EdgeSet, Hypergraph

HALF = Fraction(1, 2)


class LabelingError(ValueError):
    pass


@dataclass(frozen=True)
class CubePoint:
    """A point (A, S, x) of a cube; ``coords`` maps each direction to a value in [0, 1]."""

    base: EdgeSet
    directions: tuple
    coords: tuple  # aligned with directions

    @classmethod
    def make(cls, base: EdgeSet, coords: Mapping[EdgeSet, Fraction]) -> CubePoint:
        dirs = tuple(sorted(coords, key=lambda s: s.key))
        return cls(base, dirs, tuple(Fraction(coords[s]) for s in dirs))

    def coord(self, s: EdgeSet) -> Fraction:
        return self.coords[self.directions.index(s)]


def omega(p: CubePoint) -> dict[str, Fraction]:
    """The labeling delta_A on edges off the cycles; x(s) on s - A; 1 - x(s) on s & A."""
    h = p.base.ambient
    out = {e: Fraction(int(e in p.base)) for e in h.edges}
    for s, x in zip(p.directions, p.coords):
        for e in s:
            out[e] = 1 - x if e in p.base else Fraction(x)
    return out


def canonical_point(p: CubePoint) -> CubePoint:
    """Representative with every coordinate in (0, 1/2].

    Coordinates above 1/2 are moved to the opposite base; zero coordinates are
    dropped. At 1/2 the base meets the cycle in its first half.
    """
    base = p.base
    coords = {}
    for s, x in zip(p.directions, p.coords):
        c = incidence.classify_cycle(s)
        if x > HALF or (x == HALF and c.halves is not None and (base & s) != c.halves[0]):
            base = s * base
            x = 1 - x
        if x != 0:
            coords[s] = x
    return CubePoint.make(base, coords)


def is_dimer_labeling(h: Hypergraph, labels: Mapping[str, Fraction]) -> bool:
    return not labeling_problems(h, labels)


def labeling_problems(h: Hypergraph, labels: Mapping[str, Fraction]) -> list[str]:
    problems = []
    for e in h.edges:
        v = Fraction(labels.get(e, 0))
        if v < 0 or v > 1:
            problems.append(f"label of {e!r} is outside [0, 1]")
    for j, v in enumerate(h.vertices):
        vals = [Fraction(labels.get(h.edges[i], 0)) for i in incidence._bits_indices(h.incident[j])]
        nz = [x for x in vals if x != 0]
        if len(nz) not in (1, 2):
            problems.append(f"vertex {v!r} has {len(nz)} non-zero labels")
        elif sum(nz) != 1:
            problems.append(f"labels at vertex {v!r} sum to {sum(nz)}")
    return problems


def _support(h: Hypergraph, labels: Mapping[str, Fraction]) -> EdgeSet:
    return h.edge_set(e for e in h.edges if 0 < labels.get(e, 0) < 1)


def omega_inverse(h: Hypergraph, labels: Mapping[str, Fraction]) -> CubePoint:
    """The cube point mapped by ``omega`` to a labeling of the perfect-matching component."""
    labels = {e: Fraction(labels.get(e, 0)) for e in h.edges}
    support = _support(h, labels)
    if not incidence.is_cyclic(support):
        raise LabelingError("edges with labels strictly between 0 and 1 do not form a cyclic set")
    base = h.edge_set(e for e in h.edges if labels[e] == 1)
    coords = {}
    for c in incidence.decompose_cyclic(support):
        if not c.even:
            raise LabelingError(f"{c.edges.label()} is an odd cycle of the support")
        first, second = c.halves
        x1 = {labels[e] for e in first}
        x2 = {labels[e] for e in second}
        if len(x1) != 1 or len(x2) != 1 or x1.pop() + x2.pop() != 1:
            raise LabelingError(f"labels are not constant on the halves of {c.edges.label()}")
        xi = labels[next(iter(first))]
        half = first if xi >= HALF else second
        xi = labels[next(iter(half))]
        base = base | half
        coords[c.edges] = 1 - xi
    if not incidence.is_perfect_matching(base):
        raise LabelingError("recovered base is not a perfect matching")
    return CubePoint.make(base, coords)


def without_cycles(h: Hypergraph, cycles) -> Hypergraph:
    """Delete the vertices of the cycles and every edge incident to them."""
    gone = 0
    for s in cycles:
        gone |= h.vertex_bits(s)
    keep_v = [v for j, v in enumerate(h.vertices) if not gone >> j & 1]
    keep_e = [e for i, e in enumerate(h.edges) if h.vmask[i] & gone == 0]
    return h.sub(keep_v, keep_e)


@dataclass(frozen=True)
class Classification:
    odd_cycles: tuple
    residual_graph: Hypergraph
    residual: CubePoint | None = field(default=None)


def classify_labeling(h: Hypergraph, labels: Mapping[str, Fraction]) -> Classification:
    """Split a dimer labeling into its odd 1/2-cycles and a point of the residual dimer complex."""
    problems = labeling_problems(h, labels)
    if problems:
        raise LabelingError("; ".join(problems))
    labels = {e: Fraction(labels.get(e, 0)) for e in h.edges}
    support = _support(h, labels)
    odd = []
    for c in incidence.decompose_cyclic(support):
        if not c.even:
            if any(labels[e] != HALF for e in c.edges):
                raise LabelingError(f"odd cycle {c.edges.label()} is not labelled 1/2")
            odd.append(c.edges)
    rest = without_cycles(h, odd)
    if not rest.vertices:
        return Classification(tuple(odd), rest, None)
    sub_labels = {e: labels[e] for e in rest.edges}
    point = omega_inverse(rest, sub_labels)
    return Classification(tuple(odd), rest, point)


# -- odd cycles and the census ------------------------------------------------------


def odd_cycles(h: Hypergraph, max_edges: int = 24) -> list[EdgeSet]:
    """All odd cycles, ordered by edge-id key."""
    if h.graph:
        found = _graph_cycles(h)
    else:
        if len(h.edges) > max_edges:
            raise LabelingError(f"hypergraph cycle search is limited to {max_edges} edges")
        found = [
            EdgeSet(h, bits)
            for bits in range(1, 1 << len(h.edges))
            if incidence.is_cycle(EdgeSet(h, bits))
        ]
    out = [s for s in found if not incidence.classify_cycle(s).even]
    return sorted(set(out), key=lambda s: s.key)


def _graph_cycles(h: Hypergraph) -> list[EdgeSet]:
    """Simple cycles as edge sets: each found once from its smallest vertex."""
    out = set()

    def walk(start: int, v: int, used_e: int, used_v: int):
        for i in incidence._bits_indices(h.incident[v] & ~used_e):
            (w,) = [j for j in incidence._bits_indices(h.vmask[i]) if j != v] or [v]
            if w < start:
                continue
            if w == start:
                if used_e:
                    out.add(used_e | 1 << i)
                continue
            if used_v >> w & 1:
                continue
            walk(start, w, used_e | 1 << i, used_v | 1 << w)

    for start in range(len(h.vertices)):
        walk(start, start, 0, 1 << start)
    return [EdgeSet(h, b) for b in out]


def component_census(h: Hypergraph, max_edges: int = 24) -> list[tuple]:
    """The sets C of independent odd cycles that index components of the labeling space.

    C qualifies when deleting its vertices leaves either nothing or a
    hypergraph with no isolated vertex and at least one perfect matching.
    """
    cycles = odd_cycles(h, max_edges)
    out = []

    def consider(chosen: list[EdgeSet]) -> None:
        rest = without_cycles(h, chosen)
        if not rest.vertices:
            out.append(tuple(chosen))
            return
        if incidence.validate_hypergraph(rest):
            return
        if incidence.perfect_matchings(rest):
            out.append(tuple(chosen))

    def grow(chosen: list[EdgeSet], start: int, used: int) -> None:
        consider(chosen)
        for i in range(start, len(cycles)):
            vb = h.vertex_bits(cycles[i])
            if vb & used == 0:
                grow(chosen + [cycles[i]], i + 1, used | vb)

    grow([], 0, 0)
    return sorted(out, key=lambda c: (len(c), [s.key for s in c]))


def census_labeling(h: Hypergraph, chosen, matching: EdgeSet | None) -> dict[str, Fraction]:
    """1/2 on the cycles of ``chosen``, 1 on ``matching``, 0 elsewhere."""
    out = {e: Fraction(0) for e in h.edges}
    for s in chosen:
        for e in s:
            out[e] = HALF
    if matching is not None:
        for e in matching:
            out[e] = Fraction(1)
    return out


def labeling_to_json(labels: Mapping[str, Fraction]) -> dict:
    return {e: f"{Fraction(v).numerator}/{Fraction(v).denominator}" for e, v in sorted(labels.items())}


def labeling_from_json(obj: Mapping[str, object]) -> dict[str, Fraction]:
    out = {}
    for e, v in obj.items():
        try:
            out[str(e)] = Fraction(str(v))
        except (ValueError, ZeroDivisionError):
            raise LabelingError(f"label of {e!r} is not a rational number: {v!r}") from None
    return out
