"""Glide complexes of finite sets of group elements.

The cubes of the complex of a set D are the cubes of the ambient gliding
system all of whose vertices lie in D. For the even-cycle system every such
cube is the hull of an antipodal pair of its vertices, so the complex is
found by scanning pairs of elements of D (``build_complex``). For other
systems ``sweep_complex`` grows cubes from the glides available at each
vertex up to a dimension bound.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, NamedTuple

import networkx as nx

from . import incidence
from .gliding import (
    BasedCube,
    CubeKey,
    GlidingSystem,
    based_cube,
    canonical_key,
    cube_vertices,
    faces,
    is_cubic,
    rebase_directions_at,
)
from .incidence import EdgeSet, Hypergraph


class ComplexError(ValueError):
    pass


@dataclass
class CubeComplex:
    system: GlidingSystem
    vertices: tuple
    cubes: dict[int, dict[CubeKey, BasedCube]] = field(default_factory=dict)

    def __post_init__(self):
        self._star: dict[Any, list[tuple]] | None = None
        self._vertex_set = set(self.vertices)

    @property
    def dim(self) -> int:
        dims = [k for k, cs in self.cubes.items() if cs]
        return max(dims) if dims else -1

    def count(self, k: int) -> int:
        return len(self.cubes.get(k, {}))

    def f_vector(self) -> list[int]:
        return [self.count(k) for k in range(self.dim + 1)]

    def all_cubes(self) -> list[BasedCube]:
        return [c for k in sorted(self.cubes) for _, c in sorted(self.cubes[k].items(), key=_key_order(self.system))]

    def keys(self, k: int) -> list[CubeKey]:
        return sorted(self.cubes.get(k, {}), key=_key_sort(self.system))

    def has_vertex(self, a) -> bool:
        return a in self._vertex_set

    def edges(self) -> list[tuple]:
        """1-cells as (A, B, glide) with A the smaller endpoint."""
        out = []
        for key in self.keys(1):
            c = self.cubes[1][key]
            s = c.directions[0]
            out.append((key.min_vertex, key.antipode, s))
        return out

    def star(self, a) -> list[tuple]:
        """Direction sets of all stored cubes containing ``a``, rebased at ``a``."""
        if self._star is None:
            star: dict[Any, list[tuple]] = {v: [] for v in self.vertices}
            for k in sorted(self.cubes):
                for c in self.cubes[k].values():
                    for v in cube_vertices(self.system, c):
                        star[v].append(rebase_directions_at(self.system, c, v))
            self._star = star
        return self._star[a]

    def neighbours(self, a) -> list[tuple]:
        """(glide, neighbour) pairs of the 1-cells at ``a``."""
        return [(d[0], self.system.mul(d[0], a)) for d in self.star(a) if len(d) == 1]


def _key_sort(sys: GlidingSystem):
    return lambda k: (sys.key(k.min_vertex), sys.key(k.antipode))


def _key_order(sys: GlidingSystem):
    ks = _key_sort(sys)
    return lambda item: ks(item[0])


def _insert(x: CubeComplex, c: BasedCube) -> bool:
    sys = x.system
    key = canonical_key(sys, c)
    bucket = x.cubes.setdefault(c.dim, {})
    if key in bucket:
        return False
    m = key.min_vertex
    bucket[key] = based_cube(sys, m, rebase_directions_at(sys, c, m))
    return True


def _insert_with_faces(x: CubeComplex, c: BasedCube) -> None:
    if _insert(x, c):
        for f in faces(x.system, c):
            _insert(x, f)


def build_complex(d: Iterable[EdgeSet], sys: GlidingSystem) -> CubeComplex:
    """The glide complex of ``d`` for a system whose glides are cycles.

    Pairs A, B with AB a union of independent glides give the hull cube
    (A, cycles of AB); it is kept when all its vertices lie in ``d``.
    """
    d = sorted(set(d), key=sys.key)
    dset = set(d)
    x = CubeComplex(sys, tuple(d))
    x.cubes[0] = {}
    for a in d:
        _insert(x, BasedCube(a, ()))
    for i, a in enumerate(d):
        for b in d[i + 1:]:
            ab = a * b
            if not incidence.is_cyclic(ab):
                continue
            cycles = [c.edges for c in incidence.decompose_cyclic(ab)]
            if not all(sys.is_glide(s) for s in cycles):
                continue
            cube = based_cube(sys, a, cycles)
            if all(v in dset for v in cube_vertices(sys, cube)):
                _insert_with_faces(x, cube)
    x.__post_init__()
    return x


def sweep_complex(d: Iterable, sys: GlidingSystem, max_dim: int | None = 3) -> CubeComplex:
    """Glide complex of ``d`` for an arbitrary gliding system, cubes up to ``max_dim``."""
    d = sorted(set(d), key=sys.key)
    dset = set(d)
    x = CubeComplex(sys, tuple(d))
    x.cubes[0] = {}
    for a in d:
        _insert(x, BasedCube(a, ()))
        for s in _cubic_sets_at(sys, a, dset, max_dim):
            _insert(x, based_cube(sys, a, s))
    x.__post_init__()
    return x


def _cubic_sets_at(sys, a, dset, max_dim):
    """Cubic sets S at ``a`` with every [T]a in ``dset``, grown one glide at a time."""
    glides = sys.glides_at(a, dset)
    out = []

    def grow(current, start):
        if max_dim is not None and len(current) >= max_dim:
            return
        for i in range(start, len(glides)):
            s = glides[i]
            if not all(sys.independent(s, t) for t in current):
                continue
            cand = current + [s]
            if not is_cubic(sys, cand):
                continue
            cube = based_cube(sys, a, cand)
            if all(v in dset for v in cube_vertices(sys, cube)):
                out.append(tuple(cand))
                grow(cand, i + 1)

    grow([], 0)
    return out


# -- curvature conditions ---------------------------------------------------------


def check_square_condition(d: Iterable, sys: GlidingSystem):
    """None if the square condition holds, else a counterexample (A, s, t)."""
    d = set(d)
    for a in sorted(d, key=sys.key):
        gl = sys.glides_at(a, d)
        for s, t in combinations(gl, 2):
            if sys.independent(s, t) and sys.mul(s, sys.mul(t, a)) not in d:
                return (a, s, t)
    return None


def check_square_condition_rel(e: Iterable, d: Iterable, sys: GlidingSystem):
    """Square condition of ``e`` relative to ``d``; None or (A, s, t)."""
    e, d = set(e), set(d)
    if not e <= d:
        raise ComplexError("E is not a subset of D")
    for a in sorted(e, key=sys.key):
        gl = sys.glides_at(a, e)
        for s, t in combinations(gl, 2):
            if not sys.independent(s, t):
                continue
            st = sys.mul(s, sys.mul(t, a))
            if st in d and st not in e:
                return (a, s, t)
    return None


def check_cube_condition(d: Iterable, sys: GlidingSystem):
    """None if seven corners of a 3-cube in D always force the eighth, else (A, s1, s2, s3)."""
    d = set(d)
    for a in sorted(d, key=sys.key):
        gl = sys.glides_at(a, d)
        for s1, s2, s3 in combinations(gl, 3):
            if not (
                sys.independent(s1, s2)
                and sys.independent(s1, s3)
                and sys.independent(s2, s3)
            ):
                continue
            m = sys.mul
            faces = (m(s1, m(s2, a)), m(s1, m(s3, a)), m(s2, m(s3, a)))
            if all(f in d for f in faces) and m(s1, m(s2, m(s3, a))) not in d:
                return (a, s1, s2, s3)
    return None


def _star_graph(sys, a, d) -> tuple[nx.Graph, list]:
    # link 1-skeleton as seen from the conditions: s ~ t iff independent and stA in D
    gl = sys.glides_at(a, d)
    g = nx.Graph()
    g.add_nodes_from(range(len(gl)))
    for i, j in combinations(range(len(gl)), 2):
        s, t = gl[i], gl[j]
        if sys.independent(s, t) and sys.mul(s, sys.mul(t, a)) in d:
            g.add_edge(i, j)
    return g, gl


def check_regular(d: Iterable, sys: GlidingSystem):
    """None if every pre-cubic set satisfying (*) at every A is cubic, else (A, S)."""
    d = set(d)
    for a in sorted(d, key=sys.key):
        g, gl = _star_graph(sys, a, d)
        for clique in nx.find_cliques(g):
            s = [gl[i] for i in sorted(clique)]
            if not is_cubic(sys, s):
                return (a, tuple(s))
    return None


class Verdict(NamedTuple):
    regular: bool
    cube_condition: bool
    npc: bool
    counterexample: Any = None


def nonpositively_curved(d: Iterable, sys: GlidingSystem) -> Verdict:
    d = set(d)
    reg = check_regular(d, sys)
    cube = check_cube_condition(d, sys)
    return Verdict(reg is None, cube is None, reg is None and cube is None, reg or cube)


# -- links ------------------------------------------------------------------------


@dataclass(frozen=True)
class Link:
    base: Any
    vertices: tuple
    simplices: frozenset

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        index = {v: i for i, v in enumerate(self.vertices)}
        for simplex in self.simplices:
            if len(simplex) == 2:
                u, w = simplex
                g.add_edge(index[u], index[w])
        return g


def link(x: CubeComplex, a) -> Link:
    if not x.has_vertex(a):
        raise ComplexError(f"{a!r} is not a vertex of the complex")
    simplices = frozenset(frozenset(dirs) for dirs in x.star(a) if dirs)
    verts = sorted({s for simplex in simplices for s in simplex}, key=x.system.key)
    return Link(a, tuple(verts), simplices)


def is_flag(lk: Link) -> bool:
    """Every set of pairwise adjacent link vertices spans a simplex."""
    g = lk.graph()
    for clique in nx.find_cliques(g):
        if len(clique) > 1 and frozenset(lk.vertices[i] for i in clique) not in lk.simplices:
            return False
    return True


def flag_verdict(x: CubeComplex) -> bool:
    return all(is_flag(link(x, a)) for a in x.vertices)


# -- global invariants ------------------------------------------------------------


def components(x: CubeComplex) -> list[list]:
    """Vertex sets of the connected components, each sorted, ordered by first vertex."""
    parent = {v: v for v in x.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b, _ in x.edges():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[Any, list] = {}
    for v in x.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda vs: x.system.key(vs[0]))


def euler_characteristic(x: CubeComplex) -> int:
    return sum((-1) ** k * len(cs) for k, cs in x.cubes.items())


def skeleton(x: CubeComplex, k: int) -> CubeComplex:
    y = CubeComplex(x.system, x.vertices, {j: dict(cs) for j, cs in x.cubes.items() if j <= k})
    return y


def inclusion_map(xe: CubeComplex, xd: CubeComplex) -> dict:
    """Cell-to-cell map of X_E into X_D; every cell of X_E must be a cell of X_D."""
    out = {}
    for k, cs in xe.cubes.items():
        target = xd.cubes.get(k, {})
        for key in cs:
            if key not in target:
                raise ComplexError(f"cell {key} of the subcomplex is missing from the complex")
            out[key] = key
    return out


# -- orientations ---------------------------------------------------------------


class Orientation:
    """A distinguished half for every even cycle.

    Cycles without an explicit entry get the half containing their smallest
    edge id, unless ``default=False`` in which case they are an error.
    """

    def __init__(self, halves: Mapping[EdgeSet, EdgeSet] | None = None, default: bool = True):
        self._halves = dict(halves or {})
        self.default = default
        for s, h in self._halves.items():
            c = incidence.classify_cycle(s)
            if not c.even or h not in c.halves:
                raise ComplexError(f"{h.label()} is not a half of {s.label()}")

    @classmethod
    def from_elements(cls, elements: Mapping[EdgeSet, str], default: bool = True) -> Orientation:
        """Orientation picking, in each cycle s, the half containing the chosen edge e_s."""
        halves = {}
        for s, e in elements.items():
            c = incidence.classify_cycle(s)
            if e not in s:
                raise ComplexError(f"edge {e!r} is not on {s.label()}")
            halves[s] = c.halves[0] if e in c.halves[0] else c.halves[1]
        return cls(halves, default)

    def half(self, s: EdgeSet) -> EdgeSet:
        h = self._halves.get(s)
        if h is not None:
            return h
        if not self.default:
            raise ComplexError(f"no half chosen for {s.label()}")
        c = incidence.classify_cycle(s)
        if not c.even:
            raise ComplexError(f"{s.label()} is not an even cycle")
        return c.halves[0]

    def flipped(self, s: EdgeSet) -> Orientation:
        halves = dict(self._halves)
        halves[s] = incidence.classify_cycle(s).other_half(self.half(s))
        return Orientation(halves, self.default)

    def head(self, a: EdgeSet, s: EdgeSet) -> EdgeSet:
        """The endpoint of the 1-cell {A, sA} the cell points to."""
        return a if (a & s) == self.half(s) else s * a

    def sign(self, a: EdgeSet, s: EdgeSet) -> int:
        """+1 if traversing A -> sA follows the orientation, else -1."""
        return 1 if ((s * a) & s) == self.half(s) else -1

    def items(self):
        return self._halves.items()


@dataclass(frozen=True)
class DirectedComplex:
    complex: CubeComplex
    arcs: tuple  # (tail, head, glide)


def orient(x: CubeComplex, orientation: Orientation) -> DirectedComplex:
    arcs = []
    for a, b, s in x.edges():
        head = orientation.head(a, s)
        tail = b if head == a else a
        arcs.append((tail, head, s))
    # opposite sides of every square point the same way
    for c in x.cubes.get(2, {}).values():
        s, t = c.directions
        a = c.base
        if orientation.head(a, s) == a:
            ok = orientation.head(t * a, s) == t * a
        else:
            ok = orientation.head(t * a, s) == s * (t * a)
        if not ok:
            raise ComplexError(f"square rule fails on the square at {a.label()}")
    return DirectedComplex(x, tuple(arcs))


# -- export -----------------------------------------------------------------------


def complex_to_json(x: CubeComplex) -> dict:
    cubes = []
    for k in sorted(x.cubes):
        for key in x.keys(k):
            c = x.cubes[k][key]
            cubes.append(
                {
                    "dim": k,
                    "min_vertex": list(key.min_vertex.ids),
                    "antipode": list(key.antipode.ids),
                    "directions": [list(s.ids) for s in c.directions],
                }
            )
    return {"vertices": [list(v.ids) for v in x.vertices], "cubes": cubes}


def complex_from_json(obj: Mapping, h: Hypergraph, sys: GlidingSystem) -> CubeComplex:
    x = CubeComplex(sys, tuple(sorted((h.edge_set(v) for v in obj["vertices"]), key=sys.key)))
    x.cubes[0] = {}
    for item in obj["cubes"]:
        base = h.edge_set(item["min_vertex"])
        cube = based_cube(sys, base, [h.edge_set(s) for s in item["directions"]])
        _insert(x, cube)
    x.__post_init__()
    return x


def complex_to_dot(d: DirectedComplex) -> str:
    lines = ["digraph dimer {"]
    for v in d.complex.vertices:
        lines.append(f'  "{v.label()}";')
    for tail, head, s in d.arcs:
        lines.append(f'  "{tail.label()}" -> "{head.label()}" [label="{s.label()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
