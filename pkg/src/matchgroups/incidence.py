"""Finite graphs and hypergraphs, their edge-set algebra, cycles and matchings.

Edge sets live in the power group of the edge set of a fixed hypergraph:
the product of two edge sets is their symmetric difference. They are stored
as bitmasks over the (sorted) edge ids of the ambient hypergraph, so that the
group operations are single integer operations.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from itertools import combinations


class IncidenceError(ValueError):
    """Raised for malformed hypergraphs and for misuse of edge sets."""


def _bits_indices(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class EdgeSet:
    """A subset of the edges of a fixed hypergraph, i.e. an element of 2^E."""

    __slots__ = ("ambient", "bits")

    def __init__(self, ambient: Hypergraph, bits: int = 0):
        self.ambient = ambient
        self.bits = bits

    def _check(self, other: EdgeSet) -> None:
        if not isinstance(other, EdgeSet):
            raise TypeError(f"expected an EdgeSet, got {type(other).__name__}")
        if other.ambient is not self.ambient and other.ambient != self.ambient:
            raise IncidenceError("edge sets belong to different hypergraphs")

    def __mul__(self, other: EdgeSet) -> EdgeSet:
        self._check(other)
        return EdgeSet(self.ambient, self.bits ^ other.bits)

    def __or__(self, other: EdgeSet) -> EdgeSet:
        self._check(other)
        return EdgeSet(self.ambient, self.bits | other.bits)

    def __and__(self, other: EdgeSet) -> EdgeSet:
        self._check(other)
        return EdgeSet(self.ambient, self.bits & other.bits)

    def __sub__(self, other: EdgeSet) -> EdgeSet:
        self._check(other)
        return EdgeSet(self.ambient, self.bits & ~other.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeSet):
            return NotImplemented
        return self.bits == other.bits and (
            self.ambient is other.ambient or self.ambient == other.ambient
        )

    def __hash__(self) -> int:
        return hash(self.bits)

    def __lt__(self, other: EdgeSet) -> bool:
        return self.key < other.key

    def __le__(self, other: EdgeSet) -> bool:
        return self.key <= other.key

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[str]:
        edges = self.ambient.edges
        return (edges[i] for i in _bits_indices(self.bits))

    def __contains__(self, edge: str) -> bool:
        i = self.ambient.edge_index.get(edge)
        return i is not None and bool(self.bits >> i & 1)

    def issubset(self, other: EdgeSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: EdgeSet) -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self)

    @property
    def key(self) -> tuple[int, ...]:
        # Lexicographic on sorted edge ids; the ambient edge tuple is sorted.
        return tuple(_bits_indices(self.bits))

    def label(self) -> str:
        return "{" + ",".join(self) + "}"

    def __repr__(self) -> str:
        return f"EdgeSet{self.label()}"


@dataclass(frozen=True)
class Cycle:
    """A cycle together with its parity data.

    ``halves`` and ``vhalves`` are ordered: the first half contains the
    smallest edge id, the first v-half the smallest vertex id.
    """

    edges: EdgeSet
    even: bool
    halves: tuple[EdgeSet, EdgeSet] | None = None
    vhalves: tuple[frozenset, frozenset] | None = None

    @property
    def parity(self) -> str:
        return "even" if self.even else "odd"

    def other_half(self, half: EdgeSet) -> EdgeSet:
        if self.halves is None:
            raise IncidenceError(f"{self.edges.label()} is not an even cycle")
        if half == self.halves[0]:
            return self.halves[1]
        if half == self.halves[1]:
            return self.halves[0]
        raise IncidenceError(f"{half.label()} is not a half of {self.edges.label()}")

    def other_vhalf(self, vhalf: frozenset) -> frozenset:
        if self.vhalves is None:
            raise IncidenceError(f"{self.edges.label()} has no v-halves")
        if vhalf == self.vhalves[0]:
            return self.vhalves[1]
        if vhalf == self.vhalves[1]:
            return self.vhalves[0]
        raise IncidenceError(f"{sorted(vhalf)} is not a v-half of {self.edges.label()}")


class Hypergraph:
    """A finite hypergraph (E, V, boundary); ``graph=True`` is the 2-ends case.

    Vertex and edge ids are strings and are kept in sorted order.
    """

    def __init__(
        self,
        vertices: Iterable[str] | None,
        ends: Mapping[str, Iterable[str]],
        graph: bool = True,
        validate: bool = True,
    ):
        raw = {str(e): [str(v) for v in vs] for e, vs in ends.items()}
        self.graph = graph
        self.edges: tuple[str, ...] = tuple(sorted(raw))
        if vertices is None:
            vertices = {v for vs in raw.values() for v in vs}
        self.vertices: tuple[str, ...] = tuple(sorted({str(v) for v in vertices}))
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._raw_ends = raw
        self.ends: dict[str, frozenset] = {e: frozenset(vs) for e, vs in raw.items()}
        if validate:
            problems = validate_hypergraph(self)
            if problems:
                raise IncidenceError("; ".join(problems))
        unknown = {v for vs in self.ends.values() for v in vs} - set(self.vertices)
        if unknown:
            raise IncidenceError(f"edges use undeclared vertices {sorted(unknown)}")
        # per-edge vertex bitmask and per-vertex incident edge bitmask
        self.vmask = [0] * len(self.edges)
        self.incident = [0] * len(self.vertices)
        for i, e in enumerate(self.edges):
            for v in self.ends[e]:
                j = self.vertex_index[v]
                self.vmask[i] |= 1 << j
                self.incident[j] |= 1 << i
        self._all_vmask = (1 << len(self.vertices)) - 1
        self._cycles: dict[int, Cycle] = {}
        self._hash = hash((self.vertices, self.edges))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_edges(cls, edges, vertices=None, graph=True, validate=True):
        """Build from ``[(edge_id, ends), ...]``; ends is any iterable of vertex ids."""
        ends = {}
        for e, vs in edges:
            if str(e) in ends:
                raise IncidenceError(f"duplicate edge id {e!r}")
            ends[str(e)] = list(vs)
        return cls(vertices, ends, graph=graph, validate=validate)

    def sub(self, vertices: Iterable[str], edges: Iterable[str], validate=False) -> Hypergraph:
        """The sub-hypergraph with the given vertices and edges (same ids)."""
        return Hypergraph(
            list(vertices),
            {e: self._raw_ends[e] for e in edges},
            graph=self.graph,
            validate=validate,
        )

    def as_mode(self, graph: bool) -> Hypergraph:
        return Hypergraph(self.vertices, self._raw_ends, graph=graph)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "ends": list(self._raw_ends[e])} for e in self.edges],
        }

    # -- equality -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.ends == other.ends
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        kind = "Graph" if self.graph else "Hypergraph"
        return f"<{kind} |V|={len(self.vertices)} |E|={len(self.edges)}>"

    # -- edge sets ------------------------------------------------------------

    def edge_set(self, ids: Iterable[str] = ()) -> EdgeSet:
        bits = 0
        for e in ids:
            try:
                bits |= 1 << self.edge_index[e]
            except KeyError:
                raise IncidenceError(f"unknown edge {e!r}") from None
        return EdgeSet(self, bits)

    @property
    def empty(self) -> EdgeSet:
        return EdgeSet(self, 0)

    @property
    def all_edges(self) -> EdgeSet:
        return EdgeSet(self, (1 << len(self.edges)) - 1)

    def transfer(self, s: EdgeSet) -> EdgeSet:
        """The edge set with the same ids, viewed in this hypergraph."""
        return self.edge_set(s)

    def vertex_bits(self, s: EdgeSet) -> int:
        out = 0
        for i in _bits_indices(s.bits):
            out |= self.vmask[i]
        return out

    def vertices_of_bits(self, vbits: int) -> frozenset:
        return frozenset(self.vertices[j] for j in _bits_indices(vbits))


def validate_hypergraph(h: Hypergraph) -> list[str]:
    """Return a list of problems; an empty list means the hypergraph is valid."""
    problems = []
    used = set()
    for e in h.edges:
        raw = h._raw_ends[e]
        if not raw:
            problems.append(f"edge {e!r} has empty boundary")
            continue
        if h.graph:
            if len(raw) != 2:
                problems.append(f"edge {e!r} has {len(raw)} ends, graph mode needs 2")
            elif raw[0] == raw[1]:
                problems.append(f"edge {e!r} is a loop at {raw[0]!r}")
        used.update(raw)
    vs = set(h.vertices)
    for v in sorted(used - vs):
        problems.append(f"edge end {v!r} is not a declared vertex")
    for v in sorted(vs - used):
        problems.append(f"vertex {v!r} is isolated")
    return problems


def validate(h: Hypergraph) -> None:
    problems = validate_hypergraph(h)
    if problems:
        raise IncidenceError("; ".join(problems))


# -- edge-set algebra -----------------------------------------------------------


def sym_diff(a: EdgeSet, b: EdgeSet) -> EdgeSet:
    return a * b


def boundary_vertices(s: EdgeSet) -> frozenset:
    h = s.ambient
    return h.vertices_of_bits(h.vertex_bits(s))


def independent(s: EdgeSet, t: EdgeSet) -> bool:
    s._check(t)
    h = s.ambient
    return h.vertex_bits(s) & h.vertex_bits(t) == 0


def _degrees(s: EdgeSet) -> dict[int, int]:
    h = s.ambient
    deg: dict[int, int] = {}
    for i in _bits_indices(s.bits):
        for j in _bits_indices(h.vmask[i]):
            deg[j] = deg.get(j, 0) + 1
    return deg


def is_cyclic(s: EdgeSet) -> bool:
    """Every vertex meets either none or exactly two edges of ``s``."""
    return all(d == 2 for d in _degrees(s).values())


def _components(s: EdgeSet) -> list[int]:
    """Classes of the share-a-vertex relation on ``s``, as edge bitmasks."""
    h = s.ambient
    remaining = s.bits
    out = []
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = [low.bit_length() - 1]
        remaining ^= low
        while frontier:
            i = frontier.pop()
            for j in _bits_indices(h.vmask[i]):
                nb = h.incident[j] & remaining
                if nb:
                    remaining &= ~nb
                    comp |= nb
                    frontier.extend(_bits_indices(nb))
        out.append(comp)
    return out


def is_cycle(s: EdgeSet) -> bool:
    return bool(s) and is_cyclic(s) and len(_components(s)) == 1


def decompose_cyclic(s: EdgeSet) -> list[Cycle]:
    """Split a cyclic set into its pairwise independent cycles.

    Cycles come out ordered by their smallest edge id.
    """
    if not is_cyclic(s):
        raise IncidenceError(f"{s.label()} is not cyclic")
    return [classify_cycle(EdgeSet(s.ambient, c)) for c in _components(s)]


def classify_cycle(s: EdgeSet) -> Cycle:
    h = s.ambient
    cached = h._cycles.get(s.bits)
    if cached is not None:
        return cached
    if not is_cycle(s):
        raise IncidenceError(f"{s.label()} is not a cycle")
    halves = _two_colour_edges(s)
    vhalves = _two_colour_vertices(s) if halves is not None else None
    c = Cycle(s, halves is not None, halves, vhalves)
    h._cycles[s.bits] = c
    return c


def _two_colour_edges(s: EdgeSet):
    # Halves are a proper 2-colouring of the conflict graph (edges sharing a
    # vertex); the cycle is connected so the colouring is unique if it exists.
    h = s.ambient
    idx = list(_bits_indices(s.bits))
    colour = {idx[0]: 0}
    queue = deque([idx[0]])
    while queue:
        i = queue.popleft()
        for j in _bits_indices(h.vmask[i]):
            for k in _bits_indices(h.incident[j] & s.bits):
                if k == i:
                    continue
                if k not in colour:
                    colour[k] = 1 - colour[i]
                    queue.append(k)
                elif colour[k] == colour[i]:
                    return None
    first = sum(1 << i for i, c in colour.items() if c == 0)
    return EdgeSet(h, first), EdgeSet(h, s.bits ^ first)


def _two_colour_vertices(s: EdgeSet):
    h = s.ambient
    idx = list(_bits_indices(s.bits))
    if any(h.vmask[i].bit_count() != 2 for i in idx):
        return None
    adj: dict[int, list[int]] = {}
    for i in idx:
        a, b = _bits_indices(h.vmask[i])
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(adj)
    colour = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in colour:
                colour[w] = 1 - colour[v]
                queue.append(w)
            elif colour[w] == colour[v]:
                return None
    first = frozenset(h.vertices[v] for v, c in colour.items() if c == 0)
    second = frozenset(h.vertices[v] for v, c in colour.items() if c == 1)
    return first, second


# -- matchings --------------------------------------------------------------------


def is_matching(s: EdgeSet) -> bool:
    h = s.ambient
    seen = 0
    for i in _bits_indices(s.bits):
        if seen & h.vmask[i]:
            return False
        seen |= h.vmask[i]
    return True


def is_perfect_matching(s: EdgeSet) -> bool:
    h = s.ambient
    return is_matching(s) and h.vertex_bits(s) == h._all_vmask


def perfect_matchings(h: Hypergraph) -> list[EdgeSet]:
    """All perfect matchings, in lexicographic order of their sorted edge ids."""
    full = h._all_vmask
    found: list[int] = []

    def extend(covered: int, chosen: int) -> None:
        if covered == full:
            found.append(chosen)
            return
        free = ~covered & full
        v = (free & -free).bit_length() - 1
        for i in _bits_indices(h.incident[v]):
            m = h.vmask[i]
            if m & covered == 0:
                extend(covered | m, chosen | 1 << i)

    if h.vertices:
        extend(0, 0)
    out = sorted({EdgeSet(h, b) for b in found}, key=lambda s: s.key)
    return out


def matched_edge(a: EdgeSet, v: str) -> str:
    h = a.ambient
    j = h.vertex_index.get(v)
    if j is None:
        raise IncidenceError(f"unknown vertex {v!r}")
    hits = h.incident[j] & a.bits
    if not hits:
        raise IncidenceError(f"vertex {v!r} is not covered by {a.label()}")
    if hits & (hits - 1):
        raise IncidenceError(f"{a.label()} is not a matching at {v!r}")
    return h.edges[hits.bit_length() - 1]


def induced(h: Hypergraph, a: EdgeSet) -> tuple[Hypergraph, EdgeSet]:
    """The hypergraph spanned by the vertices of ``a``, and ``a`` inside it."""
    if not is_matching(a):
        raise IncidenceError(f"{a.label()} is not a matching")
    vb = h.vertex_bits(a)
    edges = [e for i, e in enumerate(h.edges) if h.vmask[i] & ~vb == 0]
    sub = h.sub(h.vertices_of_bits(vb), edges)
    return sub, sub.transfer(a)


# -- subdivision ----------------------------------------------------------------


def sub_edge_id(e: str, k: int) -> str:
    return f"{e}/{k}"


def sub_vertex_id(e: str, k: int) -> str:
    return f"{e}:{k}"


@dataclass(frozen=True)
class Subdivision:
    """``graph`` is the subdivided graph; ``pieces[e]`` the sub-edges of e in path order."""

    original: Hypergraph
    graph: Hypergraph
    counts: Mapping[str, int]
    pieces: Mapping[str, tuple[str, ...]]
    matching: EdgeSet

    def map_set(self, s: EdgeSet) -> EdgeSet:
        """All sub-edges of the edges of ``s``; carries cycles to cycles."""
        return self.graph.edge_set(p for e in s for p in self.pieces[e])

    def map_matching(self, b: EdgeSet) -> EdgeSet:
        """The canonical bijection on perfect matchings."""
        ids = []
        for e in self.original.edges:
            ps = self.pieces[e]
            ids.extend(ps[0::2] if e in b else ps[1::2])
        return self.graph.edge_set(ids)


def subdivide(h: Hypergraph, n: Mapping[str, int], a: EdgeSet) -> Subdivision:
    """Insert 2*n[e] new vertices inside each edge e.

    A matched edge is replaced in the induced matching by the sub-edges at odd
    positions 1, 3, ..., an unmatched one by those at even positions.
    """
    if not h.graph:
        raise IncidenceError("subdivision is defined for graphs only")
    for e, k in n.items():
        if e not in h.edge_index:
            raise IncidenceError(f"unknown edge {e!r}")
        if k < 0:
            raise IncidenceError(f"negative subdivision count for {e!r}")
    vertices = list(h.vertices)
    ends = {}
    pieces = {}
    for e in h.edges:
        k = n.get(e, 0)
        u, w = h._raw_ends[e]
        if k == 0:
            ends[e] = [u, w]
            pieces[e] = (e,)
            continue
        path = [u] + [sub_vertex_id(e, i) for i in range(1, 2 * k + 1)] + [w]
        vertices.extend(path[1:-1])
        ps = []
        for i in range(1, 2 * k + 2):
            pid = sub_edge_id(e, i)
            ends[pid] = [path[i - 1], path[i]]
            ps.append(pid)
        pieces[e] = tuple(ps)
    g = Hypergraph(vertices, ends, graph=True)
    sub = Subdivision(h, g, dict(n), pieces, g.empty)
    object.__setattr__(sub, "matching", sub.map_matching(a))
    return sub


def ambiguous_cycles(h: Hypergraph) -> list[EdgeSet]:
    """Two-edge cycles whose edges share every vertex and have no v-halves.

    Each such cycle is treated as even (the two edges are its halves), but its
    vertices cannot be split compatibly, so these are reported for review.
    """
    out = []
    for i, j in combinations(range(len(h.edges)), 2):
        if h.vmask[i] != h.vmask[j]:
            continue
        c = classify_cycle(EdgeSet(h, 1 << i | 1 << j))
        if c.even and c.vhalves is None:
            out.append(c.edges)
    return out
