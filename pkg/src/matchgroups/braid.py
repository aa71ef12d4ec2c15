"""Permutations of marked matchings along loops of the dimer complex.

Gliding a matching along an even cycle moves every marked edge on the cycle
to the neighbouring cycle edge through its endpoint in the distinguished
v-half of that cycle. Following the marks around a loop gives the image of
the loop in the symmetric group.

One-line notation: ``perm[i-1]`` is the mark finally carried by the edge
that initially carried mark ``i``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping

from . import incidence
from .dimer import EdgePath, alternates
from .incidence import EdgeSet, Hypergraph, IncidenceError


class BraidError(ValueError):
    pass


class VOrientation:
    """A distinguished v-half for every even cycle.

    Unlisted cycles get the v-half containing their smallest vertex id, or
    the value of ``rule(cycle)`` when a rule is given.
    """

    def __init__(self, choice: Mapping[EdgeSet, frozenset] | None = None, rule=None):
        self._choice = {s: frozenset(v) for s, v in (choice or {}).items()}
        self.rule = rule
        for s, v in self._choice.items():
            c = incidence.classify_cycle(s)
            if c.vhalves is None or v not in c.vhalves:
                raise BraidError(f"{sorted(v)} is not a v-half of {s.label()}")

    def vhalf(self, s: EdgeSet) -> frozenset:
        v = self._choice.get(s)
        if v is not None:
            return v
        c = incidence.classify_cycle(s)
        if c.vhalves is None:
            raise BraidError(f"{s.label()} has no v-halves")
        if self.rule is not None:
            return self.rule(c)
        return c.vhalves[0]

    def flipped(self, s: EdgeSet) -> VOrientation:
        choice = dict(self._choice)
        choice[s] = incidence.classify_cycle(s).other_vhalf(self.vhalf(s))
        return VOrientation(choice, self.rule)


def initial_marks(a: EdgeSet) -> dict[str, int]:
    """Marks 1..N on the edges of ``a`` in edge-id order."""
    return {e: i for i, e in enumerate(a, start=1)}


def glide_marks(marks: Mapping[str, int], s: EdgeSet, vo: VOrientation) -> dict[str, int]:
    h = s.ambient
    current = h.edge_set(marks)
    if not alternates(current, s):
        raise BraidError(f"{s.label()} does not alternate with {current.label()}")
    dist = vo.vhalf(s)
    out = {}
    for e, mark in marks.items():
        if e not in s:
            out[e] = mark
            continue
        (v,) = h.ends[e] & dist
        (f,) = [x for x in s if x != e and v in h.ends[x]]
        out[f] = mark
    return out


def sigma_theta(loop: EdgePath, vo: VOrientation) -> tuple[int, ...]:
    if not loop.is_loop:
        raise BraidError("path is not closed")
    start = initial_marks(loop.base)
    marks = dict(start)
    for s in loop.steps:
        marks = glide_marks(marks, s, vo)
    return tuple(marks[e] for e in sorted(start, key=start.get))


def compose(p: tuple, q: tuple) -> tuple:
    """(p . q)(i) = p(q(i)); the image of a concatenated loop ab is compose(image(a), image(b))."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def identity(n: int) -> tuple:
    return tuple(range(1, n + 1))


def cycle_notation(p: tuple) -> str:
    seen = set()
    parts = []
    for i in range(1, len(p) + 1):
        if i in seen or p[i - 1] == i:
            seen.add(i)
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j - 1]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def one_line(p: tuple) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def bipartition(h: Hypergraph) -> tuple[frozenset, frozenset]:
    """(V0, V1) by BFS 2-colouring; the smallest vertex of each component goes to V0."""
    if not h.graph:
        raise BraidError("bipartition needs a graph")
    colour: dict[str, int] = {}
    adj: dict[str, list[str]] = {v: [] for v in h.vertices}
    for e in h.edges:
        u, w = h._raw_ends[e]
        adj[u].append(w)
        adj[w].append(u)
    for start in h.vertices:
        if start in colour:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    raise BraidError("graph is not bipartite")
    v0 = frozenset(v for v, c in colour.items() if c == 0)
    return v0, frozenset(h.vertices) - v0


def bipartite_v_orientation(h: Hypergraph) -> VOrientation:
    v0, _ = bipartition(h)
    return VOrientation(rule=lambda c: c.vhalves[0] if c.vhalves[0] <= v0 else c.vhalves[1])


def sigma_theta_n(
    h: Hypergraph, loop: EdgePath, n: Mapping[str, int], vo: VOrientation
) -> tuple[int, ...]:
    """The permutation after subdividing the induced graph of the base matching.

    ``loop`` lives in the induced graph of its base (for a perfect matching,
    in ``h`` itself); ``n`` counts new vertex pairs per edge of that graph.
    """
    a = loop.base
    sub, ap = incidence.induced(h, h.transfer(a))
    try:
        steps = [sub.transfer(s) for s in loop.steps]
    except IncidenceError as exc:
        raise BraidError(str(exc)) from None
    sd = incidence.subdivide(sub, n, ap)
    choice = {}
    new_steps = []
    for s in steps:
        s_n = sd.map_set(s)
        dist = vo.vhalf(h.transfer(s))
        c = incidence.classify_cycle(s_n)
        choice[s_n] = c.vhalves[0] if dist <= c.vhalves[0] else c.vhalves[1]
        new_steps.append(s_n)
    return sigma_theta(EdgePath(sd.matching, tuple(new_steps)), VOrientation(choice))
