"""Named test graphs."""

from matchgroups.incidence import Hypergraph


def graph(*edges, vertices=None, hyper=False) -> Hypergraph:
    """``graph("ab", "bc")`` makes edges named after their two one-letter ends."""
    ends = {}
    for e in edges:
        if isinstance(e, tuple):
            name, vs = e
        else:
            name, vs = e, list(e)
        ends[name] = list(vs)
    return Hypergraph(vertices, ends, graph=not hyper)


def cycle(n: int, prefix: str = "") -> Hypergraph:
    return Hypergraph(
        None, {f"{prefix}e{i}": [f"{prefix}{i}", f"{prefix}{(i + 1) % n}"] for i in range(n)}
    )


def theta(n: int) -> Hypergraph:
    """Two vertices joined by n parallel edges."""
    return Hypergraph(None, {f"t{i}": ["u", "v"] for i in range(n)})


def triangle() -> Hypergraph:
    return graph("ab", "bc", "ac")


def square() -> Hypergraph:
    return graph("ab", "bc", "cd", "ad")


def pentagon() -> Hypergraph:
    return cycle(5)


def triangle_k2() -> Hypergraph:
    return graph("ab", "bc", "ac", "xy")


def grid23() -> Hypergraph:
    """Two squares sharing the middle vertical edge be: top row a b c, bottom row d e f."""
    return graph("ab", "bc", "de", "ef", "ad", "be", "cf")


def disjoint_squares(k: int) -> Hypergraph:
    ends = {}
    for i in range(k):
        a, b, c, d = (f"{x}{i}" for x in "abcd")
        ends.update({f"ab{i}": [a, b], f"bc{i}": [b, c], f"cd{i}": [c, d], f"ad{i}": [a, d]})
    return Hypergraph(None, ends)


def ladder(n: int) -> Hypergraph:
    """The 2 x n grid graph."""
    ends = {}
    for i in range(n):
        ends[f"v{i}"] = [f"t{i}", f"b{i}"]
        if i + 1 < n:
            ends[f"t{i}"] = [f"t{i}", f"t{i + 1}"]
            ends[f"b{i}"] = [f"b{i}", f"b{i + 1}"]
    return Hypergraph(None, ends)


def cube_graph() -> Hypergraph:
    """The 1-skeleton of the 3-cube; vertices are 3-bit strings."""
    ends = {}
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                ends[f"{v:03b}-{w:03b}"] = [f"{v:03b}", f"{w:03b}"]
    return Hypergraph(None, ends)


def k33() -> Hypergraph:
    return Hypergraph(None, {f"{i}{j}": [f"l{i}", f"r{j}"] for i in range(3) for j in range(3)})


def hyper_doubled() -> Hypergraph:
    """3-uniform: two parallel pairs of hyperedges; its dimer complex is a single square."""
    return Hypergraph(
        None,
        {"e1": ["a", "b", "c"], "e2": ["a", "b", "c"], "e3": ["d", "e", "f"], "e4": ["d", "e", "f"]},
        graph=False,
    )


def hyper_mixed() -> Hypergraph:
    """A hypergraph with a 3-edge, parallel edges and ordinary edges."""
    return Hypergraph(
        None,
        {
            "h1": ["a", "b", "c"],
            "h2": ["a", "b", "c"],
            "p": ["c", "d"],
            "q": ["a", "d"],
            "r": ["b", "x"],
            "s": ["x", "d"],
        },
        graph=False,
    )


SUPPLEMENT = {
    "three squares": lambda: disjoint_squares(3),
    "ladder 2x4": lambda: ladder(4),
    "ladder 2x5": lambda: ladder(5),
    "3-cube": cube_graph,
    "K33": k33,
    "theta 5": lambda: theta(5),
}
