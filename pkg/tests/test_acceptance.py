"""End-to-end acceptance checks; each test reports one PASS/FAIL line."""

import random
import time
from fractions import Fraction
from itertools import pairwise, product

import graphs
import networkx as nx
import oracles

from matchgroups import braid, cubecomplex, dimer, gliding, incidence, labelings, words
from matchgroups.cubecomplex import Orientation
from matchgroups.gliding import GlidingSystem, even_cycle_system
from matchgroups.incidence import Hypergraph


def _complex(h):
    pms = incidence.perfect_matchings(h)
    sys_ = even_cycle_system(h)
    return pms, sys_, cubecomplex.build_complex(pms, sys_)


def _trivial(p) -> bool:
    simple = words.tietze_simplify(p)
    return not simple.generators and words.abelianization(p) == (0, [])


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# -- 1 -------------------------------------------------------------------------------


def _golden(h):
    pms, _, x = _complex(h)
    p = dimer.dimer_presentation(h)
    return pms, x, p


def test_criterion_1_small_examples(criterion):
    with criterion(1, "triangle, square, even and odd cycles, THETA(n) golden values"):
        (pms, x, p), dt = _timed(lambda: _golden(graphs.triangle()))
        assert len(pms) == 0 and x.f_vector() == [] and _trivial(p) and dt < 1

        (pms, x, p), dt = _timed(lambda: _golden(graphs.square()))
        assert x.count(1) == 1 and _trivial(p) and dt < 1

        for k in (2, 3, 4):
            (pms, x, p), dt = _timed(lambda: _golden(graphs.cycle(2 * k)))
            assert len(pms) == 2 and x.f_vector() == [2, 1] and _trivial(p) and dt < 1
            (pms, x, p), dt = _timed(lambda: _golden(graphs.cycle(2 * k + 1)))
            assert len(pms) == 0 and x.f_vector() == [] and dt < 1

        for n in range(3, 7):
            def run():
                pms, _, x = _complex(graphs.theta(n))
                rank, torsion = words.abelianization(dimer.dimer_presentation(graphs.theta(n)))
                return pms, x, rank, torsion

            (pms, x, rank, torsion), dt = _timed(run)
            skel = nx.Graph()
            skel.add_nodes_from(x.vertices)
            skel.add_edges_from((a, b) for a, b, _ in x.edges())
            assert nx.is_isomorphic(skel, nx.complete_graph(n)) and x.dim == 1
            assert rank == (n - 1) * (n - 2) // 2 and torsion == []
            assert rank == 1 - cubecomplex.euler_characteristic(x)
            assert dt < 1


# -- 2 -------------------------------------------------------------------------------


def _grid_vorientation(h, s2_vhalf):
    s1 = h.edge_set(["ab", "ad", "be", "de"])
    s2 = h.edge_set(["bc", "be", "cf", "ef"])
    s12 = h.edge_set(["ab", "ad", "bc", "cf", "de", "ef"])
    vo = braid.VOrientation(
        {s1: frozenset("ae"), s2: frozenset(s2_vhalf), s12: frozenset("bdf")}
    )
    return vo, (s1, s12, s2)


def test_criterion_2_two_square_graph(criterion):
    with criterion(2, "two-square graph permutations (2,3,1) / (2,1,3) and rank 1"):
        t0 = time.perf_counter()
        h = graphs.grid23()
        a = h.edge_set(["ad", "be", "cf"])
        vo, steps = _grid_vorientation(h, "ce")
        loop = dimer.EdgePath(a, steps)
        assert braid.sigma_theta(loop, vo) == (2, 3, 1)
        (gen,) = dimer.DimerGroup(h, a).generator_loops()
        assert braid.sigma_theta(gen, vo) == (2, 3, 1)

        flipped, _ = _grid_vorientation(h, "bf")
        assert braid.sigma_theta(loop, flipped) == (2, 1, 3)
        assert braid.sigma_theta(gen, vo.flipped(steps[2])) == (2, 1, 3)

        _x, ap = dimer.matching_group_complex(h, a)
        p = dimer.DimerGroup(ap.ambient, ap).presentation()
        assert words.abelianization(p) == (1, [])
        assert time.perf_counter() - t0 < 1


# -- 3 -------------------------------------------------------------------------------


def _random_bipartite(rng):
    while True:
        k = rng.randint(2, 4)
        left = [f"l{i}" for i in range(k)]
        right = [f"r{i}" for i in range(k)]
        pairs = {(left[i], right[i]) for i in range(k)}
        others = [(u, v) for u in left for v in right if (u, v) not in pairs]
        extra = rng.randint(1, min(10 - k, len(others)))
        pairs |= set(rng.sample(others, extra))
        h = Hypergraph(None, {f"{u}{v}": [u, v] for u, v in sorted(pairs)})
        base = rng.choice(incidence.perfect_matchings(h))
        loops = dimer.DimerGroup(h, base).generator_loops()
        if loops:
            return h, base, loops


def test_criterion_3_bipartite_images_trivial(criterion):
    with criterion(3, "bipartite graphs: generator loops act trivially, with subdivisions"):
        rng = random.Random(96)
        checked = 0
        for _ in range(20):
            h, base, loops = _random_bipartite(rng)
            assert len(h.edges) <= 10
            vo = braid.bipartite_v_orientation(h)
            for loop in loops:
                n_marks = len(base)
                assert braid.sigma_theta(loop, vo) == braid.identity(n_marks)
                for _ in range(3):
                    total = rng.randint(1, 3)
                    n = {}
                    for e in rng.choices(h.edges, k=total):
                        n[e] = n.get(e, 0) + 1
                    p = braid.sigma_theta_n(h, loop, n, vo)
                    assert p == braid.identity(n_marks + sum(n.values()))
                    checked += 1
        assert checked >= 60


# -- 4 -------------------------------------------------------------------------------


def _curvature_ok(h) -> bool:
    pms, sys_, x = _complex(h)
    v = cubecomplex.nonpositively_curved(pms, sys_)
    square = cubecomplex.check_square_condition(pms, sys_)
    flag = cubecomplex.flag_verdict(x)
    return square is None and v.regular and v.cube_condition and v.npc and flag == v.npc


def test_criterion_4_curvature_suite(criterion, corpus9):
    with criterion(4, "curvature checks on all graphs with <= 9 edges"):
        assert len(corpus9) == 2263
        bad = [g for g in corpus9 if not _curvature_ok(oracles.to_hypergraph(g))]
        assert bad == []
        for name, make in graphs.SUPPLEMENT.items():
            assert _curvature_ok(make()), name
        # the flag test does notice a missing cube
        pms, sys_, x = _complex(graphs.disjoint_squares(3))
        assert x.dim == 3
        full = set(pms)
        gap = full - {pms[0]}
        v = cubecomplex.nonpositively_curved(gap, sys_)
        y = cubecomplex.build_complex(sorted(gap, key=lambda m: m.key), sys_)
        assert v.cube_condition is False and cubecomplex.flag_verdict(y) is False


# -- 5 -------------------------------------------------------------------------------


def test_criterion_5_brute_force_complex(criterion, corpus8):
    with criterion(5, "complex equals brute-force cube search on graphs with <= 8 edges"):
        for g in corpus8:
            h = oracles.to_hypergraph(g)
            _, _, x = _complex(h)
            assert oracles.complex_as_vertex_sets(x) == oracles.brute_complex(oracles.ends_of(h)), g
        for name in ("three squares", "ladder 2x4", "3-cube"):
            h = graphs.SUPPLEMENT[name]()
            _, _, x = _complex(h)
            assert oracles.complex_as_vertex_sets(x) == oracles.brute_complex(oracles.ends_of(h)), name


# -- 6 -------------------------------------------------------------------------------


def _fold(seq, rels):
    """Rewrite x_{u0,u1} ... x_{u(m-1),um} to x_{u0,um} using flat relators only."""
    if len(seq) < 2:
        return seq[0], seq[0]
    u0, cur = seq[0], seq[1]
    for nxt in seq[2:]:
        assert (u0, cur, nxt) in rels
        cur = nxt
    return u0, cur


def _psi_phi_identity(g: dimer.DimerGroup) -> None:
    p = g.presentation()
    rels = set(p.relators)
    flat = set()
    for a, b, c in g.flat_triples():
        r = g.letter(a, b) + g.letter(b, c) + g.letter(a, c, -1)
        assert r in rels
        flat.add((a, b, c))
    a0 = g.base
    killed = {a for a in g.matchings if a == a0 or g.letter(a0, a) in rels}
    assert killed == set(g.matchings)
    for (a, b) in g.pairs.values():
        loop = g.generator_loop(a, b)
        word = g.loop_to_word(loop)
        vs = loop.vertices
        # the word is the product of letters along the vertex sequence
        expected = []
        for u, v in pairwise(vs):
            expected.extend(g.letter(u, v))
        assert tuple(expected) == word
        # split into the three hull paths and fold each one
        n1 = len(dimer.hull_path(a0, a))
        n2 = len(dimer.hull_path(a, b))
        segs = [vs[: n1 + 1], vs[n1 : n1 + n2 + 1], vs[n1 + n2 :]]
        ends = [_fold(seg, flat) for seg in segs]
        assert ends == [(a0, a), (a, b), (b, a0)]
        # x_{A0,A} and x_{B,A0} = x_{A0,B}^{-1} are killed
        assert a == a0 or g.letter(a0, a) in rels
        assert b == a0 or (a0, b, a0) in flat


def test_criterion_6_presentation_soundness(criterion, corpus8):
    with criterion(6, "psi.phi = id, flatness = common cube, rank = cellular H1"):
        groups = 0
        for g in corpus8:
            h = oracles.to_hypergraph(g)
            pms, _, x = _complex(h)
            if not pms:
                continue
            cubes = oracles.complex_as_vertex_sets(x)
            for a in pms:
                for b in pms:
                    for c in pms:
                        in_cube = any(
                            {frozenset(m.ids) for m in (a, b, c)} <= cube for cube in cubes
                        )
                        assert dimer.is_flat(a, b, c) == in_cube
            grp = dimer.DimerGroup(h)
            _psi_phi_identity(grp)
            assert words.abelianization(grp.presentation()) == oracles.complex_h1(x)
            groups += 1
        for name, make in graphs.SUPPLEMENT.items():
            h = make()
            _, _, x = _complex(h)
            assert words.abelianization(dimer.dimer_presentation(h)) == oracles.complex_h1(x), name
        assert groups > 100


# -- 7 -------------------------------------------------------------------------------


def _random_orientation(rng, x):
    halves = {}
    for _, _, s in x.edges():
        c = incidence.classify_cycle(s)
        halves[s] = rng.choice(c.halves)
    return Orientation(halves)


def _random_loop(rng, x, base):
    current = base
    steps = []
    for _ in range(rng.randint(1, 8)):
        s, current = rng.choice(sorted(x.neighbours(current), key=lambda p: p[0].key))
        steps.append(s)
    # return along a shortest path in the 1-skeleton
    g = nx.Graph()
    for a, b, s in x.edges():
        g.add_edge(a, b, glide=s)
    path = nx.shortest_path(g, current, base)
    for u, v in pairwise(path):
        steps.append(g.edges[u, v]["glide"])
    return dimer.EdgePath(base, tuple(steps))


def test_criterion_7_typing_words(criterion, corpus9):
    with criterion(7, "typing words: u-image trivial, homotopy invariance, half flips"):
        rng = random.Random(7)
        pool = []
        for g in corpus9:
            h = oracles.to_hypergraph(g)
            _pms, sys_, x = _complex(h)
            if x.count(1):
                pool.append((h, sys_, x))
        squares_used = 0
        for _ in range(100):
            h, sys_, x = rng.choice(pool)
            base = rng.choice(list(x.vertices))
            loop = _random_loop(rng, x, base)
            loop.check(x.vertices)
            o = _random_orientation(rng, x)
            w = words.typing_word(loop, o)
            assert words.raag_normal_form(words.u_map(w, o), words.raag_edges(h)) == ()

            glides = {s for _, _, s in x.edges()}
            group = words.raag_of_system(glides, sys_)
            vs = loop.vertices
            i = rng.randrange(len(vs))
            s, _ = rng.choice(sorted(x.neighbours(vs[i]), key=lambda p: p[0].key))
            back = dimer.EdgePath(base, loop.steps[:i] + (s, s) + loop.steps[i:])
            assert words.raag_equal(words.typing_word(back, o), w, group)

            squares = [d for d in x.star(vs[i]) if len(d) == 2]
            if squares:
                s, t = rng.choice(squares)
                sq = dimer.EdgePath(base, loop.steps[:i] + (s, t, s, t) + loop.steps[i:])
                sq.check(x.vertices)
                assert words.raag_equal(words.typing_word(sq, o), w, group)
                squares_used += 1

            s0 = rng.choice(loop.steps)
            assert words.typing_word(loop, o.flipped(s0)) == words.half_flip(w, s0)
        assert squares_used > 0


# -- 8 -------------------------------------------------------------------------------

GRID = [Fraction(k, 4) for k in range(5)]


def _evaluation_ok(x) -> int:
    points = set()
    for c in x.all_cubes():
        for coords in product(GRID, repeat=c.dim):
            p = labelings.CubePoint(c.base, c.directions, coords)
            q = labelings.canonical_point(p)
            lab = labelings.omega(p)
            assert lab == labelings.omega(q)
            assert labelings.is_dimer_labeling(x.system.ambient, lab)
            assert labelings.omega_inverse(x.system.ambient, lab) == q
            points.add(q)
    images = {tuple(sorted(labelings.omega(q).items())) for q in points}
    assert len(images) == len(points)
    return len(points)


def _census_ok(h) -> None:
    census = labelings.component_census(h)
    got = {frozenset(frozenset(s.ids) for s in c) for c in census}
    expected = oracles.brute_census(oracles.ends_of(h))
    assert got == set(expected)
    for cs, labs in expected.items():
        for lab in labs:
            result = labelings.classify_labeling(h, lab)
            assert {frozenset(s.ids) for s in result.odd_cycles} == set(cs)


def test_criterion_8_evaluation_map(criterion, corpus9):
    with criterion(8, "evaluation map injective and inverted; census counts"):
        assert len(labelings.component_census(graphs.triangle())) == 1
        assert len(labelings.component_census(graphs.square())) == 1
        assert len(labelings.component_census(graphs.pentagon())) == 1
        assert len(labelings.component_census(graphs.triangle_k2())) == 1
        total = 0
        for g in corpus9:
            h = oracles.to_hypergraph(g)
            _, _, x = _complex(h)
            total += _evaluation_ok(x)
            _census_ok(h)
        for make in graphs.SUPPLEMENT.values():
            _, _, x = _complex(make())
            total += _evaluation_ok(x)
        assert total > 1000


# -- 9 -------------------------------------------------------------------------------


def _hyper_view(g):
    hg = oracles.to_hypergraph(g)
    hh = oracles.to_hypergraph(g, graph=False)
    out = []
    for h in (hg, hh):
        _, _, x = _complex(h)
        pres = dimer.dimer_presentation(h)
        census = [[s.ids for s in c] for c in labelings.component_census(h)]
        out.append((cubecomplex.complex_to_json(x), pres, census))
    return out


def test_criterion_9_hypergraph_mode(criterion, corpus9):
    with criterion(9, "hypergraph mode agrees with graph mode; 3-uniform example"):
        for g in corpus9:
            as_graph, as_hyper = _hyper_view(g)
            assert as_graph == as_hyper, g
        for make in (graphs.hyper_doubled, graphs.hyper_mixed):
            h = make()
            _, _, x = _complex(h)
            assert oracles.complex_as_vertex_sets(x) == oracles.brute_complex(oracles.ends_of(h))
        _, _, x = _complex(graphs.hyper_doubled())
        assert x.f_vector() == [4, 4, 1]


# -- 10 ------------------------------------------------------------------------------


def _z3_system(n: int) -> GlidingSystem:
    """The group (Z/3)^n; every non-zero element is a glide, independent iff supports are disjoint."""

    def supp(g):
        return {i for i, v in enumerate(g) if v}

    return GlidingSystem(
        mul=lambda a, b: tuple((x + y) % 3 for x, y in zip(a, b)),
        inv=lambda a: tuple((-x) % 3 for x in a),
        unit=(0,) * n,
        is_glide=lambda g: any(g),
        independent=lambda s, t: s != t and not (supp(s) & supp(t)),
    )


def _random_partition_glides(rng, n, make):
    idx = list(range(n))
    rng.shuffle(idx)
    k = rng.randint(0, n)
    cuts = sorted(rng.sample(range(1, n), min(k, n - 1))) if n > 1 else []
    blocks = [idx[i:j] for i, j in zip([0] + cuts, cuts + [n])]
    blocks = [b for b in blocks if rng.random() < 0.8]
    return [make(b) for b in blocks if b]


def test_criterion_10_gliding_properties(criterion):
    with criterion(10, "reflection keeps cubic sets cubic; pre-cubic implies cubic"):
        rng = random.Random(10)
        for trial in range(1000):
            n = rng.randint(1, 10)
            if trial % 2 == 0:
                h = Hypergraph(None, {f"e{i}": [f"a{i}", f"b{i}"] for i in range(n)})
                sys_ = gliding.power_group_system(h, lambda s: True)
                make = lambda b: h.edge_set(f"e{i}" for i in b)
            else:
                sys_ = _z3_system(n)
                make = lambda b: tuple(rng.choice((1, 2)) if i in b else 0 for i in range(n))
            s = _random_partition_glides(rng, n, make)
            assert gliding.is_precubic(sys_, s)
            assert gliding.is_cubic(sys_, s)
            t = [g for g in s if rng.random() < 0.5]
            assert gliding.is_cubic(sys_, gliding.reflect(sys_, s, t))
