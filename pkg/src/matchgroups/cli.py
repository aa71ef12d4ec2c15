"""Command-line interface: ``matchgroups <command> input.json [options]``.

Exit codes: 0 ok, 1 invariant violation, 2 parse error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction

from . import braid, cubecomplex, dimer, incidence, labelings, words
from .cubecomplex import Orientation
from .formats import (
    ParseError,
    load_hypergraph,
    load_labeling,
    load_orientations,
    parse_edge_list,
    parse_subdivision,
)
from .gliding import even_cycle_system

EXIT_OK, EXIT_INVARIANT, EXIT_PARSE = 0, 1, 2


class InvariantViolation(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _ids(s) -> list:
    return list(s.ids)


def _orientations(args, h):
    if args.orientation:
        return load_orientations(args.orientation, h)
    return Orientation(), braid.VOrientation()


def _basepoint(args, h):
    if not args.basepoint:
        return None
    a = parse_edge_list(args.basepoint, h)
    if not incidence.is_perfect_matching(a):
        raise InvariantViolation(f"basepoint {a.label()} is not a perfect matching")
    return a


def _group(args, h) -> dimer.DimerGroup:
    try:
        return dimer.DimerGroup(h, _basepoint(args, h))
    except dimer.DimerError as exc:
        raise InvariantViolation(str(exc)) from None


def _complex(h, max_dim=None):
    pms = incidence.perfect_matchings(h)
    sys_ = even_cycle_system(h)
    x = cubecomplex.build_complex(pms, sys_)
    if max_dim is not None:
        x = cubecomplex.skeleton(x, max_dim)
    return pms, sys_, x


# -- commands ---------------------------------------------------------------------


def cmd_matchings(args, h) -> str:
    pms = incidence.perfect_matchings(h)
    if args.format == "json":
        return _dump({"count": len(pms), "matchings": [_ids(m) for m in pms]})
    lines = [f"{len(pms)} perfect matchings"]
    lines += [f"  {i}: {m.label()}" for i, m in enumerate(pms)]
    return "\n".join(lines) + "\n"


def _verdict(pms, sys_, x) -> dict:
    v = cubecomplex.nonpositively_curved(pms, sys_)
    return {
        "regular": v.regular,
        "cube_condition": v.cube_condition,
        "npc": v.npc,
        "flag": cubecomplex.flag_verdict(x),
    }


def cmd_complex(args, h) -> str:
    pms, sys_, x = _complex(h, args.max_dim)
    if args.format == "dot":
        orientation, _ = _orientations(args, h)
        try:
            directed = cubecomplex.orient(x, orientation)
        except cubecomplex.ComplexError as exc:
            raise InvariantViolation(str(exc)) from None
        return cubecomplex.complex_to_dot(directed)
    summary = {
        "f_vector": x.f_vector(),
        "euler_characteristic": cubecomplex.euler_characteristic(x),
        "components": len(cubecomplex.components(x)),
        "curvature": _verdict(pms, sys_, x),
        "ambiguous_cycles": [_ids(s) for s in incidence.ambiguous_cycles(h)],
    }
    if args.format == "json":
        return _dump({"complex": cubecomplex.complex_to_json(x), **summary})
    lines = [
        f"vertices: {x.count(0)}",
        f"f-vector: {summary['f_vector']}",
        f"euler characteristic: {summary['euler_characteristic']}",
        f"components: {summary['components']}",
    ]
    lines += [f"{k}: {v}" for k, v in summary["curvature"].items()]
    for ids in summary["ambiguous_cycles"]:
        lines.append(f"note: cycle {{{','.join(ids)}}} has two edges on the same vertices and no v-halves")
    for k in range(1, x.dim + 1):
        for key in x.keys(k):
            c = x.cubes[k][key]
            dirs = " ".join(s.label() for s in c.directions)
            lines.append(f"{k}-cube at {c.base.label()}: {dirs}")
    return "\n".join(lines) + "\n"


def cmd_curvature(args, h) -> str:
    pms, sys_, x = _complex(h, None)
    verdict = _verdict(pms, sys_, x)
    out = _dump(verdict) if args.format == "json" else "".join(f"{k}: {v}\n" for k, v in verdict.items())
    if not (verdict["npc"] and verdict["flag"]):
        sys.stdout.write(out)
        raise InvariantViolation("dimer complex fails the curvature checks")
    return out


def cmd_presentation(args, h) -> str:
    if not args.basepoint and not incidence.perfect_matchings(h):
        g = None
        raw = words.Presentation((), ())
    else:
        g = _group(args, h)
        raw = g.presentation()
    simple = words.tietze_simplify(raw)
    rank, torsion = words.abelianization(raw)
    if args.format == "json":
        return _dump(
            {
                "base": None if g is None else _ids(g.base),
                "raw": raw.to_json(),
                "simplified": simple.to_json(),
                "abelianization": {"rank": rank, "torsion": torsion},
            }
        )
    lines = [
        f"base: {'none' if g is None else g.base.label()}",
        f"raw: {len(raw.generators)} generators, {len(raw.relators)} relators",
        f"simplified: {simple.to_text()}",
        f"abelianization rank: {rank}",
        f"torsion: {torsion}",
    ]
    return "\n".join(lines) + "\n"


def _parse_loop(text, h, base) -> dimer.EdgePath:
    steps = tuple(parse_edge_list(part, h) for part in text.split(";") if part.strip())
    path = dimer.EdgePath(base, steps)
    try:
        path.check()
    except dimer.DimerError as exc:
        raise InvariantViolation(str(exc)) from None
    if not path.is_loop:
        raise InvariantViolation("loop does not return to the base matching")
    return path


def _loops(args, h, g):
    if args.loop:
        return [_parse_loop(args.loop, h, g.base)]
    return g.generator_loops()


def _permutation(h, loop, vo, n):
    try:
        if n:
            return braid.sigma_theta_n(h, loop, n, vo)
        return braid.sigma_theta(loop, vo)
    except (braid.BraidError, incidence.IncidenceError) as exc:
        raise InvariantViolation(str(exc)) from None


def cmd_braid(args, h) -> str:
    g = _group(args, h)
    _, vo = _orientations(args, h)
    if args.bipartite:
        try:
            vo = braid.bipartite_v_orientation(h)
        except braid.BraidError as exc:
            raise InvariantViolation(str(exc)) from None
    n = parse_subdivision(args.subdivide)
    rows = []
    for loop in _loops(args, h, g):
        p = _permutation(h, loop, vo, n)
        rows.append(
            {
                "loop": [_ids(s) for s in loop.steps],
                "one_line": braid.one_line(p),
                "cycles": braid.cycle_notation(p),
            }
        )
    if args.format == "json":
        return _dump({"base": _ids(g.base), "subdivision": n, "loops": rows})
    lines = [f"base: {g.base.label()}"]
    for r in rows:
        steps = " ".join("{" + ",".join(s) + "}" for s in r["loop"])
        lines.append(f"{steps} -> {r['one_line']} {r['cycles']}")
    return "\n".join(lines) + "\n"


def cmd_kernel_experiment(args, h) -> str:
    """Evaluate generator loops under every subdivision with |n| <= --max-total.

    This only reports observations; nothing is claimed about the kernels.
    """
    g = _group(args, h)
    _, vo = _orientations(args, h)
    sub, _ = incidence.induced(h, g.base)
    edges = list(sub.edges)
    subdivisions = []
    for total in range(args.max_total + 1):
        for combo in itertools.combinations_with_replacement(edges, total):
            n = {}
            for e in combo:
                n[e] = n.get(e, 0) + 1
            subdivisions.append(n)
    rows = []
    for loop in g.generator_loops():
        trivial_all = True
        images = []
        for n in subdivisions:
            p = _permutation(h, loop, vo, n)
            trivial = p == braid.identity(len(p))
            trivial_all &= trivial
            images.append({"subdivision": n, "one_line": braid.one_line(p)})
        rows.append({"loop": [_ids(s) for s in loop.steps], "trivial_in_all": trivial_all, "images": images})
    if args.format == "json":
        return _dump({"base": _ids(g.base), "max_total": args.max_total, "loops": rows})
    lines = [f"base: {g.base.label()}; subdivisions tested: {len(subdivisions)}"]
    for r in rows:
        steps = " ".join("{" + ",".join(s) + "}" for s in r["loop"])
        lines.append(f"{steps}: trivial under every tested subdivision: {r['trivial_in_all']}")
    return "\n".join(lines) + "\n"


def cmd_labelings(args, h) -> str:
    census = labelings.component_census(h)
    entries = [[_ids(s) for s in c] for c in census]
    if args.format == "json":
        return _dump({"count": len(census), "components": entries})
    lines = [f"components: {len(census)}"]
    for c in census:
        lines.append("  {" + ", ".join(s.label() for s in c) + "}")
    return "\n".join(lines) + "\n"


def cmd_classify(args, h) -> str:
    if not args.labeling:
        raise ParseError("classify needs --labeling FILE")
    labels = load_labeling(args.labeling, h)
    try:
        result = labelings.classify_labeling(h, labels)
    except labelings.LabelingError as exc:
        raise InvariantViolation(str(exc)) from None
    residual = None
    if result.residual is not None:
        p = result.residual
        residual = {
            "base": _ids(p.base),
            "coords": [{"cycle": _ids(s), "x": str(Fraction(x))} for s, x in zip(p.directions, p.coords)],
        }
    obj = {"odd_cycles": [_ids(s) for s in result.odd_cycles], "residual": residual}
    if args.format == "json":
        return _dump(obj)
    lines = ["odd cycles: {" + ", ".join(s.label() for s in result.odd_cycles) + "}"]
    if residual is None:
        lines.append("residual: empty")
    else:
        lines.append(f"residual base: {result.residual.base.label()}")
        for item in residual["coords"]:
            lines.append(f"  {{{','.join(item['cycle'])}}}: {item['x']}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "matchings": cmd_matchings,
    "complex": cmd_complex,
    "curvature": cmd_curvature,
    "presentation": cmd_presentation,
    "braid": cmd_braid,
    "labelings": cmd_labelings,
    "classify": cmd_classify,
    "kernel-experiment": cmd_kernel_experiment,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matchgroups", description="Dimer complexes and matching groups of graphs.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("input", help="graph JSON: {\"vertices\": [...], \"edges\": [{\"id\": ..., \"ends\": [...]}]}")
    p.add_argument("--mode", choices=["graph", "hypergraph"], default="graph")
    p.add_argument("--format", choices=["json", "dot", "text"], default="text")
    p.add_argument("--orientation", help="JSON file with distinguished halves / v-halves")
    p.add_argument("--max-dim", type=int, default=None, help="truncate the complex to this dimension")
    p.add_argument("--basepoint", help="comma-separated edge ids of the base perfect matching")
    p.add_argument("--subdivide", help="e=k,... inserts 2k new vertices into edge e")
    p.add_argument("--loop", help="glide cycles separated by ';', each a comma-separated edge list")
    p.add_argument("--bipartite", action="store_true", help="use the v-orientation from the bipartition")
    p.add_argument("--labeling", help="JSON file mapping edge ids to rational labels")
    p.add_argument("--max-total", type=int, default=1, help="kernel-experiment: bound on |n|")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        h = load_hypergraph(args.input, args.mode)
        out = COMMANDS[args.command](args, h)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
