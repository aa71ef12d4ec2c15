"""Words, presentations and right-angled Artin groups.

A word is a tuple of letters ``(generator, exponent)`` with exponent +1 or -1.
Generators can be any hashable value: edge sets for the Artin group on
glides, edge ids for the Artin group on edges, strings for presentations.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

Letter = tuple  # (generator, +1 | -1)
Word = tuple


class WordError(ValueError):
    pass


def inverse(w: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def free_reduce(w: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in w:
        if e not in (1, -1):
            raise WordError(f"exponent {e} is not +-1")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_reduce(w: Iterable[Letter]) -> Word:
    w = list(free_reduce(w))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def exponent_sums(w: Iterable[Letter]) -> dict:
    out: dict = {}
    for g, e in w:
        out[g] = out.get(g, 0) + e
    return {g: v for g, v in out.items() if v}


# -- right-angled Artin groups ------------------------------------------------------


@dataclass(frozen=True)
class ArtinGroup:
    """Generators in a fixed order and a symmetric irreflexive commutation relation."""

    generators: tuple
    commuting: frozenset  # of 2-element frozensets

    def __post_init__(self):
        gens = set(self.generators)
        for pair in self.commuting:
            if len(pair) != 2:
                raise WordError("commuting pairs must consist of two distinct generators")
            if not pair <= gens:
                raise WordError("commuting pair mentions an unknown generator")
        object.__setattr__(self, "_order", {g: i for i, g in enumerate(self.generators)})

    def commute(self, g, h) -> bool:
        return g != h and frozenset((g, h)) in self.commuting

    def index(self, g) -> int:
        try:
            return self._order[g]
        except KeyError:
            raise WordError(f"unknown generator {g!r}") from None


def raag(generators: Iterable, commuting_pairs: Iterable[tuple]) -> ArtinGroup:
    return ArtinGroup(tuple(generators), frozenset(frozenset(p) for p in commuting_pairs))


def raag_normal_form(w: Iterable[Letter], group: ArtinGroup) -> Word:
    """Canonical form of ``w`` in the right-angled Artin group.

    First cancel every pair g^e ... g^-e whose intervening letters all commute
    with g; the result is a reduced word, unique up to swapping adjacent
    commuting letters. Then emit the lexicographically least such rearrangement
    (smallest available generator first, positive before negative). The output
    is empty iff ``w`` is trivial.
    """
    letters = list(w)
    for g, e in letters:
        group.index(g)
        if e not in (1, -1):
            raise WordError(f"exponent {e} is not +-1")
    changed = True
    while changed:
        changed = False
        for i in range(len(letters)):
            g, e = letters[i]
            for j in range(i + 1, len(letters)):
                h, f = letters[j]
                if h == g:
                    if f == -e:
                        del letters[j]
                        del letters[i]
                        changed = True
                    break
                if not group.commute(g, h):
                    break
            if changed:
                break
    out = []
    while letters:
        best = None
        for i, (g, e) in enumerate(letters):
            if all(group.commute(g, h) for h, _ in letters[:i]):
                rank = (group.index(g), -e)
                if best is None or rank < best[0]:
                    best = (rank, i)
        out.append(letters.pop(best[1]))
    return tuple(out)


def raag_equal(u: Iterable[Letter], v: Iterable[Letter], group: ArtinGroup) -> bool:
    return raag_normal_form(tuple(u) + inverse(tuple(v)), group) == ()


def raag_of_system(glides: Iterable, sys) -> ArtinGroup:
    """The Artin group on the given glides; independent glides commute."""
    gens = sorted(set(glides), key=sys.key)
    pairs = [
        (s, t)
        for i, s in enumerate(gens)
        for t in gens[i + 1:]
        if sys.independent(s, t)
    ]
    return raag(gens, pairs)


def raag_edges(h) -> ArtinGroup:
    """Generators h_e for the edges; h_e, h_f commute when e, f share no vertex."""
    pairs = []
    for i, e in enumerate(h.edges):
        for j in range(i + 1, len(h.edges)):
            if h.vmask[i] & h.vmask[j] == 0:
                pairs.append((e, h.edges[j]))
    return raag(h.edges, pairs)


def typing_word(path, orientation) -> Word:
    """g_{s1}^{nu1} ... g_{sn}^{nun} for a path given as a base and glide steps."""
    out = []
    current = path.base
    for s in path.steps:
        out.append((s, orientation.sign(current, s)))
        current = s * current
    return tuple(out)


def u_map(w: Iterable[Letter], orientation) -> Word:
    """Substitute g_s -> prod_{e in s - s'} h_e^-1 prod_{e in s'} h_e."""
    out: list[Letter] = []
    for s, e in w:
        half = orientation.half(s)
        image = tuple((x, -1) for x in (s - half)) + tuple((x, 1) for x in half)
        out.extend(image if e == 1 else inverse(image))
    return tuple(out)


def half_flip(w: Iterable[Letter], s0) -> Word:
    """Apply the automorphism inverting the generator ``s0``."""
    return tuple((g, -e if g == s0 else e) for g, e in w)


# -- presentations ----------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            for g, e in r:
                if g not in gens:
                    raise WordError(f"relator mentions unknown generator {g!r}")
                if e not in (1, -1):
                    raise WordError(f"exponent {e} is not +-1")

    def to_text(self) -> str:
        gens = ", ".join(map(str, self.generators)) or "none"
        rels = ", ".join(word_text(r) for r in self.relators) or "none"
        return f"gens: {gens}; rels: {rels}"

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [word_to_json(r) for r in self.relators],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> Presentation:
        return cls(
            tuple(obj["generators"]),
            tuple(word_from_json(r) for r in obj["relators"]),
        )


def word_text(w: Sequence[Letter]) -> str:
    if not w:
        return "1"
    return " ".join(str(g) if e == 1 else f"{g}^-1" for g, e in w)


def word_to_json(w: Sequence[Letter], label=str) -> list:
    return [{"gen": label(g), "exp": e} for g, e in w]


def word_from_json(items: Iterable[Mapping]) -> Word:
    return tuple((item["gen"], int(item["exp"])) for item in items)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# -- abelianization ---------------------------------------------------------------------


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def echelon_rows(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """An integer echelon basis of the row lattice (unimodular row operations only)."""
    pivots: dict[int, list[int]] = {}
    for row in rows:
        r = list(row)
        col = 0
        while col < ncols:
            if r[col] == 0:
                col += 1
                continue
            p = pivots.get(col)
            if p is None:
                if r[col] < 0:
                    r = [-v for v in r]
                pivots[col] = r
                break
            g, x, y = _egcd(p[col], r[col])
            a, b = p[col] // g, r[col] // g
            new_p = [x * u + y * v for u, v in zip(p, r)]
            r = [a * v - b * u for u, v in zip(p, r)]
            if new_p[col] < 0:
                new_p = [-v for v in new_p]
            pivots[col] = new_p
            col += 1
    return [pivots[c] for c in sorted(pivots)]


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Non-zero invariant factors d1 | d2 | ... of an integer matrix."""
    m = [list(r) for r in echelon_rows(rows, ncols)]
    nrows = len(m)
    out = []
    t = 0
    while t < min(nrows, ncols):
        # smallest non-zero entry of the remaining block goes to (t, t)
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = m[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            piv = m[t][t]
            for i in range(t + 1, nrows):
                if m[i][t]:
                    q = m[i][t] // piv
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if m[t][j]:
                    q = m[t][j] // piv
                    for row in m:
                        row[j] -= q * row[t]
                    if m[t][j]:
                        done = False
            if done:
                # divisibility: fold a non-divisible entry into row t
                bad = next(
                    (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if m[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                m[t] = [a + b for a, b in zip(m[t], m[bad])]
                done = False
            if not done:
                best = None
                for i in range(t, nrows):
                    if m[i][t] and (best is None or abs(m[i][t]) < best[0]):
                        best = (abs(m[i][t]), i, "r")
                for j in range(t, ncols):
                    if m[t][j] and (best is None or abs(m[t][j]) < best[0]):
                        best = (abs(m[t][j]), j, "c")
                _, k, kind = best
                if kind == "r":
                    m[t], m[k] = m[k], m[t]
                else:
                    for row in m:
                        row[t], row[k] = row[k], row[t]
        out.append(abs(m[t][t]))
        t += 1
    return out


def relator_matrix(p: Presentation) -> list[list[int]]:
    index = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for g, e in r:
            row[index[g]] += e
        rows.append(row)
    return rows


def abelianization(p: Presentation) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients) of the abelianized group."""
    n = len(p.generators)
    inv = smith_invariants(relator_matrix(p), n)
    return n - len(inv), [d for d in inv if d > 1]


def abelianization_rank(p: Presentation) -> int:
    return abelianization(p)[0]


# -- Tietze moves ----------------------------------------------------------------------


def _canonical_relator(r: Word) -> Word:
    r = cyclic_reduce(r)
    if not r:
        return r
    variants = []
    for w in (r, inverse(r)):
        for i in range(len(w)):
            variants.append(w[i:] + w[:i])
    return min(variants, key=lambda v: [(str(g), e) for g, e in v])


def _substitute(w: Word, g, image: Word) -> Word:
    out = []
    for h, e in w:
        if h == g:
            out.extend(image if e == 1 else inverse(image))
        else:
            out.append((h, e))
    return free_reduce(out)


def _solve_for_single(r: Word):
    """(g, image) with g occurring once in r and r = 1 equivalent to g = image."""
    counts: dict = {}
    for g, _ in r:
        counts[g] = counts.get(g, 0) + 1
    for i, (g, e) in enumerate(r):
        if counts[g] == 1:
            rest = r[i + 1:] + r[:i]
            # g^e rest = 1  =>  g = rest^(-e)
            return g, free_reduce(inverse(rest) if e == 1 else rest)
    return None


def tietze_simplify(p: Presentation, budget: int = 100_000, max_len: int = 12) -> Presentation:
    """Group-preserving simplification.

    Moves: drop relators that are freely trivial or duplicate another relator
    up to rotation and inversion; eliminate a generator that occurs exactly
    once in some relator of length at most ``max_len``, shortest relator
    first. Scans are in a fixed order, so the result is deterministic; it is a
    fixed point unless ``budget`` eliminations ran out.
    """
    gens = list(p.generators)
    rels = list(p.relators)
    while True:
        seen = set()
        kept = []
        for r in rels:
            c = _canonical_relator(r)
            if c and c not in seen:
                seen.add(c)
                kept.append(c)
        rels = kept
        if budget <= 0:
            break
        target = None
        for idx in sorted(range(len(rels)), key=lambda i: len(rels[i])):
            if len(rels[idx]) > max_len:
                break
            found = _solve_for_single(rels[idx])
            if found is not None:
                target = (idx, *found)
                break
        if target is None:
            break
        idx, g, image = target
        rels = [_substitute(r, g, image) for i, r in enumerate(rels) if i != idx]
        gens.remove(g)
        budget -= 1
    return Presentation(tuple(gens), tuple(rels))
