"""Brute-force oracles used as ground truth by the test suite and the CLI.

Each oracle re-derives a definition from first principles: breadth-first word
search for length, exhaustive subword scans for the Bruhat order, bounded
nonnegative combinations for cone membership, and bounded twisted-conjugation
orbits.  They deliberately share nothing with the optimised implementations
beyond the datum and element types, so agreement is meaningful evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .errors import err
from .iwahori_weyl import (
    IwElement,
    affine_gens,
    apply_sigma,
    identity_element,
    inv,
    mul,
)
from .root_datum import RootDatum


@dataclass(frozen=True)
class OracleCaps:
    """Size caps keeping every suite under a minute on a laptop."""

    max_length: int = 6
    max_coordinate: int = 3
    max_cone_coeff: int = 8
    max_orbit: int = 4096


CAPS = OracleCaps()


@dataclass
class OracleReport:
    suite: str
    checked: int
    mismatches: list

    def ok(self) -> bool:
        return not self.mismatches


def is_length_zero(datum: RootDatum, x: IwElement) -> bool:
    """First-principles test: x normalises the set of simple reflections.

    The elements permuting the walls of the base alcove are exactly the
    length-zero ones.
    """
    gens = affine_gens(datum)
    gen_set = {g.element for g in gens}
    xi = inv(x)
    return all(mul(mul(x, g.element), xi) in gen_set for g in gens)


def word_ball(datum: RootDatum, seeds, depth: int):
    """Breadth-first ball over right multiplication by the generators.

    Returns {element: (distance, word, seed)} where the word lists generator
    indices, so element == seed * product(word); seeds are distance-zero
    sources, re-verified to be length zero by the wall-permutation test.
    """
    gens = affine_gens(datum)
    out = {}
    for s in seeds:
        if not is_length_zero(datum, s):
            raise err("CAP_EXCEEDED", "seed fails the length-zero wall test")
        out[s] = (0, (), s)
    frontier = list(out)
    for d in range(1, depth + 1):
        nxt = []
        for x in frontier:
            _, wx, sx = out[x]
            for g in gens:
                y = mul(x, g.element)
                if y not in out:
                    out[y] = (d, wx + (g.index,), sx)
                    nxt.append(y)
        frontier = nxt
    return out


def bfs_length(datum: RootDatum, x: IwElement, cap: int | None = None) -> int:
    """Word length of x by breadth-first search toward a length-zero element."""
    cap = CAPS.max_length if cap is None else cap
    gens = affine_gens(datum)
    if is_length_zero(datum, x):
        return 0
    seen = {x}
    frontier = [x]
    for d in range(1, cap + 1):
        nxt = []
        for y in frontier:
            for g in gens:
                z = mul(g.element, y)
                if z in seen:
                    continue
                if is_length_zero(datum, z):
                    return d
                seen.add(z)
                nxt.append(z)
        frontier = nxt
    raise err("CAP_EXCEEDED", f"no length-zero element within distance {cap}")


def oracle_reduced_word(datum: RootDatum, x: IwElement, cap: int | None = None):
    """Some reduced word for the affine part of x, from the search tree."""
    cap = CAPS.max_length if cap is None else cap
    if is_length_zero(datum, x):
        return (), x
    gens = affine_gens(datum)
    parents = {x: None}
    frontier = [x]
    for _ in range(cap):
        nxt = []
        for y in frontier:
            for g in gens:
                z = mul(g.element, y)
                if z in parents:
                    continue
                parents[z] = (y, g.index)
                if is_length_zero(datum, z):
                    # z = g_{i_k} ... g_{i_1} x, so x = g_{i_1} ... g_{i_k} z;
                    # the walk from z collects i_k first, so reverse it
                    word = []
                    node = z
                    while parents[node] is not None:
                        prev, i = parents[node]
                        word.append(i)
                        node = prev
                    return tuple(reversed(word)), z
                nxt.append(z)
        frontier = nxt
    raise err("CAP_EXCEEDED", f"no reduced word within length {cap}")


def subword_leq(datum: RootDatum, x: IwElement, y: IwElement,
                cap: int | None = None) -> bool:
    """Exhaustive subword test against one reduced word of y."""
    word, om = oracle_reduced_word(datum, y, cap)
    gens = affine_gens(datum)
    prods = {om}
    for i in reversed(word):
        prods |= {mul(gens[i].element, p) for p in prods}
    return x in prods


def down_set(datum: RootDatum, maxima, cap: int | None = None) -> set[IwElement]:
    """All subword products below the given elements."""
    gens = affine_gens(datum)
    out: set[IwElement] = set()
    for m in maxima:
        word, om = oracle_reduced_word(datum, m, cap)
        prods = {om}
        for i in reversed(word):
            prods |= {mul(gens[i].element, p) for p in prods}
        out |= prods
    return out


def cone_member(datum: RootDatum, v, generators, cap: int | None = None) -> bool:
    """Whether v is a nonnegative integer combination of the generators,
    by bounded exhaustive enumeration."""
    cap = CAPS.max_cone_coeff if cap is None else cap
    gens = [tuple(g) for g in generators]
    v = tuple(v)
    n = len(v)
    zero = (0,) * n

    def rec(idx, acc):
        if acc == v and idx == len(gens):
            return True
        if idx == len(gens):
            return False
        cur = acc
        for c in range(cap + 1):
            if rec(idx + 1, cur):
                return True
            cur = tuple(a + g for a, g in zip(cur, gens[idx]))
        return False

    return rec(0, zero)


def orbit_closure(datum: RootDatum, seed: IwElement, bound: int,
                  extra_conjugators=()) -> set[IwElement]:
    """Twisted-conjugation orbit of the seed under the generators (and any
    supplied length-zero elements), keeping only elements whose search stays
    within the cap."""
    gens = [g.element for g in affine_gens(datum)] + list(extra_conjugators)
    seen = {seed}
    frontier = [seed]
    while frontier:
        if len(seen) > CAPS.max_orbit:
            raise err("CAP_EXCEEDED", "orbit closure exceeded the cap")
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(mul(g, x), inv(apply_sigma(g)))
                if y not in seen and bfs_ball_length_bound(datum, y, bound):
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def bfs_ball_length_bound(datum: RootDatum, x: IwElement, bound: int) -> bool:
    """Whether x has word length at most the bound (search-based)."""
    try:
        return bfs_length(datum, x, cap=bound) <= bound
    except Exception:
        return False


def snf_suite(trials: int = 200, size: int = 8, span: int = 20) -> OracleReport:
    """Random Smith-normal-form verification with a fixed seed."""
    import random

    from .abelian import det, mat, mat_mul, smith_normal_form

    rng = random.Random(20240901)
    mismatches = []
    checked = 0
    for _ in range(trials):
        r = rng.randint(1, size)
        c = rng.randint(1, size)
        m = mat([[rng.randint(-span, span) for _ in range(c)] for _ in range(r)])
        u, d, v = smith_normal_form(m)
        checked += 1
        if mat_mul(mat_mul(u, m), v) != d:
            mismatches.append((m, "product"))
            continue
        if abs(det(u)) != 1 or abs(det(v)) != 1:
            mismatches.append((m, "unimodular"))
            continue
        diag = [d[i][i] for i in range(min(r, c))]
        for a, b in zip(diag, diag[1:]):
            if a == 0 and b != 0:
                mismatches.append((m, "divisibility"))
                break
            if a != 0 and b % a != 0:
                mismatches.append((m, "divisibility"))
                break
    return OracleReport("snf", checked, mismatches)


def length_suite(datum: RootDatum, max_len: int | None = None,
                 omega_classes=None) -> OracleReport:
    """Iwahori-Matsumoto length against breadth-first word length."""
    from .iwahori_weyl import length, omega_element

    max_len = CAPS.max_length if max_len is None else max_len
    if omega_classes is None:
        omega_classes = default_omega_classes(datum)
    seeds = [omega_element(datum, c) for c in omega_classes]
    ball = word_ball(datum, seeds, max_len)
    mismatches = []
    for x, (d, _, _) in ball.items():
        if length(x) != d:
            mismatches.append((x, length(x), d))
    return OracleReport("length", len(ball), mismatches)


def bruhat_suite(datum: RootDatum, max_len: int = 4,
                 omega_classes=None) -> OracleReport:
    """Optimised Bruhat order against exhaustive subword scans.

    The search words from the ball provide one reduced word per element; all
    subword products of that word, with the length-zero seed on the left,
    enumerate the down-set exactly.
    """
    from .iwahori_weyl import bruhat_leq, omega_element

    if omega_classes is None:
        omega_classes = default_omega_classes(datum)
    seeds = [omega_element(datum, c) for c in omega_classes]
    ball = word_ball(datum, seeds, max_len)
    gens = affine_gens(datum)
    downs = {}
    for y, (_, word, seed) in ball.items():
        prods = {identity_element(datum)}
        for i in word:
            prods |= {mul(p, gens[i].element) for p in prods}
        downs[y] = {mul(seed, p) for p in prods}
    elems = sorted(ball, key=lambda x: (ball[x][0], x.trans))
    mismatches = []
    checked = 0
    for x in elems:
        for y in elems:
            checked += 1
            got = bruhat_leq(x, y)
            want = x in downs[y]
            if got != want:
                mismatches.append((x, y, got, want))
    return OracleReport("bruhat", checked, mismatches)


def admissible_suite(datum: RootDatum, mu) -> OracleReport:
    """Admissible-set enumeration against the brute-force down-set."""
    from .admissible import adm, weyl_orbit
    from .iwahori_weyl import length, translation

    aset = adm(datum, mu)
    lm = max((length(x) for x in aset.elements), default=0)
    maxima = [translation(datum, nu) for nu in weyl_orbit(datum, aset.mu)]
    want = down_set(datum, maxima, cap=max(lm, 1))
    got = set(aset.elements)
    mismatches = []
    if got != want:
        mismatches.append((sorted(e.trans for e in got - want),
                           sorted(e.trans for e in want - got)))
    return OracleReport("admissible", len(want), mismatches)


def default_omega_classes(datum: RootDatum, window: int = 1):
    """A small deterministic window of fundamental-group classes."""
    pi1 = datum.pi1
    ranges = []
    for i in range(pi1.rank):
        if i < pi1.free_rank:
            ranges.append(range(-window, window + 1))
        else:
            ranges.append(range(pi1.torsion[i - pi1.free_rank]))
    return [tuple(v) for v in iproduct(*ranges)] or [()]
