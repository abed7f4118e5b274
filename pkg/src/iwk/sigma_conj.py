"""Twisted-conjugacy invariants on the extended affine Weyl group: Newton
points, the class map to the coinvariants of the fundamental group, straight
elements, and the admissible classes with their partial order and basic
element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .abelian import Vec, mat_mul
from .admissible import AdmissibleSet, adm, element_sort_key
from .errors import err
from .iwahori_weyl import (
    IwElement,
    apply_sigma,
    length,
    mul,
    omega_component,
    translation,
)
from .root_datum import RootDatum, reduce_matrix


@dataclass(frozen=True)
class SigmaClassInvariants:
    """Dominant Newton point and class in the twisted coinvariants of the
    fundamental group; the pair determines the class."""

    newton: tuple[Fraction, ...]
    kottwitz: Vec
    is_basic: bool


@dataclass(frozen=True)
class BgMuEntry:
    invariants: SigmaClassInvariants
    witness: IwElement


def twist_period(x: IwElement) -> int:
    """Smallest n, multiple of the twist order, for which the n-fold twisted
    power of x is a translation."""
    d = x.datum
    m = reduce_matrix(d.lattice.moduli, mat_mul(x.fin.matrix, d.twist_endo))
    acc = m
    order = None
    cap = d.sigma_order * d.echelonnage.weyl_order + 1
    for k in range(1, cap + 1):
        if all(acc[i][j] == int(i == j) for i in range(len(acc)) for j in range(len(acc))):
            order = k
            break
        acc = reduce_matrix(d.lattice.moduli, mat_mul(acc, m))
    if order is None:
        raise AssertionError("twisted finite part did not close")
    return lcm(order, d.sigma_order)


def twisted_powers(x: IwElement, n: int) -> list[IwElement]:
    """p_1 .. p_n with p_k = x sigma(x) ... sigma^{k-1}(x)."""
    out = [x]
    cur = x
    for _ in range(n - 1):
        cur = apply_sigma(cur)
        out.append(mul(out[-1], cur))
    return out


def newton(x: IwElement) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Newton point of x and its dominant representative."""
    d = x.datum
    cache = d.cache.setdefault("newton", {})
    key = (x.trans, x.fin.matrix)
    got = cache.get(key)
    if got is not None:
        return got
    n = twist_period(x)
    p = twisted_powers(x, n)[-1]
    if p.fin.word:
        raise AssertionError("twisted power at the period is not a translation")
    fr = d.lattice.free_rank
    nu = tuple(Fraction(c, n) for c in p.trans[:fr])
    out = (nu, d.dominant_rep_rational(nu))
    cache[key] = out
    return out


def kottwitz(x: IwElement) -> Vec:
    """Class of x in the twisted coinvariants of the fundamental group."""
    return x.datum.pi1_gamma.project(omega_component(x))


def is_basic_newton(datum: RootDatum, nu_dom) -> bool:
    return all(sum(Fraction(a) * b for a, b in zip(s.cov, nu_dom)) == 0
               for s in datum.echelonnage.simples)


def invariants_of(x: IwElement) -> SigmaClassInvariants:
    _, nu_dom = newton(x)
    return SigmaClassInvariants(
        newton=nu_dom,
        kottwitz=kottwitz(x),
        is_basic=is_basic_newton(x.datum, nu_dom),
    )


def is_straight(x: IwElement) -> bool:
    """Whether length is additive along all twisted powers of x."""
    d = x.datum
    cache = d.cache.setdefault("straight", {})
    key = (x.trans, x.fin.matrix)
    got = cache.get(key)
    if got is None:
        n = twist_period(x)
        lx = length(x)
        got = all(length(p) == (k + 1) * lx
                  for k, p in enumerate(twisted_powers(x, n)))
        cache[key] = got
    return got


def straight_elements(aset: AdmissibleSet) -> list[IwElement]:
    if aset.kind != "iwahori":
        raise err("USAGE", "straight elements are collected at Iwahori level")
    return [x for x in aset.elements if is_straight(x)]


def leq_b(datum: RootDatum, a: SigmaClassInvariants, b: SigmaClassInvariants) -> bool:
    """Partial order: equal classes downstairs and Newton dominance."""
    return a.kottwitz == b.kottwitz and datum.newton_leq(a.newton, b.newton)


def b_g_mu(datum: RootDatum, mu: Vec) -> list[BgMuEntry]:
    """Admissible twisted-conjugacy classes, one entry per class.

    Enumerated through straight admissible elements; cross-checked against
    the direct invariant filter (class of the translation by mu, Newton point
    below the Galois average).
    """
    mu = datum.lattice.reduce(tuple(mu))
    cache = datum.cache.setdefault("bgmu", {})
    got = cache.get(mu)
    if got is not None:
        return got
    aset = adm(datum, mu)
    by_inv: dict[tuple, IwElement] = {}
    for x in aset.elements:
        if not is_straight(x):
            continue
        inv = invariants_of(x)
        key = (inv.newton, inv.kottwitz)
        if key not in by_inv or element_sort_key(x) < element_sort_key(by_inv[key]):
            by_inv[key] = x
    entries = [BgMuEntry(invariants=invariants_of(w), witness=w)
               for w in by_inv.values()]
    entries.sort(key=lambda e: (e.invariants.newton, e.invariants.kottwitz))

    kappa_mu = kottwitz(translation(datum, mu))
    nmu = datum.galois_average(mu)
    filtered = set()
    for x in aset.elements:
        inv = invariants_of(x)
        if inv.kottwitz == kappa_mu and datum.newton_leq(inv.newton, nmu):
            filtered.add((inv.newton, inv.kottwitz))
    straight_pairs = {(e.invariants.newton, e.invariants.kottwitz) for e in entries}
    if straight_pairs != filtered:
        raise AssertionError(
            f"straight-class enumeration and invariant filter disagree for mu={mu}: "
            f"{sorted(straight_pairs)} vs {sorted(filtered)}")
    basics = [e for e in entries if e.invariants.is_basic]
    if len(basics) != 1:
        raise AssertionError(f"expected exactly one basic class for mu={mu}, got {len(basics)}")
    cache[mu] = entries
    return entries


def basic_entry(datum: RootDatum, mu: Vec) -> BgMuEntry:
    return next(e for e in b_g_mu(datum, mu) if e.invariants.is_basic)
