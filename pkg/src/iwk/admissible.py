"""Admissible sets: the Bruhat down-closure of the translations by the Weyl
orbit of a dominant coweight, its parahoric double-coset image, the minimal
coset representatives indexing the finer stratification, the very-special
dominance description, and closure posets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .abelian import Vec, vec_sub
from .errors import err
from .iwahori_weyl import (
    IwElement,
    affine_gens,
    bruhat_leq,
    enumerate_parahoric,
    length,
    min_coset_rep,
    mul,
    omega_component,
    omega_element,
    reduced_word,
    sigma_perm_on_gens,
    subgroup_finite,
    translation,
)
from .root_datum import RootDatum


@dataclass(frozen=True)
class AdmissibleSet:
    mu: Vec
    level: tuple[int, ...] | None
    elements: tuple[IwElement, ...]
    kind: str  # iwahori | parahoric_double_coset | ekor_min_reps


@dataclass(frozen=True)
class ClosurePoset:
    nodes: tuple[IwElement, ...]
    covers: tuple[tuple[int, int], ...]  # (lower, upper) node indices


def element_sort_key(x: IwElement):
    word, om = reduced_word(x)
    return (length(x), word, om.trans)


def weyl_orbit(datum: RootDatum, w: Vec) -> list[Vec]:
    w = datum.lattice.reduce(w)
    seen = {w}
    queue = [w]
    while queue:
        nxt = []
        for v in queue:
            for s in datum.echelonnage.simples:
                u = datum.reflect_coweight(s, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        queue = nxt
    return sorted(seen)


def _require_dominant(datum: RootDatum, mu: Vec) -> Vec:
    mu = datum.lattice.reduce(tuple(mu))
    if not datum.is_dominant(mu):
        raise err("NOT_DOMINANT", f"mu = {list(mu)} is not dominant")
    return mu


def adm(datum: RootDatum, mu: Vec) -> AdmissibleSet:
    """The admissible set at Iwahori level: everything Bruhat-below some Weyl
    translate of the translation by mu."""
    mu = _require_dominant(datum, mu)
    cache = datum.cache.setdefault("adm", {})
    got = cache.get(mu)
    if got is not None:
        return got
    gens = affine_gens(datum)
    out: set[IwElement] = set()
    for nu in weyl_orbit(datum, mu):
        word, om = reduced_word(translation(datum, nu))
        prods = {om}
        # subword products of the fixed reduced word, built left to right
        for i in reversed(word):
            prods |= {mul(gens[i].element, p) for p in prods}
        out |= prods
    elements = tuple(sorted(out, key=element_sort_key))
    result = AdmissibleSet(mu=mu, level=None, elements=elements, kind="iwahori")
    cache[mu] = result
    return result


def tau_of(datum: RootDatum, mu: Vec) -> IwElement:
    """The unique length-zero admissible element."""
    mu = _require_dominant(datum, mu)
    tau = omega_element(datum, omega_component(translation(datum, mu)))
    return tau


def _check_level(datum: RootDatum, kset) -> tuple[int, ...]:
    k = tuple(sorted(set(kset)))
    perm = sigma_perm_on_gens(datum)
    if {perm[i] for i in k} != set(k):
        raise err("K_NOT_SIGMA_STABLE", f"level {list(k)} is not stable under the twist")
    if not subgroup_finite(datum, k):
        raise err("K_INFINITE", f"level {list(k)} generates an infinite subgroup")
    return k


def adm_K(datum: RootDatum, mu: Vec, kset) -> AdmissibleSet:
    """Minimal double-coset representatives of the image at level K."""
    mu = _require_dominant(datum, mu)
    k = _check_level(datum, kset)
    reps = {min_coset_rep(datum, k, x, "double") for x in adm(datum, mu).elements}
    return AdmissibleSet(mu=mu, level=k,
                         elements=tuple(sorted(reps, key=element_sort_key)),
                         kind="parahoric_double_coset")


def k_adm(datum: RootDatum, mu: Vec, kset) -> AdmissibleSet:
    """Admissible elements of minimal length in their left coset at level K."""
    mu = _require_dominant(datum, mu)
    k = _check_level(datum, kset)
    elems = [x for x in adm(datum, mu).elements
             if min_coset_rep(datum, k, x, "left") == x]
    return AdmissibleSet(mu=mu, level=k, elements=tuple(elems), kind="ekor_min_reps")


def is_very_special(datum: RootDatum, kset) -> bool:
    """Whether the parahoric level projects isomorphically onto the finite
    Weyl group."""
    k = tuple(sorted(set(kset)))
    if not subgroup_finite(datum, k):
        return False
    group = enumerate_parahoric(datum, k)
    if len(group) != datum.echelonnage.weyl_order:
        return False
    fins = {x.fin.matrix for x in group}
    return len(fins) == len(group)


def very_special_levels(datum: RootDatum) -> list[tuple[int, ...]]:
    """All twist-stable very special levels, smallest index sets first."""
    gens = affine_gens(datum)
    perm = sigma_perm_on_gens(datum)
    out = []
    for bits in iproduct((0, 1), repeat=len(gens)):
        k = tuple(i for i, b in enumerate(bits) if b)
        if {perm[i] for i in k} != set(k):
            continue
        if not subgroup_finite(datum, k):
            continue
        if is_very_special(datum, k):
            out.append(k)
    return sorted(out)


def dominant_below(datum: RootDatum, mu: Vec) -> list[Vec]:
    """All dominant coweights <= mu in the dominance order."""
    mu = _require_dominant(datum, mu)
    simples = datum.echelonnage.simples
    two_rho = datum.two_rho()
    budget = datum.pair(two_rho, mu)
    out = []
    k = len(simples)

    def rec(idx, coeffs, spent):
        if idx == k:
            lam = mu
            for c, s in zip(coeffs, simples):
                lam = datum.lattice.sub(lam, datum.lattice.scale(c, s.coroot))
            if datum.is_dominant(lam):
                out.append(lam)
            return
        step = datum.pair(two_rho, simples[idx].coroot)
        c = 0
        while spent + c * step <= budget:
            rec(idx + 1, coeffs + [c], spent + c * step)
            c += 1

    rec(0, [], 0)
    return sorted(set(out))


def adm_very_special(datum: RootDatum, mu: Vec, kset) -> AdmissibleSet:
    """The dominance-order description of the level-K image at a very special
    level: all dominant coweights below mu, as translation avatars."""
    mu = _require_dominant(datum, mu)
    k = _check_level(datum, kset)
    if not is_very_special(datum, k):
        raise err("NOT_VERY_SPECIAL", f"level {list(k)} is not very special")
    lams = dominant_below(datum, mu)
    elems = tuple(translation(datum, lam) for lam in lams)
    return AdmissibleSet(mu=mu, level=k, elements=elems, kind="very_special_coweights")


def coweight_avatar(datum: RootDatum, kset, x: IwElement) -> Vec:
    """The dominant coweight whose translation lies in the double coset of x.

    Defined at a very special level, where the double cosets biject with
    dominant coweights.
    """
    k = tuple(sorted(set(kset)))
    group = enumerate_parahoric(datum, k)
    for u in group:
        ux = mul(u, x)
        for v in group:
            uxv = mul(ux, v)
            if not uxv.fin.word and datum.is_dominant(uxv.trans):
                return uxv.trans
    raise AssertionError("double coset contains no dominant translation")


def closure_poset(aset: AdmissibleSet) -> ClosurePoset:
    """Hasse diagram of the Bruhat order restricted to the set."""
    nodes = aset.elements
    n = len(nodes)
    less = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and length(nodes[i]) < length(nodes[j]) and \
                    bruhat_leq(nodes[i], nodes[j]):
                less[i][j] = True
    covers = []
    for i in range(n):
        for j in range(n):
            if less[i][j] and not any(less[i][m] and less[m][j] for m in range(n)):
                covers.append((i, j))
    return ClosurePoset(nodes=nodes, covers=tuple(sorted(covers)))
