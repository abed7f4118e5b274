"""Stratum bookkeeping: twisted supports, basic-locus flags, compact-type
factor detection, the twist-fixed part of the fundamental group, orbit
parahorics, and connected-component predictions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FgAbelian, Vec, fixed_subgroup
from .admissible import adm, adm_K, k_adm, tau_of
from .errors import err
from .iwahori_weyl import (
    IwElement,
    affine_gens,
    conj_perm_on_gens,
    inv,
    length,
    mul,
    omega_component,
    reduced_word,
    sigma_perm_on_gens,
    subgroup_finite,
    component_nodes,
)
from .root_datum import RootDatum
from .sigma_conj import SigmaClassInvariants, b_g_mu, invariants_of


@dataclass(frozen=True)
class StratumReport:
    element: IwElement
    length: int
    supp_sigma: tuple[int, ...]
    basic: bool
    ekor_member: bool
    omega_class: Vec
    kind: str  # "kr" or "ekor"


@dataclass(frozen=True)
class FactorReport:
    nodes: tuple[int, ...]
    compact_type: bool
    mu_noncentral: bool


@dataclass(frozen=True)
class ComponentReport:
    pi1_sigma: FgAbelian
    factors: tuple[FactorReport, ...]
    count: int | None
    symbolic: str
    status: str  # always "predicted": the geometric statement is not checked here


def _tau_sigma_perm(datum: RootDatum, tau: IwElement) -> tuple[int, ...]:
    sig = sigma_perm_on_gens(datum)
    conj = conj_perm_on_gens(datum, tau)
    return tuple(conj[sig[i]] for i in range(len(sig)))


def supp_sigma(datum: RootDatum, w: IwElement, tau: IwElement) -> tuple[int, ...]:
    """Orbit closure of the support of the affine part of ``w`` under
    conjugation-by-tau composed with the twist."""
    if length(tau) != 0:
        raise err("TAU_NOT_LENGTH_ZERO", "tau must have length zero")
    word, _ = reduced_word(w)
    perm = _tau_sigma_perm(datum, tau)
    out = set(word)
    frontier = set(word)
    while frontier:
        nxt = {perm[i] for i in frontier} - out
        out |= nxt
        frontier = nxt
    return tuple(sorted(out))


def kr_basic_flag(datum: RootDatum, w: IwElement, tau: IwElement) -> bool:
    """Whether the stratum of ``w`` is predicted to lie in the basic locus."""
    return subgroup_finite(datum, supp_sigma(datum, w, tau))


def galois_factors(datum: RootDatum) -> tuple[tuple[int, ...], ...]:
    """Affine node sets grouped into twist orbits of Dynkin components."""
    comps = component_nodes(datum)
    perm = sigma_perm_on_gens(datum)
    comp_of = {}
    for cid, nodes in enumerate(comps):
        for i in nodes:
            comp_of[i] = cid
    n = len(comps)
    seen = [False] * n
    out = []
    for cid in range(n):
        if seen[cid]:
            continue
        group = []
        stack = [cid]
        seen[cid] = True
        while stack:
            c = stack.pop()
            group.append(c)
            img = comp_of[perm[comps[c][0]]]
            if not seen[img]:
                seen[img] = True
                stack.append(img)
        nodes = tuple(sorted(i for c in group for i in comps[c]))
        out.append(nodes)
    return tuple(sorted(out))


def compact_type_factors(datum: RootDatum, tau: IwElement) -> list[bool]:
    """Per factor, whether conjugation-by-tau composed with the twist acts
    transitively on the affine diagram nodes."""
    if length(tau) != 0:
        raise err("TAU_NOT_LENGTH_ZERO", "tau must have length zero")
    perm = _tau_sigma_perm(datum, tau)
    out = []
    for nodes in galois_factors(datum):
        orbit = {nodes[0]}
        frontier = {nodes[0]}
        while frontier:
            nxt = {perm[i] for i in frontier} - orbit
            orbit |= nxt
            frontier = nxt
        out.append(orbit >= set(nodes))
    return out


def pi1_I_sigma(datum: RootDatum) -> FgAbelian:
    """Twist-fixed subgroup of the fundamental-group quotient."""
    got = datum.cache.get("pi1_sigma_fixed")
    if got is None:
        got, _ = fixed_subgroup(datum.pi1, datum.pi1_sigma)
        datum.cache["pi1_sigma_fixed"] = got
    return got


def sigma_orbit_parahorics(datum: RootDatum, tau: IwElement) -> list[tuple[tuple[int, ...], bool]]:
    """Distinct orbits of generator indices under conjugation-by-tau composed
    with the twist, each flagged finite or infinite."""
    if length(tau) != 0:
        raise err("TAU_NOT_LENGTH_ZERO", "tau must have length zero")
    perm = _tau_sigma_perm(datum, tau)
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        orbit = {i}
        j = perm[i]
        while j not in orbit:
            orbit.add(j)
            j = perm[j]
        seen |= orbit
        k = tuple(sorted(orbit))
        out.append((k, subgroup_finite(datum, k)))
    return sorted(out)


def mu_noncentral_on_factor(datum: RootDatum, mu: Vec, nodes: tuple[int, ...]) -> bool:
    """Some root of the factor pairs nonzero with mu."""
    gens = affine_gens(datum)
    simple_ids = [gens[i].simple_index for i in nodes if gens[i].kind == "finite"]
    for i in simple_ids:
        s = datum.echelonnage.simples[i]
        if datum.pair(s.cov, mu) != 0:
            return True
    return False


def component_report(datum: RootDatum, mu: Vec, b: SigmaClassInvariants,
                     kset=()) -> ComponentReport:
    """Predicted connected-component data for the stratum attached to ``b``."""
    mu = datum.lattice.reduce(tuple(mu))
    entries = b_g_mu(datum, mu)
    if not any(e.invariants == b for e in entries):
        raise err("INVARIANTS_NOT_IN_BGMU",
                  "invariants do not index an admissible class for this mu")
    tau = tau_of(datum, mu)
    compact = compact_type_factors(datum, tau)
    factors = []
    for nodes, ct in zip(galois_factors(datum), compact):
        factors.append(FactorReport(
            nodes=nodes,
            compact_type=ct,
            mu_noncentral=mu_noncentral_on_factor(datum, mu, nodes),
        ))
    fixed = pi1_I_sigma(datum)
    if all(f.mu_noncentral for f in factors):
        order = fixed.order()
        if order is None:
            return ComponentReport(fixed, tuple(factors), None,
                                   "pi1(G)_I^sigma", "predicted")
        return ComponentReport(fixed, tuple(factors), order, "", "predicted")
    return ComponentReport(fixed, tuple(factors), None,
                           "G(Qp)/G(Zp)-torsor on central factors", "predicted")


def strata_table(datum: RootDatum, mu: Vec, kset) -> list[StratumReport]:
    """Reports for the level-K strata: KR rows from the double-coset minima
    and the finer rows from the minimal left-coset representatives."""
    mu = datum.lattice.reduce(tuple(mu))
    tau = tau_of(datum, mu)
    ekor = k_adm(datum, mu, kset)
    kr = adm_K(datum, mu, kset)
    ekor_set = set(ekor.elements)
    rows = []
    for kind, aset in (("kr", kr), ("ekor", ekor)):
        for x in aset.elements:
            supp = supp_sigma(datum, x, tau)
            rows.append(StratumReport(
                element=x,
                length=length(x),
                supp_sigma=supp,
                basic=subgroup_finite(datum, supp),
                ekor_member=x in ekor_set,
                omega_class=omega_component(x),
                kind=kind,
            ))
    return rows
