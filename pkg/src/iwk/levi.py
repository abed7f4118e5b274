"""Levi reduction: the centraliser of a Newton point, minuscule class
representatives, the compatible class set, root-shift moves with their path
search, and the short-element normalisation of straight elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .abelian import FgAbelian, Vec, mat_vec, quotient_by, solve_rational
from .admissible import dominant_below, weyl_orbit
from .errors import err
from .iwahori_weyl import (
    IwElement,
    apply_sigma,
    fin_from_matrix,
    fin_root_image,
    fin_inverse,
    from_fin,
    inv,
    length,
    mul,
    translation,
)
from .root_datum import Root, RootDatum, reduce_matrix
from .sigma_conj import (
    BgMuEntry,
    SigmaClassInvariants,
    b_g_mu,
    is_straight,
    newton,
)


@dataclass(frozen=True)
class Move:
    """One root shift: to_x - from_x is the coroot minus its r-th twist, and
    the four stops from_x, from_x + coroot, from_x - twisted coroot, to_x all
    sit below the bound."""

    alpha: Root
    r: int
    from_x: Vec
    to_x: Vec


class LeviDatum:
    """Sub-datum attached to a subset of the simple roots."""

    def __init__(self, datum: RootDatum, jset):
        self.datum = datum
        self.J = tuple(sorted(set(jset)))
        sig = datum.echelonnage
        for j in self.J:
            if not 0 <= j < len(sig.simples):
                raise err("USAGE", f"simple-root index {j} out of range")
        jset = set(self.J)
        self.roots = tuple(
            r for r in sig.roots
            if all(c == 0 for i, c in enumerate(datum.expansion(r)) if i not in jset))
        self.positive = tuple(r for r in self.roots if datum.is_positive(r))
        rel = datum.lattice.relators() + [sig.simples[j].coroot for j in self.J]
        self.pi1 = FgAbelian.from_presentation(datum.lattice.rank, rel)
        perm_ok = {sig.simples[j] for j in self.J} == \
            {datum.sigma_root(sig.simples[j]) for j in self.J}
        if not perm_ok:
            raise err("LEVI_MISMATCH", "twist does not stabilise the Levi")
        cols = []
        ident_cols = []
        for j in range(self.pi1.rank):
            e = tuple(int(i == j) for i in range(self.pi1.rank))
            ident_cols.append(e)
            cols.append(self.pi1.project(datum.sigma_coweight(self.pi1.lift(e))))
        self.sigma = tuple(tuple(cols[j][i] for j in range(self.pi1.rank))
                           for i in range(self.pi1.rank))
        gens = [self.pi1.sub(e, self.pi1.reduce(mat_vec(self.sigma, e)))
                for e in ident_cols]
        self.coinv = quotient_by(self.pi1, gens)
        self._affine = None

    def project(self, v: Vec) -> Vec:
        return self.pi1.project(self.datum.lattice.reduce(v))

    def kappa(self, x: Vec) -> Vec:
        """Class of a pi1 element in the twisted coinvariants."""
        return self.coinv.project(self.pi1.reduce(x))

    def is_m_dominant(self, lam) -> bool:
        sig = self.datum.echelonnage
        return all(self.datum.pair(sig.simples[j].cov, lam) >= 0 for j in self.J)

    def is_m_minuscule(self, lam) -> bool:
        return all(abs(self.datum.pair(r.cov, lam)) <= 1 for r in self.positive)

    def fin_in_levi(self, f) -> bool:
        """Whether a finite Weyl element lies in the Levi's Weyl group."""
        mats = self.datum.cache.setdefault("levi_weyl", {}).get(self.J)
        if mats is None:
            d = self.datum
            gens = [reduce_matrix(d.lattice.moduli,
                                  d.reflection_matrix(d.echelonnage.simples[j]))
                    for j in self.J]
            from .abelian import identity, mat_mul
            seen = {identity(d.lattice.rank)}
            queue = list(seen)
            while queue:
                nxt = []
                for m0 in queue:
                    for g in gens:
                        m1 = reduce_matrix(d.lattice.moduli, mat_mul(m0, g))
                        if m1 not in seen:
                            seen.add(m1)
                            nxt.append(m1)
                queue = nxt
            mats = frozenset(seen)
            self.datum.cache["levi_weyl"][self.J] = mats
        return f.matrix in mats

    def m_length(self, x: IwElement) -> int:
        """Iwahori-Matsumoto length over the Levi's roots."""
        d = self.datum
        winv = fin_inverse(d, x.fin).matrix
        total = 0
        for beta in self.positive:
            k = d.pair(beta.cov, x.trans)
            if d.is_positive(fin_root_image(d, winv, beta)):
                total += abs(k)
            else:
                total += abs(k - 1)
        return total

    def affine_elements(self):
        """Generators of the Levi's affine Weyl group inside the big group."""
        if self._affine is None:
            d = self.datum
            sig = d.echelonnage
            gens = [from_fin(d, fin_from_matrix(
                d, reduce_matrix(d.lattice.moduli,
                                 d.reflection_matrix(sig.simples[j]))))
                for j in self.J]
            comps = _components_of(self, self.J)
            for comp in comps:
                theta = _highest_in(self, comp)
                s_theta = fin_from_matrix(
                    d, reduce_matrix(d.lattice.moduli, d.reflection_matrix(theta)))
                gens.append(IwElement(d, d.lattice.reduce(theta.coroot), s_theta))
            self._affine = tuple(gens)
        return self._affine

    def omega_descend(self, x: IwElement) -> IwElement:
        """The length-zero element of the Levi coset of ``x``."""
        gens = self.affine_elements()
        lx = self.m_length(x)
        guard = 10_000
        while lx > 0:
            for g in gens:
                y = mul(g, x)
                ly = self.m_length(y)
                if ly < lx:
                    x, lx = y, ly
                    break
            else:
                raise AssertionError("no descent found inside the Levi")
            guard -= 1
            if guard < 0:
                raise AssertionError("Levi descent did not terminate")
        return x


def _components_of(levi: LeviDatum, jset):
    d = levi.datum
    sig = d.echelonnage
    js = list(jset)
    seen = set()
    comps = []
    for j in js:
        if j in seen:
            continue
        comp = {j}
        stack = [j]
        seen.add(j)
        while stack:
            a = stack.pop()
            for b in js:
                if b not in seen and d.pair(sig.simples[a].cov, sig.simples[b].coroot) != 0:
                    seen.add(b)
                    comp.add(b)
                    stack.append(b)
        comps.append(tuple(sorted(comp)))
    return comps


def _highest_in(levi: LeviDatum, comp):
    d = levi.datum
    cand = [r for r in levi.positive
            if any(d.expansion(r)[j] != 0 for j in comp)
            and all(c == 0 for i, c in enumerate(d.expansion(r)) if i not in comp)]
    return max(cand, key=lambda r: (sum(d.expansion(r)), r.cov))


def levi_of_newton(datum: RootDatum, nu_bar) -> LeviDatum:
    """The Levi cut out by the walls through a dominant Newton point."""
    nu = tuple(Fraction(x) for x in nu_bar)
    if not datum.is_dominant(nu):
        raise err("NOT_DOMINANT", "the Newton point must be dominant")
    jset = tuple(i for i, s in enumerate(datum.echelonnage.simples)
                 if sum(Fraction(a) * b for a, b in zip(s.cov, nu)) == 0)
    cache = datum.cache.setdefault("levi", {})
    got = cache.get(jset)
    if got is None:
        got = LeviDatum(datum, jset)
        cache[jset] = got
    return got


def minuscule_dominant_rep(levi: LeviDatum, x: Vec) -> tuple[Vec, IwElement]:
    """The unique Levi-dominant, Levi-minuscule coweight in the class ``x``,
    together with the finite part of the associated length-zero element."""
    d = levi.datum
    sig = d.echelonnage
    x = levi.pi1.reduce(tuple(x))
    cache = d.cache.setdefault("minrep", {})
    key = (levi.J, x)
    got = cache.get(key)
    if got is not None:
        return got
    lam = d.lattice.reduce(levi.pi1.lift(x))
    # descend into the Levi-dominant chamber first
    guard = 16 * d.echelonnage.weyl_order + 16
    while True:
        for j in levi.J:
            if d.pair(sig.simples[j].cov, lam) < 0:
                lam = d.reflect_coweight(sig.simples[j], lam)
                break
        else:
            break
        guard -= 1
        if guard < 0:
            raise AssertionError("Levi chamber descent did not terminate")
    k = len(levi.J)
    if k == 0:
        found = [lam]
    else:
        pair_vec = [d.pair(sig.simples[j].cov, lam) for j in levi.J]
        cols = [[d.pair(sig.simples[a].cov, sig.simples[b].coroot) for b in levi.J]
                for a in levi.J]
        col_vecs = [tuple(cols[a][b] for a in range(k)) for b in range(k)]
        corners = []
        for t in iproduct((0, 1), repeat=k):
            target = tuple(Fraction(pair_vec[a] - t[a]) for a in range(k))
            sol = solve_rational(col_vecs, target)
            if sol is not None:
                corners.append(sol)
        los = [min(int(c[b].__floor__()) for c in corners) for b in range(k)]
        his = [max(int(-((-c[b]).__floor__())) for c in corners) for b in range(k)]
        found = []
        for cvec in iproduct(*(range(lo, hi + 1) for lo, hi in zip(los, his))):
            cand = lam
            for c, j in zip(cvec, levi.J):
                cand = d.lattice.sub(cand, d.lattice.scale(c, sig.simples[j].coroot))
            if levi.is_m_dominant(cand) and levi.is_m_minuscule(cand):
                found.append(cand)
    found = sorted(set(found))
    if not found:
        raise err("NO_REPRESENTATIVE",
                  f"no Levi-minuscule dominant representative in class {list(x)}")
    if len(found) > 1:
        raise AssertionError(f"minuscule representative is not unique: {found}")
    mu_x = found[0]
    if levi.project(mu_x) != x:
        raise err("NO_REPRESENTATIVE", "representative landed in the wrong class")
    tau_x = levi.omega_descend(translation(d, mu_x))
    if tau_x.trans != mu_x:
        raise AssertionError("length-zero element does not sit over the representative")
    out = (mu_x, from_fin(d, tau_x.fin))
    cache[key] = out
    return out


def _witness_for(datum: RootDatum, mu: Vec, b_inv: SigmaClassInvariants) -> BgMuEntry:
    for e in b_g_mu(datum, mu):
        if e.invariants == b_inv:
            return e
    raise err("INVARIANTS_NOT_IN_BGMU",
              "invariants do not index an admissible class for this mu")


def levi_kappa_of(datum: RootDatum, mu: Vec, b_inv: SigmaClassInvariants,
                  levi: LeviDatum) -> Vec:
    """Class of b in the twisted coinvariants of the Levi's pi1, transported
    through the short-element avatar of the witness."""
    entry = _witness_for(datum, mu, b_inv)
    _, w_sharp, ok = short_element_check(datum, mu, entry.witness)
    if not ok:
        raise AssertionError("witness does not normalise into the Levi")
    x_b = levi.project(w_sharp.trans)
    return levi.kappa(x_b)


def i_mu_b_m(datum: RootDatum, mu: Vec, b_inv: SigmaClassInvariants,
             levi: LeviDatum) -> list[Vec]:
    """Classes in the Levi's pi1 compatible with b whose minuscule
    representatives sit below mu."""
    mu = datum.lattice.reduce(tuple(mu))
    if levi_of_newton(datum, b_inv.newton).J != levi.J:
        raise err("LEVI_MISMATCH", "levi is not the centraliser of b's Newton point")
    kappa_b = levi_kappa_of(datum, mu, b_inv, levi)
    out = {}
    for lam_dom in dominant_below(datum, mu):
        for lam in weyl_orbit(datum, lam_dom):
            if not (levi.is_m_dominant(lam) and levi.is_m_minuscule(lam)):
                continue
            x = levi.project(lam)
            if levi.kappa(x) != kappa_b:
                continue
            if x in out and out[x] != lam:
                raise AssertionError("two minuscule representatives in one class")
            out[x] = lam
    return sorted(out)


def is_weakly_dominant(datum: RootDatum, lam) -> bool:
    return all(datum.pair(r.cov, lam) >= -1 for r in datum.echelonnage.positive)


def orbit_size(datum: RootDatum, alpha: Root) -> tuple[int, str]:
    """Twist-orbit size of a root, classified against the component count."""
    h = len(datum.echelonnage.components)
    seen = {alpha}
    cur = alpha
    while True:
        cur = datum.sigma_root(cur)
        if cur == alpha:
            break
        seen.add(cur)
    size = len(seen)
    for mult, label in ((1, "h"), (2, "2h"), (3, "3h")):
        if size == mult * h:
            return size, label
    raise err("CLASS_ERROR", f"orbit size {size} is not in {{h,2h,3h}} for h={h}")


def _sigma_power_coroot(datum: RootDatum, alpha: Root, r: int) -> Vec:
    v = alpha.coroot
    for _ in range(r):
        v = datum.sigma_coweight(v)
    return v


def _class_below(datum: RootDatum, levi: LeviDatum, mu: Vec, y: Vec) -> bool:
    mu_y, _ = minuscule_dominant_rep(levi, y)
    return datum.dominance_leq(datum.dominant_rep(mu_y), mu)


def move_applicable(datum: RootDatum, mu: Vec, levi: LeviDatum,
                    x: Vec, alpha: Root, r: int) -> bool:
    """The four dominance conditions of a root shift."""
    if alpha in levi.roots:
        raise err("ALPHA_IN_LEVI", "shift root must lie outside the Levi")
    mu = datum.lattice.reduce(tuple(mu))
    x = levi.pi1.reduce(tuple(x))
    a = levi.project(alpha.coroot)
    sa = levi.project(_sigma_power_coroot(datum, alpha, r))
    stops = [
        x,
        levi.pi1.add(x, a),
        levi.pi1.sub(x, sa),
        levi.pi1.sub(levi.pi1.add(x, a), sa),
    ]
    return all(_class_below(datum, levi, mu, y) for y in stops)


def move_target(levi: LeviDatum, x: Vec, alpha: Root, r: int) -> Vec:
    a = levi.project(alpha.coroot)
    sa = levi.project(_sigma_power_coroot(levi.datum, alpha, r))
    return levi.pi1.sub(levi.pi1.add(levi.pi1.reduce(tuple(x)), a), sa)


def move_irreducible(datum: RootDatum, mu: Vec, levi: LeviDatum,
                     x: Vec, alpha: Root, r: int) -> bool:
    """Whether an applicable move admits no two-step factorisation."""
    if not move_applicable(datum, mu, levi, x, alpha, r):
        return False
    for i in range(1, r):
        sia = datum.sigma_root(alpha)
        for _ in range(i - 1):
            sia = datum.sigma_root(sia)
        mid1 = levi.pi1.sub(levi.pi1.add(levi.pi1.reduce(tuple(x)),
                                         levi.project(alpha.coroot)),
                            levi.project(_sigma_power_coroot(datum, alpha, i)))
        if move_applicable(datum, mu, levi, x, alpha, i) and \
                move_applicable(datum, mu, levi, mid1, sia, r - i):
            return False
        mid2 = levi.pi1.sub(levi.pi1.add(levi.pi1.reduce(tuple(x)),
                                         levi.project(_sigma_power_coroot(datum, alpha, i))),
                            levi.project(_sigma_power_coroot(datum, alpha, r)))
        if move_applicable(datum, mu, levi, x, sia, r - i) and \
                move_applicable(datum, mu, levi, mid2, alpha, i):
            return False
    return True


def move_alphabet(datum: RootDatum, levi: LeviDatum) -> list[tuple[Root, int]]:
    """Shift roots outside the Levi with Levi-dominant minuscule coroots, with
    the twist-depth bounds from the orbit classification."""
    h = len(datum.echelonnage.components)
    sig = datum.echelonnage
    out = []
    levi_roots = set(levi.roots)
    for alpha in sig.roots:
        if alpha in levi_roots:
            continue
        if not all(datum.pair(sig.simples[j].cov, alpha.coroot) >= 0 for j in levi.J):
            continue
        if not all(abs(datum.pair(r.cov, alpha.coroot)) <= 1 for r in levi.positive):
            continue
        size, label = orbit_size(datum, alpha)
        rmax = h if label in ("h", "2h") else 2 * h - 1
        for r in range(1, rmax + 1):
            out.append((alpha, r))
    return out


def find_path(datum: RootDatum, mu: Vec, levi: LeviDatum,
              x: Vec, x_target: Vec) -> list[Move] | None:
    """Breadth-first search over applicable moves; None when unreachable."""
    mu = datum.lattice.reduce(tuple(mu))
    x = levi.pi1.reduce(tuple(x))
    x_target = levi.pi1.reduce(tuple(x_target))
    if x == x_target:
        return []
    alphabet = move_alphabet(datum, levi)
    parents: dict[Vec, tuple[Vec, Move] | None] = {x: None}
    frontier = [x]
    while frontier:
        nxt = []
        for cur in frontier:
            for alpha, r in alphabet:
                if not move_applicable(datum, mu, levi, cur, alpha, r):
                    continue
                to = move_target(levi, cur, alpha, r)
                if to in parents:
                    continue
                parents[to] = (cur, Move(alpha=alpha, r=r, from_x=cur, to_x=to))
                if to == x_target:
                    path = []
                    node = to
                    while parents[node] is not None:
                        prev, mv = parents[node]
                        path.append(mv)
                        node = prev
                    return list(reversed(path))
                nxt.append(to)
        frontier = nxt
    return None


def short_element_check(datum: RootDatum, mu: Vec,
                        w: IwElement) -> tuple[IwElement, IwElement, bool]:
    """Normalise a straight element into the Levi of its Newton point.

    Returns (u, w_sharp, ok) where u is the minimal-length finite Weyl element
    taking the raw Newton point to its dominant representative, w_sharp is the
    twisted conjugate, and ok records whether w_sharp has Levi-length zero.
    """
    if not is_straight(w):
        raise err("NOT_STRAIGHT", "short-element normalisation needs a straight element")
    d = datum
    nu, nu_dom = newton(w)
    levi = levi_of_newton(d, nu_dom)
    fr = d.lattice.free_rank
    best = None
    for m, word in d.w0_words.items():
        img = tuple(sum(Fraction(m[a][b]) * nu[b] for b in range(fr)) for a in range(fr))
        if img == nu_dom and (best is None or (len(word), word) < (len(best[1]), best[1])):
            best = (m, word)
    u = from_fin(d, fin_from_matrix(d, best[0]))
    w_sharp = mul(mul(u, w), inv(apply_sigma(u)))
    fixes = tuple(
        sum(Fraction(w_sharp.fin.matrix[a][b]) * nu_dom[b] for b in range(fr))
        for a in range(fr)) == tuple(nu_dom)
    ok = bool(fixes and levi.fin_in_levi(w_sharp.fin) and levi.m_length(w_sharp) == 0)
    return u, w_sharp, ok
