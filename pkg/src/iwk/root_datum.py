"""Based root data over a coweight lattice, diagram twists, and the reduced
root system governing the affine Weyl group.

A datum carries the Cartan matrix of its simple roots, a finitely generated
abelian coweight lattice, the simple coroots as lattice elements, one integer
functional per simple root (zero on torsion), and a finite-order twist (the
Frobenius): a permutation of the simple roots together with a compatible
lattice endomorphism.  Folding produces the reduced system whose Weyl group
and coroot lattice present the affine Weyl group as a semidirect product;
twists acting faithfully on the lattice fold to the datum's own system, while
orbits of simple roots whose coroot images coincide in the lattice are folded
orbit-by-orbit (summed functionals, doubled on adjacent even-type orbits).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .abelian import (
    FgAbelian,
    Mat,
    Vec,
    coinvariants,
    dot,
    endo_well_defined,
    identity,
    induced_endo,
    mat,
    mat_inverse,
    mat_mul,
    mat_vec,
    quotient_by,
    same_lattice,
    solve_rational,
    vec,
    vec_add,
    vec_scale,
    vec_sub,
)
from .errors import IwkError, err

ROOT_CLOSURE_CAP = 4096
WEYL_ORDER_CAP = 1_000_000


@dataclass(frozen=True)
class Root:
    """A root of the reduced system: functional on the free part of the
    lattice plus its coroot in canonical lattice coordinates."""

    cov: Vec
    coroot: Vec


@dataclass(frozen=True)
class EchelonnageSystem:
    """The reduced root system presenting the affine Weyl group."""

    simples: tuple[Root, ...]
    roots: tuple[Root, ...]
    positive: tuple[Root, ...]
    weyl_order: int
    components: tuple[tuple[int, ...], ...]
    highest: tuple[Root, ...]


def reduce_matrix(moduli: Vec, m: Mat) -> Mat:
    out = []
    for i, row in enumerate(m):
        md = moduli[i]
        out.append(tuple(x % md for x in row) if md else tuple(row))
    return tuple(out)


class RootDatum:
    """Immutable ambient arena for all the combinatorics.

    Built through :func:`build_datum`; all derived structure (root closure,
    Weyl enumeration, fundamental-group quotients) is computed eagerly and
    the object is safe to share between threads.
    """

    def __init__(self, name, cartan, lattice, simple_coroots, root_pairing,
                 twist_perm, twist_endo, echelonnage_override=None):
        self.name = name
        self.cartan = cartan
        self.lattice: FgAbelian = lattice
        self.simple_coroots = tuple(lattice.reduce(c) for c in simple_coroots)
        self.root_pairing = tuple(root_pairing)
        self.twist_perm = tuple(twist_perm)
        self.twist_endo = reduce_matrix(lattice.moduli, twist_endo)
        self._validate_core()
        self.components = self._dynkin_components()
        self._validate_twist()
        self.echelonnage = self._fold(echelonnage_override)
        self._index_roots()
        self._enumerate_weyl()
        self._validate_echelonnage()
        self._build_pi1()
        self.cache: dict = {}

    # -- basic pairing ----------------------------------------------------

    def pair(self, cov: Vec, w) -> int:
        """<functional, coweight>, using the free part of the coweight."""
        return sum(a * b for a, b in zip(cov, w))

    def reflect_coweight(self, root: Root, w: Vec) -> Vec:
        k = self.pair(root.cov, w)
        return self.lattice.reduce(vec_sub(w, vec_scale(k, root.coroot)))

    def reflect_rational(self, root: Root, v) -> tuple:
        k = sum(Fraction(a) * b for a, b in zip(root.cov, v))
        fr = root.coroot[: self.lattice.free_rank]
        return tuple(x - k * c for x, c in zip(v, fr))

    def reflection_matrix(self, root: Root) -> Mat:
        n = self.lattice.rank
        fr = self.lattice.free_rank
        cov_ext = tuple(root.cov) + (0,) * (n - fr)
        m = tuple(
            tuple(int(a == b) - root.coroot[a] * cov_ext[b] for b in range(n))
            for a in range(n)
        )
        return reduce_matrix(self.lattice.moduli, m)

    # -- validation and folding -------------------------------------------

    def _validate_core(self):
        n = len(self.cartan)
        for i, row in enumerate(self.cartan):
            if len(row) != n:
                raise err("BAD_CARTAN", f"cartan[{i}] has length {len(row)}, want {n}")
            for j, a in enumerate(row):
                if i == j and a != 2:
                    raise err("BAD_CARTAN", f"cartan[{i}][{i}] = {a}, want 2")
                if i != j and a > 0:
                    raise err("BAD_CARTAN", f"cartan[{i}][{j}] = {a} must be <= 0")
                if (a == 0) != (self.cartan[j][i] == 0):
                    raise err("BAD_CARTAN", f"cartan[{i}][{j}] and cartan[{j}][{i}] disagree on zero")
        if len(self.simple_coroots) != n:
            raise err("BAD_PAIRING", f"simple_coroots has {len(self.simple_coroots)} entries, want {n}")
        if len(self.root_pairing) != n:
            raise err("BAD_PAIRING", f"root_pairing has {len(self.root_pairing)} entries, want {n}")
        fr = self.lattice.free_rank
        for i, p in enumerate(self.root_pairing):
            if len(p) != fr:
                raise err("BAD_PAIRING", f"root_pairing[{i}] has length {len(p)}, want free rank {fr}")
        for i, c in enumerate(self.simple_coroots):
            if len(c) != self.lattice.rank:
                raise err("BAD_PAIRING", f"simple_coroots[{i}] has length {len(c)}, want {self.lattice.rank}")
        if sorted(self.twist_perm) != list(range(n)):
            raise err("BAD_TWIST", "twist.perm is not a permutation of the simple roots")
        self._orbits = _cycles(self.twist_perm)
        folded = set()
        for orb in self._orbits:
            if len(orb) > 1 and all(self.simple_coroots[i] == self.simple_coroots[orb[0]] for i in orb):
                if any(self.root_pairing[i] != self.root_pairing[orb[0]] for i in orb):
                    raise err("BAD_PAIRING", f"folded orbit {orb} must carry one shared functional")
                folded.update(orb)
        self._folded = frozenset(folded)
        for i in range(n):
            if i in self._folded:
                continue
            for j in range(n):
                if j in self._folded:
                    continue
                got = self.pair(self.root_pairing[i], self.simple_coroots[j])
                if got != self.cartan[i][j]:
                    raise err(
                        "BAD_PAIRING",
                        f"<alpha_{i}, coroot_{j}> = {got} but cartan[{i}][{j}] = {self.cartan[i][j]}",
                    )

    def _dynkin_components(self):
        n = len(self.cartan)
        seen = [False] * n
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if not seen[j] and self.cartan[i][j] != 0:
                        seen[j] = True
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def _validate_twist(self):
        n = len(self.cartan)
        p = self.twist_perm
        for i in range(n):
            for j in range(n):
                if self.cartan[p[i]][p[j]] != self.cartan[i][j]:
                    raise err("BAD_TWIST", "twist.perm does not preserve the Cartan matrix")
        if not endo_well_defined(self.lattice, self.twist_endo):
            raise err("BAD_TWIST", "twist.lattice_endo does not respect the torsion orders")
        order = None
        acc = self.twist_endo
        ident = identity(self.lattice.rank)
        for k in range(1, 513):
            if acc == ident:
                order = k
                break
            acc = reduce_matrix(self.lattice.moduli, mat_mul(acc, self.twist_endo))
        if order is None:
            raise err("BAD_TWIST", "twist.lattice_endo does not have finite order")
        self.sigma_order = order
        inv = identity(self.lattice.rank)
        for _ in range(order - 1):
            inv = reduce_matrix(self.lattice.moduli, mat_mul(inv, self.twist_endo))
        self.twist_endo_inv = inv
        fr = self.lattice.free_rank
        for i in range(n):
            img = self.lattice.reduce(mat_vec(self.twist_endo, self.simple_coroots[i]))
            if img != self.simple_coroots[p[i]]:
                raise err("BAD_TWIST", f"twist endo sends coroot {i} off coroot {p[i]}")
            # functional compatibility: alpha_{p(i)} composed with the twist is alpha_i
            lhs = tuple(sum(self.root_pairing[p[i]][a] * self.twist_endo[a][b] for a in range(fr))
                        for b in range(fr))
            if lhs != tuple(self.root_pairing[i]):
                raise err("BAD_TWIST", f"twist endo is not compatible with root functional {i}")

    def _fold(self, override):
        if override is not None:
            simples = tuple(Root(vec(cv), self.lattice.reduce(vec(cr)))
                            for cv, cr in zip(override["simple_roots"], override["simple_coroots"]))
            return self._close(simples)
        simples = []
        for i in range(len(self.cartan)):
            orb = next(o for o in self._orbits if i in o)
            if i in self._folded:
                if i != min(orb):
                    continue
                p = self.root_pairing[i]
                c = self.simple_coroots[i]
                m = self.pair(p, c)
                if m == 2:
                    simples.append(Root(vec(p), c))
                elif m == 1:
                    # adjacent orbit (even-type fold): the doubled functional
                    # is the reduced root
                    simples.append(Root(vec(vec_scale(2, p)), c))
                else:
                    raise err("UNSUPPORTED_FOLDING",
                              f"orbit at simple root {i} pairs to {m}; supply echelonnage_override")
            else:
                simples.append(Root(vec(self.root_pairing[i]), self.simple_coroots[i]))
        return self._close(tuple(simples))

    def _close(self, simples):
        roots = set(simples)
        frontier = list(simples)
        while frontier:
            if len(roots) > ROOT_CLOSURE_CAP:
                raise err("BAD_CARTAN", "root system closure exceeds cap; not finite type")
            nxt = []
            for beta in frontier:
                for s in simples:
                    k = self.pair(s.cov, beta.coroot)
                    new_cov = vec_sub(beta.cov, vec_scale(self.pair(beta.cov, s.coroot), s.cov))
                    new_cr = self.lattice.reduce(vec_sub(beta.coroot, vec_scale(k, s.coroot)))
                    r = Root(new_cov, new_cr)
                    if r not in roots:
                        roots.add(r)
                        nxt.append(r)
            frontier = nxt
        # negatives close automatically (s_i(alpha_i) = -alpha_i), but make sure
        for r in list(roots):
            roots.add(Root(vec_scale(-1, r.cov), self.lattice.reduce(vec_scale(-1, r.coroot))))
        exp = {}
        cols = [s.cov for s in simples]
        for r in roots:
            sol = solve_rational(cols, r.cov)
            if sol is None:
                raise err("UNSUPPORTED_FOLDING", "simple roots do not form a base for the closure")
            exp[r] = sol
        for r, coeffs in exp.items():
            pos = all(x >= 0 for x in coeffs)
            neg = all(x <= 0 for x in coeffs)
            if not (pos or neg):
                raise err("UNSUPPORTED_FOLDING", "root closure has a mixed-sign expansion")
        self._expansion = exp
        positive = [r for r in roots if all(x >= 0 for x in exp[r]) and any(exp[r])]
        key = lambda r: (sum(exp[r]), r.cov, r.coroot)
        positive.sort(key=key)
        ordered = positive + sorted(
            (r for r in roots if r not in set(positive)), key=lambda r: (-sum(exp[r]), r.cov, r.coroot))
        comps = _simple_components(simples, self.pair)
        highest = []
        for comp in comps:
            cand = [r for r in positive if any(exp[r][i] != 0 for i in comp)]
            highest.append(max(cand, key=lambda r: (sum(exp[r]), r.cov)))
        return EchelonnageSystem(
            simples=tuple(simples),
            roots=tuple(ordered),
            positive=tuple(positive),
            weyl_order=0,  # filled in _enumerate_weyl
            components=comps,
            highest=tuple(highest),
        )

    def _index_roots(self):
        self.root_by_coroot = {}
        for r in self.echelonnage.roots:
            if r.coroot in self.root_by_coroot:
                raise err("UNSUPPORTED_FOLDING", "two roots share a coroot; system is not reduced")
            self.root_by_coroot[r.coroot] = r
        for r in self.echelonnage.roots:
            half = Root(vec_scale(2, r.cov), r.coroot)
            if any(q.cov == half.cov and q is not r for q in self.echelonnage.roots):
                raise err("UNSUPPORTED_FOLDING", "system is not reduced")
        self.positive_set = frozenset(self.echelonnage.positive)

    def _enumerate_weyl(self):
        gens = [self.reflection_matrix(s) for s in self.echelonnage.simples]
        ident = identity(self.lattice.rank)
        words = {ident: ()}
        queue = [ident]
        while queue:
            if len(words) > WEYL_ORDER_CAP:
                raise err("BAD_CARTAN", "Weyl group exceeds enumeration cap")
            nxt = []
            for m0 in queue:
                w0 = words[m0]
                for i, g in enumerate(gens):
                    m1 = reduce_matrix(self.lattice.moduli, mat_mul(m0, g))
                    if m1 not in words:
                        words[m1] = w0 + (i,)
                        nxt.append(m1)
            queue = nxt
        self.w0_words = words
        self.echelonnage = EchelonnageSystem(
            simples=self.echelonnage.simples,
            roots=self.echelonnage.roots,
            positive=self.echelonnage.positive,
            weyl_order=len(words),
            components=self.echelonnage.components,
            highest=self.echelonnage.highest,
        )

    def _validate_echelonnage(self):
        sig = self.echelonnage
        span_sigma = [r.coroot for r in sig.simples]
        span_datum = [c for c in self.simple_coroots]
        if not same_lattice(span_sigma, span_datum):
            raise err("UNSUPPORTED_FOLDING",
                      "coroot lattice of the folded system differs from the datum's coroot span")
        # solve_rational refuses linearly dependent columns, so probing the
        # zero target is an independence check (base property of the simples)
        if solve_rational([s.cov for s in sig.simples], (0,) * self.lattice.free_rank) is None:
            raise err("UNSUPPORTED_FOLDING", "simple roots are linearly dependent")

    def _build_pi1(self):
        lam = self.lattice
        rel = lam.relators() + [r.coroot for r in self.echelonnage.simples]
        self.pi1 = FgAbelian.from_presentation(lam.rank, rel)
        self.pi1_sigma = induced_endo(self.pi1, self.twist_endo)
        gens = []
        ident = identity(self.pi1.rank)
        for j in range(self.pi1.rank):
            img = self.pi1.reduce(mat_vec(self.pi1_sigma, ident[j]))
            gens.append(self.pi1.sub(ident[j], img))
        self.pi1_gamma = quotient_by(self.pi1, gens)

    # -- derived actions ---------------------------------------------------

    def sigma_coweight(self, w: Vec) -> Vec:
        return self.lattice.reduce(mat_vec(self.twist_endo, w))

    def sigma_coweight_inv(self, w: Vec) -> Vec:
        return self.lattice.reduce(mat_vec(self.twist_endo_inv, w))

    def sigma_rational(self, v) -> tuple:
        fr = self.lattice.free_rank
        return tuple(sum(Fraction(self.twist_endo[a][b]) * v[b] for b in range(fr))
                     for a in range(fr))

    def sigma_root(self, root: Root) -> Root:
        cr = self.lattice.reduce(mat_vec(self.twist_endo, root.coroot))
        out = self.root_by_coroot.get(cr)
        if out is None:
            raise err("BAD_TWIST", "twist does not stabilise the root system")
        return out

    def expansion(self, root: Root):
        return self._expansion[root]

    def is_positive(self, root: Root) -> bool:
        return root in self.positive_set

    def two_rho(self) -> Vec:
        """Sum of the positive roots, as a functional on the free part."""
        out = (0,) * self.lattice.free_rank
        for r in self.echelonnage.positive:
            out = vec_add(out, r.cov)
        return out

    def kappa_of_coweight(self, w: Vec) -> Vec:
        """Image of a lattice element in the sigma-coinvariants of pi1."""
        return self.pi1_gamma.project(self.pi1.project(w))

    # -- dominance ---------------------------------------------------------

    def is_dominant(self, w) -> bool:
        return all(self.pair(s.cov, w) >= 0 for s in self.echelonnage.simples)

    def dominant_rep(self, w: Vec) -> Vec:
        w = self.lattice.reduce(w)
        guard = 16 * self.echelonnage.weyl_order + 16
        while True:
            for s in self.echelonnage.simples:
                if self.pair(s.cov, w) < 0:
                    w = self.reflect_coweight(s, w)
                    break
            else:
                return w
            guard -= 1
            if guard < 0:
                raise AssertionError("dominant_rep did not terminate")

    def dominant_rep_rational(self, v) -> tuple:
        v = tuple(Fraction(x) for x in v)
        guard = 16 * self.echelonnage.weyl_order + 16
        while True:
            for s in self.echelonnage.simples:
                if sum(Fraction(a) * b for a, b in zip(s.cov, v)) < 0:
                    v = self.reflect_rational(s, v)
                    break
            else:
                return v
            guard -= 1
            if guard < 0:
                raise AssertionError("dominant_rep_rational did not terminate")

    def dominance_leq(self, lam: Vec, mu: Vec) -> bool:
        """lam <= mu in the dominance order of the folded system."""
        if not self.is_dominant(lam) or not self.is_dominant(mu):
            raise err("NOT_DOMINANT", "dominance order compares dominant coweights only")
        fr = self.lattice.free_rank
        diff = vec_sub(mu, lam)
        sol = solve_rational([s.coroot[:fr] for s in self.echelonnage.simples], diff[:fr])
        if sol is None:
            return False
        if any(x.denominator != 1 or x < 0 for x in sol):
            return False
        acc = self.lattice.zero()
        for k, s in zip(sol, self.echelonnage.simples):
            acc = self.lattice.add(acc, self.lattice.scale(int(k), s.coroot))
        return acc == self.lattice.reduce(diff)

    def newton_leq(self, nu, nu2) -> bool:
        """Rational dominance: nu2 - nu is a nonnegative rational combination
        of simple coroots (free parts)."""
        fr = self.lattice.free_rank
        diff = tuple(Fraction(b) - Fraction(a) for a, b in zip(nu, nu2))
        sol = solve_rational([s.coroot[:fr] for s in self.echelonnage.simples], diff)
        return sol is not None and all(x >= 0 for x in sol)

    def galois_average(self, mu: Vec) -> tuple:
        if not self.is_dominant(mu):
            raise err("NOT_DOMINANT", "galois average needs a dominant coweight")
        fr = self.lattice.free_rank
        orbit = [tuple(Fraction(x) for x in mu[:fr])]
        cur = mu
        for _ in range(self.sigma_order - 1):
            cur = self.sigma_coweight(cur)
            if cur == self.lattice.reduce(mu):
                break
            orbit.append(tuple(Fraction(x) for x in cur[:fr]))
        n = len(orbit)
        avg = tuple(sum(col) / n for col in zip(*orbit))
        return self.dominant_rep_rational(avg)

    def __repr__(self):
        return f"RootDatum({self.name!r})"


def _cycles(perm):
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out.append(tuple(sorted(cyc)))
    return out


def _simple_components(simples, pair):
    n = len(simples)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and pair(simples[i].cov, simples[j].coroot) != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


# -- datum specs and presets ------------------------------------------------

PRESETS: dict[str, dict] = {
    "GL2": {
        "name": "GL2",
        "cartan": [[2]],
        "lattice": {"free_rank": 2, "torsion": []},
        "simple_coroots": [[1, -1]],
        "root_pairing": [[1, -1]],
        "twist": {"perm": [0], "lattice_endo": [[1, 0], [0, 1]]},
    },
    "SL2": {
        "name": "SL2",
        "cartan": [[2]],
        "lattice": {"free_rank": 1, "torsion": []},
        "simple_coroots": [[1]],
        "root_pairing": [[2]],
        "twist": {"perm": [0], "lattice_endo": [[1]]},
    },
    "PGL2": {
        "name": "PGL2",
        "cartan": [[2]],
        "lattice": {"free_rank": 1, "torsion": []},
        "simple_coroots": [[2]],
        "root_pairing": [[1]],
        "twist": {"perm": [0], "lattice_endo": [[1]]},
    },
    "GL3": {
        "name": "GL3",
        "cartan": [[2, -1], [-1, 2]],
        "lattice": {"free_rank": 3, "torsion": []},
        "simple_coroots": [[1, -1, 0], [0, 1, -1]],
        "root_pairing": [[1, -1, 0], [0, 1, -1]],
        "twist": {"perm": [0, 1], "lattice_endo": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
    },
    "SL3": {
        "name": "SL3",
        "cartan": [[2, -1], [-1, 2]],
        "lattice": {"free_rank": 2, "torsion": []},
        "simple_coroots": [[1, 0], [0, 1]],
        "root_pairing": [[2, -1], [-1, 2]],
        "twist": {"perm": [0, 1], "lattice_endo": [[1, 0], [0, 1]]},
    },
    "GSp4": {
        "name": "GSp4",
        "cartan": [[2, -1], [-2, 2]],
        "lattice": {"free_rank": 3, "torsion": []},
        "simple_coroots": [[1, -1, 0], [0, 1, 0]],
        "root_pairing": [[1, -1, 0], [0, 2, -1]],
        "twist": {"perm": [0, 1], "lattice_endo": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
    },
    "Sp4": {
        "name": "Sp4",
        "cartan": [[2, -1], [-2, 2]],
        "lattice": {"free_rank": 2, "torsion": []},
        "simple_coroots": [[1, -1], [0, 1]],
        "root_pairing": [[1, -1], [0, 2]],
        "twist": {"perm": [0, 1], "lattice_endo": [[1, 0], [0, 1]]},
    },
    "ResE2-GL2": {
        "name": "ResE2-GL2",
        "cartan": [[2, 0], [0, 2]],
        "lattice": {"free_rank": 4, "torsion": []},
        "simple_coroots": [[1, -1, 0, 0], [0, 0, 1, -1]],
        "root_pairing": [[1, -1, 0, 0], [0, 0, 1, -1]],
        "twist": {
            "perm": [1, 0],
            "lattice_endo": [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        },
    },
    "U3-unram": {
        "name": "U3-unram",
        "cartan": [[2, -1], [-1, 2]],
        "lattice": {"free_rank": 3, "torsion": []},
        "simple_coroots": [[1, -1, 0], [0, 1, -1]],
        "root_pairing": [[1, -1, 0], [0, 1, -1]],
        "twist": {
            "perm": [1, 0],
            "lattice_endo": [[0, 0, -1], [0, -1, 0], [-1, 0, 0]],
        },
    },
    "SU3-unram": {
        "name": "SU3-unram",
        "cartan": [[2, -1], [-1, 2]],
        "lattice": {"free_rank": 2, "torsion": []},
        "simple_coroots": [[1, 0], [0, 1]],
        "root_pairing": [[2, -1], [-1, 2]],
        "twist": {"perm": [1, 0], "lattice_endo": [[0, 1], [1, 0]]},
    },
}


def _spec_int_matrix(obj, path):
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise err("DATUM_ERROR", f"{path}: expected a matrix (list of lists)")
    for i, row in enumerate(obj):
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise err("DATUM_ERROR", f"{path}[{i}][{j}]: expected an integer")
    return mat(obj)


def build_datum(spec) -> RootDatum:
    """Build and validate a datum from a preset name or a spec mapping."""
    if isinstance(spec, str):
        spec = {"preset": spec}
    if "preset" in spec:
        name = spec["preset"]
        if name not in PRESETS:
            raise err("DATUM_ERROR", f"preset: unknown preset {name!r}")
        spec = PRESETS[name]
    for key in ("name", "cartan", "lattice", "simple_coroots", "root_pairing", "twist"):
        if key not in spec:
            raise err("DATUM_ERROR", f"{key}: missing field")
    lat = spec["lattice"]
    if not isinstance(lat.get("free_rank"), int) or lat["free_rank"] < 0:
        raise err("DATUM_ERROR", "lattice.free_rank: expected a nonnegative integer")
    torsion = lat.get("torsion", [])
    for i, d in enumerate(torsion):
        if not isinstance(d, int) or d < 2:
            raise err("DATUM_ERROR", f"lattice.torsion[{i}]: invariant factors must be integers >= 2")
        if i and d % torsion[i - 1]:
            raise err("DATUM_ERROR", f"lattice.torsion[{i}]: invariant factors must divide successively")
    rank = lat["free_rank"] + len(torsion)
    lattice = FgAbelian(
        free_rank=lat["free_rank"],
        torsion=tuple(torsion),
        ambient=rank,
        to_canonical=identity(rank),
        lift_matrix=identity(rank),
    )
    cartan = _spec_int_matrix(spec["cartan"], "cartan")
    coroots = _spec_int_matrix(spec["simple_coroots"], "simple_coroots")
    pairing = _spec_int_matrix(spec["root_pairing"], "root_pairing")
    twist = spec["twist"]
    if "perm" not in twist or "lattice_endo" not in twist:
        raise err("DATUM_ERROR", "twist: needs 'perm' and 'lattice_endo'")
    endo = _spec_int_matrix(twist["lattice_endo"], "twist.lattice_endo")
    if len(endo) != rank or any(len(r) != rank for r in endo):
        raise err("DATUM_ERROR", f"twist.lattice_endo: expected a {rank}x{rank} matrix")
    override = spec.get("echelonnage_override")
    if override is not None:
        _spec_int_matrix(override.get("simple_roots", None), "echelonnage_override.simple_roots")
        _spec_int_matrix(override.get("simple_coroots", None), "echelonnage_override.simple_coroots")
    return RootDatum(
        name=spec["name"],
        cartan=cartan,
        lattice=lattice,
        simple_coroots=coroots,
        root_pairing=pairing,
        twist_perm=tuple(twist["perm"]),
        twist_endo=endo,
        echelonnage_override=override,
    )


def load_datum_file(path: str) -> RootDatum:
    with open(path, encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as e:
            raise err("DATUM_ERROR", f"{path}: invalid JSON ({e})")
    return build_datum(spec)


def fold(datum: RootDatum) -> EchelonnageSystem:
    """The reduced system presenting the affine Weyl group of the datum."""
    return datum.echelonnage


def preset_names() -> list[str]:
    return sorted(PRESETS)
