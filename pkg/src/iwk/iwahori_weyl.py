"""The extended affine Weyl group attached to a root datum.

Elements are pairs (translation, finite part); the finite part acts on the
lattice through its matrix, and equality is canonical equality of the pair.
Length is the Iwahori-Matsumoto formula over the folded system, reduced words
come from a greedy descent walk (lowest crossable wall first, which yields the
lexicographically smallest reduced word), and the Bruhat order is decided by
the lifting property.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import Mat, Vec, identity, mat_mul, mat_vec, vec_add, vec_scale
from .errors import err
from .root_datum import Root, RootDatum, reduce_matrix


@dataclass(frozen=True)
class FinWeyl:
    """Finite Weyl element: action matrix on the lattice plus its canonical
    reduced word in the simple reflections of the folded system."""

    matrix: Mat
    word: tuple[int, ...] = field(compare=False)


@dataclass(frozen=True)
class IwElement:
    datum: RootDatum = field(compare=False, repr=False)
    trans: Vec
    fin: FinWeyl

    def __mul__(self, other: "IwElement") -> "IwElement":
        return mul(self, other)

    def __repr__(self):
        return f"<t{self.trans}*w{''.join(str(i) for i in self.fin.word) or 'e'}>"


@dataclass(frozen=True)
class AffineGen:
    """A simple reflection in a wall of the base alcove."""

    index: int
    label: str
    kind: str                 # "affine" or "finite"
    component: int            # affine Dynkin component id
    simple_index: int | None  # index into the folded simples for finite gens
    element: IwElement


def _check_same_datum(x: IwElement, y: IwElement):
    if x.datum is not y.datum:
        raise err("DATUM_MISMATCH", "elements belong to different data")


def fin_from_matrix(datum: RootDatum, matrix: Mat) -> FinWeyl:
    cache = datum.cache.setdefault("fin", {})
    got = cache.get(matrix)
    if got is None:
        word = datum.w0_words.get(matrix)
        if word is None:
            raise AssertionError("matrix is not in the finite Weyl group")
        got = FinWeyl(matrix, word)
        cache[matrix] = got
    return got


def fin_identity(datum: RootDatum) -> FinWeyl:
    return fin_from_matrix(datum, identity(datum.lattice.rank))


def fin_inverse(datum: RootDatum, f: FinWeyl) -> FinWeyl:
    cache = datum.cache.setdefault("fin_inv", {})
    got = cache.get(f.matrix)
    if got is None:
        m = identity(datum.lattice.rank)
        for i in reversed(f.word):
            m = reduce_matrix(datum.lattice.moduli,
                              mat_mul(m, datum.reflection_matrix(datum.echelonnage.simples[i])))
        got = fin_from_matrix(datum, m)
        cache[f.matrix] = got
    return got


def identity_element(datum: RootDatum) -> IwElement:
    return IwElement(datum, datum.lattice.zero(), fin_identity(datum))


def translation(datum: RootDatum, coords: Vec) -> IwElement:
    return IwElement(datum, datum.lattice.reduce(tuple(coords)), fin_identity(datum))


def from_fin(datum: RootDatum, f: FinWeyl) -> IwElement:
    return IwElement(datum, datum.lattice.zero(), f)


def simple_reflection(datum: RootDatum, i: int) -> IwElement:
    m = reduce_matrix(datum.lattice.moduli,
                      datum.reflection_matrix(datum.echelonnage.simples[i]))
    return from_fin(datum, fin_from_matrix(datum, m))


def mul(x: IwElement, y: IwElement) -> IwElement:
    _check_same_datum(x, y)
    d = x.datum
    trans = d.lattice.add(x.trans, mat_vec(x.fin.matrix, y.trans))
    m = reduce_matrix(d.lattice.moduli, mat_mul(x.fin.matrix, y.fin.matrix))
    return IwElement(d, trans, fin_from_matrix(d, m))


def inv(x: IwElement) -> IwElement:
    d = x.datum
    fi = fin_inverse(d, x.fin)
    trans = d.lattice.reduce(vec_scale(-1, mat_vec(fi.matrix, x.trans)))
    return IwElement(d, trans, fi)


def apply_sigma(x: IwElement) -> IwElement:
    d = x.datum
    trans = d.sigma_coweight(x.trans)
    m = reduce_matrix(d.lattice.moduli,
                      mat_mul(mat_mul(d.twist_endo, x.fin.matrix), d.twist_endo_inv))
    return IwElement(d, trans, fin_from_matrix(d, m))


def apply_sigma_inv(x: IwElement) -> IwElement:
    d = x.datum
    trans = d.sigma_coweight_inv(x.trans)
    m = reduce_matrix(d.lattice.moduli,
                      mat_mul(mat_mul(d.twist_endo_inv, x.fin.matrix), d.twist_endo))
    return IwElement(d, trans, fin_from_matrix(d, m))


def fin_root_image(datum: RootDatum, matrix: Mat, root: Root) -> Root:
    cr = datum.lattice.reduce(mat_vec(matrix, root.coroot))
    out = datum.root_by_coroot.get(cr)
    if out is None:
        raise AssertionError("matrix does not stabilise the root system")
    return out


def length(x: IwElement) -> int:
    """Iwahori-Matsumoto length over the folded system."""
    d = x.datum
    cache = d.cache.setdefault("len", {})
    key = (x.trans, x.fin.matrix)
    got = cache.get(key)
    if got is not None:
        return got
    winv = fin_inverse(d, x.fin).matrix
    total = 0
    for beta in d.echelonnage.positive:
        k = d.pair(beta.cov, x.trans)
        if d.is_positive(fin_root_image(d, winv, beta)):
            total += abs(k)
        else:
            total += abs(k - 1)
    cache[key] = total
    return total


# -- the affine generating set ----------------------------------------------


def affine_gens(datum: RootDatum) -> tuple[AffineGen, ...]:
    got = datum.cache.get("S")
    if got is not None:
        return got
    sig = datum.echelonnage
    gens: list[AffineGen] = []
    multi = len(sig.components) > 1
    for cid, comp in enumerate(sig.components):
        theta = sig.highest[cid]
        s_theta = fin_from_matrix(
            datum, reduce_matrix(datum.lattice.moduli, datum.reflection_matrix(theta)))
        aff = IwElement(datum, datum.lattice.reduce(theta.coroot), s_theta)
        label = f"s0c{cid}" if multi else "s0"
        gens.append(AffineGen(len(gens), label, "affine", cid, None, aff))
        for i in comp:
            gens.append(AffineGen(len(gens), f"s{i + 1}", "finite", cid, i,
                                  simple_reflection(datum, i)))
    out = tuple(gens)
    for g in out:
        sq = mul(g.element, g.element)
        if sq != identity_element(datum):
            raise AssertionError(f"generator {g.label} is not an involution")
        if length(g.element) != 1:
            raise AssertionError(f"generator {g.label} does not have length one")
    datum.cache["S"] = out
    return out


def sigma_perm_on_gens(datum: RootDatum) -> tuple[int, ...]:
    """sigma as a permutation of the affine generating set."""
    got = datum.cache.get("sigmaS")
    if got is not None:
        return got
    gens = affine_gens(datum)
    by_elt = {g.element: g.index for g in gens}
    perm = []
    for g in gens:
        img = apply_sigma(g.element)
        if img not in by_elt:
            raise err("BAD_TWIST", "twist does not stabilise the simple reflections")
        perm.append(by_elt[img])
    out = tuple(perm)
    datum.cache["sigmaS"] = out
    return out


def conj_perm_on_gens(datum: RootDatum, omega: IwElement) -> tuple[int, ...]:
    """Conjugation by a length-zero element as a permutation of the gens."""
    if length(omega) != 0:
        raise err("TAU_NOT_LENGTH_ZERO", "conjugating element must have length zero")
    cache = datum.cache.setdefault("conjS", {})
    key = (omega.trans, omega.fin.matrix)
    got = cache.get(key)
    if got is not None:
        return got
    gens = affine_gens(datum)
    by_elt = {g.element: g.index for g in gens}
    oinv = inv(omega)
    perm = []
    for g in gens:
        img = mul(mul(omega, g.element), oinv)
        if img not in by_elt:
            raise AssertionError("length-zero element does not normalise the gens")
        perm.append(by_elt[img])
    out = tuple(perm)
    cache[key] = out
    return out


# -- words, omega, Bruhat order ----------------------------------------------


def reduced_word(x: IwElement) -> tuple[tuple[int, ...], IwElement]:
    """Canonical reduced word of the affine part and the length-zero tail.

    The product of the listed generators times the tail equals ``x`` and the
    word length equals ``length(x)``.
    """
    d = x.datum
    cache = d.cache.setdefault("word", {})
    key = (x.trans, x.fin.matrix)
    got = cache.get(key)
    if got is not None:
        return got
    gens = affine_gens(d)
    letters = []
    y = x
    ly = length(y)
    while ly > 0:
        for g in gens:
            cand = mul(g.element, y)
            lc = length(cand)
            if lc < ly:
                letters.append(g.index)
                y = cand
                ly = lc
                break
        else:
            raise AssertionError("positive-length element without a left descent")
    out = (tuple(letters), y)
    cache[key] = out
    return out


def omega_component(x: IwElement) -> Vec:
    """Class of the element in the fundamental-group quotient."""
    return x.datum.pi1.project(x.trans)


def omega_element(datum: RootDatum, cls: Vec) -> IwElement:
    """The unique length-zero element in the given class."""
    cls = datum.pi1.reduce(tuple(cls))
    cache = datum.cache.setdefault("omega", {})
    got = cache.get(cls)
    if got is not None:
        return got
    x = translation(datum, datum.pi1.lift(cls))
    _, om = reduced_word(x)
    if omega_component(om) != cls:
        raise AssertionError("omega construction landed in the wrong class")
    cache[cls] = om
    return om


def bruhat_leq(x: IwElement, y: IwElement) -> bool:
    """Bruhat order on the extended group (lifting property)."""
    _check_same_datum(x, y)
    if omega_component(x) != omega_component(y):
        return False
    memo = x.datum.cache.setdefault("bruhat", {})
    return _bruhat_rec(x, y, memo)


def _bruhat_rec(x: IwElement, y: IwElement, memo) -> bool:
    lx, ly = length(x), length(y)
    if lx > ly:
        return False
    if ly == 0:
        return x == y
    key = (x.trans, x.fin.matrix, y.trans, y.fin.matrix)
    got = memo.get(key)
    if got is not None:
        return got
    for g in affine_gens(x.datum):
        sy = mul(g.element, y)
        if length(sy) < ly:
            sx = mul(g.element, x)
            if length(sx) < lx:
                out = _bruhat_rec(sx, sy, memo)
            else:
                out = _bruhat_rec(x, sy, memo)
            memo[key] = out
            return out
    raise AssertionError("positive-length element without a left descent")


# -- parahoric subsets --------------------------------------------------------


def component_nodes(datum: RootDatum) -> tuple[tuple[int, ...], ...]:
    """Generator indices grouped by affine Dynkin component."""
    gens = affine_gens(datum)
    comps = []
    for cid in range(len(datum.echelonnage.components)):
        comps.append(tuple(g.index for g in gens if g.component == cid))
    return tuple(comps)


def subgroup_finite(datum: RootDatum, kset) -> bool:
    """Whether the subgroup generated by a subset of the gens is finite.

    True exactly when the subset omits at least one node in every affine
    Dynkin component.
    """
    k = frozenset(kset)
    gens = affine_gens(datum)
    if any(i not in range(len(gens)) for i in k):
        raise err("USAGE", "generator index out of range")
    for comp in component_nodes(datum):
        if all(i in k for i in comp):
            return False
    return True


def enumerate_parahoric(datum: RootDatum, kset) -> tuple[IwElement, ...]:
    """All elements of the (finite) standard parahoric subgroup."""
    k = tuple(sorted(set(kset)))
    if not subgroup_finite(datum, k):
        raise err("K_INFINITE", f"subset {list(k)} generates an infinite subgroup")
    cache = datum.cache.setdefault("parahoric", {})
    got = cache.get(k)
    if got is not None:
        return got
    gens = affine_gens(datum)
    seen = {identity_element(datum)}
    queue = [identity_element(datum)]
    while queue:
        nxt = []
        for x in queue:
            for i in k:
                y = mul(x, gens[i].element)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        queue = nxt
    out = tuple(sorted(seen, key=lambda e: (length(e), reduced_word(e)[0])))
    cache[k] = out
    return out


def min_coset_rep(datum: RootDatum, kset, x: IwElement, side: str = "left") -> IwElement:
    """Unique minimal-length representative of the coset of ``x``."""
    k = tuple(sorted(set(kset)))
    if not subgroup_finite(datum, k):
        raise err("K_INFINITE", f"subset {list(k)} generates an infinite subgroup")
    if side not in ("left", "right", "double"):
        raise err("USAGE", f"side must be left, right or double, not {side!r}")
    gens = affine_gens(datum)
    while True:
        lx = length(x)
        moved = False
        if side in ("left", "double"):
            for i in k:
                y = mul(gens[i].element, x)
                if length(y) < lx:
                    x, lx = y, length(y)
                    moved = True
                    break
        if not moved and side in ("right", "double"):
            for i in k:
                y = mul(x, gens[i].element)
                if length(y) < lx:
                    x, lx = y, length(y)
                    moved = True
                    break
        if not moved:
            return x


# -- serialization -------------------------------------------------------------


def element_to_obj(x: IwElement) -> dict:
    return {"trans": list(x.trans), "fin_word": list(x.fin.word)}


def element_from_obj(datum: RootDatum, obj) -> IwElement:
    if not isinstance(obj, dict) or "trans" not in obj or "fin_word" not in obj:
        raise err("USAGE", "element object needs 'trans' and 'fin_word'")
    trans = obj["trans"]
    if len(trans) != datum.lattice.rank or not all(isinstance(t, int) for t in trans):
        raise err("USAGE", f"trans must list {datum.lattice.rank} integers")
    word = obj["fin_word"]
    n = len(datum.echelonnage.simples)
    if not all(isinstance(i, int) and 0 <= i < n for i in word):
        raise err("USAGE", f"fin_word entries must be simple indices in [0,{n})")
    m = identity(datum.lattice.rank)
    for i in word:
        m = reduce_matrix(datum.lattice.moduli,
                          mat_mul(m, datum.reflection_matrix(datum.echelonnage.simples[i])))
    return IwElement(datum, datum.lattice.reduce(tuple(trans)), fin_from_matrix(datum, m))
