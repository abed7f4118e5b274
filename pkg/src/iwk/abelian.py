"""Exact linear algebra over the integers and finitely generated abelian groups.

Matrices are tuples of tuples of ``int`` (arbitrary precision); nothing in
this module or its callers touches floating point.  A finitely generated
abelian group is kept in canonical form: free part first, then one coordinate
per invariant factor in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import err

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def vec(xs) -> Vec:
    return tuple(int(x) for x in xs)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zero_vec(n: int) -> Vec:
    return (0,) * n


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b)) if b else ()
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(k: int, v: Vec) -> Vec:
    return tuple(k * x for x in v)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def mat_pow(a: Mat, k: int) -> Mat:
    out = identity(len(a))
    base = a
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def matrix_order(a: Mat, cap: int = 1024) -> int | None:
    """Multiplicative order of ``a``, or None if it exceeds ``cap``."""
    ident = identity(len(a))
    acc = a
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = mat_mul(acc, a)
    return None


def smith_normal_form(m: Mat) -> tuple[Mat, Mat, Mat]:
    """Return unimodular U, V and diagonal D with U*m*V == D.

    The diagonal entries are nonnegative and satisfy d_i | d_{i+1}.
    """
    nr = len(m)
    nc = len(m[0]) if nr else 0
    a = [list(r) for r in m]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def add_row(i, j, k):
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        u[i] = [x + k * y for x, y in zip(u[i], u[j])]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_col(i, j, k):
        for row in a:
            row[i] += k * row[j]
        for row in v:
            row[i] += k * row[j]

    def min_entry(t):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nr, nc):
        pos = min_entry(t)
        if pos is None:
            break
        while True:
            i0, j0 = pos
            if i0 != t:
                swap_rows(t, i0)
            if j0 != t:
                swap_cols(t, j0)
            if a[t][t] < 0:
                negate_row(t)
            p = a[t][t]
            clear = True
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    clear = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    clear = False
            if clear:
                offender = None
                for i in range(t + 1, nr):
                    if any(a[i][j] % p for j in range(t + 1, nc)):
                        offender = i
                        break
                if offender is None:
                    break
                # pull the non-divisible row up so the pivot shrinks to a gcd
                add_row(t, offender, 1)
            pos = min_entry(t)
        t += 1
    return mat(u), mat(a), mat(v)


def det(m: Mat) -> int:
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def mat_inverse(m: Mat) -> Mat:
    """Exact inverse of a unimodular integer matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for i in range(n):
        row = a[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return mat(out)


def kernel_basis(m: Mat) -> list[Vec]:
    """Basis of the integer kernel {x : m @ x == 0}."""
    nr = len(m)
    nc = len(m[0]) if nr else 0
    if nc == 0:
        return []
    if nr == 0:
        return [tuple(int(i == j) for i in range(nc)) for j in range(nc)]
    _, d, v = smith_normal_form(m)
    cols = transpose(v)
    out = []
    for j in range(nc):
        dj = d[j][j] if j < min(nr, nc) else 0
        if dj == 0:
            out.append(cols[j])
    return out


def solve_int(columns: list[Vec], target: Vec) -> Vec | None:
    """Integer x with sum_j x_j * columns[j] == target, or None."""
    if not columns:
        return () if all(t == 0 for t in target) else None
    g = transpose(mat(columns))  # ambient x k
    u, d, v = smith_normal_form(g)
    w = mat_vec(u, target)
    k = len(columns)
    nr = len(target)
    y = []
    for i in range(nr):
        di = d[i][i] if i < min(nr, k) else 0
        wi = w[i]
        if i < k:
            if di == 0:
                if wi != 0:
                    return None
                y.append(0)
            else:
                if wi % di:
                    return None
                y.append(wi // di)
        else:
            if wi != 0:
                return None
    return mat_vec(v, tuple(y))


def solve_rational(columns: list, target) -> tuple[Fraction, ...] | None:
    """Rational x with sum_j x_j * columns[j] == target, or None.

    Requires the columns to be linearly independent.
    """
    k = len(columns)
    if k == 0:
        return () if all(t == 0 for t in target) else None
    n = len(target)
    a = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
         for i in range(n)]
    row = 0
    pivots = []
    for col in range(k):
        piv = next((i for i in range(row, n) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for i in range(n):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    if len(pivots) != k:
        return None
    for i in range(row, n):
        if a[i][k] != 0:
            return None
    out = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        out[col] = a[r][k]
    return tuple(out)


def in_lattice(v: Vec, generators: list[Vec]) -> bool:
    return solve_int(generators, v) is not None


def same_lattice(gens_a: list[Vec], gens_b: list[Vec]) -> bool:
    return all(in_lattice(g, gens_b) for g in gens_a) and \
        all(in_lattice(g, gens_a) for g in gens_b)


@dataclass(frozen=True)
class FgAbelian:
    """Finitely generated abelian group in canonical form.

    Canonical coordinates are (free part, torsion part); torsion coordinate i
    is taken modulo ``torsion[i]`` and the invariant factors divide
    successively.  ``to_canonical`` projects presentation coordinates
    (Z^ambient) onto canonical coordinates and ``lift_matrix`` is an integer
    section of it.
    """

    free_rank: int
    torsion: tuple[int, ...]
    ambient: int
    to_canonical: Mat
    lift_matrix: Mat

    @property
    def rank(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def moduli(self) -> Vec:
        return (0,) * self.free_rank + self.torsion

    def reduce(self, v: Vec) -> Vec:
        return tuple(x % m if m else x for x, m in zip(v, self.moduli))

    def zero(self) -> Vec:
        return (0,) * self.rank

    def add(self, u: Vec, v: Vec) -> Vec:
        return self.reduce(vec_add(u, v))

    def sub(self, u: Vec, v: Vec) -> Vec:
        return self.reduce(vec_sub(u, v))

    def neg(self, v: Vec) -> Vec:
        return self.reduce(vec_scale(-1, v))

    def scale(self, k: int, v: Vec) -> Vec:
        return self.reduce(vec_scale(k, v))

    def project(self, v: Vec) -> Vec:
        if len(v) != self.ambient:
            raise ValueError("presentation coordinate length mismatch")
        return self.reduce(mat_vec(self.to_canonical, v))

    def lift(self, v: Vec) -> Vec:
        return mat_vec(self.lift_matrix, v)

    def relators(self) -> list[Vec]:
        """Relator vectors of the canonical presentation (d_i * e_i)."""
        out = []
        for i, d in enumerate(self.torsion):
            e = [0] * self.rank
            e[self.free_rank + i] = d
            out.append(tuple(e))
        return out

    def order(self) -> int | None:
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def elements(self) -> list[Vec]:
        if self.free_rank:
            raise ValueError("infinite group")
        return [v for v in iproduct(*(range(d) for d in self.torsion))]

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @classmethod
    def free(cls, n: int) -> "FgAbelian":
        return cls(n, (), n, identity(n), identity(n))

    @classmethod
    def from_presentation(cls, ambient: int, relators: list[Vec]) -> "FgAbelian":
        """The cokernel Z^ambient / <relators>."""
        for r in relators:
            if len(r) != ambient:
                raise ValueError("relator length mismatch")
        m = transpose(mat(relators)) if relators else tuple(() for _ in range(ambient))
        u, d, _ = smith_normal_form(m)
        k = len(relators)
        diag = [d[i][i] if i < min(ambient, k) else 0 for i in range(ambient)]
        free_idx = [i for i in range(ambient) if diag[i] == 0]
        tors_idx = [i for i in range(ambient) if diag[i] >= 2]
        order = free_idx + tors_idx
        to_canon = tuple(u[i] for i in order)
        uinv = mat_inverse(u)
        # keep the ambient row count even when the group is trivial
        lift = tuple(tuple(uinv[r][j] for j in order) for r in range(ambient))
        return cls(
            free_rank=len(free_idx),
            torsion=tuple(diag[i] for i in tors_idx),
            ambient=ambient,
            to_canonical=to_canon,
            lift_matrix=lift,
        )


def coinvariants(lattice_rank: int, endo: Mat) -> FgAbelian:
    """coker(id - endo) with its projection map, exact over Z."""
    if len(endo) != lattice_rank or any(len(r) != lattice_rank for r in endo):
        raise ValueError("endomorphism must be square of the lattice rank")
    ident = identity(lattice_rank)
    # relator i is (1 - endo) applied to the i-th basis vector
    rel = [tuple(ident[j][i] - endo[j][i] for j in range(lattice_rank))
           for i in range(lattice_rank)]
    return FgAbelian.from_presentation(lattice_rank, rel)


def endo_well_defined(g: FgAbelian, endo: Mat) -> bool:
    """Whether a matrix on canonical coordinates descends to the group."""
    n = g.rank
    if len(endo) != n or any(len(r) != n for r in endo):
        return False
    for j, dj in enumerate(g.torsion):
        col = g.free_rank + j
        for i in range(g.free_rank):
            if dj * endo[i][col] != 0:
                return False
        for i, di in enumerate(g.torsion):
            if (dj * endo[g.free_rank + i][col]) % di:
                return False
    return True


def quotient_by(g: FgAbelian, elems: list[Vec]) -> FgAbelian:
    """Quotient of ``g`` by the subgroup generated by ``elems``.

    The result's ``project`` takes canonical coordinates of ``g``.
    """
    rel = g.relators() + [g.reduce(e) for e in elems]
    return FgAbelian.from_presentation(g.rank, rel)


def induced_endo(g: FgAbelian, ambient_endo: Mat) -> Mat:
    """Push an endomorphism of the presentation lattice down to ``g``.

    ``ambient_endo`` acts on Z^ambient and must preserve the relation lattice.
    """
    cols = []
    for j in range(g.rank):
        e = tuple(int(i == j) for i in range(g.rank))
        cols.append(g.project(mat_vec(ambient_endo, g.lift(e))))
    return transpose(mat(cols))


def subgroup_with_inclusion(g: FgAbelian, gens: list[Vec]) -> tuple[FgAbelian, list[Vec]]:
    """Subgroup of ``g`` generated by ``gens``.

    Returns (H, incl) where incl lists the images in ``g`` of H's canonical
    basis vectors.
    """
    gens = [g.reduce(v) for v in gens]
    rgens = g.relators()
    # keep the torsion relators among the generators so the subgroup lattice
    # contains the relation lattice
    allg = gens + rgens
    m = len(allg)
    if m == 0:
        h = FgAbelian.free(0)
        return h, []
    # relations among the generators inside g: v with sum v_i allg_i in R
    stacked = [list(col) for col in zip(*allg)] if allg else []
    rcols = [list(col) for col in zip(*rgens)] if rgens else [[] for _ in range(g.rank)]
    block = mat(tuple(stacked[i] + [-x for x in rcols[i]] for i in range(g.rank)))
    kb = kernel_basis(block)
    relations = [k[:m] for k in kb]
    h = FgAbelian.from_presentation(m, relations)
    incl = []
    for j in range(h.rank):
        e = tuple(int(i == j) for i in range(h.rank))
        w = h.lift(e)
        img = g.zero()
        for coeff, gen in zip(w, allg):
            img = g.add(img, g.scale(coeff, gen))
        incl.append(img)
    return h, incl


def fixed_subgroup(g: FgAbelian, endo: Mat) -> tuple[FgAbelian, list[Vec]]:
    """Kernel of (endo - id) on ``g`` as a subgroup with inclusion.

    ``endo`` acts on canonical coordinates and must respect the torsion
    orders; raises ENDO_ILL_DEFINED otherwise.
    """
    if not endo_well_defined(g, endo):
        raise err("ENDO_ILL_DEFINED", "endomorphism does not preserve the relations")
    n = g.rank
    ident = identity(n)
    a = tuple(vec_sub(endo[i], ident[i]) for i in range(n))
    rgens = g.relators()
    k = len(rgens)
    rows = []
    for i in range(n):
        rows.append(tuple(a[i]) + tuple(-rg[i] for rg in rgens))
    kb = kernel_basis(mat(rows))
    lgens = [kvec[:n] for kvec in kb]
    # the relation lattice itself maps into R, so include it
    lgens += rgens
    return subgroup_with_inclusion(g, lgens)
