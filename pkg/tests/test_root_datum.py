from fractions import Fraction

import pytest

from iwk.abelian import in_lattice
from iwk.errors import IwkError
from iwk.oracles import word_ball
from iwk.root_datum import build_datum, fold, preset_names

from conftest import dominant_grid


def test_preset_catalog():
    names = preset_names()
    assert "GL2" in names and len(names) == 10


def test_gl2_defining_data():
    d = build_datum("GL2")
    assert d.lattice.free_rank == 2 and d.lattice.torsion == ()
    assert d.simple_coroots == ((1, -1),)
    assert d.root_pairing == ((1, -1),)
    assert d.sigma_order == 1


def test_sl2_defining_data():
    d = build_datum("SL2")
    assert d.lattice.free_rank == 1
    assert d.pair(d.root_pairing[0], (1,)) == 2


def test_res_defining_data():
    d = build_datum("ResE2-GL2")
    assert d.lattice.free_rank == 4
    assert d.simple_coroots == ((1, -1, 0, 0), (0, 0, 1, -1))
    assert d.twist_perm == (1, 0)
    assert d.sigma_coweight((1, 0, 0, 0)) == (0, 0, 1, 0)


def test_build_errors():
    spec = {
        "name": "bad",
        "cartan": [[2, -1], [-1, 2]],
        "lattice": {"free_rank": 2, "torsion": []},
        "simple_coroots": [[1, 0], [0, 1]],
        "root_pairing": [[2, -1], [-1, 2]],
        "twist": {"perm": [0, 1], "lattice_endo": [[1, 0], [0, 1]]},
    }
    bad = dict(spec, cartan=[[2, 1], [1, 2]])
    with pytest.raises(IwkError) as e:
        build_datum(bad)
    assert e.value.code == "BAD_CARTAN"

    bad = dict(spec, root_pairing=[[2, -1], [-1, 3]])
    with pytest.raises(IwkError) as e:
        build_datum(bad)
    assert e.value.code == "BAD_PAIRING"

    bad = dict(spec, twist={"perm": [1, 0], "lattice_endo": [[1, 0], [0, 1]]})
    with pytest.raises(IwkError) as e:
        build_datum(bad)
    assert e.value.code == "BAD_TWIST"

    bad = dict(spec, twist={"perm": [0, 1], "lattice_endo": [[1, 1], [0, 1]]})
    with pytest.raises(IwkError) as e:
        build_datum(bad)
    assert e.value.code == "BAD_TWIST"


def test_fold_trivial_twist_returns_own_system():
    d = build_datum("GL3")
    sig = fold(d)
    assert len(sig.simples) == 2
    assert {s.cov for s in sig.simples} == set(d.root_pairing)
    assert sig.weyl_order == 6


A3_FLIP = {
    "name": "A3-flip",
    "cartan": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "lattice": {"free_rank": 2, "torsion": []},
    "simple_coroots": [[1, 0], [0, 1], [1, 0]],
    "root_pairing": [[2, -2], [-1, 2], [2, -2]],
    "twist": {"perm": [2, 1, 0], "lattice_endo": [[1, 0], [0, 1]]},
}

A2_ADJACENT_FLIP = {
    "name": "A2-adjacent-flip",
    "cartan": [[2, -1], [-1, 2]],
    "lattice": {"free_rank": 1, "torsion": []},
    "simple_coroots": [[1], [1]],
    "root_pairing": [[1], [1]],
    "twist": {"perm": [1, 0], "lattice_endo": [[1]]},
}


def brute_force_affine_check(datum, depth=8):
    """Word-enumerate the affine Weyl group and check the semidirect shape:
    finite parts exhaust the folded Weyl group and all pure translations lie
    in the lattice spanned by the folded coroots."""
    from iwk.iwahori_weyl import identity_element

    ball = word_ball(datum, [identity_element(datum)], depth)
    fins = {x.fin.matrix for x in ball}
    assert len(fins) == datum.echelonnage.weyl_order
    coroots = [s.coroot for s in datum.echelonnage.simples]
    for x in ball:
        if not x.fin.word:
            assert in_lattice(x.trans, coroots), x.trans


def test_fold_a3_flip_gives_type_c2():
    d = build_datum(A3_FLIP)
    sig = fold(d)
    assert len(sig.simples) == 2
    assert len(sig.roots) == 8 and sig.weyl_order == 8
    pair_mat = [[d.pair(a.cov, b.coroot) for b in sig.simples] for a in sig.simples]
    assert sorted([pair_mat[0][1], pair_mat[1][0]]) == [-2, -1]
    brute_force_affine_check(d, depth=8)


def test_fold_a2_adjacent_flip_doubles_functional():
    d = build_datum(A2_ADJACENT_FLIP)
    sig = fold(d)
    assert len(sig.simples) == 1
    assert sig.simples[0].cov == (2,) and sig.simples[0].coroot == (1,)
    assert (d.pi1.free_rank, d.pi1.torsion) == (0, ())
    brute_force_affine_check(d, depth=6)


def test_fold_u3_unram_count_check():
    d = build_datum("U3-unram")
    sig = fold(d)
    assert sig.weyl_order == 6 and len(sig.roots) == 6
    brute_force_affine_check(d, depth=8)


def test_fold_unsupported_without_override():
    bad = dict(A2_ADJACENT_FLIP, name="bad-fold", root_pairing=[[3], [3]])
    with pytest.raises(IwkError) as e:
        build_datum(bad)
    assert e.value.code in ("UNSUPPORTED_FOLDING", "BAD_PAIRING")


def test_echelonnage_override():
    spec = dict(A2_ADJACENT_FLIP, name="override",
                echelonnage_override={"simple_roots": [[2]], "simple_coroots": [[1]]})
    d = build_datum(spec)
    assert fold(d).simples[0].cov == (2,)


def test_dominance_examples():
    d = build_datum("GL2")
    assert d.dominant_rep((0, 1)) == (1, 0)
    assert d.is_dominant((1, 0)) and not d.is_dominant((0, 1))
    r = d.dominant_rep_rational((Fraction(1, 2), Fraction(1, 2)))
    assert r == (Fraction(1, 2), Fraction(1, 2))
    assert d.dominance_leq((1, 0), (1, 0))
    assert d.dominance_leq((1, 1), (2, 0))
    assert not d.dominance_leq((2, 0), (1, 1))
    with pytest.raises(IwkError) as e:
        d.dominance_leq((0, 1), (1, 0))
    assert e.value.code == "NOT_DOMINANT"


def test_dominant_rep_idempotent_and_weyl_invariant(datums):
    for name, d in datums.items():
        for lam in dominant_grid(d, 2):
            assert d.dominant_rep(lam) == lam
            orbit = {lam}
            queue = [lam]
            while queue:
                nxt = []
                for v in queue:
                    for s in d.echelonnage.simples:
                        u = d.reflect_coweight(s, v)
                        if u not in orbit:
                            orbit.add(u)
                            nxt.append(u)
                queue = nxt
            for v in orbit:
                assert d.dominant_rep(v) == lam


def test_dominance_partial_order(datums):
    for name in ("GL2", "SL2", "SL3", "GSp4"):
        d = datums[name]
        grid = dominant_grid(d, 3 if d.lattice.rank <= 2 else 2)
        for lam in grid:
            assert d.dominance_leq(lam, lam)
        for lam in grid:
            for mu in grid:
                if d.dominance_leq(lam, mu) and d.dominance_leq(mu, lam):
                    assert lam == mu
        for lam in grid:
            for mu in grid:
                if not d.dominance_leq(lam, mu):
                    continue
                for nu in grid:
                    if d.dominance_leq(mu, nu):
                        assert d.dominance_leq(lam, nu)


def test_galois_average_examples():
    d = build_datum("GL2")
    assert d.galois_average((1, 0)) == (Fraction(1), Fraction(0))
    r = build_datum("ResE2-GL2")
    avg = r.galois_average((1, 0, 0, 0))
    assert avg == (Fraction(1, 2), Fraction(0), Fraction(1, 2), Fraction(0))
    assert r.galois_average((0, 0, 0, 0)) == (Fraction(0),) * 4


def test_galois_average_twist_fixed(datums):
    for name, d in datums.items():
        for mu in dominant_grid(d, 1):
            avg = d.galois_average(mu)
            assert d.sigma_rational(avg) == avg
