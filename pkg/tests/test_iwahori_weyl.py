import pytest

from iwk.errors import IwkError
from iwk.iwahori_weyl import (
    affine_gens,
    apply_sigma,
    bruhat_leq,
    component_nodes,
    element_from_obj,
    element_to_obj,
    enumerate_parahoric,
    identity_element,
    inv,
    length,
    min_coset_rep,
    mul,
    omega_component,
    omega_element,
    reduced_word,
    sigma_perm_on_gens,
    simple_reflection,
    subgroup_finite,
    translation,
)
from iwk.oracles import default_omega_classes, is_length_zero, word_ball
from iwk.root_datum import build_datum


def test_group_laws_gl2(datums):
    d = datums["GL2"]
    t10, t01 = translation(d, (1, 0)), translation(d, (0, 1))
    s = simple_reflection(d, 0)
    e = identity_element(d)
    assert mul(t10, t01) == translation(d, (1, 1))
    assert mul(mul(s, t10), s) == t01
    assert mul(t10, inv(t10)) == e
    assert mul(s, s) == e
    x = mul(s, t10)
    assert mul(x, inv(x)) == e and mul(inv(x), x) == e


def test_datum_mismatch_raises(datums):
    with pytest.raises(IwkError) as e:
        mul(identity_element(datums["GL2"]), identity_element(datums["SL2"]))
    assert e.value.code == "DATUM_MISMATCH"


def test_apply_sigma_res(datums):
    r = datums["ResE2-GL2"]
    x = translation(r, (1, 0, 0, 0))
    assert apply_sigma(x) == translation(r, (0, 0, 1, 0))
    assert apply_sigma(apply_sigma(x)) == x
    # sigma is an automorphism preserving the generating set
    perm = sigma_perm_on_gens(r)
    assert sorted(perm) == list(range(4))
    for g in affine_gens(r):
        assert length(apply_sigma(g.element)) == 1


def test_length_examples(datums):
    d = datums["GL2"]
    assert length(identity_element(d)) == 0
    assert length(translation(d, (1, 0))) == 1
    d2 = datums["SL2"]
    assert length(translation(d2, (1,))) == 2


def test_length_step_property(datums):
    """l(x s) is l(x) +- 1 for every generator."""
    for name in ("GL2", "SL2", "GSp4", "U3-unram"):
        d = datums[name]
        seeds = [omega_element(d, c) for c in default_omega_classes(d)]
        ball = word_ball(d, seeds, 4)
        for x in ball:
            lx = length(x)
            for g in affine_gens(d):
                assert abs(length(mul(x, g.element)) - lx) == 1
                assert abs(length(mul(g.element, x)) - lx) == 1


def test_length_sigma_invariant(datums):
    for name in ("ResE2-GL2", "U3-unram", "SU3-unram"):
        d = datums[name]
        seeds = [omega_element(d, c) for c in default_omega_classes(d)]
        for x in word_ball(d, seeds, 4):
            assert length(apply_sigma(x)) == length(x)


def test_reduced_word_factorization(datums):
    for name in ("GL2", "GSp4", "U3-unram"):
        d = datums[name]
        gens = affine_gens(d)
        seeds = [omega_element(d, c) for c in default_omega_classes(d)]
        for x in word_ball(d, seeds, 4):
            word, om = reduced_word(x)
            assert len(word) == length(x)
            assert length(om) == 0
            prod = om
            for i in reversed(word):
                prod = mul(gens[i].element, prod)
            assert prod == x


def test_reduced_word_trivial_cases(datums):
    d = datums["GL2"]
    word, om = reduced_word(translation(d, (1, 1)))
    assert word == () and om == translation(d, (1, 1))
    word, om = reduced_word(translation(d, (1, 0)))
    assert len(word) == 1


def test_omega_component_examples(datums):
    d = datums["GL2"]
    assert omega_component(translation(d, (2, 1))) == (3,)
    assert omega_component(simple_reflection(d, 0)) == (0,)
    d2 = datums["SL2"]
    for x in [identity_element(d2), translation(d2, (1,)),
              simple_reflection(d2, 0)]:
        assert omega_component(x) == ()


def test_omega_component_homomorphism(datums):
    d = datums["GL2"]
    pi1 = d.pi1
    xs = [translation(d, (1, 0)), mul(simple_reflection(d, 0), translation(d, (0, 2))),
          omega_element(d, (1,))]
    for x in xs:
        for y in xs:
            assert omega_component(mul(x, y)) == \
                pi1.add(omega_component(x), omega_component(y))


def test_omega_element_is_length_zero(datums):
    for name, d in datums.items():
        for cls in default_omega_classes(d):
            om = omega_element(d, cls)
            assert length(om) == 0
            assert omega_component(om) == d.pi1.reduce(cls)
            assert is_length_zero(d, om)


def test_bruhat_examples(datums):
    d = datums["GL2"]
    e = identity_element(d)
    s = simple_reflection(d, 0)
    t10, t01 = translation(d, (1, 0)), translation(d, (0, 1))
    assert bruhat_leq(e, s)
    assert bruhat_leq(t10, t10)
    assert not bruhat_leq(t10, t01)
    assert not bruhat_leq(t01, t10)


def test_bruhat_sigma_equivariant(datums):
    for name in ("ResE2-GL2", "U3-unram"):
        d = datums[name]
        seeds = [omega_element(d, c) for c in default_omega_classes(d)]
        ball = list(word_ball(d, seeds, 3))
        for x in ball:
            for y in ball:
                assert bruhat_leq(x, y) == bruhat_leq(apply_sigma(x), apply_sigma(y))


def test_bruhat_on_finite_weyl_matches_subword(datums):
    from iwk.oracles import subword_leq

    d = datums["GSp4"]
    from iwk.iwahori_weyl import fin_from_matrix, from_fin
    elems = [from_fin(d, fin_from_matrix(d, m)) for m in d.w0_words]
    for x in elems:
        for y in elems:
            assert bruhat_leq(x, y) == subword_leq(d, x, y, cap=5)


def test_min_coset_rep_examples(datums):
    d = datums["GL2"]
    t10 = translation(d, (1, 0))
    s = simple_reflection(d, 0)
    x = mul(s, t10)
    assert min_coset_rep(d, [], x, "left") == x
    assert min_coset_rep(d, [1], mul(s, s), "left") == identity_element(d)
    rep = min_coset_rep(d, [1], x, "left")
    assert rep == t10 and length(rep) == 1


def test_min_coset_rep_uniqueness(datums):
    d = datums["GSp4"]
    seeds = [omega_element(d, c) for c in default_omega_classes(d)]
    gens = affine_gens(d)
    K = [1, 2]
    group = enumerate_parahoric(d, K)
    for x in list(word_ball(d, seeds, 3))[:40]:
        rep = min_coset_rep(d, K, x, "left")
        coset = {mul(u, x) for u in group}
        assert rep in coset
        assert length(rep) == min(length(z) for z in coset)
        assert sum(1 for z in coset if length(z) == length(rep)) == 1


def test_min_coset_rep_infinite_k(datums):
    d = datums["GL2"]
    with pytest.raises(IwkError) as e:
        min_coset_rep(d, [0, 1], identity_element(d), "left")
    assert e.value.code == "K_INFINITE"


def test_subgroup_finite_examples(datums):
    d = datums["SL2"]
    assert subgroup_finite(d, [])
    assert subgroup_finite(d, [0])
    assert not subgroup_finite(d, [0, 1])
    r = datums["ResE2-GL2"]
    comp = component_nodes(r)
    assert not subgroup_finite(r, comp[0])
    assert subgroup_finite(r, [comp[0][0], comp[1][0]])


def test_subgroup_finite_agrees_with_closure(datums):
    """Closure enumeration with a cap as an independent finiteness check."""
    from itertools import product as iproduct

    for name in ("GL2", "SL2", "SL3", "GSp4"):
        d = datums[name]
        gens = affine_gens(d)
        cap = 10 * d.echelonnage.weyl_order
        for bits in iproduct((0, 1), repeat=len(gens)):
            k = [i for i, b in enumerate(bits) if b]
            seen = {identity_element(d)}
            queue = [identity_element(d)]
            closed = True
            while queue and closed:
                nxt = []
                for x in queue:
                    for i in k:
                        y = mul(x, gens[i].element)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                            if len(seen) > cap:
                                closed = False
                                break
                    if not closed:
                        break
                queue = nxt
            assert subgroup_finite(d, k) == closed, (name, k)


def test_serialization_roundtrip(datums):
    for name in ("GL2", "GSp4", "U3-unram"):
        d = datums[name]
        seeds = [omega_element(d, c) for c in default_omega_classes(d)]
        for x in list(word_ball(d, seeds, 3)):
            obj = element_to_obj(x)
            assert element_from_obj(d, obj) == x


def test_serialization_validates(datums):
    d = datums["GL2"]
    with pytest.raises(IwkError):
        element_from_obj(d, {"trans": [0], "fin_word": []})
    with pytest.raises(IwkError):
        element_from_obj(d, {"trans": [0, 0], "fin_word": [7]})
