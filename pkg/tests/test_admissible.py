import pytest

from iwk.admissible import (
    adm,
    adm_K,
    adm_very_special,
    closure_poset,
    coweight_avatar,
    dominant_below,
    is_very_special,
    k_adm,
    tau_of,
    very_special_levels,
    weyl_orbit,
)
from iwk.errors import IwkError
from iwk.iwahori_weyl import (
    apply_sigma,
    bruhat_leq,
    identity_element,
    length,
    omega_component,
    translation,
)


def test_adm_gl2_example(datums):
    d = datums["GL2"]
    a = adm(d, (1, 0))
    assert len(a.elements) == 3
    assert tau_of(d, (1, 0)) in a.elements
    assert {x.trans for x in a.elements} == {(1, 0), (0, 1)}


def test_adm_zero(datums):
    for name, d in datums.items():
        a = adm(d, d.lattice.zero())
        assert a.elements == (identity_element(d),)


def test_adm_gsp4_siegel_count(datums):
    d = datums["GSp4"]
    a = adm(d, (1, 1, 1))
    assert len(a.elements) == 13


def test_adm_rejects_non_dominant(datums):
    d = datums["GL2"]
    with pytest.raises(IwkError) as e:
        adm(d, (0, 1))
    assert e.value.code == "NOT_DOMINANT"


def test_tau_examples(datums):
    d = datums["GL2"]
    assert tau_of(d, (0, 0)) == identity_element(d)
    tau = tau_of(d, (1, 0))
    assert length(tau) == 0 and omega_component(tau) == (1,)
    d2 = datums["SL2"]
    assert tau_of(d2, (1,)) == identity_element(d2)


def test_adm_structure_properties(datums, mu_grid2):
    """One length-zero element, a single omega class, downward closure, and
    the translations by the Weyl orbit as the maxima."""
    for name, d in datums.items():
        for mu in mu_grid2[name]:
            a = adm(d, mu)
            zeros = [x for x in a.elements if length(x) == 0]
            assert len(zeros) == 1, (name, mu)
            classes = {omega_component(x) for x in a.elements}
            assert len(classes) == 1
            maxima = {translation(d, nu) for nu in weyl_orbit(d, mu)}
            got_max = {x for x in a.elements
                       if not any(x != y and bruhat_leq(x, y) for y in a.elements)}
            assert got_max == maxima, (name, mu)


def test_adm_downward_closed(datums):
    for name in ("GL2", "SL2", "GSp4", "U3-unram"):
        d = datums[name]
        for mu in [m for m in dominant_grid_small(d)]:
            a = adm(d, mu)
            elems = set(a.elements)
            for x in a.elements:
                for y in a.elements:
                    if bruhat_leq(x, y):
                        assert x in elems


def dominant_grid_small(d):
    from conftest import dominant_grid
    return dominant_grid(d, 1)


def test_adm_sigma_stability(datums):
    for name in ("ResE2-GL2", "U3-unram", "SU3-unram"):
        d = datums[name]
        from conftest import dominant_grid
        for mu in dominant_grid(d, 1):
            a = adm(d, mu)
            image = {apply_sigma(x) for x in a.elements}
            target = adm(d, d.dominant_rep(d.sigma_coweight(mu)))
            assert image == set(target.elements), (name, mu)


def test_adm_k_examples(datums):
    d = datums["GL2"]
    assert adm_K(d, (0, 0), [1]).elements == (identity_element(d),)
    aK = adm_K(d, (1, 0), [1])
    assert len(aK.elements) == 1
    # level () is the Iwahori level: image is the admissible set itself
    assert adm_K(d, (1, 0), []).elements == adm(d, (1, 0)).elements


def test_adm_k_sigma_stability_error(datums):
    r = datums["ResE2-GL2"]
    with pytest.raises(IwkError) as e:
        adm_K(r, (1, 0, 1, 0), [1])  # finite node of one factor only
    assert e.value.code == "K_NOT_SIGMA_STABLE"
    with pytest.raises(IwkError) as e:
        k_adm(datums["GL2"], (1, 0), [0, 1])
    assert e.value.code == "K_INFINITE"


def test_k_adm_examples(datums):
    d = datums["GL2"]
    assert k_adm(d, (1, 0), []).elements == adm(d, (1, 0)).elements
    kA = k_adm(d, (1, 0), [1])
    assert len(kA.elements) == 2
    assert tau_of(d, (1, 0)) in kA.elements
    assert translation(d, (1, 0)) in kA.elements


def test_k_adm_dominates_adm_k(datums, mu_grid2):
    for name, d in datums.items():
        levels = very_special_levels(d)
        for mu in mu_grid2[name][:6]:
            for k in levels:
                assert len(k_adm(d, mu, k).elements) >= len(adm_K(d, mu, k).elements)


def test_very_special_detection(datums):
    d = datums["GL2"]
    assert is_very_special(d, [0]) and is_very_special(d, [1])
    assert not is_very_special(d, [])
    assert very_special_levels(d) == [(0,), (1,)]
    r = datums["ResE2-GL2"]
    levels = very_special_levels(r)
    assert levels and all(len(k) == 2 for k in levels)


def test_adm_very_special_examples(datums):
    d = datums["GL2"]
    avs = adm_very_special(d, (1, 0), [1])
    assert [x.trans for x in avs.elements] == [(1, 0)]
    avs = adm_very_special(d, (1, 1), [1])
    assert [x.trans for x in avs.elements] == [(1, 1)]
    avs = adm_very_special(d, (2, 0), [1])
    assert sorted(x.trans for x in avs.elements) == [(1, 1), (2, 0)]
    with pytest.raises(IwkError) as e:
        adm_very_special(d, (1, 0), [])
    assert e.value.code == "NOT_VERY_SPECIAL"


def test_very_special_cross_check(datums, mu_grid2):
    """Coweight avatars of the double cosets match the dominance set."""
    for name, d in datums.items():
        for k in very_special_levels(d):
            for mu in mu_grid2[name]:
                aK = adm_K(d, mu, k)
                avatars = sorted(coweight_avatar(d, k, x) for x in aK.elements)
                lams = sorted(x.trans for x in adm_very_special(d, mu, k).elements)
                assert avatars == lams, (name, k, mu)


def test_dominant_below_matches_order(datums):
    from conftest import dominant_grid
    for name in ("GL2", "GSp4", "SL3"):
        d = datums[name]
        grid = dominant_grid(d, 2)
        for mu in grid:
            below = set(dominant_below(d, mu))
            for lam in grid:
                assert (lam in below) == d.dominance_leq(lam, mu)


def test_closure_poset(datums):
    d = datums["GL2"]
    cp = closure_poset(adm(d, (1, 0)))
    assert len(cp.covers) == 2
    tau = tau_of(d, (1, 0))
    idx = cp.nodes.index(tau)
    assert all(lo == idx for lo, hi in cp.covers)
    single = closure_poset(adm(d, (0, 0)))
    assert single.covers == ()


def test_closure_poset_iwahori_cover_lengths(datums):
    for name in ("GL2", "GSp4", "U3-unram"):
        d = datums[name]
        from conftest import dominant_grid
        for mu in dominant_grid(d, 1):
            cp = closure_poset(adm(d, mu))
            for lo, hi in cp.covers:
                assert length(cp.nodes[hi]) == length(cp.nodes[lo]) + 1
