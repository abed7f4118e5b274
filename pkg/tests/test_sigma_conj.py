from fractions import Fraction as F

import pytest

from iwk.admissible import adm, tau_of
from iwk.errors import IwkError
from iwk.iwahori_weyl import (
    affine_gens,
    apply_sigma,
    identity_element,
    inv,
    length,
    mul,
    omega_element,
    simple_reflection,
    translation,
)
from iwk.oracles import default_omega_classes, orbit_closure, word_ball
from iwk.sigma_conj import (
    b_g_mu,
    basic_entry,
    invariants_of,
    is_basic_newton,
    is_straight,
    kottwitz,
    leq_b,
    newton,
    straight_elements,
)


def test_newton_examples(datums):
    d = datums["GL2"]
    nu, nud = newton(translation(d, (1, 0)))
    assert nu == (F(1), F(0)) and nud == (F(1), F(0))
    tau = tau_of(d, (1, 0))
    _, nud = newton(tau)
    assert nud == (F(1, 2), F(1, 2))
    s = simple_reflection(d, 0)
    _, nud = newton(mul(mul(s, translation(d, (1, 0))), s))
    assert nud == (F(1), F(0))


def test_newton_conjugation_invariance(datums):
    """The dominant Newton point is invariant under twisted conjugation by
    generators and length-zero elements."""
    for name in ("GL2", "SL2", "ResE2-GL2", "U3-unram"):
        d = datums[name]
        seeds = [omega_element(d, c) for c in default_omega_classes(d)]
        ball = [x for x, (dist, _, _) in word_ball(d, seeds, 4).items() if dist <= 4]
        conjugators = [g.element for g in affine_gens(d)] + seeds
        for x in ball[:120]:
            _, nud = newton(x)
            for g in conjugators:
                y = mul(mul(g, x), inv(apply_sigma(g)))
                assert newton(y)[1] == nud


def test_kottwitz_examples(datums):
    d = datums["GL2"]
    assert kottwitz(translation(d, (1, 0))) == (1,)
    assert kottwitz(identity_element(d)) == (0,)
    r = datums["ResE2-GL2"]
    assert kottwitz(translation(r, (1, 0, 0, 0))) == (1,)


def test_kottwitz_homomorphism_and_invariance(datums):
    for name in ("GL2", "ResE2-GL2", "U3-unram"):
        d = datums[name]
        seeds = [omega_element(d, c) for c in default_omega_classes(d)]
        ball = list(word_ball(d, seeds, 3))
        for x in ball[:40]:
            for y in ball[:40:4]:
                assert kottwitz(mul(x, y)) == \
                    d.pi1_gamma.add(kottwitz(x), kottwitz(y))
        for x in ball[:40]:
            for g in [g.element for g in affine_gens(d)]:
                y = mul(mul(g, x), inv(apply_sigma(g)))
                assert kottwitz(y) == kottwitz(x)


def test_straight_examples(datums):
    d = datums["GL2"]
    assert is_straight(tau_of(d, (1, 0)))
    assert is_straight(translation(d, (1, 0)))
    assert not is_straight(simple_reflection(d, 0))
    for name, dd in datums.items():
        assert is_straight(identity_element(dd))


def test_straight_length_newton_identity(datums, mu_grid2):
    for name, d in datums.items():
        two_rho = d.two_rho()
        for mu in mu_grid2[name][:10]:
            for x in straight_elements(adm(d, mu)):
                _, nud = newton(x)
                val = sum(F(a) * b for a, b in zip(two_rho, nud))
                assert val == length(x), (name, mu, x)


def test_straight_elements_gl2(datums):
    d = datums["GL2"]
    got = straight_elements(adm(d, (1, 0)))
    assert set(got) == set(adm(d, (1, 0)).elements)
    assert straight_elements(adm(d, (0, 0))) == [identity_element(d)]


def test_bgmu_gl2(datums):
    d = datums["GL2"]
    entries = b_g_mu(d, (1, 0))
    assert len(entries) == 2
    assert sorted(e.invariants.newton for e in entries) == \
        [(F(1, 2), F(1, 2)), (F(1), F(0))]
    assert sum(e.invariants.is_basic for e in entries) == 1
    assert all(e.invariants.kottwitz == (1,) for e in entries)


def test_bgmu_sl2(datums):
    d = datums["SL2"]
    entries = b_g_mu(d, (1,))
    assert len(entries) == 2
    assert sorted(e.invariants.newton for e in entries) == [(F(0),), (F(1),)]
    assert next(e for e in entries if e.invariants.newton == (F(0),)).invariants.is_basic


def test_bgmu_zero(datums):
    for name, d in datums.items():
        entries = b_g_mu(d, d.lattice.zero())
        assert len(entries) == 1
        assert entries[0].invariants.is_basic
        assert all(x == 0 for x in entries[0].invariants.newton)


def test_bgmu_bounds_and_kappa(datums, mu_grid2):
    for name, d in datums.items():
        for mu in mu_grid2[name][:8]:
            kappa_mu = kottwitz(translation(d, mu))
            nmu = d.galois_average(mu)
            for e in b_g_mu(d, mu):
                assert e.invariants.kottwitz == kappa_mu
                assert d.newton_leq(e.invariants.newton, nmu)
                assert e.witness in adm(d, mu).elements
                assert is_straight(e.witness)


def test_basic_entry_minimal(datums, mu_grid2):
    for name, d in datums.items():
        for mu in mu_grid2[name][:8]:
            entries = b_g_mu(d, mu)
            bas = basic_entry(d, mu)
            assert all(F(a) * 1 == 0 or True for a in bas.invariants.newton)
            for s in d.echelonnage.simples:
                assert sum(F(a) * b for a, b in
                           zip(s.cov, bas.invariants.newton)) == 0
            for e in entries:
                assert leq_b(d, bas.invariants, e.invariants)


def test_leq_b_examples(datums):
    d = datums["GL2"]
    entries = b_g_mu(d, (1, 0))
    bas = next(e for e in entries if e.invariants.is_basic)
    other = next(e for e in entries if not e.invariants.is_basic)
    assert leq_b(d, bas.invariants, other.invariants)
    assert not leq_b(d, other.invariants, bas.invariants)
    assert leq_b(d, bas.invariants, bas.invariants)


def test_distinct_straight_classes_have_distinct_invariants(datums):
    """Partition by bounded twisted-conjugation orbits matches the partition
    by (class, Newton) invariants."""
    for name in ("GL2", "SL2", "U3-unram"):
        d = datums[name]
        mu = {"GL2": (1, 0), "SL2": (1,), "U3-unram": (1, 0, 0)}[name]
        aset = adm(d, mu)
        strs = straight_elements(aset)
        bound = max(length(x) for x in aset.elements)
        omegas = list({omega_element(d, default) for default in
                       [tuple(c) for c in [omega_component_of(x) for x in aset.elements]]})
        orbits = []
        remaining = set(strs)
        while remaining:
            seed = sorted(remaining, key=lambda x: (length(x), x.trans))[0]
            orb = orbit_closure(d, seed, bound, extra_conjugators=omegas)
            orbits.append(orb & set(strs))
            remaining -= orb
        for orb in orbits:
            invs = {(invariants_of(x).newton, invariants_of(x).kottwitz) for x in orb}
            assert len(invs) == 1
        pair_count = len({(invariants_of(x).newton, invariants_of(x).kottwitz)
                          for x in strs})
        assert pair_count == len(orbits)


def omega_component_of(x):
    from iwk.iwahori_weyl import omega_component
    return omega_component(x)


def test_straight_elements_requires_iwahori_kind(datums):
    from iwk.admissible import adm_K
    d = datums["GL2"]
    with pytest.raises(IwkError):
        straight_elements(adm_K(d, (1, 0), [1]))
