import random

import pytest
from oracles import euler_product, module_product

from eqdeg.burnside import Element
from eqdeg.errors import ConsistencyError
from eqdeg.euler import O2EulerRing, S1EulerRing, a1_module_mult
from eqdeg.groups import load_group, s4
from eqdeg.o2lattice import ProductLattice, TwistClass


def test_psi_on_o2_generators(trivial_lat):
    U = O2EulerRing(trivial_lat)
    fam = {f.kind: f for f in trivial_lat.families}
    s1 = U.s1.unit()
    z = lambda n: U.s1.gen(U.psi(U.gen(fam["D"].at(n))).sorted_terms()[0][0])
    assert U.psi(U.gen(fam["SO2"].at())) == 2 * s1
    assert U.psi(U.gen(fam["O2"].at())) == s1
    assert U.psi(U.gen(fam["Z"].at(3))) == 2 * z(3)
    assert len(U.psi(U.gen(fam["D"].at(3)))) == 1


def test_s1_ring_twisted_products_vanish():
    S = S1EulerRing(ProductLattice(s4()))
    t = S.lattice.twisted_families
    for a in t[:6]:
        for b in t[:6]:
            assert not S.gen(a) * S.gen(b)


def test_twist_names_round_trip():
    lat = ProductLattice(s4())
    for t in lat.twisted_families:
        for l in (1, 3):
            u = lat.fold_twist(t, l)
            assert lat.parse_class(lat.twist_name(u)) == u
    assert lat.parse_class("Prod(H=D4)") == TwistClass(lat.group.class_by_name("D4").index, (), 0)


@pytest.mark.parametrize("name", ["S4", "D4xZ2"])
def test_module_product_matches_double_cosets(name):
    lat = ProductLattice(load_group(name))
    S = S1EulerRing(lat)
    rng = random.Random(7)
    for _ in range(40):
        h = rng.randrange(len(lat.classes))
        t = lat.fold_twist(rng.choice(lat.twisted_families), rng.choice([1, 2, 3]))
        assert S.module_product(h, t) == module_product(lat, h, t)


@pytest.mark.parametrize("name", ["Z1", "S4", "D4xZ2"])
def test_euler_products_match_cell_count(name):
    lat = ProductLattice(load_group(name))
    U = O2EulerRing(lat)
    rng = random.Random(1)
    fams = [f for f in lat.families if f.kind in "DZ"]
    checked = 0
    while checked < 25:
        f1, f2 = rng.choice(fams), rng.choice(fams)
        if f1.kind == "Z" and f2.kind == "Z":
            continue
        a, b = f1.at(rng.choice([1, 2, 3])), f2.at(rng.choice([1, 2]))
        assert U.gen_product(a, b) == euler_product(lat, a, b)
        checked += 1


def test_a1_module_mult_agrees_with_ring():
    lat = ProductLattice(s4())
    S = S1EulerRing(lat)
    t = lat.twisted_families[3]
    x = S.parse("(Prod(H=D4)) - 2*(Prod(H=Z2))")
    assert a1_module_mult(x, t, S) == x * S.gen(t)


def test_solve_phi1_rejects_odd_coefficients(trivial_lat):
    U = O2EulerRing(trivial_lat)
    fam = {f.kind: f for f in trivial_lat.families}
    t = U.psi(U.gen(fam["D"].at(2))).sorted_terms()[0][0]
    with pytest.raises(ConsistencyError):
        U.solve_phi1(Element(U.s1, {t: 1}))
    assert U.solve_phi1(Element(U.s1, {t: 4})) == {fam["Z"].at(2): 2}
