from math import gcd

import pytest
from oracles import burnside_product

from eqdeg.burnside import (
    BurnsideRing,
    Element,
    format_terms,
    parse_terms,
    pi0,
    recurrence,
)
from eqdeg.errors import ConsistencyError, InputError
from eqdeg.euler import O2EulerRing
from eqdeg.groups import load_group, s4, symmetric_group


def test_parse_and_format_round_trip():
    terms = [("Amal(H=D4, K=D(2), L=Z(2), Z=D2)", 2), ("Z1", -1), ("S4", 1)]
    assert parse_terms(format_terms(terms)) == terms
    assert parse_terms("0") == []
    assert format_terms([]) == "0"
    with pytest.raises(InputError):
        parse_terms("2*(Z1")
    with pytest.raises(InputError):
        parse_terms("Z1")


def test_element_arithmetic():
    A = BurnsideRing(s4())
    x = A.parse("(Z2) - 2*(D4)")
    y = A.parse("(D4)")
    assert x + 2 * y == A.parse("(Z2)")
    assert (x - x).terms == {}
    assert not (x - x)
    assert x * A.unit() == x
    assert len(x) == 2 and x.coeff(A.group.class_by_name("D4").index) == -2
    with pytest.raises(InputError):
        A.parse("(Q8)")


def test_s3_table_by_hand():
    # A(S3): (Z2)(Z2) = (Z1) + (Z2), (Z3)(Z3) = 2(Z3), (Z2)(Z3) = (Z1)
    G = symmetric_group(3)
    A = BurnsideRing(G)
    names = {c.order: c.name for c in G.subgroup_classes}
    z1, z2, z3 = (A.gen(names[k]) for k in (1, 2, 3))
    assert z2 * z2 == z1 + z2
    assert z3 * z3 == 2 * z3
    assert z2 * z3 == z1


@pytest.mark.parametrize("name", ["D4", "S4"])
def test_recurrence_matches_double_cosets(name):
    G = load_group(name)
    A = BurnsideRing(G)
    n = len(G.subgroup_classes)
    for a in range(n):
        for b in range(n):
            assert A.gen_product(a, b) == burnside_product(G, a, b)


def test_recurrence_detects_inconsistency():
    with pytest.raises(ConsistencyError):
        recurrence([0], lambda L: 1, lambda L: 1, lambda a, b: 0, lambda L: 2)


def test_u_o2_table(trivial_lat):
    U = O2EulerRing(trivial_lat)
    fam = {f.kind: f for f in trivial_lat.families}
    O2, SO2 = U.gen(fam["O2"].at()), U.gen(fam["SO2"].at())
    D = lambda n: U.gen(fam["D"].at(n))
    Z = lambda n: U.gen(fam["Z"].at(n))
    assert U.unit() == O2
    assert SO2 * SO2 == 2 * SO2
    assert SO2 * D(6) == Z(6)
    assert SO2 * Z(4) == 2 * Z(4)
    for k, n in [(4, 6), (3, 5), (2, 2), (1, 7)]:
        l = gcd(k, n)
        assert D(k) * D(n) == 2 * D(l) - Z(l)
        assert not D(k) * Z(n)
        assert not Z(k) * Z(n)


def test_pi0_drops_phi1(trivial_lat):
    U = O2EulerRing(trivial_lat)
    fam = {f.kind: f for f in trivial_lat.families}
    x = U.gen(fam["D"].at(2)) - 3 * U.gen(fam["Z"].at(2))
    p = pi0(x)
    assert p.ring is U.burnside
    assert p.terms == {fam["D"].at(2): 1}
    assert Element(U, p.terms) != x
