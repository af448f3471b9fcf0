from collections import Counter
from fractions import Fraction

import pytest
from oracles import _members, classify_finite

from eqdeg.errors import InputError
from eqdeg.groups import s4
from eqdeg.o2lattice import O2Subgroup, ProductLattice, o2_inv, o2_mul


def test_o2_group_law():
    a = (Fraction(1, 3), 1)
    b = (Fraction(1, 4), 0)
    assert o2_mul(a, a) == (Fraction(0), 0)
    assert o2_mul(a, o2_inv(a)) == (Fraction(0), 0)
    # a reflection conjugates a rotation to its inverse
    assert o2_mul(o2_mul(a, b), o2_inv(a)) == (Fraction(3, 4), 0)


def test_o2_subgroup_membership():
    d3 = O2Subgroup("D", 3)
    assert d3.order == 6
    assert len(d3.elements()) == 6
    assert d3.contains((Fraction(2, 3), 1))
    assert not d3.contains((Fraction(1, 2), 0))
    assert O2Subgroup("SO2").contains((Fraction(1, 7), 0))
    assert not O2Subgroup("SO2").contains((Fraction(0), 1))
    with pytest.raises(ValueError):
        O2Subgroup("D", 0)


def test_trivial_gamma_families(trivial_lat):
    kinds = Counter(f.kind for f in trivial_lat.families)
    assert kinds == {"Z": 1, "D": 1, "SO2": 1, "O2": 1}
    rows = trivial_lat.classify_product_classes()
    assert [r["weyl_order"] for r in rows] == [None, 2, 2, 1]


def test_census_counts(d4z2_lat):
    assert len(ProductLattice(s4()).classify_product_classes()) == 100
    assert len(d4z2_lat.classify_product_classes()) == 459


def test_class_names_round_trip():
    lat = ProductLattice(s4())
    for c in lat.instances(3):
        assert lat.parse_class(lat.class_name(c)) == c
    with pytest.raises(InputError):
        lat.parse_class("Amal(H=Q8, K=O2, L=Z(1))")


def test_find_classes_by_labels():
    lat = ProductLattice(s4())
    (c,) = lat.find_classes("D4", "D(2)", "Z(2)", "D2")
    assert lat.class_name(c) == "Amal(H=D4, K=D(2), L=Z(2), Z=D2)"
    both = lat.find_classes("D2", "D(2)", "D(2)", "Z1")
    assert len(both) == 2
    assert len(lat.find_classes("D2", "D(2)", "D(2)", "Z1", "Z2")) == 1


def test_subconjugacy_basics():
    lat = ProductLattice(s4())
    top = lat.find_classes("S4", "O2")[0]
    for c in lat.instances(2):
        assert lat.is_subconjugate(c, top)
    d1 = lat.find_classes("Z1", "D(1)")[0]
    d2 = lat.find_classes("Z1", "D(2)")[0]
    assert lat.is_subconjugate(d1, d2)
    assert not lat.is_subconjugate(d2, d1)


def test_fold_multiplies_parameter():
    lat = ProductLattice(s4())
    c = lat.find_classes("D3", "D(3)", "D(3)")[0]
    assert lat.fold(c, 4).N == 12
    top = lat.find_classes("S4", "O2")[0]
    assert lat.fold(top, 3) == top


def test_classify_finite_recovers_each_class():
    lat = ProductLattice(s4())
    for c in lat.instances(2):
        if c.k.finite:
            assert classify_finite(lat, _members(lat, c)) == c


def test_s1_orbit_counts_s4():
    lat = ProductLattice(s4())
    assert lat.s1_orbit_count(lat.find_classes("D3", "D(3)", "D(3)")[0]) == 8
    assert lat.s1_orbit_count(lat.find_classes("D4", "D(4)", "D(4)")[0]) == 6


def test_anti_reflective_needs_aux_factor(d4z2_lat):
    lat = ProductLattice(s4())
    assert not any(lat.anti_reflective(c) for c in lat.instances(1))
    flags = [d4z2_lat.anti_reflective(c) for c in d4z2_lat.instances(1)]
    assert any(flags) and not all(flags)
