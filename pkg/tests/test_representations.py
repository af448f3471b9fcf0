import math

import numpy as np
import pytest
from oracles import _members

from eqdeg.errors import InputError
from eqdeg.groups import cyclic_group, load_group, s4
from eqdeg.o2lattice import ProductLattice
from eqdeg.representations import (
    OrthogonalRep,
    character_table,
    fixed_dim,
    fixed_dim_product,
    isotypical_multiplicities,
    load_rep,
)


def test_s4_real_irreps():
    T = character_table(s4())
    assert [(v.name, v.dim, v.kind) for v in T.real_irreps] == [
        ("V0", 1, "real"), ("V1", 1, "real"), ("V2", 2, "real"), ("V3", 3, "real"), ("V4", 3, "real")]
    assert T.index("V3") == 3
    with pytest.raises(InputError):
        T.irrep("V9")


def test_character_orthogonality():
    for G in (s4(), load_group("D4xZ2")):
        T = character_table(G)
        X = np.array([v.char for v in T.real_irreps])
        gram = X @ X.T / G.order
        assert np.allclose(gram, np.eye(len(X)))
        assert sum(v.dim ** 2 for v in T.real_irreps) == G.order


def test_complex_type_is_detected():
    T = character_table(cyclic_group(3))
    kinds = sorted(v.kind for v in T.real_irreps)
    assert kinds == ["complex", "real"]
    assert sorted(v.dim for v in T.real_irreps) == [1, 2]


def test_permutation_profiles():
    G = s4()
    assert isotypical_multiplicities(OrthogonalRep.permutation(G)).as_dict() == {"V0": 1, "V3": 1}
    D = load_group("D4")
    prof = isotypical_multiplicities(OrthogonalRep.permutation(D)).as_dict()
    assert sum(m * character_table(D).irrep(n).dim for n, m in prof.items()) == 4


def test_fixed_dim_of_permutation_rep():
    G = s4()
    chi = OrthogonalRep.permutation(G).character
    # orbits of a subgroup on the four points
    orbits = {"Z1": 4, "D1": 3, "Z2": 2, "V4": 1, "Z3": 2, "S4": 1}
    for name, k in orbits.items():
        assert fixed_dim(chi, G.class_by_name(name).representative) == k


def test_rep_validation():
    G = s4()
    with pytest.raises(InputError):
        OrthogonalRep(G, [np.eye(2)])
    with pytest.raises(InputError):
        OrthogonalRep(G, [np.eye(2) * 2, np.eye(2)])
    with pytest.raises(InputError):
        OrthogonalRep(G, [np.eye(3), np.eye(2)])
    quarter = np.array([[0.0, -1.0], [1.0, 0.0]])
    with pytest.raises(InputError, match="relations"):
        OrthogonalRep(G, [quarter, quarter])


def test_load_rep_file(tmp_path):
    G = load_group("Z2")
    f = tmp_path / "rep.txt"
    f.write_text("2\n0 1\n1 0\n")
    assert load_rep(G, str(f)).dim == 2
    f.write_text("2\n0 1\n1 x\n")
    with pytest.raises(InputError, match=":3:2:"):
        load_rep(G, str(f))
    with pytest.raises(InputError):
        load_rep(G, str(tmp_path / "missing.txt"))


def _o2_matrix(y, l):
    t, s = y
    a = 2 * math.pi * float(t) * l
    r = np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
    return r @ np.diag([1, -1]) if s else r


@pytest.mark.parametrize("l", [1, 2])
def test_fixed_dim_product_matches_projection(l):
    G = s4()
    lat = ProductLattice(G)
    R = OrthogonalRep.permutation(G)
    T = character_table(G)
    char = T.irrep("V0").char + T.irrep("V3").char
    for N in (1, 2, 3, 4, 6, 12):
        for c in lat.phi0_with_k(N):
            m = _members(lat, c)
            P = sum(np.kron(R.images[x], _o2_matrix(y, l)) for x, y in m) / len(m)
            assert round(np.trace(P)) == fixed_dim_product(lat, char, l, c)
