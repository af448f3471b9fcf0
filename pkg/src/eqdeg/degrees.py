"""Gradient basic degrees for Gamma x O(2) and Gamma x S^1."""
from __future__ import annotations

from .burnside import Element, phi0_sort_key
from .errors import ConsistencyError, InputError
from .euler import O2EulerRing
from .groups import FiniteGroup
from .o2lattice import ProductLattice, TwistClass
from .representations import (
    character_table,
    fixed_dim,
    fixed_dim_product,
    fixed_dim_twisted,
)


class DegreeCalculator:
    """Memoized basic degrees of -Id on the irreducible representations of Gamma x O(2).

    mode 'i': O(2) acts trivially on V_j; mode 'ii': O(2) acts through its sign
    O(2) -> Z_2; an integer l >= 1: V_j (x) U_l with rotations acting l-fold.
    """

    def __init__(self, group: FiniteGroup, lattice: ProductLattice | None = None,
                 ring: O2EulerRing | None = None):
        self.group = group
        self.lattice = lattice or ProductLattice(group)
        self.ring = ring or O2EulerRing(self.lattice)
        self.s1 = self.ring.s1
        self.table = character_table(group)
        self._memo: dict = {}

    def _char(self, j):
        irr = self.table.real_irreps[j] if isinstance(j, int) else self.table.irrep(j)
        if irr.kind != "real":
            raise InputError(f"irreducible {irr.name} is not of real type; only real-type "
                             "irreducibles are supported for degree computations")
        return irr.char

    def _index(self, j) -> int:
        return j if isinstance(j, int) else self.table.index(j)

    # Gamma x O(2) ------------------------------------------------------

    def phi0_candidates(self, mode) -> list:
        lat = self.lattice
        cands = lat.classes_with_k("SO2") + lat.classes_with_k("O2")
        if mode not in ("i", "ii"):
            l = int(mode)
            exp = self.group.exponent
            for m in range(1, exp + 1):
                if exp % m == 0:
                    cands += lat.phi0_with_k(l * m)
        return sorted(set(cands), key=lambda c: phi0_sort_key(lat, c), reverse=True)

    def phi0_part(self, j, mode) -> dict:
        lat = self.lattice
        char = self._char(j)
        out: dict = {}
        for H in self.phi0_candidates(mode):
            s = (-1) ** fixed_dim_product(lat, char, mode, H)
            for K, v in out.items():
                n = lat.n_number(H, K)
                if n:
                    s -= v * n * lat.weyl_data(K)[0]
            w = lat.weyl_data(H)[0]
            q, r = divmod(s, w)
            if r:
                raise ConsistencyError(f"non-integer degree coefficient {s}/{w}")
            if q:
                out[H] = q
        return out

    def gradient_go2(self, j, mode) -> Element:
        key = ("go2", self._index(j), mode)
        if key not in self._memo:
            phi0 = self.phi0_part(j, mode)
            res = dict(phi0)
            if mode not in ("i", "ii"):
                rhs = self.gradient_gs1(j, int(mode)) - self.ring.psi(Element(self.ring, phi0))
                res.update(self.ring.solve_phi1(rhs))
            self._memo[key] = Element(self.ring, res)
        return self._memo[key]

    # Gamma x S^1 ---------------------------------------------------------

    def twisted(self, j, l: int) -> Element:
        """The twisted degree deg~ of V_{j,l}, supported on l-folded twisted classes."""
        if l < 1:
            raise InputError("fold must be at least 1")
        key = ("tw", self._index(j), l)
        if key not in self._memo:
            lat = self.lattice
            char = self._char(j)
            cands = sorted(lat.twisted_with_fold(l), key=lambda c: -lat.classes[c.h].order)
            out: dict = {}
            for H in cands:
                half = fixed_dim_twisted(lat, char, l, H) // 2
                s = half
                for K, v in out.items():
                    n = lat.twist_n(H, K)
                    if n:
                        s -= v * n * lat.twist_weyl(K)
                w = lat.twist_weyl(H)
                q, r = divmod(s, w)
                if r:
                    raise ConsistencyError(f"non-integer twisted coefficient {s}/{w}")
                if q:
                    out[H] = q
            self._memo[key] = Element(self.s1, out)
        return self._memo[key]

    def gradient_gs1(self, j, l: int) -> Element:
        """Deg~ of V_j (l = 0, S^1 trivial) or of V_{j,l}."""
        if l == 0:
            key = ("gs1", self._index(j), 0)
            if key not in self._memo:
                char = self._char(j)
                B = self.s1.burnside
                classes = self.group.subgroup_classes
                out: dict = {}
                for h in sorted(range(len(classes)), key=lambda c: -classes[c].order):
                    s = (-1) ** fixed_dim(char, classes[h].representative)
                    for k, v in out.items():
                        n = B.n(h, k)
                        if n:
                            s -= v * n * classes[k].weyl_order
                    q, r = divmod(s, classes[h].weyl_order)
                    if r:
                        raise ConsistencyError("non-integer Burnside degree coefficient")
                    if q:
                        out[h] = q
                self._memo[key] = Element(self.s1, {TwistClass(h, (), 0): v for h, v in out.items()})
            return self._memo[key]
        return self.s1.unit() - self.twisted(j, l)


def basic_degree_noparam(calc: DegreeCalculator, j, mode: str = "i") -> Element:
    if mode not in ("i", "ii"):
        raise InputError("mode must be 'i' or 'ii'")
    return calc.gradient_go2(j, mode)


def twisted_basic_degree(calc: DegreeCalculator, j, l: int) -> Element:
    return calc.twisted(j, l)


def gradient_basic_degree_gs1(calc: DegreeCalculator, j, l: int) -> Element:
    return calc.gradient_gs1(j, l)


def gradient_basic_degree_go2(calc: DegreeCalculator, j, mode) -> Element:
    return calc.gradient_go2(j, mode)
