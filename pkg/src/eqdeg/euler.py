"""Euler rings U(Gamma x S^1) and U(Gamma x O(2)) and the homomorphism Psi between them."""
from __future__ import annotations

from .burnside import BurnsideRing, Element, O2BurnsideRing, parse_terms, recurrence
from .errors import ConsistencyError, InputError
from .groups import Quotient
from .o2lattice import AmalClass, O2Subgroup, ProductLattice, TwistClass


class S1EulerRing:
    """U(Gamma x S^1): products of H x S^1 classes form A(Gamma), twisted classes form a module."""

    def __init__(self, lattice: ProductLattice):
        self.lattice = lattice
        self.burnside = BurnsideRing(lattice.group)
        self._memo: dict = {}

    def name(self, c: TwistClass) -> str:
        return self.lattice.twist_name(c)

    def sort_key(self, c: TwistClass):
        return c.sort_key()

    def gen(self, c: TwistClass) -> Element:
        return Element(self, {c: 1})

    def unit(self) -> Element:
        return Element(self, {TwistClass(len(self.lattice.classes) - 1, (), 0): 1})

    def module_product(self, h: int, t: TwistClass) -> dict:
        """(H x S^1) * t for a twisted class t, via the recurrence on fold-l classes."""
        key = (h, t)
        if key not in self._memo:
            lat = self.lattice
            prod = TwistClass(h, (), 0)
            cands = sorted(lat.twisted_with_fold(t.l), key=lambda c: -lat.classes[c.h].order)
            self._memo[key] = recurrence(
                cands, lambda L: lat.twist_mark(L, prod), lambda L: lat.twist_mark(L, t),
                lat.twist_n, lat.twist_weyl)
        return self._memo[key]

    def gen_product(self, a: TwistClass, b: TwistClass) -> dict:
        if a.l and b.l:
            return {}
        if a.l == 0 and b.l == 0:
            return {TwistClass(c, (), 0): v for c, v in self.burnside.gen_product(a.h, b.h).items()}
        if a.l:
            a, b = b, a
        return self.module_product(a.h, b)

    def multiply(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for a, u in x.terms.items():
            for b, v in y.terms.items():
                for c, w in self.gen_product(a, b).items():
                    out[c] = out.get(c, 0) + u * v * w
        return Element(self, out)

    def parse(self, text: str) -> Element:
        out: dict = {}
        for name, v in parse_terms(text):
            c = self.lattice.parse_class(name)
            if not isinstance(c, TwistClass):
                raise InputError(f"{name!r} is not a Gamma x S^1 class")
            out[c] = out.get(c, 0) + v
        return Element(self, out)


class O2EulerRing:
    """U(Gamma x O(2)); Phi_0 part by the Burnside recurrence, Phi_1 part through Psi."""

    def __init__(self, lattice: ProductLattice):
        self.lattice = lattice
        self.burnside = O2BurnsideRing(lattice)
        self.s1 = S1EulerRing(lattice)
        self._memo: dict = {}

    def name(self, c: AmalClass) -> str:
        return self.lattice.class_name(c)

    def sort_key(self, c: AmalClass):
        return (self.lattice.family_ids[c.fam], c.N)

    def gen(self, c: AmalClass) -> Element:
        return Element(self, {c: 1})

    def unit(self) -> Element:
        return Element(self, self.burnside.unit().terms)

    def lift(self, x: Element) -> Element:
        """View an A(Gamma x O(2)) element inside the Euler ring."""
        return Element(self, x.terms)

    def psi(self, x: Element) -> Element:
        lat = self.lattice
        out: dict = {}
        for c, v in x.terms.items():
            t, inside = lat.intersect_with_so2(c)
            out[t] = out.get(t, 0) + v
            if inside:
                tc = lat.conj_twist(t)
                out[tc] = out.get(tc, 0) + v
        return Element(self.s1, out)

    def phi1_class(self, t: TwistClass) -> AmalClass:
        """The Phi_1 class of Gamma x O(2) whose Psi image contains t."""
        lat = self.lattice
        k = t.k
        rep = lat.rep(t.h)
        pd = dict(zip(sorted(rep), t.phi))
        phi = {x: (int(v * k) % k, 0) for x, v in pd.items()}
        return lat.amal_class(rep, phi, O2Subgroup("Z", k * t.l), Quotient("Z", k))

    def solve_phi1(self, rhs: Element) -> dict:
        """Find x with Psi(x) = rhs for x supported on Phi_1; rhs must be Psi-symmetric."""
        lat = self.lattice
        out: dict = {}
        for t, v in rhs.terms.items():
            if t.l == 0:
                raise ConsistencyError(f"unexpected product class {lat.twist_name(t)} in Phi_1 solve")
            tc = lat.conj_twist(t)
            if tc == t:
                q, r = divmod(v, 2)
                if r:
                    raise ConsistencyError(f"odd coefficient {v} on {lat.twist_name(t)}")
            else:
                if rhs.coeff(tc) != v:
                    raise ConsistencyError(f"asymmetric Psi image on {lat.twist_name(t)}")
                q = v
            c = self.phi1_class(t)
            prev = out.get(c)
            if prev is not None and prev != q:
                raise ConsistencyError("inconsistent Phi_1 coefficient")
            out[c] = q
        return out

    def gen_product(self, a: AmalClass, b: AmalClass) -> dict:
        key = (a, b) if self.sort_key(a) <= self.sort_key(b) else (b, a)
        if key in self._memo:
            return self._memo[key]
        phi0 = self.burnside.gen_product(a, b) if a.phi0 and b.phi0 else {}
        rhs = self.psi(self.gen(a)) * self.psi(self.gen(b))
        rhs = rhs - self.psi(Element(self, phi0))
        res = dict(phi0)
        res.update(self.solve_phi1(rhs))
        self._memo[key] = res
        return res

    def multiply(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for a, u in x.terms.items():
            for b, v in y.terms.items():
                for c, w in self.gen_product(a, b).items():
                    out[c] = out.get(c, 0) + u * v * w
        return Element(self, out)

    def parse(self, text: str) -> Element:
        out: dict = {}
        for name, v in parse_terms(text):
            c = self.lattice.parse_class(name)
            if not isinstance(c, AmalClass):
                raise InputError(f"{name!r} is not a Gamma x O(2) class")
            out[c] = out.get(c, 0) + v
        return Element(self, out)


def psi(x: Element) -> Element:
    return x.ring.psi(x)


def euler_multiply_gs1(a: Element, b: Element) -> Element:
    return a * b


def euler_multiply_go2(a: Element, b: Element) -> Element:
    return a * b


def a1_module_mult(a: Element, t: TwistClass, ring: S1EulerRing) -> Element:
    """(sum of H x S^1 classes) acting on one twisted generator."""
    out: dict = {}
    for c, v in a.terms.items():
        if c.l:
            raise InputError("module action needs H x S^1 classes on the left")
        for d, w in ring.module_product(c.h, t).items():
            out[d] = out.get(d, 0) + v * w
    return Element(ring, out)
