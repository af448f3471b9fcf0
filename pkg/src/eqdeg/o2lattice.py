"""Closed subgroups of O(2), and conjugacy classes of subgroups of Gamma x O(2) and Gamma x S^1.

A subgroup of Gamma x O(2) is stored in Goursat form {(h, k): phi(h) = psi(k)}
where psi: K -> L is a fixed standard quotient map on the O(2) side. A class is
therefore described by a Gamma subgroup class H, an O(2) subgroup K, a small
quotient L and an epimorphism phi on the class representative of H, taken in a
canonical form (lexicographically least over the normalizer of H and the
automorphisms of L induced by the normalizer of K).

O(2) elements are pairs (theta, s) meaning r_theta * kappa^s, where theta is a
Fraction of a full turn taken mod 1.
"""
from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import InputError, PreconditionError
from .groups import FiniteGroup, Quotient, cyclic_characters, homomorphisms

O2Elem = tuple[Fraction, int]
ZERO = Fraction(0)
IDENT: O2Elem = (ZERO, 0)
KAPPA: O2Elem = (ZERO, 1)


def angle(x) -> Fraction:
    """Reduce a rational number of turns to [0, 1)."""
    x = Fraction(x)
    return x - math.floor(x)


def o2_mul(a: O2Elem, b: O2Elem) -> O2Elem:
    t1, s1 = a
    t2, s2 = b
    return (angle(t1 + (t2 if s1 == 0 else -t2)), s1 ^ s2)


def o2_inv(a: O2Elem) -> O2Elem:
    return (angle(-a[0]), 0) if a[1] == 0 else a


def o2_conj(b: O2Elem, y: O2Elem) -> O2Elem:
    """b^-1 y b."""
    return o2_mul(o2_mul(o2_inv(b), y), b)


@dataclass(frozen=True)
class O2Subgroup:
    """kind is 'O2', 'SO2', 'D' (dihedral of order 2n) or 'Z' (cyclic of order n)."""

    kind: str
    n: int = 0
    phase: Fraction = ZERO

    def __post_init__(self):
        if self.kind not in ("O2", "SO2", "D", "Z"):
            raise ValueError(self.kind)
        if self.kind in ("D", "Z") and self.n < 1:
            raise ValueError("n must be positive")

    @property
    def finite(self) -> bool:
        return self.kind in ("D", "Z")

    @property
    def order(self) -> int | None:
        return {"D": 2 * self.n, "Z": self.n}.get(self.kind)

    def contains(self, y: O2Elem) -> bool:
        t, s = y
        if self.kind == "O2":
            return True
        if self.kind == "SO2":
            return s == 0
        if s == 1:
            return self.kind == "D" and ((t - self.phase) * self.n).denominator == 1
        return (t * self.n).denominator == 1

    @property
    def generators(self) -> list[O2Elem]:
        if self.kind == "Z":
            return [(Fraction(1, self.n) if self.n > 1 else ZERO, 0)]
        if self.kind == "D":
            return [(angle(Fraction(1, self.n)), 0), (self.phase, 1)]
        raise ValueError("infinite subgroup")

    def elements(self) -> list[O2Elem]:
        rots = [(Fraction(j, self.n), 0) for j in range(self.n)]
        if self.kind == "Z":
            return rots
        return rots + [(angle(self.phase + Fraction(j, self.n)), 1) for j in range(self.n)]

    def __str__(self) -> str:
        if self.kind in ("O2", "SO2"):
            return self.kind
        return f"{self.kind}({self.n})"


def is_conjugated_into(b: O2Elem, a: O2Subgroup, big: O2Subgroup) -> bool:
    """Whether b^-1 a b is contained in big."""
    if a.kind == "O2":
        return big.kind == "O2"
    if a.kind == "SO2":
        return big.kind in ("SO2", "O2")
    return all(big.contains(o2_conj(b, y)) for y in a.generators)


# standard quotient maps on the O(2) side --------------------------------

KIND_ORDER = {"Z": 0, "D": 1, "SO2": 2, "O2": 3}


def allowed_quotients(kind: str, h_order: int, h_exp: int) -> list[Quotient]:
    if kind == "Z":
        return [Quotient("Z", m) for m in range(1, h_exp + 1) if h_order % m == 0]
    if kind == "D":
        out = [Quotient("Z", 1)]
        if h_order % 2 == 0:
            out.append(Quotient("Z", 2))
        out += [Quotient("D", m) for m in range(1, h_order // 2 + 1) if h_order % (2 * m) == 0]
        return out
    if kind == "SO2":
        return [Quotient("Z", 1)]
    return [Quotient("Z", 1), Quotient("D", 1)]


def divisor(kind: str, q: Quotient) -> int:
    """N = divisor * n for the family parameter n."""
    if kind == "Z":
        return q.m
    if kind == "D":
        return q.m if q.kind == "D" else q.order
    return 0


def psi(k: O2Subgroup, q: Quotient, y: O2Elem):
    """The standard epimorphism K -> L (K with phase 0)."""
    t, s = y
    if k.kind == "O2":
        return (0, s) if q.kind == "D" else (0, 0)
    if k.kind == "SO2" or q.order == 1:
        return (0, 0)
    j = int(t * k.n)
    if q.kind == "D":
        return (j % q.m, s)
    return (j % q.m, 0)


def psi_section(k: O2Subgroup, q: Quotient, ell) -> O2Elem:
    """An element of K mapping to ell under the standard quotient."""
    j, s = ell
    if k.kind in ("O2", "SO2"):
        return (ZERO, s)
    if q.order == 1:
        return IDENT
    return (Fraction(j, k.n) if k.n > 1 else ZERO, s)


def kernel_subgroup(k: O2Subgroup, q: Quotient) -> O2Subgroup:
    if k.kind == "SO2":
        return k
    if k.kind == "O2":
        return O2Subgroup("SO2") if q.kind == "D" else k
    if q.order == 1:
        return k
    if q.kind == "Z" and k.kind == "D":
        return O2Subgroup("D", k.n // 2)
    return O2Subgroup("Z", k.n // q.m)


def induced_automorphisms(kind: str, q: Quotient) -> list[dict]:
    """Automorphisms of L induced by conjugation with N(K) n N(K_0)."""
    els = q.elements
    ident = {e: e for e in els}
    if kind == "Z" and q.m > 2:
        return [ident, {(j, s): ((-j) % q.m, s) for j, s in els}]
    if kind == "D" and q.kind == "D" and q.m > 1:
        out = []
        for e in (1, -1):
            for v in range(q.m):
                out.append({(j, s): ((e * j + v * s) % q.m, s) for j, s in els})
        return out
    return [ident]


# classes --------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """A conjugacy class family; concrete classes add the O(2) parameter."""

    h: int
    kind: str
    quot: Quotient
    phi: tuple

    @property
    def divisor(self) -> int:
        return divisor(self.kind, self.quot)

    @property
    def stratum(self) -> str:
        return {"Z": "Phi1", "D": "Phi0^II", "SO2": "Phi0^I", "O2": "Phi0^III"}[self.kind]

    def sort_key(self):
        q = self.quot
        if self.kind == "Z":
            t = (0, q.m)
        elif self.kind == "D":
            t = (1, q.m) if q.kind == "D" else (2 + q.m - 1, 0)
        elif self.kind == "SO2":
            t = (4, 0)
        else:
            t = (5, 0) if q.kind == "D" else (6, 0)
        return (t, self.h, self.phi)

    def at(self, n: int = 1) -> AmalClass:
        if self.kind in ("SO2", "O2"):
            return AmalClass(self, 0)
        if n < 1:
            raise ValueError("parameter must be positive")
        return AmalClass(self, self.divisor * n)


@dataclass(frozen=True)
class AmalClass:
    fam: Family
    N: int  # order parameter of K (0 for SO2/O2)

    @property
    def h(self) -> int:
        return self.fam.h

    @property
    def quot(self) -> Quotient:
        return self.fam.quot

    @property
    def phi(self) -> tuple:
        return self.fam.phi

    @property
    def k(self) -> O2Subgroup:
        if self.fam.kind in ("SO2", "O2"):
            return O2Subgroup(self.fam.kind)
        return O2Subgroup(self.fam.kind, self.N)

    @property
    def param(self) -> int:
        return self.N // self.fam.divisor if self.fam.divisor else 0

    @property
    def stratum(self) -> str:
        return self.fam.stratum

    @property
    def phi0(self) -> bool:
        return self.fam.kind != "Z"

    def sort_key(self):
        return (self.fam.sort_key(), self.N)


@dataclass(frozen=True)
class TwistClass:
    """A class of Gamma x S^1: H x S^1 when l == 0, else the twisted H^{phi,l}.

    phi holds the values (Fractions of a turn) on the sorted representative of H.
    """

    h: int
    phi: tuple
    l: int

    @property
    def phi0(self) -> bool:
        return self.l == 0

    @property
    def k(self) -> int:
        return math.lcm(1, *(v.denominator for v in self.phi)) if self.l else 0

    def sort_key(self):
        return (0 if self.l == 0 else 1, self.l, self.h, self.phi)


@dataclass
class AmalSubgroup:
    """A concrete amalgamated subgroup (possibly not in canonical form)."""

    H: frozenset
    phi: dict
    K: O2Subgroup
    quot: Quotient

    def psi(self, y: O2Elem):
        b = (self.K.phase / 2, 0) if self.K.kind == "D" else IDENT
        return psi(O2Subgroup(self.K.kind, self.K.n) if self.K.finite else self.K,
                   self.quot, o2_mul(o2_mul(b, y), o2_inv(b)))

    def contains(self, x: int, y: O2Elem) -> bool:
        return x in self.H and self.K.contains(y) and self.phi[x] == self.psi(y)

    def members(self) -> list[tuple[int, O2Elem]]:
        ks = self.K.elements()
        return [(x, y) for x in sorted(self.H) for y in ks if self.phi[x] == self.psi(y)]


class ProductLattice:
    """Class data for Gamma x O(2) and Gamma x S^1 over a fixed finite group Gamma."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.classes = group.subgroup_classes
        self._sorted = [tuple(sorted(c.representative)) for c in self.classes]
        self._transport: dict[frozenset, tuple[int, int]] = {}
        for c in self.classes:
            for g in range(group.order):
                h = group.conjugate_subgroup(g, c.representative)
                # g rep g^-1 = h, so g^-1 h g = rep
                self._transport.setdefault(h, (c.index, group.inv[g]))
        self._normalizers = [sorted(group.normalizer(c.representative)) for c in self.classes]
        self._gamma_cache: dict = {}
        self._o2_cache: dict = {}
        self._count_cache: dict = {}
        self._tw_cache: dict = {}

    # helpers -----------------------------------------------------------

    def rep(self, h: int) -> frozenset:
        return self.classes[h].representative

    def to_rep(self, sub: frozenset) -> tuple[int, int]:
        """(class index, g) with g sub g^-1 equal to the class representative."""
        return self._transport[frozenset(sub)]

    def phi_dict(self, h: int, phi: tuple) -> dict:
        return dict(zip(self._sorted[h], phi))

    def name_of(self, h: int) -> str:
        return self.classes[h].name

    # canonical forms ---------------------------------------------------

    def canonical_phi(self, h: int, kind: str, quot: Quotient, phi: dict) -> tuple:
        G = self.group
        best = None
        members = self._sorted[h]
        autos = induced_automorphisms(kind, quot)
        for a in self._normalizers[h]:
            ai = G.inv[a]
            base = [phi[G.conj(ai, x)] for x in members]
            for al in autos:
                t = tuple(al[v] for v in base)
                if best is None or t < best:
                    best = t
        return best

    def amal_class(self, sub: frozenset, phi: dict, k: O2Subgroup, quot: Quotient) -> AmalClass:
        """Canonical class of a concrete amalgamated subgroup."""
        h, g = self.to_rep(sub)
        G = self.group
        gi = G.inv[g]
        moved = {x: phi[G.conj(gi, x)] for x in self.rep(h)}
        fam = Family(h, k.kind, quot, self.canonical_phi(h, k.kind, quot, moved))
        return AmalClass(fam, k.n if k.finite else 0)

    def classify(self, s: AmalSubgroup) -> AmalClass:
        return self.amal_class(s.H, s.phi, s.K, s.quot)

    def conjugate_test(self, a: AmalSubgroup, b: AmalSubgroup) -> bool:
        return self.classify(a) == self.classify(b)

    # families ----------------------------------------------------------

    @cached_property
    def families(self) -> list[Family]:
        G = self.group
        out = set()
        for c in self.classes:
            h = c.index
            hexp = max(G.element_order(x) for x in c.representative)
            for kind in ("Z", "D", "SO2", "O2"):
                for q in allowed_quotients(kind, c.order, hexp):
                    for m in homomorphisms(G, c.representative, q):
                        out.add(Family(h, kind, q, self.canonical_phi(h, kind, q, m)))
        return sorted(out, key=Family.sort_key)

    @cached_property
    def family_ids(self) -> dict[Family, int]:
        return {f: i + 1 for i, f in enumerate(self.families)}

    def kernel_class(self, fam: Family) -> int:
        pd = self.phi_dict(fam.h, fam.phi)
        return self.to_rep(frozenset(x for x, v in pd.items() if v == (0, 0)))[0]

    def rotation_preimage_class(self, fam: Family) -> int:
        pd = self.phi_dict(fam.h, fam.phi)
        return self.to_rep(frozenset(x for x, v in pd.items() if v[1] == 0))[0]

    @cached_property
    def _family_labels(self) -> dict[Family, dict]:
        labels = {}
        groups: dict = {}
        for f in self.families:
            z = self.kernel_class(f)
            r = self.rotation_preimage_class(f) if f.quot.kind == "D" and f.quot.m > 1 else None
            labels[f] = {"H": self.name_of(f.h), "Z": self.name_of(z),
                         "R": self.name_of(r) if r is not None else None}
            groups.setdefault((f.h, f.kind, f.quot), []).append(f)
        for fams in groups.values():
            if len(fams) == 1:
                labels[fams[0]]["Z"] = None
                labels[fams[0]]["R"] = None
                continue
            byz: dict = {}
            for f in fams:
                byz.setdefault(labels[f]["Z"], []).append(f)
            for zs in byz.values():
                if len(zs) == 1:
                    labels[zs[0]]["R"] = None
                byr: dict = {}
                for f in zs:
                    byr.setdefault(labels[f]["R"], []).append(f)
                for rs in byr.values():
                    if len(rs) > 1:
                        for i, f in enumerate(rs):
                            labels[f]["tag"] = i + 1
        return labels

    def _name(self, fam: Family, k_label: str) -> str:
        lab = self._family_labels[fam]
        parts = [f"H={lab['H']}", f"K={k_label}", f"L={fam.quot}"]
        if lab["Z"] is not None:
            parts.append(f"Z={lab['Z']}")
        if lab["R"] is not None:
            parts.append(f"R={lab['R']}")
        name = "Amal(" + ", ".join(parts) + ")"
        if "tag" in lab:
            name += f"#{lab['tag']}"
        return name

    def family_name(self, fam: Family) -> str:
        if fam.kind in ("SO2", "O2"):
            kl = fam.kind
        else:
            d = fam.divisor
            kl = f"{fam.kind}({d}n)" if d > 1 else f"{fam.kind}(n)"
        return self._name(fam, kl)

    def class_name(self, c) -> str:
        if isinstance(c, TwistClass):
            return self.twist_name(c)
        return self._name(c.fam, str(c.k))

    @cached_property
    def _name_index(self) -> dict:
        out = {}
        for f in self.families:
            lab = self._family_labels[f]
            out[(f.kind, lab["H"], str(f.quot), lab["Z"], lab["R"], lab.get("tag"))] = f
        return out

    def parse_class(self, text: str):
        """Inverse of class_name for Amal(...) and Tw(...) names."""
        text = text.strip()
        tag = None
        if "#" in text:
            text, t = text.rsplit("#", 1)
            tag = int(t)
        if text.startswith(("Tw(", "Prod(")):
            return self._parse_twist(text, tag)
        if not (text.startswith("Amal(") and text.endswith(")")):
            raise InputError(f"cannot parse class name {text!r}")
        fields = {}
        for part in text[5:-1].split(","):
            if "=" not in part:
                raise InputError(f"bad field {part!r} in {text!r}")
            key, val = part.split("=", 1)
            fields[key.strip()] = val.strip()
        try:
            kl = fields["K"]
            kind = kl.split("(")[0]
            N = int(kl[kl.index("(") + 1:-1]) if "(" in kl else 0
            key = (kind, fields["H"], fields["L"], fields.get("Z"), fields.get("R"), tag)
            fam = self._name_index[key]
        except (KeyError, ValueError):
            raise InputError(f"unknown class {text!r}") from None
        if fam.kind in ("D", "Z") and (N < 1 or N % fam.divisor):
            raise InputError(f"parameter {N} incompatible with {text!r}")
        return AmalClass(fam, N)

    def find_classes(self, H: str, K: str, L: str = "Z(1)", Z: str | None = None,
                     R: str | None = None) -> list[AmalClass]:
        """All classes matching the given labels; Z and R are only used when given.

        K is 'O2', 'SO2', 'D(N)' or 'Z(N)'.
        """
        kind = K.split("(")[0]
        N = int(K[K.index("(") + 1:-1]) if "(" in K else 0
        out = []
        for f in self.families:
            if f.kind != kind or str(f.quot) != L or self.name_of(f.h) != H:
                continue
            if kind in ("D", "Z") and N % f.divisor:
                continue
            if Z is not None and self.name_of(self.kernel_class(f)) != Z:
                continue
            if R is not None and (f.quot.kind != "D" or f.quot.m < 2
                                  or self.name_of(self.rotation_preimage_class(f)) != R):
                continue
            out.append(f.at(N // f.divisor) if kind in ("D", "Z") else f.at())
        return out

    def classify_product_classes(self, strata: Iterable[str] | None = None) -> list[dict]:
        rows = []
        for f in self.families:
            if strata is not None and f.stratum not in strata:
                continue
            order, dim = self.weyl_data(f.at(1))
            rows.append({"id": self.family_ids[f], "name": self.family_name(f),
                         "weyl_order": order if dim == 0 else None, "stratum": f.stratum})
        return rows

    # concrete data for counting ---------------------------------------

    def _gamma_part(self, a: AmalClass, b: AmalClass) -> Counter:
        key = (a.h, a.quot, a.phi, b.h, b.quot, b.phi)
        hit = self._gamma_cache.get(key)
        if hit is not None:
            return hit
        G = self.group
        pa = self.phi_dict(a.h, a.phi)
        pb = self.phi_dict(b.h, b.phi)
        section = {}
        for x in self._sorted[a.h]:
            section.setdefault(pa[x], x)
        lels = a.quot.elements
        za = [x for x in self._sorted[a.h] if pa[x] == (0, 0)]
        ha = self._sorted[a.h]
        cnt: Counter = Counter()
        for g in range(G.order):
            gi = G.inv[g]
            ok = True
            for x in ha:
                y = G.conj(gi, x)
                if y not in pb:
                    ok = False
                    break
            if not ok:
                continue
            if any(pb[G.conj(gi, z)] != (0, 0) for z in za):
                continue
            cnt[tuple(pb[G.conj(gi, section[e])] for e in lels)] += 1
        self._gamma_cache[key] = cnt
        return cnt

    def _o2_part(self, a: AmalClass, b: AmalClass, full: bool) -> Counter:
        key = (a.k, a.quot, b.k, b.quot, full)
        hit = self._o2_cache.get(key)
        if hit is not None:
            return hit
        ka, kb = a.k, b.k
        k0a, k0b = kernel_subgroup(ka, a.quot), kernel_subgroup(kb, b.quot)
        if kb.kind == "D" and ka.finite and full:
            cands = [(Fraction(i, 2 * kb.n), s) for s in (0, 1) for i in range(2 * kb.n)]
        else:
            cands = [IDENT, KAPPA]
        sections = [psi_section(ka, a.quot, e) for e in a.quot.elements]
        cnt: Counter = Counter()
        if ka.finite or kb.kind in ("SO2", "O2"):
            for c in cands:
                if not is_conjugated_into(c, ka, kb) or not is_conjugated_into(c, k0a, k0b):
                    continue
                cnt[tuple(psi(kb, b.quot, o2_conj(c, y)) for y in sections)] += 1
        self._o2_cache[key] = cnt
        return cnt

    def conjugator_count(self, a: AmalClass, b: AmalClass) -> int:
        """#{g : g^-1 a g <= b} in Gamma x D_2N (or modulo SO(2) when b contains SO(2))."""
        key = (a, b)
        hit = self._count_cache.get(key)
        if hit is not None:
            return hit
        val = 0
        if self._k_compatible(a.k, b.k):
            oc = self._o2_part(a, b, True)
            if oc:
                gc = self._gamma_part(a, b)
                val = sum(v * oc.get(k, 0) for k, v in gc.items())
        self._count_cache[key] = val
        return val

    @staticmethod
    def _k_compatible(ka: O2Subgroup, kb: O2Subgroup) -> bool:
        if kb.kind == "O2":
            return True
        if kb.kind == "SO2":
            return ka.kind in ("SO2", "Z")
        if ka.kind in ("SO2", "O2"):
            return False
        if kb.kind == "Z" and ka.kind == "D":
            return False
        return kb.n % ka.n == 0

    def size_mod_so2(self, c: AmalClass) -> int:
        """|c| when finite, |c / SO(2)| otherwise."""
        k0 = kernel_subgroup(c.k, c.quot)
        hz = self.classes[c.h].order // c.quot.order
        if k0.finite:
            return hz * c.quot.order * k0.order
        return hz * c.quot.order * (2 if k0.kind == "O2" else 1)

    def weyl_data(self, c: AmalClass) -> tuple[int, int]:
        if c.fam.kind == "Z":
            # finite part W / SO(2): count over Gamma x {1, kappa} against H
            cnt = self._phi1_self_count(c)
            return cnt // self.classes[c.h].order, 1
        return self.conjugator_count(c, c) // self.size_mod_so2(c), 0

    def _phi1_self_count(self, c: AmalClass) -> int:
        oc = self._o2_part(c, c, False)
        gc = self._gamma_part(c, c)
        return sum(v * oc.get(k, 0) for k, v in gc.items())

    def n_number(self, a: AmalClass, b: AmalClass) -> int:
        if not (a.phi0 and b.phi0):
            raise PreconditionError("n(L,H) is only defined here for Phi_0 classes")
        num = self.conjugator_count(a, b)
        if num == 0:
            return 0
        den = self.conjugator_count(b, b)
        q, r = divmod(num, den)
        assert r == 0, (a, b, num, den)
        return q

    def mark(self, a: AmalClass, b: AmalClass) -> int:
        """n(a, b) |W(b)| = number of fixed points of a on G/b (modulo SO(2))."""
        num = self.conjugator_count(a, b)
        if num == 0:
            return 0
        q, r = divmod(num, self.size_mod_so2(b))
        assert r == 0
        return q

    def is_subconjugate(self, a: AmalClass, b: AmalClass) -> bool:
        if not self._k_compatible(a.k, b.k):
            return False
        oc = self._o2_part(a, b, True)
        if not oc:
            return False
        gc = self._gamma_part(a, b)
        return any(k in oc for k in gc)

    def subconjugation_poset(self, cls: list) -> list[list[bool]]:
        return [[self.is_subconjugate(a, b) for b in cls] for a in cls]

    def s1_orbit_count(self, c: AmalClass) -> int:
        if c.fam.kind == "Z":
            raise PreconditionError("S^1-orbit count needs a finite Weyl group")
        k0 = kernel_subgroup(c.k, c.quot)
        k0_refl = k0.kind in ("D", "O2")
        total = self.classes[c.h].order * (2 if k0_refl else 1)
        return 2 * self.group.order // total

    def anti_reflective(self, c) -> bool:
        sign = self.group.aux_sign
        if sign is None:
            return False
        return any(sign[x] for x in self.rep(c.h))

    # enumerating concrete classes -------------------------------------

    def instances(self, max_n: int) -> list[AmalClass]:
        out = []
        for f in self.families:
            if f.kind in ("SO2", "O2"):
                out.append(f.at())
            else:
                out.extend(f.at(n) for n in range(1, max_n + 1))
        return out

    def phi0_with_k(self, N: int) -> list[AmalClass]:
        """All Phi_0^II classes with K = D_N."""
        return [AmalClass(f, N) for f in self.families
                if f.kind == "D" and N % f.divisor == 0]

    def classes_with_k(self, kind: str, N: int = 0) -> list[AmalClass]:
        return [AmalClass(f, N) for f in self.families
                if f.kind == kind and (kind in ("SO2", "O2") or N % f.divisor == 0)]

    def fold(self, c: AmalClass, k: int) -> AmalClass:
        """Image of c under the k-fold covering of O(2)."""
        if c.fam.kind in ("SO2", "O2"):
            return c
        return AmalClass(c.fam, c.N * k)

    # intersection with Gamma x SO(2) -----------------------------------

    def intersect_with_so2(self, c: AmalClass) -> tuple[TwistClass, bool]:
        kind, q = c.fam.kind, c.quot
        pd = self.phi_dict(c.h, c.phi)
        rep = self.rep(c.h)
        if kind == "SO2":
            return TwistClass(c.h, (), 0), True
        if kind == "O2":
            if q.kind == "D":
                z = frozenset(x for x in rep if pd[x] == (0, 0))
                return TwistClass(self.to_rep(z)[0], (), 0), False
            return TwistClass(c.h, (), 0), False
        if kind == "Z":
            vals = {x: Fraction(v[0], q.m) for x, v in pd.items()}
            return self.twist_class(rep, vals, c.N // q.m), True
        if q.order == 1:
            return self.twist_class(rep, {x: ZERO for x in rep}, c.N), False
        if q.kind == "Z":
            vals = {x: Fraction(v[0], 2) for x, v in pd.items()}
            return self.twist_class(rep, vals, c.N // 2), False
        r = frozenset(x for x in rep if pd[x][1] == 0)
        vals = {x: Fraction(pd[x][0], q.m) for x in r}
        return self.twist_class(r, vals, c.N // q.m), False

    # Gamma x S^1 --------------------------------------------------------

    def twist_class(self, sub: frozenset, phi: dict, l: int) -> TwistClass:
        """Canonical class of {(g, z): phi(g) = z^l} (or sub x S^1 when l == 0)."""
        h, g = self.to_rep(sub)
        if l == 0:
            return TwistClass(h, (), 0)
        G = self.group
        gi = G.inv[g]
        moved = {x: angle(phi[G.conj(gi, x)]) for x in self.rep(h)}
        return TwistClass(h, self._canonical_twist(h, moved), l)

    def _canonical_twist(self, h: int, phi: dict) -> tuple:
        G = self.group
        best = None
        for a in self._normalizers[h]:
            ai = G.inv[a]
            t = tuple(phi[G.conj(ai, x)] for x in self._sorted[h])
            if best is None or t < best:
                best = t
        return best

    def conj_twist(self, t: TwistClass) -> TwistClass:
        """Image under conjugation by kappa (z -> z^-1)."""
        if t.l == 0:
            return t
        pd = dict(zip(self._sorted[t.h], (angle(-v) for v in t.phi)))
        return TwistClass(t.h, self._canonical_twist(t.h, pd), t.l)

    def twist_count(self, a: TwistClass, b: TwistClass) -> int:
        """#{g in Gamma : g^-1 a g <= b}."""
        key = (a, b)
        hit = self._tw_cache.get(key)
        if hit is not None:
            return hit
        G = self.group
        val = 0
        if not (a.l == 0 and b.l != 0) and not (a.l and b.l and b.l % a.l):
            ha = self._sorted[a.h]
            hb = set(self._sorted[b.h])
            pa = dict(zip(ha, a.phi))
            pb = dict(zip(self._sorted[b.h], b.phi))
            gens = self.group.generating_set(frozenset(ha)) if len(ha) > 1 else []
            ratio = b.l // a.l if a.l and b.l else 0
            for g in range(G.order):
                gi = G.inv[g]
                if not all(G.conj(gi, x) in hb for x in gens):
                    continue
                if ratio and any(pb[G.conj(gi, x)] != angle(ratio * pa[x]) for x in gens):
                    continue
                val += 1
        self._tw_cache[key] = val
        return val

    def twist_weyl(self, t: TwistClass) -> int:
        """|W(t)| for H x S^1, |W(t)/S^1| for twisted classes."""
        return self.twist_count(t, t) // self.classes[t.h].order

    def twist_n(self, a: TwistClass, b: TwistClass) -> int:
        num = self.twist_count(a, b)
        if num == 0:
            return 0
        q, r = divmod(num, self.twist_count(b, b))
        assert r == 0
        return q

    def twist_mark(self, a: TwistClass, b: TwistClass) -> int:
        num = self.twist_count(a, b)
        q, r = divmod(num, self.classes[b.h].order)
        assert r == 0
        return q

    @cached_property
    def twisted_families(self) -> list[TwistClass]:
        """All pairs (H, phi: H -> S^1) up to conjugacy, with fold 1."""
        out = set()
        for c in self.classes:
            for ch in cyclic_characters(self.group, c.representative):
                vals = {x: Fraction(j, k) for x, (j, k) in ch.items()}
                out.add(self.twist_class(c.representative, vals, 1))
        return sorted(out, key=TwistClass.sort_key)

    def twisted_with_fold(self, l: int) -> list[TwistClass]:
        return [TwistClass(t.h, t.phi, l) for t in self.twisted_families]

    def fold_twist(self, t: TwistClass, l: int) -> TwistClass:
        if l < 1:
            raise ValueError("fold must be at least 1")
        if t.l == 0:
            return t
        return TwistClass(t.h, t.phi, t.l * l)

    @cached_property
    def _twist_labels(self) -> dict:
        labels = {}
        groups: dict = {}
        for t in self.twisted_families:
            pd = dict(zip(self._sorted[t.h], t.phi))
            z = self.to_rep(frozenset(x for x, v in pd.items() if v == 0))[0]
            labels[(t.h, t.phi)] = {"Z": self.name_of(z), "k": t.k}
            groups.setdefault((t.h, t.k), []).append(t)
        for ts in groups.values():
            if len(ts) == 1:
                labels[(ts[0].h, ts[0].phi)]["Z"] = None
            byz: dict = {}
            for t in ts:
                byz.setdefault(labels[(t.h, t.phi)]["Z"], []).append(t)
            for zs in byz.values():
                if len(zs) > 1:
                    for i, t in enumerate(zs):
                        labels[(t.h, t.phi)]["tag"] = i + 1
        return labels

    def twist_name(self, t: TwistClass) -> str:
        if t.l == 0:
            return f"Prod(H={self.name_of(t.h)})"
        lab = self._twist_labels[(t.h, t.phi)]
        parts = [f"H={self.name_of(t.h)}"]
        if lab["Z"] is not None:
            parts.append(f"Z={lab['Z']}")
        parts += [f"k={lab['k']}", f"l={t.l}"]
        name = "Tw(" + ", ".join(parts) + ")"
        if "tag" in lab:
            name += f"#{lab['tag']}"
        return name

    def _parse_twist(self, text: str, tag):
        inner = text[text.index("(") + 1:-1]
        fields = dict(p.strip().split("=", 1) for p in inner.split(","))
        try:
            h = self.group.class_by_name(fields["H"]).index
        except KeyError:
            raise InputError(f"unknown class {text!r}") from None
        if text.startswith("Prod("):
            return TwistClass(h, (), 0)
        for t in self.twisted_families:
            lab = self._twist_labels[(t.h, t.phi)]
            if (t.h == h and str(lab["k"]) == fields.get("k") and lab["Z"] == fields.get("Z")
                    and lab.get("tag") == tag):
                return TwistClass(h, t.phi, int(fields["l"]))
        raise InputError(f"unknown class {text!r}")
