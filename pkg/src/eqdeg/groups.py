"""Finite permutation groups, their subgroup classes and epimorphisms onto Z_m and D_m."""
from __future__ import annotations

import itertools
import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .errors import InputError

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """Return p*q, i.e. apply q first and then p."""
    return tuple(p[i] for i in q)


def perm_from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> Perm:
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return tuple(img)


@dataclass(frozen=True)
class Quotient:
    """The target of an epimorphism: Z_m (kind 'Z') or D_m (kind 'D').

    Elements are pairs (j, s) standing for r^j k^s; for cyclic targets s is 0.
    """

    kind: str
    m: int

    def __post_init__(self):
        if self.kind not in ("Z", "D") or self.m < 1:
            raise ValueError(f"bad quotient {self.kind}{self.m}")

    @property
    def order(self) -> int:
        return self.m if self.kind == "Z" else 2 * self.m

    @cached_property
    def elements(self) -> tuple[tuple[int, int], ...]:
        if self.kind == "Z":
            return tuple((j, 0) for j in range(self.m))
        return tuple((j, s) for s in (0, 1) for j in range(self.m))

    def mul(self, a, b):
        j1, s1 = a
        j2, s2 = b
        return ((j1 + (j2 if s1 == 0 else -j2)) % self.m, s1 ^ s2)

    @property
    def identity(self):
        return (0, 0)

    def __str__(self) -> str:
        return f"{self.kind}({self.m})"


class FiniteGroup:
    """A finite group given by permutation generators.

    Elements are indexed 0..order-1 in breadth-first order from the identity,
    which makes every derived listing deterministic.
    """

    def __init__(self, generators: Iterable[Perm], name: str = "G",
                 degree: int | None = None, max_order: int = 10_000):
        gens = [tuple(g) for g in generators]
        if degree is None:
            degree = len(gens[0]) if gens else 1
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise InputError(f"generator {g} is not a permutation of degree {degree}")
        self.name = name
        self.degree = degree
        self.generators = gens
        ident = tuple(range(degree))
        elements = [ident]
        index = {ident: 0}
        i = 0
        while i < len(elements):
            x = elements[i]
            for g in gens:
                y = compose(g, x)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    if len(elements) > max_order:
                        raise InputError(f"group order exceeds bound {max_order}")
            i += 1
        self.elements: list[Perm] = elements
        self.index: dict[Perm, int] = index
        self.order = len(elements)
        self.gen_idx = [index[g] for g in gens]
        n = self.order
        self._table = [[index[compose(a, b)] for b in elements] for a in elements]
        inv = [0] * n
        for a in range(n):
            row = self._table[a]
            for b in range(n):
                if row[b] == 0:
                    inv[a] = b
                    break
        self.inv = inv
        self.subgroup_names: dict[str, list[Perm]] = {}
        # optional homomorphism onto an auxiliary Z_2 factor (element -> 0/1)
        self.aux_sign: list[int] | None = None
        self.antipodal: int | None = None
        self.base: FiniteGroup | None = None
        self.base_embedding: list[int] | None = None
        # optional (name, dim, kernel class name) hints for naming real irreducibles
        self.irrep_hints: list[tuple[str, int, str]] = []

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self._table[a][b]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        t = self._table
        return t[t[g][x]][self.inv[g]]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self._table[y][x]
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        e = 1
        for x in range(self.order):
            e = math.lcm(e, self.element_order(x))
        return e

    # subgroup machinery -------------------------------------------------

    def generated(self, gens: Iterable[int], start: frozenset[int] | None = None) -> frozenset[int]:
        gens = list(gens)
        seen = set(start) if start else {0}
        frontier = list(seen)
        gens = gens + list(start or ())
        gset = list(dict.fromkeys(gens))
        while frontier:
            nxt = []
            for x in frontier:
                row = self._table[x]
                for g in gset:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def conjugate_subgroup(self, g: int, h: frozenset[int]) -> frozenset[int]:
        return frozenset(self.conj(g, x) for x in h)

    @cached_property
    def all_subgroups(self) -> list[frozenset[int]]:
        cyclic = {self.generated([x]) for x in range(self.order)}
        subs = set(cyclic)
        frontier = list(cyclic)
        cyc = sorted(cyclic, key=lambda s: (len(s), sorted(s)))
        while frontier:
            nxt = []
            for a in frontier:
                for c in cyc:
                    if c <= a:
                        continue
                    j = self.generated(c, start=a)
                    if j not in subs:
                        subs.add(j)
                        nxt.append(j)
            frontier = nxt
        return sorted(subs, key=lambda s: (len(s), sorted(s)))

    @cached_property
    def subgroup_classes(self) -> list[SubgroupClass]:
        return enumerate_subgroup_classes(self)

    @cached_property
    def _class_lookup(self) -> dict[frozenset[int], int]:
        out = {}
        for c in self.subgroup_classes:
            for h in c.conjugates:
                out[h] = c.index
        return out

    def class_of(self, h: frozenset[int]) -> int:
        """Index of the conjugacy class containing the subgroup h."""
        try:
            return self._class_lookup[frozenset(h)]
        except KeyError:
            raise ValueError("not a subgroup") from None

    def class_by_name(self, name: str) -> SubgroupClass:
        for c in self.subgroup_classes:
            if c.name == name:
                return c
        raise KeyError(name)

    def normalizer(self, h: frozenset[int]) -> frozenset[int]:
        return frozenset(g for g in range(self.order) if self.conjugate_subgroup(g, h) == h)

    def generating_set(self, h: frozenset[int]) -> list[int]:
        """A small generating set for h, chosen greedily."""
        gens: list[int] = []
        span = frozenset({0})
        cand = sorted(h, key=lambda x: (-self.element_order(x), x))
        for x in cand:
            if x not in span:
                gens.append(x)
                span = self.generated(gens)
                if len(span) == len(h):
                    break
        return gens


@dataclass
class SubgroupClass:
    index: int
    order: int
    representative: frozenset[int]
    conjugates: tuple[frozenset[int], ...]
    name: str = ""
    normalizer_order: int = 0

    @property
    def weyl_order(self) -> int:
        return self.normalizer_order // self.order

    def __repr__(self) -> str:
        return f"({self.name})"


def enumerate_subgroup_classes(group: FiniteGroup, max_order: int = 10_000) -> list[SubgroupClass]:
    """Conjugacy classes of subgroups, sorted by order then by the minimal member set."""
    if group.order > max_order:
        raise InputError(f"group order {group.order} exceeds bound {max_order}")
    seen: set[frozenset[int]] = set()
    raw = []
    for h in group.all_subgroups:
        if h in seen:
            continue
        conj = {group.conjugate_subgroup(g, h) for g in range(group.order)}
        seen |= conj
        rep = min(conj, key=lambda s: sorted(s))
        ordered = tuple(sorted(conj, key=lambda s: sorted(s)))
        raw.append((len(h), sorted(rep), rep, ordered))
    raw.sort(key=lambda t: (t[0], t[1]))
    classes = []
    for i, (order, _, rep, conj) in enumerate(raw):
        classes.append(SubgroupClass(i, order, rep, conj,
                                     normalizer_order=len(group.normalizer(rep))))
    _assign_names(group, classes)
    return classes


def _assign_names(group: FiniteGroup, classes: list[SubgroupClass]) -> None:
    lookup = {}
    for c in classes:
        for h in c.conjugates:
            lookup[h] = c
    for name, gens in group.subgroup_names.items():
        h = group.generated(group.index[tuple(g)] for g in gens)
        lookup[h].name = name
    counts: dict[int, int] = {}
    for c in classes:
        if not c.name:
            counts[c.order] = counts.get(c.order, 0) + 1
            c.name = f"H{c.order}_{counts[c.order]}"


def n_number(group: FiniteGroup, lc: SubgroupClass | int, hc: SubgroupClass | int) -> int:
    """n(L,H): number of subgroups in the class of H containing the representative of L."""
    classes = group.subgroup_classes
    lc = classes[lc] if isinstance(lc, int) else lc
    hc = classes[hc] if isinstance(hc, int) else hc
    return sum(1 for h in hc.conjugates if lc.representative <= h)


def is_subconjugate(group: FiniteGroup, lc, hc) -> bool:
    return n_number(group, lc, hc) > 0


@dataclass(frozen=True)
class Epimorphism:
    source: frozenset[int]
    target: Quotient
    images: tuple  # image of each member of source in sorted order

    @cached_property
    def as_dict(self) -> dict[int, tuple[int, int]]:
        return dict(zip(sorted(self.source), self.images))

    @property
    def kernel(self) -> frozenset[int]:
        return frozenset(x for x, v in self.as_dict.items() if v == (0, 0))

    def preimage(self, sub: Iterable[tuple[int, int]]) -> frozenset[int]:
        sub = set(sub)
        return frozenset(x for x, v in self.as_dict.items() if v in sub)


def homomorphisms(group: FiniteGroup, h: frozenset[int], target: Quotient,
                  surjective: bool = True) -> list[dict[int, tuple[int, int]]]:
    """All homomorphisms h -> target (only the onto ones by default)."""
    gens = group.generating_set(h) if len(h) > 1 else []
    out = []
    for imgs in itertools.product(target.elements, repeat=len(gens)):
        m = _extend(group, gens, imgs, target)
        if m is None:
            continue
        if surjective and len(set(m.values())) != target.order:
            continue
        out.append(m)
    return out


def _extend(group, gens, imgs, target):
    m = {0: target.identity}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, v in zip(gens, imgs):
                y = group.mul(x, g)
                w = target.mul(m[x], v)
                if y in m:
                    if m[y] != w:
                        return None
                else:
                    m[y] = w
                    nxt.append(y)
        frontier = nxt
    # every element is reached, but relations not visited from both sides need a full check
    for x, mx in m.items():
        for g, v in zip(gens, imgs):
            if m[group.mul(x, g)] != target.mul(mx, v):
                return None
    return m


def epimorphisms_onto(group: FiniteGroup, h: frozenset[int], target: Quotient) -> list[Epimorphism]:
    members = sorted(h)
    return [Epimorphism(frozenset(h), target, tuple(m[x] for x in members))
            for m in homomorphisms(group, h, target)]


def cyclic_characters(group: FiniteGroup, h: frozenset[int]) -> list[dict[int, int]]:
    """Homomorphisms h -> Q/Z given as j/k, returned as dicts x -> (j, k) with k the image order."""
    out = []
    top = max((group.element_order(x) for x in h), default=1)
    for k in range(1, top + 1):
        for m in homomorphisms(group, h, Quotient("Z", k)):
            out.append({x: (v[0], k) for x, v in m.items()})
    return out


# built-in groups ---------------------------------------------------------

def symmetric_group(n: int) -> FiniteGroup:
    gens = [perm_from_cycles([list(range(n))], n)]
    if n > 2:
        gens.append(perm_from_cycles([[0, 1]], n))
    return FiniteGroup(gens, name=f"S{n}", degree=n)


def s4() -> FiniteGroup:
    g = FiniteGroup([perm_from_cycles([[0, 1, 2, 3]], 4), perm_from_cycles([[0, 1]], 4)],
                    name="S4", degree=4)
    c = lambda *cycles: perm_from_cycles(cycles, 4)
    g.subgroup_names = {
        "Z1": [],
        "Z2": [c([0, 1], [2, 3])],
        "D1": [c([0, 1])],
        "Z3": [c([0, 1, 2])],
        "V4": [c([0, 1], [2, 3]), c([0, 2], [1, 3])],
        "D2": [c([0, 1]), c([2, 3])],
        "Z4": [c([0, 1, 2, 3])],
        "D3": [c([0, 1, 2]), c([0, 1])],
        "D4": [c([0, 1, 2, 3]), c([0, 2])],
        "A4": [c([0, 1, 2]), c([0, 1], [2, 3])],
        "S4": [c([0, 1, 2, 3]), c([0, 1])],
    }
    return g


def dihedral_on_square() -> FiniteGroup:
    """D4 on four coordinates: g shifts cyclically, k reverses."""
    gam = (1, 2, 3, 0)
    kap = (3, 2, 1, 0)
    g = FiniteGroup([gam, kap], name="D4", degree=4)
    m = lambda *ws: [_word(w, gam, kap, 4) for w in ws]
    g.subgroup_names = {
        "Z1": [], "Z2": m("gg"), "D1": m("k"), "D1t": m("gk"), "Z4": m("g"),
        "D2": m("gg", "k"), "D2t": m("gg", "gk"), "D4": m("g", "k"),
    }
    g.irrep_hints = [("V0", 1, "D4"), ("V1", 2, "Z1"), ("V2", 1, "D2t"),
                     ("V3", 1, "D2"), ("V4", 1, "Z4")]
    return g


def _word(w: str, gam: Perm, kap: Perm, degree: int, eps: Perm | None = None) -> Perm:
    p = tuple(range(degree))
    for ch in w:
        p = compose(p, {"g": gam, "k": kap, "e": eps}[ch])
    return p


def with_antipodal_factor(base: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Gamma x Z_2 acting on 2d points: point i is +e_i and point i+d is -e_i."""
    d = base.degree
    lift = lambda p: tuple(list(p) + [x + d for x in p])
    eps = tuple([i + d for i in range(d)] + list(range(d)))
    gens = [lift(p) for p in base.generators] + [eps]
    g = FiniteGroup(gens, name=name or f"{base.name}xZ2", degree=2 * d)
    g.aux_sign = [0 if p[0] < d else 1 for p in g.elements]
    g.antipodal = g.index[eps]
    g.base = base
    g.base_embedding = [g.index[lift(p)] for p in base.elements]
    if base.name == "D4" and base.degree == 4:
        _name_d4z2(g, lift, eps)
    else:
        for nm, gs in base.subgroup_names.items():
            g.subgroup_names[nm] = [lift(p) for p in gs]
            g.subgroup_names[nm + "^2"] = [lift(p) for p in gs] + [eps]
    return g


def _name_d4z2(g: FiniteGroup, lift, eps) -> None:
    gam, kap = lift((1, 2, 3, 0)), lift((3, 2, 1, 0))
    m = lambda *ws: [_word(w, gam, kap, 8, eps) for w in ws]
    g.subgroup_names = {
        "Z1": [], "Z1^2": m("e"), "Z2": m("gg"), "Z2^z": m("gge"),
        "D1": m("k"), "D1^d": m("ke"), "D1t": m("gk"), "D1t^dt": m("gke"),
        "Z2^2": m("gg", "e"), "D2": m("gg", "k"), "D2^z": m("gg", "ke"),
        "D2^d": m("k", "gge"), "D1^2": m("k", "e"), "Z4": m("g"), "Z4^z": m("ge"),
        "D2t": m("gg", "gk"), "D2t^z": m("gg", "gke"), "D2t^dt": m("gk", "gge"),
        "D1t^2": m("gk", "e"), "D2t^2": m("gg", "gk", "e"), "Z4^2": m("g", "e"),
        "D2^2": m("gg", "k", "e"), "D4^dt": m("gg", "gk", "ge"), "D4": m("g", "k"),
        "D4^d": m("gg", "k", "ge"), "D4^z": m("g", "ke"), "D4^2": m("g", "k", "e"),
    }


def cyclic_group(n: int) -> FiniteGroup:
    g = FiniteGroup([tuple((i + 1) % n for i in range(n))], name=f"Z{n}", degree=n)
    return g


def dihedral_group(n: int) -> FiniteGroup:
    """D_n of order 2n acting on the vertices of an n-gon (n >= 3)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup([rot, ref], name=f"D{n}", degree=n)


def trivial_group() -> FiniteGroup:
    g = FiniteGroup([], name="Z1", degree=1)
    g.subgroup_names = {"Z1": []}
    return g


BUILTIN = {
    "Z1": trivial_group,
    "S4": s4,
    "D4": dihedral_on_square,
    "D4xZ2": lambda: with_antipodal_factor(dihedral_on_square()),
    "S4xZ2": lambda: with_antipodal_factor(s4()),
}


def load_group(spec: str) -> FiniteGroup:
    """Resolve a built-in name, Sn/Zn/Dn, or a JSON file with permutation generators.

    The file holds {"name": ..., "degree": d, "generators": [[...], ...],
    "names": {"H": [[...], ...]}} with 0-based image lists.
    """
    if spec in BUILTIN:
        return BUILTIN[spec]()
    if len(spec) > 1 and spec[0] in "SZD" and spec[1:].isdigit():
        n = int(spec[1:])
        if spec[0] == "S":
            return symmetric_group(n)
        if spec[0] == "Z":
            return cyclic_group(n)
        if n >= 3:
            return dihedral_group(n)
    path = Path(spec)
    if not path.exists():
        raise InputError(f"unknown group {spec!r}")
    try:
        data = json.loads(path.read_text())
        gens = [tuple(int(x) for x in g) for g in data["generators"]]
        g = FiniteGroup(gens, name=data.get("name", path.stem), degree=data.get("degree"))
        g.subgroup_names = {k: [tuple(p) for p in v] for k, v in data.get("names", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad group file {spec}: {exc}") from exc
    return g
