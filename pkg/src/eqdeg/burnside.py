"""Burnside rings A(Gamma) and A(Gamma x O(2)) with products from the recurrence formula."""
from __future__ import annotations

import re
from collections.abc import Callable, Iterable

from .errors import ConsistencyError, InputError
from .groups import FiniteGroup
from .o2lattice import AmalClass, ProductLattice


class Element:
    """A finitely supported integer combination of classes in a given ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = {c: v for c, v in (terms or {}).items() if v}

    def __add__(self, other: Element) -> Element:
        self._check(other)
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, 0) + v
        return Element(self.ring, out)

    def __neg__(self) -> Element:
        return Element(self.ring, {c: -v for c, v in self.terms.items()})

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __rmul__(self, k: int) -> Element:
        return Element(self.ring, {c: k * v for c, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        self._check(other)
        return self.ring.multiply(self, other)

    def __pow__(self, k: int) -> Element:
        out = self.ring.unit()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, c) -> int:
        return self.terms.get(c, 0)

    def _check(self, other):
        if not isinstance(other, Element) or other.ring is not self.ring:
            raise InputError("elements belong to different rings")

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.ring.sort_key(t[0]))

    def to_dict(self) -> dict[str, int]:
        return {self.ring.name(c): v for c, v in self.sorted_terms()}

    def __str__(self) -> str:
        return format_terms([(self.ring.name(c), v) for c, v in self.sorted_terms()])

    __repr__ = __str__


def format_terms(terms: list[tuple[str, int]]) -> str:
    if not terms:
        return "0"
    out = []
    for i, (name, v) in enumerate(terms):
        mag = "" if abs(v) == 1 else f"{abs(v)}*"
        sign = "-" if v < 0 else "+"
        if i == 0:
            out.append(("-" if v < 0 else "") + f"{mag}({name})")
        else:
            out.append(f" {sign} {mag}({name})")
    return "".join(out)


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*\(")


def parse_terms(text: str) -> list[tuple[str, int]]:
    """Parse '2*(X) - (Y)' into [(X, 2), (Y, -1)]; names may contain parentheses."""
    text = text.strip()
    if text == "0":
        return []
    out = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise InputError(f"cannot parse element at column {pos + 1}: {text[pos:pos + 20]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        depth, k = 1, m.end()
        while k < len(text) and depth:
            depth += {"(": 1, ")": -1}.get(text[k], 0)
            k += 1
        if depth:
            raise InputError(f"unbalanced parentheses at column {m.end()}")
        out.append((text[m.end():k - 1], sign * coef))
        pos = k
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def recurrence(cands: Iterable, mark_a: Callable, mark_b: Callable,
               n_fn: Callable, w_fn: Callable) -> dict:
    """Coefficients n_L of a product, top-down over candidates.

    cands must list larger classes before smaller ones; mark_x(L) is the
    number of fixed points n(L, X)|W(X)| of L on the orbit of X.
    """
    result: dict = {}
    for L in cands:
        ma = mark_a(L)
        if not ma:
            continue
        mb = mark_b(L)
        if not mb:
            continue
        s = ma * mb
        for Lt, v in result.items():
            n = n_fn(L, Lt)
            if n:
                s -= n * v * w_fn(Lt)
        w = w_fn(L)
        q, r = divmod(s, w)
        if r:
            raise ConsistencyError(f"non-integer recurrence quotient {s}/{w}")
        if q:
            result[L] = q
    return result


class BurnsideRing:
    """A(Gamma) for a finite group; classes are subgroup class indices."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.classes = group.subgroup_classes
        self._marks: dict = {}
        self._memo: dict = {}

    def name(self, c: int) -> str:
        return self.classes[c].name

    def sort_key(self, c: int):
        return c

    def gen(self, c) -> Element:
        if isinstance(c, str):
            c = self.group.class_by_name(c).index
        return Element(self, {c: 1})

    def unit(self) -> Element:
        return self.gen(len(self.classes) - 1)

    def mark(self, a: int, b: int) -> int:
        key = (a, b)
        if key not in self._marks:
            ra = self.classes[a].representative
            cb = self.classes[b]
            n = sum(1 for h in cb.conjugates if ra <= h)
            self._marks[key] = n * cb.weyl_order
        return self._marks[key]

    def n(self, a: int, b: int) -> int:
        return self.mark(a, b) // self.classes[b].weyl_order

    def gen_product(self, a: int, b: int) -> dict:
        key = (min(a, b), max(a, b))
        if key not in self._memo:
            cands = sorted(range(len(self.classes)), key=lambda c: -self.classes[c].order)
            self._memo[key] = recurrence(cands, lambda L: self.mark(L, a), lambda L: self.mark(L, b),
                                         self.n, lambda L: self.classes[L].weyl_order)
        return self._memo[key]

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
            try:
                c = self.group.class_by_name(name).index
            except KeyError:
                raise InputError(f"unknown class {name!r}") from None
            out[c] = out.get(c, 0) + v
        return Element(self, out)


def phi0_sort_key(lat: ProductLattice, c: AmalClass):
    """Larger classes first: SO(2)-containing ones, then by order."""
    return (0 if c.k.finite else 1, lat.size_mod_so2(c))


class O2BurnsideRing:
    """A(Gamma x O(2)) on Phi_0 classes."""

    def __init__(self, lattice: ProductLattice):
        self.lattice = lattice
        self._memo: dict = {}

    def name(self, c: AmalClass) -> str:
        return self.lattice.class_name(c)

    def sort_key(self, c: AmalClass):
        return (self.lattice.family_ids[c.fam], c.N)

    def gen(self, c: AmalClass) -> Element:
        if not c.phi0:
            raise InputError("Burnside ring generators must lie in Phi_0")
        return Element(self, {c: 1})

    def unit(self) -> Element:
        lat = self.lattice
        top = len(lat.classes) - 1
        for f in lat.families:
            if f.h == top and f.kind == "O2" and f.quot.order == 1:
                return Element(self, {f.at(): 1})
        raise AssertionError("no unit class")

    def candidates(self, a: AmalClass, b: AmalClass) -> list[AmalClass]:
        lat = self.lattice
        ka, kb = a.k, b.k
        if ka.finite or kb.finite:
            ns = [x.n for x in (ka, kb) if x.finite]
            g = ns[0] if len(ns) == 1 else _gcd(*ns)
            cands = [c for j in _divisors(g) for c in lat.phi0_with_k(j)]
        else:
            cands = lat.classes_with_k("SO2") + lat.classes_with_k("O2")
        return sorted(cands, key=lambda c: phi0_sort_key(lat, c), reverse=True)

    def gen_product(self, a: AmalClass, b: AmalClass) -> dict:
        key = (a, b) if self.sort_key(a) <= self.sort_key(b) else (b, a)
        if key not in self._memo:
            lat = self.lattice
            self._memo[key] = recurrence(
                self.candidates(a, b), lambda L: lat.mark(L, a), lambda L: lat.mark(L, b),
                lat.n_number, lambda L: lat.weyl_data(L)[0])
        return self._memo[key]

    def multiply(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for a, u in x.terms.items():
            for b, v in y.terms.items():
                for c, w in self.gen_product(a, b).items():
                    out[c] = out.get(c, 0) + u * v * w
        return Element(self, out)


def _gcd(a: int, b: int) -> int:
    import math
    return math.gcd(a, b)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def pi0(x: Element, target: O2BurnsideRing | None = None) -> Element:
    """Drop the Phi_1 part of an Euler ring element."""
    ring = target or getattr(x.ring, "burnside", x.ring)
    return Element(ring, {c: v for c, v in x.terms.items() if c.phi0})
