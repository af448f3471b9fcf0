"""Brute-force reference computations used only by the test-suite."""
from __future__ import annotations

import math
from fractions import Fraction

from eqdeg.groups import Quotient
from eqdeg.o2lattice import (
    IDENT,
    AmalClass,
    O2Subgroup,
    ProductLattice,
    angle,
    o2_conj,
    o2_inv,
    o2_mul,
    psi,
)


def double_cosets(group, left: frozenset, right: frozenset) -> list[int]:
    """Representatives g of the double cosets left g right."""
    seen = set()
    reps = []
    for g in range(group.order):
        if g in seen:
            continue
        reps.append(g)
        for x in left:
            xg = group.mul(x, g)
            for y in right:
                seen.add(group.mul(xg, y))
    return reps


def burnside_product(group, a: int, b: int) -> dict[int, int]:
    """(H)(K) = sum over double cosets HgK of (H n gKg^-1)."""
    cl = group.subgroup_classes
    H, K = cl[a].representative, cl[b].representative
    out: dict[int, int] = {}
    for g in double_cosets(group, H, K):
        c = group.class_of(H & group.conjugate_subgroup(g, K))
        out[c] = out.get(c, 0) + 1
    return out


def module_product(lat: ProductLattice, h: int, t) -> dict:
    """(H x S^1) * K^{phi,l} = sum over double cosets KgH of (K n gHg^-1)^{phi,l}."""
    G = lat.group
    H = lat.rep(h)
    K = lat.rep(t.h)
    phi = dict(zip(sorted(K), t.phi))
    out: dict = {}
    for g in double_cosets(G, K, H):
        sub = K & G.conjugate_subgroup(g, H)
        c = lat.twist_class(sub, {x: phi[x] for x in sub}, t.l)
        out[c] = out.get(c, 0) + 1
    return out


# Gamma x O(2) products by counting cells of H \ G / K ---------------------

def _members(lat: ProductLattice, c: AmalClass) -> list:
    pd = lat.phi_dict(c.h, c.phi)
    return [(x, y) for y in c.k.elements() for x in sorted(pd) if pd[x] == psi(c.k, c.quot, y)]


def _contains(lat, c: AmalClass, pd, x, y) -> bool:
    return x in pd and c.k.contains(y) and pd[x] == psi(c.k, c.quot, y)


def classify_finite(lat: ProductLattice, elems: list) -> AmalClass:
    """Canonical class of a finite subgroup of Gamma x O(2) given by its elements."""
    H = frozenset(x for x, _ in elems)
    ks = {y for _, y in elems}
    rots = [y for y in ks if y[1] == 0]
    refl = sorted(y[0] for y in ks if y[1] == 1)
    N = len(rots)
    shift = Fraction(0)
    if refl:
        shift = refl[0] % Fraction(1, N) if N else refl[0]
    def std(y, extra=Fraction(0)):
        t, s = y
        return (angle(t - shift - extra), 1) if s else y
    elems = [(x, std(y)) for x, y in elems]
    K = O2Subgroup("D" if refl else "Z", N)
    k0 = [y for x, y in elems if x == 0]
    if len(k0) == len(ks):
        quot = Quotient("Z", 1)
    elif any(s for _, s in k0):
        # K_0 is a dihedral subgroup of index two; move it to the standard one
        if any(s and (t * N).numerator % 2 for t, s in k0):
            elems = [(x, std(y, Fraction(1, N))) for x, y in elems]
        quot = Quotient("Z", 2)
    else:
        m = N // len(k0)
        quot = Quotient("D" if refl else "Z", m)
    phi = {}
    for x, y in elems:
        phi[x] = psi(K, quot, y)
    return lat.amal_class(H, phi, K, quot)


def euler_product(lat: ProductLattice, a: AmalClass, b: AmalClass) -> dict:
    """Coefficients of (a)*(b) in U(Gamma x O(2)) for a, b with finite O(2) parts.

    The orbit space of G/a x G/b is a \\ G / b. The circle coordinates are cut at
    a grid fine enough that every isotropy change and every reflection centre
    lies on it; each point orbit contributes +1 and each open-arc orbit -1 to the
    Euler characteristic of its orbit-type stratum.
    """
    G = lat.group
    L = math.lcm(a.k.n, b.k.n)
    Q = 2 * L
    ma = _members(lat, a)
    mb = _members(lat, b)
    pdb = lat.phi_dict(b.h, b.phi)
    gens_a = _small_gens(ma, G)
    gens_b = _small_gens(mb, G)

    def act(cell, left, right):
        # cell = (x, s, i, kind): kind 0 point at i/Q, kind 1 arc at (2i+1)/(2Q)
        x, s, i, kind = cell
        theta = Fraction(2 * i + kind, 2 * Q)
        gx = G.mul(G.mul(left[0], x), G.inv[right[0]])
        y = o2_mul(o2_mul(left[1], (theta, s)), o2_inv(right[1]))
        t2 = y[0] * 2 * Q
        assert t2.denominator == 1
        t2 = int(t2)
        if kind == 0:
            return (gx, y[1], t2 // 2, 0)
        return (gx, y[1], (t2 - 1) // 2, 1)

    cells = [(x, s, i, kind) for x in range(G.order) for s in (0, 1)
             for i in range(Q) for kind in (0, 1)]
    seen = set()
    out: dict = {}
    one = (0, IDENT)
    for cell in cells:
        if cell in seen:
            continue
        orbit = {cell}
        stack = [cell]
        while stack:
            c = stack.pop()
            for g in gens_a:
                d = act(c, g, one)
                if d not in orbit:
                    orbit.add(d)
                    stack.append(d)
            for g in gens_b:
                d = act(c, one, g)
                if d not in orbit:
                    orbit.add(d)
                    stack.append(d)
        seen |= orbit
        x, s, i, kind = cell
        g = (x, (Fraction(2 * i + kind, 2 * Q), s))
        gi = (G.inv[g[0]], o2_inv(g[1]))
        iso = []
        for hx, hy in ma:
            cx = G.mul(G.mul(gi[0], hx), g[0])
            cy = o2_conj(g[1], hy)
            if _contains(lat, b, pdb, cx, cy):
                iso.append((hx, hy))
        c = classify_finite(lat, iso)
        out[c] = out.get(c, 0) + (1 if kind == 0 else -1)
    return {c: v for c, v in out.items() if v}


def _small_gens(members, G):
    """A generating set of a finite subgroup of Gamma x O(2) given by its members."""
    span = {(0, IDENT)}
    gens = []
    for m in members:
        if m in span:
            continue
        gens.append(m)
        frontier = list(span)
        span = set(span)
        while frontier:
            nxt = []
            for u in frontier:
                for g in gens:
                    v = (G.mul(u[0], g[0]), o2_mul(u[1], g[1]))
                    if v not in span:
                        span.add(v)
                        nxt.append(v)
            frontier = nxt
    return gens


# pi_0 of linear gradient degrees from Brouwer degrees on fixed subspaces ---

def negative_dim(lat, table, sig: dict, c) -> int:
    """Dimension of the negative part of the linearization restricted to the c-fixed space."""
    from eqdeg.representations import fixed_dim_product
    total = 0
    for k, entries in sig.items():
        for e in entries:
            for name, m in e.mult.items():
                total += m * fixed_dim_product(lat, table.irrep(name).char, "i" if k == 0 else k, c)
    return total


def linear_pi0(lat, table, sigs: list[tuple[int, dict]]) -> dict:
    """Coefficients of sum_i s_i * pi_0(deg of the linear map with sigma sets sig_i).

    Marks are Brouwer degrees (-1)^{negative dim} on fixed subspaces; the
    coefficients follow by inverting the mark matrix top-down.
    """
    from eqdeg.burnside import phi0_sort_key
    ks = {k for _, sig in sigs for k in sig if k > 0} or {1}
    exp = lat.group.exponent
    Ns = sorted({k * d for k in ks for d in range(1, exp + 1) if exp % d == 0})
    cands = lat.classes_with_k("SO2") + lat.classes_with_k("O2")
    for N in Ns:
        cands += lat.phi0_with_k(N)
    cands = sorted(set(cands), key=lambda c: phi0_sort_key(lat, c), reverse=True)
    out: dict = {}
    for c in cands:
        s = sum(sign * (-1) ** negative_dim(lat, table, sig, c) for sign, sig in sigs)
        for K, v in out.items():
            n = lat.n_number(c, K)
            if n:
                s -= v * n * lat.weyl_data(K)[0]
        w = lat.weyl_data(c)[0]
        assert s % w == 0
        if s:
            out[c] = s // w
    return out
