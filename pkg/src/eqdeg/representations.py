"""Orthogonal representations, character tables and fixed-point dimensions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import ConsistencyError, InputError
from .groups import FiniteGroup
from .o2lattice import (
    AmalClass,
    ProductLattice,
    TwistClass,
    kernel_subgroup,
    psi_section,
)

TOL = 1e-8


def _round_int(x: float, what: str, tol: float = 1e-6) -> int:
    r = round(x)
    if abs(x - r) > tol:
        raise ConsistencyError(f"{what} is not integral: {x}")
    return int(r)


def conjugacy_classes(group: FiniteGroup) -> list[list[int]]:
    seen = [False] * group.order
    out = []
    for x in range(group.order):
        if seen[x]:
            continue
        cl = sorted({group.conj(g, x) for g in range(group.order)})
        for y in cl:
            seen[y] = True
        out.append(cl)
    out.sort(key=lambda c: (group.element_order(c[0]), c[0]))
    return out


@dataclass
class RealIrrep:
    name: str
    dim: int
    kind: str  # "real", "complex" (realified pair) or "quaternionic"
    char: np.ndarray  # real character of the realified representation, per element

    @property
    def norm(self) -> int:
        return {"real": 1, "complex": 2, "quaternionic": 4}[self.kind]


class CharacterTable:
    """Irreducible characters from the class-algebra eigenvectors (Burnside's method)."""

    def __init__(self, group: FiniteGroup, seed: int = 0):
        self.group = group
        G = group
        classes = conjugacy_classes(G)
        self.classes = classes
        r = len(classes)
        cls_of = [0] * G.order
        for i, c in enumerate(classes):
            for x in c:
                cls_of[x] = i
        self.class_of = cls_of
        sizes = np.array([len(c) for c in classes], dtype=float)
        self.sizes = sizes
        # class constants: K_j K_k = sum_i a[j][k][i] K_i, and the central
        # characters w satisfy sum_i a[j][k][i] w_i = w_j w_k
        mats = []
        for j in range(r):
            M = np.zeros((r, r))
            for k in range(r):
                z = classes[k][0]
                for y in classes[j]:
                    M[k, cls_of[G.mul(y, z)]] += 1
            mats.append(M * sizes[:, None] / sizes[None, :])
        rng = np.random.default_rng(seed)
        for _ in range(20):
            coeffs = rng.standard_normal(r)
            A = sum(c * M for c, M in zip(coeffs, mats))
            vals, vecs = np.linalg.eig(A)
            if r == 1 or np.min(np.abs(np.subtract.outer(vals, vals)) + np.eye(r) * 1e9) > 1e-6:
                break
        else:
            raise ConsistencyError("could not separate the class-algebra eigenvalues")
        chars = []
        for i in range(r):
            w = vecs[:, i] / vecs[0, i]  # central character, w[k] = |C_k| chi(g_k) / chi(1)
            d2 = G.order / np.sum(np.abs(w) ** 2 / sizes)
            d = math.sqrt(d2.real)
            chi = d * w / sizes
            chars.append(chi)
        chars = np.array(chars)
        self._check(chars)
        self.chars = chars  # complex irreducible characters per class
        self.degrees = [_round_int(c[0].real, "character degree") for c in chars]
        sq = [cls_of[G.mul(x, x)] for x in range(G.order)]
        self.indicators = [_round_int(sum(chi[sq[x]] for x in range(G.order)).real / G.order,
                                      "Frobenius-Schur indicator") for chi in chars]

    def _check(self, chars):
        G = self.group
        gram = (chars * self.sizes) @ chars.conj().T / G.order
        if np.max(np.abs(gram - np.eye(len(chars)))) > TOL:
            raise ConsistencyError("character orthogonality check failed")
        if abs(sum(abs(c[0]) ** 2 for c in chars) - G.order) > 1e-6:
            raise ConsistencyError("sum of squared degrees differs from the group order")

    def per_element(self, chi) -> np.ndarray:
        return np.array([chi[self.class_of[x]] for x in range(self.group.order)])

    @cached_property
    def real_irreps(self) -> list[RealIrrep]:
        G = self.group
        out = []
        done = set()
        for i, chi in enumerate(self.chars):
            if i in done:
                continue
            ind = self.indicators[i]
            if ind == 1:
                out.append(("real", chi.real))
            elif ind == -1:
                out.append(("quaternionic", 2 * chi.real))
            else:
                j = min(range(len(self.chars)),
                        key=lambda j: np.max(np.abs(self.chars[j] - chi.conj())))
                done.add(j)
                out.append(("complex", 2 * chi.real))
            done.add(i)
        irreps = []
        for kind, ch in out:
            ch = np.round(ch, 10)
            irreps.append(RealIrrep("", _round_int(ch[0], "degree"), kind, self.per_element(ch)))
        irreps.sort(key=lambda v: (v.dim, tuple(-np.round(v.char[[c[0] for c in self.classes]], 8))))
        _name_irreps(G, irreps)
        irreps.sort(key=lambda v: v.name)
        return irreps

    def irrep(self, name: str) -> RealIrrep:
        for v in self.real_irreps:
            if v.name == name:
                return v
        raise InputError(f"unknown irreducible {name!r}")

    def index(self, name: str) -> int:
        for i, v in enumerate(self.real_irreps):
            if v.name == name:
                return i
        raise InputError(f"unknown irreducible {name!r}")


def _kernel(char: np.ndarray) -> frozenset[int]:
    return frozenset(int(x) for x in np.nonzero(np.abs(char - char[0]) < 1e-8)[0])


def _name_irreps(G: FiniteGroup, irreps: list[RealIrrep]) -> None:
    if G.base is not None and G.antipodal is not None:
        base = character_table(G.base).real_irreps
        emb = G.base_embedding
        for v in irreps:
            sign = "-" if v.char[G.antipodal] < 0 else "+"
            res = v.char[emb]
            for b in base:
                if np.max(np.abs(b.char - res)) < 1e-8:
                    v.name = f"{b.name}^{sign}"
                    break
        if all(v.name for v in irreps):
            return
    used = set()
    for name, dim, kname in G.irrep_hints:
        target = G.class_by_name(kname)
        for v in irreps:
            if v.name or v.dim != dim:
                continue
            k = _kernel(v.char)
            if k in target.conjugates:
                v.name = name
                used.add(name)
                break
    i = 0
    for v in irreps:
        if not v.name:
            while f"V{i}" in used:
                i += 1
            v.name = f"V{i}"
            used.add(v.name)


_TABLES: dict[int, CharacterTable] = {}


def character_table(group: FiniteGroup) -> CharacterTable:
    key = id(group)
    tab = _TABLES.get(key)
    if tab is None or tab.group is not group:
        tab = CharacterTable(group)
        _TABLES[key] = tab
    return tab


class OrthogonalRep:
    """An orthogonal representation given by generator matrices."""

    def __init__(self, group: FiniteGroup, gen_matrices: list[np.ndarray]):
        self.group = group
        if len(gen_matrices) != len(group.generators):
            raise InputError(f"expected {len(group.generators)} generator matrices, got {len(gen_matrices)}")
        mats = [np.asarray(m, dtype=float) for m in gen_matrices]
        n = mats[0].shape[0] if mats else 1
        for m in mats:
            if m.shape != (n, n):
                raise InputError("generator matrices must be square of equal size")
            if np.max(np.abs(m @ m.T - np.eye(n))) > 1e-10:
                raise InputError("generator matrix is not orthogonal")
        self.dim = n
        images: list[np.ndarray | None] = [None] * group.order
        images[0] = np.eye(n)
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g, M in zip(group.gen_idx, mats):
                    y = group.mul(g, x)
                    if images[y] is None:
                        images[y] = M @ images[x]
                        nxt.append(y)
            frontier = nxt
        for x in range(group.order):
            for g, M in zip(group.gen_idx, mats):
                if np.max(np.abs(M @ images[x] - images[group.mul(g, x)])) > 1e-8:
                    raise InputError("generator matrices do not satisfy the group relations")
        self.images = images

    @classmethod
    def permutation(cls, group: FiniteGroup) -> OrthogonalRep:
        d = group.degree
        mats = []
        for p in group.generators:
            M = np.zeros((d, d))
            for i in range(d):
                M[p[i], i] = 1
            mats.append(M)
        return cls(group, mats)

    @classmethod
    def signed_permutation(cls, group: FiniteGroup) -> OrthogonalRep:
        """Points i and i+d stand for +e_i and -e_i."""
        d = group.degree // 2
        mats = []
        for p in group.generators:
            M = np.zeros((d, d))
            for i in range(d):
                j = p[i]
                M[j % d, i] = 1 if j < d else -1
            mats.append(M)
        return cls(group, mats)

    @property
    def character(self) -> np.ndarray:
        return np.array([np.trace(m) for m in self.images])

    def commutes(self, A: np.ndarray, tol: float = 1e-8) -> bool:
        return all(np.max(np.abs(A @ m - m @ A)) < tol for m in self.images)


def parse_rational(tok: str) -> float:
    try:
        return float(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad matrix entry {tok!r}") from None


def load_rep(group: FiniteGroup, spec: str) -> OrthogonalRep:
    """'permutation', 'signed' or a text file: N, then one N x N matrix per generator."""
    if spec == "permutation":
        return OrthogonalRep.permutation(group)
    if spec == "signed":
        return OrthogonalRep.signed_permutation(group)
    path = Path(spec)
    if not path.exists():
        raise InputError(f"representation file {spec!r} not found")
    toks = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.split("#", 1)[0]
        toks.extend((lineno, col + 1, t) for col, t in enumerate(line.split()))
    if not toks:
        raise InputError(f"{spec}: empty representation file")
    try:
        n = int(toks[0][2])
    except ValueError:
        raise InputError(f"{spec}:{toks[0][0]}:{toks[0][1]}: expected dimension") from None
    body = toks[1:]
    need = n * n * len(group.generators)
    if len(body) != need:
        raise InputError(f"{spec}: expected {need} matrix entries, found {len(body)}")
    vals = []
    for lineno, col, t in body:
        try:
            vals.append(float(Fraction(t)))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{spec}:{lineno}:{col}: bad entry {t!r}") from None
    arr = np.array(vals).reshape(len(group.generators), n, n)
    return OrthogonalRep(group, list(arr))


@dataclass
class IsotypicalProfile:
    names: list[str]
    multiplicities: list[int]

    def as_dict(self) -> dict[str, int]:
        return {n: m for n, m in zip(self.names, self.multiplicities) if m}


def isotypical_multiplicities(rep: OrthogonalRep, table: CharacterTable | None = None) -> IsotypicalProfile:
    table = table or character_table(rep.group)
    chi = rep.character
    G = rep.group
    ms = []
    for v in table.real_irreps:
        ms.append(_round_int(float(np.dot(chi, v.char)) / G.order / v.norm, "multiplicity"))
    if sum(m * v.dim for m, v in zip(ms, table.real_irreps)) != rep.dim:
        raise ConsistencyError("isotypical multiplicities do not add up to the dimension")
    return IsotypicalProfile([v.name for v in table.real_irreps], ms)


def fixed_dim(char: np.ndarray, H: frozenset[int]) -> int:
    return _round_int(sum(char[x] for x in H) / len(H), "fixed-point dimension")


def fixed_dim_product(lat: ProductLattice, char: np.ndarray, mode, c: AmalClass) -> int:
    """dim of the fixed space of a Gamma x O(2) class on V_j (x) U.

    mode is 'i' (O(2) trivial), 'ii' (O(2) acting through its sign) or a fold l >= 1.
    The Haar average splits over the fibres of the quotient L.
    """
    pd = lat.phi_dict(c.h, c.phi)
    fib_sum: dict = {}
    fib_n: dict = {}
    for x, ell in pd.items():
        fib_sum[ell] = fib_sum.get(ell, 0.0) + char[x]
        fib_n[ell] = fib_n.get(ell, 0) + 1
    k0 = kernel_subgroup(c.k, c.quot)
    total = 0.0
    for ell, chi_sum in fib_sum.items():
        avg_chi = chi_sum / fib_n[ell]
        y = psi_section(c.k, c.quot, ell)
        total += avg_chi * _coset_average(k0, y, mode)
    return _round_int(total / len(fib_sum), "fixed-point dimension")


def _coset_average(k0, y, mode) -> float:
    """Average of c(o) over the coset y K_0."""
    if mode == "i":
        return 1.0
    refl_in_k0 = k0.kind in ("D", "O2")
    if mode == "ii":
        if refl_in_k0:
            return 0.0
        return 1.0 if y[1] == 0 else -1.0
    l = int(mode)
    if not k0.finite:
        return 0.0
    tot = 0.0
    for z in k0.elements():
        t = (y[0] + (z[0] if y[1] == 0 else -z[0])) % 1
        if (y[1] ^ z[1]) == 0:
            tot += 2 * math.cos(2 * math.pi * l * float(t))
    return tot / len(k0.elements())


def fixed_dim_twisted(lat: ProductLattice, char: np.ndarray, l: int, t: TwistClass) -> int:
    """Real dimension of the fixed space of t on V_j (x) C with S^1 acting by z^l (l=0: trivially)."""
    H = sorted(lat.rep(t.h))
    if l == 0:
        if t.l:
            raise InputError("twisted classes have no fixed points here")
        return fixed_dim(char, frozenset(H))
    if t.l == 0 or l % t.l:
        return 0
    r = l // t.l
    tot = sum(char[x] * math.cos(2 * math.pi * r * float(v)) for x, v in zip(H, t.phi))
    return 2 * _round_int(tot / len(H), "fixed-point dimension")
