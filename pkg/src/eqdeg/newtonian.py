"""Invariants for periodic solutions of symmetric Newtonian systems."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .burnside import Element
from .degrees import DegreeCalculator
from .errors import InputError, PreconditionError
from .groups import with_antipodal_factor
from .o2lattice import AmalClass
from .representations import (
    CharacterTable,
    OrthogonalRep,
    character_table,
    fixed_dim_product,
)

EIG_TOL = 1e-8
RESONANCE_TOL = 1e-10


def _exact(x: float) -> Fraction | None:
    """A short decimal equal to x up to round-off, if there is one."""
    f = Fraction(x).limit_denominator(10 ** 6)
    return f if abs(float(f) - x) < 1e-9 else None


def period_scale(p) -> Fraction | float:
    """lambda = p / 2pi; p may be a number or a string like '2pi' or '3*2pi'."""
    if isinstance(p, str):
        s = p.replace(" ", "").lower()
        if s.endswith("2pi"):
            head = s[:-3].rstrip("*")
            return Fraction(head) if head else Fraction(1)
        try:
            p = float(s)
        except ValueError:
            raise InputError(f"cannot read period {p!r}") from None
    if p <= 0:
        raise InputError("period must be positive")
    return p / (2 * math.pi)


# spectra ---------------------------------------------------------------

@dataclass
class Eigen:
    mu: float
    mult: dict[str, int]
    exact: Fraction | None = None

    @property
    def value(self):
        return self.exact if self.exact is not None else self.mu


@dataclass
class SpectrumProfile:
    eigen: list[Eigen]
    tag: str = "A"

    def values(self) -> list[float]:
        return [e.mu for e in self.eigen]


def spectrum(M, rep: OrthogonalRep, table: CharacterTable | None = None,
             tag: str = "A") -> SpectrumProfile:
    M = np.asarray(M, dtype=float)
    N = rep.dim
    if M.shape != (N, N):
        raise InputError(f"matrix must be {N}x{N}, got {M.shape}")
    if np.abs(M - M.T).max() > 1e-10:
        raise InputError("matrix is not symmetric")
    if not rep.commutes(M):
        raise InputError("matrix does not commute with the group action")
    table = table or character_table(rep.group)
    G = rep.group
    w, Q = np.linalg.eigh(M)
    projectors = []
    for irr in table.real_irreps:
        P = sum(irr.char[g] * rep.images[g] for g in range(G.order))
        projectors.append((irr, P * irr.dim / (G.order * irr.norm)))
    eigen = []
    i = 0
    while i < N:
        j = i + 1
        while j < N and w[j] - w[j - 1] < EIG_TOL * max(1.0, abs(w[i])):
            j += 1
        mu = float(w[i:j].mean())
        E = Q[:, i:j]
        mult = {}
        for irr, P in projectors:
            t = np.trace(E.T @ P @ E) / irr.dim
            m = round(t)
            if abs(t - m) > 1e-6:
                raise PreconditionError(f"non-integral multiplicity {t:.6f} of {irr.name} at {mu}")
            if m:
                mult[irr.name] = m
        eigen.append(Eigen(mu, mult, _exact(mu)))
        i = j
    return SpectrumProfile(eigen, tag)


# sigma sets -------------------------------------------------------------

@dataclass
class SigmaEntry:
    k: int
    xi: Fraction | float
    mu: Fraction | float
    mult: dict[str, int]


def xi_value(mu, k: int, lam):
    """1 - (lam^2 mu + 1)/(k^2 + 1), i.e. 1 - (p^2 mu + 4 pi^2)/(4 pi^2 (k^2 + 1))."""
    return 1 - (lam * lam * mu + 1) / (k * k + 1)


def sigma_sets(profile: SpectrumProfile, lam) -> dict[int, list[SigmaEntry]]:
    """Negative xi values per Fourier mode k; empty modes beyond k_max are omitted."""
    exact = isinstance(lam, Fraction) and all(e.exact is not None for e in profile.eigen)
    out: dict[int, list[SigmaEntry]] = {}
    for e in profile.eigen:
        mu = e.exact if exact else e.mu
        k = 0
        while True:
            xi = xi_value(mu, k, lam)
            if abs(float(xi)) < RESONANCE_TOL:
                raise PreconditionError(f"resonance: xi = 0 at k={k}, mu={float(mu):g}")
            if xi > 0:
                break
            out.setdefault(k, []).append(SigmaEntry(k, xi, mu, e.mult))
            k += 1
    return dict(sorted(out.items()))


def k_max(sig: dict) -> int:
    return max(sig) if sig else -1


# degrees of linear maps ---------------------------------------------------

@dataclass
class LinearDegree:
    prefactor: Element        # k = 0 part
    modes: Element            # product over k >= 1
    factors: list[tuple[int, str, int]]

    @property
    def full(self) -> Element:
        return self.prefactor * self.modes


def linear_gradient_degree(calc: DegreeCalculator, sig: dict, skip=()) -> LinearDegree:
    """Product of basic degrees Deg_{V_j}^{m} (k = 0) and Deg_{V_{j,k}}^{m} (k >= 1)."""
    ring = calc.ring
    pre = ring.unit()
    modes = ring.unit()
    factors = []
    for k, entries in sig.items():
        for e in entries:
            if (k, e.mu) in skip:
                continue
            for name, m in e.mult.items():
                d = calc.gradient_go2(name, "i" if k == 0 else k)
                factors.append((k, name, m))
                for _ in range(m):
                    if k == 0:
                        pre = pre * d
                    else:
                        modes = modes * d
    return LinearDegree(pre, modes, factors)


# orbit-type analytics ------------------------------------------------------

class OrbitTypes:
    """Isotropy data of the non-constant functions in the Fourier modes of V."""

    def __init__(self, calc: DegreeCalculator, char: np.ndarray):
        lat = calc.lattice
        self.lattice = lat
        exp = calc.group.exponent
        cands = []
        for m in range(1, exp + 1):
            if exp % m == 0:
                cands += lat.phi0_with_k(m)
        dims = {c: fixed_dim_product(lat, char, 1, c) for c in cands}
        cands = [c for c in cands if dims[c] > 0]
        above = {c: [d for d in cands if d != c and lat.is_subconjugate(c, d)] for c in cands}
        # orbit types in mode 1: the fixed space is not that of a larger class
        self.types = [c for c in cands if all(dims[d] < dims[c] for d in above[c])]
        self.maximal = [c for c in cands if not above[c]]

    def maximal_in_mode(self, k: int) -> set:
        return {self.lattice.fold(c, k) for c in self.maximal}

    def types_in_mode(self, k: int) -> set:
        return {self.lattice.fold(c, k) for c in self.types}

    def similarity(self, modes: list[int]) -> dict:
        """Classes of maximal types sharing a common upper bound among all f-orbit types."""
        lat = self.lattice
        maxi = sorted({c for k in modes for c in self.maximal_in_mode(k)}, key=_key(lat))
        allt = {c for k in modes for c in self.types_in_mode(k)}
        parent = {c: c for c in maxi}

        def find(c):
            while parent[c] != c:
                c = parent[c]
            return c
        for K in allt:
            ups = [c for c in maxi if c == K or lat.is_subconjugate(c, K)]
            for c in ups[1:]:
                parent[find(c)] = find(ups[0])
        ids: dict = {}
        out = {}
        for c in maxi:
            out[c] = ids.setdefault(find(c), len(ids) + 1)
        return out


def _key(lat):
    return lambda c: (lat.family_ids[c.fam], c.N)


@dataclass
class InvariantReport:
    invariant: Element
    prefactor: Element | None = None
    bracket: Element | None = None
    annotations: dict = field(default_factory=dict)
    context: dict = field(default_factory=dict)

    def certified(self, ar_only: bool = False) -> list:
        return [c for c in self.invariant.terms
                if not ar_only or self.annotations.get(c, {}).get("anti_reflective")]

    def to_dict(self) -> dict:
        ring = self.invariant.ring
        out = {"invariant": self.invariant.to_dict()}
        if self.prefactor is not None:
            out["prefactor"] = self.prefactor.to_dict()
        if self.bracket is not None:
            out["bracket"] = self.bracket.to_dict()
        out["annotations"] = {ring.name(c): a for c, a in
                              sorted(self.annotations.items(), key=lambda t: ring.sort_key(t[0]))}
        out["context"] = self.context
        return out


def annotate(calc: DegreeCalculator, orbits: OrbitTypes, x: Element, modes: list[int]) -> dict:
    lat = calc.lattice
    maxi = set().union(*(orbits.maximal_in_mode(k) for k in modes)) if modes else set()
    sim = orbits.similarity(modes) if modes else {}
    out = {}
    for c in x.terms:
        a = {"maximal": c in maxi, "similarity": sim.get(c), "phi0": c.phi0}
        if isinstance(c, AmalClass) and c.phi0 and c.k.finite:
            a["s1_orbits"] = lat.s1_orbit_count(c)
        if calc.group.aux_sign is not None:
            a["anti_reflective"] = lat.anti_reflective(c)
        out[c] = a
    return out


def maximal_f_orbit_types(calc: DegreeCalculator, char: np.ndarray, modes: list[int]) -> dict:
    orbits = OrbitTypes(calc, char)
    sim = orbits.similarity(modes)
    return {c: sim[c] for c in sorted(sim, key=_key(calc.lattice))}


# the three settings --------------------------------------------------------

def _modes(*sigs) -> list[int]:
    return sorted({k for s in sigs for k in s if k > 0})


def existence_invariant(calc: DegreeCalculator, rep: OrthogonalRep, A, B, p) -> InvariantReport:
    """deg(B) - deg(A) for an asymptotically linear system."""
    lam = period_scale(p)
    sa = sigma_sets(spectrum(A, rep, calc.table, "A"), lam)
    sb = sigma_sets(spectrum(B, rep, calc.table, "B"), lam)
    da = linear_gradient_degree(calc, sa)
    db = linear_gradient_degree(calc, sb)
    if da.prefactor != db.prefactor:
        raise PreconditionError("the k = 0 factors at zero and infinity differ")
    bracket = db.modes - da.modes
    inv = da.prefactor * bracket
    orbits = OrbitTypes(calc, rep.character)
    modes = _modes(sa, sb)
    return InvariantReport(inv, da.prefactor, bracket,
                           annotate(calc, orbits, inv, modes),
                           {"sigma_A": _sigma_json(sa), "sigma_B": _sigma_json(sb),
                            "factors_A": da.factors, "factors_B": db.factors})


def odd_symmetric(rep: OrthogonalRep) -> OrthogonalRep:
    """The representation of Gamma x Z_2 in which the extra factor acts by -1."""
    G2 = with_antipodal_factor(rep.group)
    mats = [rep.images[g] for g in rep.group.gen_idx] + [-np.eye(rep.dim)]
    return OrthogonalRep(G2, mats)


def nagumo_invariant(calc: DegreeCalculator, rep: OrthogonalRep, A, p) -> InvariantReport:
    """(G) - deg(A); calc and rep should already carry the odd symmetry if wanted."""
    lam = period_scale(p)
    sa = sigma_sets(spectrum(A, rep, calc.table, "A"), lam)
    da = linear_gradient_degree(calc, sa)
    inv = calc.ring.unit() - da.full
    orbits = OrbitTypes(calc, rep.character)
    modes = _modes(sa)
    return InvariantReport(inv, da.prefactor, None, annotate(calc, orbits, inv, modes),
                           {"sigma_A": _sigma_json(sa), "factors_A": da.factors})


@dataclass
class Critical:
    lam: float
    k: int
    mu: float
    mult: dict


def critical_lambdas(profile: SpectrumProfile, k_limit: int = 4) -> list[Critical]:
    if any(abs(e.mu) < RESONANCE_TOL for e in profile.eigen):
        raise PreconditionError("0 is an eigenvalue of A")
    out = [Critical(k / math.sqrt(e.mu), k, e.mu, e.mult)
           for e in profile.eigen if e.mu > 0 for k in range(1, k_limit + 1)]
    return sorted(out, key=lambda c: (c.lam, c.k))


def bifurcation_invariant(calc: DegreeCalculator, rep: OrthogonalRep, A, lam0: float,
                          k_limit: int = 4) -> InvariantReport:
    """omega(lam0) = a * prod_{k != k0} ... * [(G) - prod Deg_{W_{k0,j}}^m]."""
    prof = spectrum(A, rep, calc.table, "A")
    crit = critical_lambdas(prof, k_limit + 1)
    hits = [c for c in crit if abs(c.lam - lam0) < 1e-9]
    if not hits:
        raise InputError(f"{lam0} is not a critical value")
    others = sorted({round(c.lam, 12) for c in crit if abs(c.lam - lam0) >= 1e-9})
    gap = min([abs(x - lam0) for x in others] + [lam0])
    delta = gap / 2
    below = sigma_sets(prof, lam0 - delta)
    ring = calc.ring
    crossing = ring.unit()
    for c in hits:
        for name, m in c.mult.items():
            for _ in range(m):
                crossing = crossing * calc.gradient_go2(name, c.k)
    bracket = ring.unit() - crossing
    lin = linear_gradient_degree(calc, below)
    inv = lin.prefactor * lin.modes * bracket
    orbits = OrbitTypes(calc, rep.character)
    modes = sorted({c.k for c in hits} | set(_modes(below)))
    return InvariantReport(inv, lin.prefactor * lin.modes, bracket,
                           annotate(calc, orbits, inv, modes),
                           {"lambda0": lam0, "limit_period": 2 * math.pi * lam0,
                            "crossings": [(c.k, c.mu, c.mult) for c in hits],
                            "delta": delta})


# bounds -----------------------------------------------------------------

def apriori_bound(M: float, M1: float, p: float) -> float:
    if M <= 0 or p <= 0 or M1 < 0:
        raise InputError("bounds need M > 0, M' >= 0 and p > 0")
    return max(M, p * (M1 + M))


def min_period_bound(K: float) -> float:
    if K <= 0:
        raise InputError("K must be positive")
    return K ** -0.5


def _sigma_json(sig: dict) -> dict:
    return {str(k): [[float(e.xi), float(e.mu), e.mult] for e in entries] for k, entries in sig.items()}
