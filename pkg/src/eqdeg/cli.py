"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .burnside import BurnsideRing, format_terms, pi0
from .degrees import DegreeCalculator
from .errors import EqdegError, InputError
from .euler import O2EulerRing
from .groups import load_group
from .newtonian import (
    apriori_bound,
    bifurcation_invariant,
    critical_lambdas,
    existence_invariant,
    min_period_bound,
    nagumo_invariant,
    odd_symmetric,
    spectrum,
)
from .o2lattice import ProductLattice
from .representations import isotypical_multiplicities, load_rep

SCHEMA = "eqdeg-report/1"
VERBS = ("classes", "burnside-table", "euler-mult", "basic-degrees",
         "existence", "nagumo", "bifurcation", "bounds")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eqdeg", description="Equivariant gradient degree toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("terms", nargs="*", help="ring elements for euler-mult")
    ap.add_argument("--group", help="built-in name (Z1, S4, D4, D4xZ2, S4xZ2, Sn, Zn, Dn) or JSON file")
    ap.add_argument("--rep", help="'permutation', 'signed' or a matrix file")
    ap.add_argument("--config", help="JSON config for existence, nagumo and bifurcation")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--max-n", type=int, default=2, help="largest O(2) parameter listed")
    ap.add_argument("--max-fold", type=int, default=2, help="largest fold l for basic degrees")
    ap.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; runs serially")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ring", choices=("A", "U"), default="A",
                    help="burnside-table: A(Gamma) or U(Gamma x O(2)) up to --max-n")
    ap.add_argument("--M", type=float)
    ap.add_argument("--M1", type=float)
    ap.add_argument("--p", type=float)
    ap.add_argument("--K", type=float)
    return ap


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError(f"{args.verb} needs --{n.replace('_', '-')}")


def _classes(args) -> dict:
    lat = ProductLattice(load_group(args.group))
    rows = lat.classify_product_classes()
    return {"group": lat.group.name, "count": len(rows), "classes": rows}


def _classes_text(rep: dict) -> str:
    out = [f"{rep['group']} x O(2): {rep['count']} classes"]
    for r in rep["classes"]:
        w = "inf" if r["weyl_order"] is None else r["weyl_order"]
        out.append(f"{r['id']:>4}  {r['name']:<48} |W|={w:<5} {r['stratum']}")
    return "\n".join(out)


def _burnside_table(args) -> dict:
    G = load_group(args.group)
    rows = []
    if args.ring == "A":
        B = BurnsideRing(G)
        n = len(G.subgroup_classes)
        for a in range(n):
            for b in range(a, n):
                rows.append([B.name(a), B.name(b), (B.gen(a) * B.gen(b)).to_dict()])
    else:
        lat = ProductLattice(G)
        U = O2EulerRing(lat)
        inst = lat.instances(args.max_n)
        for i, a in enumerate(inst):
            for b in inst[i:]:
                rows.append([U.name(a), U.name(b), (U.gen(a) * U.gen(b)).to_dict()])
    return {"group": G.name, "ring": args.ring, "products": rows}


def _euler_mult(args) -> dict:
    if len(args.terms) != 2:
        raise InputError("euler-mult needs two elements")
    lat = ProductLattice(load_group(args.group))
    U = O2EulerRing(lat)
    s1 = args.terms[0].lstrip("+-0123456789* (").startswith(("Tw", "Prod"))
    ring = U.s1 if s1 else U
    a, b = (ring.parse(t) for t in args.terms)
    return {"group": lat.group.name, "a": a.to_dict(), "b": b.to_dict(), "product": (a * b).to_dict()}


def _basic_degrees(args) -> dict:
    G = load_group(args.group)
    calc = DegreeCalculator(G)
    names = [v.name for v in calc.table.real_irreps]
    if args.rep:
        names = list(isotypical_multiplicities(load_rep(G, args.rep), calc.table).as_dict())
    out = []
    for name in names:
        entry = {"irrep": name}
        for mode in ("i", "ii"):
            entry[mode] = calc.gradient_go2(name, mode).to_dict()
        for l in range(1, args.max_fold + 1):
            entry[f"l={l}"] = calc.gradient_go2(name, l).to_dict()
            entry[f"S1 l={l}"] = calc.gradient_gs1(name, l).to_dict()
        out.append(entry)
    return {"group": G.name, "degrees": out}


def _terms_text(d: dict) -> str:
    return format_terms(list(d.items()))


def load_config(path: str) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"config {path!r} not found") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    base = Path(path).parent
    for key in ("group", "rep"):
        v = cfg.get(key)
        if isinstance(v, str) and (base / v).exists():
            cfg[key] = str(base / v)
    return cfg


def _matrix(cfg: dict, key: str) -> np.ndarray:
    if key not in cfg:
        raise InputError(f"config lacks matrix {key!r}")
    try:
        return np.array(cfg[key], dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"matrix {key!r} is not numeric") from None


def _setup(args):
    _need(args, "config")
    cfg = load_config(args.config)
    G = load_group(args.group or cfg.get("group", ""))
    rep = load_rep(G, args.rep or cfg.get("rep", "permutation"))
    if cfg.get("odd_symmetry"):
        rep = odd_symmetric(rep)
    calc = DegreeCalculator(rep.group)
    return cfg, rep, calc


def _report(calc, report, extra: dict) -> dict:
    d = report.to_dict()
    d.update(extra)
    d["group"] = calc.group.name
    d["pi0"] = pi0(report.invariant).to_dict()
    return d


def _existence(args) -> dict:
    cfg, rep, calc = _setup(args)
    r = existence_invariant(calc, rep, _matrix(cfg, "A"), _matrix(cfg, "B"), cfg.get("p", "2pi"))
    return _report(calc, r, {"setting": "existence"})


def _nagumo(args) -> dict:
    cfg, rep, calc = _setup(args)
    r = nagumo_invariant(calc, rep, _matrix(cfg, "A"), cfg.get("p", "2pi"))
    d = _report(calc, r, {"setting": "nagumo"})
    d["anti_reflective_terms"] = [calc.ring.name(c) for c in r.certified(ar_only=True)]
    return d


def _bifurcation(args) -> dict:
    cfg, rep, calc = _setup(args)
    A = _matrix(cfg, "A")
    k_limit = int(cfg.get("k_limit", 4))
    crit = critical_lambdas(spectrum(A, rep, calc.table), k_limit)
    if "lambda" in cfg:
        lam0 = float(cfg["lambda"])
    else:
        idx = int(cfg.get("lambda_index", 0))
        if not 0 <= idx < len(crit):
            raise InputError(f"lambda_index {idx} outside 0..{len(crit) - 1}")
        lam0 = crit[idx].lam
    r = bifurcation_invariant(calc, rep, A, lam0, k_limit)
    d = _report(calc, r, {"setting": "bifurcation"})
    d["Lambda"] = [{"lambda": c.lam, "k": c.k, "mu": c.mu, "irreps": c.mult} for c in crit]
    return d


def _bounds(args) -> dict:
    out = {}
    if args.K is not None:
        out["min_period"] = min_period_bound(args.K)
    if args.M is not None or args.M1 is not None or args.p is not None:
        _need(args, "M", "M1", "p")
        out["R0"] = apriori_bound(args.M, args.M1, args.p)
    if not out:
        raise InputError("bounds needs --K or --M/--M1/--p")
    return out


def render_text(verb: str, rep: dict) -> str:
    if verb == "classes":
        return _classes_text(rep)
    if verb == "burnside-table":
        return "\n".join(f"({a}) * ({b}) = {_terms_text(p)}" for a, b, p in rep["products"])
    if verb == "euler-mult":
        return _terms_text(rep["product"])
    if verb == "basic-degrees":
        out = []
        for e in rep["degrees"]:
            for key, val in e.items():
                if key != "irrep":
                    out.append(f"Deg[{e['irrep']}, {key}] = {_terms_text(val)}")
        return "\n".join(out)
    if verb == "bounds":
        return "\n".join(f"{k} = {v:.12g}" for k, v in rep.items())
    out = [f"invariant = {_terms_text(rep['invariant'])}",
           f"pi0 = {_terms_text(rep['pi0'])}"]
    if "prefactor" in rep:
        out.append(f"prefactor = {_terms_text(rep['prefactor'])}")
    if "bracket" in rep:
        out.append(f"bracket = {_terms_text(rep['bracket'])}")
    if "Lambda" in rep:
        out.append("Lambda = " + ", ".join(f"{c['lambda']:.8f}" for c in rep["Lambda"]))
    for name, a in rep["annotations"].items():
        flags = [k for k in ("maximal", "anti_reflective") if a.get(k)]
        if flags:
            extra = f" similarity={a['similarity']}" if a.get("similarity") else ""
            out.append(f"  {name}: {', '.join(flags)}{extra} s1_orbits={a.get('s1_orbits')}")
    return "\n".join(out)


HANDLERS = {"classes": _classes, "burnside-table": _burnside_table, "euler-mult": _euler_mult,
            "basic-degrees": _basic_degrees, "existence": _existence, "nagumo": _nagumo,
            "bifurcation": _bifurcation, "bounds": _bounds}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_intermixed_args(argv)
    try:
        if args.verb in ("classes", "burnside-table", "euler-mult", "basic-degrees"):
            _need(args, "group")
        rep = HANDLERS[args.verb](args)
    except EqdegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.format == "json":
        rep = {"schema": SCHEMA, "verb": args.verb, **rep}
        out.write(json.dumps(rep, indent=1, default=_json_default) + "\n")
    else:
        out.write(render_text(args.verb, rep) + "\n")
    return 0


def _json_default(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    raise TypeError(type(x))


def main(argv: list[str] | None = None) -> int:
    return run(argv)
