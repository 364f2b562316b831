"""Command line entry point: `relit <command> ...`, JSON on standard output."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import FIXTURES, __version__, load_fixture
from .algebra import Algebra, algebra_from_dict, algebra_to_dict
from .cache import ENV_VAR, CacheStore, canonical
from .checker import SUITES, ConfigError, normalize_config, run_suite
from .enumlib import BudgetExceeded, bounded_indecs, is_nakayama, nakayama_indecs
from .homol import DEFAULT_CUTOFF, PdResult, ext_dims, injdim, pd
from .itcore import itdim_over, phi, psi
from .krull import catalog_for, classify, decompose
from .modcat import (
    Rep,
    direct_sum,
    injective,
    kernel,
    projective,
    projective_cover,
    regular,
    rep_from_dict,
    rep_to_dict,
    simple,
)
from .relexact import SubcatG, rel_ext_dims, rel_id_over, rel_pd, subcat_from_classes, x_precover

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
_FLAG_DEFAULTS = {"seed": 0, "cutoff": DEFAULT_CUTOFF, "width": 4}


class UsageError(Exception):
    """Bad input: reported on stderr with exit status 2."""


# input parsing ----------------------------------------------------------------

def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def algebra_arg(spec: str) -> Algebra:
    if spec in FIXTURES:
        return load_fixture(spec)
    data = _read_json(spec)
    try:
        return algebra_from_dict(data)
    except ValueError as exc:
        raise UsageError(f"{spec}: {exc}") from exc


def _vertex(a: Algebra, token: str):
    for v in a.vertices:
        if str(v) == token:
            return v
    raise UsageError(f"unknown vertex {token!r}")


def module_arg(a: Algebra, spec: str) -> Rep:
    """A JSON module file, or shorthands S:v, P:v, I:v, regular, DA joined by '+'."""
    if Path(spec).is_file():
        try:
            return rep_from_dict(_read_json(spec), a)
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{spec}: {exc}") from exc
    parts = []
    for tok in spec.split("+"):
        tok = tok.strip()
        if tok in ("regular", "A"):
            parts.append(regular(a))
        elif tok == "DA":
            parts.append(direct_sum(*(injective(a, v) for v in a.vertices)))
        elif tok[:2] in ("S:", "P:", "I:"):
            make = {"S:": simple, "P:": projective, "I:": injective}[tok[:2]]
            parts.append(make(a, _vertex(a, tok[2:])))
        else:
            raise UsageError(f"cannot read module {tok!r}: not a file or shorthand (S:v, P:v, I:v, regular, DA)")
    return direct_sum(*parts)


def rel_arg(a: Algebra, spec: str | None):
    """None (absolute), "proj", "all", or a module spec whose sum with the regular module generates X."""
    if spec is None or spec == "proj":
        return spec
    if spec == "all":
        return "all"
    return {"generator": rep_to_dict(module_arg(a, spec))}


# computation -----------------------------------------------------------------

def _subcat(a: Algebra, spec) -> SubcatG | None:
    cat = catalog_for(a)
    if spec is None:
        return None
    if spec == "proj":
        return subcat_from_classes(cat, [], "proj")
    if spec == "all":
        if not cat.complete:
            raise UsageError("'all' needs a complete catalog of indecomposables")
        return subcat_from_classes(cat, cat.ids(), "all")
    gen = direct_sum(rep_from_dict(spec["generator"], a), regular(a))
    return SubcatG(gen, cat, "generator")


def _val(r: PdResult):
    return r.value if r.is_finite else r.to_json()


def _dec_json(m: Rep, seed: int) -> dict:
    d = decompose(m, catalog_for(m.algebra), seed=seed)
    return {
        "decomp": d.decomp.to_json(),
        "summands": [{"class": cid, "dimvec": list(s.dimvec)} for cid, s, _ in d.summands],
    }


def compute(request: dict) -> str:
    """Evaluate a request dict; the canonical JSON text is the cached value."""
    op = request["op"]
    p = request.get("params", {})
    if op == "check":
        return run_suite(request["suite"], request["config"]).dumps()
    a = algebra_from_dict(request["algebra"])
    cat = catalog_for(a)
    mods = [rep_from_dict(d, a) for d in request.get("modules", [])]
    x = _subcat(a, request.get("rel"))
    cutoff = p.get("cutoff", DEFAULT_CUTOFF)
    out: dict[str, Any]
    if op == "info":
        out = {
            "dim": a.dim,
            "field_p": a.p,
            "vertices": list(a.vertices),
            "basis": [str(b) for b in a.basis],
            "projectives": {str(v): list(projective(a, v).dimvec) for v in a.vertices},
            "injectives": {str(v): list(injective(a, v).dimvec) for v in a.vertices},
            "nakayama": is_nakayama(a),
        }
    elif op == "decompose":
        out = _dec_json(mods[0], p.get("seed", 0))
    elif op == "resolve":
        terms = []
        cur = mods[0]
        for k in range(p["n"] + 1):
            if cur.dim == 0:
                break
            x0, epi = projective_cover(cur) if x is None else x_precover(cur, x, "minimal")
            terms.append({"degree": k, "term": classify(x0, cat).to_json(), "dimvec": list(x0.dimvec)})
            cur = kernel(epi)[0]
        out = {"terms": terms, "next_syzygy_dimvec": list(cur.dimvec)}
    elif op == "pd":
        out = {"pd": _val(pd(mods[0], cutoff) if x is None else rel_pd(mods[0], x, cutoff))}
    elif op == "id":
        out = {"id": _val(injdim(mods[0], cutoff) if x is None else rel_id_over(mods[0], x, None, cutoff))}
    elif op == "ext":
        n = p["n"]
        dims = ext_dims(mods[0], mods[1], n) if x is None else rel_ext_dims(mods[0], mods[1], x, n, "minimal")
        out = {"ext": dims}
    elif op == "phi":
        out = {"phi": phi(mods[0], x)}
    elif op == "psi":
        out = {"psi": _val(psi(mods[0], x, cutoff))}
    elif op == "itdim":
        if not mods:
            if not cat.complete:
                raise UsageError("no complete catalog; pass --set explicitly")
            mods = [cat.witness(c) for c in cat.ids()]
        out = {"width": p["width"]}
        for which in p["which"]:
            r = itdim_over(mods, x, which, cutoff, p["width"], algebra=a)
            out[f"{which}_dim"] = _val(r.value)
            out["exact"] = out.get("exact", True) and r.exact
            out[f"{which}_witness_classes"] = list(r.witness)
    elif op == "enumerate":
        if is_nakayama(a):
            ms = nakayama_indecs(a, cat)
        else:
            try:
                ms = bounded_indecs(a, p["bound"], cat=cat)
            except BudgetExceeded as exc:
                ms = exc.partial
        out = {
            "provenance": ms.provenance,
            "complete": ms.complete,
            "modules": [{"class": c, "dimvec": list(m.dimvec)} for c, m in zip(ms.ids, ms.modules)],
        }
    else:
        raise UsageError(f"unknown operation {op!r}")
    return canonical(out)


# driver ----------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    common.add_argument("--width", type=int, default=4)
    common.add_argument("--pretty", action="store_true", help="indented output for humans")
    common.add_argument("--cache", action="store_true", help=f"use the on-disk cache (also on when ${ENV_VAR} is set)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--verify-cache", action="store_true", help="recompute and compare against a cached entry")

    ap = argparse.ArgumentParser(prog="relit", description="Relative Igusa-Todorov functions and dimensions.")
    ap.add_argument("--version", action="version", version=f"relit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, help_, modules=0, rel=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("algebra", help="fixture name (L1..L4) or algebra JSON file")
        for i in range(modules):
            sp.add_argument(f"module{i}", metavar="module" if modules == 1 else "MN"[i])
        if rel:
            sp.add_argument("--rel", help="proj, all, or a module whose sum with the regular module generates X")
        return sp

    cmd("info", "basis, dimension and indecomposable projectives")
    cmd("decompose", "Krull-Schmidt decomposition", 1)
    cmd("resolve", "minimal (relative) projective resolution", 1, True).add_argument("-n", type=int, default=4)
    cmd("pd", "projective dimension", 1, True)
    cmd("id", "injective dimension", 1, True)
    cmd("ext", "dimensions of Ext^i(M, N), i = 0..n", 2, True).add_argument("-n", type=int, default=3)
    cmd("phi", "the function Phi", 1, True)
    cmd("psi", "the function Psi", 1, True)
    it = cmd("itdim", "Phi and Psi dimensions of a module set", 0, True)
    it.add_argument("--set", help="comma separated module specs (default: the complete catalog)")
    it.add_argument("--which", choices=["phi", "psi", "both"], default="both")
    cmd("enumerate", "indecomposables up to a dimension bound", 0).add_argument("--bound", type=int, default=6)

    ck = sub.add_parser("check", parents=[common], help="run a property suite")
    ck.add_argument("suite", choices=sorted(SUITES))
    ck.add_argument("--config", help="suite configuration JSON")

    cc = sub.add_parser("cache", parents=[common], help="maintain the on-disk cache")
    cc.add_argument("action", choices=["verify", "clear"])
    return ap


def _check_config(path: str | None, args) -> dict:
    raw = _read_json(path) if path else {}
    if not isinstance(raw, dict):
        raise UsageError(f"{path}: the configuration must be a JSON object")
    base = Path(path).parent if path else Path(".")
    cfg = dict(raw)
    algs = cfg.pop("algebras", None) or ([cfg.pop("algebra")] if "algebra" in cfg else None)
    if algs is not None:
        out = []
        for spec in algs:
            if isinstance(spec, str) and spec not in FIXTURES:
                label = Path(spec).stem
                spec = dict(_read_json(str(base / spec)), label=label)
            out.append(spec)
        cfg["algebras"] = out
    if "subcats" in cfg:
        subs = []
        for spec in cfg["subcats"]:
            if isinstance(spec, str) and spec.startswith("generator:") and spec != "generator: all-indecomposables":
                rest = spec.split(":", 1)[1].strip()
                kind = "generator"
                if rest.startswith("perp-cotilting "):
                    kind, rest = "perp-cotilting", rest.split(None, 1)[1]
                spec = {kind: _read_json(str(base / rest)), "label": f"{kind}:{Path(rest).stem}"}
            subs.append(spec)
        cfg["subcats"] = subs
    for flag in ("seed", "cutoff", "width"):
        if flag not in raw and getattr(args, flag) != _FLAG_DEFAULTS[flag]:
            cfg[flag] = getattr(args, flag)
    return normalize_config(cfg)


def _request(args) -> dict:
    if args.command == "check":
        return {"op": "check", "suite": args.suite, "config": _check_config(args.config, args)}
    a = algebra_arg(args.algebra)
    req: dict[str, Any] = {"op": args.command, "algebra": algebra_to_dict(a), "params": {"cutoff": args.cutoff}}
    mods = [getattr(args, k) for k in ("module0", "module1") if hasattr(args, k)]
    if args.command == "itdim" and args.set:
        mods = [s for s in args.set.split(",") if s]
    req["modules"] = [rep_to_dict(module_arg(a, s)) for s in mods]
    if getattr(args, "rel", None) is not None:
        req["rel"] = rel_arg(a, args.rel)
    if args.command == "decompose":
        req["params"]["seed"] = args.seed
    if args.command in ("resolve", "ext"):
        req["params"]["n"] = args.n
    if args.command == "itdim":
        req["params"].update(width=args.width, which=["phi", "psi"] if args.which == "both" else [args.which])
    if args.command == "enumerate":
        req["params"]["bound"] = args.bound
    return req


def _emit(text: str, pretty: bool) -> None:
    if pretty:
        text = json.dumps(json.loads(text), indent=2, sort_keys=True)
    sys.stdout.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        use_cache = (args.cache or bool(os.environ.get(ENV_VAR))) and not args.no_cache
        if args.command == "cache":
            store = CacheStore()
            if args.action == "clear":
                _emit(canonical({"removed": store.clear()}), args.pretty)
                return EXIT_OK
            results = store.verify(compute)
            _emit(canonical({"entries": results}), args.pretty)
            return EXIT_OK if all(r["ok"] for r in results) else EXIT_FAIL
        request = _request(args)
        if args.verify_cache:
            store = CacheStore()
            stored = store.get(request)
            fresh = compute(request)
            ok = stored is None or stored == fresh
            _emit(canonical({"cached": stored is not None, "identical": ok}), args.pretty)
            return EXIT_OK if ok else EXIT_FAIL
        text = CacheStore().fetch(request, compute) if use_cache else compute(request)
    except (UsageError, ConfigError) as exc:
        print(f"relit: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _emit(text, args.pretty)
    if args.command == "check" and json.loads(text)["summary"]["fail"]:
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
