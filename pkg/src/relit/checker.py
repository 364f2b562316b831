"""Property suites: the homological statements of the theory run on concrete algebras.

Every suite takes a configuration (algebras, subcategory specs, cutoffs,
seed) and returns a `SuiteReport` with one verdict per case. Values that
come back Unknown are never asserted on; such cases are skipped with a
reason. A failing case is recomputed through an independent route before it
is reported, and both computations are kept in its certificate.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

from . import FIXTURES, load_fixture
from .algebra import Algebra, algebra_from_dict, algebra_to_dict, load_algebra, opposite
from .cache import CacheStore, canonical
from .enumlib import auslander_generator, delta_modules, fdelta_membership
from .homol import DEFAULT_CUTOFF, PdResult, absolute_engine, injdim, projective_classes, sup_results
from .itcore import ClosureTooLarge, bracket, itdim_over, omega_step, phi_counts, psi_counts
from .krull import IsoCatalog, catalog_for, classify, rep_from_classes, strip
from .modcat import Rep, direct_sum, dual, hom_dim, kernel, projective_cover, regular, rep_from_dict, rep_to_dict
from .relexact import (
    NotCotilting,
    ShortExact,
    SubcatG,
    _cotilting_degree,
    _precover_with_counts,
    horseshoe_step,
    is_ef_exact,
    is_exact_pair,
    perp_cotilting_subcat,
    rel_ext_dims,
    rel_id_over,
    rel_syzygy,
    resdim_bruteforce,
    resdim_hypothesis,
    sample_ef_sequences,
    stable_hom_dim,
    subcat_from_classes,
    x_precover,
)

__all__ = ["ConfigError", "Case", "SuiteReport", "SUITES", "DEFAULT_CONFIG", "normalize_config", "run_suite"]


class ConfigError(ValueError):
    """A suite configuration that cannot be run."""


DEFAULT_CONFIG: dict[str, Any] = {
    "algebras": list(FIXTURES),
    "subcats": ["proj", "all", "proj+one"],
    "cutoff": DEFAULT_CUTOFF,
    "width": 4,
    "seed": 0,
    "samples": 40,
    "bound": 4,
}


@dataclass
class Case:
    key: str
    verdict: str
    reason: str | None = None
    cert: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"key": self.key, "verdict": self.verdict, "certificate": self.cert}
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@dataclass
class SuiteReport:
    suite: str
    config: dict
    cases: list[Case] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        c = Counter(x.verdict for x in self.cases)
        return {k: c.get(k, 0) for k in ("pass", "fail", "skip")}

    @property
    def ok(self) -> bool:
        return self.counts()["fail"] == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "summary": self.counts(),
            "cases": [c.to_json() for c in self.cases],
        }

    def dumps(self) -> str:
        return canonical(self.to_json())


class _Undecided(Exception):
    """A needed value is Unknown; the case becomes a skip."""


def _num(r: PdResult) -> float:
    if r.is_unknown:
        raise _Undecided(f"value unknown within cutoff {r.value}")
    return math.inf if r.is_infinite else r.value


def _js(r: PdResult | int | float) -> Any:
    if isinstance(r, PdResult):
        return r.to_json()
    if isinstance(r, float) and math.isinf(r):
        return "infinite"
    return r


# configuration ---------------------------------------------------------------

def normalize_config(config: dict | None) -> dict:
    cfg = dict(DEFAULT_CONFIG)
    if config:
        unknown = set(config) - set(DEFAULT_CONFIG) - {"algebra"}
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(config)
    if "algebra" in cfg:
        cfg["algebras"] = [cfg.pop("algebra")]
    if not isinstance(cfg["algebras"], list) or not cfg["algebras"]:
        raise ConfigError("'algebras' must be a non-empty list")
    for k in ("cutoff", "width", "seed", "samples", "bound"):
        if not isinstance(cfg[k], int) or cfg[k] < 0:
            raise ConfigError(f"'{k}' must be a non-negative integer")
    if cfg["cutoff"] < 1 or cfg["width"] < 1:
        raise ConfigError("'cutoff' and 'width' must be positive")
    return cfg


def _load(spec) -> tuple[str, Algebra]:
    try:
        if isinstance(spec, dict):
            return spec.get("label", "inline"), algebra_from_dict(spec)
        if spec in FIXTURES:
            return spec, load_fixture(spec)
        path = Path(spec)
        return path.stem, load_algebra(path)
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"cannot load algebra {spec!r}: {exc}") from exc


@dataclass
class _Ctx:
    label: str
    a: Algebra
    cat: IsoCatalog
    cfg: dict

    @property
    def ids(self) -> list[int]:
        return self.cat.ids()

    @property
    def mods(self) -> list[Rep]:
        return [self.cat.witness(c) for c in self.cat.ids()]

    @property
    def complete(self) -> bool:
        return self.cat.complete

    def subcats(self) -> list[tuple[str, SubcatG]]:
        out: list[tuple[str, SubcatG]] = []
        seen = set()
        proj = set(projective_classes(self.a, self.cat).values())
        for spec in self.cfg["subcats"]:
            if spec == "proj":
                items = [("proj", [])]
            elif spec == "all":
                if not self.complete:
                    continue
                items = [("all", self.ids)]
            elif spec == "proj+one":
                items = [(f"proj+{c}", [c]) for c in self.ids if c not in proj]
            elif spec == "generator: all-indecomposables":
                if not self.complete:
                    raise ConfigError(f"{self.label} has no complete catalog of indecomposables")
                items = [("all", self.ids)]
            elif isinstance(spec, dict) and "classes" in spec:
                items = [(spec.get("label", "classes"), list(spec["classes"]))]
            elif isinstance(spec, dict) and ("generator" in spec or "perp-cotilting" in spec):
                items = [self._module_subcat(spec)]
            else:
                raise ConfigError(f"unknown subcategory spec {spec!r}")
            for label, ids in items:
                bad = [c for c in ids if c not in self.ids]
                if bad:
                    raise ConfigError(f"unknown class ids {bad} for {self.label}")
                x = subcat_from_classes(self.cat, ids, label)
                if x.classes not in seen:
                    seen.add(x.classes)
                    out.append((label, x))
        return out


    def _module_subcat(self, spec: dict) -> tuple[str, list[int]]:
        kind = "generator" if "generator" in spec else "perp-cotilting"
        try:
            m = rep_from_dict(spec[kind], self.a)
        except Exception as exc:
            raise ConfigError(f"bad module in subcategory spec: {exc}") from exc
        if kind == "generator":
            ids = sorted(classify(m, self.cat).support)
        else:
            if not self.complete:
                raise ConfigError("perpendicular classes need a complete catalog")
            try:
                ids = sorted(perp_cotilting_subcat(m, self.cat, self.cfg["cutoff"]).classes)
            except NotCotilting as exc:
                raise ConfigError(f"not a cotilting module: {exc}") from exc
        return spec.get("label", kind), ids


def _contexts(cfg: dict) -> list[_Ctx]:
    out = []
    for spec in cfg["algebras"]:
        label, a = _load(spec)
        out.append(_Ctx(label, a, catalog_for(a), cfg))
    return out


# shared quantities -------------------------------------------------------------

def _fpd(x: SubcatG, ids: Iterable[int], cutoff: int) -> PdResult:
    eng = x.engine()
    return sup_results((eng.class_pd(c, cutoff) for c in ids), finite_only=True)


def _gldim(x: SubcatG, ids: Iterable[int], cutoff: int) -> PdResult:
    eng = x.engine()
    return sup_results(eng.class_pd(c, cutoff) for c in ids)


def _itdim(ctx: _Ctx, x: SubcatG, which: str, mods: Sequence[Rep] | None = None):
    mods = ctx.mods if mods is None else mods
    return itdim_over(mods, x, which, ctx.cfg["cutoff"], ctx.cfg["width"], algebra=ctx.a)


def _psi(counts, x: SubcatG, cutoff: int) -> PdResult:
    return psi_counts(counts, x.engine(), cutoff)


def _counts_of(m: Rep, cat: IsoCatalog) -> Counter:
    return classify(m, cat).counter()


def _fail_payload(ctx: _Ctx, modules: dict[str, Rep], values: dict) -> dict:
    return {
        "algebra": algebra_to_dict(ctx.a),
        "modules": {k: rep_to_dict(v) for k, v in modules.items()},
        "values": values,
    }


def _oracle_pd(m: Rep, x: SubcatG, limit: int = 8) -> dict:
    """Relative pd recomputed from explicit generator-mode syzygies, plus brute force."""
    cur = m
    found = None
    for k in range(limit + 1):
        if classify(cur, x.cat).support <= x.classes:
            found = k
            break
        cur = rel_syzygy(cur, x, "generator")
    out = {"explicit_syzygies": found if found is not None else f"unknown({limit})"}
    ok, _ = resdim_hypothesis(x)
    if ok:
        out["bruteforce"] = str(resdim_bruteforce(m, x, 4))
    return out


def _oracle_phi(m: Rep, x: SubcatG, max_steps: int = 64) -> int | None:
    """Phi from carrier modules: step until the K-vector state repeats."""
    s = bracket(m, x)
    ranks = [s.rank]
    seen = {tuple(v.entries for v in s.vectors())}
    for _ in range(max_steps):
        s = omega_step(s, x)
        ranks.append(s.rank)
        state = tuple(v.entries for v in s.vectors())
        if state in seen:
            final = ranks[-1]
            return next(k for k, r in enumerate(ranks) if r == final)
        seen.add(state)
    return None


def _guard(fn: Callable[[], Case], key: str) -> Case:
    try:
        return fn()
    except _Undecided as exc:
        return Case(key, "skip", str(exc))
    except ClosureTooLarge as exc:
        return Case(key, "skip", str(exc))


def _verdict(key: str, checks: dict[str, bool], cert: dict, on_fail: Callable[[], dict] | None = None) -> Case:
    cert = dict(cert)
    cert["checks"] = checks
    if all(checks.values()):
        return Case(key, "pass", None, cert)
    if on_fail is not None:
        cert["recheck"] = on_fail()
    failed = sorted(k for k, v in checks.items() if not v)
    return Case(key, "fail", "violated: " + ", ".join(failed), cert)


# suites -------------------------------------------------------------------------

def _suite_schanuel(ctx: _Ctx) -> list[Case]:
    cases = []
    modes = ("generator", "basic", "minimal")
    for label, x in ctx.subcats():
        for cid in ctx.ids:
            m = ctx.cat.witness(cid)
            parts = {mode: _precover_with_counts(m, x, mode) for mode in modes}
            kers = {mode: kernel(parts[mode][1])[0] for mode in modes}
            if label == "proj":
                p0, eps = projective_cover(m)
                parts["cover"] = (p0, eps, None)
                kers["cover"] = kernel(eps)[0]
            checks = {}
            for s, t in itertools.combinations(sorted(kers), 2):
                lhs = classify(direct_sum(kers[s], parts[t][0]), ctx.cat)
                rhs = classify(direct_sum(kers[t], parts[s][0]), ctx.cat)
                checks[f"{s}~{t}"] = lhs == rhs
            cert = {"syzygy_classes": {k: classify(v, ctx.cat).to_json() for k, v in sorted(kers.items())}}
            cases.append(_verdict(f"{ctx.label}/{label}/class{cid}", checks, cert))
    return cases


def _suite_horseshoe(ctx: _Ctx) -> list[Case]:
    cases = []
    for label, x in ctx.subcats():
        eng = x.engine()
        seqs = sample_ef_sequences(x, ctx.mods, min(ctx.cfg["samples"], 20), ctx.cfg["seed"])
        for i, seq in enumerate(seqs):
            key = f"{ctx.label}/{label}/seq{i}"
            checks: dict[str, bool] = {}
            cur = seq
            steps = []
            for n in range(1, 4):
                prev = cur
                cur, xcounts = horseshoe_step(prev, x)
                ca = eng.omega(eng.classes(prev.a))
                cb = eng.omega(eng.classes(prev.b))
                cc = eng.omega(eng.classes(prev.c))
                checks[f"exact@{n}"] = is_exact_pair(cur.f, cur.g)
                checks[f"ef_exact@{n}"] = is_ef_exact(cur, x)
                checks[f"left_is_syzygy@{n}"] = eng.stable(eng.classes(cur.a)) == ca
                checks[f"middle_is_syzygy@{n}"] = eng.stable(eng.classes(cur.b)) == cb
                checks[f"right_is_syzygy@{n}"] = eng.stable(eng.classes(cur.c)) == cc
                dims_ok = all(p + q == r for p, q, r in zip(cur.a.dimvec, cur.c.dimvec, cur.b.dimvec))
                checks[f"dimvec_additive@{n}"] = dims_ok
                steps.append({"A": cur.a.dimvec, "B": cur.b.dimvec, "C": cur.c.dimvec, "X": dict(xcounts)})
            cases.append(_verdict(key, checks, {"origin": seq.origin, "steps": _jsonable(steps)}))
    return cases


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _small_sums(ctx: _Ctx) -> list[Counter]:
    out = [Counter({c: 1}) for c in ctx.ids]
    out += [Counter({a: 1, b: 1}) for a, b in itertools.combinations(ctx.ids, 2)]
    return out


def _suite_phi_basic(ctx: _Ctx) -> list[Case]:
    cases = []
    cutoff = ctx.cfg["cutoff"]
    for label, x in ctx.subcats():
        eng = x.engine()
        for counts in _small_sums(ctx):
            key = f"{ctx.label}/{label}/" + "+".join(f"c{c}" for c in sorted(counts))
            cases.append(_guard(lambda: _phi_basic_case(ctx, x, eng, counts, key, cutoff), key))
    return cases


def _phi_basic_case(ctx, x, eng, counts, key, cutoff) -> Case:
    m = rep_from_classes(counts, ctx.cat)
    pdm = eng.pd_counts(counts, cutoff)
    ph = phi_counts(counts, eng)
    ps = _num(psi_counts(counts, eng, cutoff))
    checks: dict[str, bool] = {}
    if pdm.is_finite:
        checks["phi_equals_finite_pd"] = ph == pdm.value
        checks["psi_equals_finite_pd"] = ps == pdm.value
    if pdm.is_infinite and len(counts) == 1:
        checks["indecomposable_infinite_phi_zero"] = ph == 0
        checks["indecomposable_infinite_psi_zero"] = ps == 0
    doubled = Counter({c: 2 * k for c, k in counts.items()})
    checks["phi_add_invariant"] = phi_counts(doubled, eng) == ph
    checks["psi_add_invariant"] = _num(psi_counts(doubled, eng, cutoff)) == ps
    for c in ctx.ids:
        bigger = counts + Counter({c: 1})
        if c in x:
            checks[f"phi_ignores_projective_{c}"] = phi_counts(bigger, eng) == ph
            checks[f"psi_ignores_projective_{c}"] = _num(psi_counts(bigger, eng, cutoff)) == ps
        else:
            checks[f"phi_monotone_{c}"] = ph <= phi_counts(bigger, eng)
            checks[f"psi_monotone_{c}"] = ps <= _num(psi_counts(bigger, eng, cutoff))
    om = _counts_of(rel_syzygy(m, x, "minimal"), ctx.cat)
    checks["phi_syzygy_shift"] = ph <= phi_counts(om, eng) + 1
    checks["psi_syzygy_shift"] = ps <= _num(psi_counts(om, eng, cutoff)) + 1
    support = frozenset(eng.stable(counts))
    for n in range(ph + 1):
        for z in sorted(support):
            r = eng.class_pd(z, cutoff)
            if r.is_finite:
                checks[f"summand_bound_n{n}_c{z}"] = r.value + n <= ps
        support = eng.omega_support(support)
    # stripped carriers vanish exactly when the K-vectors do
    state = bracket(m, x)
    cur = m
    for k in range(1, 4):
        state = omega_step(state, x)
        cur = rel_syzygy(cur, x, "minimal")
        stripped_zero = strip(cur, x.contains, ctx.cat).dim == 0
        checks[f"vanishing_matches@{k}"] = stripped_zero == all(v.is_zero() for v in state.vectors())
    cert = {"pd": pdm.to_json(), "phi": ph, "psi": ps}
    return _verdict(key, checks, cert, lambda: {"carrier_phi": _oracle_phi(m, x), **_oracle_pd(m, x)})


def _sequence_cases(ctx: _Ctx, x: SubcatG, label: str, count: int) -> list[Case]:
    cutoff = ctx.cfg["cutoff"]
    eng = x.engine()
    seqs = sample_ef_sequences(x, ctx.mods, count, ctx.cfg["seed"])
    seen = set()
    cases = []
    for seq in seqs:
        ident = (seq.f.source.key(), seq.f.target.key(), b"".join(b.a.tobytes() for b in seq.f.blocks))
        if ident in seen:
            continue
        seen.add(ident)
        key = f"{ctx.label}/{label}/seq{len(seen) - 1}"
        cases.append(_guard(lambda: _inequality_case(ctx, x, eng, seq, key, cutoff), key))
    return cases


def _inequality_case(ctx, x, eng, seq: ShortExact, key, cutoff) -> Case:
    ca, cb, cc = (eng.classes(m) for m in (seq.a, seq.b, seq.c))
    pa, pb, pc = (eng.pd_counts(c, cutoff) for c in (ca, cb, cc))
    for r in (pa, pb, pc):
        _num(r)
    checks: dict[str, bool] = {}
    cert: dict[str, Any] = {"origin": seq.origin, "pd_a": pa.to_json(), "pd_b": pb.to_json(), "pd_c": pc.to_json()}
    if pc.is_finite:
        bound = _num(psi_counts(ca + cb, eng, cutoff)) + 1
        checks["pd_c_bound"] = pc.value <= bound
        cert["psi_ab_plus_1"] = bound
    if pb.is_finite:
        bound = _num(psi_counts(ca + eng.omega(cc), eng, cutoff)) + 1
        checks["pd_b_bound"] = pb.value <= bound
        cert["psi_a_omega_c_plus_1"] = bound
    if pa.is_finite:
        bound = _num(psi_counts(eng.omega(cb + cc), eng, cutoff)) + 1
        checks["pd_a_bound"] = pa.value <= bound
        cert["psi_omega_bc_plus_1"] = bound
    if not checks:
        return Case(key, "skip", "no term of finite relative pd", cert)

    def recheck():
        return {
            "c": _oracle_pd(seq.c, x),
            "payload": _fail_payload(ctx, {"A": seq.a, "B": seq.b, "C": seq.c}, cert),
        }

    return _verdict(key, checks, cert, recheck)


def _suite_main_inequality(ctx: _Ctx) -> list[Case]:
    cases = []
    for label, x in ctx.subcats():
        cases += _sequence_cases(ctx, x, label, ctx.cfg["samples"])
    return cases


def _chain_checks(fpd: float, phid: float, psid: float, pdd: float) -> dict[str, bool]:
    return {
        "fpd<=phidim": fpd <= phid,
        "phidim<=psidim": phid <= psid,
        "psidim<=pd": psid <= pdd,
        "psidim<=phidim+fpd": psid <= phid + fpd,
        "psidim<=2phidim": psid <= 2 * phid,
    }


def _suite_dim_chain(ctx: _Ctx) -> list[Case]:
    cases = []
    cutoff = ctx.cfg["cutoff"]
    for label, x in ctx.subcats():
        eng = x.engine()
        key = f"{ctx.label}/{label}/category"
        if not ctx.complete:
            cases.append(Case(key, "skip", "catalog is not a complete enumeration"))
        else:
            def whole():
                fpd = _num(_fpd(x, ctx.ids, cutoff))
                pdd = _num(_gldim(x, ctx.ids, cutoff))
                phd, psd = _itdim(ctx, x, "phi"), _itdim(ctx, x, "psi")
                vals = {"fpd": fpd, "phi_dim": _num(phd.value), "psi_dim": _num(psd.value), "pd": pdd}
                checks = _chain_checks(vals["fpd"], vals["phi_dim"], vals["psi_dim"], vals["pd"])
                cert = {k: _js(v) for k, v in vals.items()}
                cert.update(width=phd.width, exact=phd.exact and psd.exact)
                return _verdict(key, checks, cert)

            cases.append(_guard(whole, key))
        for counts in _small_sums(ctx):
            k2 = f"{ctx.label}/{label}/" + "+".join(f"c{c}" for c in sorted(counts))

            def single(counts=counts, k2=k2):
                r = eng.pd_counts(counts, cutoff)
                pdd = _num(r)
                fpd = pdd if r.is_finite else 0
                ph = phi_counts(counts, eng)
                ps = _num(psi_counts(counts, eng, cutoff))
                cert = {"fpd": _js(fpd), "phi": ph, "psi": ps, "pd": _js(pdd)}
                return _verdict(k2, _chain_checks(fpd, ph, ps, pdd), cert)

            cases.append(_guard(single, k2))
    return cases


def _perp_ids(x: SubcatG, ids: Sequence[int], cutoff: int) -> list[int]:
    eng = x.engine()
    out = []
    for c in ids:
        degs = [eng.ext_degree({c: 1}, x.witness(w), cutoff) for w in x.class_list]
        if all(d == PdResult.finite(0) for d in degs):
            out.append(c)
    return out


def _suite_perp_vanish(ctx: _Ctx) -> list[Case]:
    cases = []
    cutoff = ctx.cfg["cutoff"]
    for label, x in ctx.subcats():
        eng = x.engine()
        perp = _perp_ids(x, ctx.ids, cutoff)
        for counts in [Counter({c: 1}) for c in perp] + [Counter({a: 1, b: 1}) for a, b in itertools.combinations(perp, 2)]:
            key = f"{ctx.label}/{label}/perp/" + "+".join(f"c{c}" for c in sorted(counts))

            def one(counts=counts, key=key):
                ph = phi_counts(counts, eng)
                ps = _num(psi_counts(counts, eng, cutoff))
                checks = {"phi_zero": ph == 0, "psi_zero": ps == 0}
                if len(counts) == 1:
                    (c,) = counts
                    r = eng.class_pd(c, cutoff)
                    if c not in x:
                        checks["pd_not_finite"] = not r.is_finite
                    cert = {"phi": ph, "psi": ps, "pd": r.to_json()}
                else:
                    cert = {"phi": ph, "psi": ps}
                return _verdict(key, checks, cert)

            cases.append(_guard(one, key))
        for a, b in itertools.product(perp, repeat=2):
            key = f"{ctx.label}/{label}/stable-hom/c{a}-c{b}"
            m, n = ctx.cat.witness(a), ctx.cat.witness(b)
            before = stable_hom_dim(m, n, x)
            after = stable_hom_dim(rel_syzygy(m, x, "minimal"), rel_syzygy(n, x, "minimal"), x)
            cases.append(_verdict(key, {"stable_hom_preserved": before == after}, {"before": before, "after": after}))
    return cases


def _suite_finitistic_bound(ctx: _Ctx) -> list[Case]:
    cases = []
    cutoff = ctx.cfg["cutoff"]
    for label, x in ctx.subcats():
        key = f"{ctx.label}/{label}"
        if not ctx.complete:
            cases.append(Case(key, "skip", "catalog is not a complete enumeration"))
            continue

        def one(x=x, key=key):
            eng = x.engine()
            idr = rel_id_over(x.generator, x, None, cutoff)
            n = _num(idr)
            abs_id = _num(injdim(x.generator, cutoff))
            fpd = _num(_fpd(x, ctx.ids, cutoff))
            phd = _num(_itdim(ctx, x, "phi").value)
            psd = _num(_itdim(ctx, x, "psi").value)
            checks = {
                "fpd<=phidim": fpd <= phd,
                "phidim<=psidim": phd <= psd,
                "psidim<=id_rel": psd <= n,
                "id_rel<=id": n <= abs_id,
            }
            cert = {"id_rel": _js(n), "id": _js(abs_id), "fpd": _js(fpd), "phi_dim": _js(phd), "psi_dim": _js(psd)}
            if n != math.inf:
                shifted = []
                for c in ctx.ids:
                    s = frozenset({c}) if c not in x else frozenset()
                    for _ in range(int(n)):
                        s = eng.omega_support(s)
                    if s:
                        shifted.append(rep_from_classes({d: 1 for d in s}, ctx.cat))
                sphi = _num(_itdim(ctx, x, "phi", shifted).value) if shifted else 0
                spsi = _num(_itdim(ctx, x, "psi", shifted).value) if shifted else 0
                checks["phidim_of_nth_syzygies_zero"] = sphi == 0
                checks["psidim_of_nth_syzygies_zero"] = spsi == 0
            return _verdict(key, checks, cert)

        cases.append(_guard(one, key))
    return cases


def _dual_catalog(ctx: _Ctx) -> tuple[Algebra, IsoCatalog, list[Rep]]:
    aop = opposite(ctx.a)
    cat = catalog_for(aop)
    return aop, cat, [dual(m) for m in ctx.mods]


def _suite_frobenius(ctx: _Ctx) -> list[Case]:
    key = ctx.label
    if not ctx.complete:
        return [Case(key, "skip", "catalog is not a complete enumeration")]

    def one():
        cutoff = ctx.cfg["cutoff"]
        x = subcat_from_classes(ctx.cat, [], "proj")
        aop, cop, dmods = _dual_catalog(ctx)
        xop = subcat_from_classes(cop, [], "proj-op")
        phi_p = _num(_itdim(ctx, x, "phi").value)
        phi_i = _num(itdim_over(dmods, xop, "phi", cutoff, ctx.cfg["width"], algebra=aop).value)
        id_reg = _num(injdim(regular(ctx.a), cutoff))
        id_reg_op = _num(injdim(regular(aop), cutoff))
        frob = id_reg == 0 and id_reg_op == 0
        both_zero = phi_p == 0 and phi_i == 0
        cert = {"phi_proj_dim": phi_p, "phi_inj_dim": phi_i, "self_injective": frob}
        return _verdict(key, {"frobenius_iff_both_zero": frob == both_zero}, cert)

    return [_guard(one, key)]


def _nested_pairs(ctx: _Ctx) -> list[tuple[str, SubcatG, str, SubcatG]]:
    subs = ctx.subcats()
    return [(la, xa, lb, xb) for (la, xa), (lb, xb) in itertools.permutations(subs, 2) if xa.classes < xb.classes]


def _finite_pd_counts(x: SubcatG, ids: Sequence[int], cutoff: int) -> Counter:
    eng = x.engine()
    out = Counter()
    for c in ids:
        r = eng.class_pd(c, cutoff)
        _num(r)
        if r.is_finite:
            out[c] = 1
    return out


def _omega_power(eng, counts: Counter, s: int) -> Counter:
    cur = eng.stable(counts)
    for _ in range(s):
        cur = eng.omega(cur)
    return cur


def _triple_bound(ctx, x: SubcatG, xp: SubcatG, s: int, extra: Counter | None = None) -> tuple[float, float]:
    """(fpd_E, 1 + s + Psi_E(P(E') + Omega_E' Omega^s_E (finite-pd part)))."""
    cutoff = ctx.cfg["cutoff"]
    eng, engp = x.engine(), xp.engine()
    fin = _finite_pd_counts(x, ctx.ids, cutoff)
    fpd = _num(_fpd(x, ctx.ids, cutoff))
    shifted = engp.omega(_omega_power(eng, fin, s))
    base = Counter({c: 1 for c in xp.classes}) if extra is None else extra
    psi = _num(psi_counts(base + shifted, eng, cutoff))
    return fpd, 1 + s + psi


def _suite_triple_context(ctx: _Ctx) -> list[Case]:
    cases = []
    cutoff = ctx.cfg["cutoff"]
    for la, x, lb, xp in _nested_pairs(ctx):
        for s in (0, 1):
            key = f"{ctx.label}/{la}<{lb}/s{s}"

            def one(x=x, xp=xp, s=s, key=key):
                eng, engp = x.engine(), xp.engine()
                fpd, bound = _triple_bound(ctx, x, xp, s)
                checks = {"fpd_bound": fpd <= bound}
                cert = {"fpd": _js(fpd), "bound": _js(bound)}
                fin = _finite_pd_counts(x, ctx.ids, cutoff)
                shifted = _omega_power(eng, fin, s)
                pd_prime = sup_results(engp.class_pd(c, cutoff) for c in shifted)
                psi_gp = _num(psi_counts(Counter({c: 1 for c in xp.classes}), eng, cutoff))
                if not pd_prime.is_unknown and _num(pd_prime) <= 1:
                    checks["small_relative_pd_bound"] = fpd <= 1 + s + psi_gp
                    cert["psi_dim_of_projectives_prime"] = psi_gp
                if s == 0 and ctx.complete:
                    gl_prime = _gldim(xp, ctx.ids, cutoff)
                    if not gl_prime.is_unknown and _num(gl_prime) <= 1:
                        checks["global_dim_one_bound"] = fpd <= psi_gp + 1
                return _verdict(key, checks, cert)

            cases.append(_guard(one, key))
    for label, x in ctx.subcats():
        eng = x.engine()
        for n in (1, 2):
            sup = set(x.classes)
            for c in ctx.ids:
                sup |= _omega_power(eng, Counter({c: 1}), n).keys()
            xn = subcat_from_classes(ctx.cat, sup, f"{label}+syz{n}")
            for s in (0, 1):
                key = f"{ctx.label}/{label}/syzygy-class{n}/s{s}"

                def one(x=x, xn=xn, s=s, n=n, key=key, label=label):
                    fpd, bound = _triple_bound(ctx, x, xn, s)
                    checks = {"fpd_bound": fpd <= bound}
                    cert = {"fpd": _js(fpd), "bound": _js(bound), "classes": sorted(xn.classes)}
                    if label == "proj":
                        only_syz = Counter({c: 1 for c in xn.classes if c not in x})
                        fpd2, bound2 = _triple_bound(ctx, x, xn, s, only_syz)
                        checks["fpd_bound_without_projectives"] = fpd2 <= bound2
                    return _verdict(key, checks, cert)

                cases.append(_guard(one, key))
    return cases


def _suite_rep_dim(ctx: _Ctx) -> list[Case]:
    if not ctx.complete:
        return [Case(ctx.label, "skip", "representation-finite catalog not certified complete")]
    cutoff = ctx.cfg["cutoff"]
    m = auslander_generator(ctx.a, ctx.cat)
    xm = SubcatG(m, ctx.cat, "add(M)")
    cases = []
    for cid in ctx.ids:
        key = f"{ctx.label}/psi_addM/c{cid}"
        r = psi_counts({cid: 1}, xm.engine(), cutoff)
        cases.append(_verdict(key, {"psi_zero": r == PdResult.finite(0)}, {"psi": r.to_json()}))

    def findim_case():
        proj = subcat_from_classes(ctx.cat, [], "proj")
        fin = _num(_fpd(proj, ctx.ids, cutoff))
        psi_m = _num(psi_counts(_counts_of(m, ctx.cat), proj.engine(), cutoff))
        return _verdict(f"{ctx.label}/findim", {"findim<=psi(M)+1": fin <= psi_m + 1}, {"findim": fin, "psi_M": psi_m})

    cases.append(_guard(findim_case, f"{ctx.label}/findim"))
    return cases


def _suite_n_it(ctx: _Ctx) -> list[Case]:
    cases = []
    cutoff = ctx.cfg["cutoff"]
    for la, x, lb, xp in _nested_pairs(ctx):
        for n in (0, 1, 2):
            key = f"{ctx.label}/{la}<{lb}/n{n}"

            def one(x=x, xp=xp, n=n, key=key):
                eng, engp = x.engine(), xp.engine()
                shifted = set()
                for c in ctx.ids:
                    shifted |= _omega_power(eng, Counter({c: 1}), n).keys()
                pd_prime = _num(sup_results(engp.class_pd(c, cutoff) for c in sorted(shifted)))
                psi_gp = _num(psi_counts(Counter({c: 1 for c in xp.classes}), eng, cutoff))
                if pd_prime > 1 or psi_gp == math.inf:
                    return Case(key, "skip", "not an n-IT configuration", {"pd_prime": _js(pd_prime)})
                checks = {}
                for c in ctx.ids:
                    if not eng.class_pd(c, cutoff).is_finite:
                        continue
                    mod = ctx.cat.witness(c)
                    for _ in range(n):
                        mod = rel_syzygy(mod, x, "minimal")
                    v0, epi = x_precover(mod, xp, "minimal")
                    v1, inc = kernel(epi)
                    seq = ShortExact(inc, epi)
                    checks[f"sequence_c{c}"] = (
                        classify(v1, ctx.cat).support <= xp.classes and is_ef_exact(seq, x)
                    )
                fin = _num(_fpd(x, ctx.ids, cutoff))
                checks["findim_bound"] = fin <= n + 1 + psi_gp
                return _verdict(key, checks, {"findim": fin, "psi_dim_prime": psi_gp, "pd_prime": _js(pd_prime)})

            cases.append(_guard(one, key))
    return cases


def _cotilting_modules(ctx: _Ctx, limit: int = 400) -> list[tuple[str, Rep, int]]:
    out = []
    seen = set()
    for combo in itertools.islice(itertools.combinations(ctx.ids, ctx.a.n), limit):
        c = rep_from_classes({i: 1 for i in combo}, ctx.cat)
        try:
            d = _cotilting_degree(c, ctx.cfg["cutoff"])
        except NotCotilting:
            continue
        if combo not in seen:
            seen.add(combo)
            out.append(("+".join(f"c{i}" for i in combo), c, d))
    return out


def _suite_cotilting(ctx: _Ctx) -> list[Case]:
    if not ctx.complete:
        return [Case(ctx.label, "skip", "perpendicular classes need a complete catalog")]
    cases = []
    cutoff = ctx.cfg["cutoff"]
    absx = subcat_from_classes(ctx.cat, [], "proj")
    for name, c, d in _cotilting_modules(ctx):
        key = f"{ctx.label}/C={name}"

        def one(c=c, d=d, key=key):
            x = perp_cotilting_subcat(c, ctx.cat, cutoff)
            phd = _num(_itdim(ctx, x, "phi").value)
            psd = _num(_itdim(ctx, x, "psi").value)
            checks = {"phidim=id(C)": phd == d, "psidim=id(C)": psd == d}
            for s in (0, 1):
                fpd, bound = _triple_bound(ctx, absx, x, s)
                checks[f"fpd_bound_s{s}"] = fpd <= bound
            return _verdict(key, checks, {"id_C": d, "phi_dim": phd, "psi_dim": psd, "perp": sorted(x.classes)})

        cases.append(_guard(one, key))
    return cases


def _suite_stratified(ctx: _Ctx) -> list[Case]:
    if not ctx.complete:
        return [Case(ctx.label, "skip", "F(Delta) is filtered from a complete catalog")]
    cases = []
    cutoff = ctx.cfg["cutoff"]
    verts = list(ctx.a.vertices)
    orders = list(itertools.permutations(verts)) if len(verts) <= 3 else [tuple(verts), tuple(reversed(verts))]
    for order in orders:
        key = f"{ctx.label}/order=" + ",".join(map(str, order))

        def one(order=order, key=key):
            deltas = delta_modules(ctx.a, order)
            member = {c: fdelta_membership(ctx.cat.witness(c), deltas, cat=ctx.cat) for c in ctx.ids}
            if any(v is None for v in member.values()):
                return Case(key, "skip", "filtration search undecided")
            pcls = set(projective_classes(ctx.a, ctx.cat).values())
            fd = sorted(c for c, v in member.items() if v)
            if not pcls <= set(fd):
                return Case(key, "skip", "not standardly stratified for this order")
            x = subcat_from_classes(ctx.cat, fd, "F(Delta)")
            fpd = _num(_fpd(x, ctx.ids, cutoff))
            phd = _num(_itdim(ctx, x, "phi").value)
            psd = _num(_itdim(ctx, x, "psi").value)
            id_l = _num(injdim(regular(ctx.a), cutoff))
            checks = {"fpd<=phidim": fpd <= phd, "phidim<=psidim": phd <= psd, "psidim<=id": psd <= id_l}
            cert = {"fdelta": fd, "fpd": _js(fpd), "phi_dim": phd, "psi_dim": psd, "id": _js(id_l)}
            if all(hom_dim(d, d) == 1 for d in deltas):
                eng = absolute_engine(ctx.a, ctx.cat)
                idelta = [c for c in ctx.ids if all(eng.ext1(f, ctx.cat.witness(c)) == 0 for f in fd)]
                t = sorted(set(fd) & set(idelta))
                id_t = _num(injdim(rep_from_classes({c: 1 for c in t}, ctx.cat), cutoff))
                checks["quasi_hereditary_phidim=id(T)"] = phd == id_t
                checks["quasi_hereditary_psidim=id(T)"] = psd == id_t
                cert.update(tilting=t, id_T=_js(id_t))
            return _verdict(key, checks, cert)

        cases.append(_guard(one, key))
    return cases


def _suite_gorenstein(ctx: _Ctx) -> list[Case]:
    key = ctx.label
    if not ctx.complete:
        return [Case(key, "skip", "Gorenstein projectives are identified from a complete catalog")]
    cutoff = ctx.cfg["cutoff"]
    aop, cop, dmods = _dual_catalog(ctx)
    id_l = injdim(regular(ctx.a), cutoff)
    id_r = injdim(regular(aop), cutoff)
    proj = subcat_from_classes(ctx.cat, [], "proj")
    gl = _gldim(proj, ctx.ids, cutoff)
    if id_l == PdResult.finite(0):
        kind = "self-injective"
        gproj = subcat_from_classes(ctx.cat, ctx.ids, "Gproj=all")
        ginj_op = subcat_from_classes(cop, cop.ids(), "D(Ginj)=all")
    elif gl.is_finite:
        kind = "finite-global-dimension"
        gproj = proj
        ginj_op = subcat_from_classes(cop, [], "D(Ginj)=proj")
    else:
        return [Case(key, "skip", "Gorenstein projectives not known exactly for this algebra")]
    cases = []

    def dims():
        idv = _num(id_l)
        phd = _num(_itdim(ctx, gproj, "phi").value)
        psd = _num(_itdim(ctx, gproj, "psi").value)
        phd_op = _num(itdim_over(dmods, ginj_op, "phi", cutoff, ctx.cfg["width"], algebra=aop).value)
        psd_op = _num(itdim_over(dmods, ginj_op, "psi", cutoff, ctx.cfg["width"], algebra=aop).value)
        checks = {
            "gorenstein": id_l.is_finite and id_r.is_finite,
            "phidim=id": phd == idv,
            "psidim=id": psd == idv,
            "dual_phidim=id": phd_op == idv,
            "dual_psidim=id": psd_op == idv,
        }
        cert = {"kind": kind, "id": idv, "phi_dim": phd, "psi_dim": psd, "dual_phi_dim": phd_op, "dual_psi_dim": psd_op}
        return _verdict(f"{key}/dimensions", checks, cert)

    cases.append(_guard(dims, f"{key}/dimensions"))
    top = 3
    for a, b in itertools.product(ctx.ids, repeat=2):
        m, n = ctx.cat.witness(a), ctx.cat.witness(b)
        left = rel_ext_dims(m, n, gproj, top, "minimal")
        right = rel_ext_dims(dual(n), dual(m), ginj_op, top, "minimal")
        cases.append(
            _verdict(f"{key}/balance/c{a}-c{b}", {"balanced": left == right}, {"proj_side": left, "inj_side": right})
        )
    return cases


def _suite_resdim_oracle(ctx: _Ctx) -> list[Case]:
    cases = []
    cutoff, bound = ctx.cfg["cutoff"], ctx.cfg["bound"]
    for label, x in ctx.subcats():
        ok, why = resdim_hypothesis(x, cutoff)
        if not ok:
            cases.append(Case(f"{ctx.label}/{label}", "skip", f"hypothesis unmet: {why}"))
            continue
        for cid in ctx.ids:
            key = f"{ctx.label}/{label}/c{cid}"
            m = ctx.cat.witness(cid)
            r = x.engine().class_pd(cid, cutoff)
            if r.is_unknown:
                cases.append(Case(key, "skip", "relative pd unknown"))
                continue
            b = resdim_bruteforce(m, x, bound, seed=ctx.cfg["seed"])
            if r.is_finite and r.value <= bound:
                agree = b == r
            else:
                agree = not b.is_finite
            cert = {"rel_pd": r.to_json(), "bruteforce": b.to_json()}
            cases.append(_verdict(key, {"agree": agree}, cert, lambda m=m, x=x: _oracle_pd(m, x)))
    return cases


SUITES: dict[str, Callable[[_Ctx], list[Case]]] = {
    "schanuel": _suite_schanuel,
    "horseshoe": _suite_horseshoe,
    "phi-basic": _suite_phi_basic,
    "main-inequality": _suite_main_inequality,
    "dim-chain": _suite_dim_chain,
    "perp-vanish": _suite_perp_vanish,
    "finitistic-bound": _suite_finitistic_bound,
    "frobenius": _suite_frobenius,
    "triple-context": _suite_triple_context,
    "rep-dim": _suite_rep_dim,
    "n-IT": _suite_n_it,
    "cotilting": _suite_cotilting,
    "stratified": _suite_stratified,
    "gorenstein": _suite_gorenstein,
    "resdim-oracle": _suite_resdim_oracle,
}


def _compute(name: str, cfg: dict) -> SuiteReport:
    report = SuiteReport(name, cfg)
    for ctx in _contexts(cfg):
        report.cases.extend(SUITES[name](ctx))
    return report


def run_suite(name: str, config: dict | None = None, cache: CacheStore | None = None) -> SuiteReport:
    """Run one named suite; with a cache, the serialized report is stored and reused."""
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = normalize_config(config)
    if cache is None:
        return _compute(name, cfg)
    request = {"op": "check", "suite": name, "config": _request_config(cfg)}
    text = cache.fetch(request, lambda _req: _compute(name, cfg).dumps())
    return _report_from_text(text)


def _request_config(cfg: dict) -> dict:
    out = dict(cfg)
    out["algebras"] = [algebra_to_dict(_load(s)[1]) | {"label": _load(s)[0]} for s in cfg["algebras"]]
    return out


def _report_from_text(text: str) -> SuiteReport:
    import json

    d = json.loads(text)
    cases = [Case(c["key"], c["verdict"], c.get("reason"), c["certificate"]) for c in d["cases"]]
    return SuiteReport(d["suite"], d["config"], cases)
