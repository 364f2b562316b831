"""Acceptance criteria 1-9. Each test prints one PASS/FAIL line with its timing."""

import time
from contextlib import contextmanager

import pytest

from oracles import CLASS_DIMVECS, FINDIM, GLDIM, ID_REGULAR, PHI_DIM, PSI_DIM, SELF_INJECTIVE
from relit import FIXTURES, load_fixture
from relit.algebra import opposite
from relit.cache import CacheStore
from relit.checker import run_suite
from relit.homol import PdResult, injdim, sup_results
from relit.itcore import itdim_over
from relit.krull import catalog_for, classify, decompose, rep_from_classes
from relit.modcat import direct_sum, dual, regular
from relit.relexact import resdim_bruteforce, subcat_from_classes


@contextmanager
def criterion(capsys, number: int, title: str, limit: float):
    state = {"ok": False, "note": ""}
    t0 = time.perf_counter()
    try:
        yield state
    finally:
        dt = time.perf_counter() - t0
        ok = state["ok"] and dt < limit
        note = f" {state['note']}" if state["note"] else ""
        with capsys.disabled():
            verdict = "PASS" if ok else "FAIL"
            print(f"\ncriterion {number} [{title}]: {verdict} ({dt:.2f}s, limit {limit:.0f}s){note}")
    assert state["ok"], state["note"]
    assert dt < limit, f"took {dt:.2f}s, limit {limit}s"


def _dims(name):
    a = load_fixture(name)
    cat = catalog_for(a)
    mods = [cat.witness(c) for c in cat.ids()]
    x = subcat_from_classes(cat, [], "proj")
    eng = x.engine()
    pds = [eng.class_pd(c) for c in cat.ids()]
    return {
        "phi": itdim_over(mods, x, "phi").value,
        "psi": itdim_over(mods, x, "psi").value,
        "findim": sup_results(pds, finite_only=True),
        "gldim": sup_results(pds),
        "id": injdim(regular(a)),
    }


def _brute(name):
    """pd values by direct search, independent of precovers and the syzygy table."""
    a = load_fixture(name)
    cat = catalog_for(a)
    proj = subcat_from_classes(cat, [], "proj")
    pds = [resdim_bruteforce(cat.witness(c), proj, 4) for c in cat.ids()]
    aop = opposite(a)
    projop = subcat_from_classes(catalog_for(aop), [], "proj")
    finite = [r.value for r in pds if r.is_finite]
    return {
        "findim": max(finite, default=0),
        "gldim": max(finite) if all(r.is_finite for r in pds) else None,
        "id": resdim_bruteforce(dual(regular(a)), projop, 4),
    }


def _suite_failures(report):
    return [c.key for c in report.cases if c.verdict == "fail"]


def test_criterion_1_fixture_values(capsys):
    with criterion(capsys, 1, "fixture values", 5) as st:
        bad = []
        for name in FIXTURES:
            d, b = _dims(name), _brute(name)
            want = {
                "phi": PdResult.finite(PHI_DIM[name]),
                "psi": PdResult.finite(PSI_DIM[name]),
                "findim": PdResult.finite(FINDIM[name]),
                "id": PdResult.finite(ID_REGULAR[name]),
            }
            for k, v in want.items():
                if d[k] != v:
                    bad.append(f"{name}.{k}={d[k]}")
            if GLDIM[name] is None:
                if not d["gldim"].is_infinite:
                    bad.append(f"{name}.gldim={d['gldim']}")
            elif d["gldim"] != PdResult.finite(GLDIM[name]):
                bad.append(f"{name}.gldim={d['gldim']}")
            if b["findim"] != FINDIM[name]:
                bad.append(f"{name}.bruteforce_findim={b['findim']}")
            if b["gldim"] != GLDIM[name]:
                bad.append(f"{name}.bruteforce_gldim={b['gldim']}")
            if b["id"] != PdResult.finite(ID_REGULAR[name]):
                bad.append(f"{name}.bruteforce_id={b['id']}")
        st["ok"] = not bad
        st["note"] = ", ".join(bad)


def test_criterion_2_dim_chain(capsys):
    with criterion(capsys, 2, "dim-chain", 30) as st:
        r = run_suite("dim-chain")
        labels = {c.key.split("/")[1] for c in r.cases}
        covered = {"proj", "all"} <= labels and any(l.startswith("proj+") for l in labels)
        fails = _suite_failures(r)
        skips = [c.key for c in r.cases if c.verdict == "skip"]
        st["ok"] = covered and not fails and not skips
        st["note"] = f"{r.counts()} fails={fails[:3]} skips={skips[:3]}"


def test_criterion_3_main_inequality(capsys):
    with criterion(capsys, 3, "main-inequality", 60) as st:
        r = run_suite("main-inequality")
        finite_c = sum(
            1 for c in r.cases if c.verdict == "pass" and c.cert["pd_c"]["kind"] == "finite"
        )
        fails = _suite_failures(r)
        st["ok"] = finite_c >= 200 and not fails
        st["note"] = f"{finite_c} sequences with finite rel_pd(C), fails={fails[:3]}"


def test_criterion_4_frobenius(capsys):
    with criterion(capsys, 4, "frobenius", 10) as st:
        r = run_suite("frobenius")
        by = {c.key: c for c in r.cases}
        bad = [k for k, c in by.items() if c.verdict != "pass"]
        for name in FIXTURES:
            cert = by[name].cert
            dims = (cert["phi_proj_dim"], cert["phi_inj_dim"])
            if name in SELF_INJECTIVE and dims != (0, 0):
                bad.append(f"{name}:{dims}")
            if name not in SELF_INJECTIVE and dims == (0, 0):
                bad.append(f"{name}:{dims}")
        st["ok"] = not bad and len(by) == len(FIXTURES)
        st["note"] = ", ".join(bad)


def test_criterion_5_rep_dim(capsys):
    with criterion(capsys, 5, "rep-dim", 30) as st:
        r = run_suite("rep-dim")
        fails = _suite_failures(r)
        skips = [c.key for c in r.cases if c.verdict == "skip"]
        psi_cases = sum(1 for c in r.cases if "/psi_addM/" in c.key)
        findim_cases = sum(1 for c in r.cases if c.key.endswith("/findim"))
        st["ok"] = not fails and not skips and psi_cases == sum(map(len, CLASS_DIMVECS.values())) and findim_cases == 4
        st["note"] = f"{r.counts()} fails={fails[:3]}"


def test_criterion_6_resdim_oracle(capsys):
    with criterion(capsys, 6, "resdim-oracle", 120) as st:
        r = run_suite("resdim-oracle", {"bound": 4})
        fails = _suite_failures(r)
        compared = [c for c in r.cases if c.verdict == "pass"]
        infinite_seen = [c for c in compared if c.cert["rel_pd"]["kind"] == "infinite"]
        never_finite = all(c.cert["bruteforce"]["kind"] != "finite" for c in infinite_seen)
        st["ok"] = not fails and len(compared) > 0 and infinite_seen and never_finite
        st["note"] = f"{len(compared)} compared, {len(infinite_seen)} infinite, fails={fails[:3]}"


def test_criterion_7_perp_vanish(capsys):
    with criterion(capsys, 7, "perp-vanish", 30) as st:
        r = run_suite("perp-vanish")
        fails = _suite_failures(r)
        stable = sum(1 for c in r.cases if "/stable-hom/" in c.key)
        st["ok"] = not fails and stable > 0
        st["note"] = f"{r.counts()} fails={fails[:3]}"


def test_criterion_8_gorenstein(capsys):
    with criterion(capsys, 8, "gorenstein", 30) as st:
        r = run_suite("gorenstein")
        fails = _suite_failures(r)
        bad = []
        for name in FIXTURES:
            case = next(c for c in r.cases if c.key == f"{name}/dimensions")
            cert = case.cert
            if case.verdict != "pass" or cert["id"] != ID_REGULAR[name]:
                bad.append(name)
            elif name in SELF_INJECTIVE and cert["phi_dim"] != 0:
                bad.append(name)
            elif cert["phi_dim"] != cert["psi_dim"]:
                bad.append(name)
        balance = [c for c in r.cases if "/balance/" in c.key]
        st["ok"] = not fails and not bad and balance and all(c.verdict == "pass" for c in balance)
        st["note"] = f"{len(balance)} balance checks, bad={bad}, fails={fails[:3]}"


def test_criterion_9_determinism(capsys, tmp_path):
    with criterion(capsys, 9, "determinism", 60) as st:
        bad = []
        for name in FIXTURES:
            a = load_fixture(name)
            cat = catalog_for(a)
            mods = [cat.witness(c) for c in cat.ids()]
            mods += [direct_sum(m, n) for m in mods for n in mods]
            mods += [regular(a), dual(regular(a))]
            for m in mods:
                seen = {decompose(m, cat, seed=s).decomp for s in range(10)}
                if len(seen) != 1 or classify(m, cat) not in seen:
                    bad.append(f"{name}:{m.dimvec}")
            back = rep_from_classes(classify(regular(a), cat).counter(), cat)
            if classify(back, cat) != classify(regular(a), cat):
                bad.append(f"{name}:roundtrip")
        store = CacheStore(tmp_path / "store")
        for suite in ("dim-chain", "frobenius", "gorenstein"):
            plain = run_suite(suite).dumps()
            miss = run_suite(suite, cache=store).dumps()
            hit = run_suite(suite, cache=store).dumps()
            if not (plain == miss == hit):
                bad.append(f"cache:{suite}")
        st["ok"] = not bad
        st["note"] = ", ".join(bad[:5])


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
