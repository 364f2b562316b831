import json

import pytest

from relit.checker import DEFAULT_CONFIG, SUITES, ConfigError, normalize_config, run_suite


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_passes_on_the_fixtures(suite):
    r = run_suite(suite)
    assert r.ok, [c.to_json() for c in r.cases if c.verdict == "fail"][:2]
    assert r.counts()["pass"] > 0
    for c in r.cases:
        if c.verdict == "skip":
            assert c.reason


@pytest.mark.parametrize("suite", ["dim-chain", "horseshoe", "phi-basic"])
def test_reports_are_deterministic(suite):
    assert run_suite(suite).dumps() == run_suite(suite).dumps()


def test_report_shape():
    r = run_suite("frobenius", {"algebras": ["L1"]})
    d = json.loads(r.dumps())
    assert d["suite"] == "frobenius"
    assert d["summary"] == {"pass": 1, "fail": 0, "skip": 0}
    assert d["cases"][0]["certificate"]["phi_proj_dim"] == 0


def test_dim_chain_values_on_l3():
    r = run_suite("dim-chain", {"algebras": ["L3"], "subcats": ["proj"]})
    cert = next(c.cert for c in r.cases if c.key == "L3/proj/category")
    assert (cert["fpd"], cert["phi_dim"], cert["psi_dim"], cert["pd"]) == (2, 2, 2, 2)


def test_class_list_subcategories():
    r = run_suite("resdim-oracle", {"algebras": ["L3"], "subcats": [{"classes": [1], "label": "withS2"}]})
    assert any(c.key.startswith("L3/withS2/") for c in r.cases)


def test_inline_generator_subcategory():
    gen = {"dimvec": [0, 1, 0], "arrows": {"a": [[0]], "b": [[0]]}}
    r = run_suite("dim-chain", {"algebras": ["L3"], "subcats": [{"generator": gen, "label": "g"}]})
    assert r.ok and any(c.key.startswith("L3/g/") for c in r.cases)


def test_config_errors():
    with pytest.raises(ConfigError):
        run_suite("no-such-suite")
    with pytest.raises(ConfigError):
        normalize_config({"bogus": 1})
    with pytest.raises(ConfigError):
        normalize_config({"cutoff": -1})
    with pytest.raises(ConfigError):
        run_suite("dim-chain", {"algebras": ["missing.json"]})
    with pytest.raises(ConfigError):
        run_suite("dim-chain", {"algebras": ["L3"], "subcats": ["weird"]})
    with pytest.raises(ConfigError):
        run_suite("dim-chain", {"algebras": ["L3"], "subcats": [{"classes": [99]}]})


def test_defaults_are_not_mutated():
    before = dict(DEFAULT_CONFIG)
    normalize_config({"algebra": "L1"})
    assert DEFAULT_CONFIG == before
