import json

import pytest

from relit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_phi_example(capsys):
    code, out, _ = run(capsys, "phi", "L3", "S:1")
    assert code == 0 and out.strip() == '{"phi":2}'


def test_itdim_example(capsys):
    code, out, _ = run(capsys, "itdim", "L1", "--which", "psi")
    d = json.loads(out)
    assert d["psi_dim"] == 0 and d["width"] == 4


def test_module_and_algebra_files(capsys, tmp_path):
    alg = tmp_path / "L3.json"
    alg.write_text(json.dumps({
        "field_p": 2, "vertices": [1, 2, 3],
        "arrows": [{"label": "a", "from": 1, "to": 2}, {"label": "b", "from": 2, "to": 3}],
        "relations": ["ab"],
    }))
    mod = tmp_path / "S1.json"
    mod.write_text(json.dumps({"dimvec": [1, 0, 0], "arrows": {"a": [[0]], "b": []}}))
    code, out, _ = run(capsys, "phi", str(alg), str(mod))
    assert code == 0 and json.loads(out) == {"phi": 2}


def test_single_invariants(capsys):
    assert json.loads(run(capsys, "pd", "L3", "S:1")[1]) == {"pd": 2}
    assert json.loads(run(capsys, "id", "L3", "regular")[1]) == {"id": 2}
    assert json.loads(run(capsys, "pd", "L3", "S:1", "--rel", "S:2")[1]) == {"pd": 1}
    assert json.loads(run(capsys, "ext", "L3", "S:1", "S:3", "-n", "2")[1]) == {"ext": [0, 0, 1]}
    assert json.loads(run(capsys, "psi", "L4", "S:1")[1]) == {"psi": 0}
    assert json.loads(run(capsys, "pd", "L4", "S:1")[1])["pd"]["kind"] == "infinite"


def test_info_decompose_resolve_enumerate(capsys):
    info = json.loads(run(capsys, "info", "L3")[1])
    assert info["dim"] == 5 and info["projectives"]["1"] == [1, 1, 0]
    dec = json.loads(run(capsys, "decompose", "L3", "regular+S:2")[1])
    assert sorted(s["dimvec"] for s in dec["summands"]) == [[0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 1, 0]]
    res = json.loads(run(capsys, "resolve", "L3", "S:1", "-n", "3")[1])
    assert len(res["terms"]) == 3
    en = json.loads(run(capsys, "enumerate", "L2")[1])
    assert en["complete"] and len(en["modules"]) == 3


def test_output_is_idempotent(capsys):
    first = run(capsys, "itdim", "L3")[1]
    assert run(capsys, "itdim", "L3")[1] == first
    pretty = run(capsys, "itdim", "L3", "--pretty")[1]
    assert json.loads(pretty) == json.loads(first) and "\n  " in pretty


def test_check_exit_codes(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"algebra": "L3", "subcats": ["proj", "all"]}))
    code, out, _ = run(capsys, "check", "dim-chain", "--config", str(cfg))
    assert code == 0 and json.loads(out)["summary"]["fail"] == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"algebra":\n  }')
    code, _, err = run(capsys, "check", "dim-chain", "--config", str(bad))
    assert code == 2 and f"{bad}:2:3" in err
    cfg.write_text(json.dumps({"algebra": "L3", "subcats": ["nope"]}))
    assert run(capsys, "check", "dim-chain", "--config", str(cfg))[0] == 2


def test_config_with_module_files(capsys, tmp_path):
    (tmp_path / "g.json").write_text(json.dumps({"dimvec": [0, 1, 0], "arrows": {"a": [[0]], "b": [[0]]}}))
    (tmp_path / "c.json").write_text(json.dumps({"algebra": "L3", "subcats": ["generator: g.json"]}))
    code, out, _ = run(capsys, "check", "dim-chain", "--config", str(tmp_path / "c.json"))
    assert code == 0
    assert any(c["key"].startswith("L3/generator:g/") for c in json.loads(out)["cases"])


def test_bad_inputs(capsys):
    assert run(capsys, "phi", "L3", "Q:1")[0] == 2
    assert run(capsys, "phi", "L3", "S:9")[0] == 2
    assert run(capsys, "phi", "nofile.json", "S:1")[0] == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_cache_roundtrip(capsys):
    plain = run(capsys, "itdim", "L2", "--no-cache")[1]
    cached = run(capsys, "itdim", "L2", "--cache")[1]
    again = run(capsys, "itdim", "L2", "--cache")[1]
    assert plain == cached == again
    code, out, _ = run(capsys, "itdim", "L2", "--verify-cache")
    assert code == 0 and json.loads(out) == {"cached": True, "identical": True}
    code, out, _ = run(capsys, "cache", "verify")
    assert code == 0 and all(e["ok"] for e in json.loads(out)["entries"])
    code, out, _ = run(capsys, "cache", "clear")
    assert json.loads(out)["removed"] >= 1
