import json
import threading

from relit.cache import KEY_PREFIX, CacheStore, canonical, default_cache_dir, request_key


def test_canonical_text_is_order_free():
    assert canonical({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    assert request_key({"a": 1, "b": 2}) == request_key({"b": 2, "a": 1})
    assert request_key({"a": 1}).startswith(KEY_PREFIX)
    assert len(request_key({})) == len(KEY_PREFIX) + 64


def test_env_var_sets_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("RELIT_CACHE_DIR", str(tmp_path / "here"))
    assert default_cache_dir() == tmp_path / "here"
    assert CacheStore().root == tmp_path / "here"


def test_fetch_computes_once(tmp_path):
    store = CacheStore(tmp_path)
    calls = []

    def compute(req):
        calls.append(req)
        return canonical({"x": req["n"] * 2})

    assert store.fetch({"n": 2}, compute) == '{"x":4}'
    assert store.fetch({"n": 2}, compute) == '{"x":4}'
    assert len(calls) == 1
    entry = json.loads((tmp_path / f"{request_key({'n': 2})}.json").read_text())
    assert entry["request"] == {"n": 2}


def test_verify_detects_tampering(tmp_path):
    store = CacheStore(tmp_path)
    compute = lambda req: canonical({"v": req["n"]})  # noqa: E731
    for n in range(3):
        store.fetch({"n": n}, compute)
    assert all(r["ok"] for r in store.verify(compute))
    store.put({"n": 1}, canonical({"v": 99}))
    bad = [r for r in store.verify(compute) if not r["ok"]]
    assert len(bad) == 1
    assert store.clear() == 3
    assert list(store.entries()) == []


def test_concurrent_writers(tmp_path):
    store = CacheStore(tmp_path)
    errors = []

    def work(i):
        try:
            for n in range(20):
                store.fetch({"n": n}, lambda req: canonical({"v": req["n"]}))
        except Exception as exc:  # pragma: no cover - reported below
            errors.append(exc)

    threads = [threading.Thread(target=work, args=(i,)) for i in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert len(list(store.entries())) == 20
    assert not list(tmp_path.glob("*.tmp"))
