import logging
import os
import threading

import pytest

from chowring.bv import BVRing
from chowring.cache import CacheIntegrityError, ResultCache, ring_fingerprint
from chowring.expr import parse
from chowring.hilbert import EGL, SetPartition
from chowring.polynomial import to_text


def test_get_on_empty_cache(tmp_path):
    c = ResultCache(tmp_path)
    assert c.get(("k", 1), "bv", "fp") is None
    assert c.misses == 1


def test_put_then_get(tmp_path):
    c = ResultCache(tmp_path)
    c.put(("k", 1), "bv", "fp", "24*o(1)*o(2)")
    assert c.get(("k", 1), "bv", "fp") == "24*o(1)*o(2)"
    # same value again is fine
    c.put(("k", 1), "bv", "fp", "24*o(1)*o(2)")


def test_write_once(tmp_path):
    c = ResultCache(tmp_path)
    c.put(("k",), "bv", "fp", "o(1)")
    with pytest.raises(CacheIntegrityError, match="cache integrity violation"):
        c.put(("k",), "bv", "fp", "o(2)")


def _only_record(path):
    (rec,) = [p for p in path.iterdir() if p.suffix == ".rec"]
    return rec


def test_corrupt_record_is_a_miss(tmp_path, caplog):
    c = ResultCache(tmp_path)
    c.put(("k",), "bv", "fp", "o(1)")
    rec = _only_record(tmp_path)
    rec.write_text("garbage")
    with caplog.at_level(logging.WARNING):
        assert c.get(("k",), "bv", "fp") is None
    assert "corrupt" in caplog.text


def test_truncated_record_is_a_miss(tmp_path, caplog):
    c = ResultCache(tmp_path)
    c.put(("k",), "bv", "fp", "o(1)")
    rec = _only_record(tmp_path)
    rec.write_text(rec.read_text()[:-1])
    with caplog.at_level(logging.WARNING):
        assert c.get(("k",), "bv", "fp") is None


def test_version_mismatch_is_a_miss(tmp_path, caplog):
    c = ResultCache(tmp_path)
    c.put(("k",), "bv", "fp", "o(1)")
    rec = _only_record(tmp_path)
    rec.write_text(rec.read_text().replace("chowring-cache v1", "chowring-cache v9"))
    with caplog.at_level(logging.WARNING):
        assert c.get(("k",), "bv", "fp") is None
    assert "version" in caplog.text


def test_record_is_human_readable(tmp_path):
    c = ResultCache(tmp_path)
    c.put(("k",), "hilbert", "abc", "c(T,2)")
    text = _only_record(tmp_path).read_text()
    assert text.startswith("chowring-cache v1\nring: hilbert\nfingerprint: abc\nkey: ")
    assert text.endswith("---\nc(T,2)\n")


def test_no_temp_files_left(tmp_path):
    c = ResultCache(tmp_path)
    for i in range(20):
        c.put(("k", i), "bv", "fp", f"{i}*o(1)")
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")]


def test_concurrent_readers_see_whole_records(tmp_path):
    c = ResultCache(tmp_path)
    value = " + ".join(f"{i}*o({i})" for i in range(1, 400))
    seen = []

    def reader():
        r = ResultCache(tmp_path)
        for _ in range(200):
            v = r.get(("big",), "bv", "fp")
            if v is not None:
                seen.append(v)

    threads = [threading.Thread(target=reader) for _ in range(4)]
    for t in threads:
        t.start()
    c.put(("big",), "bv", "fp", value)
    for t in threads:
        t.join()
    assert all(v == value for v in seen)


def test_pullbacks_through_cache(tmp_path):
    cache = ResultCache(tmp_path)
    p = parse("c(T,2)*c(O,1)", "hilbert")
    mu = SetPartition.parse("{1,2}{3}", 3)
    cold = EGL(BVRing(), cache).pullback(p, mu)
    warm_egl = EGL(BVRing(), cache)
    warm = warm_egl.pullback(p, mu)
    assert to_text(warm) == to_text(cold) == to_text(EGL().pullback(p, mu))
    assert cache.hits >= 1


def test_fingerprint_separates_rings():
    assert ring_fingerprint(BVRing()) != ring_fingerprint(BVRing(chi=5))
    assert ring_fingerprint(BVRing()) == ring_fingerprint(BVRing([[2]]))


def test_from_env(tmp_path, monkeypatch):
    monkeypatch.delenv("CHOWRING_CACHE_DIR", raising=False)
    assert ResultCache.from_env() is None
    monkeypatch.setenv("CHOWRING_CACHE_DIR", str(tmp_path / "c"))
    assert ResultCache.from_env().directory == str(tmp_path / "c")
