import logging

from pgl.cache import cache_key, cached, lookup, store
from pgl.records import Provenance, ResultRecord


def _record(value=1):
    return ResultRecord(
        config={"command": "repgrowth", "group": "S3"},
        quantity="r",
        ref="growth",
        rows=[{"n": 1, "r": value}],
        provenance=Provenance(version="0.1.0"),
    )


def test_miss_then_hit(tmp_path):
    """The first call computes, the second reads the stored record."""
    # Setup
    echo = {"command": "repgrowth", "group": "S3"}
    calls = []

    def compute():
        calls.append(1)
        return _record()

    # Execute
    first, first_hit = cached(tmp_path, echo, compute)
    second, second_hit = cached(tmp_path, echo, compute)

    # Verify
    assert (first_hit, second_hit) == (False, True)
    assert len(calls) == 1
    assert second.canonical() == first.canonical()


def test_no_cache_directory_always_computes():
    """Without a directory nothing is stored."""
    record, hit = cached(None, {}, _record)
    assert not hit
    assert record.rows == [{"n": 1, "r": 1}]


def test_key_depends_on_configuration_and_version():
    """Different echoes or versions hash to different keys."""
    echo = {"group": "S3"}
    assert cache_key(echo) == cache_key({"group": "S3"})
    assert cache_key(echo) != cache_key({"group": "S4"})
    assert cache_key(echo, "0.1.0") != cache_key(echo, "9.9.9")


def test_entry_of_another_version_is_a_miss(tmp_path):
    """Records written by another release are ignored."""
    store(tmp_path, "k", _record(), version="0.0.1")
    assert lookup(tmp_path, "k", version="0.1.0") is None
    assert lookup(tmp_path, "k", version="0.0.1").rows == [{"n": 1, "r": 1}]


def test_corrupt_entry_is_recomputed(tmp_path, caplog):
    """An unreadable entry is logged and replaced."""
    echo = {"group": "S3"}
    (tmp_path / f"{cache_key(echo)}.json").write_text("{broken")
    with caplog.at_level(logging.WARNING, logger="pgl.cache"):
        record, hit = cached(tmp_path, echo, lambda: _record(7))
    assert not hit
    assert record.rows[0]["r"] == 7
    assert "corrupt cache entry" in caplog.text
    assert cached(tmp_path, echo, lambda: _record(8))[0].rows[0]["r"] == 7


def test_store_leaves_no_temporary_files(tmp_path):
    """Only the final entry remains after a write."""
    path = store(tmp_path, "abc", _record())
    assert [p.name for p in tmp_path.iterdir()] == [path.name]
