import json

import pytest

from glkac.cache import cache_key, cache_load, cache_store, load_matrix, matrix_fields, store_matrix
from glkac.klmatrix import assemble_Aq, invert_unitriangular, window_between
from glkac.weights import Weight, parse_weight

LO = parse_weight("-1,-1|1,1")
HI = Weight((0, 0), (0, 0))


@pytest.fixture
def K():
    return invert_unitriangular(assemble_Aq(window_between(LO, HI)))


def test_roundtrip(tmp_path, K):
    store_matrix(tmp_path, "K", LO, HI, K)
    assert load_matrix(tmp_path, "K", LO, HI) == K


def test_miss_on_other_version(tmp_path, K):
    store_matrix(tmp_path, "K", LO, HI, K)
    assert load_matrix(tmp_path, "K", LO, HI, version="0.0.0-other") is None
    assert load_matrix(tmp_path, "A", LO, HI) is None


def test_key_is_canonical():
    f = matrix_fields("K", LO, HI)
    assert cache_key(f) == cache_key(dict(reversed(list(f.items()))))


def test_tampered_entry_ignored(tmp_path, K):
    path = store_matrix(tmp_path, "K", LO, HI, K)
    blob = json.loads(path.read_text())
    # break unitriangularity: zero out a diagonal polynomial
    for e in blob["payload"]["entries"]:
        if e["row"] == e["col"]:
            e["poly"] = [2]
            break
    path.write_text(json.dumps(blob))
    with pytest.warns(RuntimeWarning, match="ignoring cache entry"):
        assert load_matrix(tmp_path, "K", LO, HI) is None


def test_corrupt_file_ignored(tmp_path, K):
    path = store_matrix(tmp_path, "K", LO, HI, K)
    path.write_text("{not json")
    with pytest.warns(RuntimeWarning):
        assert load_matrix(tmp_path, "K", LO, HI) is None


def test_generic_store_has_no_temp_leftovers(tmp_path):
    cache_store(tmp_path, {"a": 1}, {"x": [1, 2]})
    assert cache_load(tmp_path, {"a": 1}) == {"x": [1, 2]}
    assert cache_load(tmp_path, {"a": 2}) is None
    assert cache_load(None, {"a": 1}) is None
    assert not list(tmp_path.glob(".tmp-*"))
