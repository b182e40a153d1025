"""Content-addressed JSON cache for window matrices.

Entries are keyed by a hash of (kind, m, n, window bounds, code version).
Loads re-validate the matrix before handing it back; anything unreadable or
inconsistent is ignored with a warning and recomputed by the caller.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from pathlib import Path

from . import __version__
from .errors import GlkacError
from .klmatrix import TriangularQMatrix
from .weights import Weight, is_dominant, linear_extension_key

CODE_VERSION = __version__


def cache_key(fields: dict) -> str:
    blob = json.dumps(fields, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def matrix_fields(kind: str, lo: Weight, hi: Weight, version: str = CODE_VERSION) -> dict:
    return {
        "kind": kind,
        "m": lo.m,
        "n": lo.n,
        "lo": lo.to_json(),
        "hi": hi.to_json(),
        "version": version,
    }


def cache_store(directory, fields: dict, payload: dict) -> Path:
    """Write atomically: a temp file in the same directory, then os.replace."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{cache_key(fields)}.json"
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump({"key": fields, "payload": payload}, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_load(directory, fields: dict, validate=None):
    """Payload stored under ``fields``, or None on a miss or a rejected entry."""
    if directory is None:
        return None
    path = Path(directory) / f"{cache_key(fields)}.json"
    if not path.exists():
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            blob = json.load(fh)
        if blob.get("key") != fields:
            raise ValueError("stored key does not match")
        payload = blob["payload"]
        if validate is not None:
            validate(payload)
    except (OSError, ValueError, KeyError, TypeError, GlkacError) as exc:
        warnings.warn(f"ignoring cache entry {path.name}: {exc}", RuntimeWarning, stacklevel=2)
        return None
    return payload


def _validate_matrix(payload):
    M = TriangularQMatrix.from_json(payload)
    for w in M.window:
        if not is_dominant(w):
            raise ValueError(f"non-dominant window weight {w}")
    if list(M.window) != sorted(M.window, key=linear_extension_key):
        raise ValueError("window is not in linear-extension order")
    M.check()


def store_matrix(directory, kind: str, lo: Weight, hi: Weight, M: TriangularQMatrix) -> Path:
    return cache_store(directory, matrix_fields(kind, lo, hi), M.to_json())


def load_matrix(directory, kind: str, lo: Weight, hi: Weight, version: str = CODE_VERSION):
    payload = cache_load(directory, matrix_fields(kind, lo, hi, version), _validate_matrix)
    return None if payload is None else TriangularQMatrix.from_json(payload)
