"""Cluster complexes, evolution flows, and foliations for Dynkin/Euclidean quivers.

Thin wrapper around the C++ core.  Exact values cross the boundary as JSON
(rationals as "p/q" strings); this module decodes the reports into dicts.
"""

import json as _json
import os as _os
import sys as _sys

try:
    from . import _core
except ImportError:  # in-tree build: extension lives in the CMake build dir
    _ext_dir = _os.environ.get("CFK_EXT_DIR")
    if not _ext_dir:
        raise
    _sys.path.insert(0, _ext_dir)
    import _core

Store = _core.Store
preset = _core.preset
betti = _core.betti
green_sequences = _core.green_sequences
duality_walk_ok = _core.duality_walk_ok


def trace(store, sink, start, sense="down", budget=10000):
    return _json.loads(_core.trace_json(store, sink, start, sense, budget))


def classify_foliation(store, sink, samples=3, budget=10000, seed=12345):
    return _json.loads(_core.classify_foliation_json(store, sink, samples, budget, seed))


def verify_green(store, base=0):
    return _json.loads(_core.verify_green_json(store, base))


def polygon_h1(store):
    return _json.loads(_core.polygon_h1_json(store))


def complex_dict(store):
    return _json.loads(store.to_json())
