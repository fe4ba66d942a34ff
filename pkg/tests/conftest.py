"""Shared fixtures: each preset pipeline is built once per test session."""

import pytest

from galext.presets import build_extension, resolve_preset

_CACHE = {}


@pytest.fixture(scope="session")
def pipeline():
    """pipeline(name, backend=None) -> (RunConfig, RegularAlgebra, GaloisExtension)."""

    def get(name, backend=None):
        key = (name, backend)
        if key not in _CACHE:
            cfg = resolve_preset(name, backend=backend)
            _CACHE[key] = (cfg,) + build_extension(cfg)
        return _CACHE[key]

    return get
