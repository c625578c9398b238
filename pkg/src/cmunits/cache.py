"""Persistent JSON cache for Bernoulli numbers and lattice q-series values.

Entries are keyed by ``(formula, params, precision)``.  Rationals are stored
as ``"num/den"`` strings and mpmath numbers as their raw ``(sign, man, exp,
bc)`` tuples, so a warm run reads back exactly the values a cold run computed.
"""
from __future__ import annotations

import json
import os
import tempfile
import threading
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import mpmath

from . import exact, lattice

__all__ = ["DiskCache", "install", "uninstall", "active_cache"]

_FILE = "cmunits-cache.json"


def _enc(v: Any) -> Any:
    if isinstance(v, Fraction):
        return {"q": f"{v.numerator}/{v.denominator}"}
    if isinstance(v, mpmath.mpf):
        return {"f": _mpf_tuple(v._mpf_)}
    if isinstance(v, mpmath.mpc):
        re, im = v._mpc_
        return {"c": [_mpf_tuple(re), _mpf_tuple(im)]}
    if isinstance(v, (list, tuple)):
        return [_enc(x) for x in v]
    raise TypeError(f"cannot cache {type(v).__name__}")


def _mpf_tuple(t):
    sign, man, exp, bc = t
    return [sign, str(int(man)), exp, bc]


def _raw(t):
    sign, man, exp, bc = t
    return (sign, mpmath.libmp.MPZ(int(man)), exp, bc)


def _dec(v: Any) -> Any:
    if isinstance(v, list):
        return [_dec(x) for x in v]
    if "q" in v:
        return Fraction(v["q"])
    if "f" in v:
        return mpmath.mp.make_mpf(_raw(v["f"]))
    re, im = v["c"]
    return mpmath.mp.make_mpc((_raw(re), _raw(im)))


def _key_str(key) -> str:
    return json.dumps(key, default=str, separators=(",", ":"))


class DiskCache:
    """A dictionary of encoded values persisted to ``<cache_dir>/cmunits-cache.json``."""

    def __init__(self, cache_dir) -> None:
        self.path = Path(cache_dir) / _FILE
        self._data: Dict[str, Any] = {}
        self._lock = threading.Lock()
        self._dirty = False
        self.hits = 0
        self.misses = 0
        if self.path.exists():
            with open(self.path) as fh:
                self._data = json.load(fh)

    def __len__(self) -> int:
        return len(self._data)

    def get(self, key) -> Optional[Any]:
        k = _key_str(key)
        with self._lock:
            raw = self._data.get(k)
            if raw is None:
                self.misses += 1
                return None
            self.hits += 1
        return _dec(raw)

    def put(self, key, value) -> None:
        enc = _enc(value)
        with self._lock:
            self._data[_key_str(key)] = enc
            self._dirty = True

    def flush(self) -> None:
        with self._lock:
            if not self._dirty:
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(self._data, fh, sort_keys=True)
            os.replace(tmp, self.path)
            self._dirty = False

    def load_bernoulli(self) -> int:
        """Push the stored prefix ``B_0..B_k`` into the in-memory table."""
        vals = self.get(("bernoulli", "recurrence", "exact"))
        if not vals:
            return 0
        exact.bernoulli_cache().load(dict(enumerate(vals)))
        return len(vals)

    def store_bernoulli(self) -> None:
        snap = exact.bernoulli_cache().snapshot()
        stored = self.get(("bernoulli", "recurrence", "exact")) or []
        if len(snap) > len(stored):
            self.put(("bernoulli", "recurrence", "exact"), [snap[k] for k in range(len(snap))])


_ACTIVE: Optional[DiskCache] = None


def install(cache_dir) -> DiskCache:
    """Attach a disk cache: preload Bernoulli numbers and route q-series
    evaluations through it."""
    global _ACTIVE
    c = DiskCache(cache_dir)
    c.load_bernoulli()
    lattice.set_invariant_store(c)
    _ACTIVE = c
    return c


def uninstall() -> None:
    """Write back and detach the active cache."""
    global _ACTIVE
    if _ACTIVE is not None:
        _ACTIVE.store_bernoulli()
        _ACTIVE.flush()
    lattice.set_invariant_store(None)
    _ACTIVE = None


def active_cache() -> Optional[DiskCache]:
    return _ACTIVE
