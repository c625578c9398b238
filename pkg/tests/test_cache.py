from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from cmunits import cache, lattice
from cmunits.exact import bernoulli_cache, bernoulli_number
from cmunits.lattice import LatticeBasis, discriminant


@given(st.fractions(), st.floats(allow_nan=False, allow_infinity=False), st.integers(100, 400))
def test_roundtrip_exact(tmp_path_factory, q, x, prec):
    d = tmp_path_factory.mktemp("c")
    c = cache.DiskCache(d)
    with mpmath.workprec(prec):
        v = mpmath.mpf(x) * mpmath.pi
        z = mpmath.mpc(v, -v / 3)
    c.put(("k", prec), [q, v, z])
    c.flush()
    back = cache.DiskCache(d).get(("k", prec))
    assert back[0] == q
    assert back[1]._mpf_ == v._mpf_
    assert back[2]._mpc_ == z._mpc_


def test_missing_key_counts_miss(tmp_path):
    c = cache.DiskCache(tmp_path)
    assert c.get(("nope",)) is None and c.misses == 1 and len(c) == 0
    c.flush()
    assert not (tmp_path / "cmunits-cache.json").exists()


def test_install_routes_q_series_and_bernoulli(tmp_path):
    L = LatticeBasis(mpmath.mpc("0.1", "1.7"), 1, 192)
    lattice._invariants.cache_clear()
    c = cache.install(tmp_path)
    try:
        cold = discriminant(L)
        bernoulli_number(40)
        assert c.misses >= 1
    finally:
        cache.uninstall()
    lattice._invariants.cache_clear()
    c2 = cache.install(tmp_path)
    try:
        warm = discriminant(L)
        assert c2.hits >= 1
        stored = c2.get(("bernoulli", "recurrence", "exact"))
        assert len(stored) >= 41 and stored[40] == bernoulli_number(40)
    finally:
        cache.uninstall()
    assert warm == cold
    assert len(bernoulli_cache()) >= 41
    assert bernoulli_number(2) == Fraction(1, 6)
