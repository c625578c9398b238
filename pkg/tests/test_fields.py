import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from cmunits.errors import NotSplitError, RamifiedPrimeError
from cmunits.exact import is_prime, primes_between
from cmunits.fields import (
    DISCRIMINANTS,
    all_fields,
    find_split,
    gauss_sum,
    get_field,
    is_split,
    kronecker_chi,
    kronecker_symbol,
)

fields = st.sampled_from(DISCRIMINANTS)
elems = st.tuples(st.integers(-50, 50), st.integers(-50, 50))


def _legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def test_nine_fields():
    assert [F.d_K for F in all_fields()] == [3, 4, 7, 8, 11, 19, 43, 67, 163]
    assert [F.w_K for F in all_fields()] == [6, 4, 2, 2, 2, 2, 2, 2, 2]
    with pytest.raises(ValueError):
        get_field(15)


@pytest.mark.parametrize("d", DISCRIMINANTS)
def test_character_is_primitive_odd_and_matches_legendre(d):
    F = get_field(d)
    assert F.chi_K.is_odd()
    for p in primes_between(3, 400):
        if d % p:
            assert F.chi(p) == _legendre(-d, p)


def test_kronecker_at_two():
    assert kronecker_symbol(-7, 2) == 1
    assert kronecker_symbol(-3, 2) == -1
    assert kronecker_symbol(-4, 2) == 0
    assert kronecker_chi(8, 3) == 1


@given(fields, elems, elems)
def test_norm_is_multiplicative(d, x, y):
    F = get_field(d)
    assert F.norm(F.mul(x, y)) == F.norm(x) * F.norm(y)


@given(fields, elems)
def test_conjugate_and_complex_embedding(d, x):
    F = get_field(d)
    assert F.mul(x, F.conj(x)) == (F.norm(x), 0)
    with mpmath.workprec(80):
        z = F.to_complex(x, 80)
        assert abs(abs(z) ** 2 - F.norm(x)) < mpmath.mpf(2) ** -60 * (1 + F.norm(x))
        zb = F.to_complex(F.conj(x), 80)
        assert abs(zb - mpmath.conj(z)) < mpmath.mpf(2) ** -60 * (1 + abs(z))


@pytest.mark.parametrize("d", DISCRIMINANTS)
def test_omega_satisfies_its_polynomial(d):
    F = get_field(d)
    with mpmath.workprec(128):
        w = F.omega_complex(128)
        assert abs(w * w - F.tr * w + F.nm) < mpmath.mpf(2) ** -120


@pytest.mark.parametrize(
    "d,p,pi", [(4, 5, (2, 1)), (3, 7, (2, 1)), (8, 17, (3, 2)), (8, 11, (3, 1))]
)
def test_find_split_choice(d, p, pi):
    s = find_split(d, p)
    assert s.pi == pi
    assert s.pi_bar == get_field(d).conj(pi)


@given(fields, st.integers(5, 3000))
def test_find_split_property(d, p):
    if not is_prime(p) or d % p == 0:
        return
    F = get_field(d)
    if not is_split(F, p):
        with pytest.raises(NotSplitError):
            find_split(F, p)
        return
    s = find_split(F, p)
    assert F.norm(s.pi) == p
    assert not F.divides(s.pi, s.pi_bar)


def test_split_preconditions():
    with pytest.raises(RamifiedPrimeError):
        is_split(4, 2)
    with pytest.raises(RamifiedPrimeError):
        is_split(43, 43)
    with pytest.raises(ValueError):
        is_split(4, 9)
    with pytest.raises(NotSplitError):
        find_split(4, 7)


def test_units():
    assert sorted(get_field(4).units()) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert len(get_field(3).units()) == 6


@pytest.mark.parametrize("d", DISCRIMINANTS)
def test_gauss_sum(d):
    g, pred = gauss_sum(d, 200)
    assert abs(g - pred) < mpmath.mpf(2) ** -180
    assert abs(g * g + d) < mpmath.mpf(2) ** -170
    assert math.isclose(float(abs(g)), math.sqrt(d))
