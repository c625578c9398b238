"""Parity between the compiled and pure-Python integer kernels, and both
against exact rational arithmetic."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cmunits import _kernels
from cmunits.exact import bernoulli_numbers, gen_bernoulli_table, is_prime
from cmunits.fields import DISCRIMINANTS, get_field
from cmunits.stick import nu_exponent

py = _kernels.python_backend
backends = [py] + ([_kernels.compiled_backend] if _kernels.compiled_backend is not None else [])
primes = st.integers(5, 400).filter(is_prime)


def _mod(x, p):
    return x.numerator * pow(x.denominator, -1, p) % p


def test_backend_flag():
    assert _kernels.BACKEND in ("cython", "python")
    if _kernels.BACKEND == "cython":
        assert _kernels.compiled_backend is not None


@pytest.mark.parametrize("be", backends, ids=lambda b: b.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize("p", [5, 7, 37, 61, 103, 211])
def test_bernoulli_mod_p_matches_exact(be, p):
    exact = bernoulli_numbers(p - 2)
    assert list(be.bernoulli_mod_p(p)) == [_mod(b, p) for b in exact]


@pytest.mark.parametrize("be", backends, ids=lambda b: b.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize("d", [3, 4, 8, 163])
@pytest.mark.parametrize("p", [23, 61, 103])
def test_gen_bernoulli_mod_p_matches_exact(be, d, p):
    F = get_field(d)
    exact = gen_bernoulli_table(p - 2, F.chi_K)
    got = be.gen_bernoulli_mod_p(p, d, list(F.chi_K.values), p - 2)
    assert list(got)[1:] == [_mod(b, p) for b in exact[1:]]


def test_kmax_guard():
    for be in backends:
        with pytest.raises(ValueError):
            be.bernoulli_mod_p(7, 6)


@given(primes, st.sampled_from(DISCRIMINANTS))
@settings(max_examples=25, deadline=None)
def test_backends_agree_mod_p(p, d):
    if len(backends) < 2 or d % p == 0:
        return
    cy = backends[1]
    assert list(cy.bernoulli_mod_p(p)) == list(py.bernoulli_mod_p(p))
    chi = list(get_field(d).chi_K.values)
    assert list(cy.gen_bernoulli_mod_p(p, d, chi, p - 2)) == list(py.gen_bernoulli_mod_p(p, d, chi, p - 2))


@pytest.mark.parametrize("d,p,n", [(4, 5, 1), (3, 7, 1), (8, 11, 1), (4, 5, 2), (7, 11, 1)])
def test_nu_class_sums_parity_and_oracle(d, p, n):
    F = get_field(d)
    pn = p**n
    chi_N = [F.chi(a) for a in range(d * pn)]
    ref = np.asarray(py.nu_class_sums(d, p, pn, chi_N))
    for be in backends[1:]:
        assert np.array_equal(np.asarray(be.nu_class_sums(d, p, pn, chi_N)), ref)
    # spot-check against the literal defining sum
    for c in (1, 2, p - 1):
        for b in (1, 3, d * pn - 1):
            assert nu_exponent(F, p, n, c, b) * d == -6 * int(ref[c % pn, b])


def test_benchmark_script_runs(capsys):
    import runpy
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    mod = runpy.run_path(str(path))
    code = mod["main"](["--quick", "--repeat", "1"])
    out = capsys.readouterr().out
    if _kernels.compiled_backend is None:
        assert code == 1
    else:
        assert code == 0 and "False" not in out
