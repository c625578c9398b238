import json

import mpmath
import pytest

from cmunits.errors import NotSplitError
from cmunits.fields import get_field
from cmunits.lattice import LatticeBasis
from cmunits.verify import (
    cm_basis,
    epsilon_log_ledger,
    find_alpha,
    kersey_lhs,
    kersey_rhs,
    kersey_rhs_from_nu,
    norm_kernel,
    norm_representative,
    regrouping_exact,
    verify_distribution,
    verify_homogeneity,
    verify_kersey,
    verify_kersey_mult,
    verify_legendre,
    verify_lift_independence,
    verify_norm_unit_identities,
    verify_theta_a,
    verify_theta_two_path,
)


@pytest.mark.parametrize("d,p,n", [(4, 5, 1), (3, 7, 1), (8, 11, 1), (4, 13, 2)])
def test_cm_basis_splits_torsion(d, p, n):
    F = get_field(d)
    B = cm_basis(F, p, n)
    pin = F.pow(B.pi, n)
    pibn = F.pow(B.pi_bar, n)
    assert B.omega_p_n.mul_ok(F, pin).is_zero()
    assert B.omega_pbar_n.mul_ok(F, pibn).is_zero()
    assert (B.omega_p_n + B.omega_pbar_n) == B.omega_n
    assert B.omega_p_n.order == p**n


@pytest.mark.parametrize("d,p,n,size", [(4, 5, 1, 1), (3, 7, 1, 1), (8, 11, 1, 5), (4, 5, 2, 5)])
def test_norm_kernel_size(d, p, n, size):
    # |(O/p^n)^x| / (|(Z/p^n)^x| * w_K)
    ker = norm_kernel(d, p, n)
    F = get_field(d)
    assert len(ker) == size
    assert all(F.norm(b) % p**n == 1 for b in ker)


def test_representatives():
    F = get_field(4)
    for c in range(1, 5):
        a = norm_representative(F, 5, 1, c)
        assert (F.norm(a) - c) % 5 == 0
    assert F.norm(find_alpha(F, 9)) == 9


@pytest.mark.parametrize("d,p", [(4, 5), (3, 7)])
def test_regrouping_is_exact(d, p):
    assert regrouping_exact(d, p, 1)
    a = kersey_rhs(d, p, 1, 192).coords
    b = kersey_rhs_from_nu(d, p, 1, 192).coords
    with mpmath.workprec(224):
        assert max(abs(a[k] - b[k]) for k in a) < mpmath.mpf(2) ** -180


def test_kersey_small_instance():
    r = verify_kersey(4, 5, 1, 256)
    assert r.passed and r.details["kernel_size"] == 1 and r.details["regrouping_exact"]
    assert json.loads(r.to_json())["identity"] == "kersey"
    assert set(kersey_lhs(4, 5, 1, 192).coords) == {1, 2, 3, 4}


def test_kersey_mult_instance():
    r = verify_kersey_mult(4, 5, 1, 2, 9, 256)
    assert r.passed
    assert all(v["passed"] for v in r.details["per_identity"].values())
    with pytest.raises(ValueError):
        verify_kersey_mult(4, 5, 1, 1, 3, 256)


@pytest.mark.parametrize("d,p,n", [(4, 5, 1), (3, 7, 1), (4, 5, 2)])
def test_norm_units(d, p, n):
    assert verify_norm_unit_identities(d, p, n, 256).passed


def test_epsilon_ledger_symmetries():
    a = epsilon_log_ledger(4, 5, 1, 2, 3, 192)
    b = epsilon_log_ledger(4, 5, 1, 3, 2, 192, swap=True)
    c = epsilon_log_ledger(4, 5, 1, 2, 3, 192, Omega=mpmath.mpc("0.7", "1.9"))
    with mpmath.workprec(224):
        assert abs(a - b) < mpmath.mpf(2) ** -150
        assert abs(a - c) < mpmath.mpf(2) ** -150
    with pytest.raises(ValueError):
        epsilon_log_ledger(4, 5, 1, 0, 1)


@pytest.mark.parametrize("d,p", [(4, 5), (3, 7), (8, 11)])
def test_theta_properties(d, p):
    assert verify_distribution(d, p, 256).passed
    assert verify_lift_independence(d, p, 1, 256).passed
    assert verify_theta_two_path(d, p, 1, 256).passed
    assert verify_homogeneity(d, p, 256).passed


def test_theta_a_and_legendre():
    assert verify_theta_a(4, precision=256).passed
    assert verify_legendre(LatticeBasis.cm(3, mpmath.mpc("1.2", "-0.4"), 256), 256).passed


def test_split_required():
    with pytest.raises(NotSplitError):
        verify_kersey(4, 7, 1)
    # distribution and norm identities only need p prime to d_K
    assert verify_distribution(3, 5, 192).passed
    assert verify_norm_unit_identities(4, 7, 1, 192).passed
