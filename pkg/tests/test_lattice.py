from fractions import Fraction

import mpmath
import pytest
from mpmath import mpc, mpf

from cmunits.errors import LatticePointError
from cmunits.fields import get_field
from cmunits.lattice import (
    LatticeBasis,
    TorsionPoint,
    a_torsion,
    area_invariant,
    discriminant,
    eisenstein_g2,
    eisenstein_g3,
    klein_form,
    quasi_period,
    s2_invariant,
    sigma_weierstrass,
    siegel_function,
    theta_a,
    theta_definition,
    theta_fundamental,
    theta_siegel,
    tolerance,
    weierstrass_zeta,
    wp,
    wp_prime,
)

P = 192
TAUS = [mpc("0.11", "1.3"), mpc("-0.4", "0.95"), mpc("0.5", "0.8660254037844386")]
ZS = [mpc("0.23", "0.17"), mpc("-0.31", "0.4")]


def close(a, b, bits=P - 40):
    with mpmath.workprec(P + 32):
        return abs(a - b) <= mpf(2) ** (-bits) * max(1, abs(a), abs(b))


def _theta_oracle(tau, z):
    """sigma, wp on [tau, 1] from Jacobi theta_1 (independent of the q-series code)."""
    with mpmath.workprec(P + 40):
        q = mpmath.exp(mpmath.j * mpmath.pi * tau)
        pi = mpmath.pi
        t1p0 = mpmath.jtheta(1, 0, q, 1)
        t1ppp0 = mpmath.jtheta(1, 0, q, 3)
        eta1 = -pi**2 * t1ppp0 / (3 * t1p0)  # zeta(z + 1) = zeta(z) + eta1
        u = pi * z
        t0 = mpmath.jtheta(1, u, q)
        t1 = mpmath.jtheta(1, u, q, 1)
        t2 = mpmath.jtheta(1, u, q, 2)
        sigma = mpmath.exp(eta1 * z**2 / 2) * t0 / (pi * t1p0)
        wp_ = -eta1 - pi**2 * (t2 / t0 - (t1 / t0) ** 2)
        return sigma, wp_, eta1


@pytest.mark.parametrize("tau", TAUS)
@pytest.mark.parametrize("z", ZS)
def test_sigma_and_wp_against_jacobi_theta(tau, z):
    L = LatticeBasis(tau, 1, P)
    s_ref, wp_ref, eta1 = _theta_oracle(tau, z)
    assert close(sigma_weierstrass(L, z), s_ref)
    assert close(wp(L, z), wp_ref)
    assert close(quasi_period(L, 1), eta1)


@pytest.mark.parametrize("tau", TAUS)
def test_klein_j(tau):
    L = LatticeBasis(tau, 1, P)
    g2, D = eisenstein_g2(L), discriminant(L)
    with mpmath.workprec(P):
        J = mpmath.kleinj(tau)
        assert close(g2**3 / D, J)


@pytest.mark.parametrize("tau", TAUS)
def test_discriminant_and_ode(tau):
    L = LatticeBasis(tau * mpc("0.7", "0.2"), mpc("0.7", "0.2"), P)
    g2, g3, D = eisenstein_g2(L), eisenstein_g3(L), discriminant(L)
    with mpmath.workprec(P + 32):
        assert close(D, g2**3 - 27 * g3**2)
    for z in ZS:
        x, y = wp(L, z), wp_prime(L, z)
        with mpmath.workprec(P + 32):
            assert close(y * y, 4 * x**3 - g2 * x - g3, P - 60)


def test_quasi_periods_legendre_sign():
    L = LatticeBasis(TAUS[0], 1, P)
    e1, e2 = quasi_period(L, L.omega1), quasi_period(L, L.omega2)
    with mpmath.workprec(P):
        assert close(e2 * L.omega1 - e1 * L.omega2, 2 * mpmath.pi * mpmath.j)


def test_zeta_quasi_periodicity():
    L = LatticeBasis(TAUS[1], 1, P)
    z = ZS[0]
    with mpmath.workprec(P + 32):
        for w in (L.omega1, L.omega2, 2 * L.omega1 - L.omega2):
            assert close(weierstrass_zeta(L, z + w) - weierstrass_zeta(L, z), quasi_period(L, w), P - 60)


@pytest.mark.parametrize("c", [mpc("1.5", "-0.25"), mpc("0.2", "3")])
def test_homogeneity_of_building_blocks(c):
    L = LatticeBasis(TAUS[0], mpc("1.1", "0.3"), P)
    cL = L.scaled(c)
    z = ZS[1]
    with mpmath.workprec(P + 32):
        cz = c * z
        assert close(sigma_weierstrass(cL, cz), c * sigma_weierstrass(L, z))
        assert close(wp(cL, cz), wp(L, z) / c**2)
        assert close(discriminant(cL), discriminant(L) / c**12)
        assert close(area_invariant(cL), area_invariant(L) * abs(c) ** 2)
        assert close(s2_invariant(cL), s2_invariant(L) / c**2)
        assert close(klein_form(cL, cz), c * klein_form(L, z))
        assert close(theta_definition(cL, cz), theta_definition(L, z))


@pytest.mark.parametrize("d", [4, 3, 8])
@pytest.mark.parametrize("t", [TorsionPoint(Fraction(1, 5), Fraction(2, 5)),
                               TorsionPoint(Fraction(0), Fraction(1, 7)),
                               TorsionPoint(Fraction(3, 11), Fraction(-4, 11))])
def test_theta_two_paths(d, t):
    L = LatticeBasis.cm(d, mpc("0.8", "0.3"), P)
    a = theta_siegel(L, t)
    b = theta_definition(L, L.point(t))
    assert close(a, b, P - 64)
    # theta_fundamental uses the lift in [0, 1)^2; other lifts differ by a unimodular factor
    f = theta_fundamental(L, t)
    assert f == theta_siegel(L, t.canonical())
    with mpmath.workprec(P + 32):
        assert close(abs(f), abs(a))


def test_theta_abs_periodic_and_even():
    L = LatticeBasis.cm(4, 1, P)
    z = ZS[0]
    v = theta_definition(L, z)
    with mpmath.workprec(P + 32):
        assert close(abs(theta_definition(L, z + 3 * L.omega1 - 2 * L.omega2)), abs(v))
        assert close(theta_definition(L, -z), v)


def test_theta_unit_invariance():
    F = get_field(3)
    L = LatticeBasis.cm(F, 1, P)
    z = ZS[1]
    for u in F.units():
        with mpmath.workprec(P + 32):
            uz = F.to_complex(u, P + 32) * z
        assert close(theta_definition(L, uz), theta_definition(L, z))


def test_siegel_twelfth_power_and_klein():
    L = LatticeBasis(TAUS[0], 1, P)
    t = TorsionPoint(Fraction(1, 3), Fraction(1, 4))
    g = siegel_function(L, t)
    with mpmath.workprec(P + 32):
        assert close(g**12, theta_definition(L, L.point(t)))


def test_lattice_point_rejected():
    L = LatticeBasis.cm(4, 1, P)
    with pytest.raises(LatticePointError):
        theta_definition(L, L.omega1 + L.omega2)
    with pytest.raises(LatticePointError):
        theta_fundamental(L, TorsionPoint(1, 2))


def test_orientation_and_reduction():
    with pytest.raises(ValueError):
        LatticeBasis(1, mpc(0, 1))
    L = LatticeBasis(mpc("7.3", "0.2"), 1, P)
    R, M = L.reduced()
    assert abs(R.tau.real) <= 0.5 + 1e-30 and abs(R.tau) >= 1 - 1e-30
    t = TorsionPoint(Fraction(1, 5), Fraction(2, 7))
    with mpmath.workprec(P):
        assert close(R.point(L.transform_point(t)), L.point(t))


def test_torsion_point_arithmetic():
    t = TorsionPoint(Fraction(6, 5), Fraction(-1, 10))
    assert t.order == 10
    assert t == t.canonical()
    assert (t * 10).is_zero()
    F = get_field(4)
    # i acts by (a1, a2) -> (a2, -a1) on the basis (i, 1)
    assert TorsionPoint(Fraction(1, 5), Fraction(2, 5)).mul_ok(F, (0, 1)) == TorsionPoint(Fraction(2, 5), Fraction(-1, 5))


def test_a_torsion_sizes():
    F = get_field(4)
    assert len(a_torsion(F, (1, 1))) == 1
    pts = a_torsion(F, (3, 0))
    assert len(pts) == 8 and len(set(pts)) == 8
    for P_ in pts:
        assert P_.mul_ok(F, (3, 0)).is_zero()


@pytest.mark.parametrize("alpha", [(1, 1), (3, 0)])
def test_theta_a_two_definitions(alpha):
    L = LatticeBasis.cm(4, 1, P)
    theta_a(4, L, alpha, mpc("0.2345", "0.1113"))  # raises on disagreement


def test_theta_a_needs_cm_basis():
    with pytest.raises(ValueError):
        theta_a(4, LatticeBasis(TAUS[0], 1, P), (1, 1), ZS[0])


def test_tolerance():
    assert tolerance(256) == mpf(2) ** -192
