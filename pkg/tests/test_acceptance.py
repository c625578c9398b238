"""One test per acceptance criterion, each at its stated tolerance."""
import time
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from cmunits.cli import run
from cmunits.exact import gen_bernoulli, padic_valuation, primes_between
from cmunits.fields import DISCRIMINANTS, DirichletChar, get_field, is_split
from cmunits.lattice import LatticeBasis
from cmunits.padic import (
    exceptional_case,
    factorization_scalar,
    family_reads,
    paper_claims,
    reset_family_reads,
    scan_primes,
)
from cmunits.stick import admissible_norms, nu_table
from cmunits.verify import (
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

CM_INSTANCES = [(4, 5), (3, 7), (8, 11)]


def _num(s):
    return mpmath.mpmathify(s.strip("()").replace(" ", ""))


def _rel_error(report):
    # max_abs_diff is measured at working precision; lhs/rhs strings only fix the scale
    with mpmath.workprec(report.precision + 64):
        scale = max(max(abs(_num(v)) for v in report.lhs.values()), mpf(1))
        return mpf(report.max_abs_diff) / scale


def test_criterion_01_generalized_bernoulli(criterion_line):
    t0 = time.perf_counter()
    b = gen_bernoulli(7, DirichletChar.from_discriminant(-4))
    v = padic_valuation(b, 61)
    dt = time.perf_counter() - t0
    ok = b == Fraction(427, 2) and v == 1 and dt < 1.0
    criterion_line(1, ok, f"B_(7,chi_-4) = {b}, v_61 = {v}, {dt:.3f} s")
    assert ok


def test_criterion_02_criterion_tables(criterion_line):
    t0 = time.perf_counter()
    qi = scan_primes(4, 70)
    by = {v.p: v for v in qi}
    pass_set = sorted(p for p, v in by.items() if v.is_split and v.verdict)
    ok_qi = (pass_set == [5, 13, 17, 29, 41, 53]
             and by[37].failing_families() == ["B_m"]
             and by[61].witnesses == [(7, "B_m_chi")])
    q2 = scan_primes(8, 50)
    ok_23 = (11, "B_m_chi") in {v.p: v for v in q2}[23].witnesses
    q3 = scan_primes(3, 110)
    claims = paper_claims(4, qi) + paper_claims(8, q2) + paper_claims(3, q3)
    ids = {c["id"]: c for c in claims}
    flags_present = (all(f"Q2.pass_list.{p}.split_status" in ids for p in (7, 31, 47))
                     and "Q3.103.first_regular_fail" in ids
                     and ids["Q3.103.first_regular_fail"]["computed"]["regular"] is False)
    dt = time.perf_counter() - t0
    ok = ok_qi and ok_23 and flags_present and dt < 30
    disagree = sorted(c["id"] for c in claims if not c["agree"])
    criterion_line(2, ok, f"Q(i) pass set {pass_set}; 23 | B_11,chi; flagged {disagree}; {dt:.2f} s")
    assert ok


@pytest.mark.parametrize("d,p,n,prec", [(4, 5, 1, 256), (3, 7, 1, 256), (8, 11, 1, 320)])
def test_criterion_03_kersey(criterion_line, d, p, n, prec):
    t0 = time.perf_counter()
    r = verify_kersey(d, p, n, prec)
    rel = _rel_error(r)
    dt = time.perf_counter() - t0
    ok = r.passed and rel < mpf(2) ** -192 and dt < 300
    criterion_line(3, ok, f"Kersey ({d},{p},{n}) at {prec} bits: rel err {mpmath.nstr(rel, 3)}, {dt:.1f} s")
    assert ok


@pytest.mark.parametrize("d,p,n,c,Na", [(4, 5, 1, 1, 9), (4, 5, 1, 2, 9), (4, 5, 1, 3, 9),
                                        (4, 5, 1, 4, 9), (3, 7, 1, 2, 4)])
def test_criterion_04_kersey_mult(criterion_line, d, p, n, c, Na):
    r = verify_kersey_mult(d, p, n, c, Na, 256)
    rel = _rel_error(r)
    regroup = regrouping_exact(d, p, n)
    ok = r.passed and rel < mpf(2) ** -192 and regroup
    criterion_line(4, ok, f"Kersey_mult ({d},{p},{n},c={c},Na={Na}): rel err {mpmath.nstr(rel, 3)}, "
                          f"regrouping exact {regroup}")
    assert ok


def test_criterion_05_nu_integrality(criterion_line):
    cases = violations = 0
    for d in DISCRIMINANTS:
        F = get_field(d)
        for p in primes_between(5, 13):
            if d % p == 0 or not is_split(F, p):
                continue
            for n in (1, 2):
                tab = nu_table(F, p, n, strict=False)
                pn, N = p**n, d * p**n
                rows = tab.units_c()
                num = tab.num
                violations += int((num[rows] % d != 0).sum())
                for Na in admissible_norms(F, p):
                    idx = [(c * Na) % pn for c in rows]
                    # exponent = (Na nu(c, b) - nu(c Na, b)) / p^n with nu = num / d
                    e = Na * num[rows] - num[idx]
                    violations += int((e % N != 0).sum())
                cases += 1
    ok = violations == 0 and cases > 0
    criterion_line(5, ok, f"{cases} (field, p, n) tables, {violations} non-integral entries")
    assert ok


def test_criterion_06_theta_properties(criterion_line):
    P = 256
    failed = []
    for d, p in CM_INSTANCES:
        for name, fn in [("two-path", lambda: verify_theta_two_path(d, p, 1, P)),
                         ("homogeneity", lambda: verify_homogeneity(d, p, P)),
                         ("distribution", lambda: verify_distribution(d, p, P)),
                         ("lift", lambda: verify_lift_independence(d, p, 1, P))]:
            if not fn().passed:
                failed.append(f"{name}({d},{p})")
        if not verify_legendre(LatticeBasis.cm(d, mpmath.mpc("0.9", "0.35"), P), P).passed:
            failed.append(f"legendre({d})")
    ok = not failed
    criterion_line(6, ok, f"theta properties at 2^-(P-64), P = {P}: failures {failed}")
    assert ok


def test_criterion_07_theta_a(criterion_line):
    r = verify_theta_a(4, alphas=((1, 1), (3, 0)), precision=256)
    criterion_line(7, r.passed, f"theta_a quotient vs product, alpha in {{1+i, 3}}: diff {r.max_abs_diff}")
    assert r.passed


def test_criterion_08_factorization_scalars(criterion_line):
    fs = factorization_scalar(4, 5, 2)
    ok_a2 = fs.coefficient == -2 and fs.euler_ratio == 1 + 5 ** (2 - 1)
    reset_family_reads()
    for m in range(2, 41):
        factorization_scalar(4, 5, m)
    reads = family_reads()
    cross = reads.get(("B_m", "odd"), 0) + reads.get(("B_m_chi", "even"), 0)
    vsc = [exceptional_case(4, 5, m) for m in (4, 8, 20, 100)]
    vsc += [exceptional_case(3, 7, m) for m in (6, 42)]
    ok_vsc = all(r["computed"] == r["predicted"] for r in vsc)
    ok = ok_a2 and cross == 0 and ok_vsc
    criterion_line(8, ok, f"A_2(Q(i)) = {fs.coefficient}, Euler ratio {fs.euler_ratio}, cross reads {cross}, "
                          f"vSC valuations {[r['computed'] for r in vsc]}")
    assert ok


@pytest.mark.parametrize("d,p,n", [(4, 5, 1), (3, 7, 1)])
def test_criterion_09_norm_units(criterion_line, d, p, n):
    r = verify_norm_unit_identities(d, p, n, 256)
    criterion_line(9, r.passed, f"norm-unit identities ({d},{p},{n}): diff {r.max_abs_diff}")
    assert r.passed


def _split_fields(rep):
    """Separate a report into exact content and numeric (tolerance-carrying) entries."""
    exact, numeric = {}, []
    exact["command"] = rep["command"]
    exact["config"] = rep["config"]
    exact["paper_claims"] = rep["paper_claims"]
    exact["version"] = rep["version"]
    res = []
    for r in rep["results"]:
        r = dict(r)
        r.pop("wall_time", None)
        if "tolerance" in r:
            numeric.append((r.pop("lhs"), r.pop("rhs"), r["tolerance"]))
            r.pop("max_abs_diff")
        res.append(r)
    exact["results"] = res
    return exact, numeric


def test_criterion_10_determinism(criterion_line, capsys):
    commands = [
        ["bernoulli", "--m", "0..40", "--chi", "-3", "--vp", "5", "7", "11"],
        ["verify", "kersey", "--dK", "4", "--p", "5"],
        ["verify", "norm-units", "--dK", "3", "--p", "7"],
        ["criterion", "--dK", "4", "--pmax", "100"],
        ["nu-table", "--dK", "3", "--p", "7", "--n", "2"],
    ]
    bad = []
    for argv in commands:
        a, b = run(argv)[1], run(argv)[1]
        ea, na = _split_fields(a)
        eb, nb = _split_fields(b)
        if ea != eb:
            bad.append(" ".join(argv))
            continue
        for (la, ra, tol), (lb, rb, _) in zip(na, nb):
            with mpmath.workprec(400):
                t = mpf(tol)
                for k in la:
                    for x, y in ((la[k], lb[k]), (ra[k], rb[k])):
                        if abs(_num(x) - _num(y)) > t * max(1, abs(_num(x))):
                            bad.append(" ".join(argv))
    capsys.readouterr()
    ok = not bad
    criterion_line(10, ok, f"{len(commands)} commands re-run; mismatches {bad}")
    assert ok
