"""Acceptance suite: the ten end-to-end criteria, all checked exactly.

Each test prints one ``PASS``/``FAIL`` line.  Run standalone with
``python tests/test_acceptance.py`` for just those lines.
"""

from collections import Counter
from fractions import Fraction

import pytest

from hsdirac.clifford import cg_oracle_compare, torus_kernel_dims, verify_algebra, verify_symbol
from hsdirac.sphere import (
    check_eigenvalue_bounds, kernel_dimension, spectrum_block, verify_adjoint_blocks, verify_gram,
    verify_s3_identities,
)

N_MAX = 6


@pytest.fixture
def announce(capsys):
    def _announce(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail
    return _announce


def test_criterion_01_algebraic_identities(announce):
    rep = verify_algebra(20)
    kinds = Counter(e.check for e in rep.entries)
    expected = ["adjoint.zero", "adjoint.plus", "adjoint.minus", "equivariance.zero", "equivariance.plus",
                "equivariance.minus", "clifford.plus", "clifford.minus", "clifford.zero_minus",
                "clifford.zero_plus", "casimir"]
    full = all(kinds[c] == 21 for c in expected)
    # two-argument identities run over all nine ordered pairs (e_i, e_j)
    full &= all(e.values["pairs"] == 9 for e in rep.entries if e.check.split(".")[0] in ("equivariance", "clifford"))
    announce(1, "adjointness, equivariance, Clifford relations, Casimir for m <= 20", rep.passed and full,
             f"{len(rep.entries)} checks, {len(rep.failures)} failures")


def test_criterion_02_cg_constants(announce):
    entries = [e for m in range(9) for e in cg_oracle_compare(m).entries]
    ok = all(e.passed for e in entries) and len(entries) == 27
    announce(2, "closed forms proportional to CG projections with the squared constants, m <= 8", ok,
             f"{sum(e.passed for e in entries)}/{len(entries)}")


def test_criterion_03_symbol_determinant(announce):
    rep = verify_symbol(9, 8)
    vanishing = all(e.values["vanishes"] == (e.params["m"] % 2 == 0) for e in rep.entries)
    announce(3, "det rho0_m(xi) polynomial identity (odd m <= 9), vanishing (even m <= 8)",
             rep.passed and vanishing and len(rep.entries) == 10)


def test_criterion_04_dirac_spectrum(announce):
    agg = Counter()
    reports = [spectrum_block(1, n, "d0") for n in range(N_MAX + 1)]
    for r in reports:
        for lam, mult, _ in r.eigenvalues:
            agg[lam] += mult
    ok = all(r.passed for r in reports)
    ok &= reports[1].as_dict() == {Fraction(-3, 2): 2, Fraction(5, 2): 6}
    # +(3/2 + k) lives on degree k, -(3/2 + k) on degree k + 1
    for k in range(N_MAX + 1):
        ok &= agg[Fraction(3, 2) + k] == (k + 1) * (k + 2)
        if k + 1 <= N_MAX:
            ok &= agg[-(Fraction(3, 2) + k)] == (k + 1) * (k + 2)
    ok &= all(abs(lam).denominator == 2 for lam in agg)
    announce(4, "D0 spectrum on S^3 for m = 1, n <= 6 is +-(3/2 + k) with multiplicity (k+1)(k+2)", ok)


def test_criterion_05_general_spectra(announce):
    bad = []
    count = 0
    for m in range(5):
        for n in range(N_MAX + 1):
            for op in ("d0", "dpdm", "dmdp", "lap", "laptilde"):
                r = spectrum_block(m, n, op)
                count += 1
                total = sum(mult for _, mult, _ in r.eigenvalues)
                if not (r.passed and total == (n + 1) ** 2 * (m + 1)
                        and r.details["annihilating_product_zero"]):
                    bad.append((m, n, op))
    announce(5, "closed-form spectra with full multiplicity accounting, m <= 4, n <= 6", not bad,
             f"{count} blocks, failing: {bad}")


def test_criterion_06_kernels(announce):
    dplus = [kernel_dimension("dplus", m) for m in range(5)]
    ok = [k.dimension for k in dplus] == [1, 4, 10, 20, 35]
    ok &= all(k.status == "pass" and k.certificate for k in dplus)
    tilde = [kernel_dimension("laptilde", 2 * p) for p in range(3)]
    ok &= [k.dimension for k in tilde] == [1, 4, 9] and all(k.status == "pass" for k in tilde)
    ok &= all(kernel_dimension("lap", m, N_MAX).dimension == 0 for m in range(1, 5))
    ok &= all(kernel_dimension("d0", m, N_MAX).dimension == 0 for m in (1, 3))
    announce(6, "ker D+ = 1,4,10,20,35; ker tilde Delta_2p = (p+1)^2; ker Delta = ker D0_odd = 0", ok)


def test_criterion_07_constant_curvature(announce):
    failures = [(m, n) for m in range(5) for n in range(N_MAX + 1) if not verify_s3_identities(m, n).passed]
    dd = verify_s3_identities(0, 1)
    dd_ok = next(e for e in dd.entries if e.check == "s3.commute_plus").passed
    announce(7, "commutations and Laplacian formulas, m <= 4, n <= 6; d d = 0 at m = 0",
             not failures and dd_ok, f"failing blocks: {failures}")


def test_criterion_08_adjointness(announce):
    failures = [(m, n) for m in range(4) for n in range(5) if not verify_adjoint_blocks(m, n).passed]
    gram = all(verify_gram(n, m).passed for n in range(3) for m in range(3))
    announce(8, "block adjointness m <= 3, n <= 4; Schur Gram = moment Gram for n <= 2",
             not failures and gram, f"failing blocks: {failures}")


def test_criterion_09_bounds(announce):
    reports = {m: check_eigenvalue_bounds(m, N_MAX) for m in range(5)}
    b1, b2 = reports[1], reports[2]
    checks1 = {e.check: e for e in b1.checks.entries}
    checks2 = {e.check: e for e in b2.checks.entries}
    ok = all(r.passed for r in reports.values())
    ok &= b1.lambda1 == Fraction(9, 4) and checks1["bounds.friedrich"].values["equality"] is True
    ok &= b2.lambda1 == 12 == b2.lambda_bound and checks2["bounds.lambda1_equality_kernel"].passed
    announce(9, "lambda1(Delta_1) = 9/4 = 3/8 * 6; lambda1(Delta_2) = 12 in ker tilde Delta_2; bounds m <= 4", ok,
             ", ".join(f"m={m}: lambda1={r.lambda1}, mu1={r.mu1}" for m, r in reports.items()))


def test_criterion_10_torus(announce):
    pairs = {m: torus_kernel_dims(m) for m in range(6)}
    ok = all(t.certificate.passed for t in pairs.values())
    for m, t in pairs.items():
        ok &= t.dplus == m + 1
        ok &= t.d0 == (m + 1 if m % 2 else None)  # 2p + 2 for m = 2p + 1
    announce(10, "flat torus kernels (2p+2, m+1) with rank/determinant certificates, m <= 5", ok,
             str({m: t.pair for m, t in pairs.items()}))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
