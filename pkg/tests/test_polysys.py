from fractions import Fraction

import pytest

from bt1.errors import DimensionCeiling
from bt1.kappa import kappa_of_perm
from bt1.perm import Bt1Datum, refine
from bt1.polysys import (Equation, PolySystem, SignedMonomial,
                         check_certificate, default_certificate,
                         default_weights, eliminate_linear, finiteness_report,
                         gen_system, stabilizer_param, verify_stabilizer,
                         weight_search, weighted_degree)

FIVE_CYCLE = Bt1Datum(3, 2, (2, 3, 4, 5, 1))

GOLDEN_32_P2 = """\
x[2,1]^4 = + a[4,3] + a[5,3]*x[4,5]
x[3,1]^2 = + a[4,2] + a[4,3]*x[2,1]^2 + a[5,2]*x[4,5] + a[5,3]*x[2,1]^2*x[4,5]
x[4,1] = + a[4,1] + a[4,2]*x[2,1] + a[4,3]*x[3,1]
x[4,5]^2 = + a[5,1] + a[5,2]*x[2,1] + a[5,3]*x[3,1]"""


def test_golden_system():
    system = gen_system(refine(FIVE_CYCLE), 2)
    assert system.to_text() == GOLDEN_32_P2
    assert system.cover_exponent == 4


def test_single_linear_equation():
    system = gen_system(refine(Bt1Datum(1, 1, (2, 1))), 2)
    assert system.to_text() == "x[2,1] = + a[2,1]"
    assert not eliminate_linear(system).equations


def test_identity_system_empty():
    system = gen_system(refine(Bt1Datum(2, 2, (1, 2, 3, 4))), 2)
    assert not system.equations
    cert = default_certificate(system)
    assert cert.satisfied and cert.cover_degree == 1
    assert weight_search(system) == {}


def test_default_certificate_boundary():
    system2 = gen_system(refine(FIVE_CYCLE), 2)
    cert2 = default_certificate(system2)
    assert not cert2.satisfied
    # the boundary monomial sits at weighted degree exactly p^nubar
    assert any(wd == bound for _, _, wd, bound in cert2.violations)
    cert3 = default_certificate(gen_system(refine(FIVE_CYCLE), 3))
    assert cert3.satisfied and cert3.cover_degree == 81


def test_eliminate_linear():
    reduced = eliminate_linear(gen_system(refine(FIVE_CYCLE), 2))
    assert reduced.xvars == [(2, 1), (3, 1), (4, 5)]
    assert reduced.cyclic == ()


def test_eliminate_reports_cyclic():
    mono = SignedMonomial(sign=1, a_factors=(((2, 1), 1),),
                          x_powers=(((1, 1), 1),))
    system = PolySystem(p=2, equations={
        (1, 1): Equation(var=(1, 1), nu=0, monomials=(mono,))},
        cover_exponent=0)
    out = eliminate_linear(system)
    assert out.cyclic == ((1, 1),)
    assert (1, 1) in out.equations


def test_weight_search_rescues_p2():
    reduced = eliminate_linear(gen_system(refine(FIVE_CYCLE), 2))
    weights = weight_search(reduced)
    assert weights is not None
    assert all(w >= 1 for w in weights.values())
    assert check_certificate(reduced, weights, default=False).satisfied


def test_weight_search_dimension_ceiling():
    reduced = eliminate_linear(gen_system(refine(FIVE_CYCLE), 2))
    with pytest.raises(DimensionCeiling):
        weight_search(reduced, max_vars=2)


def test_eq16_identity():
    # default-weighted degree of a path monomial is p^nubar * kappa(path)
    for p in (2, 3):
        system = gen_system(refine(FIVE_CYCLE), p)
        weights = default_weights(system)
        nubar = max(eq.nu for eq in system.equations.values())
        for eq in system.equations.values():
            for m in eq.monomials:
                if m.source in ("gamma", "delta"):
                    kappa = sum(Fraction(n, p**t) for t, n in m.path_nt)
                    assert weighted_degree(m, weights) == p**nubar * kappa


def test_finiteness_verdicts():
    assert finiteness_report(FIVE_CYCLE, 2).verdict == "CertifiedSearched"
    assert finiteness_report(FIVE_CYCLE, 3).verdict == "CertifiedDefault"
    report5 = finiteness_report(FIVE_CYCLE, 5)
    assert report5.verdict == "CertifiedDefault"
    assert report5.degree_claim_asserted
    ident = finiteness_report(Bt1Datum(2, 2, (1, 2, 3, 4)), 2)
    assert ident.verdict == "CertifiedDefault" and ident.cover_exponent == 0


def test_stabilizer_param_small():
    param = stabilizer_param(refine(Bt1Datum(1, 1, (2, 1))))
    assert param.h12 == {(2, 1): ((1, 2), 1)}
    assert param.h2 == {}
    assert param.h23 == {(1, 2): ((1, 2), 0)}
    ident = stabilizer_param(refine(Bt1Datum(2, 2, (1, 2, 3, 4))))
    assert not ident.h12 and not ident.h2 and not ident.h23


def test_stabilizer_h2_support():
    table = refine(Bt1Datum(4, 4, (2, 3, 4, 5, 6, 7, 8, 1)))
    param = stabilizer_param(table)
    assert set(param.h2) == table.zero_zero
    assert len(param.h2) == 12


def test_verify_stabilizer():
    table = refine(FIVE_CYCLE)
    ok, _ = verify_stabilizer(table, 2, 2, trials=50, seed=3)
    assert ok
    ok9, _ = verify_stabilizer(table, 3, 2, trials=20, seed=4)
    assert ok9


def test_q_expansion_matches_h2():
    # each h2 entry y^(p^l) at pi^l(i0,j0) equals the q-factor of that
    # position under the level-1 reindexing x_(pi(i0,j0)) = y^p
    for datum in (FIVE_CYCLE, Bt1Datum(4, 4, (2, 3, 4, 5, 6, 7, 8, 1))):
        p = 2
        table = refine(datum)
        param = stabilizer_param(table)
        system = gen_system(table, p)
        inv_pi = {datum.apply(i): i for i in range(1, datum.r + 1)}
        for pos, (base, ell) in param.h2.items():
            eta = table.eta[pos]
            i, j = pos
            for _ in range(eta - 1):
                i, j = inv_pi[i], inv_pi[j]
            assert (i, j) == datum.apply_pair(base, 1)
            assert p ** (eta - 1) == p**ell // p
        assert set(system.equations) == {
            datum.apply_pair(pair, 1) for pair in table.minus_one}


def test_kappa_below_one_implies_default_certificate():
    for p in (2, 3, 5):
        if kappa_of_perm(FIVE_CYCLE, p).kappa_pi < 1:
            assert default_certificate(
                gen_system(refine(FIVE_CYCLE), p)).satisfied
