import random
from fractions import Fraction

import pytest

from spinaction.cyclotomic import CyclotomicNumber, LaurentPoly
from spinaction.degree import (
    build_trace_system,
    check_nondegeneracy,
    conclude_bound,
    solve_degree,
    solve_index,
    verify_theorem_c,
)
from spinaction.errors import HypothesisNotMet, NonCyclicGroup, NotUnique
from spinaction.oracle import dense_solve
from spinaction.repring import GroupElement, GroupSpec, IndexData, RepElement
from spinaction.selftest import closed_form, nondegenerate_samples, random_index

T = GroupSpec.trivial()
Z2 = GroupSpec.even(2)


def kinds(system):
    return {e.element.label(system.index.group): e.kind for e in system.equations}


def test_furuta_system():
    system = build_trace_system(IndexData.furuta(1, 3))
    assert kinds(system) == {"φ": "zero", "J": "lambda"}
    j = next(e for e in system.equations if e.kind == "lambda")
    assert j.value.as_laurent() == LaurentPoly.constant(2)


def test_even_z2_system_with_both_t_positive():
    system = build_trace_system(IndexData.from_lists(Z2, [1, 1], [1, 2]))
    assert kinds(system) == {"φ": "zero", "φ·η": "zero", "J": "lambda", "J·η": "zero"}


def test_even_z2_system_with_t1_zero_has_no_fixed_lines_at_j_eta():
    # J*eta acts on h*zeta^i by +-i*(-1)^i and on 1~ by -1: nothing is fixed, so this is a
    # lambda equation rather than an undetermined one
    system = build_trace_system(IndexData.from_lists(Z2, [1, 1], [0, 3]))
    assert kinds(system)["J·η"] == "lambda"


def test_skipped_equation_leaves_degree_underdetermined():
    g = GroupSpec.odd_type(2)
    idx = IndexData.from_lists(g, [2, 0, 0, 0], [1, 1, 1, 1])
    system = build_trace_system(idx)
    assert kinds(system)["J·ν^2"] == "skipped"
    sol = solve_degree(system)
    assert sol.outcome == "underdetermined"
    assert [el.label(g) for el, _ in sol.skipped] == ["J·ν^2"]
    with pytest.raises(NotUnique):
        conclude_bound(sol, idx)


@pytest.mark.parametrize(
    "k,m", [(1, 3), (1, 5), (2, 4), (3, 7)],
)
def test_furuta_closed_form(k, m):
    sol = solve_index(IndexData.furuta(k, m))
    one, tilde = RepElement.one(T), RepElement.tilde(T)
    assert sol.alpha == (one - tilde) * Fraction(2) ** (m - 2 * k - 1)
    report = conclude_bound(sol)
    assert report.conclusion == "m ≥ 2k+1"
    assert report.holds_for_input == (m >= 2 * k + 1)


def test_even_z2_closed_form():
    idx = IndexData.from_lists(Z2, [1, 1], [2, 3])
    sol = solve_index(idx)
    z = RepElement.char(Z2, (1,))
    one, tilde = RepElement.one(Z2), RepElement.tilde(Z2)
    assert sol.alpha == (one + z) * (one - tilde) * 2
    assert conclude_bound(sol, idx).conclusion == "m ≥ 2k+2"


def test_odd_closed_form_p1():
    g = GroupSpec.odd_type(1)
    idx = IndexData.from_lists(g, [1, 1], [1, 2])
    sol = solve_index(idx)
    assert sol.alpha == closed_form(idx)
    report = conclude_bound(sol, idx)
    assert (report.conclusion, report.instantiated) == ("m ≥ 2k+1+p", "m ≥ 2k+1+1")
    assert not report.holds_for_input  # m = 3 < 4


@pytest.mark.parametrize("q", [2, 3])
def test_elementary_abelian_conclusion(q):
    g = GroupSpec.even(*([2] * q))
    for idx in nondegenerate_samples(random.Random(q), g, 3):
        report = conclude_bound(solve_index(idx), idx)
        assert report.conclusion == "m ≥ 2k+1+q"
        assert report.instantiated == f"m ≥ 2k+1+{q}"


@pytest.mark.parametrize(
    "group", [T, Z2, GroupSpec.even(2, 2), GroupSpec.odd_type(1), GroupSpec.odd_type(2),
              GroupSpec.odd_type(3)],
    ids=str,
)
def test_valuation_law(group):
    log_a = len(group.orders) if not group.odd else group.p
    for idx in nondegenerate_samples(random.Random(21), group, 4):
        sol = solve_index(idx)
        assert sol.alpha == closed_form(idx)
        report = conclude_bound(sol, idx)
        assert report.required_valuation == idx.m - 2 * idx.k - 1 - log_a


def test_resubstitution():
    rng = random.Random(5)
    for group in (Z2, GroupSpec.even(4), GroupSpec.odd_type(2)):
        for _ in range(5):
            system = build_trace_system(random_index(rng, group))
            sol = solve_degree(system)
            if not sol.is_unique:
                continue
            for eq in system.equations:
                got = sol.alpha.character(eq.element)
                if eq.kind == "zero":
                    assert got.is_zero()
                elif eq.kind == "lambda":
                    assert eq.value.as_laurent() == got


def test_monotone_information():
    rng = random.Random(6)
    for group in (Z2, GroupSpec.odd_type(1), GroupSpec.odd_type(2)):
        for idx in nondegenerate_samples(rng, group, 3):
            system = build_trace_system(idx)
            full = solve_degree(system)
            assert full.is_unique
            for eq in system.equations:
                sol = solve_degree(system.without(eq.element))
                assert sol.outcome in ("unique", "underdetermined")
                if sol.is_unique:
                    assert sol.alpha == full.alpha


def test_h_cutoff_irrelevance():
    rng = random.Random(7)
    for group in (T, Z2, GroupSpec.odd_type(2)):
        for idx in nondegenerate_samples(rng, group, 3):
            alphas = {str(solve_index(idx, h_cutoff=c).alpha) for c in (1, 2, 5, 8)}
            assert len(alphas) == 1
            assert not solve_index(idx).alpha.h_coeffs


@pytest.mark.parametrize("p", [1, 2])
def test_dense_oracle_agrees(p):
    rng = random.Random(100 + p)
    group = GroupSpec.odd_type(p)
    for _ in range(10):
        system = build_trace_system(random_index(rng, group), h_cutoff=3)
        sol = solve_degree(system)
        outcome, alpha = dense_solve(system)
        assert outcome == sol.outcome
        if outcome == "unique":
            assert alpha == sol.alpha


def test_inconsistent_when_lambda_value_has_a_pole():
    idx = IndexData.from_lists(Z2, [1, 1], [3, 0])
    sol = solve_index(idx)
    assert sol.outcome == "inconsistent"
    assert "denominator" in sol.certificate


# --- non-degeneracy ----------------------------------------------------------


def names_failing(conds):
    return [c.name for c in conds if not c.passed]


def test_nondegeneracy_odd_p1():
    g = GroupSpec.odd_type(1)
    assert names_failing(check_nondegeneracy(IndexData.from_lists(g, [1, 1], [1, 2]))) == []
    assert names_failing(check_nondegeneracy(IndexData.from_lists(g, [1, 1], [2, 2]))) == [
        "m ≠ 2k + b2+(X_1)"
    ]
    assert "b2+(X_1) > 0" in names_failing(check_nondegeneracy(IndexData.from_lists(g, [1, 1], [3, 0])))


def test_nondegeneracy_odd_p2_chain():
    g = GroupSpec.odd_type(2)
    # b2+(X_1) = t2 + t4 = 5 > b2+(X_2) = t4 = 3, so the chain holds
    assert names_failing(check_nondegeneracy(IndexData.from_lists(g, [1, 1, 0, 0], [1, 2, 0, 3]))) == []
    # t2 = 0 collapses the chain: b2+(X_1) = b2+(X_2)
    assert names_failing(check_nondegeneracy(IndexData.from_lists(g, [1, 1, 0, 0], [1, 0, 2, 3]))) == [
        "b2+(X_1) > b2+(X_2)"
    ]


def test_nondegeneracy_even():
    conds = check_nondegeneracy(IndexData.from_lists(Z2, [1, 1], [3, 0]))
    assert names_failing(conds) == ["b2+(X/A) ≠ 0"]
    conds = check_nondegeneracy(IndexData.from_lists(Z2, [1, 1], [0, 3]))
    assert names_failing(conds) == ["m ≠ b2+(X/η)"]


# --- pole certificate --------------------------------------------------------


def _series(num: list, den: list, order: int) -> list:
    """Power series coefficients of num/den at 0, assuming den[0] != 0."""
    inv0 = den[0].inverse()
    out = []
    rem = list(num) + [CyclotomicNumber.rational(0)] * (order + len(den))
    for i in range(order):
        c = rem[i] * inv0
        out.append(c)
        for j, d in enumerate(den):
            rem[i + j] = rem[i + j] - c * d
    return out


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_pole_certificate_even_z2(m):
    idx = IndexData.from_lists(Z2, [1, 1], [m, 0])
    rep = verify_theorem_c(idx)
    assert rep.certified
    # a Laurent polynomial would have a terminating expansion; this one keeps going
    num_lo, num = rep.trace.numerator.to_dense()
    _, den = rep.trace.denominator.to_dense()
    assert not den[0].is_zero()
    coeffs = _series(num, den, len(num) + 3)
    tail = coeffs[len(num):len(num) + 3]
    assert any(not c.is_zero() for c in tail)


def test_pole_certificate_odd():
    g = GroupSpec.odd_type(2)
    rep = verify_theorem_c(IndexData.from_lists(g, [0, 1, 1, 0], [1, 2, 1, 0]))
    assert rep.certified and rep.element == GroupElement.phi(1)


def test_pole_certificate_hypotheses():
    with pytest.raises(HypothesisNotMet):
        verify_theorem_c(IndexData.from_lists(Z2, [0, 0], [3, 0]))
    with pytest.raises(HypothesisNotMet):
        verify_theorem_c(IndexData.from_lists(Z2, [1, 1], [2, 1]))
    with pytest.raises(HypothesisNotMet):
        verify_theorem_c(IndexData.furuta(1, 3))
    with pytest.raises(NonCyclicGroup):
        verify_theorem_c(IndexData(GroupSpec.even(2, 2), {(0, 0): 2}, {(1, 0): 3}))
