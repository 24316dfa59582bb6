import itertools
import random
from fractions import Fraction

import pytest

from spinaction.errors import HypothesisFailed, ParityError, SpinConditionFailed
from spinaction.topology import (
    Diagonal,
    FixedSetDescription,
    Hyperbolic,
    IntersectionForm,
    ManifoldSpec,
    SurfaceClass,
    class_square,
    classify_qk3_involution,
    connected_sum_cp2,
    cover_invariants,
    genus_bound,
    index_from_cover,
    involution_quotient_arith,
    is_characteristic_mod2,
    k3_cover_construction_check,
    s2xs2_sum_cp2,
    spin_type_from_fixed_set,
)

D11 = IntersectionForm.diagonal(1, 1)
HD = IntersectionForm((Hyperbolic(1), Diagonal((1,))))


def test_form_invariants():
    f = IntersectionForm((Hyperbolic(2), Diagonal((1, -1, -1))))
    assert (f.rank, f.b2plus, f.b2minus, f.signature) == (7, 3, 4, -1)
    assert IntersectionForm.from_json(f.to_json()) == f
    M = ManifoldSpec("M", f)
    assert M.euler == 9


def test_class_square():
    assert class_square(D11, (6, 2)) == 40
    assert class_square(HD, ((4, 4), 6)) == 68
    assert class_square(HD, (0, 0, 0)) == 0


def _characteristic_oracle(form, coords):
    # check c.y = y.y mod 2 for every y in {0,1}^rank
    q = form.matrix()
    n = len(coords)
    for y in itertools.product((0, 1), repeat=n):
        cy = sum(coords[i] * q[i][j] * y[j] for i in range(n) for j in range(n))
        yy = sum(y[i] * q[i][j] * y[j] for i in range(n) for j in range(n))
        if (cy - yy) % 2:
            return False
    return True


def test_characteristic():
    assert is_characteristic_mod2(D11, (3, 1))
    assert is_characteristic_mod2(HD, ((2, 2), 3))
    assert not is_characteristic_mod2(D11, (2, 1))
    rng = random.Random(3)
    forms = [D11, HD, IntersectionForm((Hyperbolic(1), Diagonal((1, -1))))]
    for _ in range(60):
        f = rng.choice(forms)
        c = tuple(rng.randint(-3, 3) for _ in range(f.rank))
        assert is_characteristic_mod2(f, c) == _characteristic_oracle(f, c)


def test_cover_invariants_cp2():
    cp2 = connected_sum_cp2(1)
    inv = cover_invariants(cp2, SurfaceClass((6,)), 10, 1)
    assert inv.k == 1 and inv.m0 == 3


def test_cover_invariants_two_cp2():
    M = connected_sum_cp2(2)
    inv = cover_invariants(M, SurfaceClass((4, 4)), 6, 2)
    sq, b = 32, M.b2plus
    # m_i = 2^{p-i} b2+ + (2^{p-i} - 1) g - (4^{p-i} - 1) / (6 * 2^{p-i}) [S]^2
    want = [
        (1 << (2 - i)) * b + ((1 << (2 - i)) - 1) * 6 - Fraction(4 ** (2 - i) - 1, 6 * (1 << (2 - i))) * sq
        for i in range(3)
    ]
    assert inv.m == want
    assert inv.m[2] == M.b2plus == 2
    assert inv.k == 2


def test_cover_invariants_spin_failure():
    with pytest.raises(SpinConditionFailed):
        cover_invariants(connected_sum_cp2(1), SurfaceClass((5,)), 3, 1)


def test_cover_invariants_monotone():
    for n in range(2, 6):
        M = connected_sum_cp2(n)
        for g in range(3 * n, 40):
            m = cover_invariants(M, SurfaceClass((4,) * n), g, 2).m
            assert m[2] == M.b2plus
            assert m[0] >= m[1] >= m[2]


def test_index_from_cover_unwinding():
    M = connected_sum_cp2(2)
    cons = index_from_cover(M, SurfaceClass((6, 2)), 10, 1)
    m = cons.partial_sums
    assert dict(cons.t_block_sums()) == {(2,): m[1], (1,): m[0] - m[1]}
    cons = index_from_cover(M, SurfaceClass((4, 4)), 6, 2)
    m = cons.partial_sums
    assert dict(cons.t_block_sums()) == {(4,): m[2], (2,): m[1] - m[2], (1, 3): m[0] - m[1]}
    assert cons.s_total == 2 * cons.k


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_chain_condition_is_g_not_3n(n):
    # m1 - m2 = g - 3N; below g = 3N the quotient would have larger b2+ than the cover,
    # so on the realizable range the chain condition is exactly g != 3N
    M = connected_sum_cp2(n)
    for g in range(3 * n - 1, 3 * n + 6):
        cons = index_from_cover(M, SurfaceClass((4,) * n), g, 2)
        m = cons.partial_sums
        assert m[1] - m[2] == g - 3 * n
        chain = next(c for c in cons.nondegeneracy() if c.name == "b2+(X_1) > b2+(X_2)")
        if g >= 3 * n:
            assert chain.passed == (g != 3 * n)


def test_genus_examples():
    r = genus_bound(connected_sum_cp2(2), SurfaceClass((6, 2)), 1)
    assert r.effective_min_genus == 10
    r = genus_bound(s2xs2_sum_cp2(), SurfaceClass((4, 4, 6)), 1)
    assert r.effective_min_genus == 19
    r = genus_bound(connected_sum_cp2(2), SurfaceClass((4, 4)), 2)
    assert (r.refined_bound, r.excluded_genera, r.effective_min_genus) == (Fraction(19, 3), [6], 6)
    r = genus_bound(connected_sum_cp2(6), SurfaceClass((4,) * 6), 2)
    assert (r.refined_bound, r.excluded_genera, r.effective_min_genus) == (Fraction(51, 3), [18], 17)


@pytest.mark.parametrize("n", range(2, 13))
def test_sweep(n):
    r = genus_bound(connected_sum_cp2(n), SurfaceClass((4,) * n), 2)
    assert r.refined_bound == Fraction(8 * n + 3, 3)
    assert r.effective_min_genus == (3 * n if n <= 5 else -(-(8 * n + 3) // 3))


def _double_cover_bound(M, sq):
    return Fraction(5, 4) * (Fraction(sq, 4) - M.signature) - M.b2 + 2


def test_p1_matches_double_cover_formula():
    rng = random.Random(12)
    count = 0
    while count < 40:
        plus, minus = rng.randint(2, 6), rng.randint(0, 6)
        hyper = rng.randint(0, 2)
        blocks = []
        if hyper:
            blocks.append(Hyperbolic(hyper))
        blocks.append(Diagonal((1,) * plus + (-1,) * minus))
        M = ManifoldSpec("M", IntersectionForm(tuple(blocks)))
        coords = tuple(2 * rng.randint(-4, 4) for _ in range(2 * hyper)) + tuple(
            2 * (2 * rng.randint(-3, 3) + 1) for _ in range(plus + minus)
        )
        cls = SurfaceClass(coords)
        try:
            r = genus_bound(M, cls, 1)
        except HypothesisFailed:
            continue
        count += 1
        assert r.refined_bound == _double_cover_bound(M, cls.square(M.form))


def test_effective_monotone_in_square():
    for n in (2, 3, 4):
        M = connected_sum_cp2(n)
        prev = None
        for a in range(1, 8):
            r = genus_bound(M, SurfaceClass((2 * (2 * a - 1),) + (2,) * (n - 1)), 1)
            if prev is not None:
                assert r.effective_min_genus >= prev
            prev = r.effective_min_genus


def test_genus_hypothesis_failures():
    with pytest.raises(HypothesisFailed) as info:
        genus_bound(connected_sum_cp2(2), SurfaceClass((5, 2)), 1)
    assert info.value.name == "divisibility"
    with pytest.raises(HypothesisFailed) as info:
        genus_bound(connected_sum_cp2(1), SurfaceClass((6,)), 1)
    assert info.value.name == "b2+(M) > 1"
    with pytest.raises(HypothesisFailed) as info:
        genus_bound(connected_sum_cp2(2), SurfaceClass((4, 4)), 1)
    assert info.value.name == "characteristic"


def test_spin_type():
    assert spin_type_from_fixed_set(FixedSetDescription("surface")) == "odd"
    assert spin_type_from_fixed_set(FixedSetDescription("points", count=8)) == "even"
    assert spin_type_from_fixed_set(FixedSetDescription("all")) == "even"
    assert spin_type_from_fixed_set(FixedSetDescription("free", quotient_spin=False)) == "odd"
    assert spin_type_from_fixed_set(FixedSetDescription("free", quotient_spin=True)) == "even"


def test_involution_quotient_arith():
    assert involution_quotient_arith(-16, 24, 8) == (-8, 16)
    assert involution_quotient_arith(0, 4, 0) == (0, 2)
    with pytest.raises(ParityError):
        involution_quotient_arith(-16, 24, 7)


def test_k3_classification():
    even = classify_qk3_involution("even")
    assert (even.fixed_points, even.b2plus_quotient, even.b2minus_quotient) == (8, 3, 11)
    sigma, chi = involution_quotient_arith(-16, 24, even.fixed_points)
    assert chi - 2 - 3 == even.b2minus_quotient and 3 - even.b2minus_quotient == sigma
    odd = classify_qk3_involution("odd")
    assert odd.b2plus_quotient == 1
    survivors = [s.t for s in odd.splittings if not s.eliminated]
    assert survivors == [(2, 1)]


def test_k3_construction():
    c = k3_cover_construction_check()
    assert (c.euler_cover, c.euler_blown_down, c.signature_blown_down) == (32, 24, -16)
    assert c.signature_cover == -24 and c.signature_cover_stated == 24
    assert c.flags
