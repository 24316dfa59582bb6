"""Acceptance checks, runnable from the CLI (``spinaction selftest``) and from pytest.

Every check is a zero-argument function returning a :class:`Check`.  Random data come from
fixed seeds so a failure is reproducible.
"""

from __future__ import annotations

import cmath
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cyclotomic import CyclotomicNumber, LaurentPoly, root_of_unity
from .degree import (
    build_trace_system,
    check_nondegeneracy,
    conclude_bound,
    solve_degree,
    solve_index,
    verify_theorem_c,
)
from .oracle import dense_solve
from .repring import GroupElement, GroupSpec, IndexData, RepElement, lambda_minus_one_trace
from . import topology


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


# --------------------------------------------------------------------------
# random admissible index data


def random_index(rng: random.Random, group: GroupSpec, k_max: int = 3, m_max: int = 9) -> IndexData:
    """Random index data with k >= 1, m >= 1 (not filtered for non-degeneracy)."""
    s_chars = group.characters(1) if group.odd else group.characters()
    t_chars = group.characters(0) if group.odd else group.characters()
    k = rng.randint(1, k_max)
    m = rng.randint(1, m_max)
    s: dict = {}
    for _ in range(2 * k):
        c = rng.choice(s_chars)
        s[c] = s.get(c, 0) + 1
    t: dict = {}
    for _ in range(m):
        c = rng.choice(t_chars)
        t[c] = t.get(c, 0) + 1
    return IndexData(group, s, t)


def nondegenerate_samples(rng: random.Random, group: GroupSpec, count: int) -> list[IndexData]:
    out = []
    while len(out) < count:
        idx = random_index(rng, group)
        if all(c.passed for c in check_nondegeneracy(idx)):
            out.append(idx)
    return out


def closed_form(idx: IndexData) -> RepElement:
    """The expected degree for a non-degenerate system, written down directly."""
    g = idx.group
    one, tilde = RepElement.one(g), RepElement.tilde(g)
    base = one - tilde
    if g.odd:
        n = g.orders[0]
        ring = sum((RepElement.char(g, (e,)) for e in range(0, n, 2)), RepElement.zero(g))
        shift = 1 + g.p
    else:
        ring = one
        for f in range(len(g.orders)):
            chi = tuple(1 if i == f else 0 for i in range(len(g.orders)))
            ring = ring * (one + RepElement.char(g, chi))
        shift = 1 + len(g.orders)
    return ring * base * (Fraction(2) ** (idx.m - 2 * idx.k - shift))


CLOSED_FORM_GROUPS: list[tuple[str, GroupSpec, str]] = [
    ("trivial", GroupSpec.trivial(), "m ≥ 2k+1"),
    ("Z/2 even", GroupSpec.even(2), "m ≥ 2k+2"),
    ("(Z/2)^2 even", GroupSpec.even(2, 2), "m ≥ 2k+1+q"),
    ("(Z/2)^3 even", GroupSpec.even(2, 2, 2), "m ≥ 2k+1+q"),
    ("odd p=1", GroupSpec.odd_type(1), "m ≥ 2k+1+p"),
    ("odd p=2", GroupSpec.odd_type(2), "m ≥ 2k+1+p"),
    ("odd p=3", GroupSpec.odd_type(3), "m ≥ 2k+1+p"),
]


# --------------------------------------------------------------------------
# criteria


def check_closed_forms(samples: int = 6, seed: int = 1) -> Check:
    rng = random.Random(seed)
    bad = []
    total = 0
    for name, group, _ in CLOSED_FORM_GROUPS:
        for idx in nondegenerate_samples(rng, group, samples):
            total += 1
            sol = solve_index(idx)
            if not sol.is_unique or sol.alpha != closed_form(idx):
                bad.append(f"{name} s={idx.s} t={idx.t}: got {sol.alpha}")
    return Check("degree closed forms", not bad, f"{total} systems" if not bad else bad[0])


def check_conclusions(samples: int = 4, seed: int = 2) -> Check:
    rng = random.Random(seed)
    bad = []
    for name, group, expected in CLOSED_FORM_GROUPS:
        for idx in nondegenerate_samples(rng, group, samples):
            got = conclude_bound(solve_index(idx), idx).conclusion
            if got != expected:
                bad.append(f"{name}: {got!r} != {expected!r}")
    return Check("inequality conclusions", not bad, "all match" if not bad else bad[0])


def check_trace_identity(samples: int = 40, seed: int = 3) -> Check:
    rng = random.Random(seed)
    groups = [g for _, g, _ in CLOSED_FORM_GROUPS] + [GroupSpec.even(4), GroupSpec.even(8, 2)]
    bad = []
    for _ in range(samples):
        group = rng.choice(groups)
        idx = random_index(rng, group)
        tr = lambda_minus_one_trace(idx, GroupElement("J", group.elements()[0]))
        want = LaurentPoly.constant(Fraction(2) ** (idx.m - 2 * idx.k))
        if not tr.is_polynomial or tr.as_laurent() != want:
            bad.append(f"{group}: {tr}")
    return Check("trace identity at J", not bad, f"{samples} samples" if not bad else bad[0])


def check_genus_corollaries() -> Check:
    r1 = topology.genus_bound(topology.connected_sum_cp2(2), topology.SurfaceClass((6, 2)), 1)
    r2 = topology.genus_bound(topology.s2xs2_sum_cp2(), topology.SurfaceClass((4, 4, 6)), 1)
    ok = r1.effective_min_genus == 10 and r2.effective_min_genus == 19
    return Check("genus corollaries", ok, f"{r1.effective_min_genus}, {r2.effective_min_genus}")


def check_example_sweep() -> Check:
    bad = []
    for n in range(2, 13):
        r = topology.genus_bound(topology.connected_sum_cp2(n), topology.SurfaceClass((4,) * n), 2)
        refined = Fraction(8 * n + 3, 3)
        want = 3 * n if n <= 5 else -(-(8 * n + 3) // 3)
        if r.refined_bound != refined or r.effective_min_genus != want:
            bad.append(f"N={n}: refined {r.refined_bound}, effective {r.effective_min_genus}")
    return Check("#N CP² sweep", not bad, "N = 2..12" if not bad else bad[0])


def check_k3() -> Check:
    even = topology.classify_qk3_involution("even")
    odd = topology.classify_qk3_involution("odd")
    con = topology.k3_cover_construction_check()
    ok = (
        (even.fixed_points, even.b2plus_quotient, even.b2minus_quotient) == (8, 3, 11)
        and odd.b2plus_quotient == 1
        and (con.euler_cover, con.euler_blown_down, con.signature_blown_down) == (32, 24, -16)
        and con.signature_cover == -24
        and bool(con.flags)
    )
    return Check("K3 involutions", ok,
                 f"even N={even.fixed_points} b2+={even.b2plus_quotient} b2-={even.b2minus_quotient}; "
                 f"odd b2+={odd.b2plus_quotient}; σ(X~)={con.signature_cover} flagged")


def _compositions(total: int, parts: int):
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield out


def vanishing_quotient_cases():
    """All (group, s, t) with k in {1,2}, m in 1..4, zero trivial t, cyclic of order 2 or 4."""
    groups = [GroupSpec.even(2), GroupSpec.even(4), GroupSpec.odd_type(1), GroupSpec.odd_type(2)]
    for group in groups:
        n = group.action_order
        for k in (1, 2):
            for m in range(1, 5):
                for s in _compositions(2 * k, n):
                    for t in _compositions(m, n - 1):
                        yield IndexData.from_lists(group, s, t + [0])


def check_pole_certificate() -> Check:
    count = 0
    for idx in vanishing_quotient_cases():
        count += 1
        rep = verify_theorem_c(idx)
        if not rep.certified:
            return Check("pole certificate", False, f"{idx.group} s={idx.s_list()} t={idx.t_list()}")
    return Check("pole certificate", True, f"{count} index data")


def check_oracle(samples: int = 50, seed: int = 8) -> Check:
    rng = random.Random(seed)
    bad = []
    for p in (1, 2):
        group = GroupSpec.odd_type(p)
        for _ in range(samples):
            system = build_trace_system(random_index(rng, group), h_cutoff=4)
            sol = solve_degree(system)
            outcome, alpha = dense_solve(system)
            if outcome != sol.outcome or (outcome == "unique" and alpha != sol.alpha):
                bad.append(f"p={p}: {sol.outcome}/{outcome}")
    return Check("dense oracle agreement", not bad, f"{2 * samples} systems" if not bad else bad[0])


def _random_rep(rng: random.Random, group: GroupSpec, max_h: int = 3) -> RepElement:
    terms = {}
    chars = group.characters()
    for _ in range(rng.randint(1, 4)):
        slot = rng.choice([0, -1] + list(range(1, max_h + 1)))
        chi = rng.choice(chars)
        if group.odd and chi[0] % 2 != max(slot, 0) % 2:
            chi = ((chi[0] + 1) % group.orders[0],)
        terms[(slot, chi)] = terms.get((slot, chi), 0) + rng.randint(-3, 3)
    return RepElement(group, terms)


def check_ring_properties(samples: int = 100, seed: int = 9) -> Check:
    rng = random.Random(seed)
    g0 = GroupSpec.trivial()
    hs = [RepElement.one(g0) + RepElement.tilde(g0)] + [RepElement.h(g0, i) for i in range(1, 7)]
    for a, b, c in itertools.product(hs, repeat=3):
        if (a * b) * c != a * (b * c):
            return Check("ring properties", False, f"associativity fails at {a}, {b}, {c}")
    groups = [GroupSpec.even(2), GroupSpec.even(4, 2), GroupSpec.odd_type(1), GroupSpec.odd_type(2)]
    for _ in range(samples):
        group = rng.choice(groups)
        x, y = _random_rep(rng, group), _random_rep(rng, group)
        xy = x * y
        for el in group.elements():
            for pin in ("phi", "J", "e"):
                g = GroupElement(pin, el)
                if xy.character(g) != x.character(g) * y.character(g):
                    return Check("ring properties", False, f"character not multiplicative at {g}")
        if xy.restrict_to_circle() != x.restrict_to_circle() * y.restrict_to_circle():
            return Check("ring properties", False, f"restriction not multiplicative on {x}, {y}")
        if (x + y).restrict_to_circle() != x.restrict_to_circle() + y.restrict_to_circle():
            return Check("ring properties", False, "restriction not additive")
        if group.odd and not xy.is_parity_valid():
            return Check("ring properties", False, f"parity lost in {x} * {y}")
    return Check("ring properties", True, f"h0..h6 associativity, {samples} random pairs")


def _random_cyclo(rng: random.Random, depth: int, level: int) -> tuple[CyclotomicNumber, complex]:
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            q = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            return CyclotomicNumber.rational(q), complex(float(q))
        e = rng.randrange(1 << level)
        return root_of_unity(level, e), cmath.exp(2j * cmath.pi * e / (1 << level))
    a, fa = _random_cyclo(rng, depth - 1, level)
    b, fb = _random_cyclo(rng, depth - 1, level)
    op = rng.choice("+-*/")
    if op == "/" and b.is_zero():
        op = "*"
    if op == "+":
        return a + b, fa + fb
    if op == "-":
        return a - b, fa - fb
    if op == "*":
        return a * b, fa * fb
    return a / b, fa / fb


def check_numeric(samples: int = 100, seed: int = 10) -> Check:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        level = rng.randint(1, 5)
        exact, approx = _random_cyclo(rng, 4, level)
        worst = max(worst, abs(exact.to_complex() - approx))
    return Check("floating cross-check", worst <= 1e-9, f"max |Δ| = {worst:.2e}")


CRITERIA: list[tuple[str, Callable[[], Check]]] = [
    ("1 degree closed forms", check_closed_forms),
    ("2 inequality conclusions", check_conclusions),
    ("3 trace at J is 2^(m-2k)", check_trace_identity),
    ("4 genus corollaries", check_genus_corollaries),
    ("5 #N CP² sweep", check_example_sweep),
    ("6 K3 classification", check_k3),
    ("7 pole certificate for b2+(X/τ) = 0", check_pole_certificate),
    ("8 dense oracle equivalence", check_oracle),
    ("9 ring properties", check_ring_properties),
    ("10 numerical cross-check", check_numeric),
]


def run_all() -> list[Check]:
    out = []
    for label, fn in CRITERIA:
        c = fn()
        out.append(Check(label, c.passed, c.detail))
    return out
