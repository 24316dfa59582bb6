"""Trace-equation systems for the K-theoretic degree alpha and their exact solution.

For every element g = phi*a or J*a the character formula gives one of

* ``zero``:    dim V_g != dim W_g, so the topological degree of f^g vanishes and tr_g(alpha) = 0;
* ``lambda``:  nothing is fixed, d(f^g) = 1 and tr_g(alpha) = tr_g lambda_{-1}(W - V);
* ``skipped``: the fixed spaces have equal positive dimension and d(f^g) is unknown.

alpha = a0 + a0~ * 1~ + sum_i a_i h_i with coefficients in the group ring of A.  A phi*a
equation fixes (a0 + a0~)(a) and every a_i(a); a J*a equation fixes (a0 - a0~)(a).  Once the
values at all elements are known, an inverse discrete Fourier transform over the character
group recovers the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cyclotomic import CyclotomicNumber, LaurentPoly, RationalFn
from .errors import HypothesisNotMet, NonCyclicGroup, NotUnique
from .repring import (
    ONE,
    TILDE,
    AElement,
    Char,
    FixedDims,
    GroupElement,
    GroupSpec,
    IndexData,
    RepElement,
    fixed_dims,
    invariant_dim,
    lambda_minus_one_trace,
    quotient_b2plus,
)

DEFAULT_H_CUTOFF = 8


@dataclass(frozen=True)
class TraceEquation:
    element: GroupElement
    kind: str  # "zero" | "lambda" | "skipped"
    dims: FixedDims
    value: RationalFn | None = None
    reason: str = ""

    def describe(self, group: GroupSpec | None = None) -> str:
        g = self.element.label(group)
        if self.kind == "zero":
            return f"tr_{g}(α) = 0"
        if self.kind == "lambda":
            return f"tr_{g}(α) = {self.value}"
        return f"tr_{g}(α) unknown: {self.reason}"


@dataclass(frozen=True)
class TraceSystem:
    index: IndexData
    equations: tuple[TraceEquation, ...]
    h_cutoff: int = DEFAULT_H_CUTOFF

    def without(self, element: GroupElement) -> TraceSystem:
        """The same system with the equation at ``element`` marked as skipped."""
        eqs = tuple(
            TraceEquation(e.element, "skipped", e.dims, None, "removed") if e.element == element else e
            for e in self.equations
        )
        return TraceSystem(self.index, eqs, self.h_cutoff)


def classify(idx: IndexData, g: GroupElement) -> TraceEquation:
    dims = fixed_dims(idx, g)
    if dims.dim_v != dims.dim_w:
        return TraceEquation(g, "zero", dims)
    if not dims.has_fixed_lines:
        return TraceEquation(g, "lambda", dims, lambda_minus_one_trace(idx, g))
    reason = f"dim V_g = dim W_g = {dims.dim_v}" + (" (virtual)" if dims.virtual else "")
    return TraceEquation(g, "skipped", dims, None, reason)


def system_elements(group: GroupSpec) -> list[GroupElement]:
    elems = group.elements()
    return [GroupElement("phi", a) for a in elems] + [GroupElement("J", a) for a in elems]


def build_trace_system(idx: IndexData, h_cutoff: int = DEFAULT_H_CUTOFF) -> TraceSystem:
    if h_cutoff < 1:
        raise ValueError("h_cutoff must be >= 1")
    eqs = tuple(classify(idx, g) for g in system_elements(idx.group))
    return TraceSystem(idx, eqs, h_cutoff)


# --------------------------------------------------------------------------


@dataclass
class DegreeSolution:
    outcome: str  # "unique" | "underdetermined" | "inconsistent"
    system: TraceSystem
    alpha: RepElement | None = None
    unpinned: list[tuple[str, GroupElement]] = field(default_factory=list)
    skipped: list[tuple[GroupElement, str]] = field(default_factory=list)
    certificate: str | None = None

    @property
    def is_unique(self) -> bool:
        return self.outcome == "unique"


def _unknown_parity(name: str) -> int | None:
    # which exponents of xi may appear in each unknown (odd type only)
    if name in ("sum", "diff"):
        return 0
    return int(name[1:]) % 2


def interpolate(
    group: GroupSpec, values: Mapping[AElement, CyclotomicNumber], parity: int | None
) -> dict[Char, CyclotomicNumber]:
    """Coefficients u_chi of u = sum u_chi chi from its values at ``group.elements()``.

    Uses orthogonality: u_chi = (1/|E|) sum_a u(a) * conj(chi(a)).  For odd type the
    characters of one parity class are orthogonal over the 2^p coset representatives.
    """
    elems = group.elements()
    chars = group.characters(parity if group.odd else None)
    n = len(elems)
    out = {}
    for chi in chars:
        acc = CyclotomicNumber.rational(0)
        for a in elems:
            acc = acc + values[a] * group.char_value(chi, a).conjugate()
        out[chi] = acc * Fraction(1, n)
    return out


def _unknown_names(h_cutoff: int) -> list[str]:
    return ["sum", "diff"] + [f"h{i}" for i in range(1, h_cutoff + 1)]


def solve_degree(system: TraceSystem) -> DegreeSolution:
    idx = system.index
    group = idx.group
    elems = group.elements()
    names = _unknown_names(system.h_cutoff)
    values: dict[str, dict[AElement, CyclotomicNumber]] = {n: {} for n in names}
    zero = CyclotomicNumber.rational(0)

    def fail(msg: str) -> DegreeSolution:
        return DegreeSolution("inconsistent", system, certificate=msg)

    skipped = []
    for eq in system.equations:
        g, a = eq.element, eq.element.finite
        label = g.label(group)
        if eq.kind == "skipped":
            skipped.append((g, eq.reason))
            continue
        if g.pin2 == "phi":
            if eq.kind == "zero":
                for n in ["sum"] + names[2:]:
                    values[n][a] = zero
                continue
            assert eq.value is not None
            if not eq.value.is_polynomial:
                return fail(
                    f"tr_{label}(α) must be a Laurent polynomial in φ but "
                    f"tr_{label} λ₋₁(W−V) = {eq.value} has denominator {eq.value.denominator}"
                )
            lp = eq.value.as_laurent()
            for e, c in lp.terms.items():
                if lp.coeff_at(-e) != c:
                    return fail(f"tr_{label} λ₋₁(W−V) = {lp} is not symmetric under φ ↦ φ⁻¹")
                if abs(e) > system.h_cutoff:
                    return fail(f"tr_{label} λ₋₁(W−V) needs h_{abs(e)}, beyond h_cutoff={system.h_cutoff}")
            values["sum"][a] = lp.coeff_at(0)
            for i in range(1, system.h_cutoff + 1):
                values[f"h{i}"][a] = lp.coeff_at(i)
        elif g.pin2 == "J":
            if eq.kind == "zero":
                values["diff"][a] = zero
                continue
            assert eq.value is not None
            if not (eq.value.is_polynomial and eq.value.numerator.is_constant()):
                return fail(f"tr_{label} λ₋₁(W−V) = {eq.value} is not a constant")
            values["diff"][a] = eq.value.numerator.coeff_at(0)

    unpinned = [(n, GroupElement("phi" if n != "diff" else "J", a))
                for n in names for a in elems if a not in values[n]]
    if unpinned:
        return DegreeSolution("underdetermined", system, unpinned=unpinned, skipped=skipped)

    coeffs: dict[str, dict[Char, Fraction]] = {}
    for n in names:
        parity = _unknown_parity(n) if group.odd else None
        raw = interpolate(group, values[n], parity)
        coeffs[n] = {}
        for chi, c in raw.items():
            if not c.is_rational():
                return fail(f"coefficient of {n} at character {chi} is {c}, not rational")
            if c:
                coeffs[n][chi] = c.to_fraction()

    terms: dict[tuple[int, Char], Fraction] = {}
    for chi in set(coeffs["sum"]) | set(coeffs["diff"]):
        s, d = coeffs["sum"].get(chi, Fraction(0)), coeffs["diff"].get(chi, Fraction(0))
        terms[(ONE, chi)] = (s + d) / 2
        terms[(TILDE, chi)] = (s - d) / 2
    for i in range(1, system.h_cutoff + 1):
        for chi, c in coeffs[f"h{i}"].items():
            terms[(i, chi)] = c
    alpha = RepElement(group, terms)

    for eq in system.equations:
        if eq.kind == "skipped":
            continue
        expected = RationalFn(alpha.character(eq.element))
        target = RationalFn(LaurentPoly()) if eq.kind == "zero" else eq.value
        assert expected == target, f"re-substitution failed at {eq.element}"
    return DegreeSolution("unique", system, alpha=alpha, skipped=skipped)


def solve_index(idx: IndexData, h_cutoff: int = DEFAULT_H_CUTOFF) -> DegreeSolution:
    return solve_degree(build_trace_system(idx, h_cutoff))


# --------------------------------------------------------------------------
# non-degeneracy conditions and the concluded inequality


@dataclass(frozen=True)
class Condition:
    name: str
    passed: bool
    detail: str = ""


def odd_conditions(p: int, k: int, b2plus: Sequence[int]) -> list[Condition]:
    """Non-degeneracy for an odd-type Z/2^p action from the quotient numbers b2+(X_j), j = 0..p.

    These are the conditions 0 < b2+(X_p) < ... < b2+(X_1) and b2+(X_1) != m - 2k.
    """
    m = b2plus[0]
    out = [Condition(f"b2+(X_{p}) > 0", b2plus[p] > 0, f"b2+(X_{p}) = {b2plus[p]}")]
    for j in range(p - 1, 0, -1):
        out.append(Condition(
            f"b2+(X_{j}) > b2+(X_{j + 1})",
            b2plus[j] > b2plus[j + 1],
            f"{b2plus[j]} vs {b2plus[j + 1]}",
        ))
    out.append(Condition(
        "m ≠ 2k + b2+(X_1)",
        m != 2 * k + b2plus[1],
        f"m = {m}, 2k + b2+(X_1) = {2 * k + b2plus[1]}",
    ))
    return out


def check_nondegeneracy(idx: IndexData) -> list[Condition]:
    group = idx.group
    if group.odd:
        p = group.p
        return odd_conditions(p, idx.k, [quotient_b2plus(idx, j) for j in range(p + 1)])
    m = idx.m
    out = []
    for a in group.elements():
        if not any(a):
            continue
        q = invariant_dim(idx, [a])
        name = GroupElement("e", a).label(group)
        out.append(Condition(f"m ≠ b2+(X/{name})", m != q, f"m = {m}, b2+(X/{name}) = {q}"))
    full = invariant_dim(idx, _generators(group))
    out.append(Condition("b2+(X/A) ≠ 0", full != 0, f"b2+(X/A) = {full}"))
    return out


def _generators(group: GroupSpec) -> list[AElement]:
    n = len(group.orders)
    return [tuple(1 if i == f else 0 for i in range(n)) for f in range(n)]


def _v2(x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    v = 0
    while num % 2 == 0:
        num //= 2
        v += 1
    while den % 2 == 0:
        den //= 2
        v -= 1
    return v


@dataclass
class InequalityReport:
    required_valuation: int
    binding: int
    conclusion: str
    instantiated: str
    holds_for_input: bool
    nondegeneracy: list[Condition]
    k: int
    m: int


def _conclusion(group: GroupSpec, binding: int) -> tuple[str, str]:
    plain = "m ≥ 2k" + (f"+{binding}" if binding > 0 else (f"{binding}" if binding < 0 else ""))
    if binding == 1:
        return plain, plain
    if group.odd and binding == 1 + group.p:
        return "m ≥ 2k+1+p", f"m ≥ 2k+1+{group.p}"
    q = len(group.orders)
    if not group.odd and q >= 2 and all(n == 2 for n in group.orders) and binding == 1 + q:
        return "m ≥ 2k+1+q", f"m ≥ 2k+1+{q}"
    return plain, plain


def conclude_bound(sol: DegreeSolution, idx: IndexData | None = None) -> InequalityReport:
    """Read the inequality forced by integrality of alpha.

    The trivial-character coefficient of a0 has the form 2^{m-2k-c}; its 2-adic valuation
    gives c, and alpha lies in R(G) only if m >= 2k + c.
    """
    if not sol.is_unique or sol.alpha is None:
        raise NotUnique(f"degree is {sol.outcome}")
    idx = idx or sol.system.index
    alpha = sol.alpha
    lead = alpha.c0.get(idx.group.trivial_char())
    if not lead:
        nonzero = [c for c in alpha.terms.values() if c]
        if not nonzero:
            raise NotUnique("degree solved to zero; no valuation to read")
        lead = min(nonzero, key=_v2)
    v = _v2(lead)
    binding = idx.m - 2 * idx.k - v
    conclusion, inst = _conclusion(idx.group, binding)
    return InequalityReport(
        required_valuation=v,
        binding=binding,
        conclusion=conclusion,
        instantiated=inst,
        holds_for_input=alpha.is_integral(),
        nondegeneracy=check_nondegeneracy(idx),
        k=idx.k,
        m=idx.m,
    )


# --------------------------------------------------------------------------


@dataclass
class ContradictionReport:
    element: GroupElement
    trace: RationalFn
    is_polynomial: bool
    offending_factor: object
    detail: str

    @property
    def certified(self) -> bool:
        return not self.is_polynomial


def verify_theorem_c(idx: IndexData) -> ContradictionReport:
    """Certify that b2+(X/tau) = 0 is impossible when k > 0.

    With the trivial coefficient of t equal to zero, phi*nu fixes nothing, so tr_{phi nu}(alpha)
    equals tr_{phi nu} lambda_{-1}(W - V).  That is a rational function with a genuine pole,
    while any element of R(G) has a Laurent polynomial character.
    """
    group = idx.group
    if not group.is_cyclic:
        raise NonCyclicGroup("the contradiction is for a cyclic Z/2^p action")
    if idx.k <= 0:
        raise HypothesisNotMet(f"needs k > 0, got k = {idx.k}")
    if idx.m <= 0:
        raise HypothesisNotMet(f"needs m > 0, got m = {idx.m}")
    if idx.trivial_t != 0:
        raise HypothesisNotMet(f"b2+(X/τ) = {idx.trivial_t} is already nonzero")
    if not group.orders:
        raise HypothesisNotMet("trivial group: no trivial-character split exists")
    g = GroupElement("phi", (1,))
    dims = fixed_dims(idx, g)
    assert not dims.has_fixed_lines, "φν fixes nothing once the trivial coefficient of t is zero"
    trace = lambda_minus_one_trace(idx, g)
    detail = (
        f"tr_{g.label(group)} λ₋₁(W−V) = {trace}; reduced denominator "
        f"{trace.denominator} is not a unit, so it has arbitrarily high powers of φ"
        if not trace.is_polynomial
        else f"tr_{g.label(group)} λ₋₁(W−V) = {trace} is a Laurent polynomial: no contradiction"
    )
    return ContradictionReport(g, trace, trace.is_polynomial, trace.denominator, detail)
