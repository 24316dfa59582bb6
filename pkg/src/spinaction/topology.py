"""Four-manifold arithmetic: intersection forms, branched-cover invariants, genus bounds,
and involutions on rational cohomology K3 surfaces.

All bound arithmetic is exact; ceilings are taken only when a genus is produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .degree import (
    Condition,
    check_nondegeneracy,
    conclude_bound,
    odd_conditions,
    solve_index,
    verify_theorem_c,
)
from .errors import (
    DimensionMismatch,
    HypothesisFailed,
    NonIntegralInvariant,
    ParityError,
    SpinConditionFailed,
)
from .repring import GroupSpec, IndexData


@dataclass(frozen=True)
class Diagonal:
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if any(e not in (1, -1) for e in self.entries):
            raise ValueError("diagonal blocks hold +1/-1 entries only")

    @property
    def rank(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Hyperbolic:
    count: int

    @property
    def rank(self) -> int:
        return 2 * self.count


Block = Union[Diagonal, Hyperbolic]


@dataclass(frozen=True)
class IntersectionForm:
    """Block sum of diagonal (+-1) and hyperbolic [[0,1],[1,0]] pieces."""

    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @classmethod
    def diagonal(cls, *entries: int) -> IntersectionForm:
        return cls((Diagonal(entries),))

    @property
    def rank(self) -> int:
        return sum(b.rank for b in self.blocks)

    @property
    def b2plus(self) -> int:
        return sum(b.entries.count(1) if isinstance(b, Diagonal) else b.count for b in self.blocks)

    @property
    def b2minus(self) -> int:
        return sum(b.entries.count(-1) if isinstance(b, Diagonal) else b.count for b in self.blocks)

    @property
    def signature(self) -> int:
        return self.b2plus - self.b2minus

    def matrix(self) -> list[list[int]]:
        n = self.rank
        out = [[0] * n for _ in range(n)]
        pos = 0
        for b in self.blocks:
            if isinstance(b, Diagonal):
                for e in b.entries:
                    out[pos][pos] = e
                    pos += 1
            else:
                for _ in range(b.count):
                    out[pos][pos + 1] = out[pos + 1][pos] = 1
                    pos += 2
        return out

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        x, y = flatten_class(x), flatten_class(y)
        if len(x) != self.rank or len(y) != self.rank:
            raise DimensionMismatch(f"class has length {len(x)}/{len(y)}, form has rank {self.rank}")
        total = pos = 0
        for b in self.blocks:
            if isinstance(b, Diagonal):
                for e in b.entries:
                    total += e * x[pos] * y[pos]
                    pos += 1
            else:
                for _ in range(b.count):
                    total += x[pos] * y[pos + 1] + x[pos + 1] * y[pos]
                    pos += 2
        return total

    def to_json(self) -> list:
        return [{"diag": list(b.entries)} if isinstance(b, Diagonal) else {"hyperbolic": b.count}
                for b in self.blocks]

    @classmethod
    def from_json(cls, doc: Iterable) -> IntersectionForm:
        blocks: list[Block] = []
        for item in doc:
            if "diag" in item:
                blocks.append(Diagonal(tuple(item["diag"])))
            elif "hyperbolic" in item:
                blocks.append(Hyperbolic(int(item["hyperbolic"])))
            else:
                raise ValueError(f"unknown block {item!r}")
        return cls(tuple(blocks))


def flatten_class(coords: Iterable) -> list[int]:
    """Accept flat or per-block nested coordinates, e.g. ((4, 4), 6)."""
    out: list[int] = []
    for c in coords:
        if isinstance(c, (list, tuple)):
            out.extend(flatten_class(c))
        else:
            out.append(int(c))
    return out


@dataclass(frozen=True)
class ManifoldSpec:
    name: str
    form: IntersectionForm
    b1: int = 0

    def __post_init__(self) -> None:
        if self.b1 != 0:
            raise ValueError("only b1 = 0 manifolds are supported")

    @property
    def b2(self) -> int:
        return self.form.rank

    @property
    def b2plus(self) -> int:
        return self.form.b2plus

    @property
    def b2minus(self) -> int:
        return self.form.b2minus

    @property
    def signature(self) -> int:
        return self.form.signature

    @property
    def euler(self) -> int:
        return 2 - 2 * self.b1 + self.b2


def connected_sum_cp2(n: int) -> ManifoldSpec:
    return ManifoldSpec(f"#{n}CP2", IntersectionForm.diagonal(*([1] * n)))


def s2xs2_sum_cp2() -> ManifoldSpec:
    return ManifoldSpec("S2xS2#CP2", IntersectionForm((Hyperbolic(1), Diagonal((1,)))))


@dataclass(frozen=True)
class SurfaceClass:
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(flatten_class(self.coords)))

    def square(self, form: IntersectionForm) -> int:
        return class_square(form, self.coords)

    @property
    def divisibility(self) -> int:
        return math.gcd(*self.coords) if self.coords else 0


def class_square(form: IntersectionForm, coords: Sequence) -> int:
    c = flatten_class(coords)
    return form.pairing(c, c)


def is_characteristic_mod2(form: IntersectionForm, coords: Sequence) -> bool:
    c = flatten_class(coords)
    if len(c) != form.rank:
        raise DimensionMismatch(f"class has length {len(c)}, form has rank {form.rank}")
    for i in range(form.rank):
        y = [0] * form.rank
        y[i] = 1
        if (form.pairing(c, y) - form.pairing(y, y)) % 2:
            return False
    return True


# --------------------------------------------------------------------------
# branched covers


@dataclass
class CoverInvariants:
    p: int
    genus: int
    square: int
    k: int
    m: list[int]  # m[i] = b2+(X_i), X_i the quotient by Z/2^i; m[p] = b2+(M)

    @property
    def m0(self) -> int:
        return self.m[0]


def _spin_check(M: ManifoldSpec, cls: SurfaceClass, p: int) -> list[Condition]:
    d = 1 << p
    divisible = all(c % d == 0 for c in cls.coords)
    out = [Condition("divisibility", divisible, f"2^{p} | {list(cls.coords)}")]
    if divisible:
        reduced = [c // d for c in cls.coords]
        out.append(Condition("characteristic", is_characteristic_mod2(M.form, reduced),
                             f"[Σ]/2^{p} = {reduced} ≡ w2(M) mod 2"))
    else:
        out.append(Condition("characteristic", False, "not evaluated: class not divisible"))
    return out


def _k_value(M: ManifoldSpec, square: int, p: int) -> Fraction:
    d = 1 << p
    return Fraction(1, 16) * (-d * M.signature + Fraction(4**p - 1, 3 * d) * square)


def _m_value(b2plus_M: int, square: int, g: int, p: int, i: int) -> Fraction:
    d = 1 << (p - i)
    return d * b2plus_M + (d - 1) * g - Fraction(4 ** (p - i) - 1, 6 * d) * square


def cover_invariants(M: ManifoldSpec, cls: SurfaceClass, g: int, p: int) -> CoverInvariants:
    """k and m_i = b2+(X_i) for the 2^p-fold cover of M branched along a genus-g surface."""
    if p < 1:
        raise ValueError("p must be >= 1")
    for cond in _spin_check(M, cls, p):
        if not cond.passed:
            raise SpinConditionFailed(f"{cond.name}: {cond.detail}")
    sq = cls.square(M.form)
    k = _k_value(M, sq, p)
    ms = [_m_value(M.b2plus, sq, g, p, i) for i in range(p + 1)]
    if k.denominator != 1:
        raise NonIntegralInvariant(f"k = {k} is not an integer")
    for i, mi in enumerate(ms):
        if mi.denominator != 1 or mi < 0:
            raise NonIntegralInvariant(f"m_{i} = {mi} is not a nonnegative integer")
    return CoverInvariants(p, g, sq, int(k), [int(x) for x in ms])


@dataclass
class CoverIndexConstraints:
    """Linear constraints on the index data (s, t) of the branched cover.

    Only partial sums of t are determined: the sum of t_i over i = 0 mod 2^j equals m_j.
    """

    p: int
    k: int
    partial_sums: list[int]  # partial_sums[j] = b2+(X_j)

    @property
    def s_total(self) -> int:
        return 2 * self.k

    def t_block_sums(self) -> list[tuple[tuple[int, ...], int]]:
        """Unwind the partial sums into disjoint blocks: indices i = 2^j mod 2^{j+1}."""
        n = 1 << self.p
        out = [((n,), self.partial_sums[self.p])]
        for j in range(self.p - 1, -1, -1):
            idx = tuple(i for i in range(1, n + 1) if i % (1 << (j + 1)) == (1 << j))
            out.append((idx, self.partial_sums[j] - self.partial_sums[j + 1]))
        return out

    def nondegeneracy(self) -> list[Condition]:
        return odd_conditions(self.p, self.k, self.partial_sums)


def index_from_cover(M: ManifoldSpec, cls: SurfaceClass, g: int, p: int) -> CoverIndexConstraints:
    inv = cover_invariants(M, cls, g, p)
    return CoverIndexConstraints(p, inv.k, list(inv.m))


# --------------------------------------------------------------------------
# genus bounds


@dataclass
class GenusBoundReport:
    manifold: str
    coords: tuple[int, ...]
    p: int
    square: int
    furuta_bound: Fraction
    refined_bound: Fraction
    excluded_genera: list[int]
    hypotheses: list[Condition]
    effective_min_genus: int
    notes: list[str] = field(default_factory=list)


def _bound(M: ManifoldSpec, square: int, p: int, with_p: bool) -> Fraction:
    d = 1 << p
    inner = Fraction(5, 4) * (Fraction(4**p - 1, 6 * d) * square - (d // 2) * M.signature)
    return (inner + 1 + (p if with_p else 0) - (d // 2) * M.b2) / (d - 1)


def excluded_genera(M: ManifoldSpec, square: int, p: int) -> list[int]:
    """Integer genera where consecutive quotient b2+ values coincide (i = 1..p-1)."""
    out = set()
    for i in range(1, p):
        val = square * (1 + Fraction(2) ** (2 * i - 2 * p + 1)) / 6 - M.b2plus
        if val.denominator == 1 and val >= 0:
            out.add(int(val))
    return sorted(out)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def genus_hypotheses(M: ManifoldSpec, cls: SurfaceClass, p: int) -> list[Condition]:
    return _spin_check(M, cls, p) + [Condition("b2+(M) > 1", M.b2plus > 1, f"b2+(M) = {M.b2plus}")]


def genus_bound(M: ManifoldSpec, cls: SurfaceClass, p: int) -> GenusBoundReport:
    """Lower bound for the genus of an embedded surface representing ``cls``.

    A genus is possible when it is at least the Furuta bound and either reaches the refined
    bound or is one of the excluded genera, where the refined theorem says nothing.  The
    effective minimum is the least possible genus.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    hyps = genus_hypotheses(M, cls, p)
    for h in hyps:
        if not h.passed:
            raise HypothesisFailed(h.name, hyps)
    sq = cls.square(M.form)
    furuta = _bound(M, sq, p, with_p=False)
    refined = _bound(M, sq, p, with_p=True)
    excluded = excluded_genera(M, sq, p)
    lo, hi = _ceil(furuta), _ceil(refined)
    candidates = [e for e in excluded if lo <= e < hi]
    effective = min(candidates + [hi])
    notes = []
    k = _k_value(M, sq, p)
    m0 = _m_value(M.b2plus, sq, effective, p, 0)
    if candidates:
        notes.append(f"genus {effective} is excluded from the refined bound; Furuta bound {furuta} still allows it")
    notes.append(f"at g = {effective}: k = {k}, m0 = {m0}" + ("" if m0 > 0 else " (Furuta baseline needs m0 ≠ 0)"))
    return GenusBoundReport(
        manifold=M.name,
        coords=cls.coords,
        p=p,
        square=sq,
        furuta_bound=furuta,
        refined_bound=refined,
        excluded_genera=excluded,
        hypotheses=hyps,
        effective_min_genus=effective,
        notes=notes,
    )


# --------------------------------------------------------------------------
# spin actions and K3 involutions


@dataclass(frozen=True)
class FixedSetDescription:
    kind: str  # "points" | "surface" | "free" | "all"
    count: int = 0
    quotient_spin: bool = False

    def __post_init__(self) -> None:
        if self.kind not in ("points", "surface", "free", "all"):
            raise ValueError(f"unknown fixed-set kind {self.kind!r}")


def spin_type_from_fixed_set(desc: FixedSetDescription) -> str:
    """'even' or 'odd' type of the spin lift, read off the fixed set of the involution."""
    if desc.kind in ("points", "all"):
        return "even"
    if desc.kind == "surface":
        return "odd"
    return "even" if desc.quotient_spin else "odd"


def involution_quotient_arith(sigma_x: int, chi_x: int, fixed_points: int) -> tuple[int, int]:
    """(signature, Euler characteristic) of X/tau for an involution with isolated fixed points."""
    if sigma_x % 2:
        raise ParityError(f"σ(X) = {sigma_x} is odd")
    if (chi_x + fixed_points) % 2:
        raise ParityError(f"χ(X) + N = {chi_x + fixed_points} is odd")
    return sigma_x // 2, (chi_x + fixed_points) // 2


K3_K, K3_M, K3_SIGNATURE, K3_EULER = 1, 3, -16, 24


@dataclass
class Splitting:
    t: tuple[int, int]
    nondegeneracy: list[Condition]
    eliminated: bool
    verdict: str


@dataclass
class K3Classification:
    type: str
    b2plus_quotient: int
    fixed_points: int | None = None
    b2minus_quotient: int | None = None
    derivation: list[str] = field(default_factory=list)
    splittings: list[Splitting] = field(default_factory=list)


def _index(kind: str, t1: int, t2: int) -> IndexData:
    group = GroupSpec.odd_type(1) if kind == "odd" else GroupSpec.even(2)
    # s only matters through its total 2k here; put it on one character
    return IndexData.from_lists(group, [2 * K3_K, 0], [t1, t2])


def _judge(kind: str, idx: IndexData) -> Splitting:
    conds = check_nondegeneracy(idx)
    t = (idx.t_list()[0], idx.t_list()[1])
    if all(c.passed for c in conds):
        report = conclude_bound(solve_index(idx), idx)
        if not report.holds_for_input:
            return Splitting(t, conds, True, f"non-degenerate, the {kind}-type bound needs "
                                             f"{report.instantiated} but m = {idx.m}")
        return Splitting(t, conds, False, "non-degenerate and consistent")
    if idx.trivial_t == 0:
        cert = verify_theorem_c(idx)
        if cert.certified:
            return Splitting(t, conds, True, f"b2+(X/σ) = 0 but tr_φν λ₋₁(W−V) has pole factor "
                                             f"{cert.offending_factor}")
    failed = ", ".join(c.name for c in conds if not c.passed)
    return Splitting(t, conds, False, f"degenerate: {failed} fails, no conclusion")


def classify_qk3_involution(kind: str) -> K3Classification:
    """Possible b2+(X/sigma) for a spin involution on a rational cohomology K3.

    Every splitting t1 + t2 = m is run through the degree machinery: a non-degenerate one
    forces m >= 2k + 2 > 3, and t2 = 0 is excluded by the pole of tr_{phi nu}.  The survivors
    give b2+(X/sigma) = t2.
    """
    if kind not in ("even", "odd"):
        raise ValueError("kind must be 'even' or 'odd'")
    derivation = [f"k = {K3_K}, m = {K3_M}: the bound 2k+2 = {2 * K3_K + 2} ≤ m fails"]
    splittings = [_judge(kind, _index(kind, t1, K3_M - t1)) for t1 in range(K3_M + 1)]
    for sp in splittings:
        derivation.append(f"(t1, t2) = {sp.t}: {sp.verdict}" + (" → excluded" if sp.eliminated else ""))
    survivors = sorted({sp.t[1] for sp in splittings if not sp.eliminated})
    if len(survivors) != 1:
        raise AssertionError(f"expected one surviving b2+(X/σ), got {survivors}")
    out = K3Classification(kind, survivors[0], derivation=derivation, splittings=splittings)
    b2q = survivors[0]
    derivation.append(f"hence b2+(X/σ) = {b2q}")
    if kind == "even":
        sigma_q = K3_SIGNATURE // 2
        b2minus = b2q - sigma_q
        chi_q = 2 + b2q + b2minus  # b1(X/σ) = b3(X/σ) = 0
        n = 2 * chi_q - K3_EULER
        if involution_quotient_arith(K3_SIGNATURE, K3_EULER, n) != (sigma_q, chi_q):
            raise AssertionError("quotient arithmetic is inconsistent")
        derivation.append(f"σ(X/σ) = σ(X)/2 = {sigma_q}, so b2-(X/σ) = {b2minus}")
        derivation.append(f"χ(X/σ) = 2 + b2 = {chi_q} = (χ(X) + N)/2, so N = {n}")
        out.fixed_points, out.b2minus_quotient = n, b2minus
    return out


@dataclass
class ConstructionCheck:
    euler_cover: int
    signature_cover: int
    signature_cover_stated: int
    euler_blown_down: int
    signature_blown_down: int
    flags: list[str]


def k3_cover_construction_check() -> ConstructionCheck:
    """Double cover of K3 branched along eight disjoint (-2)-spheres, then eight blow-downs."""
    chi_y, sigma_y = 24, -16
    spheres = 8
    chi_s = 2 * spheres
    s_square = -2 * spheres
    chi_cover = 2 * chi_y - chi_s
    # signature of a double branched cover: 2σ(Y) - [S]^2/2
    sigma_cover = 2 * sigma_y - s_square // 2
    stated = 24
    chi_x = chi_cover - spheres
    sigma_x = sigma_cover + spheres
    flags = []
    if sigma_cover != stated:
        flags.append(
            f"intermediate σ(X~): 2σ(Y~) - [S]²/2 = {sigma_cover}, stated value {stated}; "
            f"only {sigma_cover} is consistent with σ(X) = {sigma_x} after blowing down "
            f"{spheres} (-1)-spheres"
        )
    return ConstructionCheck(chi_cover, sigma_cover, stated, chi_x, sigma_x, flags)
