"""Representation rings of Pin(2) x A and of G_odd, their characters, and the Dirac index data.

A RepElement is stored as a sparse map ``(slot, character) -> rational`` where ``slot`` is
``ONE`` (the trivial representation), ``TILDE`` (the sign representation 1~) or ``i >= 1``
(the two-dimensional h_i), and ``character`` is a tuple of exponents naming a
one-dimensional representation of the finite abelian part.

G_odd = (Pin(2) x Z/2^{p+1}) / (Z/2) is handled inside R(Pin(2) x Z/2^{p+1}) with the parity
rule (xi^e h_i allowed iff e = i mod 2).  Its group elements are listed as (component, nu^j)
for 0 <= j < 2^p, since (-u, nu^{j + 2^p}) is the same element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Iterator, Mapping, NamedTuple

from .cyclotomic import CyclotomicNumber, LaurentPoly, RationalFn, root_of_unity
from .errors import GroupMismatch, NegativeMultiplicity, NonCyclicGroup, ParityError, PoleAtElement

ONE = 0
TILDE = -1

Char = tuple[int, ...]
AElement = tuple[int, ...]


def _log2(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ValueError(f"{n} is not a power of two")
    return n.bit_length() - 1


@dataclass(frozen=True)
class GroupSpec:
    """Finite part of the symmetry group.

    Even type: A = sum of Z/orders[i] (an empty tuple is the trivial group, i.e. plain Pin(2)).
    Odd type: ``orders == (2^{p+1},)`` and the group is G_odd.
    """

    orders: tuple[int, ...]
    odd: bool = False

    def __post_init__(self) -> None:
        for n in self.orders:
            if n < 2 or _log2(n) < 1:
                raise ValueError(f"factor orders must be powers of two >= 2, got {n}")
        if self.odd and (len(self.orders) != 1 or self.orders[0] < 4):
            raise ValueError("odd type needs a single factor Z/2^{p+1} with p >= 1")

    @classmethod
    def even(cls, *orders: int) -> GroupSpec:
        return cls(tuple(orders))

    @classmethod
    def odd_type(cls, p: int) -> GroupSpec:
        if p < 1:
            raise ValueError(f"odd type needs p >= 1, got {p}")
        return cls((1 << (p + 1),), odd=True)

    @classmethod
    def trivial(cls) -> GroupSpec:
        return cls(())

    @property
    def p(self) -> int:
        """Exponent of the acting Z/2^p (odd type, cyclic even type or trivial)."""
        if self.odd:
            return _log2(self.orders[0]) - 1
        if not self.orders:
            return 0
        if len(self.orders) != 1:
            raise NonCyclicGroup(f"{self} is not cyclic")
        return _log2(self.orders[0])

    @property
    def is_cyclic(self) -> bool:
        return self.odd or len(self.orders) <= 1

    @property
    def level(self) -> int:
        """Cyclotomic level holding every character value."""
        return max([_log2(n) for n in self.orders], default=1)

    @property
    def action_order(self) -> int:
        """|A| for even type, 2^p for odd type."""
        if self.odd:
            return self.orders[0] // 2
        out = 1
        for n in self.orders:
            out *= n
        return out

    def elements(self) -> list[AElement]:
        """Distinct finite parts of group elements (coset representatives for odd type)."""
        if self.odd:
            return [(j,) for j in range(self.orders[0] // 2)]
        return list(cartesian(*(range(n) for n in self.orders)))

    def characters(self, parity: int | None = None) -> list[Char]:
        """All characters; for odd type optionally only exponents of the given parity."""
        chars = list(cartesian(*(range(n) for n in self.orders)))
        if parity is not None:
            if not self.odd:
                raise ValueError("parity filter only applies to odd type")
            chars = [c for c in chars if c[0] % 2 == parity % 2]
        return chars

    def trivial_char(self) -> Char:
        return tuple(0 for _ in self.orders)

    def normalize(self, chi: Iterable[int]) -> Char:
        chi = tuple(chi)
        if len(chi) != len(self.orders):
            raise GroupMismatch(f"expected {len(self.orders)} residues, got {chi}")
        return tuple(e % n for e, n in zip(chi, self.orders))

    def char_value(self, chi: Char, a: AElement) -> CyclotomicNumber:
        """chi(a) as a root of unity."""
        level = self.level
        total = 0
        for e, x, n in zip(chi, a, self.orders):
            total += (e * x) << (level - _log2(n))
        return root_of_unity(level, total)

    def label(self) -> str:
        if self.odd:
            return f"G_odd(p={self.p})"
        if not self.orders:
            return "Pin(2)"
        return "Pin(2) x " + " + ".join(f"Z/{n}" for n in self.orders)

    def __str__(self) -> str:
        return self.label()


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    """A group element up to character equivalence.

    ``pin2`` is ``"phi"`` (a formal generator of a dense subgroup of S^1), ``"J"`` (any
    element of the non-identity component: every e^{i theta} J has trace 0 and determinant 1
    on h, hence eigenvalues +-i, so the angle is invisible to all characters used here) or
    ``"e"`` (the identity of Pin(2)).
    """

    pin2: str
    finite: AElement = ()

    def __post_init__(self) -> None:
        if self.pin2 not in ("phi", "J", "e"):
            raise ValueError(f"unknown Pin(2) component {self.pin2!r}")

    @classmethod
    def phi(cls, *finite: int) -> GroupElement:
        return cls("phi", tuple(finite))

    @classmethod
    def J(cls, *finite: int) -> GroupElement:
        return cls("J", tuple(finite))

    @classmethod
    def identity(cls, *finite: int) -> GroupElement:
        return cls("e", tuple(finite))

    def label(self, group: GroupSpec | None = None) -> str:
        head = {"phi": "φ", "J": "J", "e": "1"}[self.pin2]
        if not self.finite or not any(self.finite):
            return head
        if group is not None and group.is_cyclic and len(self.finite) == 1:
            gen = "ν" if group.odd else "η"
            j = self.finite[0]
            tail = gen if j == 1 else f"{gen}^{j}"
        else:
            tail = "(" + ",".join(map(str, self.finite)) + ")"
        return tail if head == "1" else f"{head}·{tail}"

    def __str__(self) -> str:
        return self.label()


# --------------------------------------------------------------------------


def _slot_product(a: int, b: int) -> list[tuple[int, int]]:
    if a == ONE:
        return [(b, 1)]
    if b == ONE:
        return [(a, 1)]
    if a == TILDE and b == TILDE:
        return [(ONE, 1)]
    if a == TILDE:
        return [(b, 1)]
    if b == TILDE:
        return [(a, 1)]
    d = abs(a - b)
    out = [(a + b, 1)]
    # h_0 = 1 + 1~
    out += [(ONE, 1), (TILDE, 1)] if d == 0 else [(d, 1)]
    return out


def _slot_name(slot: int) -> str:
    if slot == ONE:
        return "1"
    if slot == TILDE:
        return "t1"
    return f"h{slot}"


class RepElement:
    """Element of R(Pin(2) x A) (or R(G_odd)) with exact rational coefficients."""

    __slots__ = ("group", "_terms", "_hash")

    def __init__(self, group: GroupSpec, terms: Mapping[tuple[int, Char], object] | None = None) -> None:
        self.group = group
        clean: dict[tuple[int, Char], Fraction] = {}
        for (slot, chi), c in (terms or {}).items():
            if slot < TILDE:
                raise ValueError(f"bad slot {slot}")
            key = (slot, group.normalize(chi))
            val = clean.get(key, Fraction(0)) + Fraction(c)
            if val:
                clean[key] = val
            else:
                clean.pop(key, None)
        self._terms = clean
        self._hash: int | None = None

    # --- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, group: GroupSpec) -> RepElement:
        return cls(group)

    @classmethod
    def one(cls, group: GroupSpec) -> RepElement:
        return cls(group, {(ONE, group.trivial_char()): 1})

    @classmethod
    def tilde(cls, group: GroupSpec) -> RepElement:
        return cls(group, {(TILDE, group.trivial_char()): 1})

    @classmethod
    def h(cls, group: GroupSpec, i: int = 1) -> RepElement:
        if i < 1:
            raise ValueError("h_i needs i >= 1")
        return cls(group, {(i, group.trivial_char()): 1})

    @classmethod
    def char(cls, group: GroupSpec, chi: Iterable[int]) -> RepElement:
        """The one-dimensional representation of the finite part with character ``chi``."""
        return cls(group, {(ONE, tuple(chi)): 1})

    @classmethod
    def from_group_ring(cls, group: GroupSpec, slot: int, poly: Mapping[Char, object]) -> RepElement:
        return cls(group, {(slot, chi): c for chi, c in poly.items()})

    # --- accessors -----------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, Char], Fraction]:
        return dict(self._terms)

    def component(self, slot: int) -> dict[Char, Fraction]:
        return {chi: c for (s, chi), c in self._terms.items() if s == slot}

    @property
    def c0(self) -> dict[Char, Fraction]:
        return self.component(ONE)

    @property
    def c0_tilde(self) -> dict[Char, Fraction]:
        return self.component(TILDE)

    @property
    def h_coeffs(self) -> dict[int, dict[Char, Fraction]]:
        out: dict[int, dict[Char, Fraction]] = {}
        for (s, chi), c in self._terms.items():
            if s >= 1:
                out.setdefault(s, {})[chi] = c
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def is_parity_valid(self) -> bool:
        """For odd type: xi^e may multiply h_i only when e = i mod 2 (1 and 1~ count as i = 0)."""
        if not self.group.odd:
            return True
        return all(chi[0] % 2 == max(slot, 0) % 2 for slot, chi in self._terms)

    # --- ring operations -----------------------------------------------------

    def _check(self, other: RepElement) -> None:
        if other.group != self.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def _lift(self, other: object) -> RepElement | None:
        if isinstance(other, RepElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return RepElement.one(self.group) * Fraction(other)
        return None

    def __add__(self, other: object) -> RepElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return RepElement(self.group, out)

    __radd__ = __add__

    def __neg__(self) -> RepElement:
        return RepElement(self.group, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: object) -> RepElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> RepElement:
        return (-self) + other

    def __mul__(self, other: object) -> RepElement:
        if isinstance(other, (int, Fraction)):
            return RepElement(self.group, {k: c * other for k, c in self._terms.items()})
        if not isinstance(other, RepElement):
            return NotImplemented
        self._check(other)
        out: dict[tuple[int, Char], Fraction] = {}
        orders = self.group.orders
        for (s1, chi1), c1 in self._terms.items():
            for (s2, chi2), c2 in other._terms.items():
                chi = tuple((x + y) % n for x, y, n in zip(chi1, chi2, orders))
                for slot, mult in _slot_product(s1, s2):
                    key = (slot, chi)
                    out[key] = out.get(key, Fraction(0)) + mult * c1 * c2
        return RepElement(self.group, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RepElement:
        if n < 0:
            raise ValueError("negative powers are not defined in R(G)")
        result = RepElement.one(self.group)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- maps out of R(G) ----------------------------------------------------

    def restrict_to_circle(self) -> LaurentPoly:
        """Image in R(S^1) = Z[theta, theta^-1]: 1~ -> 1, characters -> 1, h_i -> theta^i + theta^-i."""
        out: dict[int, Fraction] = {}
        for (slot, _), c in self._terms.items():
            if slot <= 0:
                out[0] = out.get(0, Fraction(0)) + c
            else:
                out[slot] = out.get(slot, Fraction(0)) + c
                out[-slot] = out.get(-slot, Fraction(0)) + c
        return LaurentPoly(out)

    def character(self, g: GroupElement) -> LaurentPoly:
        """tr_g as a Laurent polynomial in phi (a constant unless g lies over phi)."""
        out = LaurentPoly()
        cache: dict[Char, CyclotomicNumber] = {}
        for (slot, chi), c in self._terms.items():
            if chi not in cache:
                cache[chi] = self.group.char_value(chi, g.finite)
            out = out + _slot_trace(slot, g.pin2) * (cache[chi] * c)
        return out

    # --- equality / display --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RepElement.one(self.group) * Fraction(other)
        if not isinstance(other, RepElement):
            return NotImplemented
        return self.group == other.group and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.group, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"RepElement({self.group}, {self})"

    def __str__(self) -> str:
        return format_rep(self)

    def to_json(self) -> dict:
        return {
            "group": group_to_json(self.group),
            "terms": [
                [_slot_name(slot), list(chi), str(c)]
                for (slot, chi), c in sorted(self._terms.items(), key=_display_key)
            ],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> RepElement:
        group = group_from_json(doc["group"])
        terms = {}
        for name, chi, c in doc["terms"]:
            terms[(_slot_from_name(name), tuple(chi))] = Fraction(c)
        return cls(group, terms)


def _slot_from_name(name: str) -> int:
    if name == "1":
        return ONE
    if name == "t1":
        return TILDE
    if name.startswith("h") and name[1:].isdigit() and int(name[1:]) >= 1:
        return int(name[1:])
    raise ValueError(f"bad slot name {name!r}")


def _slot_trace(slot: int, pin2: str) -> LaurentPoly:
    if slot == ONE:
        return LaurentPoly.constant(1)
    if slot == TILDE:
        return LaurentPoly.constant(-1 if pin2 == "J" else 1)
    if pin2 == "phi":
        return LaurentPoly({slot: 1, -slot: 1})
    if pin2 == "J":
        return LaurentPoly()
    return LaurentPoly.constant(2)


def _display_key(item: tuple[tuple[int, Char], Fraction]) -> tuple:
    (slot, chi), _ = item
    # h_i in decreasing i, then 1, then 1~
    rank = -slot if slot >= 1 else (0 if slot == ONE else 1)
    return (rank, chi)


def _char_name(group: GroupSpec, chi: Char) -> str:
    parts = []
    for f, e in enumerate(chi, start=1):
        if e == 0:
            continue
        parts.append(f"z{f}" if e == 1 else f"z{f}^{e}")
    return "*".join(parts)


def format_rep(a: RepElement) -> str:
    """Ring notation, e.g. ``h2 + 1 + t1`` or ``2 - 2*t1`` or ``1/2*z1*h1``."""
    if a.is_zero():
        return "0"
    pieces: list[tuple[bool, str]] = []
    for (slot, chi), c in sorted(a._terms.items(), key=_display_key):
        factors = [f for f in (_char_name(a.group, chi), "" if slot == ONE else _slot_name(slot)) if f]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        pieces.append((c < 0, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def group_to_json(group: GroupSpec) -> dict:
    if group.odd:
        return {"kind": "odd", "p": group.p}
    return {"kind": "even", "orders": list(group.orders)}


def group_from_json(doc: Mapping) -> GroupSpec:
    kind = doc.get("kind")
    if kind == "odd":
        return GroupSpec.odd_type(int(doc["p"]))
    if kind == "even":
        return GroupSpec.even(*(int(n) for n in doc.get("orders", [])))
    raise ValueError(f"unknown group kind {kind!r}")


def rep_mul(a: RepElement, b: RepElement) -> RepElement:
    return a * b


def restrict_to_circle(a: RepElement) -> LaurentPoly:
    return a.restrict_to_circle()


def character(a: RepElement, g: GroupElement) -> LaurentPoly:
    return a.character(g)


# --------------------------------------------------------------------------
# index data s*h - t*1~


@dataclass(frozen=True)
class IndexData:
    """The G-index s*h - t*1~ of the Dirac-plus-forms operator.

    ``s`` and ``t`` map characters of the finite part to multiplicities.  For odd type, s lives
    on odd exponents of xi and t on even exponents.
    """

    group: GroupSpec
    s: Mapping[Char, int] = field(default_factory=dict)
    t: Mapping[Char, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        g = self.group
        s = {g.normalize(c): int(v) for c, v in self.s.items() if v}
        t = {g.normalize(c): int(v) for c, v in self.t.items() if v}
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        if g.odd:
            if any(c[0] % 2 == 0 for c in s):
                raise ParityError("odd type: s must be supported on odd powers of xi")
            if any(c[0] % 2 == 1 for c in t):
                raise ParityError("odd type: t must be supported on even powers of xi")
        if sum(s.values()) % 2:
            raise ValueError("sum of s must be even (it equals 2k)")
        if any(v < 0 for v in t.values()):
            raise NegativeMultiplicity("t is an honest representation; multiplicities must be >= 0")

    @classmethod
    def from_lists(cls, group: GroupSpec, s: list[int], t: list[int]) -> IndexData:
        """Coefficient lists s_1..s_{2^p}, t_1..t_{2^p} in the usual indexing.

        Even type: s_i multiplies zeta^i.  Odd type: s_i multiplies xi^{2i-1}, t_i multiplies
        xi^{2i}.  The last entry is the coefficient of the trivial character of t.
        """
        if not group.is_cyclic:
            raise NonCyclicGroup("list form needs a cyclic group; pass character maps instead")
        n = group.action_order
        if len(s) != n or len(t) != n:
            raise ValueError(f"expected {n} coefficients for s and t")
        return cls(group, {cls._s_char(group, i): v for i, v in enumerate(s, 1)},
                   {cls._t_char(group, i): v for i, v in enumerate(t, 1)})

    @classmethod
    def furuta(cls, k: int, m: int) -> IndexData:
        g = GroupSpec.trivial()
        return cls(g, {(): 2 * k}, {(): m})

    @staticmethod
    def _s_char(group: GroupSpec, i: int) -> Char:
        if not group.orders:
            return ()
        return ((2 * i - 1,) if group.odd else (i,))

    @staticmethod
    def _t_char(group: GroupSpec, i: int) -> Char:
        if not group.orders:
            return ()
        return group.normalize((2 * i,) if group.odd else (i,))

    def s_list(self) -> list[int]:
        n = self.group.action_order
        return [self.s.get(self.group.normalize(self._s_char(self.group, i)), 0) for i in range(1, n + 1)]

    def t_list(self) -> list[int]:
        n = self.group.action_order
        return [self.t.get(self._t_char(self.group, i), 0) for i in range(1, n + 1)]

    @property
    def k(self) -> int:
        return sum(self.s.values()) // 2

    @property
    def m(self) -> int:
        return sum(self.t.values())

    @property
    def trivial_t(self) -> int:
        return self.t.get(self.group.trivial_char(), 0)

    def virtual_rep(self) -> RepElement:
        g = self.group
        h = RepElement.from_group_ring(g, 1, self.s)
        return h - RepElement.from_group_ring(g, TILDE, self.t)

    def to_json(self) -> dict:
        doc: dict = {"group": group_to_json(self.group)}
        if self.group.is_cyclic:
            doc["s"], doc["t"] = self.s_list(), self.t_list()
        else:
            doc["s"] = [[list(c), v] for c, v in sorted(self.s.items())]
            doc["t"] = [[list(c), v] for c, v in sorted(self.t.items())]
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> IndexData:
        group = group_from_json(doc["group"])
        s, t = doc.get("s", []), doc.get("t", [])
        if all(isinstance(x, int) for x in list(s) + list(t)):
            return cls.from_lists(group, list(s), list(t))
        return cls(group, {tuple(c): v for c, v in s}, {tuple(c): v for c, v in t})


# --------------------------------------------------------------------------
# eigenlines, fixed dimensions and lambda_{-1} traces


class Line(NamedTuple):
    side: str  # "V" (the s*h part) or "W" (the t*1~ part)
    char: Char
    multiplicity: int
    eigenvalue: LaurentPoly  # a monomial c*phi^e; e = 0 unless g lies over phi


def eigenlines(idx: IndexData, g: GroupElement) -> Iterator[Line]:
    """Complex lines of V = s*h and W = t*1~ together with the eigenvalue of g on each."""
    group = idx.group
    for chi, mult in idx.s.items():
        x = group.char_value(chi, g.finite)
        if g.pin2 == "phi":
            evs = [LaurentPoly.monomial(x, 1), LaurentPoly.monomial(x, -1)]
        elif g.pin2 == "J":
            i = root_of_unity(2, 1)
            evs = [LaurentPoly.constant(x * i), LaurentPoly.constant(-(x * i))]
        else:
            evs = [LaurentPoly.constant(x)] * 2
        for ev in evs:
            yield Line("V", chi, mult, ev)
    for chi, mult in idx.t.items():
        x = group.char_value(chi, g.finite)
        yield Line("W", chi, mult, LaurentPoly.constant(-x if g.pin2 == "J" else x))


_UNIT = LaurentPoly.constant(1)


class FixedDims(NamedTuple):
    dim_v: int
    dim_w: int
    virtual: bool  # a negative multiplicity contributed to a fixed line
    has_fixed_lines: bool

    @property
    def difference(self) -> int:
        return self.dim_v - self.dim_w


def fixed_dims(idx: IndexData, g: GroupElement, strict: bool = False) -> FixedDims:
    """Signed dimensions of the g-fixed subspaces of V and W.

    With ``strict=True`` a negative multiplicity on a fixed line raises NegativeMultiplicity
    instead of being reported through the ``virtual`` flag.
    """
    dv = dw = 0
    virtual = touched = False
    for line in eigenlines(idx, g):
        if line.eigenvalue != _UNIT:
            continue
        touched = True
        if line.multiplicity < 0:
            if strict:
                raise NegativeMultiplicity(f"virtual line {line.char} is fixed by {g}")
            virtual = True
        if line.side == "V":
            dv += line.multiplicity
        else:
            dw += line.multiplicity
    return FixedDims(dv, dw, virtual, touched)


def lambda_minus_one_trace(idx: IndexData, g: GroupElement, complement: bool = False) -> RationalFn:
    """tr_g lambda_{-1}(W - V) = prod_W (1 - eigenvalue) / prod_V (1 - eigenvalue).

    With ``complement=True`` the fixed lines are dropped, giving tr_g lambda_{-1}(W_g^perp -
    V_g^perp).  Otherwise a fixed line in the denominator raises PoleAtElement.
    """
    # collect net exponents per eigenvalue first: V and W lines often cancel
    exponents: dict[LaurentPoly, int] = {}
    for line in eigenlines(idx, g):
        exponent = line.multiplicity if line.side == "W" else -line.multiplicity
        if line.eigenvalue == _UNIT:
            if complement or exponent == 0:
                continue
            if exponent < 0:
                raise PoleAtElement(f"{g} fixes a line of {line.side} (character {line.char})")
            return RationalFn(LaurentPoly())
        exponents[line.eigenvalue] = exponents.get(line.eigenvalue, 0) + exponent
    num = LaurentPoly.constant(1)
    den = LaurentPoly.constant(1)
    for ev, exponent in exponents.items():
        if exponent > 0:
            num = num * _one_minus_power(ev, exponent)
        elif exponent < 0:
            den = den * _one_minus_power(ev, -exponent)
    return RationalFn(num, den)


@lru_cache(maxsize=4096)
def _one_minus_power(eigenvalue: LaurentPoly, n: int) -> LaurentPoly:
    return (_UNIT - eigenvalue) ** n


def invariant_dim(idx: IndexData, generators: Iterable[AElement]) -> int:
    """Dimension of the part of t fixed by the subgroup generated by ``generators``."""
    gens = [tuple(a) for a in generators]
    group = idx.group
    return sum(
        mult for chi, mult in idx.t.items() if all(group.char_value(chi, a) == 1 for a in gens)
    )


def quotient_b2plus(idx: IndexData, j: int) -> int:
    """b2+ of the quotient by Z/2^j inside the acting Z/2^p: sum of t_i over 2^j | i."""
    group = idx.group
    if not group.is_cyclic:
        raise NonCyclicGroup("quotient_b2plus needs a cyclic group; use invariant_dim")
    p = group.p
    if not 0 <= j <= p:
        raise ValueError(f"j must lie in [0, {p}], got {j}")
    if j == 0 or not group.orders:
        return idx.m
    return invariant_dim(idx, [(1 << (p - j),)])
