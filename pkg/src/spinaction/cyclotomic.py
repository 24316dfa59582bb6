"""Exact arithmetic in Q(zeta_{2^N}) and Laurent polynomials / rational functions over it.

Elements of Q(zeta_{2^N}) are coefficient vectors modulo x^{2^{N-1}} + 1.  Every value is
stored at the smallest level that represents it, so equality is plain tuple comparison.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, ZeroDenominator

Scalar = Union[int, Fraction]


def _width(level: int) -> int:
    return 1 << (level - 1)


def _canonical(level: int, coeffs: list[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    # descend while the value lies in the index-2 subfield (only even powers of zeta)
    while level > 1 and all(c == 0 for c in coeffs[1::2]):
        coeffs = coeffs[::2]
        level -= 1
    return level, tuple(coeffs)


def _lift(level: int, coeffs: tuple[Fraction, ...], target: int) -> list[Fraction]:
    if target == level:
        return list(coeffs)
    step = 1 << (target - level)
    out = [Fraction(0)] * _width(target)
    for i, c in enumerate(coeffs):
        out[i * step] = c
    return out


def _integral(coeffs: list[Fraction]) -> tuple[int, list[int]]:
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return 1, [c.numerator for c in coeffs]
    return den, [c.numerator * (den // c.denominator) for c in coeffs]


class CyclotomicNumber:
    """An exact element of Q(zeta_{2^N}).

    ``coeffs[i]`` is the coefficient of zeta^i where zeta = exp(2*pi*i / 2^level).
    """

    __slots__ = ("_level", "_coeffs", "_hash")

    def __init__(self, level: int, coeffs: Iterable[Scalar]) -> None:
        if level < 1:
            raise ValueError(f"level must be >= 1, got {level}")
        cs = [Fraction(c) for c in coeffs]
        if len(cs) != _width(level):
            raise ValueError(f"level {level} needs {_width(level)} coefficients, got {len(cs)}")
        self._level, self._coeffs = _canonical(level, cs)
        self._hash: int | None = None

    @classmethod
    def _raw(cls, level: int, coeffs: list[Fraction]) -> CyclotomicNumber:
        obj = object.__new__(cls)
        obj._level, obj._coeffs = _canonical(level, coeffs)
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, value: Scalar) -> CyclotomicNumber:
        return cls._raw(1, [Fraction(value)])

    @classmethod
    def coerce(cls, value: object) -> CyclotomicNumber:
        if isinstance(value, CyclotomicNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value)
        raise TypeError(f"cannot interpret {value!r} as a cyclotomic number")

    @property
    def level(self) -> int:
        return self._level

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def coeffs_at(self, level: int) -> tuple[Fraction, ...]:
        """Coordinates after embedding into Q(zeta_{2^level})."""
        if level < self._level:
            raise ValueError(f"cannot express a level-{self._level} value at level {level}")
        return tuple(_lift(self._level, self._coeffs, level))

    def is_zero(self) -> bool:
        return self._level == 1 and self._coeffs[0] == 0

    def is_rational(self) -> bool:
        return self._level == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._coeffs[0]

    def to_complex(self) -> complex:
        n = 1 << self._level
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * i / n) for i, c in enumerate(self._coeffs) if c),
            0j,
        )

    # --- arithmetic -------------------------------------------------------

    def _pair(self, other: object) -> tuple[int, list[Fraction], list[Fraction]] | None:
        try:
            o = CyclotomicNumber.coerce(other)
        except TypeError:
            return None
        level = max(self._level, o._level)
        return level, _lift(self._level, self._coeffs, level), _lift(o._level, o._coeffs, level)

    def __add__(self, other: object) -> CyclotomicNumber:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        level, a, b = pair
        return CyclotomicNumber._raw(level, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber._raw(self._level, [-c for c in self._coeffs])

    def __sub__(self, other: object) -> CyclotomicNumber:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        level, a, b = pair
        return CyclotomicNumber._raw(level, [x - y for x, y in zip(a, b)])

    def __rsub__(self, other: object) -> CyclotomicNumber:
        return -(self - other)

    def __mul__(self, other: object) -> CyclotomicNumber:
        if isinstance(other, (int, Fraction)):
            if other == 1:
                return self
            return CyclotomicNumber._raw(self._level, [c * other for c in self._coeffs])
        if isinstance(other, CyclotomicNumber):
            # rational factors are common; skip the convolution
            if other._level == 1:
                return self * other._coeffs[0]
            if self._level == 1:
                return other * self._coeffs[0]
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        level, a, b = pair
        n = _width(level)
        # convolve integer numerators over a common denominator; Fraction ops are the bottleneck
        da, na = _integral(a)
        db, nb = _integral(b)
        out = [0] * n
        for i, x in enumerate(na):
            if not x:
                continue
            for j, y in enumerate(nb):
                if not y:
                    continue
                k = i + j
                if k >= n:  # zeta^n = -1
                    out[k - n] -= x * y
                else:
                    out[k] += x * y
        den = da * db
        return CyclotomicNumber._raw(level, [Fraction(c, den) for c in out])

    __rmul__ = __mul__

    def _flip(self) -> CyclotomicNumber:
        # Galois automorphism zeta -> -zeta
        return CyclotomicNumber._raw(
            self._level, [-c if i % 2 else c for i, c in enumerate(self._coeffs)]
        )

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(zeta)")
        if self._level == 1:
            return CyclotomicNumber.rational(1 / self._coeffs[0])
        # a * a(-zeta) lies in the index-2 subfield, so recurse there
        conj = self._flip()
        return conj * (self * conj).inverse()

    def __truediv__(self, other: object) -> CyclotomicNumber:
        try:
            o = CyclotomicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> CyclotomicNumber:
        return CyclotomicNumber.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> CyclotomicNumber:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.rational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> CyclotomicNumber:
        """Complex conjugate (zeta -> zeta^{-1})."""
        n = _width(self._level)
        out = [Fraction(0)] * n
        out[0] = self._coeffs[0]
        for i in range(1, n):
            out[n - i] = -self._coeffs[i]
        return CyclotomicNumber._raw(self._level, out)

    # --- comparison / display --------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._level == 1 and self._coeffs[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self._level == other._level and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._coeffs[0]) if self._level == 1 else hash((self._level, self._coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self._level}, {[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        parts: list[tuple[bool, str]] = []
        for i, c in enumerate(self._coeffs):
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            elif mag == 1:
                body = f"ζ[{self._level}]^{i}"
            else:
                body = f"{mag}*ζ[{self._level}]^{i}"
            parts.append((c < 0, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out


def root_of_unity(level: int, power: int) -> CyclotomicNumber:
    """zeta_{2^level} ** power."""
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    n = _width(level)
    e = power % (2 * n)
    coeffs = [Fraction(0)] * n
    if e < n:
        coeffs[e] = Fraction(1)
    else:
        coeffs[e - n] = Fraction(-1)
    return CyclotomicNumber._raw(level, coeffs)


ZERO = CyclotomicNumber.rational(0)
ONE = CyclotomicNumber.rational(1)


# --------------------------------------------------------------------------
# Laurent polynomials in one formal variable


class LaurentPoly:
    """Finite sum of c_e * x^e with c_e in Q(zeta_{2^N}); the variable is formal."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None) -> None:
        clean: dict[int, CyclotomicNumber] = {}
        for e, c in (terms or {}).items():
            c = CyclotomicNumber.coerce(c)
            if not c.is_zero():
                clean[int(e)] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def constant(cls, c: object) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, c: object, exponent: int) -> LaurentPoly:
        return cls({exponent: c})

    @classmethod
    def variable(cls) -> LaurentPoly:
        return cls({1: 1})

    @property
    def terms(self) -> dict[int, CyclotomicNumber]:
        return dict(self._terms)

    def coeff_at(self, exponent: int) -> CyclotomicNumber:
        return self._terms.get(exponent, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponent(self) -> int:
        return min(self._terms)

    def max_exponent(self) -> int:
        return max(self._terms)

    def constant_value(self) -> CyclotomicNumber:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coeff_at(0)

    def shift(self, n: int) -> LaurentPoly:
        return LaurentPoly({e + n: c for e, c in self._terms.items()})

    def reflect(self) -> LaurentPoly:
        """x -> x^{-1}."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def evaluate(self, x: complex) -> complex:
        return sum((c.to_complex() * x**e for e, c in self._terms.items()), 0j)

    def __add__(self, other: object) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> LaurentPoly:
        return LaurentPoly.constant(other) - self

    def __mul__(self, other: object) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            try:
                c = CyclotomicNumber.coerce(other)
            except TypeError:
                return NotImplemented
            return LaurentPoly({e: v * c for e, v in self._terms.items()})
        out: dict[int, CyclotomicNumber] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            return LaurentPoly({-e * -n: c.inverse() ** -n})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "φ") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            elif c.is_rational():
                pieces.append(f"{c}*{mono}")
            else:
                pieces.append(f"({c})*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    # --- conversion to ordinary polynomials ----------------------------------

    def to_dense(self) -> tuple[int, list[CyclotomicNumber]]:
        """Return (lo, cs) with self == x^lo * sum(cs[i] x^i) and cs[0] != 0."""
        if not self._terms:
            return 0, []
        lo, hi = self.min_exponent(), self.max_exponent()
        return lo, [self.coeff_at(e) for e in range(lo, hi + 1)]

    @classmethod
    def from_dense(cls, lo: int, cs: list[CyclotomicNumber]) -> LaurentPoly:
        return cls({lo + i: c for i, c in enumerate(cs)})


# --------------------------------------------------------------------------
# dense polynomial helpers over Q(zeta); lists are low-degree first, no trailing zeros


def _trim(p: list[CyclotomicNumber]) -> list[CyclotomicNumber]:
    while p and p[-1].is_zero():
        p = p[:-1]
    return p


def poly_divmod(
    a: list[CyclotomicNumber], b: list[CyclotomicNumber]
) -> tuple[list[CyclotomicNumber], list[CyclotomicNumber]]:
    a, b = _trim(list(a)), _trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    lead_inv = b[-1].inverse()
    q = [ZERO] * (len(a) - len(b) + 1)
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] * lead_inv
        q[k] = c
        if c.is_zero():
            continue
        for i, bc in enumerate(b):
            r[k + i] = r[k + i] - c * bc
    return _trim(q), _trim(r[: len(b) - 1])


def poly_monic(p: list[CyclotomicNumber]) -> list[CyclotomicNumber]:
    p = _trim(list(p))
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def poly_gcd(a: list[CyclotomicNumber], b: list[CyclotomicNumber]) -> list[CyclotomicNumber]:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_mul(a: list[CyclotomicNumber], b: list[CyclotomicNumber]) -> list[CyclotomicNumber]:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


class RationalFn:
    """Reduced quotient of Laurent polynomials.

    Canonical form: gcd(numerator, denominator) = 1 and the denominator is an ordinary
    polynomial with nonzero constant term and leading coefficient 1.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPoly, denominator: LaurentPoly | None = None) -> None:
        if denominator is None:
            denominator = LaurentPoly.constant(1)
        if denominator.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        self.numerator, self.denominator = _reduce(numerator, denominator)

    @property
    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def as_laurent(self) -> LaurentPoly:
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.numerator

    def evaluate(self, x: complex) -> complex:
        return self.numerator.evaluate(x) / self.denominator.evaluate(x)

    def __mul__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.numerator * other.numerator, self.denominator * other.denominator)

    def __truediv__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.numerator * other.denominator, self.denominator * other.numerator)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CyclotomicNumber, LaurentPoly)):
            other = RationalFn(other if isinstance(other, LaurentPoly) else LaurentPoly.constant(other))
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __repr__(self) -> str:
        return f"RationalFn({self})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "φ") -> str:
        if self.is_polynomial:
            return self.numerator.format(var)
        return f"({self.numerator.format(var)}) / ({self.denominator.format(var)})"


def _reduce(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return num, LaurentPoly.constant(1)
    nlo, ncs = num.to_dense()
    dlo, dcs = den.to_dense()
    g = poly_gcd(ncs, dcs)
    if len(g) > 1:
        ncs = poly_divmod(ncs, g)[0]
        dcs = poly_divmod(dcs, g)[0]
    lead = dcs[-1].inverse()
    ncs = [c * lead for c in ncs]
    dcs = [c * lead for c in dcs]
    return LaurentPoly.from_dense(nlo - dlo, ncs), LaurentPoly.from_dense(0, dcs)


def rational_reduce(num: LaurentPoly, den: LaurentPoly) -> RationalFn:
    return RationalFn(num, den)


def product(factors: Iterable[LaurentPoly]) -> LaurentPoly:
    return reduce(lambda a, b: a * b, factors, LaurentPoly.constant(1))
