"""Independent dense solver for the degree alpha, used to cross-check the DFT route.

The unknowns are the raw coefficients of alpha in the basis chi*1, chi*1~, chi*h_i.  Each trace
equation is expanded into one linear row per power of phi, and the system is solved by
Gaussian elimination over Q(zeta).  Character values are computed here from the exponents
directly, without going through GroupSpec.char_value.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CyclotomicNumber, root_of_unity
from .degree import TraceSystem
from .repring import ONE, TILDE, RepElement


def _value(orders: tuple[int, ...], chi: tuple[int, ...], a: tuple[int, ...]) -> CyclotomicNumber:
    out = CyclotomicNumber.rational(1)
    for e, x, n in zip(chi, a, orders):
        out = out * root_of_unity(n.bit_length() - 1, e * x)
    return out


def _basis(system: TraceSystem) -> list[tuple[int, tuple[int, ...]]]:
    group = system.index.group
    chars = group.characters()
    out = []
    for slot in [ONE, TILDE] + list(range(1, system.h_cutoff + 1)):
        parity = max(slot, 0) % 2
        for chi in chars:
            if group.odd and chi[0] % 2 != parity:
                continue
            out.append((slot, chi))
    return out


def _rows(system: TraceSystem, basis):
    orders = system.index.group.orders
    n = system.h_cutoff
    for eq in system.equations:
        if eq.kind == "skipped":
            continue
        g = eq.element
        vals = [_value(orders, chi, g.finite) for _, chi in basis]
        if eq.kind == "lambda":
            assert eq.value is not None
            if not eq.value.is_polynomial:
                yield None, f"non-polynomial value at {g}"
                return
            rhs_poly = eq.value.as_laurent()
        else:
            rhs_poly = None
        if g.pin2 == "J":
            row = [v if slot == ONE else (-v if slot == TILDE else CyclotomicNumber.rational(0))
                   for (slot, _), v in zip(basis, vals)]
            rhs = rhs_poly.coeff_at(0) if rhs_poly is not None else CyclotomicNumber.rational(0)
            yield (row, rhs), None
            continue
        span = max([abs(e) for e in rhs_poly.terms] if rhs_poly is not None else [0], default=0)
        for e in range(-max(n, span), max(n, span) + 1):
            row = []
            for (slot, _), v in zip(basis, vals):
                hit = (slot in (ONE, TILDE) and e == 0) or (slot >= 1 and abs(e) == slot)
                row.append(v if hit else CyclotomicNumber.rational(0))
            rhs = rhs_poly.coeff_at(e) if rhs_poly is not None else CyclotomicNumber.rational(0)
            yield (row, rhs), None


def dense_solve(system: TraceSystem) -> tuple[str, RepElement | None]:
    """Return ("unique", alpha), ("underdetermined", None) or ("inconsistent", None)."""
    basis = _basis(system)
    rows = []
    for item, err in _rows(system, basis):
        if err:
            return "inconsistent", None
        rows.append(list(item[0]) + [item[1]])
    ncols = len(basis)
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(all(x.is_zero() for x in row[:-1]) and not row[-1].is_zero() for row in rows):
        return "inconsistent", None
    if len(pivots) < ncols:
        return "underdetermined", None
    terms = {}
    for i, c in enumerate(pivots):
        val = rows[i][-1]
        if not val.is_rational():
            return "inconsistent", None
        terms[basis[c]] = Fraction(val.to_fraction())
    return "unique", RepElement(system.index.group, terms)
