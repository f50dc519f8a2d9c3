"""Exact arithmetic in free supercommutative algebras k[x_1..x_m, xi_1..xi_n].

Representation
--------------
A monomial is an even exponent tuple plus a bitmask of odd indices; the
canonical form keeps odd factors in ascending index order, so a product
of odd variables carries its reordering sign in the coefficient.  A
polynomial is a sparse map monomial -> QI with no zero coefficients.
Multiplication obeys the sign rule a*b = (-1)^{p(a)p(b)} b*a: an odd
variable squares to zero, and interleaving two ascending odd masks costs
one sign per inversion.

Everything here is immutable after construction and safe to share.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    DuplicateVariable,
    MixedParityGenerator,
    MixedTables,
    ParityViolation,
    TooManyOddVariables,
    UnknownVariable,
)
from .scalars import ONE, QI, ZERO

_NAME_RE = _re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

MAX_ODD_VARS = 64


@dataclass(frozen=True)
class VarTable:
    """Declares the ambient algebra: m even names followed by n odd names."""

    evens: tuple[str, ...]
    odds: tuple[str, ...]

    def __post_init__(self):
        names = self.evens + self.odds
        seen = set()
        for name in names:
            if not _NAME_RE.match(name):
                raise UnknownVariable(f"invalid variable name {name!r}")
            if name == "i":
                raise DuplicateVariable("'i' is reserved for the imaginary unit")
            if name in seen:
                raise DuplicateVariable(f"variable {name!r} declared twice")
            seen.add(name)
        if len(self.odds) > MAX_ODD_VARS:
            raise TooManyOddVariables(
                f"{len(self.odds)} odd variables; the limit is {MAX_ODD_VARS}"
            )

    @property
    def m(self) -> int:
        return len(self.evens)

    @property
    def n(self) -> int:
        return len(self.odds)

    def even_index(self, name: str) -> int:
        try:
            return self.evens.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown even variable {name!r}") from None

    def odd_index(self, name: str) -> int:
        try:
            return self.odds.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown odd variable {name!r}") from None


@dataclass(frozen=True, slots=True)
class SuperMonomial:
    """evens[i] is the exponent of the i-th even variable; odds is an index bitmask."""

    evens: tuple[int, ...]
    odds: int

    def degree(self) -> int:
        return sum(self.evens) + self.odds.bit_count()

    def parity(self) -> int:
        return self.odds.bit_count() & 1

    def sort_key(self) -> tuple:
        # Graded lexicographic: total degree, then even exponents, then mask.
        return (self.degree(), self.evens, self.odds)


def mask_to_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def koszul_sign(left_mask: int, right_mask: int) -> int:
    """Sign of sorting the concatenation of two ascending odd blocks.

    Counts pairs (a in left, b in right) with a > b; assumes disjoint masks.
    """
    inversions = 0
    b = right_mask
    while b:
        low = b & -b
        j = low.bit_length() - 1
        inversions += (left_mask >> (j + 1)).bit_count()
        b ^= low
    return -1 if inversions & 1 else 1


class SuperPolynomial:
    """Sparse exact polynomial over a VarTable; immutable value semantics."""

    __slots__ = ("table", "_terms")

    def __init__(self, table: VarTable, terms: Mapping[SuperMonomial, QI] | None = None):
        self.table = table
        clean: dict[SuperMonomial, QI] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = coeff
        self._terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(table: VarTable) -> "SuperPolynomial":
        return SuperPolynomial(table)

    @staticmethod
    def const(table: VarTable, value) -> "SuperPolynomial":
        c = QI.of(value)
        if c.is_zero():
            return SuperPolynomial(table)
        return SuperPolynomial(table, {SuperMonomial((0,) * table.m, 0): c})

    @staticmethod
    def even_var(table: VarTable, index: int) -> "SuperPolynomial":
        exps = [0] * table.m
        exps[index] = 1
        return SuperPolynomial(table, {SuperMonomial(tuple(exps), 0): ONE})

    @staticmethod
    def odd_var(table: VarTable, index: int) -> "SuperPolynomial":
        return SuperPolynomial(table, {SuperMonomial((0,) * table.m, 1 << index): ONE})

    @staticmethod
    def var(table: VarTable, name: str) -> "SuperPolynomial":
        if name in table.evens:
            return SuperPolynomial.even_var(table, table.even_index(name))
        return SuperPolynomial.odd_var(table, table.odd_index(name))

    # -- inspection ----------------------------------------------------

    def items(self) -> Iterator[tuple[SuperMonomial, QI]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[SuperMonomial, QI]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coefficient(self, mono: SuperMonomial) -> QI:
        return self._terms.get(mono, ZERO)

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> QI:
        return self._terms.get(SuperMonomial((0,) * self.table.m, 0), ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(mono.degree() for mono in self._terms)

    def parity(self) -> int | None:
        """0 or 1 when parity-homogeneous and nonzero, else None."""
        parities = {mono.parity() for mono in self._terms}
        if len(parities) == 1:
            return parities.pop()
        return None

    def is_homogeneous_even(self) -> bool:
        return all(m.parity() == 0 for m in self._terms)

    def is_homogeneous_odd(self) -> bool:
        return all(m.parity() == 1 for m in self._terms)

    # -- arithmetic ----------------------------------------------------

    def _check_table(self, other: "SuperPolynomial"):
        if self.table != other.table:
            raise MixedTables("operands declared over different variable tables")

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.table == other.table and self._terms == other._terms

    def __hash__(self):
        return hash((self.table, frozenset(self._terms.items())))

    def __add__(self, other) -> "SuperPolynomial":
        if not isinstance(other, SuperPolynomial):
            other = SuperPolynomial.const(self.table, other)
        self._check_table(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc = out.get(mono)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return SuperPolynomial(self.table, out)

    __radd__ = __add__

    def __neg__(self) -> "SuperPolynomial":
        return SuperPolynomial(self.table, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "SuperPolynomial":
        if not isinstance(other, SuperPolynomial):
            other = SuperPolynomial.const(self.table, other)
        return self + (-other)

    def __rsub__(self, other) -> "SuperPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "SuperPolynomial":
        if not isinstance(other, SuperPolynomial):
            return self.scale(other)
        self._check_table(other)
        out: dict[SuperMonomial, QI] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                if ma.odds & mb.odds:
                    continue  # repeated odd factor vanishes
                sign = koszul_sign(ma.odds, mb.odds)
                mono = SuperMonomial(
                    tuple(a + b for a, b in zip(ma.evens, mb.evens)),
                    ma.odds | mb.odds,
                )
                coeff = ca * cb
                if sign < 0:
                    coeff = -coeff
                acc = out.get(mono)
                acc = coeff if acc is None else acc + coeff
                if acc:
                    out[mono] = acc
                else:
                    out.pop(mono, None)
        return SuperPolynomial(self.table, out)

    def __rmul__(self, other) -> "SuperPolynomial":
        # Scalars are central, so this only occurs for scalar * poly.
        return self.scale(other)

    def scale(self, value) -> "SuperPolynomial":
        c = QI.of(value)
        if c.is_zero():
            return SuperPolynomial(self.table)
        return SuperPolynomial(self.table, {m: v * c for m, v in self._terms.items()})

    def __pow__(self, k: int) -> "SuperPolynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = SuperPolynomial.const(self.table, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structural operations ------------------------------------------

    def truncate(self, max_degree: int) -> "SuperPolynomial":
        """Drop every monomial of total degree greater than max_degree."""
        return SuperPolynomial(
            self.table,
            {m: c for m, c in self._terms.items() if m.degree() <= max_degree},
        )

    def evaluate(self, coords: Sequence[QI]) -> QI:
        """Value at the closed point x_i = coords[i], every odd variable = 0."""
        if len(coords) != self.table.m:
            raise DimensionMismatch(
                f"point has {len(coords)} coordinates, table has {self.table.m} even variables"
            )
        total = ZERO
        for mono, coeff in self._terms.items():
            if mono.odds:
                continue
            value = coeff
            for exp, a in zip(mono.evens, coords):
                if exp:
                    value = value * (QI.of(a) ** exp)
            total = total + value
        return total

    def substitute(
        self,
        target: VarTable,
        even_images: Sequence["SuperPolynomial"],
        odd_images: Sequence["SuperPolynomial"],
    ) -> "SuperPolynomial":
        """Apply the algebra morphism sending each variable to its image.

        Even images must be parity-even (or zero), odd images parity-odd
        (or zero); the Koszul sign of substituting into a sorted odd block
        is produced by the polynomial product itself.
        """
        if len(even_images) != self.table.m or len(odd_images) != self.table.n:
            raise DimensionMismatch("one image required per variable")
        for img in even_images:
            if img.table != target:
                raise MixedTables("even image over the wrong table")
            if not img.is_homogeneous_even():
                raise ParityViolation("image of an even variable must be parity-even")
        for img in odd_images:
            if img.table != target:
                raise MixedTables("odd image over the wrong table")
            if not img.is_homogeneous_odd():
                raise ParityViolation("image of an odd variable must be parity-odd")
        power_cache: dict[tuple[int, int], SuperPolynomial] = {}

        def even_power(i: int, e: int) -> SuperPolynomial:
            got = power_cache.get((i, e))
            if got is None:
                got = even_images[i] ** e
                power_cache[(i, e)] = got
            return got

        total = SuperPolynomial.zero(target)
        for mono, coeff in self._terms.items():
            term = SuperPolynomial.const(target, coeff)
            for i, e in enumerate(mono.evens):
                if e:
                    term = term * even_power(i, e)
                    if term.is_zero():
                        break
            if not term.is_zero():
                for j in mask_to_indices(mono.odds):
                    term = term * odd_images[j]
                    if term.is_zero():
                        break
            total = total + term
        return total

    def shift_to_origin(self, coords: Sequence[QI]) -> "SuperPolynomial":
        """Substitute x_i -> x_i + a_i so the point lands at the origin."""
        table = self.table
        if len(coords) != table.m:
            raise DimensionMismatch(
                f"point has {len(coords)} coordinates, table has {table.m} even variables"
            )
        evens = [
            SuperPolynomial.even_var(table, i) + SuperPolynomial.const(table, coords[i])
            for i in range(table.m)
        ]
        odds = [SuperPolynomial.odd_var(table, j) for j in range(table.n)]
        return self.substitute(table, evens, odds)

    def __repr__(self) -> str:
        return f"SuperPolynomial({poly_to_string(self)})"

    def __str__(self) -> str:
        return poly_to_string(self)


def term(table: VarTable, coeff, factors: Iterable[str]) -> SuperPolynomial:
    """Normalize one signed product of variables into a canonical polynomial.

    Odd factors given out of order absorb the reordering sign into the
    coefficient; a repeated odd factor yields the zero polynomial.
    """
    c = QI.of(coeff)
    evens = [0] * table.m
    odd_sequence: list[int] = []
    for name in factors:
        if name in table.evens:
            evens[table.even_index(name)] += 1
        else:
            odd_sequence.append(table.odd_index(name))
    mask = 0
    sign = 1
    for j in odd_sequence:
        bit = 1 << j
        if mask & bit:
            return SuperPolynomial.zero(table)
        # j must hop over every already-placed index greater than it.
        if (mask >> (j + 1)).bit_count() & 1:
            sign = -sign
        mask |= bit
    if sign < 0:
        c = -c
    if c.is_zero():
        return SuperPolynomial.zero(table)
    return SuperPolynomial(table, {SuperMonomial(tuple(evens), mask): c})


@dataclass(frozen=True)
class ClosedPoint:
    """A closed point: one exact coordinate per even variable, odd coordinates zero."""

    coords: tuple[QI, ...]

    @staticmethod
    def of(values: Iterable) -> "ClosedPoint":
        return ClosedPoint(tuple(QI.of(v) for v in values))

    @property
    def arity(self) -> int:
        return len(self.coords)

    def is_origin(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Presentation:
    """A supervariety presented as parity-homogeneous generators over a table.

    even_gens are the parity-even relations, odd_gens the parity-odd ones.
    Zero generators are dropped so generator counts reflect the ideal.
    """

    table: VarTable
    even_gens: tuple[SuperPolynomial, ...] = ()
    odd_gens: tuple[SuperPolynomial, ...] = ()

    def __post_init__(self):
        kept_even = []
        for g in self.even_gens:
            if g.table != self.table:
                raise MixedTables("generator over the wrong table")
            if g.is_zero():
                continue
            if not g.is_homogeneous_even():
                raise MixedParityGenerator(f"not parity-even: {g}")
            kept_even.append(g)
        kept_odd = []
        for g in self.odd_gens:
            if g.table != self.table:
                raise MixedTables("generator over the wrong table")
            if g.is_zero():
                continue
            if not g.is_homogeneous_odd():
                raise MixedParityGenerator(f"not parity-odd: {g}")
            kept_odd.append(g)
        object.__setattr__(self, "even_gens", tuple(kept_even))
        object.__setattr__(self, "odd_gens", tuple(kept_odd))

    @staticmethod
    def from_generators(table: VarTable, gens: Iterable[SuperPolynomial]) -> "Presentation":
        evens, odds = [], []
        for g in gens:
            if g.is_zero():
                continue
            p = g.parity()
            if p == 0:
                evens.append(g)
            elif p == 1:
                odds.append(g)
            else:
                raise MixedParityGenerator(f"mixed-parity generator: {g}")
        return Presentation(table, tuple(evens), tuple(odds))

    def all_gens(self) -> tuple[SuperPolynomial, ...]:
        return self.even_gens + self.odd_gens

    def max_degree(self) -> int:
        degs = [g.degree() for g in self.all_gens()]
        return max(degs) if degs else 0

    def check_point(self, point: ClosedPoint):
        if point.arity != self.table.m:
            raise DimensionMismatch(
                f"point arity {point.arity} != {self.table.m} even variables"
            )


def reduce_even(pres: Presentation) -> Presentation:
    """Classical shadow: kill every odd variable, drop the odd generators."""
    src = pres.table
    target = VarTable(src.evens, ())
    evens = [SuperPolynomial.even_var(target, i) for i in range(src.m)]
    odds = [SuperPolynomial.zero(target)] * src.n
    gens = []
    for g in pres.even_gens:
        image = g.substitute(target, evens, odds)
        if not image.is_zero():
            gens.append(image)
    return Presentation(target, tuple(gens), ())


# -- printing ----------------------------------------------------------


def _factor_strings(table: VarTable, mono: SuperMonomial) -> list[str]:
    factors = []
    for name, exp in zip(table.evens, mono.evens):
        if exp == 1:
            factors.append(name)
        elif exp > 1:
            factors.append(f"{name}^{exp}")
    for j in mask_to_indices(mono.odds):
        factors.append(table.odds[j])
    return factors


def poly_to_string(p: SuperPolynomial) -> str:
    """Canonical text form, reparseable by the source DSL."""
    if p.is_zero():
        return "0"
    pieces: list[tuple[bool, str]] = []  # (negative, magnitude-rendering)
    for mono, coeff in sorted(p._terms.items(), key=lambda kv: kv[0].sort_key(), reverse=True):
        factors = _factor_strings(p.table, mono)
        for frac, imag in ((coeff.re, False), (coeff.im, True)):
            if not frac:
                continue
            mag = -frac if frac < 0 else frac
            parts = []
            if mag != 1 or (not imag and not factors):
                parts.append(str(mag))
            if imag:
                parts.append("i")
            parts.extend(factors)
            pieces.append((frac < 0, "*".join(parts)))
    first_neg, first = pieces[0]
    out = ("-" if first_neg else "") + first
    for neg, text in pieces[1:]:
        out += (" - " if neg else " + ") + text
    return out
