"""Truncated local rings, Hilbert functions, and the smoothness decision.

The local model at a closed point P is computed by shifting P to the
origin and row-reducing the span of all truncated generator multiples
{ trunc_N(mu * g) : deg(mu) <= N } inside the finite space of monomials
of degree <= N.  Because quotients commute with localization and
completion, the co-rank of that span in degrees <= k is exactly
dim O_{X,P} / m_P^{k+1}, so one reduction at order N yields the whole
dimension table t(0..N) by counting pivots degree by degree (columns
are enumerated in degree-ascending order, which makes the pivot count
below a degree equal to the rank of the projected row space).

A point is smooth exactly when its completed local ring is a power
series algebra in r even and s odd variables.  Two finite certificates
of failure exist:

* a Hilbert deficit, h(d) < phi_{r|s}(d): the associated graded ring
  has a relation, impossible over a power series algebra;
* a generator outside the local ideal of a full-rank complete
  intersection subselection, g not in (selected) + M^{N+1}: the local
  surjection from the subselection would have a kernel, impossible by
  power-series rigidity.

The converse direction is the complete intersection criterion: exactly
(m-r) even and (n-s) odd generators of full Jacobian rank present a
smooth point, no truncation needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    OrderTooSmall,
    PointNotOnVariety,
)
from .scalars import QI, ZERO
from .supercalc import jacobian_at, pivot_row_selection, super_rank
from .superpoly import (
    ClosedPoint,
    Presentation,
    SuperMonomial,
    SuperPolynomial,
    VarTable,
)


@dataclass(frozen=True)
class SuperDim:
    even: int
    odd: int

    def __str__(self) -> str:
        return f"{self.even}|{self.odd}"


def point_on_variety(pres: Presentation, point: ClosedPoint) -> bool:
    """True iff every even generator vanishes at the point.

    Odd generators vanish at closed points automatically (their monomials
    all contain odd variables).
    """
    pres.check_point(point)
    return all(g.evaluate(point.coords).is_zero() for g in pres.even_gens)


def _require_on_variety(pres: Presentation, point: ClosedPoint):
    if not point_on_variety(pres, point):
        raise PointNotOnVariety(f"point {point} does not lie on the variety")


def tangent_dim(pres: Presentation, point: ClosedPoint) -> SuperDim:
    """Dimension of m_P/m_P^2 split by parity: (m - a)|(n - b) for rank a|b."""
    _require_on_variety(pres, point)
    rank = super_rank(jacobian_at(pres, point))
    return SuperDim(pres.table.m - rank.a, pres.table.n - rank.b)


# -- monomial bases and row spaces --------------------------------------


def _even_exponents(m: int, total: int) -> Iterable[tuple[int, ...]]:
    if m == 0:
        if total == 0:
            yield ()
        return
    if m == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _even_exponents(m - 1, total - head):
            yield (head,) + tail


def monomial_basis(table: VarTable, order: int) -> list[SuperMonomial]:
    """Every monomial of total degree <= order, sorted degree-ascending grlex."""
    out = []
    masks_by_size: dict[int, list[int]] = {}
    for mask in range(1 << table.n):
        masks_by_size.setdefault(mask.bit_count(), []).append(mask)
    for d in range(order + 1):
        for j in range(min(d, table.n) + 1):
            for evens in _even_exponents(table.m, d - j):
                for mask in masks_by_size.get(j, ()):
                    out.append(SuperMonomial(evens, mask))
    out.sort(key=SuperMonomial.sort_key)
    return out


SparseRow = dict[int, QI]


def _poly_to_row(p: SuperPolynomial, index: dict[SuperMonomial, int]) -> SparseRow:
    row: SparseRow = {}
    for mono, coeff in p.items():
        col = index.get(mono)
        if col is not None:
            row[col] = coeff
    return row


class _RowSpace:
    """Sparse, fully-reduced row echelon accumulator over Q(i)."""

    def __init__(self):
        self.pivots: dict[int, SparseRow] = {}

    def reduce(self, row: SparseRow) -> SparseRow:
        row = dict(row)
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            factor = row.pop(lead)
            for col, value in piv.items():
                if col == lead:
                    continue
                acc = row.get(col, ZERO) - factor * value
                if acc:
                    row[col] = acc
                else:
                    row.pop(col, None)
        return row

    def insert(self, row: SparseRow) -> bool:
        """Reduce the row and add it as a new pivot; False if dependent."""
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        inv = row[lead].inverse()
        self.pivots[lead] = {c: v * inv for c, v in row.items()}
        return True

    def contains(self, row: SparseRow) -> bool:
        return not self.reduce(row)


def _ideal_rows(
    gens: Sequence[SuperPolynomial],
    table: VarTable,
    order: int,
    index: dict[SuperMonomial, int],
    basis: list[SuperMonomial],
) -> _RowSpace:
    """Row space of { trunc(mu * g) } for monomials mu of degree <= order."""
    space = _RowSpace()
    for g in gens:
        g = g.truncate(order)
        if g.is_zero():
            continue
        min_deg = min(m.degree() for m, _ in g.items())
        for mu in basis:
            if mu.degree() + min_deg > order:
                continue
            shifted = SuperPolynomial(table, {mu: QI.of(1)}) * g
            row = _poly_to_row(shifted.truncate(order), index)
            if row:
                space.insert(row)
    return space


@dataclass(frozen=True)
class TruncatedLocalRing:
    """Row-reduced model of the local ring modulo m^(order+1).

    t[k] = dim O_{X,P}/m_P^(k+1) for k <= order; pivot_monomials are the
    leading monomials of the reduced ideal image, whose degree counts
    recover every t(k) from the single reduction at the top order.
    """

    table: VarTable
    order: int
    t: tuple[int, ...]
    pivot_monomials: tuple[SuperMonomial, ...]

    def hilbert(self, d: int) -> int:
        if not 0 <= d <= self.order:
            raise IndexOutOfRange(f"degree {d} outside 0..{self.order}")
        if d == 0:
            return self.t[0]
        return self.t[d] - self.t[d - 1]

    def hilbert_table(self) -> tuple[int, ...]:
        return tuple(self.hilbert(d) for d in range(self.order + 1))


def truncated_quotient(
    pres: Presentation, point: ClosedPoint, order: int
) -> TruncatedLocalRing:
    """Shift the point to the origin and reduce the ideal image at the order."""
    if order < 1:
        raise OrderTooSmall(f"truncation order {order} < 1")
    _require_on_variety(pres, point)
    table = pres.table
    basis = monomial_basis(table, order)
    index = {mono: i for i, mono in enumerate(basis)}
    shifted = [g.shift_to_origin(point.coords) for g in pres.all_gens()]
    space = _ideal_rows(shifted, table, order, index, basis)

    free_counts = [0] * (order + 1)
    for mono in basis:
        free_counts[mono.degree()] += 1
    pivot_counts = [0] * (order + 1)
    pivot_monos = []
    for col in sorted(space.pivots):
        mono = basis[col]
        pivot_counts[mono.degree()] += 1
        pivot_monos.append(mono)

    t = []
    free_cum = 0
    pivot_cum = 0
    for k in range(order + 1):
        free_cum += free_counts[k]
        pivot_cum += pivot_counts[k]
        t.append(free_cum - pivot_cum)
    return TruncatedLocalRing(table, order, tuple(t), tuple(pivot_monos))


def hilbert_function(ring: TruncatedLocalRing, d: int) -> int:
    """dim m_P^d / m_P^(d+1)."""
    return ring.hilbert(d)


def free_model_hilbert(r: int, s: int, d: int) -> int:
    """Degree-d monomial count of a free algebra on r even and s odd variables."""
    if r < 0 or s < 0 or d < 0:
        raise IndexOutOfRange("free_model_hilbert wants non-negative arguments")
    total = 0
    for j in range(min(d, s) + 1):
        e = d - j
        if e == 0:
            evens = 1
        elif r == 0:
            evens = 0
        else:
            evens = comb(r + e - 1, e)
        total += comb(s, j) * evens
    return total


def minimal_generator_count(ring: TruncatedLocalRing) -> SuperDim:
    """Minimal homogeneous generator count of m_P, i.e. h(1) split by parity.

    A basis of m_P/m_P^2 lifts to a generating set of m_P and no smaller
    set can generate, so the answer is the parity split of h(1).
    """
    if ring.order < 2:
        raise OrderTooSmall("minimal_generator_count needs order >= 2")
    even_pivots = sum(
        1 for mono in ring.pivot_monomials if mono.degree() == 1 and mono.parity() == 0
    )
    odd_pivots = sum(
        1 for mono in ring.pivot_monomials if mono.degree() == 1 and mono.parity() == 1
    )
    return SuperDim(ring.table.m - even_pivots, ring.table.n - odd_pivots)


def local_membership(
    g: SuperPolynomial,
    selected: Sequence[SuperPolynomial],
    point: ClosedPoint,
    order: int,
) -> bool:
    """Whether g lies in (selected) + M^(order+1) locally at the point."""
    if order < 1:
        raise OrderTooSmall(f"truncation order {order} < 1")
    table = g.table
    if point.arity != table.m:
        raise DimensionMismatch(
            f"point arity {point.arity} != {table.m} even variables"
        )
    basis = monomial_basis(table, order)
    index = {mono: i for i, mono in enumerate(basis)}
    shifted = [s.shift_to_origin(point.coords) for s in selected]
    space = _ideal_rows(shifted, table, order, index, basis)
    candidate = _poly_to_row(g.shift_to_origin(point.coords).truncate(order), index)
    return space.contains(candidate)


# -- the decision procedure ---------------------------------------------


class VerdictKind(Enum):
    SMOOTH_EXACT = "SmoothExact"
    SMOOTH_TO_ORDER = "SmoothToOrder"
    NOT_SMOOTH = "NotSmooth"


@dataclass(frozen=True)
class SmoothnessVerdict:
    """Outcome of the smoothness decision at one closed point.

    dim is r|s, the dimension the point has if smooth (always equal to
    the tangent dimension).  The certificate is finite and re-checkable:
    witness_degree is a Hilbert deficit degree, failed_generator indexes
    a generator (evens first, then odds) outside the local span of the
    full-rank subselection.  hilbert lists h(0..order).
    """

    kind: VerdictKind
    dim: SuperDim
    tangent: SuperDim
    order: int
    hilbert: tuple[int, ...]
    witness_degree: int | None = None
    failed_generator: int | None = None

    def is_smooth(self) -> bool:
        return self.kind is not VerdictKind.NOT_SMOOTH

    def __str__(self) -> str:
        if self.kind is VerdictKind.NOT_SMOOTH:
            if self.witness_degree is not None:
                detail = f"witness degree {self.witness_degree}"
            else:
                detail = f"generator {self.failed_generator} not locally redundant"
            return f"NotSmooth({detail})"
        if self.kind is VerdictKind.SMOOTH_EXACT:
            return f"SmoothExact(dim {self.dim})"
        return f"SmoothToOrder({self.order}, dim {self.dim})"


def default_truncation_order(pres: Presentation) -> int:
    """2 * (max generator degree) + n + 2; clears every worked example with margin."""
    return 2 * max(pres.max_degree(), 0) + pres.table.n + 2


def smooth_test(
    pres: Presentation, point: ClosedPoint, order: int | None = None
) -> SmoothnessVerdict:
    """Decide smoothness of a closed point on the variety.

    Procedure: compute the Jacobian rank a|b and r|s = (m-a)|(n-b).  With
    exactly (m-r, n-s) generators of full rank the point is a complete
    intersection, certified smooth outright.  Otherwise compare the local
    Hilbert function with the free model (deficit => not smooth, witness
    degree), then test the remaining generators for local membership in a
    full-rank subselection (failure => not smooth, failed index).  If both
    checks pass the verdict is smooth to the truncation order.
    """
    if order is None:
        order = default_truncation_order(pres)
    if order < 2:
        raise OrderTooSmall(f"smoothness order {order} < 2")
    _require_on_variety(pres, point)
    table = pres.table
    blocks = jacobian_at(pres, point)
    rank = super_rank(blocks)
    dim = SuperDim(table.m - rank.a, table.n - rank.b)

    if len(pres.even_gens) == rank.a and len(pres.odd_gens) == rank.b:
        # Complete intersection: the associated graded ring is free, so the
        # Hilbert table is the free-model count in closed form.
        hilbert = tuple(
            free_model_hilbert(dim.even, dim.odd, d) for d in range(order + 1)
        )
        return SmoothnessVerdict(
            VerdictKind.SMOOTH_EXACT, dim, dim, order, hilbert
        )

    ring = truncated_quotient(pres, point, order)
    hilbert = ring.hilbert_table()
    for d in range(order + 1):
        if hilbert[d] < free_model_hilbert(dim.even, dim.odd, d):
            return SmoothnessVerdict(
                VerdictKind.NOT_SMOOTH, dim, dim, order, hilbert, witness_degree=d
            )

    selected_even = (
        pivot_row_selection(blocks.even_block) if pres.even_gens else []
    )
    selected_odd = pivot_row_selection(blocks.odd_block) if pres.odd_gens else []
    selection = [pres.even_gens[i] for i in selected_even] + [
        pres.odd_gens[i] for i in selected_odd
    ]
    gens = pres.all_gens()
    selected_flat = set(selected_even) | {
        len(pres.even_gens) + i for i in selected_odd
    }
    for idx, g in enumerate(gens):
        if idx in selected_flat:
            continue
        if not local_membership(g, selection, point, order):
            return SmoothnessVerdict(
                VerdictKind.NOT_SMOOTH, dim, dim, order, hilbert, failed_generator=idx
            )
    return SmoothnessVerdict(VerdictKind.SMOOTH_TO_ORDER, dim, dim, order, hilbert)
