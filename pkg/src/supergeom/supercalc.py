"""Even/odd partial derivatives, Jacobians at closed points, exact super rank.

The odd derivative is the left derivative: on a canonical ascending
monomial xi_{i1}..xi_{ik} the derivative by xi_j deletes xi_j and pays
(-1)^(position-1), where position counts from the left.  All acceptance
values are computed under this one convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange
from .scalars import QI
from .superpoly import ClosedPoint, Presentation, SuperMonomial, SuperPolynomial

Matrix = tuple[tuple[QI, ...], ...]


def partial_even(p: SuperPolynomial, i: int) -> SuperPolynomial:
    """d/dx_i, the ordinary power rule on even exponents."""
    table = p.table
    if not 0 <= i < table.m:
        raise IndexOutOfRange(f"even index {i} out of range for m={table.m}")
    out: dict[SuperMonomial, QI] = {}
    for mono, coeff in p.items():
        e = mono.evens[i]
        if not e:
            continue
        evens = list(mono.evens)
        evens[i] = e - 1
        out[SuperMonomial(tuple(evens), mono.odds)] = coeff * e
    return SuperPolynomial(table, out)


def partial_odd(p: SuperPolynomial, j: int) -> SuperPolynomial:
    """Left derivative d/dxi_j; flips parity."""
    table = p.table
    if not 0 <= j < table.n:
        raise IndexOutOfRange(f"odd index {j} out of range for n={table.n}")
    bit = 1 << j
    out: dict[SuperMonomial, QI] = {}
    for mono, coeff in p.items():
        if not mono.odds & bit:
            continue
        # Position of j in the ascending mask is 1 + (number of lower bits).
        if (mono.odds & (bit - 1)).bit_count() & 1:
            coeff = -coeff
        out[SuperMonomial(mono.evens, mono.odds ^ bit)] = coeff
    return SuperPolynomial(table, out)


@dataclass(frozen=True)
class NumericBlockMatrix:
    """Diagonal Jacobian blocks at a closed point.

    even_block is (even gens) x (even vars); odd_block is (odd gens) x
    (odd vars).  The mixed blocks are parity-odd polynomials, hence zero
    at every closed point; jacobian_at asserts this.
    """

    even_block: Matrix
    odd_block: Matrix


@dataclass(frozen=True)
class SuperRank:
    a: int
    b: int

    def __str__(self) -> str:
        return f"{self.a}|{self.b}"


def jacobian_at(pres: Presentation, point: ClosedPoint) -> NumericBlockMatrix:
    """Evaluate the even and odd diagonal derivative blocks at the point."""
    pres.check_point(point)
    table = pres.table
    coords = point.coords
    even_block = tuple(
        tuple(partial_even(f, j).evaluate(coords) for j in range(table.m))
        for f in pres.even_gens
    )
    odd_block = tuple(
        tuple(partial_odd(g, j).evaluate(coords) for j in range(table.n))
        for g in pres.odd_gens
    )
    # Parity forces the mixed blocks to vanish at closed points.
    for f in pres.even_gens:
        for j in range(table.n):
            assert partial_odd(f, j).evaluate(coords).is_zero()
    for g in pres.odd_gens:
        for j in range(table.m):
            assert partial_even(g, j).evaluate(coords).is_zero()
    return NumericBlockMatrix(even_block, odd_block)


def matrix_rank(rows: Matrix) -> int:
    """Exact rank by Gaussian elimination over Q(i); no thresholds anywhere."""
    work = [list(row) for row in rows if any(v for v in row)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(work)):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [v * inv for v in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def pivot_row_selection(rows: Matrix) -> list[int]:
    """Indices of the rows used as pivots under leftmost-column elimination.

    Deterministic: for each column left to right, the earliest remaining
    row with a nonzero entry is selected.  The selected rows realize the
    full rank of the matrix.
    """
    work = {idx: list(row) for idx, row in enumerate(rows)}
    ncols = len(rows[0]) if rows else 0
    selected: list[int] = []
    for col in range(ncols):
        pivot_idx = None
        for idx in sorted(work):
            if idx not in selected and work[idx][col]:
                pivot_idx = idx
                break
        if pivot_idx is None:
            continue
        selected.append(pivot_idx)
        inv = work[pivot_idx][col].inverse()
        prow = [v * inv for v in work[pivot_idx]]
        work[pivot_idx] = prow
        for idx, row in work.items():
            if idx != pivot_idx and row[col]:
                factor = row[col]
                work[idx] = [a - factor * b for a, b in zip(row, prow)]
    return sorted(selected)


def super_rank(blocks: NumericBlockMatrix) -> SuperRank:
    return SuperRank(matrix_rank(blocks.even_block), matrix_rank(blocks.odd_block))
