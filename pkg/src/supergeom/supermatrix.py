"""Block supermatrices over a Grassmann-constant algebra; inverse and Berezinian.

A supermatrix of dims m|n is [[p, q], [r, s]] with p (m x m) and s (n x n)
parity-even entries and q (m x n), r (n x m) parity-odd entries, all
polynomials over one shared table.  Inversion splits off the scalar body
and corrects it with a finite Neumann series, which terminates because
every body-free entry is nilpotent.  The Berezinian of an invertible
matrix is det(p - q s^-1 r) * det(s^-1), computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    MixedTables,
    NotInvertible,
    ParityViolation,
    UndecidableUnits,
)
from .scalars import ONE, QI, ZERO
from .superpoly import SuperPolynomial, VarTable

PolyMatrix = list[list[SuperPolynomial]]


# -- polynomial matrix helpers ------------------------------------------


def _mat_mul(a: PolyMatrix, b: PolyMatrix, table: VarTable) -> PolyMatrix:
    out: PolyMatrix = []
    for row in a:
        new_row = []
        for j in range(len(b[0])):
            acc = SuperPolynomial.zero(table)
            for k in range(len(b)):
                acc = acc + row[k] * b[k][j]
            new_row.append(acc)
        out.append(new_row)
    return out


def _mat_sub(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _identity(table: VarTable, k: int) -> PolyMatrix:
    return [
        [SuperPolynomial.const(table, 1 if i == j else 0) for j in range(k)]
        for i in range(k)
    ]


def _is_zero_matrix(mat: PolyMatrix) -> bool:
    return all(entry.is_zero() for row in mat for entry in row)


def poly_det(mat: PolyMatrix, table: VarTable) -> SuperPolynomial:
    """Determinant of a square matrix of parity-even (hence central) entries.

    Cofactor expansion at desk sizes; beyond 4x4 a division-free subset
    sweep, since exact division is unsound over rings with nilpotents.
    """
    k = len(mat)
    if k == 0:
        return SuperPolynomial.const(table, 1)
    if k == 1:
        return mat[0][0]
    if k == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    if k <= 4:
        total = SuperPolynomial.zero(table)
        for j in range(k):
            if mat[0][j].is_zero():
                continue
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            cofactor = mat[0][j] * poly_det(minor, table)
            total = total + (cofactor if j % 2 == 0 else -cofactor)
        return total
    # Column-subset dynamic program, no division, O(2^k * k) products.
    states: dict[int, SuperPolynomial] = {0: SuperPolynomial.const(table, 1)}
    for i in range(k):
        nxt: dict[int, SuperPolynomial] = {}
        for used, value in states.items():
            position = 0
            for j in range(k):
                bit = 1 << j
                if used & bit:
                    continue
                entry = mat[i][j]
                if not entry.is_zero():
                    contrib = value * entry
                    if position % 2:
                        contrib = -contrib
                    key = used | bit
                    acc = nxt.get(key)
                    nxt[key] = contrib if acc is None else acc + contrib
                position += 1
        states = nxt
    return states.get((1 << k) - 1, SuperPolynomial.zero(table))


def poly_adjugate(mat: PolyMatrix, table: VarTable) -> PolyMatrix:
    k = len(mat)
    if k == 0:
        return []
    if k == 1:
        return [[SuperPolynomial.const(table, 1)]]
    out: PolyMatrix = [[SuperPolynomial.zero(table)] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [
                [mat[r][c] for c in range(k) if c != j]
                for r in range(k)
                if r != i
            ]
            cof = poly_det(minor, table)
            out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return out


def _body_scalar(p: SuperPolynomial) -> QI:
    """Constant part of an entry; rejects free even-variable dependence."""
    body = ZERO
    for mono, coeff in p.items():
        if mono.odds:
            continue
        if any(mono.evens):
            raise UndecidableUnits(
                "unit test needs Grassmann-constant entries (no free even variables)"
            )
        body = body + coeff
    return body


def invert_even_unit(p: SuperPolynomial) -> SuperPolynomial:
    """Inverse of c + nilpotent: (1/c) * sum_k (-nil/c)^k, a finite series."""
    c = _body_scalar(p)
    if c.is_zero():
        raise NotInvertible(f"{p} has zero body")
    table = p.table
    inv_c = c.inverse()
    u = (p - SuperPolynomial.const(table, c)).scale(inv_c)
    out = SuperPolynomial.const(table, 1)
    power = SuperPolynomial.const(table, 1)
    sign = -1
    for _ in range(table.n):
        power = power * u
        if power.is_zero():
            break
        out = out + (power.scale(sign))
        sign = -sign
    return out.scale(inv_c)


def _scalar_matrix_inverse(rows: list[list[QI]]) -> list[list[QI]]:
    k = len(rows)
    work = [
        list(r) + [ONE if i == j else ZERO for j in range(k)]
        for i, r in enumerate(rows)
    ]
    for col in range(k):
        pivot = None
        for r in range(col, k):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            raise NotInvertible("scalar body is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col].inverse()
        work[col] = [v * inv for v in work[col]]
        for r in range(k):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return [row[k:] for row in work]


def _scalar_det_nonzero(rows: list[list[QI]]) -> bool:
    k = len(rows)
    if k == 0:
        return True
    work = [list(r) for r in rows]
    for col in range(k):
        pivot = None
        for r in range(col, k):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            return False
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col].inverse()
        work[col] = [v * inv for v in work[col]]
        for r in range(col + 1, k):
            if work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return True


def _poly_matrix_inverse(mat: PolyMatrix, table: VarTable) -> PolyMatrix:
    """Invert a matrix whose entries have scalar bodies.

    M = B(I + B^-1 Z) with B the scalar body; the correction series
    I - U + U^2 - ... telescopes against I + U without any commutativity
    assumption and terminates because U has body-free entries.
    """
    k = len(mat)
    if k == 0:
        return []
    body = [[_body_scalar(entry) for entry in row] for row in mat]
    body_inv = [
        [SuperPolynomial.const(table, v) for v in row]
        for row in _scalar_matrix_inverse(body)
    ]
    body_poly = [[SuperPolynomial.const(table, v) for v in row] for row in body]
    u = _mat_mul(body_inv, _mat_sub(mat, body_poly), table)
    total = _identity(table, k)
    power = _identity(table, k)
    sign = -1
    for _ in range(table.n):
        power = _mat_mul(power, u, table)
        if _is_zero_matrix(power):
            break
        signed = [[e.scale(sign) for e in row] for row in power]
        total = _mat_add(total, signed)
        sign = -sign
    return _mat_mul(total, body_inv, table)


# -- the SuperMatrix type -----------------------------------------------


@dataclass(frozen=True)
class SuperMatrix:
    """Block matrix [[p, q], [r, s]] with the standard parity layout."""

    table: VarTable
    m: int
    n: int
    p: tuple[tuple[SuperPolynomial, ...], ...]
    q: tuple[tuple[SuperPolynomial, ...], ...]
    r: tuple[tuple[SuperPolynomial, ...], ...]
    s: tuple[tuple[SuperPolynomial, ...], ...]

    def __post_init__(self):
        for block, rows, cols, even in (
            ("p", self.m, self.m, True),
            ("q", self.m, self.n, False),
            ("r", self.n, self.m, False),
            ("s", self.n, self.n, True),
        ):
            data = getattr(self, block)
            if len(data) != rows or any(len(row) != cols for row in data):
                raise DimensionMismatch(f"block {block} must be {rows}x{cols}")
            for row in data:
                for entry in row:
                    if entry.table != self.table:
                        raise MixedTables("entry over the wrong table")
                    ok = (
                        entry.is_homogeneous_even()
                        if even
                        else entry.is_homogeneous_odd()
                    )
                    if not ok:
                        want = "even" if even else "odd"
                        raise ParityViolation(
                            f"block {block} entries must be parity-{want}"
                        )

    @staticmethod
    def from_blocks(table, p, q, r, s) -> "SuperMatrix":
        def tup(mat):
            return tuple(tuple(row) for row in mat)

        return SuperMatrix(table, len(p), len(s), tup(p), tup(q), tup(r), tup(s))

    @staticmethod
    def identity(table: VarTable, m: int, n: int) -> "SuperMatrix":
        full = _identity(table, m + n)
        return SuperMatrix.from_full(table, m, n, full)

    def full(self) -> PolyMatrix:
        out = []
        for i in range(self.m):
            out.append(list(self.p[i]) + list(self.q[i]))
        for i in range(self.n):
            out.append(list(self.r[i]) + list(self.s[i]))
        return out

    @staticmethod
    def from_full(table: VarTable, m: int, n: int, mat: PolyMatrix) -> "SuperMatrix":
        if len(mat) != m + n or any(len(row) != m + n for row in mat):
            raise DimensionMismatch(f"need a {(m + n)}x{(m + n)} matrix")
        return SuperMatrix.from_blocks(
            table,
            [row[:m] for row in mat[:m]],
            [row[m:] for row in mat[:m]],
            [row[:m] for row in mat[m:]],
            [row[m:] for row in mat[m:]],
        )


def matmul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    if a.table != b.table:
        raise MixedTables("matrices over different tables")
    if (a.m, a.n) != (b.m, b.n):
        raise DimensionMismatch("matrix dims differ")
    product = _mat_mul(a.full(), b.full(), a.table)
    return SuperMatrix.from_full(a.table, a.m, a.n, product)


def is_invertible(a: SuperMatrix) -> bool:
    """True iff both diagonal blocks are invertible modulo nilpotents."""
    p_body = [[_body_scalar(e) for e in row] for row in a.p]
    s_body = [[_body_scalar(e) for e in row] for row in a.s]
    return _scalar_det_nonzero(p_body) and _scalar_det_nonzero(s_body)


def inverse(a: SuperMatrix) -> SuperMatrix:
    """Two-sided exact inverse; body inverse plus finite Neumann correction."""
    if not is_invertible(a):
        raise NotInvertible("diagonal blocks are singular modulo nilpotents")
    inv = _poly_matrix_inverse(a.full(), a.table)
    return SuperMatrix.from_full(a.table, a.m, a.n, inv)


def berezinian(a: SuperMatrix) -> SuperPolynomial:
    """det(p - q s^-1 r) * det(s^-1), exact.

    Invertibility of s suffices to evaluate the formula; group semantics
    additionally want p invertible, which callers check via is_invertible.
    """
    table = a.table
    if a.n == 0:
        return poly_det([list(row) for row in a.p], table)
    s_body = [[_body_scalar(e) for e in row] for row in a.s]
    if not _scalar_det_nonzero(s_body):
        raise NotInvertible("s block is singular modulo nilpotents")
    s_inv = _poly_matrix_inverse([list(row) for row in a.s], table)
    if a.m == 0:
        return poly_det(s_inv, table)
    q = [list(row) for row in a.q]
    r = [list(row) for row in a.r]
    correction = _mat_mul(_mat_mul(q, s_inv, table), r, table)
    upper = _mat_sub([list(row) for row in a.p], correction)
    return poly_det(upper, table) * poly_det(s_inv, table)
