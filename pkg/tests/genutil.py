"""Seeded random generators shared by the property and acceptance suites."""

from __future__ import annotations

import random
from fractions import Fraction

from supergeom import (
    ClosedPoint,
    Presentation,
    QI,
    SuperMatrix,
    SuperPolynomial,
    VarTable,
)
from supergeom.localgeom import monomial_basis
from supergeom.supermatrix import _body_scalar, _scalar_det_nonzero

_COORD_POOL = [0, 1, -1, Fraction(1, 2), Fraction(-1, 2), 2]


def random_qi(rng: random.Random, allow_imag=True, nonzero=False) -> QI:
    while True:
        re = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)))
        im = Fraction(0)
        if allow_imag and rng.random() < 0.25:
            im = Fraction(rng.randint(-2, 2))
        value = QI(re, im)
        if not nonzero or value:
            return value


def random_poly(
    rng: random.Random,
    table: VarTable,
    max_deg: int,
    parity: int | None = None,
    terms: int = 3,
    min_deg: int = 0,
) -> SuperPolynomial:
    pool = [
        mono
        for mono in monomial_basis(table, max_deg)
        if (parity is None or mono.parity() == parity) and mono.degree() >= min_deg
    ]
    if not pool:
        return SuperPolynomial.zero(table)
    chosen = rng.sample(pool, min(terms, len(pool)))
    return SuperPolynomial(
        table, {mono: random_qi(rng, nonzero=True) for mono in chosen}
    )


def random_table(rng: random.Random, max_m=3, max_n=3) -> VarTable:
    while True:
        m = rng.randint(0, max_m)
        n = rng.randint(0, max_n)
        if m + n >= 1:
            break
    evens = tuple(f"x{k}" for k in range(1, m + 1))
    odds = tuple(f"e{k}" for k in range(1, n + 1))
    return VarTable(evens, odds)


def random_point(rng: random.Random, m: int, rational_only=True) -> ClosedPoint:
    return ClosedPoint.of([rng.choice(_COORD_POOL) for _ in range(m)])


def random_presentation_with_point(
    rng: random.Random, max_m=3, max_n=3, max_deg=3, max_gens=3
):
    """A presentation together with a rational point on it.

    Even generators are adjusted by a constant so they vanish at the point;
    odd generators vanish there automatically.
    """
    table = random_table(rng, max_m, max_n)
    point = random_point(rng, table.m)
    even_gens = []
    for _ in range(rng.randint(0, max_gens)):
        p = random_poly(rng, table, max_deg, parity=0, terms=rng.randint(1, 4))
        p = p - SuperPolynomial.const(table, p.evaluate(point.coords))
        if not p.is_zero():
            even_gens.append(p)
    odd_gens = []
    for _ in range(rng.randint(0, max_gens)):
        p = random_poly(rng, table, max_deg, parity=1, terms=rng.randint(1, 4))
        if not p.is_zero():
            odd_gens.append(p)
    return Presentation(table, tuple(even_gens), tuple(odd_gens)), point


def random_complete_intersection(rng: random.Random, max_m=3, max_n=3):
    """Full-rank complete intersection at the origin: r|s is (m-a)|(n-b)."""
    while True:
        m = rng.randint(0, max_m)
        n = rng.randint(0, max_n)
        if m + n >= 1:
            break
    table = VarTable(
        tuple(f"x{k}" for k in range(1, m + 1)),
        tuple(f"e{k}" for k in range(1, n + 1)),
    )
    a = rng.randint(0, m)
    b = rng.randint(0, n)
    even_gens = []
    for i in rng.sample(range(m), a):
        junk = random_poly(rng, table, 3, parity=0, terms=2, min_deg=2)
        even_gens.append(SuperPolynomial.even_var(table, i) + junk)
    odd_gens = []
    for j in rng.sample(range(n), b):
        junk = random_poly(rng, table, 3, parity=1, terms=2, min_deg=2)
        odd_gens.append(SuperPolynomial.odd_var(table, j) + junk)
    pres = Presentation(table, tuple(even_gens), tuple(odd_gens))
    point = ClosedPoint.of([0] * m)
    return pres, point, m - a, n - b


GRASSMANN4 = VarTable((), ("t1", "t2", "t3", "t4"))


def random_even_entry(rng: random.Random, table: VarTable, body) -> SuperPolynomial:
    entry = SuperPolynomial.const(table, body)
    nil = random_poly(rng, table, table.n, parity=0, terms=2, min_deg=2)
    return entry + nil


def random_odd_entry(rng: random.Random, table: VarTable) -> SuperPolynomial:
    return random_poly(rng, table, table.n, parity=1, terms=2, min_deg=1)


def random_invertible_supermatrix(
    rng: random.Random, m: int, n: int, table: VarTable = GRASSMANN4
) -> SuperMatrix:
    while True:
        p = [
            [random_even_entry(rng, table, random_qi(rng)) for _ in range(m)]
            for _ in range(m)
        ]
        s = [
            [random_even_entry(rng, table, random_qi(rng)) for _ in range(n)]
            for _ in range(n)
        ]
        p_body = [[_body_scalar(e) for e in row] for row in p]
        s_body = [[_body_scalar(e) for e in row] for row in s]
        if _scalar_det_nonzero(p_body) and _scalar_det_nonzero(s_body):
            break
    q = [[random_odd_entry(rng, table) for _ in range(n)] for _ in range(m)]
    r = [[random_odd_entry(rng, table) for _ in range(m)] for _ in range(n)]
    return SuperMatrix.from_blocks(table, p, q, r, s)
