import random

import pytest
from hypothesis import given, settings, strategies as st

from supergeom import (
    ClosedPoint,
    IndexOutOfRange,
    Presentation,
    QI,
    SuperPolynomial,
    VarTable,
    jacobian_at,
    partial_even,
    partial_odd,
    super_rank,
)
from supergeom.scalars import ONE, ZERO
from supergeom.supercalc import NumericBlockMatrix, matrix_rank, pivot_row_selection
from supergeom.superpoly import SuperMonomial

from genutil import random_presentation_with_point

T = VarTable(("x", "y"), ("xi", "eta"))
X = SuperPolynomial.var(T, "x")
Y = SuperPolynomial.var(T, "y")
XI = SuperPolynomial.var(T, "xi")
ETA = SuperPolynomial.var(T, "eta")


def test_partial_even_examples():
    assert partial_even(X * X * Y, 0) == (X * Y).scale(2)
    assert partial_even(X * XI + Y * ETA, 0) == XI
    assert partial_even(XI * ETA, 0).is_zero()


def test_partial_odd_left_signs():
    p = XI * ETA
    assert partial_odd(p, 0) == ETA
    assert partial_odd(p, 1) == -XI
    assert partial_odd(X * XI + Y * ETA, 0) == X
    assert partial_odd(X * X, 0).is_zero()


def test_partial_index_range():
    with pytest.raises(IndexOutOfRange):
        partial_even(X, 5)
    with pytest.raises(IndexOutOfRange):
        partial_odd(X, 2)


def test_jacobian_examples():
    pres = Presentation.from_generators(T, [XI * ETA])
    blocks = jacobian_at(pres, ClosedPoint.of([3, -1]))
    assert blocks.even_block == ((ZERO, ZERO),)
    assert blocks.odd_block == ()

    pres2 = Presentation.from_generators(T, [X * XI + Y * ETA])
    blocks2 = jacobian_at(pres2, ClosedPoint.of([1, 0]))
    assert blocks2.even_block == ()
    assert blocks2.odd_block == ((ONE, ZERO),)

    pres3 = Presentation.from_generators(T, [X * X + Y * Y - 1])
    blocks3 = jacobian_at(pres3, ClosedPoint.of([1, 0]))
    assert blocks3.even_block == ((QI(2), ZERO),)


def test_super_rank_examples():
    zero = NumericBlockMatrix(((ZERO, ZERO),), ((ZERO, ZERO),))
    assert (super_rank(zero).a, super_rank(zero).b) == (0, 0)

    odd = NumericBlockMatrix((), ((ONE, ZERO),))
    assert (super_rank(odd).a, super_rank(odd).b) == (0, 1)

    ident3 = tuple(
        tuple(ONE if i == j else ZERO for j in range(3)) for i in range(3)
    )
    ident2 = tuple(
        tuple(ONE if i == j else ZERO for j in range(2)) for i in range(2)
    )
    full = NumericBlockMatrix(ident3, ident2)
    assert (super_rank(full).a, super_rank(full).b) == (3, 2)


def test_matrix_rank_exactness():
    # A matrix a float method would misjudge: tiny exact fractions.
    from fractions import Fraction

    eps = QI(Fraction(1, 10**40))
    rows = ((ONE, ONE), (ONE, ONE + eps))
    assert matrix_rank(rows) == 2
    rows2 = ((ONE, ONE), (ONE, ONE))
    assert matrix_rank(rows2) == 1


def test_pivot_row_selection_is_leftmost():
    rows = (
        (ZERO, ONE),
        (ONE, ZERO),
        (ONE, ONE),
    )
    assert pivot_row_selection(rows) == [0, 1]
    assert pivot_row_selection(((ZERO, ZERO), (ONE, ZERO))) == [1]


# -- derivative laws -----------------------------------------------------


def _polys(parity=None):
    def build(d):
        terms = {
            m: c for m, c in d.items() if parity is None or m.parity() == parity
        }
        return SuperPolynomial(T, terms)

    coeffs = st.builds(
        QI,
        st.fractions(min_value=-3, max_value=3, max_denominator=2),
        st.fractions(min_value=-1, max_value=1, max_denominator=1),
    )
    monos = st.builds(
        SuperMonomial,
        st.tuples(st.integers(0, 2), st.integers(0, 2)),
        st.integers(0, 3),
    )
    return st.dictionaries(monos, coeffs, max_size=4).map(build)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([0, 1]), _polys(parity=0), _polys())
def test_graded_leibniz_even_f(j, f, g):
    lhs = partial_odd(f * g, j)
    rhs = partial_odd(f, j) * g + f * partial_odd(g, j)
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([0, 1]), _polys(parity=1), _polys())
def test_graded_leibniz_odd_f(j, f, g):
    lhs = partial_odd(f * g, j)
    rhs = partial_odd(f, j) * g - f * partial_odd(g, j)
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(_polys())
def test_odd_partials_anticommute(p):
    assert partial_odd(partial_odd(p, 0), 1) == -partial_odd(partial_odd(p, 1), 0)
    assert partial_odd(partial_odd(p, 0), 0).is_zero()
    assert partial_even(partial_even(p, 0), 1) == partial_even(partial_even(p, 1), 0)


def test_mixed_blocks_vanish_at_closed_points():
    rng = random.Random(17)
    for _ in range(40):
        pres, point = random_presentation_with_point(rng)
        table = pres.table
        for f in pres.even_gens:
            for j in range(table.n):
                assert partial_odd(f, j).evaluate(point.coords).is_zero()
        for g in pres.odd_gens:
            for j in range(table.m):
                assert partial_even(g, j).evaluate(point.coords).is_zero()
