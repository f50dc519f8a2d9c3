import random

import pytest

from supergeom import (
    ActionPresentation,
    BadDims,
    BadForm,
    ClosedPoint,
    FormFlavor,
    ParityViolation,
    PointNotOnVariety,
    Presentation,
    QI,
    SuperPolynomial,
    VarTable,
    VerdictKind,
    berezinian,
    berezinian_scaling_action,
    form_stabilizer_presentation,
    free_model_hilbert,
    generic_berezinian,
    gl_presentation,
    invert_even_unit,
    lie_superdim,
    point_on_variety,
    sl_presentation,
    smooth_test,
    stabilizer_ideal,
    standard_form,
    truncated_quotient,
)
from supergeom.localgeom import SuperDim
from supergeom.supermatrix import poly_det

from genutil import random_invertible_supermatrix


def test_gl11_shape():
    gl = gl_presentation(1, 1)
    table = gl.base.table
    assert table.evens == ("x11", "y11", "z", "w")
    assert table.odds == ("xi11", "gamma11")
    x = SuperPolynomial.var(table, "x11")
    y = SuperPolynomial.var(table, "y11")
    z = SuperPolynomial.var(table, "z")
    w = SuperPolynomial.var(table, "w")
    assert gl.base.even_gens == (w * x - 1, z * y - 1)
    assert gl.base.odd_gens == ()
    assert gl.counit(x) == QI(1)


def test_gl10_is_classical_gl1():
    gl = gl_presentation(1, 0)
    table = gl.base.table
    assert table.evens == ("x11", "w")
    assert table.odds == ()
    assert len(gl.base.even_gens) == 1
    assert lie_superdim(gl) == SuperDim(1, 0)


def test_gl_dimensions():
    assert lie_superdim(gl_presentation(1, 1)) == SuperDim(2, 2)
    assert lie_superdim(gl_presentation(2, 1)) == SuperDim(5, 4)


def test_gl_bad_dims():
    with pytest.raises(BadDims):
        gl_presentation(0, 0)
    with pytest.raises(BadDims):
        gl_presentation(-1, 2)


def test_generic_berezinian_1_1():
    ber = generic_berezinian(1, 1)
    table = ber.table
    x = SuperPolynomial.var(table, "x11")
    z = SuperPolynomial.var(table, "z")
    xi = SuperPolynomial.var(table, "xi11")
    gamma = SuperPolynomial.var(table, "gamma11")
    assert ber == x * z - z * z * xi * gamma
    gl = gl_presentation(1, 1)
    assert ber.evaluate(gl.identity.coords) == QI(1)


def test_generic_berezinian_degenerate_no_odd_block():
    ber = generic_berezinian(1, 0)
    assert ber == SuperPolynomial.var(ber.table, "x11")


def test_generic_berezinian_counit_is_one():
    for m, n in ((1, 1), (2, 1), (1, 2)):
        group = gl_presentation(m, n)
        ber = generic_berezinian(m, n)
        assert ber.evaluate(group.identity.coords) == QI(1)


def test_sl11_presentation():
    sl = sl_presentation(1, 1)
    table = sl.base.table
    x = SuperPolynomial.var(table, "x11")
    y = SuperPolynomial.var(table, "y11")
    z = SuperPolynomial.var(table, "z")
    w = SuperPolynomial.var(table, "w")
    xi = SuperPolynomial.var(table, "xi11")
    gamma = SuperPolynomial.var(table, "gamma11")
    assert sl.base.even_gens == (
        w * x - 1,
        z * y - 1,
        x * z - z * z * xi * gamma - 1,
    )
    assert point_on_variety(sl.base, sl.identity)
    assert lie_superdim(sl) == SuperDim(1, 2)
    assert smooth_test(sl.base, sl.identity).kind is VerdictKind.SMOOTH_EXACT


def test_osp_1_2_dimension():
    osp = form_stabilizer_presentation(1, 2)
    assert lie_superdim(osp) == SuperDim(3, 2)
    assert point_on_variety(osp.base, osp.identity)
    assert smooth_test(osp.base, osp.identity).kind is VerdictKind.SMOOTH_EXACT


@pytest.mark.parametrize("m", [2, 3])
def test_classical_orthogonal_group(m):
    o_m = form_stabilizer_presentation(m, 0, flavor=FormFlavor.SYMMETRIC)
    assert lie_superdim(o_m) == SuperDim(m * (m - 1) // 2, 0)


def test_psp_2_2_constructs_and_is_smooth_at_identity():
    psp = form_stabilizer_presentation(2, 2, flavor=FormFlavor.ANTISYMMETRIC)
    assert point_on_variety(psp.base, psp.identity)
    verdict = smooth_test(psp.base, psp.identity, 3)
    assert verdict.kind is not VerdictKind.NOT_SMOOTH


def test_bad_forms():
    with pytest.raises(BadForm):
        form_stabilizer_presentation(1, 1)  # odd block must have even size
    singular = [[QI(0), QI(0), QI(0)] for _ in range(3)]
    with pytest.raises(BadForm):
        form_stabilizer_presentation(1, 2, phi=singular)
    wrong_flavor = standard_form(1, 2, FormFlavor.SYMMETRIC)
    wrong_flavor[1][2] = QI(1)
    wrong_flavor[2][1] = QI(1)
    with pytest.raises(BadForm):
        form_stabilizer_presentation(1, 2, phi=wrong_flavor)
    mixed = standard_form(1, 2, FormFlavor.SYMMETRIC)
    mixed[0][1] = QI(1)
    with pytest.raises(BadForm):
        form_stabilizer_presentation(1, 2, phi=mixed)


def test_identity_always_on_form_stabilizer():
    for m, n, flavor in ((1, 2, FormFlavor.SYMMETRIC), (2, 0, FormFlavor.SYMMETRIC),
                         (2, 2, FormFlavor.ANTISYMMETRIC)):
        group = form_stabilizer_presentation(m, n, flavor=flavor)
        assert point_on_variety(group.base, group.identity)


def test_hilbert_at_identity_matches_free_model():
    cases = [
        (gl_presentation(1, 1), 4),
        (sl_presentation(1, 1), 4),
        (gl_presentation(2, 1), 3),
        (form_stabilizer_presentation(1, 2), 3),
    ]
    for group, order in cases:
        dim = lie_superdim(group)
        ring = truncated_quotient(group.base, group.identity, order)
        for d in range(order + 1):
            assert ring.hilbert(d) == free_model_hilbert(dim.even, dim.odd, d)


def test_stabilizer_of_berezinian_action_is_sl():
    action = berezinian_scaling_action(1, 1)
    stab = stabilizer_ideal(action, ClosedPoint.of([1]))
    sl = sl_presentation(1, 1)
    assert stab.base.even_gens == sl.base.even_gens
    assert stab.base.odd_gens == sl.base.odd_gens
    assert stab.identity == sl.identity


def test_stabilizer_scaling_action_is_trivial_group():
    group = gl_presentation(1, 0)
    space = Presentation(VarTable(("t",), ()))
    joint = VarTable(group.base.table.evens + ("t",), ())
    image = SuperPolynomial.var(joint, "x11") * SuperPolynomial.var(joint, "t")
    action = ActionPresentation(group, space, {"t": image})
    stab = stabilizer_ideal(action, ClosedPoint.of([1]))
    assert lie_superdim(stab) == SuperDim(0, 0)
    table = stab.base.table
    x = SuperPolynomial.var(table, "x11")
    assert x - 1 in stab.base.even_gens


def test_stabilizer_contains_identity():
    action = berezinian_scaling_action(2, 1)
    stab = stabilizer_ideal(action, ClosedPoint.of([1]))
    assert point_on_variety(stab.base, stab.identity)
    for g in stab.base.even_gens:
        assert stab.counit(g).is_zero()


def test_stabilizer_requires_point_on_space():
    group = gl_presentation(1, 0)
    tspace = VarTable(("t",), ())
    t = SuperPolynomial.var(tspace, "t")
    space = Presentation.from_generators(tspace, [t * t - 1])
    joint = VarTable(group.base.table.evens + ("t",), ())
    image = SuperPolynomial.var(joint, "x11") * SuperPolynomial.var(joint, "t")
    action = ActionPresentation(group, space, {"t": image})
    with pytest.raises(PointNotOnVariety):
        stabilizer_ideal(action, ClosedPoint.of([2]))


def test_action_parity_validation():
    group = gl_presentation(1, 1)
    space = Presentation(VarTable(("t",), ()))
    joint = VarTable(group.base.table.evens + ("t",), group.base.table.odds)
    with pytest.raises(ParityViolation):
        ActionPresentation(group, space, {"t": SuperPolynomial.var(joint, "xi11")})
    with pytest.raises(ParityViolation):
        ActionPresentation(group, space, {})


def test_generic_berezinian_agrees_with_matrix_berezinian():
    rng = random.Random(89)
    for m, n in ((1, 1), (2, 1)):
        ber = generic_berezinian(m, n)
        for _ in range(5):
            a = random_invertible_supermatrix(rng, m, n)
            table = a.table
            even_images = []
            for i in range(m):
                for j in range(m):
                    even_images.append(a.p[i][j])
            for i in range(n):
                for j in range(n):
                    even_images.append(a.s[i][j])
            even_images.append(invert_even_unit(poly_det([list(r) for r in a.s], table)))
            even_images.append(invert_even_unit(poly_det([list(r) for r in a.p], table)))
            odd_images = []
            for i in range(m):
                for j in range(n):
                    odd_images.append(a.q[i][j])
            for i in range(n):
                for j in range(m):
                    odd_images.append(a.r[i][j])
            substituted = ber.substitute(table, even_images, odd_images)
            assert substituted == berezinian(a)
