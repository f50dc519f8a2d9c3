"""Coordinate-ring presentations of the classical supergroups.

The general linear supergroup on m|n is presented by the entries of a
generic block matrix g = [[x, xi], [gamma, y]] together with inverted
determinants w (for det x) and z (for det y).  The special linear
supergroup adds the relation Ber(g) = 1.  Orthosymplectic-type groups are
presented as stabilizers of an invertible bilinear form, g^st Phi g = Phi,
under the supertranspose

    g^st = [[x^T, gamma^T], [-xi^T, y^T]],

the convention that satisfies (AB)^st = B^st A^st.  Stabilizers of a point
under an arbitrary action are cut out by the relations tau(h) for h
running over generators of the point's maximal ideal, where tau evaluates
the comorphism at the point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from .errors import BadDims, BadForm, ParityViolation, PointNotOnVariety
from .localgeom import SuperDim, point_on_variety, tangent_dim
from .scalars import ONE, QI, ZERO
from .superpoly import (
    ClosedPoint,
    Presentation,
    SuperMonomial,
    SuperPolynomial,
    VarTable,
)
from .supermatrix import PolyMatrix, poly_adjugate, poly_det


@dataclass(frozen=True)
class GroupPresentation:
    """A supergroup as a presented coordinate ring plus its identity point.

    The counit is evaluation at the identity; its kernel is the maximal
    ideal whose graded quotients carry the Lie-theoretic data.
    """

    base: Presentation
    identity: ClosedPoint

    def __post_init__(self):
        if not point_on_variety(self.base, self.identity):
            raise PointNotOnVariety("identity does not satisfy the relations")

    def counit(self, p: SuperPolynomial) -> QI:
        return p.evaluate(self.identity.coords)


def lie_superdim(group: GroupPresentation) -> SuperDim:
    """Dimension of m_1/m_1^2 at the identity, split by parity."""
    return tangent_dim(group.base, group.identity)


# -- naming and matrix scaffolding ----------------------------------------


def _entry_names(prefix: str, rows: int, cols: int) -> list[list[str]]:
    wide = max(rows, cols) > 9
    if rows == 0 or cols == 0:
        return [[] for _ in range(rows)]
    fmt = (lambda i, j: f"{prefix}{i}_{j}") if wide else (lambda i, j: f"{prefix}{i}{j}")
    return [[fmt(i + 1, j + 1) for j in range(cols)] for i in range(rows)]


def _var_matrix(table: VarTable, names: list[list[str]]) -> PolyMatrix:
    return [[SuperPolynomial.var(table, name) for name in row] for row in names]


def _flatten(names: list[list[str]]) -> list[str]:
    return [name for row in names for name in row]


# -- GL and SL -------------------------------------------------------------


def gl_presentation(m: int, n: int) -> GroupPresentation:
    """C[GL_{m|n}]: generic block entries plus inverted determinants.

    Even variables: the m^2 entries x of the even-even block, the n^2
    entries y of the odd-odd block, then z (inverse of det y) and w
    (inverse of det x).  Odd variables: the even-odd entries xi and the
    odd-even entries gamma.  Relations: w*det(x) - 1 and z*det(y) - 1.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise BadDims(f"need m, n >= 0 and m + n >= 1, got {m}|{n}")
    x_names = _entry_names("x", m, m)
    y_names = _entry_names("y", n, n)
    xi_names = _entry_names("xi", m, n)
    gamma_names = _entry_names("gamma", n, m)
    evens = _flatten(x_names) + _flatten(y_names)
    if n >= 1:
        evens.append("z")
    if m >= 1:
        evens.append("w")
    odds = _flatten(xi_names) + _flatten(gamma_names)
    table = VarTable(tuple(evens), tuple(odds))

    gens = []
    if m >= 1:
        det_x = poly_det(_var_matrix(table, x_names), table)
        gens.append(SuperPolynomial.var(table, "w") * det_x - 1)
    if n >= 1:
        det_y = poly_det(_var_matrix(table, y_names), table)
        gens.append(SuperPolynomial.var(table, "z") * det_y - 1)

    coords = []
    for i in range(m):
        for j in range(m):
            coords.append(ONE if i == j else ZERO)
    for i in range(n):
        for j in range(n):
            coords.append(ONE if i == j else ZERO)
    if n >= 1:
        coords.append(ONE)
    if m >= 1:
        coords.append(ONE)
    identity = ClosedPoint(tuple(coords))
    return GroupPresentation(Presentation(table, tuple(gens), ()), identity)


def generic_berezinian(m: int, n: int) -> SuperPolynomial:
    """Ber of the generic matrix, as a polynomial in the GL coordinates.

    The inverse of the odd-odd block is realized inside the coordinate
    ring as z * adj(y), so the result is a plain polynomial; evaluating
    at the identity gives 1.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise BadDims(f"need m, n >= 0 and m + n >= 1, got {m}|{n}")
    table = gl_presentation(m, n).base.table
    x_names = _entry_names("x", m, m)
    y_names = _entry_names("y", n, n)
    xi_names = _entry_names("xi", m, n)
    gamma_names = _entry_names("gamma", n, m)
    if n == 0:
        return poly_det(_var_matrix(table, x_names), table)
    y = _var_matrix(table, y_names)
    z = SuperPolynomial.var(table, "z")
    s_inv = [[z * entry for entry in row] for row in poly_adjugate(y, table)]
    det_s_inv = poly_det(s_inv, table)
    if m == 0:
        return det_s_inv
    x = _var_matrix(table, x_names)
    xi = _var_matrix(table, xi_names)
    gamma = _var_matrix(table, gamma_names)
    correction = _mat_mul(_mat_mul(xi, s_inv, table), gamma, table)
    upper = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(x, correction)]
    return poly_det(upper, table) * det_s_inv


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


def sl_presentation(m: int, n: int) -> GroupPresentation:
    """GL_{m|n} with the extra even relation Ber(g) = 1."""
    gl = gl_presentation(m, n)
    ber = generic_berezinian(m, n)
    gens = gl.base.even_gens + (ber - 1,)
    return GroupPresentation(
        Presentation(gl.base.table, gens, gl.base.odd_gens), gl.identity
    )


# -- bilinear-form stabilizers ---------------------------------------------


class FormFlavor(Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"


def standard_form(m: int, n: int, flavor: FormFlavor) -> list[list[QI]]:
    """Identity on one diagonal block, the standard symplectic J on the other."""

    def ident(k):
        return [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]

    def sympl(k):
        if k % 2:
            raise BadForm(f"an invertible antisymmetric block needs even size, got {k}")
        half = k // 2
        out = [[ZERO] * k for _ in range(k)]
        for i in range(half):
            out[i][half + i] = ONE
            out[half + i][i] = -ONE
        return out

    if flavor is FormFlavor.SYMMETRIC:
        even_block, odd_block = ident(m), sympl(n)
    else:
        even_block, odd_block = sympl(m), ident(n)
    full = [[ZERO] * (m + n) for _ in range(m + n)]
    for i in range(m):
        for j in range(m):
            full[i][j] = even_block[i][j]
    for i in range(n):
        for j in range(n):
            full[m + i][m + j] = odd_block[i][j]
    return full


def _check_form(phi: Sequence[Sequence[QI]], m: int, n: int, flavor: FormFlavor):
    k = m + n
    if len(phi) != k or any(len(row) != k for row in phi):
        raise BadForm(f"form must be {k}x{k}")
    for i in range(k):
        for j in range(k):
            mixed = (i < m) != (j < m)
            if mixed and phi[i][j]:
                raise BadForm("mixed blocks of the form must vanish")
    sym_even = flavor is FormFlavor.SYMMETRIC
    for i in range(m):
        for j in range(m):
            want = phi[j][i] if sym_even else -phi[j][i]
            if phi[i][j] != want:
                raise BadForm("even-even block has the wrong symmetry")
    for a in range(n):
        for b in range(n):
            want = -phi[m + b][m + a] if sym_even else phi[m + b][m + a]
            if phi[m + a][m + b] != want:
                raise BadForm("odd-odd block has the wrong symmetry")
    from .supercalc import matrix_rank

    if matrix_rank(tuple(tuple(row) for row in phi)) != k:
        raise BadForm("form is not invertible")


def form_stabilizer_presentation(
    m: int,
    n: int,
    phi: Sequence[Sequence[QI]] | None = None,
    flavor: FormFlavor = FormFlavor.SYMMETRIC,
) -> GroupPresentation:
    """Subgroup of GL_{m|n} preserving the bilinear form phi.

    Relations are the entries of g^st * phi * g - phi.  The result of
    that product has the same symmetry as phi, so only one triangle of
    each diagonal block and one mixed block are kept; for the symmetric
    flavor the odd-odd diagonal vanishes identically and is dropped.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise BadDims(f"need m, n >= 0 and m + n >= 1, got {m}|{n}")
    if phi is None:
        phi = standard_form(m, n, flavor)
    else:
        phi = [[QI.of(v) for v in row] for row in phi]
    _check_form(phi, m, n, flavor)

    x_names = _entry_names("x", m, m)
    y_names = _entry_names("y", n, n)
    xi_names = _entry_names("xi", m, n)
    gamma_names = _entry_names("gamma", n, m)
    table = VarTable(
        tuple(_flatten(x_names) + _flatten(y_names)),
        tuple(_flatten(xi_names) + _flatten(gamma_names)),
    )
    x = _var_matrix(table, x_names)
    y = _var_matrix(table, y_names)
    xi = _var_matrix(table, xi_names)
    gamma = _var_matrix(table, gamma_names)

    def transpose(mat, rows, cols):
        return [[mat[r][c] for r in range(rows)] for c in range(cols)]

    k = m + n
    g = [x[i] + xi[i] for i in range(m)] + [gamma[a] + y[a] for a in range(n)]
    x_t = transpose(x, m, m)
    gamma_t = transpose(gamma, n, m)
    xi_t = transpose(xi, m, n)
    y_t = transpose(y, n, n)
    g_st = [x_t[i] + gamma_t[i] for i in range(m)] + [
        [-e for e in xi_t[a]] + y_t[a] for a in range(n)
    ]
    phi_poly = [[SuperPolynomial.const(table, v) for v in row] for row in phi]
    product = _mat_mul(_mat_mul(g_st, phi_poly, table), g, table)
    residual = [
        [product[i][j] - phi_poly[i][j] for j in range(k)] for i in range(k)
    ]

    sym_even = flavor is FormFlavor.SYMMETRIC
    even_gens: list[SuperPolynomial] = []
    for i in range(m):
        inner = range(i, m) if sym_even else range(i + 1, m)
        for j in inner:
            if not residual[i][j].is_zero():
                even_gens.append(residual[i][j])
    for a in range(n):
        inner = range(a + 1, n) if sym_even else range(a, n)
        for b in inner:
            if not residual[m + a][m + b].is_zero():
                even_gens.append(residual[m + a][m + b])
    odd_gens = [
        residual[i][m + b]
        for i in range(m)
        for b in range(n)
        if not residual[i][m + b].is_zero()
    ]

    coords = []
    for i in range(m):
        for j in range(m):
            coords.append(ONE if i == j else ZERO)
    for a in range(n):
        for b in range(n):
            coords.append(ONE if a == b else ZERO)
    identity = ClosedPoint(tuple(coords))
    return GroupPresentation(
        Presentation(table, tuple(even_gens), tuple(odd_gens)), identity
    )


# -- actions and stabilizers ------------------------------------------------


def lift_to_joint(
    p: SuperPolynomial, joint: VarTable, even_offset: int, odd_offset: int
) -> SuperPolynomial:
    """Re-key a polynomial into a joint table containing its variables as a slice."""
    src = p.table
    terms: dict[SuperMonomial, QI] = {}
    for mono, coeff in p.items():
        evens = (
            (0,) * even_offset
            + mono.evens
            + (0,) * (joint.m - even_offset - src.m)
        )
        terms[SuperMonomial(evens, mono.odds << odd_offset)] = coeff
    return SuperPolynomial(joint, terms)


@dataclass(frozen=True)
class ActionPresentation:
    """An action of a supergroup on a supervariety, given by its comorphism.

    comorphism maps each space coordinate name to a polynomial over the
    joint table (group variables first, then space variables); it must
    preserve parity coordinate by coordinate.
    """

    group: GroupPresentation
    space: Presentation
    comorphism: Mapping[str, SuperPolynomial]
    joint: VarTable = field(init=False)

    def __post_init__(self):
        g, x = self.group.base.table, self.space.table
        joint = VarTable(g.evens + x.evens, g.odds + x.odds)
        object.__setattr__(self, "joint", joint)
        for name in x.evens + x.odds:
            if name not in self.comorphism:
                raise ParityViolation(f"comorphism missing image of {name!r}")
        for name, image in self.comorphism.items():
            if image.table != joint:
                raise ParityViolation(
                    f"comorphism image of {name!r} is not over the joint table"
                )
            if name in x.evens and not image.is_homogeneous_even():
                raise ParityViolation(f"image of even coordinate {name!r} must be even")
            if name in x.odds and not image.is_homogeneous_odd():
                raise ParityViolation(f"image of odd coordinate {name!r} must be odd")


def stabilizer_ideal(action: ActionPresentation, u: ClosedPoint) -> GroupPresentation:
    """Presentation of the subgroup fixing the point u.

    tau sends a space function through the comorphism and evaluates the
    space variables at u.  The stabilizer adds the relations tau(h) for h
    in the ideal of u: each coordinate minus its value, plus the space's
    own relations.
    """
    group = action.group
    space = action.space
    space.check_point(u)
    if not point_on_variety(space, u):
        raise PointNotOnVariety(f"{u} does not lie on the space")
    gt = group.base.table
    joint = action.joint

    # Partial evaluation joint -> group: space evens at u, space odds at 0.
    even_images = [SuperPolynomial.even_var(gt, i) for i in range(gt.m)] + [
        SuperPolynomial.const(gt, c) for c in u.coords
    ]
    odd_images = [SuperPolynomial.odd_var(gt, j) for j in range(gt.n)] + [
        SuperPolynomial.zero(gt) for _ in space.table.odds
    ]

    def tau_of_coordinate(name: str) -> SuperPolynomial:
        return action.comorphism[name].substitute(gt, even_images, odd_images)

    tau_even = [tau_of_coordinate(name) for name in space.table.evens]
    tau_odd = [tau_of_coordinate(name) for name in space.table.odds]

    new_even = [img - SuperPolynomial.const(gt, c) for img, c in zip(tau_even, u.coords)]
    new_odd = list(tau_odd)
    for f in space.even_gens:
        new_even.append(f.substitute(gt, tau_even, tau_odd))
    for f in space.odd_gens:
        new_odd.append(f.substitute(gt, tau_even, tau_odd))

    extended = Presentation(
        gt,
        group.base.even_gens + tuple(g for g in new_even if not g.is_zero()),
        group.base.odd_gens + tuple(g for g in new_odd if not g.is_zero()),
    )
    return GroupPresentation(extended, group.identity)


def berezinian_scaling_action(m: int, n: int) -> ActionPresentation:
    """GL_{m|n} acting on the affine line by multiplication with Ber(g)."""
    group = gl_presentation(m, n)
    space = Presentation(VarTable(("t",), ()))
    joint = VarTable(group.base.table.evens + ("t",), group.base.table.odds)
    ber = lift_to_joint(generic_berezinian(m, n), joint, 0, 0)
    t = SuperPolynomial.var(joint, "t")
    return ActionPresentation(group, space, {"t": ber * t})
