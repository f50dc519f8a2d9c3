"""Independent brute-force oracles used to pin expected values.

These deliberately avoid the kernel's bitmask sign rule and pivot
filtration: products are expanded term by term with a transposition-
counting bubble sort, dimension tables are recomputed per order with a
dense elimination, and free-model counts come from explicit enumeration.
"""

from __future__ import annotations

import itertools

from supergeom import QI, SuperPolynomial
from supergeom.localgeom import monomial_basis
from supergeom.superpoly import ClosedPoint, Presentation, mask_to_indices


def sort_with_sign(indices):
    """Bubble sort returning (sorted tuple, sign); (None, 0) on a repeat."""
    arr = list(indices)
    sign = 1
    n = len(arr)
    for i in range(n):
        for j in range(n - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    for a, b in zip(arr, arr[1:]):
        if a == b:
            return None, 0
    return tuple(arr), sign


def poly_to_termlist(p: SuperPolynomial):
    return [
        (coeff, mono.evens, tuple(mask_to_indices(mono.odds)))
        for mono, coeff in p.items()
    ]


def brute_mul(a: SuperPolynomial, b: SuperPolynomial):
    """Termwise expansion with explicit sign tracking; returns a dict."""
    out = {}
    for ca, ea, oa in poly_to_termlist(a):
        for cb, eb, ob in poly_to_termlist(b):
            odds, sign = sort_with_sign(oa + ob)
            if odds is None:
                continue
            evens = tuple(x + y for x, y in zip(ea, eb))
            coeff = ca * cb
            if sign < 0:
                coeff = -coeff
            key = (evens, odds)
            acc = out.get(key, QI(0)) + coeff
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return out


def poly_to_dict(p: SuperPolynomial):
    return {
        (mono.evens, tuple(mask_to_indices(mono.odds))): coeff
        for mono, coeff in p.items()
    }


def brute_term_sign(table, factors):
    """Canonical (coeff sign, evens, odds) of a written factor product."""
    evens = [0] * table.m
    odds = []
    for name in factors:
        if name in table.evens:
            evens[table.evens.index(name)] += 1
        else:
            odds.append(table.odds.index(name))
    sorted_odds, sign = sort_with_sign(odds)
    if sorted_odds is None:
        return None
    return sign, tuple(evens), sorted_odds


def dense_rank(rows):
    """Plain dense Gaussian elimination over QI."""
    work = [list(r) for r in rows if any(r)]
    rank = 0
    if not work:
        return 0
    ncols = len(work[0])
    for col in range(ncols):
        piv = None
        for r in range(rank, len(work)):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [v * inv for v in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def oracle_t(pres: Presentation, point: ClosedPoint, k: int) -> int:
    """dim of the order-k quotient, recomputed from scratch at order k."""
    table = pres.table
    basis = monomial_basis(table, k)
    index = {mono: idx for idx, mono in enumerate(basis)}
    rows = []
    for g in pres.all_gens():
        g = g.shift_to_origin(point.coords)
        for mu in basis:
            prod = (SuperPolynomial(table, {mu: QI(1)}) * g).truncate(k)
            if prod.is_zero():
                continue
            row = [QI(0)] * len(basis)
            for mono, coeff in prod.items():
                row[index[mono]] = coeff
            rows.append(row)
    return len(basis) - dense_rank(rows)


def brute_free_count(r: int, s: int, d: int) -> int:
    """Count degree-d monomials on r even and s odd variables by enumeration."""
    count = 0
    for mask in itertools.product((0, 1), repeat=s):
        remaining = d - sum(mask)
        if remaining < 0:
            continue
        count += sum(1 for _ in _compositions(remaining, r))
    return count


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail
