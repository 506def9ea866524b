"""Monomial bases and sparse polynomial arithmetic.

Monomials are exponent tuples. Within a fixed degree the canonical order is
descending lexicographic on the exponent tuple, so the global graded
lexicographic order is (degree, then position in that list). Polynomials
are dicts exponent-tuple -> scalar with no explicit zeros.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int):
    """All exponent tuples of the given total degree, descending lex."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int):
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


def monomial_count(nvars: int, degree: int) -> int:
    if nvars == 0:
        return 1 if degree == 0 else 0
    return comb(nvars + degree - 1, degree)


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            m = mono_mul(ma, mb)
            c = out.get(m, 0) + ca * cb
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def poly_add_into(acc: dict, p: dict, coeff=1) -> None:
    for m, c in p.items():
        v = acc.get(m, 0) + coeff * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def poly_scale(p: dict, coeff) -> dict:
    if not coeff:
        return {}
    return {m: coeff * c for m, c in p.items()}


def matrix_columns_sparse(mat):
    """Per-column sparse view [(row, scalar), ...] of a linalg.Matrix."""
    cols = []
    for j in range(mat.cols):
        col = [(i, mat.at(i, j)) for i in range(mat.rows) if mat.at(i, j)]
        cols.append(col)
    return cols


def is_monomial_matrix(mat) -> bool:
    """True when every column has exactly one nonzero entry."""
    for j in range(mat.cols):
        nonzero = 0
        for i in range(mat.rows):
            if mat.at(i, j):
                nonzero += 1
                if nonzero > 1:
                    return False
        if nonzero != 1:
            return False
    return True


def act_on_monomial(cols_sparse, mono: tuple) -> dict:
    """Image of a monomial under the linear substitution with given columns."""
    acc = {(0,) * len(mono): Fraction(1)}
    for j, e in enumerate(mono):
        if e == 0:
            continue
        linear = {}
        for i, c in cols_sparse[j]:
            key = tuple(1 if t == i else 0 for t in range(len(mono)))
            linear[key] = c
        for _ in range(e):
            acc = poly_mul(acc, linear)
    return acc


def act_on_monomial_monomial_matrix(cols_single, mono: tuple):
    """Fast path when each variable maps to a scalar multiple of one variable.

    cols_single[j] = (row, scalar). Returns (image monomial, coefficient).
    """
    img = [0] * len(mono)
    coeff = Fraction(1)
    for j, e in enumerate(mono):
        if e == 0:
            continue
        i, c = cols_single[j]
        img[i] += e
        coeff = coeff * c**e
    return tuple(img), coeff


@lru_cache(maxsize=None)
def compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to total, descending lex."""
    if parts == 0:
        return ((),) if total == 0 else ()
    if parts == 1:
        return ((total,),)
    out = []
    for e in range(total, -1, -1):
        for rest in compositions(total - e, parts - 1):
            out.append((e,) + rest)
    return tuple(out)
