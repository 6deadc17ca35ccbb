"""Exact matrix routines checked against independent slow oracles."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest

from ulrich_forge import FieldSpec, Poly, parse_poly
from ulrich_forge.linalg import (
    det,
    identity,
    invert,
    mat_mul,
    poly_matrix_det,
    rank,
    solve,
    transpose,
)


def _det_permanent_style(rows, field):
    """Leibniz expansion; factorially slow but independent."""
    n = len(rows)
    total = field.zero
    for perm in permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        term = field.one if inversions % 2 == 0 else -field.one
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def _rank_fraction_oracle(int_rows):
    """Row reduction over Fraction, written from scratch."""
    rows = [[Fraction(v) for v in row] for row in int_rows]
    r = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _random_matrix(field, rng, m, n):
    return [[field.random_scalar(rng) for _ in range(n)] for _ in range(m)]


def _random_invertible(field, rng, n):
    while True:
        m = _random_matrix(field, rng, n, n)
        if det(m, field):
            return m


def _all_fields():
    return [
        FieldSpec.rationals(),
        FieldSpec.gaussian_rationals(),
        FieldSpec.prime(101),
        FieldSpec.quadratic(13),
    ]


def test_rank_small_frozen(q):
    one, zero = q.one, q.zero
    assert rank([[one, zero], [zero, one]], q) == 2
    assert rank([[one, one], [one, one]], q) == 1
    assert rank([[zero, zero], [zero, zero]], q) == 0
    assert rank([], q) == 0


def test_rank_against_fraction_oracle(q):
    rng = random.Random(19)
    for _ in range(30):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        int_rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        rows = [[q.from_int(v) for v in row] for row in int_rows]
        assert rank(rows, q) == _rank_fraction_oracle(int_rows)


def test_rank_drops_after_duplicating_a_row():
    rng = random.Random(21)
    for field in _all_fields():
        m = _random_matrix(field, rng, 3, 4)
        r = rank([list(row) for row in m], field)
        extended = [list(row) for row in m] + [list(m[0])]
        assert rank(extended, field) == r


def test_det_against_leibniz_oracle():
    rng = random.Random(27)
    for field in _all_fields():
        for n in (1, 2, 3, 4):
            m = _random_matrix(field, rng, n, n)
            assert det([list(r) for r in m], field) == _det_permanent_style(m, field)


def test_det_is_multiplicative():
    rng = random.Random(33)
    for field in _all_fields():
        a = _random_matrix(field, rng, 3, 3)
        b = _random_matrix(field, rng, 3, 3)
        ab = mat_mul(a, b, field)
        assert det(ab, field) == det(a, field) * det(b, field)


def test_det_rejects_non_square(q):
    with pytest.raises(ValueError):
        det([[q.one, q.zero]], q)


def test_solve_recovers_consistent_systems():
    rng = random.Random(39)
    for field in _all_fields():
        for _ in range(10):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            a = _random_matrix(field, rng, m, n)
            x0 = [field.random_scalar(rng) for _ in range(n)]
            rhs = [
                sum((a[i][j] * x0[j] for j in range(n)), field.zero)
                for i in range(m)
            ]
            sol = solve([list(r) for r in a], list(rhs), field)
            assert sol is not None
            for i in range(m):
                got = sum((a[i][j] * sol[j] for j in range(n)), field.zero)
                assert got == rhs[i]


def test_solve_reports_inconsistency(q):
    zero, one = q.zero, q.one
    a = [[one, one], [one, one]]
    assert solve(a, [one, q.from_int(2)], q) is None
    assert solve([[zero, zero]], [one], q) is None


def test_solve_is_complete_for_square_invertible():
    rng = random.Random(45)
    f101 = FieldSpec.prime(101)
    a = _random_invertible(f101, rng, 4)
    rhs = [f101.random_scalar(rng) for _ in range(4)]
    sol = solve([list(r) for r in a], list(rhs), f101)
    ainv = invert(a, f101)
    direct = [
        sum((ainv[i][j] * rhs[j] for j in range(4)), f101.zero) for i in range(4)
    ]
    assert sol == direct


def test_invert_round_trip():
    rng = random.Random(51)
    for field in _all_fields():
        a = _random_invertible(field, rng, 3)
        ainv = invert(a, field)
        assert mat_mul(a, ainv, field) == identity(field, 3)
        assert mat_mul(ainv, a, field) == identity(field, 3)


def test_invert_singular_raises(q):
    one = q.one
    with pytest.raises(ValueError):
        invert([[one, one], [one, one]], q)


def test_transpose_and_identity(q):
    a = [[q.from_int(1), q.from_int(2)], [q.from_int(3), q.from_int(4)]]
    assert transpose(a) == [
        [q.from_int(1), q.from_int(3)],
        [q.from_int(2), q.from_int(4)],
    ]
    assert mat_mul(a, identity(q, 2), q) == [list(r) for r in a]


def test_poly_matrix_det_frozen(q):
    x, y = (Poly.variable(q, 4, i) for i in (0, 1))
    z, t = (Poly.variable(q, 4, i) for i in (2, 3))
    d = poly_matrix_det([[x, y], [z, t]])
    assert d == parse_poly("x*t - y*z", q)


def test_poly_matrix_det_commutes_with_evaluation():
    rng = random.Random(57)
    f13 = FieldSpec.prime(13)
    from ulrich_forge import random_homogeneous

    m = [[random_homogeneous(f13, 3, 1, rng) for _ in range(3)] for _ in range(3)]
    symbolic = poly_matrix_det([list(r) for r in m])
    for _ in range(5):
        point = tuple(f13.random_scalar(rng) for _ in range(3))
        values = [[e.evaluate(point) for e in row] for row in m]
        assert symbolic.evaluate(point) == det(values, f13)
