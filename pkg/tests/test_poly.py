"""Sparse homogeneous polynomials: parsing, printing, ring operations."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ulrich_forge import (
    FieldSpec,
    Poly,
    infer_nvars,
    monomials_of_degree,
    parse_poly,
    random_homogeneous,
)


def _eval_naive(p, point):
    """Independent term-by-term evaluation."""
    total = p.field.zero
    for exps, coeff in p.terms.items():
        term = coeff
        for value, e in zip(point, exps):
            term = term * value**e
        total = total + term
    return total


def test_monomials_of_degree_graded_lex():
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert monomials_of_degree(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    ms = monomials_of_degree(3, 4)
    assert len(ms) == 15
    assert ms[0] == (4, 0, 0) and ms[-1] == (0, 0, 4)
    assert ms == sorted(ms, reverse=True)


def test_parse_basic_forms(q):
    p = parse_poly("x^2 + 2*x*y - y^2", q)
    assert p.nvars == 2
    assert p.coefficient((2, 0)) == q.one
    assert p.coefficient((1, 1)) == q.from_int(2)
    assert p.coefficient((0, 2)) == q.from_int(-2) + q.one
    assert p.homogeneous_degree() == 2


def test_str_orders_terms_graded_lex_descending(q):
    p = parse_poly("y^2 + x*y + x^2", q)
    assert str(p) == "x^2 + x*y + y^2"
    mixed = parse_poly("z^3 + x*y*z + y^3", q)
    assert str(mixed) == "x*y*z + y^3 + z^3"


def test_parse_str_round_trip_random():
    rng = random.Random(17)
    fields = [
        FieldSpec.rationals(),
        FieldSpec.gaussian_rationals(),
        FieldSpec.prime(101),
        FieldSpec.quadratic(13),
    ]
    for field in fields:
        for nvars, degree in ((2, 3), (3, 2), (4, 2), (6, 2)):
            for _ in range(10):
                p = random_homogeneous(field, nvars, degree, rng)
                assert parse_poly(str(p), field, nvars=nvars) == p


def test_variable_aliases():
    q = FieldSpec.rationals()
    p = parse_poly("x + y + z + t + w", q)
    assert p.nvars == 5
    assert p == sum(
        (Poly.variable(q, 5, i) for i in range(5)), Poly.zero(q, 5)
    )
    indexed = parse_poly("x0 + x5", q)
    assert indexed.nvars == 6
    assert str(parse_poly("x0*x1", q, nvars=6)) == "x0*x1"


def test_infer_nvars():
    assert infer_nvars("x^2 + y^2") == 2
    assert infer_nvars("x*t") == 4
    assert infer_nvars("w") == 5
    assert infer_nvars("x3") == 4
    assert infer_nvars("x0 + x7") == 8


def test_parenthesized_scalar_literals(q, qi, e13):
    p = parse_poly("(3/2)*x^2", q)
    assert p.coefficient((2,)) == q.scalar(Fraction(3, 2))
    g = parse_poly("(1+2i)*x*y", qi)
    assert g.coefficient((1, 1)) == qi.scalar(1, 2)
    h = parse_poly("(w)*x + y", e13, nvars=2)
    assert h.coefficient((1, 0)) == e13.scalar(0, 1)


def test_bare_i_is_the_imaginary_unit(qi):
    p = parse_poly("i*x + y", qi)
    assert p.coefficient((1, 0)) == qi.imaginary_unit()
    assert parse_poly("x^2 - i*x*y", qi).coefficient((1, 1)) == -qi.imaginary_unit()


def test_bare_w_is_a_variable_not_a_scalar(e13):
    # in polynomial text w only ever names the fifth variable
    p = parse_poly("w^2", e13)
    assert p.nvars == 5
    assert p.coefficient((0, 0, 0, 0, 2)) == e13.one
    with pytest.raises(ValueError):
        parse_poly("w + x", e13, nvars=2)


def test_parse_errors(q):
    for text in ("x^2 +", "x^", "(3/2", "x**2", "", "x^2 + q"):
        with pytest.raises(ValueError):
            parse_poly(text, q)


def test_ring_axioms_random():
    rng = random.Random(23)
    for field in (FieldSpec.rationals(), FieldSpec.prime(101)):
        for _ in range(15):
            a = random_homogeneous(field, 3, 2, rng)
            b = random_homogeneous(field, 3, 2, rng)
            c = random_homogeneous(field, 3, 2, rng)
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert a - a == Poly.zero(field, 3)
            assert (a * b) * c == a * (b * c)


def test_product_degree_and_homogeneity():
    rng = random.Random(29)
    f101 = FieldSpec.prime(101)
    for _ in range(20):
        da, db = rng.randint(1, 3), rng.randint(1, 3)
        a = random_homogeneous(f101, 3, da, rng)
        b = random_homogeneous(f101, 3, db, rng)
        p = a * b
        if not p.is_zero:
            assert p.is_homogeneous()
            assert p.homogeneous_degree() == da + db


def test_degree_conventions(q):
    assert Poly.zero(q, 3).degree() == float("-inf")
    assert Poly.constant(q, 3, q.one).degree() == 0
    assert parse_poly("x^3*y", q).degree() == 4
    assert not (parse_poly("x^2", q, nvars=2) + parse_poly("y", q, nvars=2)).is_homogeneous()


def test_scale_and_neg(q):
    p = parse_poly("x^2 - y^2", q)
    assert p.scale(q.from_int(3)) == parse_poly("3*x^2 - 3*y^2", q)
    assert -p == parse_poly("y^2 - x^2", q)
    assert p.scale(q.zero).is_zero


def test_pow(q):
    p = parse_poly("x + y", q)
    assert p**0 == Poly.constant(q, 2, q.one)
    assert p**2 == parse_poly("x^2 + 2*x*y + y^2", q)
    assert p**3 == parse_poly("x^3 + 3*x^2*y + 3*x*y^2 + y^3", q)


def test_evaluate_matches_naive():
    rng = random.Random(31)
    for field in (FieldSpec.prime(101), FieldSpec.gaussian_rationals()):
        for _ in range(15):
            p = random_homogeneous(field, 3, 3, rng)
            point = tuple(field.random_scalar(rng) for _ in range(3))
            assert p.evaluate(point) == _eval_naive(p, point)


def test_partial_derivative_product_rule():
    rng = random.Random(37)
    f101 = FieldSpec.prime(101)
    for _ in range(10):
        f = random_homogeneous(f101, 3, 2, rng)
        g = random_homogeneous(f101, 3, 2, rng)
        for i in range(3):
            lhs = (f * g).partial_derivative(i)
            rhs = f.partial_derivative(i) * g + f * g.partial_derivative(i)
            assert lhs == rhs


def test_euler_identity():
    # sum x_i dF/dx_i = deg(F) * F for homogeneous F
    rng = random.Random(41)
    q = FieldSpec.rationals()
    for degree in (2, 3, 4):
        f = random_homogeneous(q, 3, degree, rng)
        total = Poly.zero(q, 3)
        for i, g in enumerate(f.gradient()):
            total = total + Poly.variable(q, 3, i) * g
        assert total == f.scale(q.from_int(degree))


def test_gradient_length(q):
    f = parse_poly("x^3 + y^3 + z^3", q)
    grads = f.gradient()
    assert len(grads) == 3
    assert grads[0] == parse_poly("3*x^2", q, nvars=3)


def test_set_variable(q):
    f = parse_poly("x^2 + x*y + y^2", q)
    g = f.set_variable(1, q.from_int(2))
    assert g == parse_poly("x^2 + 2*x + 4", q, nvars=2)


def test_univariate_coefficients(q):
    f = parse_poly("x^3 - 2*x", q, nvars=1)
    coeffs = f.univariate_coefficients()
    assert [str(c) for c in coeffs] == ["0", "-2", "0", "1"]
    with pytest.raises(ValueError):
        parse_poly("x*y", q).univariate_coefficients(0)


def test_substitute_monomials_veronese_relation(q):
    # y0*y2 - y1^2 dies under (x^2, x*y, y^2)
    rel = parse_poly("x0*x2 - x1^2", q, nvars=3)
    images = ((2, 0), (1, 1), (0, 2))
    assert rel.substitute_monomials(images).is_zero
    lifted = parse_poly("x0 + x1", q, nvars=3).substitute_monomials(images)
    assert lifted == parse_poly("x^2 + x*y", q)


def test_substitute_monomials_rejects_mixed_degrees(q):
    p = parse_poly("x0 + x1", q, nvars=2)
    with pytest.raises(ValueError):
        p.substitute_monomials(((1, 0), (2, 0)))


def test_embed_poly(q, qi):
    p = parse_poly("x^2 - y^2", q)
    lifted = p.embed(qi)
    assert lifted.field == qi
    assert str(lifted) == "x^2 - y^2"
    assert p.embed() == lifted


def test_linear_form(f13):
    coeffs = [f13.scalar(2), f13.zero, f13.scalar(12)]
    p = Poly.linear_form(f13, coeffs)
    assert str(p) == "2*x + 12*z"
    assert p.homogeneous_degree() == 1


def test_variables_used(q):
    p = parse_poly("x^2 + z^2", q, nvars=4)
    assert p.variables_used() == {0, 2}


def test_sorted_terms_descending(f101):
    rng = random.Random(43)
    p = random_homogeneous(f101, 4, 3, rng)
    keys = [e for e, _ in p.sorted_terms()]
    assert keys == sorted(keys, key=lambda e: (sum(e),) + tuple(e), reverse=True)


def test_random_homogeneous_contract():
    rng = random.Random(47)
    for field in (FieldSpec.rationals(), FieldSpec.prime(13)):
        for _ in range(10):
            p = random_homogeneous(field, 3, 2, rng)
            assert not p.is_zero
            assert p.is_homogeneous() and p.homogeneous_degree() == 2


def test_poly_hash_consistency(q):
    a = parse_poly("x^2 + y^2", q)
    b = parse_poly("y^2 + x^2", q)
    assert a == b
    assert hash(a) == hash(b)
    assert len({a, b}) == 1
