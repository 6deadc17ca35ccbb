"""Sylvester resultants and transversality certificates.

Two plane curves of degree d with no common component meet in d*d
points counted with multiplicity.  After a linear change of coordinates
the resultant with respect to the first variable is a binary form of
degree d*d in the remaining two; if its dehomogenization on a chart
keeps full degree and is squarefree, every intersection point is
transversal and there are exactly d*d distinct ones.  The change of
coordinates is retried from a seeded generator, so certificates are
reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .fields import GAUSSIAN, RATIONAL
from .linalg import det, poly_matrix_det
from .poly import Poly

TRANSVERSAL = "transversal"
FAILED = "failed"


def _coefficients_in(f, var):
    """Dense list of coefficient polynomials of f seen in one variable."""
    top = max((e[var] for e in f.terms), default=0)
    coeffs = [Poly.zero(f.field, f.nvars) for _ in range(top + 1)]
    for exps, coeff in f.terms.items():
        k = exps[var]
        stripped = tuple(0 if i == var else x for i, x in enumerate(exps))
        coeffs[k] = coeffs[k] + Poly.monomial(f.field, stripped, coeff)
    return coeffs


def sylvester_resultant(f, g, var):
    """Resultant of f and g with respect to one variable.

    The inputs must be nonzero and at least one must actually involve
    the variable; a zero-degree partner b contributes b**deg(f) as in
    the classical convention.  The output no longer involves ``var``.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of a zero polynomial")
    if f.field != g.field or f.nvars != g.nvars:
        raise ValueError("resultant needs one common ring")
    fc = _coefficients_in(f, var)
    gc = _coefficients_in(g, var)
    df, dg = len(fc) - 1, len(gc) - 1
    if df + dg == 0:
        raise ValueError(f"neither input involves variable {var}")
    n = df + dg
    zero = Poly.zero(f.field, f.nvars)
    rows = []
    for i in range(dg):
        row = [zero] * n
        for k, c in enumerate(reversed(fc)):
            row[i + k] = c
        rows.append(row)
    for i in range(df):
        row = [zero] * n
        for k, c in enumerate(reversed(gc)):
            row[i + k] = c
        rows.append(row)
    return poly_matrix_det(rows)


def _dense_degree(coeffs):
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i]:
            return i
    return -1


def _dense_mod(a, b, field):
    a = a[:]
    db = _dense_degree(b)
    lead_inv = b[db].inverse()
    da = _dense_degree(a)
    while da >= db:
        f = a[da] * lead_inv
        shift = da - db
        for i in range(db + 1):
            if b[i]:
                a[i + shift] = a[i + shift] - f * b[i]
        da = _dense_degree(a)
    return a[: max(da + 1, 1)] if da >= 0 else [field.zero]


def is_squarefree_univariate(f, var=None):
    """Whether a one-variable polynomial has no repeated roots.

    Decided by gcd(f, f') being constant; over the perfect coefficient
    fields here a vanishing derivative of a nonconstant polynomial
    already means a repeated root.  Constants count as squarefree; the
    zero polynomial is refused.
    """
    if f.is_zero:
        raise ValueError("squarefree test on the zero polynomial")
    field = f.field
    coeffs = f.univariate_coefficients(var)
    if _dense_degree(coeffs) < 1:
        return True
    deriv = [coeffs[k] * k for k in range(1, len(coeffs))]
    if _dense_degree(deriv) < 0:
        return False
    a, b = coeffs, deriv
    while _dense_degree(b) > 0:
        a, b = b, _dense_mod(a, b, field)
        if _dense_degree(b) < 0:
            return False
    return True


def apply_linear_change(f, matrix):
    """Substitute x_i -> sum_j matrix[i][j] x_j everywhere in f."""
    n = f.nvars
    images = [Poly.linear_form(f.field, matrix[i]) for i in range(n)]
    result = Poly.zero(f.field, n)
    caches = [{} for _ in range(n)]
    for exps, coeff in f.terms.items():
        term = Poly.constant(f.field, n, coeff)
        for i, e in enumerate(exps):
            if e:
                cache = caches[i]
                pe = cache.get(e)
                if pe is None:
                    pe = images[i] ** e
                    cache[e] = pe
                term = term * pe
        result = result + term
    return result


def _random_change(field, rng):
    while True:
        if field.kind in (RATIONAL, GAUSSIAN):
            m = [[field.from_int(rng.randint(-4, 4)) for _ in range(3)] for _ in range(3)]
        else:
            m = [[field.random_scalar(rng) for _ in range(3)] for _ in range(3)]
        if det(m, field):
            return m


@dataclass
class TransversalityResult:
    verdict: str
    points: int | None = None
    reason: str | None = None
    trials: int = 0
    change: list | None = None

    def __bool__(self):
        return self.verdict == TRANSVERSAL


def certify_transversal(f, g, seed=0, max_trials=8):
    """Certify that two equal-degree plane curves meet transversally.

    Success means the curves intersect in exactly d*d distinct points,
    each with intersection multiplicity one.  Failure names the reason:
    a shared component, or no projection with a squarefree full-degree
    resultant within the trial budget.
    """
    for h in (f, g):
        if h.is_zero or not h.is_homogeneous():
            raise ValueError("transversality needs nonzero homogeneous inputs")
    if f.field != g.field or f.nvars != 3 or g.nvars != 3:
        raise ValueError("transversality is defined for plane curves in 3 variables")
    d = f.homogeneous_degree()
    if g.homogeneous_degree() != d:
        raise ValueError("transversality check expects equal degrees")
    field = f.field
    rng = random.Random(seed)
    target = d * d
    reason = "no change of coordinates gave a squarefree full-degree resultant"
    for trial in range(1, max_trials + 1):
        change = None if trial == 1 else _random_change(field, rng)
        fc = f if change is None else apply_linear_change(f, change)
        gc = g if change is None else apply_linear_change(g, change)
        lead = (d, 0, 0)
        if not fc.coefficient(lead) or not gc.coefficient(lead):
            continue
        res = sylvester_resultant(fc, gc, 0)
        if res.is_zero:
            return TransversalityResult(
                FAILED, reason="curves share a component", trials=trial
            )
        chart = res.set_variable(2, 1)
        coeffs = chart.univariate_coefficients(1)
        if _dense_degree(coeffs) != target:
            continue
        if is_squarefree_univariate(chart, 1):
            return TransversalityResult(
                TRANSVERSAL, points=target, trials=trial, change=change
            )
        reason = "resultant has a repeated root; intersection not transversal"
    return TransversalityResult(FAILED, reason=reason, trials=max_trials)
