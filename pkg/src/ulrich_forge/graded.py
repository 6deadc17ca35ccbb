"""Graded pieces of homogeneous ideals and smoothness certificates.

``hilbert_value(system, e)`` is the dimension of degree-e forms modulo
the degree-e piece of the ideal, computed as dim S_e minus the rank of
the matrix of monomial multiples of the generators.  Once the value
vanishes it vanishes in every larger degree (the degree-e piece is all
of S_e, and S_1 * S_e spans S_{e+1}), which turns vanishing into a
zero-dimensionality certificate.

For a hypersurface F of degree D with the characteristic not dividing
D, the Jacobian ring of a smooth F is a complete-intersection quotient
with top socle degree (n+1)(D-2), so the Hilbert value at
(n+1)(D-2)+1 is zero exactly when F is smooth.  Evaluating at that
degree is a decision, not a heuristic; degree-2 inputs reduce to the
rank of the Gram matrix because the partials are linear.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

from .fields import GAUSSIAN, PRIME, PRIME_QUADRATIC, RATIONAL
from .linalg import rank
from .poly import Poly, monomial_mul, monomials_of_degree

YES = "yes"
NO = "no"
INCONCLUSIVE = "inconclusive"
SMOOTH = "smooth"
SINGULAR = "singular"


class GradedSystem:
    """A list of homogeneous generators of positive degree in one ring."""

    __slots__ = ("field", "nvars", "generators")

    def __init__(self, generators):
        generators = list(generators)
        if not generators:
            raise ValueError("empty generator list")
        field, nvars = generators[0].field, generators[0].nvars
        for g in generators:
            if g.field != field or g.nvars != nvars:
                raise ValueError("generators from different rings")
            if g.is_zero or not g.is_homogeneous() or g.homogeneous_degree() < 1:
                raise ValueError("generators must be homogeneous of positive degree")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "generators", tuple(generators))

    def __setattr__(self, *_):
        raise AttributeError("GradedSystem is immutable")

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"GradedSystem({len(self.generators)} generators, {self.nvars} vars)"


def graded_dimension(nvars, e):
    """Dimension of the space of degree-e forms in nvars variables."""
    return comb(e + nvars - 1, nvars - 1)


def _multiple_rows(system, e, basis_index, width):
    rows = []
    for g in system:
        dg = g.homogeneous_degree()
        if dg > e:
            continue
        items = list(g.terms.items())
        for gamma in monomials_of_degree(system.nvars, e - dg):
            row = [system.field.zero] * width
            for exps, coeff in items:
                row[basis_index[monomial_mul(gamma, exps)]] = coeff
            rows.append(row)
    return rows


def hilbert_value(system, e):
    """dim of degree-e forms modulo the ideal's degree-e piece (never negative)."""
    if e < 0:
        raise ValueError("degree must be nonnegative")
    basis = monomials_of_degree(system.nvars, e)
    index = {m: k for k, m in enumerate(basis)}
    rows = _multiple_rows(system, e, index, len(basis))
    if not rows:
        return len(basis)
    return len(basis) - rank(rows, system.field)


@dataclass
class ZeroDimResult:
    verdict: str
    e_witness: int | None = None
    point: tuple | None = None

    def __bool__(self):
        return self.verdict == YES


def _candidate_points(field, nvars, rng, trials):
    one, zero = field.one, field.zero
    for i in range(nvars):
        yield tuple(one if j == i else zero for j in range(nvars))
    if field.kind in (RATIONAL, GAUSSIAN):
        small = [field.from_int(v) for v in (0, 1, -1, 2, -2)]
        if nvars <= 4:
            count = 0
            for combo in itertools.product(range(len(small)), repeat=nvars):
                point = tuple(small[c] for c in combo)
                nz = [v for v in point if v]
                if not nz or nz[0] != one:
                    continue
                yield point
                count += 1
                if count >= 1500:
                    break
        for _ in range(trials):
            yield tuple(field.from_int(rng.randint(-6, 6)) for _ in range(nvars))
    else:
        for _ in range(trials):
            yield tuple(field.random_scalar(rng) for _ in range(nvars))


def find_projective_zero(system, seed=0, trials=300):
    """A verified common projective zero of the system, or None.

    Candidates are the coordinate points, a small-height sweep over the
    infinite fields, and seeded random points; every hit is confirmed
    by exact evaluation, so a returned point is a genuine witness.
    """
    rng = random.Random(seed)
    gens = system.generators
    for point in _candidate_points(system.field, system.nvars, rng, trials):
        if not any(point):
            continue
        if all(not g.evaluate(point) for g in gens):
            return point
    return None


def is_zero_dimensional(system, e_max, seed=0):
    """Certify that the projective zero set is empty, or exhibit a point.

    yes(e): the Hilbert value vanishes at e <= e_max and therefore in
    every larger degree.  no(point): a verified common projective zero,
    so the value never vanishes.  Inconclusive otherwise.
    """
    if e_max < 0:
        raise ValueError("e_max must be nonnegative")
    nvars = system.nvars
    for e in range(1, e_max + 1):
        width = graded_dimension(nvars, e)
        budget = sum(
            graded_dimension(nvars, e - g.homogeneous_degree())
            for g in system
            if g.homogeneous_degree() <= e
        )
        if budget < width:
            continue
        if hilbert_value(system, e) == 0:
            return ZeroDimResult(YES, e_witness=e)
    point = find_projective_zero(system, seed=seed)
    if point is not None:
        return ZeroDimResult(NO, point=point)
    return ZeroDimResult(INCONCLUSIVE)


@dataclass
class SmoothnessResult:
    verdict: str
    witness: tuple | None = None
    e_used: int | None = None

    def __bool__(self):
        return self.verdict == SMOOTH


def jacobian_system(f):
    return GradedSystem([g for g in f.gradient() if g])


def is_smooth_hypersurface(f, e_max=None, seed=0):
    """Decide smoothness of the projective hypersurface f = 0.

    The default evaluation degree is the socle bound (n+1)(D-2)+1; at
    that degree a nonzero Hilbert value certifies a singular point over
    the algebraic closure (reported with a rational witness when the
    point search finds one).  Passing a smaller e_max can only return
    smooth or inconclusive.
    """
    if f.is_zero or not f.is_homogeneous():
        raise ValueError("need a nonzero homogeneous polynomial")
    degree = f.homogeneous_degree()
    if degree < 1:
        raise ValueError("need positive degree")
    if f.nvars < 2:
        raise ValueError("need at least two variables")
    p = f.field.characteristic
    if p and degree % p == 0:
        raise ValueError(
            f"characteristic {p} divides deg = {degree}; the Jacobian criterion does not apply"
        )
    if degree == 1:
        return SmoothnessResult(SMOOTH)
    bound = f.nvars * (degree - 2) + 1
    e_used = bound if e_max is None else e_max
    system = jacobian_system(f)
    if len(system) < f.nvars:
        # fewer than n+1 forms always share a projective zero, so a
        # vanishing partial derivative already forces a singular point
        witness = find_projective_zero(system, seed=seed, trials=200)
        return SmoothnessResult(SINGULAR, witness=witness)
    value = hilbert_value(system, e_used)
    if value == 0:
        return SmoothnessResult(SMOOTH, e_used=e_used)
    if e_used >= bound:
        witness = find_projective_zero(system, seed=seed, trials=200)
        return SmoothnessResult(SINGULAR, witness=witness, e_used=e_used)
    return SmoothnessResult(INCONCLUSIVE, e_used=e_used)
