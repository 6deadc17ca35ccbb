"""Degree-d monomial embeddings and the double-cover quadric pipeline.

A form F of degree 2d in n+1 variables is the restriction of a quadric
Q in the C(n+d,d) coordinates of the degree-d monomial embedding.  The
pipeline here lifts F to such a Q, rewrites T^2 - Q as a sum of
products of linear forms, pulls the factors back to degree-d forms,
and feeds the result to the matrix-factorization builder.  Rank
reports carry the bound 2^(floor(N/2)+1), the achieved rank, and a
lower-bound certificate based on zero-dimensionality of the factor
ideal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .clifford import build_clifford_factorization
from .fields import PRIME, PRIME_QUADRATIC, FieldSpec
from .graded import (
    NO,
    SMOOTH,
    YES,
    GradedSystem,
    is_smooth_hypersurface,
    is_zero_dimensional,
)
from .poly import Poly, monomials_of_degree
from .quadform import QuadraticFormRecord, SumOfProducts, record_from_gram, sum_of_products
from .resultants import TRANSVERSAL, certify_transversal


class VeroneseMap:
    """The embedding of projective n-space by all degree-d monomials."""

    __slots__ = ("n", "d", "basis", "N", "_index")

    def __init__(self, n, d):
        if n < 1 or d < 1:
            raise ValueError("need n >= 1 and d >= 1")
        basis = tuple(monomials_of_degree(n + 1, d))
        if len(basis) != comb(n + d, d):
            raise AssertionError("monomial basis has the wrong length")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "N", len(basis) - 1)
        object.__setattr__(self, "_index", {m: i for i, m in enumerate(basis)})

    def __setattr__(self, *_):
        raise AttributeError("VeroneseMap is immutable")

    def __repr__(self):
        return f"VeroneseMap(n={self.n}, d={self.d}, N={self.N})"

    def pullback(self, p):
        """Substitute the basis monomials into a polynomial in N+1 variables."""
        return p.substitute_monomials(self.basis)


class QuadricLift:
    """A quadric in N+1 variables restricting to a given degree-2d form."""

    __slots__ = ("vmap", "record", "source")

    def __init__(self, vmap, record, source):
        if vmap.pullback(record.poly) != source:
            raise AssertionError("lift does not restrict to the source form")
        object.__setattr__(self, "vmap", vmap)
        object.__setattr__(self, "record", record)
        object.__setattr__(self, "source", source)

    def __setattr__(self, *_):
        raise AttributeError("QuadricLift is immutable")


def _greedy_half(alpha, d):
    # lexicographically largest beta <= alpha with |beta| = d
    beta = []
    left = d
    for a in alpha:
        take = a if a < left else left
        beta.append(take)
        left -= take
    return tuple(beta)


def lift_form(F, vmap):
    """Lift a degree-2d form to a quadric via greedy monomial splitting.

    Each monomial x^alpha splits as x^beta * x^gamma with beta the
    lexicographically largest half; the coefficient lands symmetrically
    on the Gram entry (beta, gamma).  The round trip back through the
    basis monomials is checked exactly.
    """
    if F.nvars != vmap.n + 1:
        raise ValueError(f"form lives in {F.nvars} variables, embedding wants {vmap.n + 1}")
    if F.is_zero or not F.is_homogeneous() or F.homogeneous_degree() != 2 * vmap.d:
        raise ValueError(f"form must be homogeneous of degree {2 * vmap.d}")
    field = F.field
    size = vmap.N + 1
    half = field.from_int(2).inverse()
    gram = [[field.zero] * size for _ in range(size)]
    for alpha, coeff in F.terms.items():
        beta = _greedy_half(alpha, vmap.d)
        gamma = tuple(a - b for a, b in zip(alpha, beta))
        i, j = vmap._index[beta], vmap._index[gamma]
        if i == j:
            gram[i][i] = gram[i][i] + coeff
        else:
            c = coeff * half
            gram[i][j] = gram[i][j] + c
            gram[j][i] = gram[j][i] + c
    return QuadricLift(vmap, record_from_gram(field, gram), F)


def double_cover_quadric(lift):
    """The quadric T^2 - Q in N+2 variables, T the new last variable.

    Accepts a QuadricLift or a bare QuadraticFormRecord for Q; the rank
    always comes out one more than rank(Q).
    """
    record = lift.record if isinstance(lift, QuadricLift) else lift
    field, n = record.field, record.nvars
    gram = [[-v for v in row] + [field.zero] for row in record.gram]
    gram.append([field.zero] * n + [field.one])
    out = record_from_gram(field, gram)
    if out.rank != record.rank + 1:
        raise AssertionError("double-cover quadric rank is off")
    return out


def linear_lift(p, vmap, nvars=None):
    """Rewrite a degree-d form as a linear form in the embedding coordinates.

    Every monomial must be one of the basis monomials; nvars may pad the
    result (the double-cover ring has one extra variable T).
    """
    if p.nvars != vmap.n + 1:
        raise ValueError("form does not live in the embedding source ring")
    if p.is_zero or not p.is_homogeneous() or p.homogeneous_degree() != vmap.d:
        raise ValueError(f"can only lift nonzero forms of degree {vmap.d}")
    out_n = vmap.N + 1 if nvars is None else nvars
    terms = {}
    for exps, coeff in p.terms.items():
        idx = vmap._index[exps]
        key = tuple(1 if i == idx else 0 for i in range(out_n))
        terms[key] = coeff
    return Poly._make(p.field, out_n, terms)


class FormDecomposition:
    """F written exactly as a sum of products of degree-d forms.

    ``square_term_flag`` records that the last pair is (l, l); the
    secant index r is one less than the number of summands.  The
    ``certificates`` dict is the one mutable slot, used to attach
    smoothness / transversality / zero-dimensionality results.
    """

    __slots__ = ("F", "summands", "square_term_flag", "certificates")

    def __init__(self, F, summands, certificates=None):
        summands = tuple((l, m) for l, m in summands)
        if not summands:
            raise ValueError("decomposition needs at least one summand")
        field, nvars = F.field, F.nvars
        degrees = set()
        for l, m in summands:
            for h in (l, m):
                if h.field != field or h.nvars != nvars:
                    raise ValueError("factor from the wrong ring")
                if h.is_zero or not h.is_homogeneous():
                    raise ValueError("factors must be nonzero homogeneous forms")
                degrees.add(h.homogeneous_degree())
        if len(degrees) != 1:
            raise ValueError("factors must share one degree")
        total = Poly.zero(field, nvars)
        for l, m in summands:
            total = total + l * m
        if total != F:
            raise ValueError("summands do not recombine to F")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "summands", summands)
        object.__setattr__(self, "square_term_flag", summands[-1][0] == summands[-1][1])
        object.__setattr__(self, "certificates", dict(certificates or {}))

    def __setattr__(self, name, value):
        raise AttributeError("FormDecomposition fields are fixed at construction")

    @property
    def d(self):
        return self.summands[0][0].homogeneous_degree()

    @property
    def k(self):
        return len(self.summands)

    @property
    def secant_index(self):
        return len(self.summands) - 1

    def __repr__(self):
        return (
            f"FormDecomposition({self.k} summands of degree {self.d}, "
            f"square={self.square_term_flag})"
        )


def _descend_to_prime(polys):
    """Map polynomials with base-field coefficients back down from fp2 to fp."""
    field = polys[0].field
    if field.kind != PRIME_QUADRATIC:
        return None
    for p in polys:
        for c in p.terms.values():
            if c.b:
                return None
    base = FieldSpec.prime(field.p)
    return [
        Poly._make(base, p.nvars, {e: base.from_int(c.a) for e, c in p.terms.items()})
        for p in polys
    ]


def decompose_form(F, vmap):
    """Decompose a degree-2d form into products of degree-d forms.

    Lifts to a quadric, rewrites as a sum of products, pulls each linear
    factor back along the embedding.  Prime-field inputs come back over
    the prime field again whenever no extension coefficient survives the
    pullback; the summand count is at most ceil((N+1)/2).
    """
    lift = lift_form(F, vmap)
    sop = sum_of_products(lift.record)
    factors = []
    for l, m in sop.pairs:
        factors.append(vmap.pullback(l))
        factors.append(vmap.pullback(m))
    target = F
    if factors[0].field != F.field:
        descended = _descend_to_prime(factors)
        if descended is None:
            target = F.embed(factors[0].field)
        else:
            factors = descended
    pairs = list(zip(factors[0::2], factors[1::2]))
    if len(pairs) > (vmap.N + 2) // 2:
        raise AssertionError("summand count escaped the ceil((N+1)/2) bound")
    return FormDecomposition(target, pairs)


@dataclass
class PresentationReport:
    case: str
    size: int
    ulrich_rank: int
    secant_index: int
    summand_count: int
    entry_pullbacks: list


def _entry_pullback(entry, vmap):
    """A matrix entry rewritten in the source variables plus the cover variable.

    Linear in the embedding coordinates, the entry becomes a degree-d
    form plus a multiple of T; the mixed-degree result is only for
    reading, never fed back into the pipeline.
    """
    n1 = vmap.n + 1
    terms = {}
    for exps, coeff in entry.terms.items():
        if exps[vmap.N + 1]:
            key = (0,) * n1 + (1,)
        else:
            key = vmap.basis[exps.index(1)] + (0,)
        terms[key] = coeff
    return Poly._make(entry.field, n1 + 1, terms)


def ulrich_presentation(F, decomp=None):
    """Matrix factorization of T^2 - Q presenting a sheaf on the double cover.

    With a square pair (l, l) in the decomposition the first pair is
    (T + l, T - l) and the size halves (case b); otherwise the first
    pair is (T, T) (case a).  The remaining pairs are the lifted
    summands (l_i, -m_i).  The builder verifies A * A = (T^2 - Q) * Id
    symbolically before anything is returned.
    """
    if F.is_zero or not F.is_homogeneous():
        raise ValueError("need a nonzero homogeneous form")
    deg = F.homogeneous_degree()
    if deg % 2:
        raise ValueError("form degree must be even")
    vmap = VeroneseMap(F.nvars - 1, deg // 2)
    if decomp is None:
        decomp = decompose_form(F, vmap)
    field = decomp.F.field
    big = vmap.N + 2
    T = Poly.variable(field, big, vmap.N + 1)
    lifted = [
        (linear_lift(l, vmap, nvars=big), linear_lift(m, vmap, nvars=big))
        for l, m in decomp.summands
    ]
    if decomp.square_term_flag:
        case = "b"
        l_last = lifted[-1][0]
        pairs = [(T + l_last, T - l_last)]
        pairs.extend((l, -m) for l, m in lifted[:-1])
    else:
        case = "a"
        pairs = [(T, T)]
        pairs.extend((l, -m) for l, m in lifted)
    quadric = Poly.zero(field, big)
    for l, m in lifted:
        quadric = quadric + l * m
    quadric = T * T - quadric
    sop = SumOfProducts(tuple(pairs), not decomp.square_term_flag, quadric)
    if sop.recombine() != quadric:
        raise AssertionError("presentation pairs do not recombine to T^2 - Q")
    mf = build_clifford_factorization(sop)
    report = PresentationReport(
        case=case,
        size=mf.size,
        ulrich_rank=mf.ulrich_rank,
        secant_index=decomp.secant_index,
        summand_count=decomp.k,
        entry_pullbacks=[
            [str(_entry_pullback(e, vmap)) for e in row] for row in mf.entries
        ],
    )
    return mf, report


@dataclass
class LowerBoundCheck:
    status: str
    zero_dimensional: str | None = None
    e_witness: int | None = None
    inequality_holds: bool | None = None
    witness: tuple | None = None


@dataclass
class RankBounds:
    upper_bound: int
    achieved: int
    case: str
    secant_index: int
    summand_count: int
    lower_check: LowerBoundCheck


def rank_bounds(F, decomp, e_max=None, seed=0):
    """Upper bound, achieved rank, and the certified lower-bound check.

    The upper bound 2^(floor(N/2)+1) depends only on (n, d).  The
    achieved rank is 2^r with a square pair, 2^(r+1) without, for
    r = summands - 1.  When F is smooth the factor ideal must be
    zero-dimensional and 2k >= n+1 must hold; a singular F downgrades
    the check to not-applicable with the witness attached.
    """
    deg = F.homogeneous_degree()
    n = F.nvars - 1
    d = decomp.d
    if deg != 2 * d:
        raise ValueError("decomposition degree does not match the form")
    N = comb(n + d, d) - 1
    k = decomp.k
    r = decomp.secant_index
    case = "b" if decomp.square_term_flag else "a"
    achieved = 2**r if decomp.square_term_flag else 2 ** (r + 1)
    smooth = is_smooth_hypersurface(F)
    if smooth.verdict == SMOOTH:
        factors = [h for pair in decomp.summands for h in pair]
        bound = (n + 1) * (d - 1) + 1 if e_max is None else e_max
        zd = is_zero_dimensional(GradedSystem(factors), e_max=bound, seed=seed)
        inequality = 2 * k >= n + 1
        if zd.verdict == YES and inequality:
            status = "certified"
        elif zd.verdict == YES:
            status = "failed: 2k >= n+1"
        elif zd.verdict == NO:
            status = "failed: factor ideal"
        else:
            status = "inconclusive: factor ideal"
        check = LowerBoundCheck(
            status=status,
            zero_dimensional=zd.verdict,
            e_witness=zd.e_witness,
            inequality_holds=inequality,
            witness=zd.point,
        )
    else:
        check = LowerBoundCheck(
            status="not applicable: F singular", witness=smooth.witness
        )
    return RankBounds(
        upper_bound=2 ** (N // 2 + 1),
        achieved=achieved,
        case=case,
        secant_index=r,
        summand_count=k,
        lower_check=check,
    )


def _scalar_candidates(field, rng, max_trials):
    seen = set()
    k = 0
    canonical = [0]
    while len(canonical) < max_trials:
        k += 1
        canonical.extend((k, -k))
    for v in canonical:
        s = field.from_int(v)
        if s not in seen:
            seen.add(s)
            yield s
    while True:
        yield field.random_scalar(rng)


def normalize_plane_decomposition(F, decomp, seed=0, max_trials=20):
    """Rewrite a two-summand plane decomposition into normalized position.

    Searches scalars alpha then beta, smallest first (0, 1, -1, 2, ...),
    so that F = F_a * G_b + F_b * G_a with F_a and F_b smooth and
    (F_b, G_a) meeting transversally in d^2 distinct points.  Every
    rewrite is an exact identity.  On exhausted trials the best attempt
    comes back with certificates naming the check that failed.
    """
    if F.nvars != 3:
        raise ValueError("normalization works with plane forms only")
    if decomp.k != 2:
        raise ValueError("need exactly two summands")
    if decomp.F != F:
        raise ValueError("decomposition does not present F")
    (f1, g1), (f2, g2) = decomp.summands
    rng = random.Random(seed)
    input_smooth = is_smooth_hypersurface(F)
    if input_smooth.verdict != SMOOTH:
        out = FormDecomposition(F, decomp.summands)
        out.certificates.update(
            input_smooth=input_smooth, failed_certificate="input smoothness"
        )
        return out

    # a smooth F_alpha can still dead-end (every F_beta through a singular
    # point of G_alpha), so exhausting beta moves on to the next alpha
    best_depth, best = -1, {}
    for _, alpha in zip(range(max_trials), _scalar_candidates(F.field, rng, max_trials)):
        f_alpha = f1 + f2.scale(alpha)
        if f_alpha.is_zero:
            continue
        first_smooth = is_smooth_hypersurface(f_alpha)
        if first_smooth.verdict != SMOOTH:
            if best_depth < 0:
                best_depth, best = 0, {}
            continue
        g_alpha = g2 - g1.scale(alpha)
        if best_depth < 1:
            best_depth, best = 1, dict(
                alpha=alpha, f_alpha=f_alpha, g_alpha=g_alpha,
                first_factor_smooth=first_smooth,
                failed_certificate="second factor smoothness",
            )
        for _, beta in zip(range(max_trials), _scalar_candidates(F.field, rng, max_trials)):
            f_beta = f2 + f_alpha.scale(beta)
            if f_beta.is_zero:
                continue
            second_smooth = is_smooth_hypersurface(f_beta)
            if second_smooth.verdict != SMOOTH:
                continue
            cross = certify_transversal(f_beta, g_alpha, seed=seed)
            if cross.verdict != TRANSVERSAL:
                if best_depth < 2:
                    best_depth, best = 2, dict(
                        alpha=alpha, f_alpha=f_alpha, g_alpha=g_alpha,
                        first_factor_smooth=first_smooth,
                        second_factor_smooth=second_smooth,
                        transversality=cross,
                        failed_certificate="transversality",
                    )
                continue
            g_beta = g1 - g_alpha.scale(beta)
            out = FormDecomposition(F, ((f_alpha, g_beta), (f_beta, g_alpha)))
            out.certificates.update(
                input_smooth=input_smooth,
                first_factor_smooth=first_smooth,
                second_factor_smooth=second_smooth,
                transversality=cross,
                alpha=alpha,
                beta=beta,
                failed_certificate=None,
            )
            return out

    if best_depth < 1:
        out = FormDecomposition(F, decomp.summands)
        out.certificates.update(
            input_smooth=input_smooth, failed_certificate="first factor smoothness"
        )
        return out
    out = FormDecomposition(
        F, ((best["f_alpha"], g1), (f2, best["g_alpha"]))
    )
    out.certificates.update(input_smooth=input_smooth)
    out.certificates.update(
        (k, v) for k, v in best.items() if k not in ("f_alpha", "g_alpha")
    )
    return out


def induction_rank(n, base_rank):
    """Rank after inducting a base-curve bundle up to dimension n.

    One doubling per dimension: base_rank * 2^(n-1).  Integers are
    arbitrary precision, so the product is always exact.
    """
    if not isinstance(n, int) or not isinstance(base_rank, int):
        raise TypeError("arguments must be integers")
    if n < 2 or base_rank < 1:
        raise ValueError("need n >= 2 and base_rank >= 1")
    return base_rank * 2 ** (n - 1)
