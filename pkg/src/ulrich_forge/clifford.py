"""Matrix factorizations A with A * A = q * Id for quadrics q.

The build consumes a sum-of-products decomposition q = sum l_i * m_i
and assembles matrices of linear forms recursively:

    A_1 = [[0, l_1], [m_1, 0]],
    A_{k+1} = [[A_k, l_{k+1} * I], [m_{k+1} * I, -A_k]],

so s pairs give a 2^s by 2^s matrix presenting a sheaf of rank 2^(s-1)
on the quadric.  Verification multiplies the matrix out symbolically
and is run on every build; the determinant certificate additionally
samples random points and checks det A = sign * q^(2^(s-1)) with one
consistent sign.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import det
from .poly import Poly


class MatrixFactorization:
    """A square matrix of linear forms with its target quadric."""

    __slots__ = ("field", "nvars", "size", "entries", "quadric", "source")

    def __init__(self, entries, quadric, source=None):
        size = len(entries)
        if size == 0 or any(len(row) != size for row in entries):
            raise ValueError("entries must form a square matrix")
        field, nvars = quadric.field, quadric.nvars
        for row in entries:
            for e in row:
                if e.field != field or e.nvars != nvars:
                    raise ValueError("entry from the wrong ring")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "entries", tuple(tuple(row) for row in entries))
        object.__setattr__(self, "quadric", quadric)
        object.__setattr__(self, "source", source)

    def __setattr__(self, *_):
        raise AttributeError("MatrixFactorization is immutable")

    @property
    def ulrich_rank(self):
        return self.size // 2

    def __repr__(self):
        return f"MatrixFactorization({self.size}x{self.size} over {self.field})"


def build_clifford_factorization(sop):
    """Build and symbolically verify the factorization of sop.quadric.

    Every pair must consist of nonzero linear forms; the result is a
    2^s sized matrix whose square is the quadric times the identity.
    """
    pairs = list(sop.pairs)
    if not pairs:
        raise ValueError("need at least one pair of linear forms")
    field = sop.quadric.field
    nvars = sop.quadric.nvars
    zero = Poly.zero(field, nvars)
    for l, m in pairs:
        for h in (l, m):
            if h.is_zero or not h.is_homogeneous() or h.homogeneous_degree() != 1:
                raise ValueError("pair entries must be nonzero linear forms")
    l1, m1 = pairs[0]
    block = [[zero, l1], [m1, zero]]
    # negation cache keeps blocks sharing Poly objects, which later lets
    # verification and point evaluation memoize on object identity
    neg_cache = {id(zero): zero}
    for l, m in pairs[1:]:
        size = len(block)
        neg = []
        for row in block:
            out = []
            for e in row:
                v = neg_cache.get(id(e))
                if v is None:
                    v = -e
                    neg_cache[id(e)] = v
                    neg_cache[id(v)] = e
                out.append(v)
            neg.append(out)
        top = [block[i] + [l if j == i else zero for j in range(size)] for i in range(size)]
        bottom = [
            [m if j == i else zero for j in range(size)] + neg[i] for i in range(size)
        ]
        block = top + bottom
    mf = MatrixFactorization(block, sop.quadric, source=sop)
    if not verify_clifford(mf):
        raise AssertionError("clifford construction failed its symbolic check")
    return mf


def verify_clifford(mf):
    """Full symbolic check that A * A equals quadric * Id entry by entry.

    Also insists every entry is zero or homogeneous linear, so a matrix
    read back from JSON is validated structurally before the product.
    """
    for row in mf.entries:
        for e in row:
            if e and (not e.is_homogeneous() or e.homogeneous_degree() != 1):
                return False
    n = mf.size
    zero = Poly.zero(mf.field, mf.nvars)
    support = [[k for k, e in enumerate(row) if e] for row in mf.entries]
    products = {}
    for i in range(n):
        acc = {}
        for k in support[i]:
            a = mf.entries[i][k]
            for j in support[k]:
                b = mf.entries[k][j]
                key = (id(a), id(b))
                prod = products.get(key)
                if prod is None:
                    prod = a * b
                    products[key] = prod
                cur = acc.get(j)
                acc[j] = prod if cur is None else cur + prod
        for j in range(n):
            expected = mf.quadric if i == j else zero
            if acc.get(j, zero) != expected:
                return False
    return True


@dataclass
class DeterminantCertificate:
    ok: bool
    sign: int | None
    tested: int
    skipped: int
    reason: str | None = None


def determinant_certificate(mf, trials=50, seed=0):
    """Sample-point check that det A = sign * quadric^(size/2).

    Points with q = 0 are skipped (the determinant vanishes there by
    design and certifies nothing).  The sign must be the same +1 or -1
    at every sampled point; any mismatch fails the certificate.
    """
    field = mf.field
    rng = random.Random(seed)
    half = mf.size // 2
    sign = None
    tested = skipped = 0
    budget = 20 * trials
    while tested < trials and budget:
        budget -= 1
        point = [field.random_scalar(rng) for _ in range(mf.nvars)]
        qv = mf.quadric.evaluate(point)
        if not qv:
            skipped += 1
            continue
        cache = {}
        numeric = []
        for row in mf.entries:
            out = []
            for e in row:
                key = id(e)
                v = cache.get(key)
                if v is None:
                    v = e.evaluate(point)
                    cache[key] = v
                out.append(v)
            numeric.append(out)
        dv = det(numeric, field)
        expected = qv**half
        if dv == expected:
            point_sign = 1
        elif dv == -expected:
            point_sign = -1
        else:
            return DeterminantCertificate(
                False, None, tested, skipped, reason="determinant escaped sign*q^(size/2)"
            )
        if sign is None:
            sign = point_sign
        elif sign != point_sign:
            return DeterminantCertificate(
                False, None, tested, skipped, reason="sign flipped between sample points"
            )
        tested += 1
    if tested == 0:
        return DeterminantCertificate(
            False, None, 0, skipped, reason="no sample point had q nonzero"
        )
    return DeterminantCertificate(True, sign, tested, skipped)
