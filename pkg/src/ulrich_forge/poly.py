"""Sparse multivariate polynomials with exact field coefficients.

A polynomial stores a map from exponent tuples to nonzero scalars; the
zero polynomial has an empty map and degree ``NEG_INF``.  The canonical
term order is graded lexicographic, largest first, which fixes printing
and every report layout.

Text grammar (used by the CLI and the tests): terms joined by + or -,
each term a '*'-separated product of an optional coefficient and
variable powers like ``x0^2`` or ``y``.  Variables are ``x0..xk`` or,
for up to five variables, the aliases x y z t w.  Coefficients with two
field components must be parenthesized, e.g. ``(1+2i)*x*y``; a bare
``i`` over the Gaussian rationals is accepted as a factor.
"""

from __future__ import annotations

import re
from .fields import GAUSSIAN, PRIME, PRIME_QUADRATIC, FieldSpec, Scalar

NEG_INF = float("-inf")

_ALIASES = "xyztw"


def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree d, lexicographically descending."""
    if nvars < 1:
        raise ValueError("need at least one variable")
    if nvars == 1:
        return [(d,)]
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - e):
            out.append((e,) + rest)
    return out


def monomial_mul(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def term_key(exps):
    """Sort key putting graded-lex largest terms first under reverse=True."""
    return (sum(exps), exps)


def _eval_mod_p(terms, coords, p):
    total = 0
    for exps, coeff in terms.items():
        v = coeff.a
        for x, e in zip(coords, exps):
            if e:
                v = v * (x if e == 1 else pow(x, e, p)) % p
        total += v
    return total % p


def _pow_pair_mod_p2(xa, xb, e, p, nu):
    ra, rb = 1, 0
    while e:
        if e & 1:
            ra, rb = (ra * xa + nu * rb * xb) % p, (ra * xb + rb * xa) % p
        xa, xb = (xa * xa + nu * xb * xb) % p, 2 * xa * xb % p
        e >>= 1
    return ra, rb


def _eval_mod_p2(terms, ca, cb, p, nu):
    total_a = total_b = 0
    for exps, coeff in terms.items():
        va, vb = coeff.a, coeff.b
        for i, e in enumerate(exps):
            if e:
                xa, xb = ca[i], cb[i]
                if e > 1:
                    xa, xb = _pow_pair_mod_p2(xa, xb, e, p, nu)
                va, vb = (va * xa + nu * vb * xb) % p, (va * xb + vb * xa) % p
        total_a += va
        total_b += vb
    return total_a % p, total_b % p


class Poly:
    """An immutable sparse polynomial over a fixed field and arity."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms=None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
                if not isinstance(coeff, Scalar):
                    coeff = field.scalar(coeff)
                elif coeff.field != field:
                    raise ValueError("coefficient from the wrong field")
                if coeff:
                    clean[exps] = coeff
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _make(cls, field, nvars, terms):
        """Trusted constructor: terms already canonical (no zeros)."""
        self = object.__new__(cls)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def zero(cls, field, nvars):
        return cls._make(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, value):
        if not isinstance(value, Scalar):
            value = field.scalar(value)
        if not value:
            return cls.zero(field, nvars)
        return cls._make(field, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field, nvars, index):
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._make(field, nvars, {exps: field.one})

    @classmethod
    def monomial(cls, field, exps, coeff=1):
        if not isinstance(coeff, Scalar):
            coeff = field.scalar(coeff)
        if not coeff:
            return cls.zero(field, len(exps))
        return cls._make(field, len(exps), {tuple(exps): coeff})

    @classmethod
    def linear_form(cls, field, coeffs):
        """The linear form sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if not isinstance(c, Scalar):
                c = field.scalar(c)
            if c:
                terms[tuple(1 if j == i else 0 for j in range(n))] = c
        return cls._make(field, n, terms)

    # -- basic queries ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        """Degree of a homogeneous polynomial (NEG_INF for zero)."""
        degs = {sum(e) for e in self.terms}
        if not degs:
            return NEG_INF
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]), reverse=True)

    def variables_used(self):
        used = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(i)
        return used

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("polynomials from different rings")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (
            self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.field, self.nvars, frozenset((e, c.a, c.b) for e, c in self.terms.items()))
        )

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            s = terms.get(exps)
            if s is None:
                terms[exps] = coeff
            else:
                s = s + coeff
                if s:
                    terms[exps] = s
                else:
                    del terms[exps]
        return Poly._make(self.field, self.nvars, terms)

    def __neg__(self):
        return Poly._make(
            self.field, self.nvars, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        terms = {}
        get = terms.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = get(exps)
                if s is None:
                    if c:
                        terms[exps] = c
                else:
                    s = s + c
                    if s:
                        terms[exps] = s
                    else:
                        del terms[exps]
        return Poly._make(self.field, self.nvars, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if not isinstance(c, Scalar):
            c = self.field.scalar(c)
        elif c.field != self.field:
            raise ValueError("scalar from the wrong field")
        if not c:
            return Poly.zero(self.field, self.nvars)
        return Poly._make(
            self.field, self.nvars, {e: c * v for e, v in self.terms.items()}
        )

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers take nonnegative integers")
        result = Poly.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus and maps --------------------------------------------------

    def partial_derivative(self, index):
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        terms = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if not e:
                continue
            c = coeff * e
            if not c:
                continue
            lowered = list(exps)
            lowered[index] = e - 1
            terms[tuple(lowered)] = c
        return Poly._make(self.field, self.nvars, terms)

    def gradient(self):
        return [self.partial_derivative(i) for i in range(self.nvars)]

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        field = self.field
        coerced = []
        for v in point:
            if isinstance(v, Scalar):
                if v.field != field:
                    raise ValueError(f"field mismatch: {field} vs {v.field}")
                coerced.append(v)
            else:
                coerced.append(field.scalar(v))
        point = coerced
        # Prime-field points reduce to machine-int arithmetic; build one
        # scalar at the end instead of one per intermediate product.
        kind = field.kind
        if kind == PRIME:
            return field.scalar(_eval_mod_p(self.terms, [v.a for v in point], field.p))
        if kind == PRIME_QUADRATIC:
            a, b = _eval_mod_p2(
                self.terms,
                [v.a for v in point],
                [v.b for v in point],
                field.p,
                field.nu,
            )
            return field.scalar(a, b)
        caches = [{} for _ in range(self.nvars)]
        total = field.zero
        for exps, coeff in self.terms.items():
            v = coeff
            for i, e in enumerate(exps):
                if e:
                    cache = caches[i]
                    pe = cache.get(e)
                    if pe is None:
                        pe = point[i] ** e
                        cache[e] = pe
                    v = v * pe
            total = total + v
        return total

    def set_variable(self, index, value):
        """Substitute a scalar for one variable (stays in the same ring)."""
        field = self.field
        if not isinstance(value, Scalar):
            value = field.scalar(value)
        terms = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e:
                coeff = coeff * value**e
                if not coeff:
                    continue
                exps = tuple(0 if i == index else x for i, x in enumerate(exps))
            s = terms.get(exps)
            if s is None:
                terms[exps] = coeff
            else:
                s = s + coeff
                if s:
                    terms[exps] = s
                else:
                    del terms[exps]
        return Poly._make(field, self.nvars, terms)

    def substitute_monomials(self, images):
        """Ring map sending variable i to the monomial images[i].

        All images must be exponent tuples of one common arity and one
        common positive degree; the result lives in that arity.
        """
        if len(images) != self.nvars:
            raise ValueError("need exactly one image per variable")
        images = [tuple(im) for im in images]
        arities = {len(im) for im in images}
        if len(arities) != 1:
            raise ValueError("images with mixed arities")
        degs = {sum(im) for im in images}
        if len(degs) != 1 or degs.pop() < 1:
            raise ValueError("images must share one positive degree")
        nvars_out = arities.pop()
        terms = {}
        for exps, coeff in self.terms.items():
            out = [0] * nvars_out
            for i, e in enumerate(exps):
                if e:
                    for j, f in enumerate(images[i]):
                        if f:
                            out[j] += e * f
            key = tuple(out)
            s = terms.get(key)
            if s is None:
                terms[key] = coeff
            else:
                s = s + coeff
                if s:
                    terms[key] = s
                else:
                    del terms[key]
        return Poly._make(self.field, nvars_out, terms)

    def embed(self, target_field=None):
        if target_field is None:
            target_field = self.field.extension()
        if target_field == self.field:
            return self
        return Poly._make(
            target_field,
            self.nvars,
            {e: target_field.embed(c) for e, c in self.terms.items()},
        )

    def univariate_coefficients(self, index=None):
        """Dense ascending coefficient list of a one-variable polynomial."""
        used = self.variables_used()
        if index is None:
            if len(used) > 1:
                raise ValueError("polynomial involves several variables")
            index = used.pop() if used else 0
        elif used - {index}:
            raise ValueError("polynomial involves other variables")
        if not self.terms:
            return [self.field.zero]
        top = max(e[index] for e in self.terms)
        coeffs = [self.field.zero] * (top + 1)
        for exps, coeff in self.terms.items():
            coeffs[exps[index]] = coeff
        return coeffs

    # -- text ---------------------------------------------------------------

    def _var_name(self, i):
        return _ALIASES[i] if self.nvars <= len(_ALIASES) else f"x{i}"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                self._var_name(i) + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps)
                if e
            )
            sign = "+"
            if not coeff.b and coeff.a < 0:
                sign, coeff = "-", -coeff
            if coeff.b:
                cs = f"({coeff})"
            else:
                cs = str(coeff)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self} over {self.field}, {self.nvars} vars)"


def random_homogeneous(field, nvars, degree, rng, span=9):
    """A random homogeneous polynomial with full monomial support allowed."""
    terms = {}
    for exps in monomials_of_degree(nvars, degree):
        c = field.random_scalar(rng, span)
        if c:
            terms[exps] = c
    return Poly(field, nvars, terms)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z]\w*)|([-+*^()]))")


def _tokenize(text):
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            rest = text[pos:].strip()
            if not rest:
                break
            raise ValueError(f"cannot tokenize polynomial near {rest[:12]!r}")
        if m.group(1):
            tokens.append(("num", m.group(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
    tokens.append(("end", ""))
    return tokens


def _variable_index(name, nvars):
    m = re.fullmatch(r"x(\d+)", name)
    if m:
        idx = int(m.group(1))
        if idx >= nvars:
            raise ValueError(f"variable {name} exceeds arity {nvars}")
        return idx
    if len(name) == 1 and name in _ALIASES[: min(nvars, len(_ALIASES))]:
        return _ALIASES.index(name)
    raise ValueError(f"unknown variable {name!r} for arity {nvars}")


def infer_nvars(text):
    """Smallest arity covering the variables appearing in the text."""
    best = 0
    for kind, value in _tokenize(text):
        if kind != "name":
            continue
        m = re.fullmatch(r"x(\d+)", value)
        if m:
            best = max(best, int(m.group(1)) + 1)
        elif len(value) == 1 and value in _ALIASES:
            best = max(best, _ALIASES.index(value) + 1)
    return max(best, 1)


class _Parser:
    def __init__(self, text, field, nvars):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.field = field
        self.nvars = nvars
        self.text = text

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        poly = self.parse_term(self.parse_sign())
        while True:
            kind, value = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                poly = poly + self.parse_term(-1 if value == "-" else 1)
            elif kind == "end":
                return poly
            else:
                raise ValueError(f"unexpected {value!r} in polynomial")

    def parse_sign(self):
        kind, value = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            return -1 if value == "-" else 1
        return 1

    def parse_term(self, sign):
        poly = self.parse_factor()
        while True:
            kind, value = self.peek()
            if kind == "op" and value == "*":
                self.take()
                poly = poly * self.parse_factor()
            else:
                break
        if sign < 0:
            poly = -poly
        return poly

    def parse_factor(self):
        kind, value = self.take()
        if kind == "num":
            return Poly.constant(self.field, self.nvars, self.field.parse_scalar(value))
        if kind == "op" and value == "(":
            return self.parse_scalar_group()
        if kind != "name":
            raise ValueError(f"unexpected {value!r} in polynomial")
        if value == "i" and self.field.kind == GAUSSIAN:
            return Poly.constant(self.field, self.nvars, self.field.scalar(0, 1))
        index = _variable_index(value, self.nvars)
        exponent = 1
        kind, value = self.peek()
        if kind == "op" and value == "^":
            self.take()
            kind, value = self.take()
            if kind != "num" or "/" in value:
                raise ValueError("exponent must be a nonnegative integer")
            exponent = int(value)
        exps = tuple(exponent if i == index else 0 for i in range(self.nvars))
        return Poly.monomial(self.field, exps)

    def parse_scalar_group(self):
        pieces = []
        while True:
            kind, value = self.take()
            if kind == "end":
                raise ValueError("unbalanced parenthesis in polynomial")
            if kind == "op" and value == ")":
                break
            pieces.append(value)
        return Poly.constant(
            self.field, self.nvars, self.field.parse_scalar("".join(pieces))
        )


def parse_poly(text, field, nvars=None):
    """Parse polynomial text over the given field.

    When ``nvars`` is omitted it is inferred from the variables used,
    which makes ``x^2+y^2`` two-variable; pass the arity explicitly when
    trailing variables do not appear.
    """
    if nvars is None:
        nvars = infer_nvars(text)
    return _Parser(text, field, nvars).parse()
