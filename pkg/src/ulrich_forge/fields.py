"""Exact scalar arithmetic over the supported coefficient fields.

Four fields are available: the rationals ``q``, the Gaussian rationals
``qi``, a prime field ``fp:p`` for an odd prime p, and its quadratic
extension ``fp2:p`` obtained by adjoining a square root of the smallest
quadratic nonresidue.  Characteristic 2 is rejected everywhere; the
quadratic-form machinery divides by 2 freely.

Square roots are canonical and deterministic: the nonnegative root over
the rationals, the residue in [1, (p-1)/2] over a prime field, and a
fixed lexicographic choice in the extension field.  When an element has
no square root in its own field, ``sqrt_in_field`` raises
``ExtensionNeeded`` carrying the offending element.
"""

from __future__ import annotations

import re
from fractions import Fraction

RATIONAL = "q"
GAUSSIAN = "qi"
PRIME = "fp"
PRIME_QUADRATIC = "fp2"

_KINDS = (RATIONAL, GAUSSIAN, PRIME, PRIME_QUADRATIC)


class ExtensionNeeded(Exception):
    """Signals that a square root requires a field extension.

    ``element`` is the scalar whose root would have to be adjoined.
    """

    def __init__(self, element):
        self.element = element
        super().__init__(f"no square root of {element} in {element.field}")


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def legendre(a, p):
    """Legendre symbol of a mod p: 1, -1 or 0."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def smallest_nonresidue(p):
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def sqrt_mod_p(a, p):
    """Canonical square root of a mod p, or None if a is a nonresidue.

    Tonelli-Shanks, deterministic because the auxiliary nonresidue is
    the smallest one.  The returned root lies in [0, (p-1)/2].
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # write p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = pow(smallest_nonresidue(p), q, p)
    m, c, t, r = s, z, pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def _fraction_sqrt(x):
    """Nonnegative rational square root of a Fraction, or None."""
    if x < 0:
        return None
    from math import isqrt

    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


class FieldSpec:
    """Identifies a coefficient field and owns scalar construction.

    Instances compare by (kind, p, nu).  ``nu`` is the nonresidue whose
    root generates the quadratic extension (None outside ``fp2``).
    """

    __slots__ = ("kind", "p", "nu")

    def __init__(self, kind, p=0, nu=None):
        if kind not in _KINDS:
            raise ValueError(f"unknown field kind {kind!r}")
        if kind in (PRIME, PRIME_QUADRATIC):
            if p == 2:
                raise ValueError("characteristic 2 is not supported")
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            if kind == PRIME_QUADRATIC:
                if nu is None:
                    nu = smallest_nonresidue(p)
                elif legendre(nu, p) != -1:
                    raise ValueError(f"{nu} is a square mod {p}")
            else:
                nu = None
        else:
            p, nu = 0, None
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "nu", nu)

    def __setattr__(self, *_):
        raise AttributeError("FieldSpec is immutable")

    @classmethod
    def rationals(cls):
        return cls(RATIONAL)

    @classmethod
    def gaussian_rationals(cls):
        return cls(GAUSSIAN)

    @classmethod
    def prime(cls, p):
        return cls(PRIME, p)

    @classmethod
    def quadratic(cls, p, nu=None):
        return cls(PRIME_QUADRATIC, p, nu)

    @classmethod
    def parse(cls, text):
        """Parse a field string: q, qi, fp:<p> or fp2:<p>."""
        text = text.strip()
        if text == "q":
            return cls.rationals()
        if text == "qi":
            return cls.gaussian_rationals()
        m = re.fullmatch(r"(fp2?):(\d+)", text)
        if not m:
            raise ValueError(f"cannot parse field {text!r}")
        p = int(m.group(2))
        return cls.prime(p) if m.group(1) == "fp" else cls.quadratic(p)

    @property
    def characteristic(self):
        return self.p

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.kind == other.kind
            and self.p == other.p
            and self.nu == other.nu
        )

    def __hash__(self):
        return hash((self.kind, self.p, self.nu))

    def __str__(self):
        if self.kind in (PRIME, PRIME_QUADRATIC):
            return f"{self.kind}:{self.p}"
        return self.kind

    def __repr__(self):
        return f"FieldSpec({self})"

    # -- scalar construction -------------------------------------------

    def scalar(self, a, b=0):
        return Scalar(self, a, b)

    @property
    def zero(self):
        return Scalar(self, 0)

    @property
    def one(self):
        return Scalar(self, 1)

    def from_int(self, n):
        return Scalar(self, n)

    def imaginary_unit(self):
        """sqrt(-1) when the field contains one, else ExtensionNeeded."""
        return sqrt_in_field(-self.one)

    def extension(self):
        """The field in which missing square roots are adjoined."""
        if self.kind == RATIONAL:
            return FieldSpec.gaussian_rationals()
        if self.kind == PRIME:
            return FieldSpec.quadratic(self.p)
        return self

    def embed(self, s):
        """Re-express a scalar from this field or its base in this field."""
        if s.field == self:
            return s
        ok = (self.kind == GAUSSIAN and s.field.kind == RATIONAL) or (
            self.kind == PRIME_QUADRATIC
            and s.field.kind == PRIME
            and s.field.p == self.p
        )
        if not ok:
            raise ValueError(f"cannot embed {s.field} into {self}")
        return Scalar(self, s.a, 0)

    def random_scalar(self, rng, span=9):
        if self.kind == RATIONAL:
            return Scalar(self, Fraction(rng.randint(-span, span), rng.randint(1, span)))
        if self.kind == GAUSSIAN:
            return Scalar(
                self,
                Fraction(rng.randint(-span, span), rng.randint(1, span)),
                Fraction(rng.randint(-span, span), rng.randint(1, span)),
            )
        if self.kind == PRIME:
            return Scalar(self, rng.randrange(self.p))
        return Scalar(self, rng.randrange(self.p), rng.randrange(self.p))

    def random_nonzero_scalar(self, rng, span=9):
        while True:
            s = self.random_scalar(rng, span)
            if s:
                return s

    # -- scalar text ----------------------------------------------------

    def parse_scalar(self, text):
        """Parse a scalar literal such as 3/4, 3/4+1/2i, 7 or 7+2w."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty scalar literal")
        unit = "i" if self.kind in (RATIONAL, GAUSSIAN) else "w"
        num = r"[+-]?\d+(?:/\d+)?"
        part = rf"[+-]?(?:\d+(?:/\d+)?)?{unit}"
        if re.fullmatch(num, text):
            return Scalar(self, self._component(text))
        if self.kind in (GAUSSIAN, PRIME_QUADRATIC):
            if re.fullmatch(part, text):
                return Scalar(self, 0, self._imag_component(text[:-1]))
            m = re.fullmatch(rf"({num})({part})", text)
            if m:
                real = self._component(m.group(1))
                imag = self._imag_component(m.group(2)[:-1])
                return Scalar(self, real, imag)
        raise ValueError(f"cannot parse scalar {text!r} over {self}")

    def _imag_component(self, text):
        if text in ("", "+"):
            return 1
        if text == "-":
            return -1
        return self._component(text)

    def _component(self, text):
        if self.kind in (RATIONAL, GAUSSIAN):
            return Fraction(text)
        if "/" in text:
            n, d = text.split("/")
            return int(n) * pow(int(d), self.p - 2, self.p) % self.p
        return int(text) % self.p


class Scalar:
    """A field element in canonical form.

    Components: over q the value is ``a`` (Fraction); over qi it is
    ``a + b*i``; over fp it is the residue ``a``; over fp2 it is
    ``a + b*w`` with w*w = nu.  Arithmetic is exact and closed.
    """

    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b=0):
        kind = field.kind
        if kind in (RATIONAL, GAUSSIAN):
            a = Fraction(a)
            b = Fraction(b)
            if kind == RATIONAL and b:
                raise ValueError("rational scalar with imaginary part")
        else:
            p = field.p
            a = int(a) % p
            b = int(b) % p
            if kind == PRIME and b:
                raise ValueError("prime-field scalar with extension part")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, *_):
        raise AttributeError("Scalar is immutable")

    # -- helpers --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, int) or (
            isinstance(other, Fraction) and self.field.kind in (RATIONAL, GAUSSIAN)
        ):
            return Scalar(self.field, other)
        return None

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @property
    def is_zero(self):
        return not self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            coerced = self._coerce(other)
            if coerced is None:
                return NotImplemented
            return self.a == coerced.a and self.b == coerced.b
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.kind in (RATIONAL, GAUSSIAN):
            return Scalar(f, self.a + o.a, self.b + o.b)
        return Scalar(f, (self.a + o.a) % f.p, (self.b + o.b) % f.p)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind in (RATIONAL, GAUSSIAN):
            return Scalar(f, -self.a, -self.b)
        return Scalar(f, (-self.a) % f.p, (-self.b) % f.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        kind = f.kind
        if kind == RATIONAL:
            return Scalar(f, self.a * o.a)
        if kind == GAUSSIAN:
            return Scalar(f, self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a)
        if kind == PRIME:
            return Scalar(f, self.a * o.a % f.p)
        p = f.p
        return Scalar(
            f,
            (self.a * o.a + f.nu * self.b * o.b) % p,
            (self.a * o.b + self.b * o.a) % p,
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("scalar inverse of zero")
        f = self.field
        kind = f.kind
        if kind == RATIONAL:
            return Scalar(f, 1 / self.a)
        if kind == GAUSSIAN:
            n = self.a * self.a + self.b * self.b
            return Scalar(f, self.a / n, -self.b / n)
        if kind == PRIME:
            return Scalar(f, pow(self.a, f.p - 2, f.p))
        p = f.p
        n = (self.a * self.a - f.nu * self.b * self.b) % p
        ninv = pow(n, p - 2, p)
        return Scalar(f, self.a * ninv % p, -self.b * ninv % p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- text -----------------------------------------------------------

    def _component_str(self, value):
        return str(value)

    def __str__(self):
        kind = self.field.kind
        if kind in (RATIONAL, PRIME):
            return str(self.a)
        unit = "i" if kind == GAUSSIAN else "w"
        if not self.b:
            return str(self.a)
        if self.b == 1:
            imag = unit
        elif kind == GAUSSIAN and self.b == -1:
            imag = f"-{unit}"
        else:
            imag = f"{self.b}{unit}"
        if not self.a:
            return imag
        if kind == GAUSSIAN and self.b < 0:
            return f"{self.a}-{str(-self.b) if self.b != -1 else ''}{unit}"
        return f"{self.a}+{imag}"

    def __repr__(self):
        return f"Scalar({self} over {self.field})"


def sqrt_in_field(s):
    """Canonical square root of a scalar within its own field.

    Raises ExtensionNeeded when no root exists; the exception carries
    the element so callers can decide which extension to move to.
    """
    f = s.field
    kind = f.kind
    if not s:
        return f.zero
    if kind == RATIONAL:
        r = _fraction_sqrt(s.a)
        if r is None:
            raise ExtensionNeeded(s)
        return Scalar(f, r)
    if kind == GAUSSIAN:
        return _sqrt_gaussian(s)
    if kind == PRIME:
        r = sqrt_mod_p(s.a, f.p)
        if r is None:
            raise ExtensionNeeded(s)
        return Scalar(f, r)
    return _sqrt_quadratic(s)


def _sqrt_gaussian(s):
    f = s.field
    a, b = s.a, s.b
    if not b:
        r = _fraction_sqrt(a if a > 0 else -a)
        if r is None:
            raise ExtensionNeeded(s)
        root = Scalar(f, r) if a > 0 else Scalar(f, 0, r)
    else:
        norm_root = _fraction_sqrt(a * a + b * b)
        if norm_root is None:
            raise ExtensionNeeded(s)
        x = _fraction_sqrt((a + norm_root) / 2)
        if x is None or not x:
            raise ExtensionNeeded(s)
        root = Scalar(f, x, b / (2 * x))
    if root.a < 0 or (not root.a and root.b < 0):
        root = -root
    return root


def _sqrt_quadratic(s):
    f = s.field
    p, nu = f.p, f.nu
    a, b = s.a, s.b
    if not b:
        r = sqrt_mod_p(a, p)
        if r is not None:
            root = Scalar(f, r)
        else:
            # a = nu * t^2 for a nonresidue a, so the root is t*w
            t = sqrt_mod_p(a * pow(nu, p - 2, p) % p, p)
            root = Scalar(f, 0, t)
    else:
        norm = (a * a - nu * b * b) % p
        srn = sqrt_mod_p(norm, p)
        if srn is None:
            raise ExtensionNeeded(s)
        half = pow(2, p - 2, p)
        c2 = (a + srn) * half % p
        c = sqrt_mod_p(c2, p)
        if c is None or c == 0:
            c2 = (a - srn) * half % p
            c = sqrt_mod_p(c2, p)
        if c is None or c == 0:
            raise ExtensionNeeded(s)
        d = b * half % p * pow(c, p - 2, p) % p
        root = Scalar(f, c, d)
    neg = -root
    return root if (root.a, root.b) <= (neg.a, neg.b) else neg


def is_square(s):
    try:
        sqrt_in_field(s)
        return True
    except ExtensionNeeded:
        return False
