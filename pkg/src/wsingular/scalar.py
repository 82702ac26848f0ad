"""
Exact coefficients for the whole package.

Every coefficient lives in the field Q(t)[a] / (a^2 t - 1), i.e. rational
functions in the Jack parameter t with one square root a = 1/sqrt(t)
adjoined.  The distinguished constants are

    alpha_+ = a,    alpha_- = -t a,    alpha_0 = alpha_+ + alpha_- = (1 - t) a.

``Scalar`` is the symbolic field element.  ``PointField`` fixes t to a
positive rational t0 and gives the quadratic number field Q(sqrt(1/t0));
its elements are ``PointScalar``.  Both kinds expose the same arithmetic,
so the Fock-space machinery runs unchanged over either.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from numbers import Rational

import mpmath
from flint import fmpq, fmpq_poly

__all__ = [
    "RationalFunction",
    "Scalar",
    "PointScalar",
    "SymbolicField",
    "PointField",
    "SYMBOLIC",
    "specialize",
    "parse_scalar",
    "parse_expression",
    "rational_sqrt",
]


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


def _to_fraction(x: fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def _as_poly(x) -> fmpq_poly:
    if isinstance(x, fmpq_poly):
        return x
    if isinstance(x, (list, tuple)):
        return fmpq_poly([_to_fmpq(c) for c in x])
    return fmpq_poly([_to_fmpq(x)])


_P0 = fmpq_poly(0)
_P1 = fmpq_poly(1)
_PT = fmpq_poly([0, 1])


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _poly_str(p: fmpq_poly, var: str = "t") -> str:
    coeffs = [_to_fraction(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if k == 0:
            body = str(c)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if c == 1 else f"{c}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def _poly_is_monomial(p: fmpq_poly) -> bool:
    return sum(1 for c in p.coeffs() if c != 0) == 1


class RationalFunction:
    """
    A univariate rational function num(t)/den(t) over Q in canonical form:
    den monic, gcd(num, den) = 1, zero stored as 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den == 0:
            raise ZeroDivisionError("rational function with zero denominator")
        if num == 0:
            self.num, self.den = _P0, _P1
            return
        if den.degree() > 0:
            g = num.gcd(den)
            if g != 1:
                num = num // g
                den = den // g
        lc = den[den.degree()]
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: fmpq_poly, den: fmpq_poly) -> RationalFunction:
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def t(cls) -> RationalFunction:
        return cls._raw(_PT, _P1)

    def is_zero(self) -> bool:
        return self.num == 0

    def is_polynomial(self) -> bool:
        return self.den == 1

    def constant_value(self) -> Fraction | None:
        if self.den == 1 and self.num.degree() <= 0:
            return _to_fraction(self.num[0])
        return None

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        if self.den == other.den:
            n = self.num + other.num
            if self.den == 1:
                return RationalFunction._raw(n, _P1)
            return RationalFunction(n, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        if self.num == 0 or other.num == 0:
            return RationalFunction._raw(_P0, _P1)
        if self.den == 1 and other.den == 1:
            return RationalFunction._raw(self.num * other.num, _P1)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d2 != 1:
            g = n1.gcd(d2)
            if g != 1:
                n1, d2 = n1 // g, d2 // g
        if d1 != 1:
            g = n2.gcd(d1)
            if g != 1:
                n2, d1 = n2 // g, d1 // g
        return RationalFunction._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.num == 0:
            raise ZeroDivisionError("rational function division by zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._raw(self.num**k, self.den**k)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Rational, fmpq)):
                other = RationalFunction(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __call__(self, t0) -> Fraction:
        t0 = _to_fmpq(t0)
        d = self.den(t0)
        if d == 0:
            raise ValueError("pole at specialization point")
        return _to_fraction(self.num(t0) / d)

    def reciprocal_argument(self) -> RationalFunction:
        """Return f(1/t)."""
        n = [c for c in self.num.coeffs()]
        d = [c for c in self.den.coeffs()]
        if not n:
            return self
        dn, dd = len(n) - 1, len(d) - 1
        # f(1/t) = t^(dd-dn) rev(n) / rev(d)
        shift = dd - dn
        num = fmpq_poly(list(reversed(n)))
        den = fmpq_poly(list(reversed(d)))
        if shift > 0:
            num = num * _PT**shift
        elif shift < 0:
            den = den * _PT ** (-shift)
        return RationalFunction(num, den)

    def __str__(self):
        if self.den == 1:
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"RationalFunction({self})"

    def latex(self, var: str = "t") -> str:
        num = _poly_str(self.num, var).replace("*", " ")
        num = re.sub(r"(\d+)/(\d+)", r"\\tfrac{\1}{\2}", num)
        if self.den == 1:
            return num
        den = _poly_str(self.den, var).replace("*", " ")
        den = re.sub(r"(\d+)/(\d+)", r"\\tfrac{\1}{\2}", den)
        return f"\\frac{{{num}}}{{{den}}}"

    def __reduce__(self):
        return (_rf_from_strings, (self._coeff_strings(self.num), self._coeff_strings(self.den)))

    @staticmethod
    def _coeff_strings(p):
        return tuple(str(c) for c in p.coeffs())


def _rf_from_strings(num, den):
    return RationalFunction(
        fmpq_poly([_to_fmpq(Fraction(c)) for c in num]) if num else _P0,
        fmpq_poly([_to_fmpq(Fraction(c)) for c in den]),
    )


_RF0 = RationalFunction()
_RF1 = RationalFunction(1)
_RFT = RationalFunction.t()
_RF_INV_T = RationalFunction(1, _PT)


def _rf(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


class Scalar:
    """The element a(t) + b(t)*alpha, with alpha^2 = 1/t."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _rf(a)
        self.b = _rf(b)

    @classmethod
    def _raw(cls, a: RationalFunction, b: RationalFunction) -> Scalar:
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        return obj

    @property
    def field(self) -> SymbolicField:
        return SYMBOLIC

    def is_zero(self) -> bool:
        return self.a.num == 0 and self.b.num == 0

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other) -> Scalar | None:
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Rational, fmpq, RationalFunction)):
            return Scalar._raw(_rf(other), _RF0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.a + o.a, self.b + o.b if o.b.num != 0 else self.b)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b)

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
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        if b1.num == 0 and b2.num == 0:
            return Scalar._raw(a1 * a2, _RF0)
        if b1.num == 0:
            return Scalar._raw(a1 * a2, a1 * b2)
        if b2.num == 0:
            return Scalar._raw(a1 * a2, b1 * a2)
        return Scalar._raw(a1 * a2 + b1 * b2 * _RF_INV_T, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if self.b.num == 0:
            return Scalar._raw(self.a.inverse(), _RF0)
        norm = self.a * self.a - self.b * self.b * _RF_INV_T
        inv = norm.inverse()
        return Scalar._raw(self.a * inv, -(self.b * inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar._raw(_RF1, _RF0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b.num == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def swap_alphas(self) -> Scalar:
        """Apply the field involution alpha_+ <-> alpha_-, i.e. a -> -t a, t -> 1/t."""
        a = self.a.reciprocal_argument()
        b = self.b.reciprocal_argument()
        return Scalar._raw(a, -(b * _RFT))

    def common_denominator(self) -> fmpq_poly:
        d1, d2 = self.a.den, self.b.den
        if d1 == d2:
            return d1
        g = d1.gcd(d2)
        return (d1 * d2) // g

    def __str__(self):
        if self.b.num == 0:
            return str(self.a)
        b = str(self.b)
        if self.b.den == 1 and not _poly_is_monomial(self.b.num):
            b = f"({b})"
        bpart = "a" if b == "1" else ("-a" if b == "-1" else f"{b}*a")
        if self.a.num == 0:
            return bpart
        a = str(self.a)
        if bpart.startswith("-"):
            return f"{a} - {bpart[1:]}"
        return f"{a} + {bpart}"

    def __repr__(self):
        return f"Scalar({self})"

    def latex(self) -> str:
        if self.b.num == 0:
            return self.a.latex()
        b = self.b.latex()
        if self.b.den == 1 and not _poly_is_monomial(self.b.num):
            b = f"\\left({b}\\right)"
        bpart = "\\alpha_+" if b == "1" else ("-\\alpha_+" if b == "-1" else f"{b}\\,\\alpha_+")
        if self.a.num == 0:
            return bpart
        if bpart.startswith("-"):
            return f"{self.a.latex()} {bpart}"
        return f"{self.a.latex()} + {bpart}"

    def __reduce__(self):
        return (Scalar, (self.a, self.b))


def specialize(x, t0, alpha_sign: int = 1, precision: int = 53):
    """
    Evaluate a Scalar at t = t0 with alpha = alpha_sign * sqrt(1/t0).

    Returns a Fraction whenever the value is rational (b(t0) = 0 or 1/t0 is a
    rational square), otherwise an mpmath real carrying ``precision`` bits.
    """
    t0 = Fraction(t0)
    if t0 <= 0:
        raise ValueError("parameter outside C\u2216Q_{\u22640}")
    if alpha_sign not in (1, -1):
        raise ValueError("alpha_sign must be +1 or -1")
    if isinstance(x, PointScalar):
        if x.field.t0 != t0:
            raise ValueError("point scalar specialized at a different t")
        a, b = x.a, x.b
    else:
        if not isinstance(x, Scalar):
            x = Scalar(x)
        a, b = x.a(t0), x.b(t0)
    if b == 0:
        return a
    root = rational_sqrt(1 / t0)
    if root is not None:
        return a + b * alpha_sign * root
    with mpmath.workprec(precision):
        s = mpmath.sqrt(mpmath.mpf(t0.denominator) / t0.numerator)
        return mpmath.mpf(a.numerator) / a.denominator + (mpmath.mpf(b.numerator) / b.denominator) * alpha_sign * s


class SymbolicField:
    """Generic t: elements are Scalars."""

    element = Scalar
    t0 = None

    @property
    def zero(self) -> Scalar:
        return Scalar._raw(_RF0, _RF0)

    @property
    def one(self) -> Scalar:
        return Scalar._raw(_RF1, _RF0)

    @property
    def t(self) -> Scalar:
        return Scalar._raw(_RFT, _RF0)

    @property
    def alpha(self) -> Scalar:
        return Scalar._raw(_RF0, _RF1)

    @property
    def alpha_plus(self) -> Scalar:
        return self.alpha

    @property
    def alpha_minus(self) -> Scalar:
        return Scalar._raw(_RF0, -_RFT)

    @property
    def alpha0(self) -> Scalar:
        return self.alpha_plus + self.alpha_minus

    def coerce(self, x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, PointScalar):
            raise TypeError("cannot lift a specialized scalar back to generic t")
        return Scalar(x)

    def __eq__(self, other):
        return isinstance(other, SymbolicField)

    def __hash__(self):
        return hash("symbolic")

    def __repr__(self):
        return "SymbolicField()"

    def __str__(self):
        return "symbolic"


SYMBOLIC = SymbolicField()


class PointField:
    """
    The coefficient field at a fixed t0 in Q_{>0}: Q(alpha) with alpha^2 = 1/t0.

    When 1/t0 is a rational square the field collapses to Q and alpha is
    replaced by alpha_sign * sqrt(1/t0).
    """

    def __init__(self, t0, alpha_sign: int = 1):
        t0 = Fraction(t0)
        if t0 <= 0:
            raise ValueError("parameter outside C\u2216Q_{\u22640}")
        if alpha_sign not in (1, -1):
            raise ValueError("alpha_sign must be +1 or -1")
        self.t0 = t0
        self.inv_t0 = 1 / t0
        root = rational_sqrt(self.inv_t0)
        self.root = None if root is None else alpha_sign * root
        self.alpha_sign = alpha_sign

    def make(self, a, b=0) -> PointScalar:
        a, b = Fraction(a), Fraction(b)
        if self.root is not None and b:
            a, b = a + b * self.root, Fraction(0)
        return PointScalar(a, b, self)

    @property
    def zero(self):
        return self.make(0)

    @property
    def one(self):
        return self.make(1)

    @property
    def t(self):
        return self.make(self.t0)

    @property
    def alpha(self):
        return self.make(0, 1)

    @property
    def alpha_plus(self):
        return self.alpha

    @property
    def alpha_minus(self):
        return self.make(0, -self.t0)

    @property
    def alpha0(self):
        return self.alpha_plus + self.alpha_minus

    def coerce(self, x) -> PointScalar:
        if isinstance(x, PointScalar):
            if x.field != self:
                raise ValueError("scalar belongs to a different specialization")
            return x
        if isinstance(x, Scalar):
            return self.make(x.a(self.t0), x.b(self.t0))
        return self.make(x)

    def __eq__(self, other):
        return isinstance(other, PointField) and self.t0 == other.t0 and self.root == other.root

    def __hash__(self):
        return hash(("point", self.t0, self.root))

    def __repr__(self):
        return f"PointField({self.t0}, alpha_sign={self.alpha_sign})"

    def __str__(self):
        return str(self.t0)


class PointScalar:
    """a + b*alpha with a, b rational and alpha^2 = 1/t0 fixed by the field."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field: PointField):
        self.a = a
        self.b = b
        self.field = field

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, PointScalar):
            return other
        if isinstance(other, (int, Rational)):
            return PointScalar(Fraction(other), Fraction(0), self.field)
        if isinstance(other, Scalar):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PointScalar(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return PointScalar(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PointScalar(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        if not b1 and not b2:
            return PointScalar(a1 * a2, b1, self.field)
        return PointScalar(a1 * a2 + b1 * b2 * self.field.inv_t0, a1 * b2 + a2 * b1, self.field)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        norm = self.a * self.a - self.b * self.b * self.field.inv_t0
        return PointScalar(self.a / norm, -self.b / norm, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __str__(self):
        if not self.b:
            return str(self.a)
        bpart = "a" if self.b == 1 else ("-a" if self.b == -1 else f"{self.b}*a")
        if not self.a:
            return bpart
        if bpart.startswith("-"):
            return f"{self.a} - {bpart[1:]}"
        return f"{self.a} + {bpart}"

    def __repr__(self):
        return f"PointScalar({self}; t={self.field.t0})"

    def surd(self) -> tuple[Fraction, Fraction, int]:
        """Write the value as p + q*sqrt(m) with m squarefree (alpha_sign applied)."""
        if not self.b:
            return self.a, Fraction(0), 1
        inv = self.field.inv_t0
        num, den = inv.numerator, inv.denominator
        radicand = num * den
        outside = Fraction(1, den)
        k = 2
        while k * k <= radicand:
            while radicand % (k * k) == 0:
                radicand //= k * k
                outside *= k
            k += 1
        return self.a, self.b * self.field.alpha_sign * outside, radicand

    def latex(self) -> str:
        p, q, m = self.surd()
        parts = []
        if p:
            parts.append(_latex_fraction(p))
        if q:
            mag = abs(q)
            if mag.denominator == 1:
                body = ("" if mag == 1 else str(mag.numerator)) + f"\\sqrt{{{m}}}"
            else:
                top = ("" if mag.numerator == 1 else str(mag.numerator)) + f"\\sqrt{{{m}}}"
                body = f"\\frac{{{top}}}{{{mag.denominator}}}"
            if parts:
                parts.append(("- " if q < 0 else "+ ") + body)
            else:
                parts.append(("-" if q < 0 else "") + body)
        return " ".join(parts) if parts else "0"

    def real(self, precision: int = 53):
        return specialize(self, self.field.t0, self.field.alpha_sign, precision)


def _latex_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            out.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text, names, bracket_atoms):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = names
        self.bracket_atoms = bracket_atoms
        self.text = text

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise ValueError(f"cannot parse {self.text!r}: unexpected {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        self.take("end")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            k = self.take("num")[1]
            base = base ** (-k if neg else k)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Scalar(val)
        if kind == "name":
            self.take()
            if val in self.bracket_atoms:
                self.take("op", "[")
                ints = []
                if self.peek() != ("op", "]"):
                    while True:
                        neg = False
                        if self.peek() == ("op", "-"):
                            self.take()
                            neg = True
                        n = self.take("num")[1]
                        ints.append(-n if neg else n)
                        if self.peek() == ("op", ","):
                            self.take()
                            continue
                        break
                self.take("op", "]")
                return self.bracket_atoms[val](ints)
            if val in self.names:
                return self.names[val]
            raise ValueError(f"cannot parse {self.text!r}: unknown symbol {val!r}")
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ValueError(f"cannot parse {self.text!r}: unexpected {val!r}")


def parse_expression(text: str, bracket_atoms=None):
    """Parse an arithmetic expression over t, a and optional bracketed atoms like p[2,1]."""
    names = {"t": SYMBOLIC.t, "a": SYMBOLIC.alpha}
    return _Parser(text, names, bracket_atoms or {}).parse()


def parse_scalar(text: str) -> Scalar:
    """Inverse of ``str(Scalar)``."""
    val = parse_expression(text)
    if not isinstance(val, Scalar):
        raise ValueError(f"not a scalar: {text!r}")
    return val
