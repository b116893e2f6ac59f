"""Exact scalars: rationals, elements of Q(sqrt m) and Q(sqrt m1, sqrt m2),
half-integer valuations, and the literal grammar used by fixtures and the CLI.

Rationals are `fractions.Fraction`; nothing in this module ever touches a float.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .numtheory import hensel_sqrt, is_prime, legendre

__all__ = [
    "Rat",
    "HalfVal",
    "INF",
    "QuadElem",
    "BiQuadElem",
    "Field",
    "rat",
    "is_squarefree",
    "squarefree_part",
    "rational_sqrt",
    "rat_val",
    "quad_arith",
    "biquad_arith",
    "quad_conj",
    "quad_norm",
    "is_square_rational_in_quad",
    "quad_val_ramified",
    "quad_val_split",
    "PrecisionExceeded",
    "LiteralError",
    "parse_elem",
    "to_literal",
]

Rat = Fraction
Scalar = Union[Fraction, "QuadElem", "BiQuadElem"]


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational from {type(x).__name__}")


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        if n % f == 0:
            n //= f
        f += 1
    return True


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n = c**2 * s with s squarefree; returns (c, s)."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    sign = -1 if n < 0 else 1
    n = abs(n)
    c, f = 1, 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            c *= f
        f += 1
    return c, sign * n


def rational_sqrt(r: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    r = rat(r)
    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = math.isqrt(n), math.isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


# ---------------------------------------------------------------------------
# valuations


@total_ordering
class HalfVal:
    """A valuation in (1/2)Z, or +infinity.

    Stored as the doubled integer; `None` marks infinity.
    """

    __slots__ = ("doubled",)

    def __init__(self, doubled: int | None):
        if doubled is not None and not isinstance(doubled, int):
            raise TypeError("doubled must be an int or None")
        object.__setattr__(self, "doubled", doubled)

    def __setattr__(self, name, value):
        raise AttributeError("HalfVal is immutable")

    @classmethod
    def of(cls, value) -> HalfVal:
        """From an int/Fraction in (1/2)Z, or math.inf."""
        if value == math.inf:
            return INF
        d = Fraction(value) * 2
        if d.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(d))

    @property
    def is_infinite(self) -> bool:
        return self.doubled is None

    @property
    def value(self) -> Fraction | float:
        return math.inf if self.doubled is None else Fraction(self.doubled, 2)

    def __add__(self, other: HalfVal) -> HalfVal:
        if not isinstance(other, HalfVal):
            other = HalfVal.of(other)
        if self.doubled is None or other.doubled is None:
            return INF
        return HalfVal(self.doubled + other.doubled)

    __radd__ = __add__

    def _key(self):
        return (1, 0) if self.doubled is None else (0, self.doubled)

    def __eq__(self, other):
        if isinstance(other, HalfVal):
            return self.doubled == other.doubled
        if isinstance(other, (int, Fraction, float)):
            return self.value == other
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, HalfVal):
            try:
                other = HalfVal.of(other)
            except (TypeError, ValueError):
                return self.value < other
        return self._key() < other._key()

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        if self.doubled is None:
            return "HalfVal(inf)"
        return f"HalfVal({Fraction(self.doubled, 2)})"


INF = HalfVal(None)


def _vp_int(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _vp(r: Fraction, p: int) -> int:
    """Integer p-adic valuation of a nonzero rational."""
    return _vp_int(r.numerator, p) - _vp_int(r.denominator, p)


def rat_val(r, p: int) -> HalfVal:
    """p-adic valuation of a rational, in half units (always an integer)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    r = rat(r)
    if r == 0:
        return INF
    return HalfVal(2 * _vp(r, p))


# ---------------------------------------------------------------------------
# Q(sqrt m)


def _check_quad_m(m: int) -> None:
    if m in (0, 1) or not is_squarefree(m):
        raise ValueError(f"m={m} must be a squarefree integer other than 0, 1")


class QuadElem:
    """a + b*sqrt(m) with a, b rational and m squarefree."""

    __slots__ = ("m", "a", "b")

    def __init__(self, m: int, a=0, b=0, *, _checked: bool = False):
        if not _checked:
            _check_quad_m(m)
            a, b = rat(a), rat(b)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("QuadElem is immutable")

    @classmethod
    def sqrt(cls, m: int) -> QuadElem:
        return cls(m, 0, 1)

    def _new(self, a: Fraction, b: Fraction) -> QuadElem:
        return QuadElem(self.m, a, b, _checked=True)

    def _coerce(self, other) -> QuadElem | None:
        if isinstance(other, QuadElem):
            if other.m != self.m:
                raise ValueError(f"mismatched fields: sqrt({self.m}) vs sqrt({other.m})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.m, Fraction(other), Fraction(0), _checked=True)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return self._new(-self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(
            self.a * o.a + self.m * self.b * o.b, self.a * o.b + self.b * o.a
        )

    __rmul__ = __mul__

    def conj(self) -> QuadElem:
        return self._new(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.m * self.b * self.b

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.m)
        return self._new(self.a / n, -self.b / n)

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

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self._new(Fraction(1), Fraction(0)), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return (self.m, self.a, self.b) == (other.m, other.a, other.b)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.m, self.a, self.b))

    def __repr__(self):
        return f"QuadElem({self.m}, {self.a}, {self.b})"

    def __str__(self):
        return to_literal(self)


def quad_conj(x: QuadElem) -> QuadElem:
    return x.conj()


def quad_norm(x: QuadElem) -> Fraction:
    return x.norm()


_OPS = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
    "div": lambda x, y: x / y,
}


def quad_arith(x: QuadElem, y: QuadElem, op: str) -> QuadElem:
    if x.m != y.m:
        raise ValueError(f"mismatched fields: sqrt({x.m}) vs sqrt({y.m})")
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    return _OPS[op](x, y)


def is_square_rational_in_quad(r, m: int):
    """A square root of the rational r inside Q(sqrt m), or None.

    r is a square in Q(sqrt m) exactly when r or r/m is a rational square.
    """
    r = rat(r)
    if r == 0:
        raise ValueError("r must be nonzero")
    _check_quad_m(m)
    s = rational_sqrt(r)
    if s is not None:
        return QuadElem(m, s, 0)
    s = rational_sqrt(r / m)
    if s is not None:
        return QuadElem(m, 0, s)
    return None


def quad_val_ramified(x: QuadElem, p: int) -> HalfVal:
    """Valuation at the prime above p when p exactly divides m, normalized so
    that v(p) = 1 and v(sqrt m) = 1/2.

    The two terms of a + b sqrt(m) have valuations of different parity in half
    units, so the valuation is just their minimum.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if x.m % p != 0 or x.m % (p * p) == 0:
        raise ValueError(f"p={p} must divide m={x.m} exactly once")
    va = 2 * _vp(x.a, p) if x.a else None
    vb = 2 * _vp(x.b, p) + 1 if x.b else None
    if va is None and vb is None:
        return INF
    if va is None:
        return HalfVal(vb)
    if vb is None:
        return HalfVal(va)
    return HalfVal(min(va, vb))


class PrecisionExceeded(ArithmeticError):
    """Hensel precision escalation hit its cap."""


DEFAULT_MAX_PRECISION = 2**20


def quad_val_split(
    x: QuadElem,
    p: int,
    root: int | None = None,
    max_precision: int = DEFAULT_MAX_PRECISION,
) -> HalfVal:
    """Valuation of a + b sqrt(m) at the degree-one prime above p selected by
    sqrt(m) = root (mod p); the least root when `root` is None.

    Computed as v_p(a + b*s_k) for a Hensel approximation s_k of sqrt(m) mod
    p**k, raising k until the answer is below the approximation error
    v_p(b) + k.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if legendre(x.m, p) != 1:
        raise ValueError(f"m={x.m} is not a nonzero square mod {p}")
    if not x:
        return INF
    if x.b == 0:
        return HalfVal(2 * _vp(x.a, p))
    vb = _vp(x.b, p)
    k = 8
    while True:
        s = hensel_sqrt(x.m, p, k, root)
        approx = x.a + x.b * s
        if approx != 0:
            v = _vp(approx, p)
            if v < vb + k:
                return HalfVal(2 * v)
        if k >= max_precision:
            raise PrecisionExceeded(f"valuation not resolved at precision p^{k}")
        k = min(2 * k, max_precision)


# ---------------------------------------------------------------------------
# Q(sqrt m1, sqrt m2)


def _check_biquad(m1: int, m2: int) -> None:
    for m in (m1, m2):
        if m <= 1 or not is_squarefree(m):
            raise ValueError(f"m={m} must be a squarefree integer > 1")
    if m1 == m2:
        raise ValueError("m1 and m2 must be distinct")


class BiQuadElem:
    """a + b*e1 + c*e2 + d*e3 with e1 = sqrt(m1), e2 = sqrt(m2), e3 = e1*e2."""

    __slots__ = ("m1", "m2", "a", "b", "c", "d")

    def __init__(self, m1: int, m2: int, a=0, b=0, c=0, d=0, *, _checked=False):
        if not _checked:
            _check_biquad(m1, m2)
            a, b, c, d = rat(a), rat(b), rat(c), rat(d)
        for name, v in zip(self.__slots__, (m1, m2, a, b, c, d)):
            object.__setattr__(self, name, v)

    def __setattr__(self, name, value):
        raise AttributeError("BiQuadElem is immutable")

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    @property
    def field_key(self) -> tuple[int, int]:
        return (self.m1, self.m2)

    def _new(self, a, b, c, d) -> BiQuadElem:
        return BiQuadElem(self.m1, self.m2, a, b, c, d, _checked=True)

    def _coerce(self, other) -> BiQuadElem | None:
        if isinstance(other, BiQuadElem):
            if other.field_key != self.field_key:
                raise ValueError(
                    f"mismatched fields: {self.field_key} vs {other.field_key}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            z = Fraction(0)
            return self._new(Fraction(other), z, z, z)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return self._new(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m1, m2 = self.m1, self.m2
        a, b, c, d = self.coeffs
        e, f, g, h = o.coeffs
        return self._new(
            a * e + m1 * b * f + m2 * c * g + m1 * m2 * d * h,
            a * f + b * e + m2 * (c * h + d * g),
            a * g + c * e + m1 * (b * h + d * f),
            a * h + d * e + b * g + c * f,
        )

    __rmul__ = __mul__

    def conjugates(self) -> tuple[BiQuadElem, BiQuadElem, BiQuadElem]:
        """The three nontrivial Galois conjugates (flip e1, flip e2, flip both)."""
        a, b, c, d = self.coeffs
        return (
            self._new(a, -b, c, -d),
            self._new(a, b, -c, -d),
            self._new(a, -b, -c, d),
        )

    def norm(self) -> Fraction:
        s1, s2, s3 = self.conjugates()
        n = self * s1 * s2 * s3
        assert n.b == n.c == n.d == 0, "norm must be rational"
        return n.a

    def inverse(self) -> BiQuadElem:
        s1, s2, s3 = self.conjugates()
        adj = s1 * s2 * s3
        n = self * adj
        assert n.b == n.c == n.d == 0, "norm must be rational"
        if n.a == 0:
            # with m1, m2, m1*m2 all non-squares only zero has zero norm
            assert not self, "nonzero element with zero norm"
            raise ZeroDivisionError("division by zero in biquadratic field")
        return adj * (1 / n.a)

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

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self._coerce(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, BiQuadElem):
            return self.field_key == other.field_key and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.b == self.c == self.d == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == self.c == self.d == 0:
            return hash(self.a)
        return hash((self.m1, self.m2) + self.coeffs)

    def __repr__(self):
        return f"BiQuadElem({self.m1}, {self.m2}, {self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self):
        return to_literal(self)


def biquad_arith(x: BiQuadElem, y: BiQuadElem, op: str) -> BiQuadElem:
    if x.field_key != y.field_key:
        raise ValueError(f"mismatched fields: {x.field_key} vs {y.field_key}")
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    return _OPS[op](x, y)


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class Field:
    """Q, Q(sqrt m) or Q(sqrt m1, sqrt m2)."""

    kind: str  # "q" | "quad" | "biquad"
    m1: int = 0
    m2: int = 0

    def __post_init__(self):
        if self.kind == "quad":
            _check_quad_m(self.m1)
        elif self.kind == "biquad":
            _check_biquad(self.m1, self.m2)
        elif self.kind != "q":
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> Field:
        """'q', 'quad:M' or 'biquad:M1,M2'."""
        t = text.strip().lower()
        try:
            if t in ("q", "rat", "rational"):
                return cls("q")
            if t.startswith("quad:"):
                return cls("quad", int(t[5:]))
            if t.startswith("biquad:"):
                m1, m2 = (int(s) for s in t[7:].split(","))
                return cls("biquad", m1, m2)
        except ValueError as exc:
            raise ValueError(f"bad field descriptor {text!r}: {exc}") from None
        raise ValueError(f"bad field descriptor {text!r}; expected q | quad:M | biquad:M1,M2")

    @classmethod
    def of(cls, x) -> Field:
        if isinstance(x, QuadElem):
            return cls("quad", x.m)
        if isinstance(x, BiQuadElem):
            return cls("biquad", x.m1, x.m2)
        if isinstance(x, (int, Fraction)):
            return cls("q")
        raise TypeError(f"not an exact scalar: {type(x).__name__}")

    def __str__(self):
        if self.kind == "q":
            return "q"
        if self.kind == "quad":
            return f"quad:{self.m1}"
        return f"biquad:{self.m1},{self.m2}"

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def sqrt(self, n: int):
        """sqrt(n) as an element of this field (n a signed integer)."""
        if n == 0:
            return self.zero()
        c, s = squarefree_part(n)
        if s == 1:
            return self.coerce(c)
        if self.kind == "quad" and s == self.m1:
            return QuadElem(s, 0, c)
        if self.kind == "biquad":
            m1, m2 = self.m1, self.m2
            if s == m1:
                return BiQuadElem(m1, m2, 0, c, 0, 0)
            if s == m2:
                return BiQuadElem(m1, m2, 0, 0, c, 0)
            c3, s3 = squarefree_part(m1 * m2)
            if s == s3:
                return BiQuadElem(m1, m2, 0, 0, 0, Fraction(c, c3))
        raise ValueError(f"sqrt({n}) is not in {self}")

    def coerce(self, x):
        if self.kind == "q":
            if isinstance(x, (int, Fraction)):
                return rat(x)
            if isinstance(x, QuadElem) and x.b == 0:
                return x.a
            if isinstance(x, BiQuadElem) and x.b == x.c == x.d == 0:
                return x.a
        elif self.kind == "quad":
            if isinstance(x, (int, Fraction)):
                return QuadElem(self.m1, x, 0)
            if isinstance(x, QuadElem) and x.m == self.m1:
                return x
        else:
            if isinstance(x, (int, Fraction)):
                return BiQuadElem(self.m1, self.m2, x)
            if isinstance(x, BiQuadElem) and x.field_key == (self.m1, self.m2):
                return x
            if isinstance(x, QuadElem):
                return self.sqrt(x.m) * x.b + x.a
        raise ValueError(f"{x!r} is not an element of {self}")


# ---------------------------------------------------------------------------
# literal grammar

GRAMMAR = (
    'ELEM := [sign] TERM (("+"|"-") TERM)*; TERM := RAT | RAT "*" "sqrt(" INT ")" '
    '| "sqrt(" INT ")"; RAT := INT | INT "/" POSINT'
)


class LiteralError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text, self.pos, self.expected = text, pos, expected
        super().__init__(
            f"malformed exact literal {text!r} at position {pos}: expected {expected}"
            f" (grammar: {GRAMMAR})"
        )


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<op>[-+*/()])|(?P<sqrt>sqrt))")


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise LiteralError(text, pos, "integer, sign, '/', '*' or 'sqrt('")
        start = mt.start(mt.lastgroup)
        out.append((mt.lastgroup, mt.group(mt.lastgroup), start))
        pos = mt.end()
    out.append(("end", "", len(text)))
    return out


def _parse_terms(text: str) -> list[tuple[Fraction, int]]:
    """List of (coefficient, radicand); radicand 1 for the rational part."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind, value=None, expected=""):
        nonlocal i
        k, v, pos = toks[i]
        if k != kind or (value is not None and v != value):
            raise LiteralError(text, pos, expected or repr(value or kind))
        i += 1
        return v

    def radical():
        take("sqrt", expected="'sqrt('")
        take("op", "(", "'(' after sqrt")
        neg = False
        if peek()[0] == "op" and peek()[1] == "-":
            take("op", "-")
            neg = True
        n = int(take("int", expected="integer radicand"))
        take("op", ")", "')'")
        return -n if neg else n

    terms = []
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take("op") == "-" else 1
    while True:
        if peek()[0] == "sqrt":
            terms.append((Fraction(sign), radical()))
        else:
            num = int(take("int", expected="integer or 'sqrt('"))
            den = 1
            if peek()[0] == "op" and peek()[1] == "/":
                take("op", "/")
                pos = peek()[2]
                den = int(take("int", expected="positive denominator"))
                if den == 0:
                    raise LiteralError(text, pos, "positive denominator")
            coeff = Fraction(sign * num, den)
            if peek()[0] == "op" and peek()[1] == "*":
                take("op", "*")
                terms.append((coeff, radical()))
            else:
                terms.append((coeff, 1))
        k, v, pos = peek()
        if k == "end":
            break
        if k == "op" and v in "+-":
            take("op")
            sign = -1 if v == "-" else 1
            continue
        raise LiteralError(text, pos, "'+', '-' or end of input")
    return terms


def _infer_field(radicands: set[int]) -> Field:
    parts = sorted({squarefree_part(n)[1] for n in radicands if n != 0} - {1})
    if not parts:
        return Field("q")
    if len(parts) == 1:
        return Field("quad", parts[0])
    pos = [s for s in parts if s > 1]
    if len(pos) == len(parts):
        # choose generators m1 < m2 with the third radicand their product class
        for i, m1 in enumerate(parts):
            for m2 in parts[i + 1 :]:
                prod = squarefree_part(m1 * m2)[1]
                if set(parts) <= {m1, m2, prod}:
                    return Field("biquad", m1, m2)
    raise ValueError(f"radicands {sorted(radicands)} do not lie in a supported field")


def parse_elem(text: str, field: Field | None = None):
    """Parse an exact literal such as '-5/2-1/2*sqrt(3)+1/2*sqrt(11)+1/2*sqrt(33)'.

    Without `field` the smallest supported field containing the literal is
    used (Q, then Q(sqrt m), then Q(sqrt m1, sqrt m2)).
    """
    terms = _parse_terms(text)
    if field is None:
        field = _infer_field({n for _, n in terms})
    total = field.zero()
    for coeff, n in terms:
        total = total + field.sqrt(n) * coeff
    return total


def _fmt_rat(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def to_literal(x) -> str:
    """Canonical literal for an exact scalar; round-trips through parse_elem."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return _fmt_rat(x)
    if isinstance(x, QuadElem):
        parts = [(x.a, None), (x.b, x.m)]
    elif isinstance(x, BiQuadElem):
        parts = [(x.a, None), (x.b, x.m1), (x.c, x.m2), (x.d, x.m1 * x.m2)]
    else:
        raise TypeError(f"not an exact scalar: {type(x).__name__}")
    out = _fmt_rat(parts[0][0])
    for coeff, n in parts[1:]:
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        out += f"{sign}{_fmt_rat(abs(coeff))}*sqrt({n})"
    return out
