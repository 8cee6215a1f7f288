"""Exact scalars: Gaussian rationals and formal exponential sums.

``GaussRat`` is the field Q(i).  ``ExpScalar`` is the group ring of the
additive group Q(i) over Q(i): finite sums ``q0 + q1*E(mu1) + ...`` where the
symbols ``E(mu)`` multiply by adding exponents.  Nothing is ever evaluated
numerically, so equality of two scalars is plain structural equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import NotAUnit, ParseError

__all__ = ["GaussRat", "ExpScalar", "E", "ZERO", "ONE", "I", "scalar_add",
           "scalar_mul", "scalar_invert"]


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make a rational from {x!r}")


def _render_frac(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussRat:
    """A Gaussian rational ``re + im*i``; immutable, hashable, totally ordered
    by ``(re, im)`` for canonical sorting (the order is not a field order)."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)
        self._hash = None

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact; use GaussRat")
        return cls._raw(_frac(x), Fraction(0))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, (int, Fraction)):
                return GaussRat._raw(self.re + other, self.im)
            return NotImplemented
        return GaussRat._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat._raw(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, (int, Fraction)):
                return GaussRat._raw(self.re - other, self.im)
            return NotImplemented
        return GaussRat._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, (int, Fraction)):
                return GaussRat._raw(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat._raw(a * c, b)
        return GaussRat._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, (int, Fraction)):
                if not other:
                    raise ZeroDivisionError("GaussRat division by zero")
                return GaussRat._raw(self.re / other, self.im / other)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE_G
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return GaussRat._raw(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.re) if not self.im else hash((self.re, self.im))
        return self._hash

    def sort_key(self):
        return (self.re, self.im)

    def __lt__(self, other):
        return self.sort_key() < GaussRat.coerce(other).sort_key()

    # text -----------------------------------------------------------------
    def __str__(self):
        re_, im_ = self.re, self.im
        if not im_:
            return _render_frac(re_)
        imag = _render_frac(im_) + "*i"
        if not re_:
            return imag
        if im_ < 0:
            return _render_frac(re_) + "-" + _render_frac(-im_) + "*i"
        return _render_frac(re_) + "+" + imag

    def __repr__(self):
        return f"GaussRat({self})"

    def needs_parens(self):
        """True when the rendering is a sum and must be bracketed in a product."""
        return bool(self.re) and bool(self.im)

    _REAL = r"[+-]?\d+(?:/\d+)?"
    _PATTERN = re.compile(
        rf"^\s*(?:(?P<re>{_REAL})\s*(?:(?P<sign>[+-])\s*(?P<im1>\d+(?:/\d+)?)\s*\*\s*i)?"
        rf"|(?P<im2>{_REAL})\s*\*\s*i)\s*$"
    )

    @classmethod
    def parse(cls, text):
        """Parse the literal grammar ``a/b``, ``c/d*i`` or ``a/b+c/d*i``."""
        m = cls._PATTERN.match(text)
        if m is None:
            col = _first_bad_column(text)
            raise ParseError(f"malformed Gaussian rational {text!r}", column=col)
        try:
            if m.group("im2") is not None:
                return cls._raw(Fraction(0), _checked_frac(m.group("im2")))
            re_ = _checked_frac(m.group("re"))
            im_ = Fraction(0)
            if m.group("im1") is not None:
                im_ = _checked_frac(m.group("im1"))
                if m.group("sign") == "-":
                    im_ = -im_
            return cls._raw(re_, im_)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}", column=1) from None


def _checked_frac(s):
    return Fraction(s.replace(" ", ""))


def _first_bad_column(text):
    # best-effort position for error messages: first character after which
    # no literal prefix can continue
    prefix = re.match(r"\s*[+-]?\d*(?:/\d*)?", text)
    return (prefix.end() if prefix else 0) + 1


ONE_G = GaussRat._raw(Fraction(1), Fraction(0))
ZERO_G = GaussRat._raw(Fraction(0), Fraction(0))
I = GaussRat._raw(Fraction(0), Fraction(1))


class ExpScalar:
    """Finite sum ``sum_mu q_mu * E(mu)``; zero coefficients are never stored.

    ``E(0)`` is the multiplicative identity, so Gaussian rationals embed as
    ``q * E(0)``.  Equality is structural and therefore exact.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mu, q in dict(terms).items():
                q = GaussRat.coerce(q)
                if q:
                    clean[GaussRat.coerce(mu)] = q
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, q):
        q = GaussRat.coerce(q)
        return cls._raw({ZERO_G: q} if q else {})

    @classmethod
    def exp(cls, mu, coef=1):
        """``coef * E(mu)``."""
        coef = GaussRat.coerce(coef)
        return cls._raw({GaussRat.coerce(mu): coef} if coef else {})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, ExpScalar):
            return x
        return cls.const(x)

    @classmethod
    def parse(cls, text):
        from .grammar import parse_scalar
        return parse_scalar(text)

    # inspection -----------------------------------------------------------
    @property
    def terms(self):
        """Terms as a tuple of ``(mu, q)`` pairs in canonical order."""
        return tuple(sorted(self._terms.items(), key=lambda kv: kv[0].sort_key()))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_unit(self):
        return len(self._terms) == 1

    def is_one(self):
        t = self._terms
        return len(t) == 1 and t.get(ZERO_G) == ONE_G

    def is_gaussrat(self):
        t = self._terms
        return not t or (len(t) == 1 and ZERO_G in t)

    def as_gaussrat(self):
        """The value as a GaussRat; raises ValueError if an E(mu), mu != 0, occurs."""
        if not self._terms:
            return ZERO_G
        if len(self._terms) == 1 and ZERO_G in self._terms:
            return self._terms[ZERO_G]
        raise ValueError(f"{self} is not a Gaussian rational")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ExpScalar):
            if isinstance(other, (GaussRat, int, Fraction)):
                other = ExpScalar.const(other)
            else:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mu, q in other._terms.items():
            s = out.get(mu)
            if s is None:
                out[mu] = q
            else:
                s = s + q
                if s:
                    out[mu] = s
                else:
                    del out[mu]
        return ExpScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpScalar._raw({mu: -q for mu, q in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ExpScalar):
            if isinstance(other, (GaussRat, int, Fraction)):
                other = ExpScalar.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ExpScalar):
            if isinstance(other, (GaussRat, int, Fraction)):
                if not other:
                    return ZERO
                return ExpScalar._raw({mu: q * other for mu, q in self._terms.items()})
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1 and ZERO_G in b:
            c = b[ZERO_G]
            return ExpScalar._raw({mu: q * c for mu, q in a.items()})
        if len(a) == 1 and ZERO_G in a:
            c = a[ZERO_G]
            return ExpScalar._raw({mu: c * q for mu, q in b.items()})
        out = {}
        for mu, p in a.items():
            for nu, q in b.items():
                key = mu + nu
                s = out.get(key)
                out[key] = p * q if s is None else s + p * q
        return ExpScalar._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if len(self._terms) != 1:
            raise NotAUnit(f"{self} is not a unit (needs exactly one term)")
        ((mu, q),) = self._terms.items()
        return ExpScalar._raw({-mu: q.inverse()})

    def __truediv__(self, other):
        return self * ExpScalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return ExpScalar.coerce(other) * self.inverse()

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExpScalar):
            return self._terms == other._terms
        if isinstance(other, (GaussRat, int, Fraction)):
            return self._terms == ExpScalar.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            t = self._terms
            if not t:
                self._hash = hash(0)
            elif len(t) == 1 and ZERO_G in t:
                self._hash = hash(t[ZERO_G])
            else:
                self._hash = hash(frozenset(t.items()))
        return self._hash

    # text -----------------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mu, q in self.terms:
            parts.append(_signed_term(q, None if mu.is_zero() else f"E({mu})"))
        return _join_signed(parts)

    def __repr__(self):
        return f"ExpScalar({self})"

    def needs_parens(self):
        if len(self._terms) > 1:
            return True
        if len(self._terms) == 1:
            ((mu, q),) = self._terms.items()
            return mu.is_zero() and q.needs_parens()
        return False


def _signed_term(q, factor):
    """Render ``q*factor`` as (negative?, body) for sign-aware joining."""
    neg = False
    if q.is_real() and q.re < 0:
        neg, q = True, -q
    elif not q.re and q.im < 0:
        neg, q = True, -q
    if factor is None:
        return neg, str(q)
    if q == 1:
        return neg, factor
    body = f"({q})" if q.needs_parens() else str(q)
    return neg, f"{body}*{factor}"


def _join_signed(parts):
    out = []
    for k, (neg, body) in enumerate(parts):
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


ZERO = ExpScalar._raw({})
ONE = ExpScalar._raw({ZERO_G: ONE_G})


def E(mu):
    """The formal exponential ``E(mu)``."""
    return ExpScalar.exp(mu)


def scalar_add(x, y):
    return ExpScalar.coerce(x) + ExpScalar.coerce(y)


def scalar_mul(x, y):
    return ExpScalar.coerce(x) * ExpScalar.coerce(y)


def scalar_invert(x):
    return ExpScalar.coerce(x).inverse()
