"""Divisors on the line, the solution spaces V_D and exp-polynomial algebra.

An ``ExpPoly`` is a finite sum ``sum_lam p_lam(z) * exp(lam*z)`` with
``ExpScalar`` coefficients.  ``ExpPoly2`` is the two-variable analogue in
``(s, t)``, which is where developing maps live.
"""

from __future__ import annotations

from math import comb

from .errors import InvalidDivisor, NotASubdivisor, UnsupportedSubstitution, ZeroScale
from .scalar import ONE, ZERO, ZERO_G, ExpScalar, GaussRat

__all__ = [
    "Divisor", "ExpPoly", "ExpPoly2", "vd_basis", "in_vd", "shift_arg", "scale_arg",
    "diff", "pd_apply", "divisor_shift", "ep2_substitute_deck", "ep2_substitute",
]


def _gr(x):
    return GaussRat.coerce(x)


class Divisor:
    """Effective divisor ``sum n_j [lam_j]`` of positive degree."""

    __slots__ = ("_points", "_hash")

    def __init__(self, points):
        pts = {}
        for lam, n in dict(points).items():
            if not isinstance(n, int) or isinstance(n, bool):
                raise InvalidDivisor(f"multiplicity {n!r} is not an integer")
            if n < 0:
                raise InvalidDivisor(f"negative multiplicity {n} at {lam}")
            if n:
                lam = _gr(lam)
                pts[lam] = pts.get(lam, 0) + n
        if not pts:
            raise InvalidDivisor("divisor must have positive degree")
        self._points = pts
        self._hash = None

    @classmethod
    def parse(cls, text):
        from .grammar import parse_divisor
        return parse_divisor(text)

    @property
    def points(self):
        return tuple(sorted(self._points.items(), key=lambda kv: kv[0].sort_key()))

    @property
    def support(self):
        return tuple(lam for lam, _ in self.points)

    @property
    def degree(self):
        return sum(self._points.values())

    def multiplicity(self, lam):
        return self._points.get(_gr(lam), 0)

    def __contains__(self, lam):
        return _gr(lam) in self._points

    def __add__(self, other):
        pts = dict(self._points)
        for lam, n in other._points.items():
            pts[lam] = pts.get(lam, 0) + n
        return Divisor(pts)

    def __le__(self, other):
        return all(other.multiplicity(lam) >= n for lam, n in self._points.items())

    def shift(self, a):
        """``sum n_j [lam_j - a]``."""
        a = _gr(a)
        return Divisor({lam - a: n for lam, n in self._points.items()})

    def rescale(self, mu):
        mu = _gr(mu)
        if not mu:
            raise ZeroScale("cannot rescale a divisor by 0")
        return Divisor({mu * lam: n for lam, n in self._points.items()})

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._points == other._points

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._points.items()))
        return self._hash

    def __str__(self):
        return " + ".join(f"[{lam}]" if n == 1 else f"{n}[{lam}]" for lam, n in self.points)

    def __repr__(self):
        return f"Divisor({self})"


def divisor_shift(D, a):
    return D.shift(a)


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def _poly_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] = out[k] + c
    return _trim(out)


def _poly_mul(p, q):
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return _trim(out)


def _poly_shift(p, c):
    """Coefficients of ``p(z + c)`` for GaussRat ``c``."""
    if not c or len(p) <= 1:
        return p
    n = len(p)
    cpow = [GaussRat(1)]
    for _ in range(n):
        cpow.append(cpow[-1] * c)
    out = [ZERO] * n
    for k, a in enumerate(p):
        if not a:
            continue
        for j in range(k + 1):
            out[j] = out[j] + a * (cpow[k - j] * comb(k, j))
    return _trim(out)


class ExpPoly:
    """Exp-polynomial in one variable ``z``; immutable.

    ``parts`` maps each frequency ``lam`` to the dense coefficient tuple of
    ``p_lam`` (index = power of z).  Zero polynomials are never stored.
    """

    __slots__ = ("_parts", "_hash")

    def __init__(self, parts=None):
        clean = {}
        if parts:
            for lam, coeffs in dict(parts).items():
                p = _trim(ExpScalar.coerce(c) for c in coeffs)
                if p:
                    clean[_gr(lam)] = p
        self._parts = clean
        self._hash = None

    @classmethod
    def _raw(cls, parts):
        obj = object.__new__(cls)
        obj._parts = parts
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, k, lam=0, coef=1):
        """``coef * z**k * exp(lam*z)``."""
        coef = ExpScalar.coerce(coef)
        if not coef:
            return cls._raw({})
        return cls._raw({_gr(lam): (ZERO,) * k + (coef,)})

    @classmethod
    def const(cls, c):
        return cls.monomial(0, 0, c)

    @classmethod
    def parse(cls, text):
        from .grammar import parse_exppoly
        return parse_exppoly(text)

    # inspection -----------------------------------------------------------
    @property
    def parts(self):
        return tuple(sorted(self._parts.items(), key=lambda kv: kv[0].sort_key()))

    @property
    def frequencies(self):
        return tuple(lam for lam, _ in self.parts)

    def poly(self, lam):
        return self._parts.get(_gr(lam), ())

    def coefficient(self, k, lam=0):
        p = self.poly(lam)
        return p[k] if k < len(p) else ZERO

    def __bool__(self):
        return bool(self._parts)

    def is_zero(self):
        return not self._parts

    def monomials(self):
        """Yield ``(lam, k, coef)`` for every nonzero coefficient, canonically."""
        for lam, p in self.parts:
            for k, c in enumerate(p):
                if c:
                    yield lam, k, c

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            other = ExpPoly.const(other)
        out = dict(self._parts)
        for lam, q in other._parts.items():
            p = out.get(lam)
            if p is None:
                out[lam] = q
            else:
                s = _poly_add(p, q)
                if s:
                    out[lam] = s
                else:
                    del out[lam]
        return ExpPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly._raw({lam: tuple(-c for c in p) for lam, p in self._parts.items()})

    def __sub__(self, other):
        if not isinstance(other, ExpPoly):
            other = ExpPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = ExpScalar.coerce(c)
        if not c:
            return ExpPoly._raw({})
        if c.is_one():
            return self
        return ExpPoly._raw({lam: _trim(x * c for x in p) for lam, p in self._parts.items()})

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            if isinstance(other, (ExpScalar, GaussRat, int)) or hasattr(other, "denominator"):
                return self.scale(other)
            return NotImplemented
        out = {}
        for lam, p in self._parts.items():
            for mu, q in other._parts.items():
                key = lam + mu
                prod = _poly_mul(p, q)
                if key in out:
                    prod = _poly_add(out[key], prod)
                if prod:
                    out[key] = prod
                else:
                    out.pop(key, None)
        return ExpPoly._raw(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        result = ExpPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def mul_exp(self, a):
        """``exp(a*z) * f``: every frequency moves by ``a``."""
        a = _gr(a)
        if not a:
            return self
        return ExpPoly._raw({lam + a: p for lam, p in self._parts.items()})

    def evaluate(self, z0):
        """Value at the Gaussian rational ``z0`` as an ExpScalar."""
        z0 = _gr(z0)
        total = ZERO
        for lam, p in self._parts.items():
            acc = ZERO
            for c in reversed(p):
                acc = acc * z0 + c
            total = total + acc * ExpScalar.exp(lam * z0)
        return total

    def __call__(self, z0):
        return self.evaluate(z0)

    # comparison / text ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExpPoly):
            return self._parts == other._parts
        if isinstance(other, (ExpScalar, GaussRat, int)):
            return self._parts == ExpPoly.const(other)._parts
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._parts.items()))
        return self._hash

    def __str__(self):
        return _render_terms(
            (c, _mono_factor([("z", k)], _exp_arg([(lam, "z")])))
            for lam, k, c in self.monomials()
        )

    def __repr__(self):
        return f"ExpPoly({self})"


def _mono_factor(powers, exp_arg):
    factors = []
    for var, k in powers:
        if k == 1:
            factors.append(var)
        elif k > 1:
            factors.append(f"{var}^{k}")
    if exp_arg is not None:
        factors.append(f"exp({exp_arg})")
    return "*".join(factors) if factors else None


def _exp_arg(freqs):
    """Render ``lam1*v1 + lam2*v2`` or None when every frequency is zero."""
    pieces = []
    for lam, var in freqs:
        if not lam:
            continue
        if lam == 1:
            pieces.append((False, var))
        elif lam == -1:
            pieces.append((True, var))
        elif lam.needs_parens():
            pieces.append((False, f"({lam})*{var}"))
        elif (lam.is_real() and lam.re < 0) or (not lam.re and lam.im < 0):
            pieces.append((True, f"{-lam}*{var}"))
        else:
            pieces.append((False, f"{lam}*{var}"))
    if not pieces:
        return None
    out = []
    for k, (neg, body) in enumerate(pieces):
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


def _render_terms(terms):
    """Render ``sum coef*factor`` with ExpScalar coefficients."""
    out = []
    for coef, factor in terms:
        neg = False
        if coef.is_gaussrat():
            q = coef.as_gaussrat()
            if (q.is_real() and q.re < 0) or (not q.re and q.im < 0):
                neg, q = True, -q
            if factor is None:
                body = str(q)
            elif q == 1:
                body = factor
            else:
                body = (f"({q})" if q.needs_parens() else str(q)) + "*" + factor
        else:
            if len(coef) == 1:
                ((mu, q),) = coef.terms
                if (q.is_real() and q.re < 0) or (not q.re and q.im < 0):
                    neg, coef = True, -coef
            cs = str(coef)
            cs = f"({cs})" if coef.needs_parens() else cs
            body = cs if factor is None else cs + "*" + factor
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


# --- V_D --------------------------------------------------------------------

def vd_basis(D):
    """Basis ``z**k exp(lam z)``, frequencies sorted, then ascending ``k``."""
    return [ExpPoly.monomial(k, lam) for lam, n in D.points for k in range(n)]


def in_vd(f, D):
    for lam, p in f._parts.items():
        if len(p) > D.multiplicity(lam):
            return False
    return True


def shift_arg(f, t):
    """``z -> f(z - t)``."""
    t = _gr(t)
    if not t:
        return f
    out = {}
    for lam, p in f._parts.items():
        q = _poly_shift(p, -t)
        if lam:
            u = ExpScalar.exp(-lam * t)
            q = tuple(c * u for c in q)
        if q:
            out[lam] = q
    return ExpPoly._raw(out)


def scale_arg(f, mu):
    """``z -> f(mu z)``."""
    mu = _gr(mu)
    if not mu:
        raise ZeroScale("scale factor must be nonzero")
    out = {}
    for lam, p in f._parts.items():
        coeffs = []
        m = GaussRat(1)
        for c in p:
            coeffs.append(c * m)
            m = m * mu
        out[mu * lam] = tuple(coeffs)
    return ExpPoly._raw(out)


def diff(f):
    out = {}
    for lam, p in f._parts.items():
        n = len(p)
        coeffs = []
        for k in range(n):
            c = p[k] * lam if lam else ZERO
            if k + 1 < n:
                c = c + p[k + 1] * (k + 1)
            coeffs.append(c)
        coeffs = _trim(coeffs)
        if coeffs:
            out[lam] = coeffs
    return ExpPoly._raw(out)


def pd_apply(D, f):
    """Apply ``prod_j (d/dz - lam_j)**n_j`` one first-order factor at a time."""
    for lam, n in D.points:
        for _ in range(n):
            f = diff(f) - f.scale(lam) if lam else diff(f)
    return f


def include_check(D, Dplus):
    if not D <= Dplus:
        raise NotASubdivisor(f"{D} is not a subdivisor of {Dplus}")


# --- two variables ----------------------------------------------------------

def _p2_add_into(out, poly):
    for mono, c in poly.items():
        s = out.get(mono)
        if s is None:
            out[mono] = c
        else:
            s = s + c
            if s:
                out[mono] = s
            else:
                del out[mono]


class ExpPoly2:
    """Exp-polynomial in ``(s, t)``: frequency pair ``(alpha, beta)`` maps to a
    sparse polynomial ``{(i, j): coef}`` for ``coef * s**i * t**j``."""

    __slots__ = ("_parts",)

    def __init__(self, parts=None):
        clean = {}
        if parts:
            for (a, b), poly in dict(parts).items():
                p = {}
                for (i, j), c in dict(poly).items():
                    c = ExpScalar.coerce(c)
                    if c:
                        p[(i, j)] = c
                if p:
                    clean[(_gr(a), _gr(b))] = p
        self._parts = clean

    @classmethod
    def _raw(cls, parts):
        obj = object.__new__(cls)
        obj._parts = parts
        return obj

    @classmethod
    def monomial(cls, i=0, j=0, alpha=0, beta=0, coef=1):
        coef = ExpScalar.coerce(coef)
        if not coef:
            return cls._raw({})
        return cls._raw({(_gr(alpha), _gr(beta)): {(i, j): coef}})

    @classmethod
    def const(cls, c):
        return cls.monomial(coef=c)

    @classmethod
    def s(cls):
        return cls.monomial(1, 0)

    @classmethod
    def t(cls):
        return cls.monomial(0, 1)

    @classmethod
    def from_s(cls, f):
        """Embed a one-variable ExpPoly as a function of ``s``."""
        out = {}
        for lam, p in f._parts.items():
            out[(lam, ZERO_G)] = {(k, 0): c for k, c in enumerate(p) if c}
        return cls._raw(out)

    @classmethod
    def parse(cls, text):
        from .grammar import parse_exppoly2
        return parse_exppoly2(text)

    # inspection -----------------------------------------------------------
    @property
    def parts(self):
        return tuple(sorted(
            ((k, tuple(sorted(v.items()))) for k, v in self._parts.items()),
            key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key()),
        ))

    def monomials(self):
        for (a, b), poly in self.parts:
            for (i, j), c in poly:
                yield a, b, i, j, c

    def __bool__(self):
        return bool(self._parts)

    def is_zero(self):
        return not self._parts

    def t_degree(self):
        """Degree in ``t`` of the purely polynomial-in-t part; None if some
        frequency has ``beta != 0``."""
        deg = -1
        for (a, b), poly in self._parts.items():
            if b:
                return None
            for (i, j) in poly:
                deg = max(deg, j)
        return deg

    def t_coefficient(self, j):
        """Coefficient of ``t**j`` (beta = 0 frequencies only) as an ExpPoly in s."""
        out = {}
        for (a, b), poly in self._parts.items():
            if b:
                continue
            coeffs = {}
            for (i, jj), c in poly.items():
                if jj == j:
                    coeffs[i] = c
            if coeffs:
                dense = [ZERO] * (max(coeffs) + 1)
                for i, c in coeffs.items():
                    dense[i] = c
                out[a] = _trim(dense)
        return ExpPoly._raw({k: v for k, v in out.items() if v})

    def split_beta(self):
        """``(beta-free part, {beta: part})``."""
        free, rest = {}, {}
        for key, poly in self._parts.items():
            if key[1]:
                rest.setdefault(key[1], {})[key] = poly
            else:
                free[key] = poly
        return ExpPoly2._raw(free), {b: ExpPoly2._raw(v) for b, v in rest.items()}

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ExpPoly2):
            other = ExpPoly2.const(other)
        out = {k: dict(v) for k, v in self._parts.items()}
        for key, poly in other._parts.items():
            if key in out:
                _p2_add_into(out[key], poly)
                if not out[key]:
                    del out[key]
            else:
                out[key] = dict(poly)
        return ExpPoly2._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly2._raw({k: {m: -c for m, c in v.items()} for k, v in self._parts.items()})

    def __sub__(self, other):
        if not isinstance(other, ExpPoly2):
            other = ExpPoly2.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = ExpScalar.coerce(c)
        if not c:
            return ExpPoly2._raw({})
        if c.is_one():
            return self
        return ExpPoly2._raw({k: {m: x * c for m, x in v.items()} for k, v in self._parts.items()})

    def __mul__(self, other):
        if not isinstance(other, ExpPoly2):
            if isinstance(other, ExpPoly):
                other = ExpPoly2.from_s(other)
            else:
                return self.scale(other)
        out = {}
        for (a1, b1), p in self._parts.items():
            for (a2, b2), q in other._parts.items():
                key = (a1 + a2, b1 + b2)
                acc = out.setdefault(key, {})
                for (i1, j1), c1 in p.items():
                    for (i2, j2), c2 in q.items():
                        mono = (i1 + i2, j1 + j2)
                        s = acc.get(mono)
                        acc[mono] = c1 * c2 if s is None else s + c1 * c2
        clean = {}
        for key, acc in out.items():
            acc = {m: c for m, c in acc.items() if c}
            if acc:
                clean[key] = acc
        return ExpPoly2._raw(clean)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        result = ExpPoly2.const(1)
        for _ in range(n):
            result = result * self
        return result

    def mul_exp(self, alpha=0, beta=0):
        alpha, beta = _gr(alpha), _gr(beta)
        return ExpPoly2._raw({(a + alpha, b + beta): v for (a, b), v in self._parts.items()})

    def diff_s(self):
        acc = {}
        for (a, b), poly in self._parts.items():
            p = {}
            for (i, j), c in poly.items():
                if a:
                    _p2_add_into(p, {(i, j): c * a})
                if i:
                    _p2_add_into(p, {(i - 1, j): c * i})
            if p:
                acc[(a, b)] = p
        return ExpPoly2._raw(acc)

    def diff_t(self):
        acc = {}
        for (a, b), poly in self._parts.items():
            p = {}
            for (i, j), c in poly.items():
                if b:
                    _p2_add_into(p, {(i, j): c * b})
                if j:
                    _p2_add_into(p, {(i, j - 1): c * j})
            if p:
                acc[(a, b)] = p
        return ExpPoly2._raw(acc)

    def evaluate(self, s0, t0):
        s0, t0 = _gr(s0), _gr(t0)
        total = ZERO
        for (a, b), poly in self._parts.items():
            acc = ZERO
            for (i, j), c in poly.items():
                acc = acc + c * (s0 ** i * t0 ** j)
            total = total + acc * ExpScalar.exp(a * s0 + b * t0)
        return total

    # comparison / text ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExpPoly2):
            return self._parts == other._parts
        if isinstance(other, (ExpScalar, GaussRat, int)):
            return self._parts == ExpPoly2.const(other)._parts
        return NotImplemented

    __hash__ = None

    def __str__(self):
        return _render_terms(
            (c, _mono_factor([("s", i), ("t", j)], _exp_arg([(a, "s"), (b, "t")])))
            for a, b, i, j, c in self.monomials()
        )

    def __repr__(self):
        return f"ExpPoly2({self})"


def _affine_gaussrat(P):
    """If ``P`` is ``p0 + p1*s`` with Gaussian rational coefficients return
    ``(p0, p1)``, else None."""
    if any(lam for lam in P._parts):
        return None
    p = P.poly(0)
    if len(p) > 2 or not all(c.is_gaussrat() for c in p):
        return None
    p0 = p[0].as_gaussrat() if len(p) > 0 else GaussRat(0)
    p1 = p[1].as_gaussrat() if len(p) > 1 else GaussRat(0)
    return p0, p1


def ep2_substitute(F, s_shift, T):
    """``F(s + s_shift, T(s, t))`` exactly.

    Frequencies with ``beta = 0`` accept any ``T``; a frequency with
    ``beta != 0`` needs ``T = c*t + p0 + p1*s`` with Gaussian rational
    ``c, p0, p1`` so the exponential stays an exponential of a linear form.
    """
    s_shift = _gr(s_shift)
    T = T if isinstance(T, ExpPoly2) else ExpPoly2.const(T)
    s_lin = ExpPoly2._raw({(ZERO_G, ZERO_G): {(1, 0): ONE, (0, 0): ExpScalar.const(s_shift)}}) \
        if s_shift else ExpPoly2.s()
    s_pows = [ExpPoly2.const(1)]
    t_pows = [ExpPoly2.const(1)]
    linear_T = None
    result = ExpPoly2._raw({})
    for (a, b), poly in F._parts.items():
        factor = ExpScalar.exp(a * s_shift) if a and s_shift else ONE
        alpha, beta_new = a, ZERO_G
        if b:
            if linear_T is None:
                linear_T = _linear_t_form(T)
            if linear_T is False:
                raise UnsupportedSubstitution(
                    "exponential in t can only be composed with t -> c*t + p0 + p1*s")
            c, p0, p1 = linear_T
            factor = factor * ExpScalar.exp(b * p0)
            alpha = a + b * p1
            beta_new = b * c
        for (i, j), coef in poly.items():
            while len(s_pows) <= i:
                s_pows.append(s_pows[-1] * s_lin)
            while len(t_pows) <= j:
                t_pows.append(t_pows[-1] * T)
            term = (s_pows[i] * t_pows[j]).scale(coef * factor)
            if alpha or beta_new:
                term = term.mul_exp(alpha, beta_new)
            result = result + term
    return result


def _linear_t_form(T):
    """``(c, p0, p1)`` with ``T = c*t + p0 + p1*s`` and Gaussian rational
    entries, else False."""
    c = p0 = p1 = GaussRat(0)
    for (a, b), poly in T._parts.items():
        if a or b:
            return False
        for (i, j), coef in poly.items():
            if not coef.is_gaussrat():
                return False
            q = coef.as_gaussrat()
            if (i, j) == (0, 1):
                c = q
            elif (i, j) == (0, 0):
                p0 = q
            elif (i, j) == (1, 0):
                p1 = q
            else:
                return False
    return c, p0, p1


def ep2_substitute_deck(F, g1, g2, g3):
    """``(s, t) -> F(s + g3, t + g1*s + g2)``."""
    g1, g2 = _gr(g1), _gr(g2)
    T = ExpPoly2._raw({(ZERO_G, ZERO_G): {
        m: ExpScalar.const(v) for m, v in (((0, 1), 1), ((1, 0), g1), ((0, 0), g2)) if v
    }})
    return ep2_substitute(F, g3, T)

