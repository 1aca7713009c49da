"""Dictionary polynomials over Q and exact rational functions in one variable.

Univariate polynomials are {exponent: Fraction}; multivariate ones are
{exponent tuple: Fraction}.  Zero coefficients are never stored.  These
are deliberately minimal: the library only composes, multiplies and
reads off orders, always exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInput

# -- univariate ------------------------------------------------------------


def uclean(p):
    return {e: c for e, c in p.items() if c}


def uadd(p, q):
    out = dict(p)
    for e, c in q.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def uneg(p):
    return {e: -c for e, c in p.items()}


def uscale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def umul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def upow(p, n):
    out = {0: Fraction(1)}
    base = p
    while n:
        if n & 1:
            out = umul(out, base)
        base = umul(base, base)
        n >>= 1
    return out


def uorder(p):
    """Order in the variable; None for the zero polynomial (= infinity)."""
    return min(p) if p else None


def ulead(p):
    o = uorder(p)
    return None if o is None else p[o]


def ushift_down(p, k):
    """Divide by tau^k; every exponent must be >= k."""
    if any(e < k for e in p):
        raise InvalidInput("polynomial not divisible by tau^%d" % k)
    return {e - k: c for e, c in p.items()}


def uconst(p):
    return p.get(0, Fraction(0))


# -- multivariate ----------------------------------------------------------


def pclean(p):
    return {e: c for e, c in p.items() if c}


def padd(p, q):
    out = dict(p)
    for e, c in q.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def pneg(p):
    return {e: -c for e, c in p.items()}


def pscale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def pmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def ppow(p, n, nvars):
    out = {(0,) * nvars: Fraction(1)}
    base = p
    while n:
        if n & 1:
            out = pmul(out, base)
        base = pmul(base, base)
        n >>= 1
    return out


def pcompose_univariate(g, parts):
    """Substitute univariate polynomials parts[j] for the variables of g."""
    cache = {}

    def var_power(j, k):
        if k == 0:
            return {0: Fraction(1)}
        if (j, k) not in cache:
            cache[(j, k)] = umul(var_power(j, k - 1), parts[j])
        return cache[(j, k)]

    out = {}
    for expo, c in g.items():
        term = {0: c}
        for j, k in enumerate(expo):
            if k:
                term = umul(term, var_power(j, k))
        out = uadd(out, term)
    return out


def poly2_compose(g, xmap, ymap):
    """g(x, y) with x, y replaced by two-variable polynomials."""
    xpows = {0: {(0, 0): Fraction(1)}}
    ypows = {0: {(0, 0): Fraction(1)}}

    def powers(cache, base, k):
        if k not in cache:
            cache[k] = pmul(powers(cache, base, k - 1), base)
        return cache[k]

    out = {}
    for (a, b), c in g.items():
        term = pmul(powers(xpows, xmap, a), powers(ypows, ymap, b))
        out = padd(out, pscale(term, c))
    return out


def u_order_in_first(p):
    """Order of a two-variable polynomial along {first variable = 0}."""
    return min(e[0] for e in p) if p else None


def u_order_in_second(p):
    return min(e[1] for e in p) if p else None


def parse_fraction(s):
    return Fraction(s) if isinstance(s, str) else Fraction(s)


# -- exact rational functions in one variable ------------------------------


class RatFun:
    """Quotient num/den of univariate polynomials with den(0) != 0.

    All branch-lift arithmetic happens here, so strict transforms of
    polynomial parametrizations stay exact through arbitrarily many
    blow-ups.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = {0: Fraction(1)}
        num = uclean(num)
        den = uclean(den)
        if uorder(den) != 0:
            raise InvalidInput("rational function denominator vanishes at 0")
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p):
        return RatFun(dict(p))

    def is_zero(self):
        return not self.num

    def order(self):
        """Vanishing order at tau = 0; None for the zero function."""
        return uorder(self.num)

    def value_at_zero(self):
        return uconst(self.num) / uconst(self.den)

    def sub_const(self, c):
        return RatFun(uadd(self.num, uscale(self.den, -c)), dict(self.den))

    def div_exact(self, other, cancel):
        """self / other after cancelling tau^cancel from both.

        Requires order(self) >= cancel and order(other) == cancel, so the
        result is again regular at 0.
        """
        if other.is_zero():
            raise InvalidInput("division by the zero function")
        num = ushift_down(umul(self.num, other.den), cancel)
        den = ushift_down(umul(other.num, self.den), cancel)
        return RatFun(num, den)

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return umul(self.num, other.den) == umul(other.num, self.den)

    __hash__ = None

    def __repr__(self):
        return "RatFun(%r / %r)" % (self.num, self.den)
