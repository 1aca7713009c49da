"""Box-truncated multivariate series with LaurentPoly coefficients.

An MSeries models partial knowledge of a formal series in t_1..t_r:

* ``exact=True``: the stored terms ARE the series (a Laurent polynomial
  in the t-variables); it is known everywhere.
* ``exact=False``: coefficients are exactly known on the box [lo, hi]
  and unknown above it.  When ``floored=True`` the series additionally
  promises to have no support at any exponent with a component below
  ``lo``, so such coefficients are known to vanish.

Multiplication keeps a coefficient only when every pair of exponents
that could contribute to it is exactly known in both operands, and
shrinks the result window accordingly.  All windowed identities in this
library are therefore exact, never approximate.
"""

from __future__ import annotations

from .errors import InvalidInput, NonconvergentFactor, OutsideWindow
from .laurent import LaurentPoly

# -- exponent-vector helpers (plain int tuples) ---------------------------


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_min(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def vec_max(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def vec_leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def vec_clamp0(a):
    return tuple(max(x, 0) for x in a)


def zero_vec(n):
    return (0,) * n


def unit_vec(n, k):
    return tuple(1 if i == k else 0 for i in range(n))


def box(lo, hi):
    """Iterate the integer box [lo, hi] in lexicographic order."""
    if not vec_leq(lo, hi):
        return
    cur = list(lo)
    n = len(lo)
    while True:
        yield tuple(cur)
        i = n - 1
        while i >= 0 and cur[i] == hi[i]:
            cur[i] = lo[i]
            i -= 1
        if i < 0:
            return
        cur[i] += 1


class MSeries:
    __slots__ = ("nvars", "lo", "hi", "coeffs", "exact", "floored")

    def __init__(self, nvars, lo, hi, coeffs, exact=False, floored=True):
        self.nvars = nvars
        self.lo = tuple(lo)
        self.hi = tuple(hi)
        if len(self.lo) != nvars or len(self.hi) != nvars:
            raise InvalidInput("window bounds must have length nvars")
        if not vec_leq(self.lo, zero_vec(nvars)) or not vec_leq(zero_vec(nvars), self.hi):
            raise InvalidInput("window must contain the zero exponent")
        self.coeffs = {}
        for e, c in coeffs.items():
            e = tuple(e)
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c)
            if not c:
                continue
            if not (vec_leq(self.lo, e) and vec_leq(e, self.hi)):
                raise InvalidInput("stored exponent %r outside window" % (e,))
            self.coeffs[e] = c
        self.exact = exact
        self.floored = True if exact else floored

    @staticmethod
    def polynomial(nvars, terms):
        """Exact series from {exponent: coefficient}; window hulls the support."""
        lo = zero_vec(nvars)
        hi = zero_vec(nvars)
        for e in terms:
            lo = vec_min(lo, tuple(e))
            hi = vec_max(hi, tuple(e))
        return MSeries(nvars, lo, hi, terms, exact=True)

    @staticmethod
    def one(nvars):
        return MSeries.polynomial(nvars, {zero_vec(nvars): LaurentPoly.one()})

    @staticmethod
    def zero(nvars):
        return MSeries.polynomial(nvars, {})

    # -- knowledge queries --------------------------------------------------

    def knows(self, e):
        """Is the coefficient at e exactly determined?"""
        if self.exact:
            return True
        if vec_leq(self.lo, e) and vec_leq(e, self.hi):
            return True
        return self.floored and not vec_leq(self.lo, e)

    def coeff(self, e):
        e = tuple(e)
        if not self.knows(e):
            raise OutsideWindow("coefficient at %r is not determined" % (e,))
        return self.coeffs.get(e, LaurentPoly.zero())

    def support(self):
        return sorted(self.coeffs)

    def is_zero_on_window(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, MSeries):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.lo == other.lo
            and self.hi == other.hi
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.nvars, self.lo, self.hi, frozenset(self.coeffs)))

    # -- linear structure ---------------------------------------------------

    def scale(self, c):
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly.const(c)
        return MSeries(
            self.nvars,
            self.lo,
            self.hi,
            {e: v * c for e, v in self.coeffs.items()},
            exact=self.exact,
            floored=self.floored,
        )

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, MSeries):
            return NotImplemented
        if self.nvars != other.nvars:
            raise InvalidInput("cannot add series in different variable counts")
        if self.exact and other.exact:
            terms = dict(self.coeffs)
            for e, c in other.coeffs.items():
                s = terms.get(e, LaurentPoly.zero()) + c
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
            return MSeries.polynomial(self.nvars, terms)
        # known region of the sum: intersection of the known boxes, with the
        # below-floor escape only when every operand supplies it there
        lo = vec_max(self.lo, other.lo) if not self.exact and not other.exact else (
            other.lo if self.exact else self.lo
        )
        hi = vec_min(self.hi, other.hi) if not self.exact and not other.exact else (
            other.hi if self.exact else self.hi
        )
        floored = self._floor_covers(lo) and other._floor_covers(lo)
        terms = {}
        for e in set(self.coeffs) | set(other.coeffs):
            if not (vec_leq(lo, e) and vec_leq(e, hi)):
                continue
            s = self.coeffs.get(e, LaurentPoly.zero()) + other.coeffs.get(e, LaurentPoly.zero())
            if s:
                terms[e] = s
        return MSeries(self.nvars, lo, hi, terms, floored=floored)

    def _floor_covers(self, lo):
        """True if this series is known to vanish at every e not >= lo."""
        if self.exact:
            return all(vec_leq(lo, e) for e in self.coeffs)
        return self.floored and vec_leq(lo, self.lo)

    def __sub__(self, other):
        return self + (-other)

    def shift(self, delta):
        """Multiply by t^delta (delta >= 0): exponents move up by delta."""
        delta = tuple(delta)
        if any(d < 0 for d in delta):
            raise InvalidInput("shift requires a nonnegative exponent vector")
        terms = {vec_add(e, delta): c for e, c in self.coeffs.items()}
        if self.exact:
            return MSeries.polynomial(self.nvars, terms)
        raised = vec_add(self.lo, delta)
        if not self.floored and not vec_leq(raised, zero_vec(self.nvars)):
            # without a floor there is nothing known between 0 and lo+delta
            raise OutsideWindow("shift pushes an unfloored window above zero")
        lo = vec_min(raised, zero_vec(self.nvars))
        hi = vec_add(self.hi, delta)
        kept = {e: c for e, c in terms.items() if vec_leq(lo, e)}
        return MSeries(self.nvars, lo, hi, kept, floored=self.floored)

    def restrict(self, lo, hi):
        """Re-window to [lo, hi]; every point of the new box must be known."""
        lo, hi = tuple(lo), tuple(hi)
        if not self.exact:
            if not vec_leq(hi, self.hi):
                raise OutsideWindow("cannot widen window above %r" % (self.hi,))
            if not self.floored and not vec_leq(self.lo, lo):
                raise OutsideWindow("cannot widen window below %r" % (self.lo,))
        terms = {
            e: c for e, c in self.coeffs.items() if vec_leq(lo, e) and vec_leq(e, hi)
        }
        floored = self._floor_covers(lo)
        return MSeries(self.nvars, lo, hi, terms, floored=floored)

    def map_coeffs(self, fn):
        """Apply fn to every coefficient (e.g. specialisation at L = 1)."""
        terms = {}
        for e, c in self.coeffs.items():
            v = fn(c)
            if not isinstance(v, LaurentPoly):
                v = LaurentPoly.const(v)
            if v:
                terms[e] = v
        return MSeries(
            self.nvars, self.lo, self.hi, terms, exact=self.exact, floored=self.floored
        )

    def at_one(self):
        """Specialise every coefficient at L = 1 (integer coefficients)."""
        return self.map_coeffs(lambda c: c.eval_one())

    # -- multiplication -------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        if not isinstance(other, MSeries):
            return NotImplemented
        return mseries_mul(self, other)

    __rmul__ = __mul__

    # -- serialization ----------------------------------------------------------

    def to_json(self):
        return {
            "vars": self.nvars,
            "lo": list(self.lo),
            "hi": list(self.hi),
            "terms": [
                {"exp": list(e), "coeff": self.coeffs[e].to_json()}
                for e in sorted(self.coeffs)
            ],
        }

    @staticmethod
    def from_json(doc):
        coeffs = {
            tuple(t["exp"]): LaurentPoly.from_json(t["coeff"]) for t in doc["terms"]
        }
        return MSeries(doc["vars"], tuple(doc["lo"]), tuple(doc["hi"]), coeffs)

    def __repr__(self):
        kind = "exact" if self.exact else ("floored" if self.floored else "windowed")
        return "MSeries(%d vars, [%s..%s], %d terms, %s)" % (
            self.nvars,
            self.lo,
            self.hi,
            len(self.coeffs),
            kind,
        )


def _convolve(f, g, lo, hi, floored):
    terms = {}
    for e1, c1 in f.coeffs.items():
        for e2, c2 in g.coeffs.items():
            e = vec_add(e1, e2)
            if not (vec_leq(lo, e) and vec_leq(e, hi)):
                continue
            s = terms.get(e, LaurentPoly.zero()) + c1 * c2
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
    return MSeries(f.nvars, lo, hi, terms, floored=floored)


def mseries_mul(f: MSeries, g: MSeries) -> MSeries:
    """Product, exact on the largest window the operands allow.

    exact * exact is a plain convolution.  exact * windowed keeps the
    exponents whose every contribution from the exact factor's support
    lands in the windowed factor's known region.  windowed * windowed
    requires both operands floored; the floors bound the contributing
    pairs to a finite box inside both windows.
    """
    if f.nvars != g.nvars:
        raise InvalidInput("cannot multiply series in different variable counts")
    n = f.nvars
    if f.exact and g.exact:
        out = {}
        for e1, c1 in f.coeffs.items():
            for e2, c2 in g.coeffs.items():
                e = vec_add(e1, e2)
                s = out.get(e, LaurentPoly.zero()) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MSeries.polynomial(n, out)
    if f.exact or g.exact:
        ex, w = (f, g) if f.exact else (g, f)
        if not ex.coeffs:
            return MSeries.polynomial(n, {})
        supp = list(ex.coeffs)
        smin = supp[0]
        smax = supp[0]
        for e in supp[1:]:
            smin = vec_min(smin, e)
            smax = vec_max(smax, e)
        hi = vec_add(w.hi, smin)
        if w.floored:
            # every lookup at or below w.hi is determined (stored or floor-zero)
            lo = vec_min(vec_add(w.lo, smin), zero_vec(n))
            floored = True
        else:
            # no floor escape: every lookup must land inside the window box
            lo = vec_add(w.lo, smax)
            if not vec_leq(lo, zero_vec(n)):
                raise OutsideWindow(
                    "product of an unfloored window does not determine exponent 0"
                )
            floored = False
        if not vec_leq(lo, hi):
            raise OutsideWindow("empty safe window in product")
        return _convolve(ex, w, lo, hi, floored)
    if not (f.floored and g.floored):
        raise InvalidInput(
            "windowed*windowed product needs support floors on both operands"
        )
    hi = vec_min(vec_add(f.hi, g.lo), vec_add(g.hi, f.lo))
    lo = vec_min(vec_add(f.lo, g.lo), zero_vec(n))
    if not vec_leq(lo, hi):
        raise OutsideWindow("empty safe window in product")
    return _convolve(f, g, lo, hi, True)


def expand_rational(numerator: MSeries, denominator_factors, hi) -> MSeries:
    """numerator / prod (1 - c * t^m), exact on [0, hi].

    Each factor is a pair (c, m) with c a LaurentPoly (or int) and m a
    nonnegative, nonzero exponent vector; its geometric expansion
    1 + c t^m + c^2 t^2m + ... terminates inside the window.
    """
    hi = tuple(hi)
    n = numerator.nvars
    if any(h < 0 for h in hi):
        raise InvalidInput("expansion window must be nonnegative")
    out = numerator
    for c, m in denominator_factors:
        m = tuple(m)
        if len(m) != n:
            raise InvalidInput("factor exponent length mismatch")
        if any(x < 0 for x in m):
            raise InvalidInput("factor exponents must be nonnegative")
        if all(x == 0 for x in m):
            raise NonconvergentFactor("factor with zero exponent vector")
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly.const(c)
        kmax = min(hi[i] // m[i] for i in range(n) if m[i] > 0)
        terms = {}
        acc = LaurentPoly.one()
        e = zero_vec(n)
        for _ in range(kmax + 1):
            if acc:
                terms[e] = acc
            acc = acc * c
            e = vec_add(e, m)
        geom = MSeries(n, zero_vec(n), hi, terms, floored=True)
        out = mseries_mul(out, geom)
    return out.restrict(zero_vec(n), hi)


def first_mismatch(f: MSeries, g: MSeries, lo, hi):
    """First exponent in [lo, hi] (lex order) where f and g differ, or None.

    Both series must know every coefficient in the box.
    """
    for e in box(tuple(lo), tuple(hi)):
        a = f.coeff(e)
        b = g.coeff(e)
        if a != b:
            return e, a, b
    return None
