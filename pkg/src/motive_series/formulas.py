"""Closed formulas for filtration series in terms of resolution combinatorics.

Every series here is a finite, exactly-windowed sum over combinatorial
term indices: a choice of edge subset I, arrow subset K, and integer
weights.  Enumeration is depth-first in a fixed order with componentwise
bound pruning, so results are deterministic and exhaustive on the window.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import InternalInconsistency, InvalidInput
from .graph import (
    DualGraph,
    IntersectionData,
    build_intersection,
    chi_bullet,
    chi_open,
)
from .laurent import LaurentPoly, qgeom, sym_power_class
from .mseries import MSeries, box, expand_rational, vec_add, zero_vec

ONE_MINUS_Q = LaurentPoly({0: 1, -1: -1})


@dataclass(frozen=True)
class TermIndex:
    """One summand of the curve/divisorial sums.

    ``edges``/``arrows`` are sorted index tuples into the graph's edge and
    arrow lists; ``nprime``/``ndprime`` run parallel to ``edges`` and
    ``atilde``/``btilde`` parallel to ``arrows``.
    """

    edges: tuple
    arrows: tuple
    n: tuple
    nprime: tuple
    ndprime: tuple
    atilde: tuple
    btilde: tuple

    def nhat(self, g: DualGraph) -> tuple:
        out = list(self.n)
        for pos, sigma in enumerate(self.edges):
            i, j = g.edges[sigma]
            out[i] += self.nprime[pos]
            out[j] += self.ndprime[pos]
        for pos, k in enumerate(self.arrows):
            out[g.arrows[k]] += self.atilde[pos]
        return tuple(out)


def term_codimension(t: TermIndex, d: IntersectionData, g: DualGraph) -> int:
    """Codimension of the stratum of functions with initial data t.

    (sum m_ij nhat_i nhat_j + sum_i nhat_i (sum_j m_ij chi(E_j minus
    other components) + 1)) / 2, plus the arrow contact orders.
    """
    s = g.nvertices
    nhat = t.nhat(g)
    chi_b = [chi_bullet(g, j) for j in range(s)]
    quad = sum(d.M[i][j] * nhat[i] * nhat[j] for i in range(s) for j in range(s))
    lin = sum(
        nhat[i] * (sum(d.M[i][j] * chi_b[j] for j in range(s)) + 1) for i in range(s)
    )
    if (quad + lin) % 2:
        raise InternalInconsistency("codimension half-sum is odd")
    return (quad + lin) // 2 + sum(t.btilde)


def term_w(t: TermIndex, d: IntersectionData, g: DualGraph) -> tuple:
    nhat = t.nhat(g)
    s = d.size
    return tuple(sum(nhat[i] * d.M[i][j] for i in range(s)) for j in range(s))


def term_v(t: TermIndex, d: IntersectionData, g: DualGraph) -> tuple:
    """Branch-wise valuation vector of the stratum (curve mode)."""
    w = term_w(t, d, g)
    bt = dict(zip(t.arrows, t.btilde))
    return tuple(
        w[g.arrows[k]] + bt.get(k, 0) for k in range(len(g.arrows))
    )


def _subsets(n):
    for mask in range(1 << n):
        yield tuple(i for i in range(n) if mask >> i & 1)


def _group_terms(g, d, hi, mode, I, K):
    """All terms for a fixed edge subset I and arrow subset K."""
    s = g.nvertices
    hi = tuple(hi)
    attach = g.arrows
    in_k = set(K)

    # value variables in assignment order: arrow contact orders first (they
    # enter the bound directly), then everything that feeds some nhat_i
    variables = []
    for k in K:
        variables.append(("btilde", k, None, 1))
    for k in K:
        variables.append(("atilde", k, attach[k], 1))
    for pos, sigma in enumerate(I):
        i, j = g.edges[sigma]
        variables.append(("nprime", pos, i, 1))
        variables.append(("ndprime", pos, j, 1))
    for i in range(s):
        variables.append(("n", i, i, 0))

    nv = len(variables)
    # suffix_min[t][j]: least possible later contribution to w_j from vars t..
    suffix_min = [zero_vec(s) for _ in range(nv + 1)]
    for t in range(nv - 1, -1, -1):
        _, _, vertex, minval = variables[t]
        contrib = zero_vec(s)
        if vertex is not None and minval:
            contrib = tuple(minval * d.M[vertex][j] for j in range(s))
        suffix_min[t] = vec_add(suffix_min[t + 1], contrib)

    values = [0] * nv

    def feasible(t, w_acc):
        low = vec_add(w_acc, suffix_min[t])
        if mode == "divisorial":
            return all(low[j] <= hi[j] for j in range(s))
        for k in range(len(attach)):
            if k in in_k:
                pos = K.index(k)
                bt = values[pos] if pos < t else 1
            else:
                bt = 0
            if low[attach[k]] + bt > hi[k]:
                return False
        return True

    def assemble():
        btilde = tuple(values[i] for i in range(len(K)))
        base = len(K)
        atilde = tuple(values[base + i] for i in range(len(K)))
        base += len(K)
        nprime = tuple(values[base + 2 * i] for i in range(len(I)))
        ndprime = tuple(values[base + 2 * i + 1] for i in range(len(I)))
        base += 2 * len(I)
        n = tuple(values[base + i] for i in range(s))
        return TermIndex(tuple(I), tuple(K), n, nprime, ndprime, atilde, btilde)

    def dfs(t, w_acc):
        if t == nv:
            yield assemble()
            return
        _, _, vertex, minval = variables[t]
        step = (
            tuple(d.M[vertex][j] for j in range(s)) if vertex is not None else zero_vec(s)
        )
        val = minval
        w = vec_add(w_acc, tuple(minval * x for x in step))
        while True:
            values[t] = val
            if not feasible(t + 1, w):
                break
            yield from dfs(t + 1, w)
            val += 1
            w = vec_add(w, step)

    if feasible(0, zero_vec(s)):
        yield from dfs(0, zero_vec(s))


def enumerate_terms(g: DualGraph, d: IntersectionData, hi, mode: str):
    """Every TermIndex with valuation vector <= hi, each exactly once.

    ``mode`` is "curve" (bound on branch valuations, arrows active) or
    "divisorial" (bound on divisorial multiplicities, arrows ignored).
    """
    if mode not in ("curve", "divisorial"):
        raise InvalidInput("mode must be 'curve' or 'divisorial'")
    hi = tuple(hi)
    if any(h < 0 for h in hi):
        raise InvalidInput("window bound must be nonnegative")
    if mode == "curve":
        if len(hi) != len(g.arrows):
            raise InvalidInput("curve-mode bound must have one entry per arrow")
    elif len(hi) != g.nvertices:
        raise InvalidInput("divisorial-mode bound must have one entry per vertex")
    for I in _subsets(len(g.edges)):
        if mode == "curve":
            for K in _subsets(len(g.arrows)):
                yield from _group_terms(g, d, hi, mode, I, K)
        else:
            yield from _group_terms(g, d, hi, mode, I, ())


def _thread_count(threads):
    if threads is not None:
        return max(1, int(threads))
    return max(1, int(os.environ.get("MOTIVE_SERIES_THREADS", "1")))


def _summed_groups(g, d, hi, mode, evaluate, threads):
    """Accumulate evaluate(term) -> (exponent, coeff) over all (I, K) groups.

    Groups may be processed by a thread pool; merging coefficient maps is
    associative and commutative, so the result does not depend on order.
    """
    groups = []
    for I in _subsets(len(g.edges)):
        if mode == "curve":
            groups.extend((I, K) for K in _subsets(len(g.arrows)))
        else:
            groups.append((I, ()))

    def work(group):
        I, K = group
        local = {}
        for term in _group_terms(g, d, hi, mode, I, K):
            e, c = evaluate(term)
            s = local.get(e, LaurentPoly.zero()) + c
            if s:
                local[e] = s
            else:
                local.pop(e, None)
        return local

    nthreads = _thread_count(threads)
    if nthreads > 1 and len(groups) > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            partials = list(pool.map(work, groups))
    else:
        partials = [work(group) for group in groups]
    total = {}
    for part in partials:
        for e, c in part.items():
            s = total.get(e, LaurentPoly.zero()) + c
            if s:
                total[e] = s
            else:
                total.pop(e, None)
    return total


def _bracket(chi, n):
    """q^n * [S^n of the punctured line]: the alternating-binomial factor."""
    return LaurentPoly.q_power(n) * sym_power_class(chi, n)


def curve_series(g: DualGraph, hi, data=None, threads=None) -> MSeries:
    """Generalized Poincare series of the branch filtration, from a resolution.

    The graph must carry one arrow per branch.  Coefficients come out as
    polynomials in q (nonpositive L-powers), which is asserted.
    """
    if not g.arrows:
        raise InvalidInput("curve series needs at least one arrow")
    d = data if data is not None else build_intersection(g)
    hi = tuple(hi)
    chi_o = [chi_open(g, i) for i in range(g.nvertices)]

    def evaluate(term):
        f = term_codimension(term, d, g)
        expo = f - sum(term.n) - len(term.edges) - len(term.arrows)
        c = LaurentPoly.q_power(expo) * ONE_MINUS_Q ** (
            len(term.edges) + len(term.arrows)
        )
        for i, ni in enumerate(term.n):
            c = c * _bracket(chi_o[i], ni)
        return term_v(term, d, g), c

    coeffs = _summed_groups(g, d, hi, "curve", evaluate, threads)
    for e, c in coeffs.items():
        if not c.only_nonpos_powers():
            raise InternalInconsistency(
                "curve-series coefficient at %r is not a polynomial in q" % (e,)
            )
    return MSeries(len(hi), zero_vec(len(hi)), hi, coeffs, floored=True)


def divisorial_series(g: DualGraph, hi, data=None, threads=None) -> MSeries:
    """Generalized Poincare series of the divisorial filtration.

    Arrows on the graph are ignored; the series lives in one t-variable
    per exceptional component.
    """
    d = data if data is not None else build_intersection(g)
    hi = tuple(hi)
    chi_b = [chi_bullet(g, i) for i in range(g.nvertices)]

    def evaluate(term):
        f = term_codimension(term, d, g)
        expo = f - sum(term.n) - len(term.edges)
        c = LaurentPoly.q_power(expo) * ONE_MINUS_Q ** len(term.edges)
        for i, ni in enumerate(term.n):
            c = c * _bracket(chi_b[i], ni)
        return term_w(term, d, g), c

    coeffs = _summed_groups(g, d, hi, "divisorial", evaluate, threads)
    for e, c in coeffs.items():
        if not c.only_nonpos_powers():
            raise InternalInconsistency(
                "divisorial-series coefficient at %r is not a polynomial in q" % (e,)
            )
    return MSeries(len(hi), zero_vec(len(hi)), hi, coeffs, floored=True)


def _t_monomial(nvars, expo, coeff=None):
    return MSeries.polynomial(
        nvars, {tuple(expo): coeff if coeff is not None else LaurentPoly.one()}
    )


def semigroup_class_series(g: DualGraph, hi, data=None) -> MSeries:
    """Motivic class series of the projectivized extended divisorial semigroup.

    Windowed expansion of
      prod_edges (1 - t^m_i - t^m_j + L t^(m_i+m_j))
      / prod_i (1 - t^m_i)(1 - L t^m_i).
    Coefficients are polynomials in L (nonnegative powers), asserted.
    """
    d = data if data is not None else build_intersection(g)
    hi = tuple(hi)
    s = g.nvertices
    if len(hi) != s:
        raise InvalidInput("bound must have one entry per vertex")
    num = MSeries.one(s)
    for (i, j) in g.edges:
        mi, mj = d.row(i), d.row(j)
        factor = MSeries.polynomial(
            s,
            {
                zero_vec(s): LaurentPoly.one(),
                mi: LaurentPoly.const(-1),
                mj: LaurentPoly.const(-1),
                vec_add(mi, mj): LaurentPoly.l_power(1),
            },
        )
        num = num * factor
    factors = []
    for i in range(s):
        factors.append((LaurentPoly.one(), d.row(i)))
        factors.append((LaurentPoly.l_power(1), d.row(i)))
    out = expand_rational(num, factors, hi)
    for e, c in out.coeffs.items():
        if not c.only_nonneg_powers():
            raise InternalInconsistency(
                "semigroup-class coefficient at %r is not a polynomial in L" % (e,)
            )
    return out


def divisorial_poincare_product(g: DualGraph, hi, data=None) -> MSeries:
    """Classical divisorial Poincare series prod_i (1 - t^m_i)^(-chi_i).

    chi_i is the Euler characteristic of E_i minus the other components;
    negative chi_i contributes polynomial factors, positive chi_i
    geometric ones.
    """
    d = data if data is not None else build_intersection(g)
    hi = tuple(hi)
    s = g.nvertices
    if len(hi) != s:
        raise InvalidInput("bound must have one entry per vertex")
    num = MSeries.one(s)
    factors = []
    for i in range(s):
        chi = chi_bullet(g, i)
        one_minus = MSeries.polynomial(
            s, {zero_vec(s): LaurentPoly.one(), d.row(i): LaurentPoly.const(-1)}
        )
        if chi < 0:
            for _ in range(-chi):
                num = num * one_minus
        else:
            factors.extend((LaurentPoly.one(), d.row(i)) for _ in range(chi))
    return expand_rational(num, factors, hi)


def divisorial_poincare_product_edges(g: DualGraph, hi, data=None) -> MSeries:
    """Same series written through edges: prod_edges (1-t^m_i)(1-t^m_j)
    over prod_i (1-t^m_i)^2."""
    d = data if data is not None else build_intersection(g)
    hi = tuple(hi)
    s = g.nvertices
    if len(hi) != s:
        raise InvalidInput("bound must have one entry per vertex")
    num = MSeries.one(s)
    for (i, j) in g.edges:
        for row in (d.row(i), d.row(j)):
            num = num * MSeries.polynomial(
                s, {zero_vec(s): LaurentPoly.one(), row: LaurentPoly.const(-1)}
            )
    factors = []
    for i in range(s):
        factors.append((LaurentPoly.one(), d.row(i)))
        factors.append((LaurentPoly.one(), d.row(i)))
    return expand_rational(num, factors, hi)


def hilbert_ie_coeff(hfun, nvars, v):
    """Inclusion-exclusion coefficient of a generalized series at v.

    ``hfun`` is any Hilbert function on nonnegative integer vectors; the
    coefficient is sum over subsets S of the valuation indices of
    (-1)^|S| qgeom(h(v + 1_S), h(v + 1) - h(v + 1_S)).
    """
    out = LaurentPoly.zero()
    hfull = hfun(tuple(x + 1 for x in v))
    for S in _subsets(nvars):
        bumped = tuple(v[i] + (1 if i in S else 0) for i in range(nvars))
        hs = hfun(bumped)
        piece = qgeom(hs, hfull - hs)
        out = out + (piece if len(S) % 2 == 0 else -piece)
    return out


def hilbert_ie_series(hfun, nvars, hi) -> MSeries:
    """Generalized series assembled coefficientwise from a Hilbert function."""
    coeffs = {}
    for v in box(zero_vec(nvars), tuple(hi)):
        c = hilbert_ie_coeff(hfun, nvars, v)
        if c:
            coeffs[v] = c
    return MSeries(nvars, zero_vec(nvars), tuple(hi), coeffs, floored=True)
