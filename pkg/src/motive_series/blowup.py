"""Point blow-ups of (C^2, 0): charts, components, and embedded resolution.

Every blow-up step adds two affine charts whose maps to the base plane
are exact polynomial compositions.  Each exceptional component records a
host chart in which it is the axis {first coordinate = 0} and its free
points are visible; corners (pairwise intersections) record a chart in
which both components are coordinate axes through the origin.  The dual
graph is maintained incrementally and certified by unimodularity.

Strict transforms of parametrized branches are carried as exact rational
functions of the parameter, so the resolution loop never loses
precision; the step budget exists to convert non-reduced or
non-primitive inputs into a clean error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf

from . import linalg
from .curves import Curve
from .errors import (
    CenterNotFound,
    CornerAmbiguous,
    InvalidInput,
    NonreducedInput,
    PrecisionExhausted,
)
from .graph import DualGraph, build_intersection
from .polys import RatFun, pclean, pmul, poly2_compose, u_order_in_first
from .mseries import vec_clamp0


@dataclass(frozen=True)
class Chart:
    """One affine chart: polynomial map to the base and visible axes."""

    xmap: dict
    ymap: dict
    divisors: dict  # component id -> "u" | "v"
    step: int


def _shifted_subst(p, pu, pv, first, second):
    """p(pu + first, pv + second) for two-variable substitutions."""
    umap = dict(first)
    if pu:
        umap[(0, 0)] = umap.get((0, 0), Fraction(0)) + pu
    vmap = dict(second)
    if pv:
        vmap[(0, 0)] = vmap.get((0, 0), Fraction(0)) + pv
    return poly2_compose(p, pclean(umap), pclean(vmap))


_S = {(1, 0): Fraction(1)}
_ST = {(1, 1): Fraction(1)}
_T = {(0, 1): Fraction(1)}


class Modification:
    """Immutable snapshot of a blow-up sequence."""

    __slots__ = (
        "charts",
        "self_ints",
        "hosts",
        "cocharts",
        "edges",
        "corners",
        "consumed",
        "nsteps",
    )

    def __init__(self, charts, self_ints, hosts, cocharts, edges, corners, consumed, nsteps):
        self.charts = charts
        self.self_ints = self_ints
        self.hosts = hosts
        self.cocharts = cocharts
        self.edges = edges
        self.corners = corners
        self.consumed = consumed
        self.nsteps = nsteps

    @staticmethod
    def base():
        chart = Chart({(1, 0): Fraction(1)}, {(0, 1): Fraction(1)}, {}, 0)
        return Modification((chart,), (), (), (), frozenset(), {}, {}, 0)

    @property
    def ncomponents(self):
        return len(self.self_ints)

    # -- the single primitive ------------------------------------------------

    def blow_up_at(self, chart_idx, point):
        """Blow up the point of the given chart; returns the new surface."""
        if not (0 <= chart_idx < len(self.charts)):
            raise CenterNotFound("no chart %d" % chart_idx)
        pu, pv = Fraction(point[0]), Fraction(point[1])
        if (pu, pv) in self.consumed.get(chart_idx, ()):
            raise CenterNotFound("point already blown up")
        chart = self.charts[chart_idx]
        through = []
        for comp, axis in sorted(chart.divisors.items()):
            on_axis = pu == 0 if axis == "u" else pv == 0
            if on_axis:
                through.append((comp, axis))
        new = self.ncomponents
        step = self.nsteps + 1
        chart1 = Chart(
            _shifted_subst(chart.xmap, pu, pv, _S, _ST),
            _shifted_subst(chart.ymap, pu, pv, _S, _ST),
            {new: "u", **{c: "v" for c, ax in through if ax == "v"}},
            step,
        )
        chart2 = Chart(
            _shifted_subst(chart.xmap, pu, pv, _ST, _T),
            _shifted_subst(chart.ymap, pu, pv, _ST, _T),
            {new: "v", **{c: "u" for c, ax in through if ax == "u"}},
            step,
        )
        charts = self.charts + (chart1, chart2)
        idx1, idx2 = len(charts) - 2, len(charts) - 1
        self_ints = tuple(
            e - (1 if any(c == i for c, _ in through) else 0)
            for i, e in enumerate(self.self_ints)
        ) + (-1,)
        hosts = self.hosts + (idx1,)
        cocharts = self.cocharts + (idx2,)
        edges = set(self.edges)
        corners = dict(self.corners)
        if len(through) == 2:
            pair = tuple(sorted(c for c, _ in through))
            edges.discard(pair)
            corners.pop(pair, None)
        for c, axis in through:
            edges.add(tuple(sorted((c, new))))
            corner_chart = idx2 if axis == "u" else idx1
            corners[tuple(sorted((c, new)))] = corner_chart
        consumed = {k: set(v) for k, v in self.consumed.items()}
        consumed.setdefault(chart_idx, set()).add((pu, pv))
        out = Modification(
            charts,
            self_ints,
            hosts,
            cocharts,
            frozenset(edges),
            corners,
            consumed,
            step,
        )
        build_intersection(out.graph())  # certify: unimodular tree after every step
        return out

    # -- script-level centers --------------------------------------------------

    def blow_up(self, center):
        """Blow up "origin", {"on": id, "param": q} or {"corner": [i, j]}."""
        if center == "origin":
            if self.nsteps != 0:
                raise CenterNotFound("origin center is only valid as the first step")
            return self.blow_up_at(0, (Fraction(0), Fraction(0)))
        if not isinstance(center, dict):
            raise InvalidInput("malformed center %r" % (center,))
        if "on" in center:
            comp = int(center["on"]) - 1
            if not (0 <= comp < self.ncomponents):
                raise CenterNotFound("no component %s" % center["on"])
            param = Fraction(center["param"])
            host = self.hosts[comp]
            for other, axis in self.charts[host].divisors.items():
                if other != comp and axis == "v" and param == 0:
                    raise CornerAmbiguous(
                        "point is the corner of components %d and %d"
                        % (comp + 1, other + 1)
                    )
            return self.blow_up_at(host, (Fraction(0), param))
        if "corner" in center:
            i, j = center["corner"]
            pair = tuple(sorted((int(i) - 1, int(j) - 1)))
            if pair not in self.corners:
                raise CenterNotFound("no corner %r" % (center["corner"],))
            return self.blow_up_at(self.corners[pair], (Fraction(0), Fraction(0)))
        raise InvalidInput("malformed center %r" % (center,))

    # -- queries ---------------------------------------------------------------

    def graph(self, arrows=()) -> DualGraph:
        return DualGraph(self.self_ints, tuple(sorted(self.edges)), tuple(arrows))

    def lift_to_host(self, comp, g):
        """g composed with the host chart map of the component."""
        chart = self.charts[self.hosts[comp]]
        return poly2_compose(g, chart.xmap, chart.ymap)

    def multiplicity(self, comp, g) -> int:
        """Vanishing order of the lift of g along the component."""
        g = pclean({tuple(e): Fraction(c) for e, c in g.items()})
        if not g:
            raise InvalidInput("the zero polynomial has no multiplicity")
        if not (0 <= comp < self.ncomponents):
            raise CenterNotFound("no component %d" % comp)
        lifted = self.lift_to_host(comp, g)
        order = u_order_in_first(lifted)
        if order is None:
            raise InvalidInput("lift vanished identically; input not a polynomial germ")
        return order

    def multiplicity_vector(self, g):
        return tuple(self.multiplicity(i, g) for i in range(self.ncomponents))


def run_script(doc) -> Modification:
    """Execute a blow-up script document {"steps": [{"center": ...}, ...]}."""
    try:
        steps = doc["steps"]
    except (TypeError, KeyError) as exc:
        raise InvalidInput("malformed script document: %s" % exc) from exc
    m = Modification.base()
    for entry in steps:
        if not isinstance(entry, dict) or "center" not in entry:
            raise InvalidInput("malformed script step %r" % (entry,))
        m = m.blow_up(entry["center"])
    if m.ncomponents == 0:
        raise InvalidInput("script performed no blow-ups")
    return m


# -- divisorial Hilbert oracle ------------------------------------------------


class DivisorialOracle:
    """Jet-rank computer for the divisorial filtration of a modification.

    Conditions for w_i(g) >= w are linear in the jet of g: every
    coefficient of u^j (j < w_i) of the lift to the host chart of E_i
    must vanish.  Monomial lifts are cached per component; a monomial
    contributes only when its exact lift order is below the bound.
    """

    def __init__(self, m: Modification, max_jet: int = 64):
        self.m = m
        self.max_jet = max_jet
        self._ranks = {}
        self._lifts = [dict() for _ in range(m.ncomponents)]
        self.wx = [m.multiplicity(i, {(1, 0): 1}) for i in range(m.ncomponents)]
        self.wy = [m.multiplicity(i, {(0, 1): 1}) for i in range(m.ncomponents)]

    def _lift(self, comp, a, b):
        cache = self._lifts[comp]
        if (a, b) not in cache:
            chart = self.m.charts[self.m.hosts[comp]]
            if a == 0 and b == 0:
                cache[(a, b)] = {(0, 0): Fraction(1)}
            elif a > 0:
                cache[(a, b)] = pmul(self._lift(comp, a - 1, b), chart.xmap)
            else:
                cache[(a, b)] = pmul(self._lift(comp, a, b - 1), chart.ymap)
        return cache[(a, b)]

    def _candidates(self, w, jet_cap):
        s = self.m.ncomponents
        out = []
        for a in range(jet_cap + 1):
            if all(a * self.wx[i] >= w[i] for i in range(s)):
                break
            for b in range(jet_cap + 1 - a):
                if any(a * self.wx[i] + b * self.wy[i] < w[i] for i in range(s)):
                    out.append((a, b))
                else:
                    break
        return sorted(out)

    def _row(self, mono, w):
        a, b = mono
        entries = {}
        for i in range(self.m.ncomponents):
            if a * self.wx[i] + b * self.wy[i] >= w[i]:
                continue
            lift = self._lift(i, a, b)
            for (ue, ve), c in lift.items():
                if ue < w[i]:
                    entries[(i, ue, ve)] = c
        return entries

    def _rank(self, w, jet_cap):
        monos = self._candidates(w, jet_cap)
        rows = [self._row(mn, w) for mn in monos]
        keys = sorted({k for row in rows for k in row})
        pos = {k: idx for idx, k in enumerate(keys)}
        dense = []
        for row in rows:
            vec = [Fraction(0)] * len(keys)
            for k, c in row.items():
                vec[pos[k]] = c
            dense.append(vec)
        return linalg.rank(dense), monos

    def hilbert(self, w) -> int:
        w = vec_clamp0(tuple(w))
        if len(w) != self.m.ncomponents:
            raise InvalidInput("query length != number of components")
        if w in self._ranks:
            return self._ranks[w]
        if all(x == 0 for x in w):
            self._ranks[w] = 0
            return 0
        n0 = max(1, max(w))
        if n0 > self.max_jet:
            raise PrecisionExhausted("jet order %d needed, cap is %d" % (n0, self.max_jet))
        r_prev, monos = self._rank(w, n0)
        stable = 0
        jet = n0
        while stable < 2:
            jet *= 2
            nxt = self._candidates(w, jet)
            if nxt == monos:
                r = r_prev
            else:
                r, _ = self._rank(w, jet)
            stable = stable + 1 if r == r_prev else 0
            monos, r_prev = nxt, r
            if stable < 2 and jet > self.max_jet:
                raise PrecisionExhausted("rank not stable within jet cap %d" % self.max_jet)
        self._ranks[w] = r_prev
        return r_prev


def divisorial_hilbert(m: Modification, w, max_jet: int = 64) -> int:
    return DivisorialOracle(m, max_jet).hilbert(w)


# -- embedded resolution of parametrized plane curves ---------------------------


@dataclass
class _BranchState:
    chart: int
    fu: RatFun
    fv: RatFun

    def point(self):
        return (Fraction(0), self.fv.value_at_zero())


def _lift_state(state: _BranchState, point, idx1, idx2):
    """Strict-transform coordinates after blowing up the state's point."""
    a = state.fu.sub_const(point[0])
    b = state.fv.sub_const(point[1])
    alpha = a.order()
    beta = b.order()
    ao = inf if alpha is None else alpha
    bo = inf if beta is None else beta
    if ao == inf and bo == inf:
        raise InvalidInput("branch degenerated to a constant map")
    if ao <= bo:
        return _BranchState(idx1, a, b.div_exact(a, alpha))
    return _BranchState(idx2, a.div_exact(b, beta), b)


def _classify(m: Modification, state: _BranchState):
    """(point, components through it, multiplicity, contact order with them).

    contact is the maximum vanishing order of a local component equation
    along the branch; 1 means transversal.
    """
    p = state.point()
    chart = m.charts[state.chart]
    through = []
    for comp, axis in sorted(chart.divisors.items()):
        if (axis == "u" and p[0] == 0) or (axis == "v" and p[1] == 0):
            through.append((comp, axis))
    du = state.fu.sub_const(p[0]).order()
    dv = state.fv.sub_const(p[1]).order()
    du = inf if du is None else du
    dv = inf if dv is None else dv
    mult = min(du, dv)
    contact = 0
    for _, axis in through:
        contact = max(contact, du if axis == "u" else dv)
    return p, through, mult, contact


def auto_resolve(curve: Curve, max_steps: int = 64):
    """Embedded resolution of a parametrized plane curve.

    Repeatedly blows up every point where a branch is singular, meets a
    corner, meets its component non-transversally, or collides with
    another branch; stops when the total transform has normal crossings.
    Returns (modification, dual graph with one arrow per branch, attach
    tuple).
    """
    if curve.ambient_dim != 2:
        raise InvalidInput("resolution needs a plane curve (ambient dimension 2)")
    for i in range(curve.nbranches):
        for j in range(i + 1, curve.nbranches):
            if curve.branches[i] == curve.branches[j]:
                raise NonreducedInput("branches %d and %d coincide" % (i + 1, j + 1))

    m = Modification.base()
    states = [
        _BranchState(0, RatFun.from_poly(b.coords[0]), RatFun.from_poly(b.coords[1]))
        for b in curve.branches
    ]

    steps = 0
    while True:
        # collect offending centers as (chart, point), deduplicated
        offenders = {}
        done = True
        seen_points = {}
        for bi, st in enumerate(states):
            p, through, mult, contact = _classify(m, st)
            key = (st.chart, p)
            bad = (
                not through
                or len(through) == 2
                or mult > 1
                or contact > 1
            )
            if key in seen_points:
                bad = True  # two branches at one point
            seen_points.setdefault(key, []).append(bi)
            if bad:
                done = False
                offenders[key] = True
        if done:
            break
        if steps >= max_steps:
            raise PrecisionExhausted(
                "resolution did not terminate within %d blow-ups "
                "(non-reduced or non-primitive input?)" % max_steps
            )
        center = sorted(offenders)[0]
        chart_idx, point = center
        m = m.blow_up_at(chart_idx, point)
        idx1, idx2 = len(m.charts) - 2, len(m.charts) - 1
        states = [
            _lift_state(st, point, idx1, idx2)
            if (st.chart, st.point()) == center
            else st
            for st in states
        ]
        steps += 1

    arrows = []
    for st in states:
        _, through, _, _ = _classify(m, st)
        arrows.append(through[0][0])
    graph = m.graph(tuple(arrows))
    return m, graph, tuple(arrows)
