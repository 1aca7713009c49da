"""Dual graphs of modifications of (C^2, 0) and their intersection data.

A dual graph is a tree of exceptional components with negative
self-intersections, plus optional arrows marking where strict transforms
of curve branches attach.  Intersection data is the matrix A together
with M = -A^{-1}, whose rows are the exponent vectors driving every
closed formula downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InternalInconsistency, InvalidInput, NotBlowupGraph, NotUnimodular


@dataclass(frozen=True)
class DualGraph:
    """Vertices (self-intersections), tree edges, arrows (0-based attach)."""

    self_ints: tuple
    edges: tuple
    arrows: tuple = ()

    def __post_init__(self):
        s = len(self.self_ints)
        if s == 0:
            raise InvalidInput("graph needs at least one vertex")
        if any(e >= 0 for e in self.self_ints):
            raise InvalidInput("all self-intersections must be negative")
        seen = set()
        parent = list(range(s))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (i, j) in self.edges:
            if not (0 <= i < j < s):
                raise InvalidInput("edge %r out of range or unordered" % ((i, j),))
            if (i, j) in seen:
                raise InvalidInput("duplicate edge %r" % ((i, j),))
            seen.add((i, j))
            ri, rj = find(i), find(j)
            if ri == rj:
                raise InvalidInput("graph has a cycle through %r" % ((i, j),))
            parent[ri] = rj
        if len(self.edges) != s - 1:
            raise InvalidInput("graph is not connected")
        for k in self.arrows:
            if not (0 <= k < s):
                raise InvalidInput("arrow attach %r out of range" % (k,))

    @property
    def nvertices(self):
        return len(self.self_ints)

    def degree(self, i):
        return sum(1 for (a, b) in self.edges if i in (a, b))

    def arrow_count(self, i):
        return sum(1 for k in self.arrows if k == i)

    def to_json(self):
        return {
            "vertices": [{"self_int": e} for e in self.self_ints],
            "edges": [[i + 1, j + 1] for (i, j) in self.edges],
            "arrows": [{"attach": k + 1} for k in self.arrows],
        }

    @staticmethod
    def from_json(doc):
        try:
            self_ints = tuple(int(v["self_int"]) for v in doc["vertices"])
            edges = tuple(
                tuple(sorted((int(i) - 1, int(j) - 1))) for (i, j) in doc.get("edges", [])
            )
            arrows = tuple(int(a["attach"]) - 1 for a in doc.get("arrows", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput("malformed graph document: %s" % exc) from exc
        return DualGraph(self_ints, edges, arrows)


class IntersectionData:
    """A, M = -A^{-1} and the rows m_i, all exact integers."""

    __slots__ = ("A", "M")

    def __init__(self, A, M):
        self.A = A
        self.M = M

    @property
    def size(self):
        return len(self.M)

    def row(self, i):
        return self.M[i]


def build_intersection(g: DualGraph) -> IntersectionData:
    """Intersection matrix and its certified positive integral -inverse."""
    s = g.nvertices
    A = [[0] * s for _ in range(s)]
    for i in range(s):
        A[i][i] = g.self_ints[i]
    for (i, j) in g.edges:
        A[i][j] = 1
        A[j][i] = 1
    det, inv = linalg.det_and_inverse(A)
    if inv is None or abs(det) != 1:
        raise NotUnimodular("intersection determinant is %s, not +-1" % det)
    M = []
    for i in range(s):
        row = []
        for j in range(s):
            x = -inv[i][j]
            if x.denominator != 1:
                raise NotBlowupGraph("entry m[%d][%d] = %s not integral" % (i, j, x))
            if x <= 0:
                raise NotBlowupGraph("entry m[%d][%d] = %s not positive" % (i, j, x))
            row.append(int(x))
        M.append(tuple(row))
    for i in range(s):
        for j in range(i):
            if M[i][j] != M[j][i]:
                raise NotBlowupGraph("inverse not symmetric")
    return IntersectionData(tuple(tuple(r) for r in A), tuple(M))


def chi_open(g: DualGraph, i: int) -> int:
    """Euler characteristic of E_i minus edge and arrow attachment points."""
    return 2 - g.degree(i) - g.arrow_count(i)


def chi_bullet(g: DualGraph, i: int) -> int:
    """Euler characteristic of E_i minus the other exceptional components."""
    return 2 - g.degree(i)


def w_of_nhat(d: IntersectionData, nhat) -> tuple:
    """sum_i nhat_i * m_i, the multiplicity vector of the weighted divisor."""
    s = d.size
    if len(nhat) != s:
        raise InvalidInput("nhat must have length %d" % s)
    return tuple(sum(nhat[i] * d.M[i][j] for i in range(s)) for j in range(s))


def hoskin_deligne(d: IntersectionData, g: DualGraph, nhat) -> int:
    """Codimension of the divisorial subspace at the semigroup point w(nhat).

    Computed as -(D.D + D.K)/2 with D = -sum nhat_i E*_i and K the
    canonical divisor, using E*_i . E*_j = -m_ij.
    """
    s = d.size
    if len(nhat) != s:
        raise InvalidInput("nhat must have length %d" % s)
    quad = sum(
        d.M[i][j] * nhat[i] * nhat[j] for i in range(s) for j in range(s)
    )
    lin = sum(
        nhat[i] * sum(d.M[i][j] * (2 + g.self_ints[j]) for j in range(s))
        for i in range(s)
    )
    total = Fraction(quad + lin, 2)
    if total.denominator != 1:
        raise InternalInconsistency("half-sum %s is not an integer" % total)
    value = int(total)
    if value < 0:
        raise InternalInconsistency("negative codimension %d" % value)
    return value
