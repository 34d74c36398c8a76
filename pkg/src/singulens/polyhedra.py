"""Exact rational polyhedra ``conv(points) + cone(rays)``.

The V- to H-conversion runs the double description method on the
homogenization: a point ``p`` becomes the generator ``(p, 1)`` and a ray ``r``
the generator ``(r, 0)``. The facets of the homogenized cone are the extreme
rays of its dual ``{y : <g, y> >= 0}``, which is what ``_double_description``
enumerates. Only full-dimensional, pointed polyhedra are supported; every
Newton polyhedron is of that kind because its recession cone is.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering
from math import factorial, gcd

from .errors import (
    DimensionMismatch,
    InfiniteCovolume,
    NonStronglyConvexCone,
    NotFullDimensional,
    UnsupportedCone,
)
from .lattice import clear_denominators, det, dot, primitive, rank


@total_ordering
class _Infinite:
    """Sentinel for an unattained scale; compares above every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("singulens.INFINITE")

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


def as_vector(v):
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True, order=True)
class Facet:
    """The inequality ``<normal, x> >= offset`` with a primitive integer normal."""

    normal: tuple
    offset: Fraction

    def value(self, x):
        return dot(self.normal, x)

    def holds(self, x):
        return self.value(x) >= self.offset

    def tight(self, x):
        return self.value(x) == self.offset


@dataclass(frozen=True)
class Face:
    defining_facets: frozenset
    vertices: tuple
    rays: tuple
    dim: int

    @property
    def compact(self):
        return not self.rays


def _double_description(constraints, d):
    """Extreme rays and lineality basis of ``{y in R^d : <a, y> >= 0 for a in constraints}``.

    All vectors are integer tuples; rays come back primitive.
    """
    lin = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays = []  # (vector, frozenset of tight constraint indices)
    for idx, a in enumerate(constraints):
        j = next((i for i, l in enumerate(lin) if dot(a, l) != 0), None)
        if j is not None:
            l0 = lin.pop(j)
            s0 = dot(a, l0)
            if s0 < 0:
                l0 = tuple(-x for x in l0)
                s0 = -s0
            lin = [
                primitive(tuple(s0 * x - dot(a, l) * y for x, y in zip(l, l0)))
                for l in lin
            ]
            rays = [
                (primitive(tuple(s0 * x - dot(a, r) * y for x, y in zip(r, l0))), z | {idx})
                for r, z in rays
            ]
            rays.append((l0, frozenset(range(idx))))
            continue

        pos, neg, zero = [], [], []
        for k, (r, z) in enumerate(rays):
            s = dot(a, r)
            (pos if s > 0 else neg if s < 0 else zero).append((k, r, z, s))
        need = d - len(lin) - 2
        new = [(r, z) for _, r, z, _ in pos]
        new += [(r, z | {idx}) for _, r, z, _ in zero]
        if pos and neg:
            for kp, p, zp, sp in pos:
                for kq, q, zq, sq in neg:
                    common = zp & zq
                    if len(common) < need:
                        continue
                    if any(
                        common <= z for k, (_, z) in enumerate(rays) if k != kp and k != kq
                    ):
                        continue
                    w = primitive(tuple(sp * x - sq * y for x, y in zip(q, p)))
                    new.append((w, common | {idx}))
        rays = new
    return [r for r, _ in rays], lin


class Polyhedron:
    """Full-dimensional pointed polyhedron with exact V- and H-data.

    Attributes:
        dim: ambient dimension.
        vertices: sorted tuple of Fraction tuples.
        rays: sorted tuple of primitive integer tuples (extreme rays of the
            recession cone).
        facets: sorted tuple of irredundant :class:`Facet`.
    """

    def __init__(self, dim, vertices, rays, facets):
        self.dim = dim
        self.vertices = tuple(sorted(vertices))
        self.rays = tuple(sorted(rays))
        self.facets = tuple(sorted(facets))

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"Polyhedron(dim={self.dim}, vertices=[{verts}], rays={list(self.rays)})"

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.dim == other.dim and self.facets == other.facets

    def __hash__(self):
        return hash((self.dim, self.facets))

    def dilate(self, b):
        """``b * P`` for a positive rational ``b``."""
        b = Fraction(b)
        if b <= 0:
            raise ValueError("dilation factor must be positive")
        return Polyhedron(
            self.dim,
            [tuple(b * x for x in v) for v in self.vertices],
            self.rays,
            [Facet(f.normal, f.offset * b) for f in self.facets],
        )

    def _incidence(self):
        inc = []
        for f in self.facets:
            vs = frozenset(i for i, v in enumerate(self.vertices) if f.tight(v))
            rs = frozenset(j for j, r in enumerate(self.rays) if dot(f.normal, r) == 0)
            inc.append((vs, rs))
        return inc

    @cached_property
    def faces(self):
        """All nonempty faces, the polyhedron itself included, sorted by dimension."""
        inc = self._incidence()
        found = set()
        frontier = {vr for vr in inc if vr[0]}
        found |= frontier
        while frontier:
            nxt = set()
            for vs, rs in frontier:
                for fvs, frs in inc:
                    cand = (vs & fvs, rs & frs)
                    if cand[0] and cand not in found:
                        nxt.add(cand)
            found |= nxt
            frontier = nxt
        found.add((frozenset(range(len(self.vertices))), frozenset(range(len(self.rays)))))
        faces = []
        for vs, rs in found:
            gens = [tuple(v) + (1,) for v in (self.vertices[i] for i in vs)]
            gens += [tuple(r) + (0,) for r in (self.rays[j] for j in rs)]
            defining = frozenset(
                k for k, (fvs, frs) in enumerate(inc) if vs <= fvs and rs <= frs
            )
            faces.append(
                Face(
                    defining_facets=defining,
                    vertices=tuple(self.vertices[i] for i in sorted(vs)),
                    rays=tuple(self.rays[j] for j in sorted(rs)),
                    dim=rank(gens) - 1,
                )
            )
        faces.sort(key=lambda F: (F.dim, F.vertices, F.rays))
        return tuple(faces)


def hull_with_recession(points, cone_rays):
    """Convex hull of ``points`` plus the cone spanned by ``cone_rays``."""
    points = [as_vector(p) for p in points]
    cone_rays = [tuple(int(x) for x in r) for r in cone_rays]
    if not points:
        raise ValueError("at least one point is required")
    n = len(points[0])
    if any(len(p) != n for p in points) or any(len(r) != n for r in cone_rays):
        raise DimensionMismatch("points and rays must share one dimension")

    pts = sorted(set(points))
    rys = sorted({primitive(r) for r in cone_rays if any(r)})
    gens = [clear_denominators(p + (1,)) for p in pts] + [r + (0,) for r in rys]
    d = n + 1
    duals, lin = _double_description(gens, d)
    if lin:
        raise NotFullDimensional("the hull is not full-dimensional")
    interior = [sum(col) for col in zip(*duals)]
    if any(dot(g, interior) <= 0 for g in gens):
        raise NonStronglyConvexCone("recession cone contains a line")

    facets = []
    for y in duals:
        a, c = y[:n], y[n]
        if not any(a):
            continue
        g = 0
        for x in a:
            g = gcd(g, x)
        facets.append(Facet(tuple(x // g for x in a), Fraction(-c, g)))

    def extreme(gen):
        tight = [y for y in duals if dot(y, gen) == 0]
        return rank(tight) == d - 1

    vertices = [p for p, g in zip(pts, gens) if extreme(g)]
    rays = [r for r in rys if extreme(r + (0,))]
    return Polyhedron(n, vertices, rays, facets)


def _check_dim(P, q):
    if len(q) != P.dim:
        raise DimensionMismatch(f"point of dimension {len(q)} for polyhedron of dimension {P.dim}")


def contains(P, q):
    q = as_vector(q)
    _check_dim(P, q)
    return all(f.holds(q) for f in P.facets)


def compact_faces(P):
    return tuple(F for F in P.faces if F.compact)


def axis_scale(P, v):
    """``min{t >= 0 : t*v in P}`` or ``INFINITE``."""
    v = as_vector(v)
    _check_dim(P, v)
    if not any(v):
        raise ValueError("direction must be nonzero")
    lo, hi = Fraction(0), None
    for f in P.facets:
        s = f.value(v)
        if s > 0:
            lo = max(lo, f.offset / s)
        elif s == 0:
            if f.offset > 0:
                return INFINITE
        else:
            bound = f.offset / s
            hi = bound if hi is None else min(hi, bound)
    if hi is not None and lo > hi:
        return INFINITE
    return lo


def _facets_of_face(P, F):
    vs = set(F.vertices)
    return [G for G in P.faces if G.dim == F.dim - 1 and G.compact and set(G.vertices) <= vs]


def triangulate(P, F):
    """Pulling triangulation of a compact face into simplices (vertex tuples)."""
    if F.dim == 0:
        return [F.vertices]
    if len(F.vertices) == F.dim + 1:
        return [F.vertices]
    v0 = F.vertices[0]
    out = []
    for G in _facets_of_face(P, F):
        if v0 in G.vertices:
            continue
        for s in triangulate(P, G):
            out.append((v0,) + tuple(s))
    return out


def standard_rays(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def covolume(P):
    """Volume of ``orthant minus P`` for a polyhedron with orthant recession cone."""
    n = P.dim
    if set(P.rays) != set(standard_rays(n)):
        raise UnsupportedCone("covolume needs the standard orthant as recession cone")
    for e in standard_rays(n):
        if axis_scale(P, e) is INFINITE:
            raise InfiniteCovolume(f"polyhedron never meets the axis {e}")
    if contains(P, (0,) * n):
        return Fraction(0)
    total = Fraction(0)
    for F in compact_faces(P):
        if F.dim != n - 1:
            continue
        for simplex in triangulate(P, F):
            total += abs(det(simplex))
    return total / factorial(n)


def pointed_cone_rays(rays):
    """Extreme rays of ``cone(rays)`` (primitive), via the polyhedron apex-at-origin."""
    n = len(rays[0])
    P = hull_with_recession([(0,) * n], rays)
    return P.rays


def dual_rays(rays):
    """Primitive generators of ``{u : <u, r> >= 0 for r in rays}`` for a full, pointed cone."""
    n = len(rays[0])
    duals, lin = _double_description([tuple(r) for r in rays], n)
    if lin:
        raise NotFullDimensional("cone is not full-dimensional")
    return tuple(sorted(duals))


__all__ = [
    "INFINITE",
    "Face",
    "Facet",
    "Polyhedron",
    "axis_scale",
    "compact_faces",
    "contains",
    "covolume",
    "dual_rays",
    "hull_with_recession",
    "pointed_cone_rays",
    "standard_rays",
    "triangulate",
]
