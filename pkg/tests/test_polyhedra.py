from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from singulens.errors import (
    DimensionMismatch,
    InfiniteCovolume,
    NonStronglyConvexCone,
    UnsupportedCone,
)
from singulens.polyhedra import (
    INFINITE,
    Facet,
    axis_scale,
    compact_faces,
    contains,
    covolume,
    hull_with_recession,
    standard_rays,
)

Q2 = standard_rays(2)


def newton(points, n=None):
    n = n or len(points[0])
    return hull_with_recession(points, standard_rays(n))


def facet_set(P):
    return {(f.normal, f.offset) for f in P.facets}


def lp_member(points, rays, q):
    """Independent oracle: is q a convex combination of points plus a cone combination of rays?"""
    pts = np.array(points, dtype=float).T
    rys = np.array(rays, dtype=float).T if rays else np.zeros((len(q), 0))
    A_eq = np.vstack([np.hstack([pts, rys]), np.hstack([np.ones(pts.shape[1]), np.zeros(rys.shape[1])])])
    b_eq = np.append(np.array(q, dtype=float), 1.0)
    res = linprog(np.zeros(A_eq.shape[1]), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status == 0


def shoelace(poly):
    """Independent oracle: area of a simple polygon."""
    s = Fraction(0)
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        s += Fraction(x1) * y2 - Fraction(x2) * y1
    return abs(s) / 2


# -- hull_with_recession ----------------------------------------------------------


def test_hull_two_points():
    P = newton([(3, 0), (0, 2)])
    assert P.vertices == ((0, 2), (3, 0))
    # the only facet not through the origin is 2x + 3y >= 6
    assert {f for f in facet_set(P) if f[1] != 0} == {((2, 3), 6)}
    assert facet_set(P) == {((2, 3), 6), ((1, 0), 0), ((0, 1), 0)}


def test_hull_translated_orthant():
    P = newton([(1, 1)])
    assert P.vertices == ((1, 1),)
    assert facet_set(P) == {((1, 0), 1), ((0, 1), 1)}


def test_hull_three_points():
    pts = [(3, 0), (1, 1), (0, 3)]
    P = newton(pts)
    assert set(P.vertices) == set(pts)
    assert {f for f in facet_set(P) if f[1] != 0} == {((1, 2), 3), ((2, 1), 3)}
    for q in [(x, y) for x in range(5) for y in range(5)]:
        assert contains(P, q) == lp_member(pts, list(Q2), q)


def test_hull_drops_interior_points():
    P = newton([(3, 0), (0, 3), (2, 2), (3, 3)])
    assert P.vertices == ((0, 3), (3, 0))


def test_hull_rational_points():
    P = newton([(Fraction(1, 2), 0), (0, Fraction(1, 3))])
    assert P.vertices == ((0, Fraction(1, 3)), (Fraction(1, 2), 0))
    assert ((2, 3), 1) in facet_set(P)


def test_hull_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        hull_with_recession([(1, 0), (1, 0, 0)], Q2)
    with pytest.raises(DimensionMismatch):
        hull_with_recession([(1, 0)], [(1, 0, 0)])


def test_hull_rejects_line():
    with pytest.raises(NonStronglyConvexCone):
        hull_with_recession([(0, 0)], [(1, 0), (-1, 0), (0, 1)])


# -- contains ----------------------------------------------------------------------


def test_contains_examples():
    assert contains(newton([(3, 0), (0, 2)]), (3, 0))
    P = newton([(3, 0), (0, 3), (1, 1)])
    assert not contains(P, (2, 0))
    assert contains(P, (2, 1))


def test_contains_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        contains(newton([(1, 1)]), (1, 1, 1))


# -- faces -------------------------------------------------------------------------


def test_compact_faces_counts():
    assert len(compact_faces(newton([(3, 0), (0, 2)]))) == 3
    faces = compact_faces(newton([(1, 1)]))
    assert len(faces) == 1 and faces[0].vertices == ((1, 1),)
    simplex = newton([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    dims = sorted(F.dim for F in compact_faces(simplex))
    assert dims == [0, 0, 0, 1, 1, 1, 2]


def test_face_records_are_consistent():
    P = newton([(4, 0, 0), (0, 3, 0), (0, 0, 2), (1, 1, 1)])
    for F in P.faces:
        assert F.compact == (not F.rays)
        for v in F.vertices:
            assert all(P.facets[i].tight(v) for i in F.defining_facets)


# -- axis_scale ----------------------------------------------------------------------


def test_axis_scale_examples():
    P = newton([(3, 0), (0, 2)])
    assert axis_scale(P, (1, 0)) == 3
    assert axis_scale(P, (0, 1)) == 2
    assert axis_scale(newton([(1, 1)]), (1, 0)) is INFINITE


def test_axis_scale_diagonal_direction():
    P = newton([(3, 0), (0, 3), (1, 1)])
    assert axis_scale(P, (1, 1)) == 1
    assert axis_scale(P, (2, 1)) == Fraction(3, 4)
    assert axis_scale(P, (1, 3)) == Fraction(3, 5)


# -- covolume ------------------------------------------------------------------------


def test_covolume_examples():
    assert covolume(newton([(3, 0), (0, 2)])) == 3
    assert covolume(newton([(3, 0), (0, 3), (1, 1)])) == 3
    assert covolume(newton([(3, 0), (0, 3), (1, 1)])) == shoelace([(0, 0), (3, 0), (1, 1), (0, 3)])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("a", [1, 2, 3])
def test_covolume_simplex(n, a):
    pts = [tuple(a * int(i == j) for j in range(n)) for i in range(n)]
    assert covolume(newton(pts, n)) == Fraction(a**n, factorial(n))


def test_covolume_errors():
    with pytest.raises(InfiniteCovolume):
        covolume(newton([(1, 1)]))
    with pytest.raises(UnsupportedCone):
        covolume(hull_with_recession([(1, 0)], [(1, 0), (1, 2)]))


def test_covolume_contains_origin():
    assert covolume(newton([(0, 0), (1, 1)])) == 0


# -- properties --------------------------------------------------------------------

coord = st.integers(min_value=0, max_value=6)


@st.composite
def newton_points(draw, n=None, convenient=False):
    n = n or draw(st.sampled_from([2, 3]))
    pts = draw(st.lists(st.tuples(*[coord] * n), min_size=1, max_size=5))
    pts = [p for p in pts if any(p)] or [(1,) * n]
    if convenient:
        for i in range(n):
            pts.append(tuple(draw(st.integers(1, 6)) if j == i else 0 for j in range(n)))
    return pts


@settings(max_examples=40, deadline=None)
@given(newton_points())
def test_idempotence(pts):
    P = newton(pts)
    Q = hull_with_recession(P.vertices, P.rays)
    assert Q.vertices == P.vertices and Q.facets == P.facets


@settings(max_examples=40, deadline=None)
@given(newton_points())
def test_vertex_and_ray_invariants(pts):
    P = newton(pts)
    for v in P.vertices:
        assert all(f.holds(v) for f in P.facets)
        assert sum(f.tight(v) for f in P.facets) >= P.dim
    for f in P.facets:
        assert all(sum(a * b for a, b in zip(f.normal, r)) >= 0 for r in P.rays)


@settings(max_examples=40, deadline=None)
@given(newton_points())
def test_up_closed(pts):
    P = newton(pts)
    for v in P.vertices:
        for r in P.rays:
            for t in (1, 7, 1000):
                assert contains(P, tuple(x + t * y for x, y in zip(v, r)))


@settings(max_examples=25, deadline=None)
@given(newton_points(), st.randoms(use_true_random=False))
def test_h_v_agreement(pts, rnd):
    P = newton(pts)
    n = P.dim
    for _ in range(100):
        w = [Fraction(rnd.randint(0, 20)) for _ in P.vertices]
        if not any(w):
            w[0] = Fraction(1)
        total = sum(w)
        q = [sum(wi * v[j] for wi, v in zip(w, P.vertices)) / total for j in range(n)]
        for r in P.rays:
            t = Fraction(rnd.randint(0, 30), rnd.randint(1, 5))
            q = [a + t * b for a, b in zip(q, r)]
        assert contains(P, q)
    failing = 0
    for _ in range(300):
        q = tuple(Fraction(rnd.randint(-2, 14), rnd.randint(1, 3)) for _ in range(n))
        if not contains(P, q):
            failing += 1
            assert not lp_member(P.vertices, list(P.rays), q)
        else:
            assert lp_member(P.vertices, list(P.rays), q)
    assert failing > 0


@settings(max_examples=30, deadline=None)
@given(newton_points(), st.integers(1, 4), st.lists(st.fractions(0, 20, max_denominator=5), min_size=3, max_size=3))
def test_dilation_law(pts, b, q):
    P = newton(pts)
    q = tuple(q[: P.dim])
    bP = hull_with_recession([tuple(b * Fraction(x) for x in v) for v in P.vertices], P.rays)
    assert bP == P.dilate(b)
    assert contains(bP, q) == contains(P, tuple(x / b for x in q))


@settings(max_examples=30, deadline=None)
@given(newton_points(convenient=True), st.sampled_from([1, 2, 3]))
def test_covolume_scaling(pts, b):
    P = newton(pts)
    bP = hull_with_recession([tuple(b * x for x in v) for v in P.vertices], P.rays)
    assert covolume(bP) == b**P.dim * covolume(P)


@settings(max_examples=30, deadline=None)
@given(newton_points(n=2, convenient=True))
def test_covolume_matches_shoelace(pts):
    P = newton(pts)
    # boundary staircase ordered by x, closed through the origin
    chain = sorted(P.vertices)
    poly = [(0, 0), (max(v[0] for v in chain), 0)] + sorted(chain, key=lambda v: (-v[0], v[1]))
    poly += [(0, max(v[1] for v in chain))]
    dedup = []
    for p in poly:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if dedup[0] == dedup[-1]:
        dedup.pop()
    assert covolume(P) == shoelace(dedup)


@settings(max_examples=40, deadline=None)
@given(newton_points(convenient=True))
def test_axis_scale_is_boundary(pts):
    P = newton(pts)
    eps = Fraction(1, 1000)
    for i in range(P.dim):
        e = tuple(Fraction(int(i == j)) for j in range(P.dim))
        t = axis_scale(P, e)
        assert t is not INFINITE
        assert contains(P, tuple((t + eps) * x for x in e))
        if t > 0:
            assert not contains(P, tuple((t - eps) * x for x in e))


def test_facet_is_canonical():
    f = Facet((2, 3), Fraction(6))
    assert f.holds((3, 0)) and f.tight((0, 2)) and not f.holds((1, 1))
    P1 = newton([(3, 0), (0, 2)])
    P2 = newton([(3, 0), (0, 2), (3, 2), (6, 0)])
    assert P1 == P2 and hash(P1) == hash(P2)
