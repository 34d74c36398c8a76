"""Numeric invariants of ideals in O_n: Lojasiewicz exponents, multiplicity, colength.

Each polyhedral formula has an independent counterpart computed from the
definition: ``loj0_oracle`` searches pairs ``(a, b)`` directly and
``hilbert_fit`` counts colengths of powers ``I^k`` and reads off the leading
coefficient of the Hilbert-Samuel polynomial.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial

import numpy as np

from .errors import (
    BoundTooSmall,
    HypothesisNotMet,
    InfiniteColength,
    NondegeneracyUnknown,
    NonIntegerResult,
    NonStabilized,
    NotConvenient,
    RangeTooShort,
)
from .germ import Germ
from .ideals import Ideal, finite_colength_test, is_nondegenerate, order
from .polyhedra import INFINITE, axis_scale, compact_faces, covolume, hull_with_recession
from .torus import torus_solvable

EXACT, ORACLE, REFUSED = "ExactPolyhedral", "Oracle", "Refused"
UNKNOWN = "Unknown"
LOJ_ORACLE_BOUND = 24


def _require_affine(I, what):
    if I.is_toric:
        raise HypothesisNotMet(f"{what} is only computed on C^n, not on a toric variety")


def _require_polyhedral(I, seed=0):
    if I.is_monomial:
        return
    v = is_nondegenerate(I, seed)
    if not v.exact:
        raise NondegeneracyUnknown(f"non-degeneracy only known heuristically ({v})")
    if not v.value:
        raise HypothesisNotMet("the ideal is Newton degenerate")


def _require_monomial(I, what):
    if not I.is_monomial:
        raise HypothesisNotMet(f"{what} needs a monomial ideal")


def _unit_vectors(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


# -- Lojasiewicz exponents ------------------------------------------------------


def loj0(I, seed=0):
    """``L0(I)``: the largest axis scale of the Newton polyhedron, or INFINITE."""
    _require_affine(I, "L0")
    _require_polyhedral(I, seed)
    P = I.newton
    scales = [axis_scale(P, e) for e in _unit_vectors(I.n)]
    return max(scales)


def _minimal_sum_a(n, a):
    # all exponent vectors with coordinate sum a, as an int64 array
    rows = []
    for combo in combinations_with_replacement(range(n), a):
        k = [0] * n
        for i in combo:
            k[i] += 1
        rows.append(k)
    return np.array(rows, dtype=np.int64)


def loj0_oracle(I, bound=LOJ_ORACLE_BOUND):
    """Smallest ``a/b`` with ``1 <= a, b <= bound`` and ``m^a`` inside ``b * Gamma+(I)``.

    Every exponent of degree ``a`` is tested against every facet of the
    dilated polyhedron.
    """
    _require_affine(I, "L0")
    _require_monomial(I, "the L0 oracle")
    if not finite_colength_test(I):
        raise InfiniteColength("L0 is infinite for an ideal of infinite colength")
    P = I.newton
    normals = np.array([f.normal for f in P.facets], dtype=np.int64)
    offsets = [f.offset for f in P.facets]
    best = None
    for a in range(1, bound + 1):
        values = _minimal_sum_a(I.n, a) @ normals.T
        lowest = values.min(axis=0)
        for b in range(1, bound + 1):
            if all(int(lo) >= b * off for lo, off in zip(lowest, offsets)):
                ratio = Fraction(a, b)
                if best is None or ratio < best:
                    best = ratio
    if best is None:
        raise BoundTooSmall(f"no pair a, b <= {bound} works")
    return best


def lojJ(I, J, seed=0):
    """``L_J(I)``: the largest scale taking a vertex of Gamma+(J) into Gamma+(I)."""
    _require_affine(I, "L_J")
    if I.vars != J.vars or I.context != J.context:
        raise HypothesisNotMet("I and J must share one ambient ring")
    _require_polyhedral(I, seed)
    _require_polyhedral(J, seed)
    P = I.newton
    best = Fraction(0)
    for v in J.newton.vertices:
        if not any(v):
            continue
        s = axis_scale(P, v)
        if s is INFINITE:
            return INFINITE
        best = max(best, s)
    return best


def _monomial_exponents(I):
    return [next(iter(f.terms)) for f in I.flattened]


def lojJ_oracle(I, J, bound=12):
    """Smallest ``a/b`` with every generator exponent of ``J^a`` in ``b * Gamma+(I)``."""
    _require_affine(I, "L_J")
    _require_monomial(I, "the L_J oracle")
    _require_monomial(J, "the L_J oracle")
    P = I.newton
    gens = np.array(_monomial_exponents(J), dtype=np.int64)
    normals = np.array([f.normal for f in P.facets], dtype=np.int64)
    power = np.zeros((1, I.n), dtype=np.int64)
    best = None
    for a in range(1, bound + 1):
        power = _minimalize(_minkowski(power, gens))
        lowest = (power @ normals.T).min(axis=0)
        for b in range(1, bound + 1):
            if all(int(lo) >= b * f.offset for lo, f in zip(lowest, P.facets)):
                ratio = Fraction(a, b)
                if best is None or ratio < best:
                    best = ratio
    if best is None:
        raise BoundTooSmall(f"no pair a, b <= {bound} works")
    return best


# -- monomial staircases --------------------------------------------------------


def _minkowski(A, B):
    return (A[:, None, :] + B[None, :, :]).reshape(-1, A.shape[1])


def _minimalize(E, block=512):
    """Minimal elements of a set of exponent vectors under divisibility."""
    E = np.unique(E, axis=0)
    keep = np.ones(len(E), dtype=bool)
    for start in range(0, len(E), block):
        rows = E[start : start + block]
        # divides[i, j]: E[j] divides rows[i]; rows are distinct, so j != i means a proper divisor
        divides = np.all(E[None, :, :] <= rows[:, None, :], axis=2)
        idx = np.arange(len(rows))
        divides[idx, start + idx] = False
        keep[start : start + len(rows)] = ~divides.any(axis=1)
    return E[keep]


def _staircase_colength(E):
    """Number of exponents outside the monomial ideal generated by the rows of E."""
    n = E.shape[1]
    box = []
    for i in range(n):
        pure = [row[i] for row in E if not np.any(np.delete(row, i))]
        if not pure:
            raise InfiniteColength(f"no pure power of variable {i + 1}")
        box.append(int(min(pure)))
    grid = np.zeros(box, dtype=bool)
    for row in E:
        if np.all(row < box):
            grid[tuple(row)] = True
    for axis in range(n):
        grid = np.logical_or.accumulate(grid, axis=axis)
    return int(grid.size - grid.sum())


def colength_monomial(I):
    """``dim O_n / I`` for a monomial ideal, by counting the staircase."""
    _require_affine(I, "colength")
    _require_monomial(I, "colength counting")
    return _staircase_colength(np.array(_monomial_exponents(I), dtype=np.int64))


def power_exponents(I, k):
    """Minimal generator exponents of ``I^k`` for a monomial ideal."""
    _require_monomial(I, "monomial powers")
    gens = _minimalize(np.array(_monomial_exponents(I), dtype=np.int64))
    out = np.zeros((1, I.n), dtype=np.int64)
    for _ in range(k):
        out = _minimalize(_minkowski(out, gens))
    return out


def monomial_ideal(exponents, context=None):
    exponents = [tuple(int(x) for x in e) for e in exponents]
    n = len(exponents[0])
    return Ideal([Germ({e: 1}, n, context) for e in exponents], context)


def hilbert_fit(I, k_range):
    """Multiplicity from colengths of ``I^k`` for consecutive ``k`` in ``k_range``.

    The last ``n + 1`` values fix the degree-n Hilbert-Samuel polynomial; its
    leading coefficient times ``n!`` is the n-th finite difference. Earlier
    values in the range must agree with the polynomial.
    """
    _require_affine(I, "multiplicity")
    _require_monomial(I, "the Hilbert-Samuel fit")
    lo, hi = k_range
    n = I.n
    ks = list(range(lo, hi + 1))
    if lo < 1 or len(ks) < n + 1:
        raise RangeTooShort(f"need at least {n + 1} consecutive powers, got {len(ks)}")
    gens = _minimalize(np.array(_monomial_exponents(I), dtype=np.int64))
    power = np.zeros((1, n), dtype=np.int64)
    lengths = {}
    for k in range(1, hi + 1):
        power = _minimalize(_minkowski(power, gens))
        if k >= lo:
            lengths[k] = _staircase_colength(power)
    tail = ks[-(n + 1):]
    e = 0
    for j, k in enumerate(tail):
        e += (-1) ** (n - j) * _binomial(n, j) * lengths[k]
    for k in ks[: -(n + 1)]:
        predicted = _lagrange(tail, [lengths[t] for t in tail], k)
        if predicted != lengths[k]:
            raise NonStabilized(
                f"colength of I^{k} is {lengths[k]}, the fitted polynomial gives {predicted}"
            )
    return e


def _binomial(n, j):
    return factorial(n) // (factorial(j) * factorial(n - j))


def _lagrange(xs, ys, t):
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(t - xj, xi - xj)
        total += term
    return total


# -- multiplicity -----------------------------------------------------------------


def multiplicity_polyhedral(I, seed=0):
    """``e(I) = n! * covolume(Gamma+(I))`` for monomial or non-degenerate ideals."""
    _require_affine(I, "multiplicity")
    _require_polyhedral(I, seed)
    if not finite_colength_test(I, seed):
        raise InfiniteColength("multiplicity needs finite colength")
    value = factorial(I.n) * covolume(I.newton)
    if value.denominator != 1:
        raise NonIntegerResult(f"n! * covolume = {value} is not an integer")
    return int(value)


def hypersurface_m0(f):
    """Multiplicity of the hypersurface ``f = 0`` at the origin, i.e. ``ord(f)``."""
    return order(f)


# -- Milnor number oracle ---------------------------------------------------------


def _restricted_covolume(f, K):
    pts = [tuple(k[i] for i in K) for k in f.terms if all(k[i] == 0 for i in range(f.vars) if i not in K)]
    P = hull_with_recession(pts, _unit_vectors(len(K)))
    return covolume(P)


def _kouchnirenko_nondegenerate(f, seed):
    P = hull_with_recession(list(f.terms), _unit_vectors(f.vars))
    exact = True
    for F in compact_faces(P):
        on = f.select(lambda k: all(P.facets[i].tight(k) for i in F.defining_facets))
        system = []
        for i in range(f.vars):
            d = on.derivative(i) * Germ.variable(i, f.vars)
            system.append(d.terms)
        v = torus_solvable(system, f.vars, seed)
        if v.solvable and v.exact:
            raise HypothesisNotMet("f is Newton degenerate on some compact face")
        exact = exact and v.exact
        if v.solvable:
            raise NondegeneracyUnknown("numeric search found a torus zero of a face system")
    if not exact:
        raise NondegeneracyUnknown("some face system was only checked numerically")


def kouchnirenko_mu(f, seed=0):
    """Milnor number from the alternating sum of Newton-diagram volumes."""
    if f.context is not None and not f.context.is_standard:
        raise HypothesisNotMet("the volume formula is only used on C^n")
    n = f.vars
    if (0,) * n in f.terms:
        raise HypothesisNotMet("f must vanish at the origin")
    for i in range(n):
        if not any(k[i] > 0 and sum(k) == k[i] for k in f.terms):
            raise NotConvenient(f"no pure power of variable {i + 1} in f")
    _kouchnirenko_nondegenerate(f, seed)
    total = Fraction((-1) ** n)
    for size in range(1, n + 1):
        for K in combinations(range(n), size):
            total += (-1) ** (n - size) * factorial(size) * _restricted_covolume(f, K)
    if total.denominator != 1:
        raise NonIntegerResult(f"alternating volume sum {total} is not an integer")
    return int(total)


# -- the inequality chain ---------------------------------------------------------


@dataclass
class InvariantBundle:
    ord: int
    loj0: object
    mult: object
    colength: object
    provenance: dict = field(default_factory=dict)
    chain_holds: object = None

    def to_dict(self):
        def show(x):
            return x if isinstance(x, int) else str(x)

        return {
            "ord": self.ord,
            "loj0": str(self.loj0),
            "mult": show(self.mult),
            "colength": show(self.colength),
            "provenance": dict(self.provenance),
            "chain_holds": self.chain_holds,
        }


def check_chain(I, seed=0):
    """``L0(I)^n >= e(I) >= ord(I)^n`` with every value computed exactly."""
    n = I.n
    prov = {"ord": EXACT}
    d = order(I)
    try:
        L = loj0(I, seed)
        prov["loj0"] = EXACT
    except HypothesisNotMet:
        L, prov["loj0"] = UNKNOWN, REFUSED
    mult = UNKNOWN
    prov["mult"] = REFUSED
    if L is not UNKNOWN and L is not INFINITE:
        mult = multiplicity_polyhedral(I, seed)
        prov["mult"] = EXACT
    colength = UNKNOWN
    prov["colength"] = REFUSED
    if I.is_monomial and not I.is_toric and L is not INFINITE:
        colength = colength_monomial(I)
        prov["colength"] = ORACLE
    holds = None
    if isinstance(mult, int):
        holds = L**n >= mult >= d**n
    return InvariantBundle(d, L, mult, colength, prov, holds)
