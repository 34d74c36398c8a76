"""Affine semigroups ``S = <g_1, ..., g_r>`` in Z^n_{>=0} and germs on X(S)."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

from .errors import (
    ConstantTermPresent,
    DegenerateCone,
    DimensionMismatch,
    NegativeExponent,
    WitnessBoundExceeded,
)
from .germ import Germ
from .lattice import hnf, invariant_factors, left_kernel, primitive, rank, solve
from .polyhedra import dual_rays, pointed_cone_rays

WITNESS_BOUND = 64
NORMALITY_BOUND = 10
# largest box scanned by the exact normality test
EXACT_NORMALITY_BOX = 200_000


@dataclass(frozen=True)
class Normality:
    """How much is known about the normality of X(S).

    ``kind`` is one of ``"Normal"`` (proved), ``"AssertedNormal"``,
    ``"CheckedUpToBound"``, ``"NotNormal"`` (with a lattice point of the cone
    missing from S as ``witness``) or ``"Unknown"``.
    """

    kind: str
    bound: int = None
    witness: tuple = None

    def __str__(self):
        if self.kind == "CheckedUpToBound":
            return f"CheckedUpToBound({self.bound})"
        if self.kind == "NotNormal":
            return f"NotNormal(missing {self.witness})"
        return self.kind


@dataclass(frozen=True)
class SemigroupPoint:
    value: tuple
    witness: tuple


class Semigroup:
    """Generators, kernel lattice, cone and dual cone of an affine semigroup."""

    def __init__(self, generators, assert_normal=False):
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        if not gens:
            raise DegenerateCone("a semigroup needs at least one generator")
        n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise DimensionMismatch("generators differ in length")
        if any(x < 0 for g in gens for x in g):
            raise NegativeExponent("generators must lie in Z^n_{>=0}")
        if any(not any(g) for g in gens):
            raise DegenerateCone("the zero vector is not allowed as a generator")
        if rank(gens) != n:
            raise DegenerateCone("cone(S) is not full-dimensional")
        factors = invariant_factors(gens)
        self.n = n
        self.r = len(gens)
        self.generators = gens
        self.kernel_basis = tuple(tuple(row) for row in left_kernel(gens))
        self.cone_rays = pointed_cone_rays(gens)
        self.dual_cone_rays = dual_rays(self.cone_rays)
        # [Z^n : ZS]; normality is saturation inside the group ZS
        self.group_index = 1
        for d in factors:
            self.group_index *= d
        self._group_basis = [list(col) for col in zip(*hnf(gens))]
        self._asserted = assert_normal
        self._degree = {}

    @classmethod
    def standard(cls, n):
        return cls([tuple(int(i == j) for j in range(n)) for i in range(n)])

    @cached_property
    def is_standard(self):
        return self.r == self.n and all(
            g == tuple(int(i == j) for j in range(self.n)) for i, g in enumerate(self.generators)
        )

    def __eq__(self, other):
        return isinstance(other, Semigroup) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"Semigroup({list(self.generators)})"

    # -- the exponent map ------------------------------------------------

    def nu(self, k):
        k = tuple(int(x) for x in k)
        if len(k) != self.r:
            raise DimensionMismatch(f"expected {self.r} exponents, got {len(k)}")
        if any(x < 0 for x in k):
            raise NegativeExponent(f"negative exponent in {k}")
        value = tuple(sum(ki * g[j] for ki, g in zip(k, self.generators)) for j in range(self.n))
        return SemigroupPoint(value, k)

    def _min_degree(self, v):
        # min |k| with nu(k) = v, None when v is not in S
        cache = self._degree
        if v in cache:
            return cache[v]
        if not any(v):
            return 0
        best = None
        for g in self.generators:
            if all(a >= b for a, b in zip(v, g)):
                sub = self._min_degree(tuple(a - b for a, b in zip(v, g)))
                if sub is not None and (best is None or sub + 1 < best):
                    best = sub + 1
        cache[v] = best
        return best

    def fiber_min_degree(self, v, bound=WITNESS_BOUND):
        """Smallest ``|k|`` with ``nu(k) = v``; ``None`` when ``v`` is not in S."""
        v = tuple(int(x) for x in v)
        d = sum(v) if self.is_standard else self._min_degree(v)
        if d is not None and d > bound:
            raise WitnessBoundExceeded(f"every witness of {v} has degree above {bound}")
        return d

    def witness(self, v, bound=WITNESS_BOUND):
        """A degree-minimal ``k`` with ``nu(k) = v``, or ``None``."""
        v = tuple(int(x) for x in v)
        d = self.fiber_min_degree(v, bound)
        if d is None:
            return None
        if self.is_standard:
            return v
        k = [0] * self.r
        while any(v):
            for i, g in enumerate(self.generators):
                if all(a >= b for a, b in zip(v, g)):
                    rest = tuple(a - b for a, b in zip(v, g))
                    if self._min_degree(rest) == d - 1:
                        k[i] += 1
                        v, d = rest, d - 1
                        break
        return tuple(k)

    def contains(self, v):
        return self._min_degree(tuple(int(x) for x in v)) is not None

    def in_group(self, v):
        """Whether ``v`` lies in the group ZS generated by S."""
        if self.group_index == 1:
            return True
        x = solve(self._group_basis, list(v))
        return x is not None and all(c.denominator == 1 for c in x)

    def in_cone(self, v):
        return all(sum(a * b for a, b in zip(u, v)) >= 0 for u in self.dual_cone_rays)

    # -- normality ---------------------------------------------------------

    def bounded_normality_check(self, bound=NORMALITY_BOUND):
        for p in _points_with_sum_at_most(self.n, bound):
            if self._missing(p):
                return Normality("NotNormal", witness=p)
        return Normality("CheckedUpToBound", bound=bound)

    def _ray_generators(self):
        out = []
        for rho in self.cone_rays:
            on_ray = [g for g in self.generators if primitive(g) == tuple(rho)]
            out.append(min(on_ray, key=sum))
        return out

    def _missing(self, p):
        return self.in_cone(p) and self.in_group(p) and self._min_degree(p) is None

    @cached_property
    def normality(self):
        """Exact when the box below the sum of the extreme-ray generators is small.

        Let s_i be the smallest generator of S on each extreme ray. Every point
        of cone(S) in ZS is a nonnegative integer combination of the s_i plus a
        point of ZS in a half-open parallelepiped spanned by n of them, and all
        those parallelepipeds sit inside the box ``[0, sum of s_i]``. So S is
        saturated in ZS iff every such point of that box lies in S.
        """
        if self.is_standard:
            return Normality("Normal")
        top = [sum(col) for col in zip(*self._ray_generators())]
        size = 1
        for t in top:
            size *= t + 1
        if size > EXACT_NORMALITY_BOX:
            status = self.bounded_normality_check()
            if status.kind != "NotNormal" and self._asserted:
                return Normality("AssertedNormal")
            return status
        for p in product(*(range(t + 1) for t in top)):
            if self._missing(p):
                return Normality("NotNormal", witness=p)
        return Normality("Normal")


def _points_with_sum_at_most(n, d):
    if n == 1:
        for i in range(d + 1):
            yield (i,)
        return
    for i in range(d + 1):
        for rest in _points_with_sum_at_most(n - 1, d - i):
            yield (i,) + rest


# -- module-level operations ---------------------------------------------------


def kernel_lattice(S):
    return [list(row) for row in S.kernel_basis]


def _split(alpha):
    plus = tuple(a if a > 0 else 0 for a in alpha)
    minus = tuple(-a if a < 0 else 0 for a in alpha)
    return plus, minus


def lattice_binomials(S):
    out = []
    for alpha in S.kernel_basis:
        plus, minus = _split(alpha)
        out.append(Germ({plus: 1, minus: -1}, S.r))
    return out


def nu(S, k):
    return S.nu(k)


def dual_cone(S):
    return [list(u) for u in S.dual_cone_rays]


def _context(g):
    return g.context if g.context is not None else Semigroup.standard(g.vars)


def fiber_sums(S, g):
    """``{nu(k): sum of the coefficients over the fiber}`` with zero sums dropped,
    together with one witness per fiber (the smallest exponent seen)."""
    if g.vars != S.r:
        raise DimensionMismatch(f"germ in {g.vars} variables, semigroup has {S.r} generators")
    sums, wit = {}, {}
    for k, c in g.terms.items():
        v = S.nu(k).value
        sums[v] = sums.get(v, Fraction(0)) + c
        if v not in wit or k < wit[v]:
            wit[v] = k
    return {v: (c, wit[v]) for v, c in sums.items() if c != 0}


def support(S, g):
    return {SemigroupPoint(v, w) for v, (_, w) in fiber_sums(S, g).items()}


def support_values(g):
    """Exponent support of a germ read through its own context."""
    return sorted(fiber_sums(_context(g), g))


def _flatten(S, g):
    return Germ({v: c for v, (c, _) in fiber_sums(S, g).items()}, S.n)


def flatten_L(S, g):
    """The polynomial ``sum_v a_v z^v`` over ``v`` in supp(g) (fiber sums ``a_v``)."""
    out = _flatten(S, g)
    if (0,) * S.n in out.terms:
        raise ConstantTermPresent("0 lies in the support")
    return out
