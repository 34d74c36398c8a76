"""Ideals of polynomial germs on C^n or X(S), and their Newton polyhedra.

Exponents are read through the semigroup: a term ``x^k`` of a germ on X(S)
sits at ``nu(k)``, and terms landing on one point have their coefficients
added before anything else happens. Germs without a context use the standard
semigroup, for which ``nu`` is the identity.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement

from .certificate import Certificate, Status, Theorem
from .errors import (
    ConstantGerm,
    DimensionMismatch,
    EmptySupport,
    HypothesisNotMet,
    NonCompactFace,
    NondegeneracyUnknown,
    ZeroGerm,
)
from .germ import Germ
from .polyhedra import INFINITE, axis_scale, compact_faces, hull_with_recession
from .semigroup import Semigroup, _flatten, fiber_sums
from .torus import torus_solvable

DEFAULT_CLOSURE_DEGREE = 12


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer that remembers whether it was decided exactly."""

    value: bool
    exact: bool

    def __bool__(self):
        return self.value

    def __str__(self):
        kind = "Exact" if self.exact else "Heuristic"
        return f"{kind}({str(self.value).lower()})"


@dataclass(frozen=True)
class FaceSystem:
    """The restrictions of an ideal's generators to a compact face, flattened."""

    face: object
    equations: tuple


@dataclass(frozen=True)
class ClosureMonomial:
    exponent: tuple
    minimal: bool


def semigroup_of(g):
    return g.context if g.context is not None else Semigroup.standard(g.vars)


class Ideal:
    """A finite list of nonzero germs sharing variables and context."""

    def __init__(self, generators, context=None):
        gens = list(generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        vars = gens[0].vars
        if context is None:
            context = gens[0].context
        out = []
        for g in gens:
            if g.vars != vars:
                raise DimensionMismatch("generators live in different numbers of variables")
            if g.context != context:
                g = g.with_context(context)
            if not g:
                raise ZeroGerm("the zero germ is not allowed as a generator")
            out.append(g)
        self.generators = tuple(out)
        self.vars = vars
        self.context = context
        self._nondeg = {}

    def __repr__(self):
        return "Ideal<" + ", ".join(g.format() for g in self.generators) + ">"

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.generators == other.generators
            and self.context == other.context
        )

    def __hash__(self):
        return hash((self.generators, self.context))

    def format(self, names=None):
        return "<" + ", ".join(g.format(names) for g in self.generators) + ">"

    @cached_property
    def semigroup(self):
        return self.context if self.context is not None else Semigroup.standard(self.vars)

    @property
    def n(self):
        return self.semigroup.n

    @property
    def is_toric(self):
        return not self.semigroup.is_standard

    @cached_property
    def flattened(self):
        """Each generator as a polynomial in the n lattice coordinates."""
        return tuple(_flatten(self.semigroup, g) for g in self.generators)

    @cached_property
    def support(self):
        return tuple(sorted({v for f in self.flattened for v in f.terms}))

    @cached_property
    def is_monomial(self):
        return all(len(f) == 1 for f in self.flattened)

    @cached_property
    def is_binomial(self):
        return all(len(f) <= 2 for f in self.flattened)

    @cached_property
    def has_unit(self):
        return (0,) * self.n in self.support

    @cached_property
    def newton(self):
        if not self.support:
            raise EmptySupport("every generator vanishes identically")
        return hull_with_recession(self.support, self.semigroup.cone_rays)


def as_ideal(arg):
    return arg if isinstance(arg, Ideal) else Ideal([arg])


def newton_polyhedron(arg):
    """Newton polyhedron of an ideal or of a single germ."""
    return as_ideal(arg).newton


def maximal_power(d, vars, context=None):
    """The ideal generated by all monomials of degree ``d`` in ``vars`` variables."""
    if d < 0:
        raise ValueError("negative power")
    gens = []
    for combo in combinations_with_replacement(range(vars), d):
        k = [0] * vars
        for i in combo:
            k[i] += 1
        gens.append(Germ({tuple(k): 1}, vars, context))
    return Ideal(gens, context)


def maximal_power_like(I, d):
    return maximal_power(d, I.vars, I.context)


# -- order and Jacobian ----------------------------------------------------------


def _germ_order(g):
    S = semigroup_of(g)
    values = fiber_sums(S, g)
    if not values:
        raise ZeroGerm("the order of the zero germ is undefined")
    return min(S.fiber_min_degree(v) for v in values)


def order(arg):
    """Largest ``s`` with ``arg`` inside the s-th power of the maximal ideal.

    On X(S) a point ``v`` of the support counts with degree
    ``min{|k| : nu(k) = v}``.
    """
    if isinstance(arg, Germ):
        return _germ_order(arg)
    best = None
    for g in arg.generators:
        try:
            d = _germ_order(g)
        except ZeroGerm:
            continue
        best = d if best is None else min(best, d)
    if best is None:
        raise ZeroGerm("every generator vanishes identically")
    return best


def jacobian(f):
    """Ideal of the partial derivatives in the ambient variables (zero ones dropped)."""
    parts = [p for p in f.gradient() if p]
    if not parts:
        raise ConstantGerm("a constant germ has no Jacobian ideal")
    return Ideal(parts, f.context)


# -- faces and non-degeneracy ---------------------------------------------------


def _on_face(P, face, v):
    return all(P.facets[i].tight(v) for i in face.defining_facets)


def face_restriction(I, face):
    """Flattened restrictions of the generators of ``I`` to a compact face."""
    if not face.compact:
        raise NonCompactFace("face restriction needs a compact face")
    P = I.newton
    eqs = []
    for f in I.flattened:
        eqs.append(Germ({v: c for v, c in f.terms.items() if _on_face(P, face, v)}, I.n))
    return FaceSystem(face, tuple(eqs))


def face_systems(I):
    return [face_restriction(I, F) for F in compact_faces(I.newton)]


def is_nondegenerate(I, seed=0):
    """Decide whether no compact-face system has a zero in the torus.

    Returns an exact :class:`Verdict` when every face was settled by an exact
    backend, otherwise a heuristic one. One exactly solvable face is enough
    for ``Exact(false)``.
    """
    if seed in I._nondeg:
        return I._nondeg[seed]
    all_exact, heuristic_hit = True, False
    result = None
    for system in face_systems(I):
        v = torus_solvable([eq.terms for eq in system.equations], I.n, seed)
        if v.solvable and v.exact:
            result = Verdict(False, True)
            break
        if not v.exact:
            all_exact = False
            heuristic_hit = heuristic_hit or v.solvable
    if result is None:
        result = Verdict(not heuristic_hit, all_exact)
    I._nondeg[seed] = result
    return result


def _require_closure_formula(I, assume_nondegenerate, seed):
    if assume_nondegenerate:
        return
    v = is_nondegenerate(I, seed)
    if not v.exact:
        raise NondegeneracyUnknown(f"non-degeneracy only known heuristically ({v})")
    if not v.value:
        raise HypothesisNotMet("the ideal is Newton degenerate")


def _exponents_up_to(r, bound):
    for d in range(bound + 1):
        for combo in combinations_with_replacement(range(r), d):
            k = [0] * r
            for i in combo:
                k[i] += 1
            yield tuple(k)


def integral_closure_monomials(I, degree_bound=DEFAULT_CLOSURE_DEGREE, assume_nondegenerate=False, seed=0):
    """Monomials ``x^k`` with ``|k| <= degree_bound`` and ``nu(k)`` in the Newton polyhedron."""
    _require_closure_formula(I, assume_nondegenerate, seed)
    P, S = I.newton, I.semigroup
    inside = [k for k in _exponents_up_to(I.vars, degree_bound) if all(
        f.holds(S.nu(k).value) for f in P.facets
    )]
    out = []
    for k in inside:
        minimal = not any(
            j != k and all(a <= b for a, b in zip(j, k)) for j in inside if sum(j) < sum(k)
        )
        out.append(ClosureMonomial(k, minimal))
    return out


# -- colength -------------------------------------------------------------------


def _misses_ray(I):
    P = I.newton
    return [rho for rho in I.semigroup.cone_rays if axis_scale(P, rho) is INFINITE]


def is_convenient(I):
    """True when the Newton polyhedron meets every extreme ray of the ambient cone."""
    return not _misses_ray(I)


def finite_colength_test(I, seed=0):
    """Whether ``O/I`` is finite dimensional.

    A missed extreme ray means the generators all vanish on the corresponding
    orbit curve, so colength is infinite for any ideal. Fewer nonunit
    generators than the dimension also force a positive-dimensional zero set.
    When every ray is met the answer is finite for monomial and certified
    non-degenerate ideals; other cases are refused.
    """
    if I.has_unit:
        return True
    if _misses_ray(I):
        return False
    if I.is_monomial:
        return True
    if len(I.generators) < I.n:
        return False
    v = is_nondegenerate(I, seed)
    if v.exact and v.value:
        return True
    raise HypothesisNotMet(f"neither monomial nor certified non-degenerate ({v})")


# -- closure equal to a power of the maximal ideal --------------------------------


def normality_hypothesis(cert, S):
    """Record what is known about normality of X(S) on ``cert``."""
    if S.is_standard:
        return
    status = S.normality
    if status.kind == "Normal":
        cert.add("X(S) is normal", Status.EXACT, True, "saturation verified on the fundamental box")
    elif status.kind == "NotNormal":
        cert.add("X(S) is normal", Status.EXACT, False, str(status))
    else:
        cert.add("X(S) is normal", Status.ASSUMED, True, str(status))


def equals_maximal_power(I, seed=0):
    """Certificate for ``closure(I) = m^d`` with ``d = ord(I)``."""
    d = order(I)
    M = maximal_power_like(I, d)
    same = I.newton == M.newton
    cert = Certificate(
        Theorem.MAXIMAL_POWER_CLOSURE,
        anchor="I non-degenerate on normal X(S) and Gamma+(I) = Gamma+(m^ord(I)) imply closure(I) = m^ord(I)",
        claim=f"closure(I) = m^{d}",
        payload={"order": d, "facets": _facet_strings(I.newton)},
    )
    cert.add(
        f"Gamma+(I) = Gamma+(m^{d})",
        Status.EXACT,
        same,
        "canonical facet sets agree" if same else _facet_diff(I.newton, M.newton),
    )
    v = is_nondegenerate(I, seed)
    cert.add(
        "I is Newton non-degenerate",
        Status.EXACT if v.exact else Status.HEURISTIC,
        v.value,
        str(v),
    )
    normality_hypothesis(cert, I.semigroup)
    return cert


def _facet_strings(P):
    return [facet_string(f) for f in P.facets]


def facet_string(f):
    terms = []
    for i, a in enumerate(f.normal):
        if a:
            terms.append(f"{a}*x{i + 1}" if a != 1 else f"x{i + 1}")
    return " + ".join(terms).replace("+ -", "- ") + f" >= {f.offset}"


def _facet_diff(P, Q):
    only_p = sorted(set(P.facets) - set(Q.facets))
    only_q = sorted(set(Q.facets) - set(P.facets))
    parts = []
    if only_p:
        parts.append("only in first: " + "; ".join(facet_string(f) for f in only_p))
    if only_q:
        parts.append("only in second: " + "; ".join(facet_string(f) for f in only_q))
    return ", ".join(parts)
