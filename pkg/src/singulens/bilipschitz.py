"""Certificates for bi-Lipschitz invariance statements, and invariant obstructions.

Bi-Lipschitz equivalence is never decided here. It enters a certificate only
as an Assumed hypothesis; what the library can say unconditionally is the
contrapositive: two ideals with different order or L0 are not equivalent.

Every certificate also carries an Exact hypothesis saying that the assumed
equivalence does not contradict the invariants computed for the inputs, so a
pair that is provably inequivalent is always refused.
"""

from dataclasses import dataclass

from .certificate import Certificate, Status, Theorem
from .errors import DimensionMismatch, HypothesisNotMet
from .ideals import (
    as_ideal,
    equals_maximal_power,
    finite_colength_test,
    is_nondegenerate,
    jacobian,
    maximal_power_like,
    normality_hypothesis,
    order,
    semigroup_of,
    _facet_diff,
    _facet_strings,
)
from .invariants import hypersurface_m0, loj0
from .polyhedra import INFINITE, axis_scale
from .semigroup import fiber_sums
from .torus import nonzero_common_zero

NOT_EQUIVALENT, INCONCLUSIVE = "NotEquivalent", "Inconclusive"


@dataclass(frozen=True)
class ObstructionReport:
    """Pairs ``(invariant, value for I, value for J)`` and the resulting verdict."""

    compared: tuple
    verdict: str
    skipped: tuple = ()

    def mirrored(self):
        return ObstructionReport(
            tuple((k, b, a) for k, a, b in self.compared), self.verdict, self.skipped
        )

    def to_dict(self):
        return {
            "compared": [
                {"invariant": k, "I": _show(a), "J": _show(b)} for k, a, b in self.compared
            ],
            "verdict": self.verdict,
            "skipped": list(self.skipped),
        }


def _show(x):
    return x if isinstance(x, int) else str(x)


def obstruct_equivalence(I, J, seed=0):
    """Compare ord always and L0 when both ideals have finite colength on C^n.

    L0 is left out, with the reason recorded in ``skipped``, when finite
    colength cannot be decided exactly or the ideals live on a toric variety.
    Leaving a comparison out never produces a false NotEquivalent.
    """
    I, J = as_ideal(I), as_ideal(J)
    compared = [("ord", order(I), order(J))]
    skipped = []
    if I.is_toric or J.is_toric:
        skipped.append("L0: only compared on C^n")
    else:
        try:
            finite = finite_colength_test(I, seed) and finite_colength_test(J, seed)
        except HypothesisNotMet as exc:
            finite = False
            skipped.append(f"L0: finite colength not decided exactly ({exc})")
        if finite:
            compared.append(("L0", loj0(I, seed), loj0(J, seed)))
    differs = any(a != b for _, a, b in compared)
    return ObstructionReport(
        tuple(compared), NOT_EQUIVALENT if differs else INCONCLUSIVE, tuple(skipped)
    )


# -- shared hypothesis builders ------------------------------------------------------


def _assume(cert, what, assumed):
    cert.add(
        what,
        Status.ASSUMED,
        assumed,
        "granted by the caller" if assumed else "not granted (pass --assume-equivalent)",
    )


def _no_contradiction(cert):
    """Exact hypothesis: every attached check agrees with the assumed equivalence."""
    bad = [c.name for c in cert.checks if not c.holds]
    cert.add(
        "computed invariants do not contradict the equivalence",
        Status.EXACT,
        not bad,
        "all checks agree" if not bad else "differs: " + "; ".join(bad),
    )


def _copy_hypotheses(cert, source, prefix=""):
    for h in source.hypotheses:
        cert.add(prefix + h.name, h.status, h.holds, h.detail)


def _colength_hypothesis(cert, label, I, seed):
    finite = finite_colength_test(I, seed)
    cert.add(f"{label} has finite colength", Status.EXACT, finite)
    return finite


def _same_ambient(f, g):
    if f.vars != g.vars:
        raise DimensionMismatch("the two germs live in different numbers of variables")
    if f.context != g.context:
        raise HypothesisNotMet("the two germs live on different toric varieties")


# -- order and Lojasiewicz exponent -------------------------------------------------


def certify_ord_loj(I, J, assumed_equivalent=False, seed=0):
    I, J = as_ideal(I), as_ideal(J)
    report = obstruct_equivalence(I, J, seed)
    cert = Certificate(
        Theorem.ORD_LOJ,
        anchor="I, J bi-Lipschitz equivalent => ord(I) = ord(J); "
        "with finite colength also L0(I) = L0(J)",
        claim="ord(I) = ord(J)" + ("; L0(I) = L0(J)" if len(report.compared) > 1 else ""),
        payload=report.to_dict(),
    )
    normality_hypothesis(cert, I.semigroup)
    _assume(cert, "I and J are bi-Lipschitz equivalent", assumed_equivalent)
    for k, a, b in report.compared:
        cert.check(f"{k}(I) = {k}(J)", a == b, f"{_show(a)} vs {_show(b)}")
    cert.notes.extend(f"not compared: {s}" for s in report.skipped)
    _no_contradiction(cert)
    return cert


# -- closures ---------------------------------------------------------------------


def _polyhedral(I, seed):
    if I.is_monomial:
        return True
    v = is_nondegenerate(I, seed)
    return v.exact and v.value


def certify_closure_criterion(I, J, assumed_equivalent=False, seed=0):
    """closure(I) = m^ord(I) and I ~ J (bi-Lipschitz) give closure(I) = closure(J)."""
    I, J = as_ideal(I), as_ideal(J)
    d = order(I)
    cert = Certificate(
        Theorem.CLOSURE_CRITERION,
        anchor="finite colength, closure(I) = m^ord(I): I ~ J bi-Lipschitz <=> closure(I) = closure(J)",
        claim=f"closure(I) = closure(J) = m^{d}",
        payload={"order": d},
    )
    _colength_hypothesis(cert, "I", I, seed)
    _colength_hypothesis(cert, "J", J, seed)
    _copy_hypotheses(cert, equals_maximal_power(I, seed), "closure(I) = m^ord(I): ")
    _assume(cert, "I and J are bi-Lipschitz equivalent", assumed_equivalent)
    report = obstruct_equivalence(I, J, seed)
    for k, a, b in report.compared:
        cert.check(f"{k}(I) = {k}(J)", a == b, f"{_show(a)} vs {_show(b)}")
    if _polyhedral(I, seed) and _polyhedral(J, seed):
        same = I.newton == J.newton
        cert.check(
            "Gamma+(I) = Gamma+(J)",
            same,
            "both closures are read off the Newton polyhedra"
            if same
            else _facet_diff(I.newton, J.newton),
        )
        cert.payload["polyhedral_confirmation"] = same
    else:
        cert.notes.append("J is not certified non-degenerate; closures not compared polyhedrally")
        cert.payload["polyhedral_confirmation"] = None
    _no_contradiction(cert)
    return cert


def _jacobian_closure_parts(cert, f, seed, label="f"):
    d = order(f)
    J = jacobian(f)
    M = maximal_power_like(J, d - 1)
    same = J.newton == M.newton
    cert.add(
        f"Gamma+(J({label})) = Gamma+(m^{d - 1})",
        Status.EXACT,
        same,
        "canonical facet sets agree" if same else _axis_detail(J) or _facet_diff(J.newton, M.newton),
    )
    v = is_nondegenerate(J, seed)
    cert.add(
        f"J({label}) is Newton non-degenerate",
        Status.EXACT if v.exact else Status.HEURISTIC,
        v.value,
        str(v),
    )
    return d, J


def _axis_detail(J):
    missed = [r for r in J.semigroup.cone_rays if _misses(J, r)]
    if missed:
        return "Gamma+ does not meet the rays " + ", ".join(str(r) for r in missed)
    return ""


def _misses(J, ray):
    return axis_scale(J.newton, ray) is INFINITE


def certify_jacobian_closure(f, seed=0):
    """closure(J(f)) = m^(ord(f) - 1), read off the Newton polyhedron."""
    d = order(f)
    cert = Certificate(
        Theorem.JACOBIAN_CLOSURE,
        anchor="J non-degenerate on normal X(S) and Gamma+(J) = Gamma+(m^s) => closure(J) = m^s",
        claim=f"closure(J(f)) = m^{d - 1}",
        payload={"order": d},
    )
    _, J = _jacobian_closure_parts(cert, f, seed)
    normality_hypothesis(cert, J.semigroup)
    cert.payload["jacobian"] = [g.format() for g in J.generators]
    cert.payload["facets"] = _facet_strings(J.newton)
    return cert


# -- isolated singularities ------------------------------------------------------


def isolated_singularity(f, seed=0):
    """``(status, holds, detail)`` for "f has an isolated singularity at 0".

    Decided exactly when the finite-colength test on J(f) is exact (monomial or
    certified non-degenerate Jacobian, or a missed axis); otherwise the axis
    test alone is reported as heuristic evidence.
    """
    J = jacobian(f)
    try:
        finite = finite_colength_test(J, seed)
        how = "monomial Jacobian" if J.is_monomial else "polyhedral test on the Jacobian ideal"
        return Status.EXACT, finite, how
    except HypothesisNotMet as exc:
        touches = not _axis_detail(J)
        return Status.HEURISTIC, touches, f"Gamma+(J(f)) meets every axis; {exc}"


def _is_diagonal(h):
    """Whether a homogeneous h is ``sum c_i x_i^d`` with every c_i nonzero."""
    if len(h) != h.vars:
        return False
    return all(sum(1 for e in k if e) == 1 for k in h.terms) and {
        k.index(max(k)) for k in h.terms
    } == set(range(h.vars))


def homogeneous_isolated(h, seed=0):
    """``(status, holds, method)`` for a homogeneous form h to have an isolated singularity."""
    d = max(sum(k) for k in h.terms)
    if d == 1:
        return Status.EXACT, True, "linear form (smooth)"
    if _is_diagonal(h):
        return Status.EXACT, True, "diagonal form"
    J = jacobian(h)
    try:
        return Status.EXACT, finite_colength_test(J, seed), "polyhedral test on J(f_d)"
    except HypothesisNotMet:
        pass
    found = nonzero_common_zero([g.terms for g in J.generators], h.vars, seed)
    return Status.HEURISTIC, not found, "numeric search for a nonzero critical point"


def semihomogeneous_certificate(f, seed=0):
    """f = f_d + higher terms with f_d isolated gives closure(J(f)) = m^(d-1)."""
    if f.context is not None and not f.context.is_standard:
        raise HypothesisNotMet("the semi-homogeneous criterion is stated on C^n")
    d = order(f)
    fd = f.homogeneous_part(d)
    status, holds, method = homogeneous_isolated(fd, seed)
    cert = Certificate(
        Theorem.SEMI_HOMOGENEOUS,
        anchor="f = f_d + (order > d) with f_d an isolated singularity => closure(J(f)) = m^(d-1)",
        claim=f"closure(J(f)) = m^{d - 1}",
        payload={"order": d, "leading_form": fd.format(), "method": method},
    )
    cert.add("f_d has an isolated singularity", status, holds, f"{method}: f_d = {fd.format()}")
    J = jacobian(f)
    same = J.newton == maximal_power_like(J, d - 1).newton
    cert.check(f"Gamma+(J(f)) = Gamma+(m^{d - 1})", same)
    return cert


# -- multiplicity -----------------------------------------------------------------


def certify_multiplicity(I, J, dims_equal=False, assumed_equivalent=False, seed=0):
    """dim X = dim Y, closure(I(X)) = m^ord and I(X) ~ I(Y) give m0(X) = m0(Y)."""
    I, J = as_ideal(I), as_ideal(J)
    cert = Certificate(
        Theorem.MULTIPLICITY_ZARISKI,
        anchor="dim X = dim Y, finite colength, closure(I(X)) = m^ord(I(X)), "
        "I(X) ~ I(Y) bi-Lipschitz => m0(X) = m0(Y)",
        claim="m0(X) = m0(Y)",
    )
    cert.add("dim X = dim Y", Status.ASSUMED, dims_equal,
             "granted by the caller" if dims_equal else "not granted")
    _colength_hypothesis(cert, "I(X)", I, seed)
    _colength_hypothesis(cert, "I(Y)", J, seed)
    _copy_hypotheses(cert, equals_maximal_power(I, seed), "closure(I(X)) = m^ord: ")
    _assume(cert, "I(X) and I(Y) are bi-Lipschitz equivalent", assumed_equivalent)
    cert.check("ord(I(X)) = ord(I(Y))", order(I) == order(J), f"{order(I)} vs {order(J)}")
    if len(I.generators) == 1 and len(J.generators) == 1:
        a = hypersurface_m0(I.generators[0])
        b = hypersurface_m0(J.generators[0])
        cert.payload["m0"] = {"X": a, "Y": b}
        cert.check("hypersurface m0(X) = m0(Y)", a == b, f"{a} vs {b}")
        cert.notes.append("hypersurface multiplicity taken as the order (reduced equation assumed)")
    _no_contradiction(cert)
    return cert


# -- Euler obstruction and polar multiplicity ---------------------------------------


def _tail_note(h, label):
    S = semigroup_of(h)
    d = order(h)
    above = [v for v in fiber_sums(S, h) if S.fiber_min_degree(v) > d]
    if above and not S.is_standard:
        return (
            f"{label} has {len(above)} support point(s) above order {d}; order on X(S) "
            "is the smallest degree of a monomial in the fiber"
        )
    return None


def _euler_battery(cert, f, g, assumed_equivalent, seed):
    _same_ambient(f, g)
    d, Jf = _jacobian_closure_parts(cert, f, seed, "f")
    for label, h in (("f", f), ("g", g)):
        status, holds, detail = isolated_singularity(h, seed)
        cert.add(f"{label} has an isolated singularity", status, holds, detail)
    normality_hypothesis(cert, Jf.semigroup)
    _assume(cert, "f and g are bi-Lipschitz A- or K*-equivalent", assumed_equivalent)
    Jg = jacobian(g)
    dg = order(g)
    cert.check("ord(f) = ord(g)", d == dg, f"{d} vs {dg}")
    Pf, Pg = as_ideal(f).newton, as_ideal(g).newton
    cert.check("Gamma+(f) = Gamma+(g)", Pf == Pg, "" if Pf == Pg else _facet_diff(Pf, Pg))
    same_j = Jf.newton == Jg.newton
    cert.check(
        "Gamma+(J(f)) = Gamma+(J(g))", same_j, "" if same_j else _facet_diff(Jf.newton, Jg.newton)
    )
    cert.payload.update(
        {
            "order": {"f": d, "g": dg},
            "newton_f": _facet_strings(Pf),
            "newton_g": _facet_strings(Pg),
            "newton_jacobian": _facet_strings(Jf.newton),
        }
    )
    for label, h in (("f", f), ("g", g)):
        note = _tail_note(h, label)
        if note:
            cert.notes.append(note)
    _no_contradiction(cert)


def certify_euler(f, g, assumed_equivalent=False, seed=0):
    """Equality of local Euler obstructions of V(f) and V(g); no value is computed."""
    cert = Certificate(
        Theorem.EULER_EQUALITY,
        anchor="f, g isolated, closure(J(f)) = m^(ord(f)-1), f ~ g bi-Lipschitz A or K* "
        "=> Eu_V(f)(0) = Eu_V(g)(0)",
        claim="Eu_V(f)(0) = Eu_V(g)(0)",
    )
    _euler_battery(cert, f, g, assumed_equivalent, seed)
    cert.notes.append("the Euler obstruction itself is not computed, only the equality is certified")
    return cert


def certify_polar_m1(f, g, assumed_equivalent=False, seed=0):
    """Equality of first polar multiplicities of two surfaces in C^3."""
    for h in (f, g):
        if h.vars != 3 or (h.context is not None and not h.context.is_standard):
            raise HypothesisNotMet("the polar multiplicity statement is for germs in O_3")
    cert = Certificate(
        Theorem.POLAR_M1,
        anchor="f, g in O_3 isolated, closure(J(f)) = m^(ord(f)-1), f ~ g bi-Lipschitz A or K* "
        "=> m1(V(f),0) = m1(V(g),0)",
        claim="m1(V(f),0) = m1(V(g),0)",
    )
    a, b = hypersurface_m0(f), hypersurface_m0(g)
    cert.check("m0(V(f)) = m0(V(g))", a == b, f"{a} vs {b}")
    _euler_battery(cert, f, g, assumed_equivalent, seed)
    cert.payload["m0"] = {"f": a, "g": b}
    cert.notes.append(
        "m1 follows from Eu = m1 - m0 for surfaces together with equal Eu and m0; "
        "no value of m1 is computed"
    )
    return cert


def certify_jacobian_equivalence(f, g, assumed_equivalent=False, seed=0):
    """J(f) ~ J(g) bi-Lipschitz, hence equal ord and L0 of the Jacobian ideals."""
    _same_ambient(f, g)
    cert = Certificate(
        Theorem.JACOBIAN_EQUIV,
        anchor="f, g isolated, f ~ g bi-Lipschitz A or K* => J(f) ~ J(g) bi-Lipschitz",
        claim="J(f) and J(g) are bi-Lipschitz equivalent",
    )
    for label, h in (("f", f), ("g", g)):
        status, holds, detail = isolated_singularity(h, seed)
        cert.add(f"{label} has an isolated singularity", status, holds, detail)
    normality_hypothesis(cert, semigroup_of(f))
    _assume(cert, "f and g are bi-Lipschitz A- or K*-equivalent", assumed_equivalent)
    cert.check("ord(f) = ord(g)", order(f) == order(g), f"{order(f)} vs {order(g)}")
    report = obstruct_equivalence(jacobian(f), jacobian(g), seed)
    for k, a, b in report.compared:
        cert.check(f"{k}(J(f)) = {k}(J(g))", a == b, f"{_show(a)} vs {_show(b)}")
    cert.notes.extend(f"not compared: {s}" for s in report.skipped)
    _no_contradiction(cert)
    return cert


__all__ = [
    "INCONCLUSIVE",
    "NOT_EQUIVALENT",
    "ObstructionReport",
    "certify_closure_criterion",
    "certify_euler",
    "certify_jacobian_closure",
    "certify_jacobian_equivalence",
    "certify_multiplicity",
    "certify_ord_loj",
    "certify_polar_m1",
    "homogeneous_isolated",
    "isolated_singularity",
    "obstruct_equivalence",
    "semihomogeneous_certificate",
]
