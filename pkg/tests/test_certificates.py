import json
import random
from dataclasses import replace

import pytest
import sympy
from helpers import S_TORIC, germ, ideal

from singulens.bilipschitz import (
    INCONCLUSIVE,
    NOT_EQUIVALENT,
    certify_closure_criterion,
    certify_euler,
    certify_jacobian_closure,
    certify_jacobian_equivalence,
    certify_multiplicity,
    certify_ord_loj,
    certify_polar_m1,
    homogeneous_isolated,
    obstruct_equivalence,
    semihomogeneous_certificate,
)
from singulens.certificate import ADVISORY, REFUSED, Certificate, Status, Theorem
from singulens.errors import DimensionMismatch, HypothesisNotMet
from singulens.germ import Germ
from singulens.ideals import jacobian, maximal_power, order
from singulens.invariants import monomial_ideal
from singulens.lattice import det

I_PRIME = ("x^2 - y^2", "x*y - z^2", "x*z - 2*y^2", "y*z - 3*x^2")
QUADRIC = "x^2 + y^2 + z^2"
QUADRIC_L = "(x + y)^2 + y^2 + z^2"
TORIC_G = "x^2 + (y + x*y)^2 + (z + 2*y^2 + x*y^2)^2"


def M(*exps):
    return monomial_ideal(exps)


def toric_pair(a):
    return germ(f"x^2 + y^{a} + z^2", context=S_TORIC), germ(TORIC_G, context=S_TORIC)


# -- obstruction reports --------------------------------------------------------------


def test_obstruction_examples():
    r = obstruct_equivalence(maximal_power(2, 2), maximal_power(3, 2))
    assert r.verdict == NOT_EQUIVALENT and r.compared[0] == ("ord", 2, 3)
    r = obstruct_equivalence(M((3, 0), (0, 2)), M((2, 0), (0, 3)))
    assert r.verdict == INCONCLUSIVE and r.compared == (("ord", 2, 2), ("L0", 3, 3))
    r = obstruct_equivalence(M((3, 0), (0, 2)), M((4, 0), (0, 2)))
    assert r.verdict == NOT_EQUIVALENT and r.compared == (("ord", 2, 2), ("L0", 3, 4))


def test_obstruction_infinite_colength_compares_order_only():
    r = obstruct_equivalence(M((1, 1)), M((2, 0), (0, 2)))
    assert r.compared == (("ord", 2, 2),) and r.verdict == INCONCLUSIVE


def test_obstruction_toric_skips_loj():
    J = jacobian(germ("x^3 + y^4 + z^3", context=S_TORIC))
    r = obstruct_equivalence(J, J)
    assert r.compared == (("ord", 2, 2),) and r.skipped


def test_obstruction_symmetry():
    rng = random.Random(31)
    for _ in range(40):
        n = rng.choice((2, 3))
        pair = []
        for _ in range(2):
            exps = [tuple(rng.randint(1, 5) if j == i else 0 for j in range(n)) for i in range(n)]
            exps.append(tuple(rng.randint(0, 3) for _ in range(n)))
            pair.append(M(*[e for e in exps if any(e)]))
        I, J = pair
        a, b = obstruct_equivalence(I, J), obstruct_equivalence(J, I)
        assert a.verdict == b.verdict
        assert a.mirrored() == b


def _random_substitution(rng):
    while True:
        L = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        if det(L):
            break
    X = Germ.variables(3)
    return [sum((c * v for c, v in zip(row, X)), Germ.zero(3)) for row in L]


@pytest.mark.parametrize("text", [QUADRIC, "x^3 + y^3 + z^3"])
def test_linear_coordinate_change_stability(text):
    rng = random.Random(41)
    f = germ(text)
    for _ in range(20):
        g = f.compose(_random_substitution(rng))
        assert order(g) == order(f)
        assert obstruct_equivalence(jacobian(f), jacobian(g)).verdict == INCONCLUSIVE


def test_report_payload():
    d = obstruct_equivalence(M((3, 0), (0, 2)), M((4, 0), (0, 2))).to_dict()
    assert d == {
        "compared": [{"invariant": "ord", "I": 2, "J": 2}, {"invariant": "L0", "I": "3", "J": "4"}],
        "verdict": NOT_EQUIVALENT,
        "skipped": [],
    }


# -- closure criterion -------------------------------------------------------------------


def test_closure_criterion_binomial_example():
    cert = certify_closure_criterion(ideal(*I_PRIME), maximal_power(2, 3), assumed_equivalent=True)
    assert cert.issued and cert.theorem is Theorem.CLOSURE_CRITERION
    assert cert.conclusion == "closure(I) = closure(J) = m^2"
    assert cert.payload["polyhedral_confirmation"] is True
    assert all(h.status is Status.EXACT for h in cert.hypotheses if "equivalent" not in h.name)


def test_closure_criterion_trivial():
    cert = certify_closure_criterion(maximal_power(3, 3), maximal_power(3, 3), assumed_equivalent=True)
    assert cert.issued and cert.payload["polyhedral_confirmation"] is True


def test_closure_criterion_refused_at_first_hypothesis():
    I = M((3, 0), (0, 3), (1, 1))
    for J in (maximal_power(2, 2), I):
        cert = certify_closure_criterion(I, J, assumed_equivalent=True)
        assert cert.verdict == REFUSED
        assert cert.failed[0].name.endswith("Gamma+(I) = Gamma+(m^2)")


def test_closure_criterion_needs_assumption():
    cert = certify_closure_criterion(ideal(*I_PRIME), maximal_power(2, 3))
    assert cert.verdict == REFUSED
    assert [h.name for h in cert.failed] == ["I and J are bi-Lipschitz equivalent"]


# -- Jacobian closure and semi-homogeneous ----------------------------------------------------


def test_jacobian_closure_examples():
    cert = certify_jacobian_closure(germ(QUADRIC))
    assert cert.issued and cert.status() is Status.EXACT and cert.conclusion == "closure(J(f)) = m^1"
    cert = certify_jacobian_closure(germ("x^3 + y^4 + z^3", context=S_TORIC))
    assert cert.issued and cert.status() is Status.EXACT and cert.conclusion == "closure(J(f)) = m^2"
    cert = certify_jacobian_closure(germ("x^2*y", names="x,y"))
    assert cert.verdict == REFUSED and "does not meet" in cert.failed[0].detail


@pytest.mark.parametrize("a,b", [(3, 3), (3, 4), (4, 5), (5, 5)])
def test_jacobian_closure_toric_family(a, b):
    cert = certify_jacobian_closure(germ(f"x^{a} + y^{b} + z^{a}", context=S_TORIC))
    assert cert.issued and cert.conclusion == f"closure(J(f)) = m^{a - 1}"


def test_semihomogeneous_examples():
    cert = semihomogeneous_certificate(germ("x^3 + y^3 + z^3 + x^2*y^2"))
    assert cert.issued and cert.conclusion == "closure(J(f)) = m^2"
    assert cert.payload["method"] == "diagonal form"
    assert cert.hypotheses[0].status is Status.EXACT
    cert = semihomogeneous_certificate(germ(QUADRIC))
    assert cert.issued and cert.conclusion == "closure(J(f)) = m^1"
    cert = semihomogeneous_certificate(germ("x^2*y", names="x,y"))
    assert cert.verdict == REFUSED


def test_semihomogeneous_advisory_when_only_numeric():
    # f_3 is not diagonal and its Jacobian is not decided exactly, so only numeric evidence exists
    f = germ("x^3 + y^3 + z^3 + x*y*z + y^2*z + x^5")
    status, holds, _ = homogeneous_isolated(f.homogeneous_part(3))
    assert status is Status.HEURISTIC and holds
    cert = semihomogeneous_certificate(f)
    assert cert.verdict == ADVISORY and cert.conclusion is None
    # independent check: the partials of f_3 have only the origin as common zero
    x, y, z = sympy.symbols("x y z")
    f3 = x**3 + y**3 + z**3 + x * y * z + y**2 * z
    G = sympy.groebner([f3.diff(v) for v in (x, y, z)], x, y, z, order="grevlex")
    assert G.is_zero_dimensional


def test_semihomogeneous_refuses_toric():
    with pytest.raises(HypothesisNotMet):
        semihomogeneous_certificate(germ("x^3 + y^4 + z^3", context=S_TORIC))


# -- multiplicity -----------------------------------------------------------------------


def test_multiplicity_hypersurface_pair():
    # principal ideals in O_3 have infinite colength, so the certificate is refused;
    # the attached hypersurface multiplicities still agree
    cert = certify_multiplicity(ideal(QUADRIC), ideal(QUADRIC_L), dims_equal=True, assumed_equivalent=True)
    assert cert.verdict == REFUSED
    assert cert.payload["m0"] == {"X": 2, "Y": 2}
    assert {h.name for h in cert.failed} >= {"I(X) has finite colength", "I(Y) has finite colength"}


def test_multiplicity_trivial_and_refused():
    m2 = maximal_power(2, 3)
    assert certify_multiplicity(m2, m2, dims_equal=True, assumed_equivalent=True).issued
    I = M((3, 0), (0, 3), (1, 1))
    cert = certify_multiplicity(I, I, dims_equal=True, assumed_equivalent=True)
    assert cert.verdict == REFUSED
    assert cert.failed[0].name.endswith("Gamma+(I) = Gamma+(m^2)")
    cert = certify_multiplicity(m2, m2, dims_equal=False, assumed_equivalent=True)
    assert [h.name for h in cert.failed] == ["dim X = dim Y"]


# -- Euler obstruction and polar multiplicity -------------------------------------------


def test_euler_smooth_pair():
    cert = certify_euler(germ(QUADRIC), germ(QUADRIC_L), assumed_equivalent=True)
    assert cert.issued and cert.status() is Status.ASSUMED
    assert all(h.status is Status.EXACT for h in cert.hypotheses if h.status is not Status.ASSUMED)
    assert all(c.holds for c in cert.checks)


@pytest.mark.parametrize("a", [3, 4, 5])
def test_euler_toric_pair(a):
    f, g = toric_pair(a)
    cert = certify_euler(f, g, assumed_equivalent=True)
    assert cert.issued
    assert all(h.status is Status.EXACT for h in cert.hypotheses if "equivalent" not in h.name)
    assert any("above order" in n for n in cert.notes)


def test_euler_control_pair_refused():
    cert = certify_euler(germ(QUADRIC), germ("x^3 + y^3 + z^3"), assumed_equivalent=True)
    assert cert.verdict == REFUSED
    failing = {c.name for c in cert.checks if not c.holds}
    assert {"ord(f) = ord(g)", "Gamma+(f) = Gamma+(g)"} <= failing


def test_euler_ambient_errors():
    with pytest.raises(DimensionMismatch):
        certify_euler(germ("x^2 + y^2", names="x,y"), germ(QUADRIC))
    with pytest.raises(HypothesisNotMet):
        certify_euler(germ(QUADRIC), germ(QUADRIC, context=S_TORIC))


def test_polar_m1_examples():
    cert = certify_polar_m1(germ(QUADRIC), germ(QUADRIC_L), assumed_equivalent=True)
    assert cert.issued and cert.payload["m0"] == {"f": 2, "g": 2}
    f = germ("x^3 + y^3 + z^3")
    assert certify_polar_m1(f, f, assumed_equivalent=True).issued
    assert certify_polar_m1(germ(QUADRIC), f, assumed_equivalent=True).verdict == REFUSED
    with pytest.raises(HypothesisNotMet):
        certify_polar_m1(germ("x^2 + y^2", names="x,y"), germ("x^2 + y^2", names="x,y"))


def test_ord_loj_and_jacobian_equivalence():
    cert = certify_ord_loj(M((3, 0), (0, 2)), M((2, 0), (0, 3)), assumed_equivalent=True)
    assert cert.issued
    cert = certify_ord_loj(M((3, 0), (0, 2)), M((4, 0), (0, 2)), assumed_equivalent=True)
    assert cert.verdict == REFUSED
    cert = certify_jacobian_equivalence(germ(QUADRIC), germ(QUADRIC_L), assumed_equivalent=True)
    assert cert.issued


# -- soundness of refusal ------------------------------------------------------------------


def _issued_examples():
    f, g = toric_pair(3)
    return [
        certify_closure_criterion(ideal(*I_PRIME), maximal_power(2, 3), assumed_equivalent=True),
        certify_jacobian_closure(germ(QUADRIC)),
        certify_jacobian_closure(germ("x^3 + y^4 + z^3", context=S_TORIC)),
        semihomogeneous_certificate(germ("x^3 + y^3 + z^3 + x^2*y^2")),
        certify_multiplicity(maximal_power(2, 3), maximal_power(2, 3), True, True),
        certify_euler(germ(QUADRIC), germ(QUADRIC_L), assumed_equivalent=True),
        certify_euler(f, g, assumed_equivalent=True),
        certify_polar_m1(germ(QUADRIC), germ(QUADRIC_L), assumed_equivalent=True),
        certify_ord_loj(maximal_power(2, 2), maximal_power(2, 2), assumed_equivalent=True),
    ]


def test_mutation_of_each_hypothesis_refuses():
    for cert in _issued_examples():
        assert cert.issued, cert.summary()
        for i, h in enumerate(cert.hypotheses):
            mutated = Certificate(cert.theorem, cert.anchor, cert.claim, list(cert.hypotheses))
            mutated.hypotheses[i] = replace(h, holds=False)
            assert mutated.verdict == REFUSED and mutated.conclusion is None


def test_input_mutations_refuse():
    # withdrawing the assumption or breaking a computed hypothesis flips the verdict
    assert certify_euler(germ(QUADRIC), germ(QUADRIC_L)).verdict == REFUSED
    assert certify_euler(germ("x^2*y + z^2"), germ("x^2*y + z^2"), True).verdict == REFUSED
    assert certify_closure_criterion(ideal(*I_PRIME), M((3, 0, 0), (0, 3, 0), (0, 0, 3)), True).verdict == REFUSED
    # in three variables x^2 + y^2 is singular along the z-axis
    assert certify_jacobian_closure(germ("x^2 + y^2")).verdict == REFUSED
    assert semihomogeneous_certificate(germ("x^2*y + z^4")).verdict == REFUSED


def test_advisory_semantics():
    cert = Certificate(Theorem.JACOBIAN_CLOSURE, "a", "c")
    cert.add("exact", Status.EXACT, True).add("numeric", Status.HEURISTIC, True)
    assert cert.verdict == ADVISORY and cert.conclusion is None
    assert cert.to_dict()["conclusion"] is None
    cert.add("assumed", Status.ASSUMED, False)
    assert cert.verdict == REFUSED


def test_certificate_determinism():
    for make in (
        lambda: certify_euler(*toric_pair(3), assumed_equivalent=True),
        lambda: certify_closure_criterion(ideal(*I_PRIME), maximal_power(2, 3), True),
    ):
        a, b = make().to_json(), make().to_json()
        assert a == b
        d = json.loads(a)
        assert list(d) == ["theorem", "anchor", "verdict", "hypotheses", "conclusion", "claim", "checks", "notes"]
        assert all(list(h) == ["name", "status", "holds", "detail"] for h in d["hypotheses"])
