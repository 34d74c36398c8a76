"""Newton polyhedra, toric semigroups and bi-Lipschitz invariant certificates for singularity germs."""

from .bilipschitz import (
    certify_closure_criterion,
    certify_euler,
    certify_jacobian_closure,
    certify_jacobian_equivalence,
    certify_multiplicity,
    certify_ord_loj,
    certify_polar_m1,
    obstruct_equivalence,
    semihomogeneous_certificate,
)
from .certificate import Certificate, Status, Theorem
from .germ import Germ
from .ideals import (
    Ideal,
    equals_maximal_power,
    finite_colength_test,
    integral_closure_monomials,
    is_nondegenerate,
    jacobian,
    maximal_power,
    newton_polyhedron,
    order,
)
from .invariants import (
    check_chain,
    colength_monomial,
    hilbert_fit,
    kouchnirenko_mu,
    loj0,
    loj0_oracle,
    lojJ,
    lojJ_oracle,
    monomial_ideal,
    multiplicity_polyhedral,
)
from .polyhedra import INFINITE, Polyhedron, axis_scale, covolume, hull_with_recession
from .semigroup import Semigroup, dual_cone, kernel_lattice, support
from .session import format_session, parse_session

__version__ = "0.1.0"

__all__ = [
    "axis_scale",
    "Certificate",
    "certify_closure_criterion",
    "certify_euler",
    "certify_jacobian_closure",
    "certify_jacobian_equivalence",
    "certify_multiplicity",
    "certify_ord_loj",
    "certify_polar_m1",
    "check_chain",
    "colength_monomial",
    "covolume",
    "dual_cone",
    "equals_maximal_power",
    "finite_colength_test",
    "format_session",
    "Germ",
    "hilbert_fit",
    "hull_with_recession",
    "Ideal",
    "INFINITE",
    "integral_closure_monomials",
    "is_nondegenerate",
    "jacobian",
    "kernel_lattice",
    "kouchnirenko_mu",
    "loj0",
    "loj0_oracle",
    "lojJ",
    "lojJ_oracle",
    "maximal_power",
    "monomial_ideal",
    "multiplicity_polyhedral",
    "newton_polyhedron",
    "obstruct_equivalence",
    "order",
    "parse_session",
    "Polyhedron",
    "Semigroup",
    "semihomogeneous_certificate",
    "Status",
    "support",
    "Theorem",
]
