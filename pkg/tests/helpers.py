"""Shared builders for the test suite."""

import random

from singulens.germ import Germ
from singulens.invariants import monomial_ideal
from singulens.semigroup import Semigroup
from singulens.session import parse_session

CORPUS_SEED = 20240601
CORPUS_SIZE = 100

S_TORIC = Semigroup([(1, 0), (1, 1), (1, 2)])


def variables(n, context=None):
    return Germ.variables(n, context)


def germ(text, names="x,y,z", context=None):
    """A germ read from session syntax in the given variables."""
    if context is None:
        src = f"ring R = affine({len(names.split(','))}) vars {names}\ngerm f = {text}"
    else:
        gens = ", ".join("(" + ",".join(map(str, g)) + ")" for g in context.generators)
        src = f"semigroup S = [{gens}]\nring R = toric(S) vars {names}\ngerm f = {text}"
    return parse_session(src)["f"]


def ideal(*texts, names="x,y,z", context=None):
    from singulens.ideals import Ideal

    gs = [germ(t, names, context) for t in texts]
    return Ideal(gs, gs[0].context)


def random_monomial_ideal(rng, n, max_exp=6, extra=(0, 3)):
    """Pure powers of every variable plus a few random monomials: finite colength."""
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = rng.randint(1, max_exp)
        gens.append(tuple(e))
    for _ in range(rng.randint(*extra)):
        e = tuple(rng.randint(0, max_exp) for _ in range(n))
        if any(e):
            gens.append(e)
    return monomial_ideal(gens)


def corpus(seed=CORPUS_SEED, size=CORPUS_SIZE):
    """Seeded finite-colength monomial ideals with n in {2, 3}, exponents <= 6."""
    rng = random.Random(seed)
    return [random_monomial_ideal(rng, rng.choice((2, 3))) for _ in range(size)]
