"""Does a polynomial system have a common zero in the torus (C*)^n?

Systems are lists of ``{exponent: Fraction}`` dicts. ``torus_solvable`` tries
the exact backends in a fixed order and falls back to seeded numeric search:

1. a zero polynomial is dropped; a one-term equation has no torus zero;
2. two-term equations ``a z^p + b z^q`` read as ``z^(p-q) = -b/a``; such a
   binomial subsystem is consistent over C* iff every integer relation
   ``sum l_i (p_i - q_i) = 0`` satisfies ``prod c_i^l_i = 1``;
3. a single equation with two or more terms always has a torus zero;
4. supports on one lattice line reduce to univariate polynomials in
   ``u = z^d``; a common zero exists iff their gcd has a nonzero root;
5. equations that are linear forms after removing a monomial factor have a
   torus zero iff no coordinate vanishes on the kernel;
6. otherwise Gauss-Newton from random torus points (heuristic).
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lattice import left_kernel, nullspace, primitive

NUMERIC_SAMPLES = 200
SAMPLE_WINDOW = (0.25, 4.0)
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class TorusVerdict:
    solvable: bool
    exact: bool
    method: str


def _nonzero(system):
    return [dict(eq) for eq in system if eq]


def binomial_consistent(binomials):
    """Exact consistency of ``{z^v_i = c_i}`` over (C*)^n.

    ``binomials`` is a list of ``(v, c)`` with integer vectors ``v`` and
    nonzero rational ``c``.
    """
    if not binomials:
        return True
    vs = [tuple(v) for v, _ in binomials]
    cs = [Fraction(c) for _, c in binomials]
    for lam in left_kernel(vs):
        value = Fraction(1)
        for l, c in zip(lam, cs):
            if l:
                value *= c**l
        if value != 1:
            return False
    return True


def _as_binomial(eq):
    (p, a), (q, b) = sorted(eq.items())
    return tuple(x - y for x, y in zip(p, q)), -Fraction(b) / Fraction(a)


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a, b):
    a = list(a)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    return _poly_trim(a)


def poly_gcd(a, b):
    """Gcd of dense coefficient lists (constant term first) over Q."""
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _collinear(points):
    base = points[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return base, None
    d0 = primitive(diffs[0])
    for d in diffs[1:]:
        # d parallel to d0 iff all 2x2 minors vanish
        for i in range(len(d0)):
            for j in range(i + 1, len(d0)):
                if d[i] * d0[j] - d[j] * d0[i]:
                    return None
    return base, d0


def _line_coordinate(p, base, d):
    i = next(i for i, x in enumerate(d) if x)
    return (p[i] - base[i]) // d[i]


def _edge_backend(eqs):
    points = sorted({k for eq in eqs for k in eq})
    line = _collinear(points)
    if line is None:
        return None
    base, d = line
    if d is None:
        return TorusVerdict(False, True, "monomial")
    g = None
    for eq in eqs:
        js = {k: _line_coordinate(k, base, d) for k in eq}
        lo = min(js.values())
        coeffs = [Fraction(0)] * (max(js.values()) - lo + 1)
        for k, c in eq.items():
            coeffs[js[k] - lo] += c
        g = coeffs if g is None else poly_gcd(g, coeffs)
    return TorusVerdict(len(_poly_trim(list(g))) > 1, True, "univariate gcd")


def _linear_backend(eqs, n):
    rows = []
    for eq in eqs:
        low = tuple(min(k[i] for k in eq) for i in range(n))
        row = [Fraction(0)] * n
        for k, c in eq.items():
            e = tuple(x - y for x, y in zip(k, low))
            if sum(e) != 1:
                return None
            row[e.index(1)] += c
        rows.append(row)
    kernel = nullspace(rows, n)
    ok = all(any(v[i] != 0 for v in kernel) for i in range(n))
    return TorusVerdict(ok, True, "linear kernel")


def _numeric(eqs, n, rng, samples=NUMERIC_SAMPLES):
    exps = [np.array(list(eq.keys()), dtype=float) for eq in eqs]
    coefs = [np.array([float(c) for c in eq.values()], dtype=complex) for eq in eqs]
    scale = [np.linalg.norm(c) for c in coefs]
    coefs = [c / s for c, s in zip(coefs, scale)]

    def monomials(z, E):
        return np.prod(z[None, :] ** E, axis=1)

    def residual(z):
        worst = 0.0
        for E, c in zip(exps, coefs):
            m = c * monomials(z, E)
            denom = np.sum(np.abs(m))
            if denom == 0:
                return np.inf
            worst = max(worst, abs(np.sum(m)) / denom)
        return worst

    for _ in range(samples):
        mag = rng.uniform(*SAMPLE_WINDOW, size=n)
        z = mag * np.exp(2j * np.pi * rng.uniform(size=n))
        for _ in range(80):
            F = np.array([np.sum(c * monomials(z, E)) for E, c in zip(exps, coefs)])
            J = np.empty((len(eqs), n), dtype=complex)
            for i, (E, c) in enumerate(zip(exps, coefs)):
                m = c * monomials(z, E)
                J[i] = (m[:, None] * E).sum(axis=0) / z
            step, *_ = np.linalg.lstsq(J, -F, rcond=None)
            z = z + step
            if not np.all(np.isfinite(z)):
                break
            a = np.abs(z)
            if a.min() < 1e-6 or a.max() > 1e6:
                break
            if np.linalg.norm(step) < 1e-14 * max(1.0, np.linalg.norm(z)):
                break
        if np.all(np.isfinite(z)):
            a = np.abs(z)
            if a.min() >= 1e-6 and a.max() <= 1e6 and residual(z) < RESIDUAL_TOL:
                return True
    return False


def numeric_search(system, n, seed=0, samples=NUMERIC_SAMPLES):
    """Seeded sampling plus Gauss-Newton refinement; True if a torus zero was found."""
    eqs = _nonzero(system)
    if not eqs:
        return True
    return _numeric(eqs, n, np.random.default_rng(seed), samples)


def torus_solvable(system, n, seed=0):
    eqs = _nonzero(system)
    if not eqs:
        return TorusVerdict(True, True, "empty system")
    if any(len(eq) == 1 for eq in eqs):
        return TorusVerdict(False, True, "monomial")
    binomials = [_as_binomial(eq) for eq in eqs if len(eq) == 2]
    if binomials and not binomial_consistent(binomials):
        return TorusVerdict(False, True, "binomial lattice")
    if len(binomials) == len(eqs):
        return TorusVerdict(True, True, "binomial lattice")
    if len(eqs) == 1:
        return TorusVerdict(True, True, "single equation")
    for backend in (_edge_backend, lambda e: _linear_backend(e, n)):
        verdict = backend(eqs)
        if verdict is not None:
            return verdict
    found = _numeric(eqs, n, np.random.default_rng(seed))
    return TorusVerdict(found, False, "numeric sampling")


def _polyval(E, c, z):
    return np.sum(c * np.prod(z[None, :] ** E, axis=1))


def _polygrad(E, c, z):
    n = len(z)
    out = np.zeros(n, dtype=complex)
    for i in range(n):
        mask = E[:, i] > 0
        if not np.any(mask):
            continue
        Ei = E[mask].copy()
        coef = c[mask] * Ei[:, i]
        Ei[:, i] -= 1
        out[i] = np.sum(coef * np.prod(z[None, :] ** Ei, axis=1))
    return out


def nonzero_common_zero(system, n, seed=0, samples=NUMERIC_SAMPLES):
    """Seeded search for a common zero ``z != 0`` of homogeneous polynomials.

    Runs Gauss-Newton on the system plus a random affine chart ``<l, z> = 1``.
    A True answer comes with a point whose relative residual is below
    ``RESIDUAL_TOL``; False only means that no sample converged.
    """
    eqs = _nonzero(system)
    if not eqs:
        return True
    rng = np.random.default_rng(seed)
    exps = [np.array(list(eq.keys()), dtype=np.int64) for eq in eqs]
    coefs = []
    for eq in eqs:
        c = np.array([float(v) for v in eq.values()], dtype=complex)
        coefs.append(c / np.linalg.norm(c))
    chart = rng.normal(size=n) + 1j * rng.normal(size=n)
    for _ in range(samples):
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        z = z / (chart @ z)
        for _ in range(80):
            F = np.array([_polyval(E, c, z) for E, c in zip(exps, coefs)] + [chart @ z - 1])
            J = np.array([_polygrad(E, c, z) for E, c in zip(exps, coefs)] + [chart])
            step, *_ = np.linalg.lstsq(J, -F, rcond=None)
            z = z + step
            if not np.all(np.isfinite(z)) or np.linalg.norm(z) > 1e6:
                break
            if np.linalg.norm(step) < 1e-14 * max(1.0, np.linalg.norm(z)):
                break
        if not np.all(np.isfinite(z)) or np.linalg.norm(z) > 1e6:
            continue
        scale = np.linalg.norm(z)
        worst = 0.0
        for E, c in zip(exps, coefs):
            d = int(E[0].sum())
            worst = max(worst, abs(_polyval(E, c, z)) / scale**d)
        if worst < RESIDUAL_TOL:
            return True
    return False
