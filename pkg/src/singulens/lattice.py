"""Exact integer and rational linear algebra on lists of Python ints/Fractions.

Matrices are plain lists of rows. Nothing here touches floating point.
"""

from fractions import Fraction
from math import gcd, lcm


def primitive(v):
    """Scale an integer vector to content 1 (the zero vector is returned as is)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def clear_denominators(v):
    """Smallest positive integer multiple of a rational vector."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    return tuple(int(Fraction(x) * den) for x in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _identity(m):
    return [[int(i == j) for j in range(m)] for i in range(m)]


def hnf_with_transform(rows):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ A``, ``U`` unimodular, the nonzero rows
    of ``H`` first, each pivot positive and entries above a pivot reduced into
    ``[0, pivot)``.
    """
    A = [list(r) for r in rows]
    m = len(A)
    k = len(A[0]) if m else 0
    U = _identity(m)
    p = 0
    for col in range(k):
        if p == m:
            break
        while True:
            live = [i for i in range(p, m) if A[i][col] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(A[i][col]))
            A[p], A[i0] = A[i0], A[p]
            U[p], U[i0] = U[i0], U[p]
            clean = True
            for i in range(p + 1, m):
                if A[i][col]:
                    q = A[i][col] // A[p][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[p])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[p])]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if A[p][col] == 0:
            continue
        if A[p][col] < 0:
            A[p] = [-a for a in A[p]]
            U[p] = [-a for a in U[p]]
        for i in range(p):
            q = A[i][col] // A[p][col]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[p])]
                U[i] = [a - q * b for a, b in zip(U[i], U[p])]
        p += 1
    return A, U


def hnf(rows):
    """Nonzero rows of the Hermite normal form (a canonical lattice basis)."""
    H, _ = hnf_with_transform(rows)
    return [tuple(r) for r in H if any(r)]


def left_kernel(rows):
    """Z-basis of ``{l : l @ A == 0}``, returned in Hermite normal form."""
    if not rows:
        return []
    H, U = hnf_with_transform(rows)
    basis = [U[i] for i in range(len(H)) if not any(H[i])]
    return hnf(basis) if basis else []


def smith_form(rows):
    """Smith normal form with transforms.

    Returns ``(U, D, V)`` with ``U @ A @ V == D``, ``U`` and ``V`` unimodular,
    ``D`` diagonal with ``d_1 | d_2 | ...`` and nonnegative entries.
    """
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for r in A:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                break
            _, i0, j0 = min(nz)
            swap_rows(t, i0)
            swap_cols(t, j0)
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // A[t][t])
                    done = done and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // A[t][t])
                    done = done and A[t][j] == 0
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t, then re-clear
            add_row(t, bad, -1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def invariant_factors(rows):
    _, D, _ = smith_form(rows)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def _echelon(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    m = len(M)
    k = len(M[0]) if m else 0
    p = 0
    for col in range(k):
        piv = next((i for i in range(p, m) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[p], M[piv] = M[piv], M[p]
        inv = 1 / M[p][col]
        M[p] = [x * inv for x in M[p]]
        for i in range(m):
            if i != p and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[p])]
        pivots.append(col)
        p += 1
        if p == m:
            break
    return M[:p], pivots


def rank(rows):
    if not rows:
        return 0
    return len(_echelon(rows)[1])


def nullspace(rows, ncols=None):
    """Basis over Q of ``{x : A @ x == 0}`` as Fraction tuples."""
    if not rows:
        k = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)]
    R, pivots = _echelon(rows)
    k = len(rows[0])
    free = [j for j in range(k) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * k
        x[f] = Fraction(1)
        for r, pc in zip(R, pivots):
            x[pc] = -r[f]
        basis.append(tuple(x))
    return basis


def solve(rows, rhs):
    """One rational solution of ``A x = b`` or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = _echelon(aug)
    k = len(rows[0])
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for r, pc in zip(R, pivots):
        x[pc] = r[-1]
    return tuple(x)


def det(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d
