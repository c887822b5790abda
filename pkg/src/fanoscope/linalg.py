"""Exact integer and rational linear algebra.

Everything in this package runs on plain Python ints and fractions.Fraction;
no floating point is used anywhere.  Matrices are lists of row lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

IntMatrix = list[list[int]]


class LinalgError(ValueError):
    pass


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    assert len(a[0]) == inner
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(rows)]


def mat_vec(a, v):
    return [sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def transpose(a):
    return [list(col) for col in zip(*a)]


def det(a) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(a)
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def hnf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular, H = U*A, pivots positive and entries
    above each pivot reduced into [0, pivot).
    """
    if not a:
        raise LinalgError("hnf of empty matrix")
    h = [row[:] for row in a]
    m, n = len(h), len(h[0])
    u = identity(m)
    r = 0
    for c in range(n):
        # gcd-reduce column c below row r
        while True:
            rows = [i for i in range(r, m) if h[i][c] != 0]
            if not rows:
                break
            piv = min(rows, key=lambda i: abs(h[i][c]))
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and h[r][c] != 0:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
        if r == m:
            break
    return h, u


def snf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (S, U, V) with S = U*A*V diagonal, d1|d2|...

    U and V are unimodular.
    """
    if not a:
        raise LinalgError("snf of empty matrix")
    s = [row[:] for row in a]
    m, n = len(s), len(s[0])
    u = identity(m)
    v = identity(n)

    def row_op(i, j, q):  # row i -= q * row j
        s[i] = [x - q * y for x, y in zip(s[i], s[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(j, i, q):  # col j -= q * col i
        for row in s:
            row[j] -= q * row[i]
        for row in v:
            row[j] -= q * row[i]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # find a pivot
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < best):
                    best = abs(s[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    row_op(i, t, q)
                    if s[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    col_op(j, t, q)
                    if s[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    # enforce divisibility d1 | d2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(min(m, n) - 1):
            a_, b_ = s[i][i], s[i + 1][i + 1]
            if b_ % a_ if a_ else b_:
                # fold b into a: standard trick via one extra reduction round
                col_op(i, i + 1, -1)  # col i += col i+1
                # now redo the elimination at position i
                _resmith(s, u, v, i)
                changed = True
    return s, u, v


def _resmith(s, u, v, t):
    m, n = len(s), len(s[0])
    while True:
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < best):
                    best = abs(s[i][j])
                    piv = (i, j)
        if piv is None:
            return
        if piv != (t, t):
            s[t], s[piv[0]] = s[piv[0]], s[t]
            u[t], u[piv[0]] = u[piv[0]], u[t]
            j = piv[1]
            if j != t:
                for row in s:
                    row[t], row[j] = row[j], row[t]
                for row in v:
                    row[t], row[j] = row[j], row[t]
        clean = True
        for i in range(t + 1, m):
            if s[i][t] != 0:
                q = s[i][t] // s[t][t]
                s[i] = [x - q * y for x, y in zip(s[i], s[t])]
                u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                if s[i][t] != 0:
                    clean = False
        for j in range(t + 1, n):
            if s[t][j] != 0:
                q = s[t][j] // s[t][t]
                for row in s:
                    row[j] -= q * row[t]
                for row in v:
                    row[j] -= q * row[t]
                if s[t][j] != 0:
                    clean = False
        if clean:
            if s[t][t] < 0:
                s[t] = [-x for x in s[t]]
                u[t] = [-x for x in u[t]]
            t += 1
            if t >= min(m, n):
                return


def rank(a) -> int:
    """Rank of a rational matrix via exact Gaussian elimination."""
    if not a or not a[0]:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def kernel_basis(a) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space of a rational matrix.

    Returns vectors with a unit entry in each free column (deterministic
    reduced-echelon construction); dimension equals cols - rank.
    """
    if not a:
        return []
    ncols = len(a[0])
    m = [[Fraction(x) for x in row] for row in a]
    nrows = len(m)
    pivots = {}  # column -> row
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
        if r == nrows:
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for c, row_i in pivots.items():
            vec[c] = -m[row_i][fc]
        basis.append(tuple(vec))
    return basis


def nullity(a) -> int:
    if not a:
        return 0
    return len(a[0]) - rank(a)


def saturate(basis: list) -> list[list[int]]:
    """Basis of the saturation of the sublattice spanned by integer rows."""
    rows = [list(map(int, r)) for r in basis if any(r)]
    if not rows:
        return []
    h, _ = hnf(rows)
    h = [r for r in h if any(r)]
    r = len(h)
    s, _, v = snf(h)
    # rowspan_Q(H) = span of the first r rows of V^{-1}; V unimodular so
    # V^{-1} is integral. Those rows form a saturated basis.
    vinv = _unimodular_inverse(v)
    return [vinv[i] for i in range(r)]


def _unimodular_inverse(v: IntMatrix) -> IntMatrix:
    n = len(v)
    d = det(v)
    if d not in (1, -1):
        raise LinalgError("matrix is not unimodular")
    # adjugate via cofactors; n <= 6 in this package so this is fine
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[v[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            cof = det(minor) if minor else 1
            inv[i][j] = ((-1) ** (i + j)) * cof * d
    return inv


def solve_in_span(rows: list, target) -> list[Fraction] | None:
    """Solve x * rows = target over Q; None if target is outside the span."""
    if not rows:
        return None if any(target) else []
    ncols = len(rows[0])
    aug = [[Fraction(rows[i][c]) for i in range(len(rows))] + [Fraction(target[c])]
           for c in range(ncols)]
    nvars = len(rows)
    sol = [Fraction(0)] * nvars
    r = 0
    pivots = []
    for c in range(nvars):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][-1] != 0:
            return None
    for i, c in enumerate(pivots):
        sol[c] = aug[i][-1]
    # verify (free variables set to zero must actually solve the system)
    for c in range(ncols):
        if sum(sol[i] * rows[i][c] for i in range(nvars)) != target[c]:
            return None
    return sol


def index_in_saturation(v, basis: list) -> int:
    """Largest k such that v/k lies in the saturation of the lattice spanned
    by the given integer rows.  Raises if v is outside the rational span."""
    sat = saturate(basis)
    coeffs = solve_in_span(sat, list(v))
    if coeffs is None:
        raise LinalgError("not in span")
    ints = []
    for c in coeffs:
        if c.denominator != 1:
            raise LinalgError("saturation solve produced non-integer")
        ints.append(int(c))
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise LinalgError("zero vector has no saturation index")
    return g


def primitive(vec) -> tuple[int, ...]:
    """Primitive integer vector on the ray through vec (clears denominators)."""
    fr = [Fraction(x) for x in vec]
    if all(x == 0 for x in fr):
        raise LinalgError("zero vector has no primitive representative")
    denom = 1
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def lex_positive(vec) -> tuple[int, ...]:
    """Flip sign so the first nonzero coordinate is positive."""
    for x in vec:
        if x != 0:
            return tuple(vec) if x > 0 else tuple(-y for y in vec)
    raise LinalgError("zero vector")
