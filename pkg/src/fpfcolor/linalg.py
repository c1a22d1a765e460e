"""Small exact linear algebra over ``Fraction``; matrices are lists of rows."""

from fractions import Fraction


def solve(a, b):
    """Solve the square system ``a x = b``; ``None`` if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        row = m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col] / p
                mr = m[r]
                for c in range(col, n + 1):
                    mr[c] -= factor * row[c]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def rank(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / p
                for c in range(col, ncols):
                    m[i][c] -= f * m[r][c]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows, ncols):
    """Basis of ``{x : rows @ x = 0}``."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(tuple(v))
    return basis


def inverse(a):
    n = len(a)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        x = solve(a, e)
        if x is None:
            return None
        cols.append(x)
    return [tuple(cols[j][i] for j in range(n)) for i in range(n)]


def det(a):
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        p = m[col][col]
        d *= p
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / p
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return d


def matvec(g, x):
    return tuple(sum(gij * xj for gij, xj in zip(row, x)) for row in g)
