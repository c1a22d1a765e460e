"""Dense two-phase simplex over ``Fraction`` with Bland's rule.

Only used for distance computations; emptiness tests go through
``geometry`` directly.
"""

from fractions import Fraction


def _pivot(tab, basis, r, c):
    row = tab[r]
    p = row[c]
    if p != 1:
        tab[r] = row = [x / p for x in row]
    for i, other in enumerate(tab):
        if i != r and other[c] != 0:
            f = other[c]
            tab[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(tab, basis, ncols, allowed):
    """Minimise the objective stored in the last row (reduced costs)."""
    obj = len(tab) - 1
    while True:
        col = next((j for j in range(ncols) if j in allowed and tab[obj][j] < 0), None)
        if col is None:
            return True
        best = None
        for i in range(obj):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], col)


def minimize(c, a_ub, b_ub, a_eq=(), b_eq=()):
    """Minimise ``c.z`` with ``A_ub z <= b_ub`` and ``A_eq z = b_eq``, z free.

    Returns ``(value, z)``, ``None`` when infeasible, or raises
    ``ValueError`` when unbounded.
    """
    n = len(c)
    rows = []
    rhs = []
    kinds = []
    for a, b in zip(a_ub, b_ub):
        rows.append([Fraction(x) for x in a])
        rhs.append(Fraction(b))
        kinds.append("ub")
    for a, b in zip(a_eq, b_eq):
        rows.append([Fraction(x) for x in a])
        rhs.append(Fraction(b))
        kinds.append("eq")
    m = len(rows)
    n_ub = kinds.count("ub")
    # columns: z+ (n), z- (n), slacks (n_ub), artificials (m)
    nvar = 2 * n + n_ub + m
    tab = []
    basis = []
    s = 0
    for i in range(m):
        row = rows[i] + [-x for x in rows[i]] + [Fraction(0)] * (n_ub + m) + [rhs[i]]
        if kinds[i] == "ub":
            row[2 * n + s] = Fraction(1)
            s += 1
        if row[-1] < 0:
            row = [-x for x in row]
        row[2 * n + n_ub + i] = Fraction(1)
        tab.append(row)
        basis.append(2 * n + n_ub + i)
    # phase one objective: sum of artificials, expressed in nonbasic terms
    obj = [Fraction(0)] * (nvar + 1)
    for row in tab:
        for j in range(nvar + 1):
            obj[j] -= row[j]
    for i in range(m):
        obj[2 * n + n_ub + i] = Fraction(0)
    tab.append(obj)
    _run(tab, basis, nvar, set(range(nvar)))
    if tab[-1][-1] != 0:
        return None
    art = set(range(2 * n + n_ub, nvar))
    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] in art:
            col = next((j for j in range(2 * n + n_ub) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)
    cost = [Fraction(x) for x in c] + [-Fraction(x) for x in c] + [Fraction(0)] * (n_ub + m)
    obj = cost + [Fraction(0)]
    for i in range(m):
        cb = cost[basis[i]]
        if cb:
            obj = [a - cb * b for a, b in zip(obj, tab[i])]
    tab[-1] = obj
    allowed = set(range(2 * n + n_ub))
    if not _run(tab, basis, nvar, allowed):
        raise ValueError("unbounded linear program")
    z = [Fraction(0)] * (2 * n)
    for i in range(m):
        if basis[i] < 2 * n:
            z[basis[i]] = tab[i][-1]
    x = tuple(z[j] - z[n + j] for j in range(n))
    value = sum(ci * xi for ci, xi in zip(c, x))
    return value, x


def linf_distance(p, q):
    """Exact L-infinity distance between two polytopes (``RationalPolytope``)."""
    d = p.dim
    # variables: x (d), y (d), t
    nv = 2 * d + 1
    a = []
    b = []
    for h in p.halfspaces:
        a.append(list(h.normal) + [0] * (d + 1))
        b.append(h.offset)
    for h in q.halfspaces:
        a.append([0] * d + list(h.normal) + [0])
        b.append(h.offset)
    for i in range(d):
        row = [0] * nv
        row[i] = 1
        row[d + i] = -1
        row[-1] = -1
        a.append(row)
        b.append(0)
        row = [0] * nv
        row[i] = -1
        row[d + i] = 1
        row[-1] = -1
        a.append(row)
        b.append(0)
    c = [0] * (2 * d) + [1]
    res = minimize(c, a, b)
    if res is None:
        raise ValueError("empty polytope in distance computation")
    return res[0]
