"""Pure-Python exact kernels: convex hull of integer points and an integer simplex.

Both work on Python ints only, so every decision is exact.  The hull uses
floating point purely as a filter: a sign is taken from the float value
only when it clears a conservative error bound, otherwise it is recomputed
with integers.
"""

from math import gcd

EPS = 1e-11


def det(mat):
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            ik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - ik * rk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


def _reduce(v):
    g = 0
    for x in v:
        g = gcd(g, x)
        if g == 1:
            return v
    if g > 1:
        return [x // g for x in v]
    return v


def _eliminate(basis, v):
    """Reduce ``v`` against an echelon ``basis`` of (pivot, row); return the remainder."""
    for pc, row in basis:
        x = v[pc]
        if x:
            p = row[pc]
            v = _reduce([a * p - b * x for a, b in zip(v, row)])
    return v


def _add_to_basis(basis, v):
    v = _eliminate(basis, v)
    for j, x in enumerate(v):
        if x:
            basis.append((j, v))
            return True
    return False


def _to_float(vec):
    try:
        return [float(x) for x in vec]
    except OverflowError:
        return None


class _Facet:
    __slots__ = ("verts", "n", "c", "nf", "cf", "alive")

    def __init__(self, verts, n, c):
        self.verts = verts
        self.n = n
        self.c = c
        self.nf = _to_float(n)
        try:
            self.cf = float(c)
        except OverflowError:
            self.nf = None
            self.cf = 0.0
        self.alive = True


def _plane(pts):
    """Normal ``n`` and offset ``c`` of the hyperplane through ``k`` points of R^k."""
    p0 = pts[0]
    k = len(p0)
    rows = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    n = []
    for j in range(k):
        minor = [r[:j] + r[j + 1:] for r in rows]
        d = det(minor)
        n.append(-d if j % 2 else d)
    n = _reduce(n)
    c = sum(a * b for a, b in zip(n, p0))
    return n, c


def hull(points):
    """Convex hull of full-dimensional integer points in R^k (k >= 2).

    Returns ``(vertices, facets)``: the indices of the extreme points, and the
    facets of a triangulation of the boundary as tuples of ``k`` point
    indices.  Triangulation vertices may include non-extreme boundary points.
    """
    npts = len(points)
    if npts == 0:
        raise ValueError("no points")
    k = len(points[0])
    if k < 2:
        raise ValueError("hull kernel needs dimension >= 2")
    pts = [list(p) for p in points]
    pf = [_to_float(p) for p in pts]
    exact_only = any(p is None for p in pf)

    # Initial simplex: a lexicographic extreme, then farthest points first.
    i0 = min(range(npts), key=lambda i: pts[i])
    if exact_only:
        order = list(range(npts))
    else:
        base = pf[i0]
        order = sorted(
            range(npts),
            key=lambda i: -sum((a - b) * (a - b) for a, b in zip(pf[i], base)),
        )
    simplex = [i0]
    basis = []
    for i in order:
        if i == i0:
            continue
        if _add_to_basis(basis, [a - b for a, b in zip(pts[i], pts[i0])]):
            simplex.append(i)
            if len(simplex) == k + 1:
                break
    if len(simplex) < k + 1:
        raise ValueError("points are not full-dimensional")

    interior = [sum(pts[i][j] for i in simplex) for j in range(k)]
    kp1 = k + 1

    def make_facet(verts):
        n, c = _plane([pts[v] for v in verts])
        s = sum(a * b for a, b in zip(n, interior)) - kp1 * c
        if s > 0:
            n = [-a for a in n]
            c = -c
        elif s == 0:
            raise ArithmeticError("degenerate facet")
        return _Facet(tuple(sorted(verts)), n, c)

    def side(f, i):
        if not exact_only and f.nf is not None:
            p = pf[i]
            val = -f.cf
            mag = abs(f.cf)
            for a, b in zip(f.nf, p):
                t = a * b
                val += t
                mag += abs(t)
            bound = mag * EPS
            if val > bound:
                return 1
            if val < -bound:
                return -1
        v = sum(a * b for a, b in zip(f.n, pts[i])) - f.c
        return (v > 0) - (v < 0)

    ridge_map = {}

    def ridges(f):
        vs = f.verts
        return [vs[:j] + vs[j + 1:] for j in range(len(vs))]

    def attach(f):
        for r in ridges(f):
            ridge_map.setdefault(r, []).append(f)

    facets = []
    for j in range(kp1):
        f = make_facet([v for t, v in enumerate(simplex) if t != j])
        facets.append(f)
        attach(f)

    in_simplex = set(simplex)
    # Farthest-from-centroid first so interior points are discarded early.
    if exact_only:
        rest = [i for i in range(npts) if i not in in_simplex]
    else:
        cen = [sum(p[j] for p in pf) / npts for j in range(k)]
        rest = sorted(
            (i for i in range(npts) if i not in in_simplex),
            key=lambda i: -sum((a - b) * (a - b) for a, b in zip(pf[i], cen)),
        )

    for i in rest:
        visible = [f for f in facets if side(f, i) > 0]
        if not visible:
            continue
        for f in visible:
            f.alive = False
        horizon = []
        for f in visible:
            for r in ridges(f):
                pair = ridge_map[r]
                for g in pair:
                    if g is not f and g.alive:
                        horizon.append(r)
        for f in visible:
            for r in ridges(f):
                lst = ridge_map[r]
                lst.remove(f)
                if not lst:
                    del ridge_map[r]
        facets = [f for f in facets if f.alive]
        for r in horizon:
            f = make_facet(r + (i,))
            facets.append(f)
            attach(f)

    incident = {}
    for f in facets:
        key = tuple(f.n)
        for v in f.verts:
            incident.setdefault(v, set()).add(key)
    vertices = []
    for v, normals in incident.items():
        if len(normals) < k:
            continue
        b = []
        for nrm in normals:
            if _add_to_basis(b, list(nrm)) and len(b) == k:
                break
        if len(b) == k:
            vertices.append(v)
    vertices.sort()
    return vertices, [f.verts for f in facets]


# -- integer-pivoting simplex ---------------------------------------------------

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2


def simplex(a, b, c=None):
    """Solve ``min c.x`` s.t. ``A x = b``, ``x >= 0`` over the integers' field of fractions.

    ``A``, ``b`` and ``c`` hold Python ints.  With ``c=None`` only feasibility
    is decided (phase one).  Returns ``(status, numerators, denominator)``; the
    solution is ``x_j = numerators[j] / denominator`` for a basic feasible
    point.  Bland's rule guarantees termination.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    width = n + m + 1
    rhs = width - 1
    t = []
    for r in range(m):
        row = list(a[r]) + [0] * m + [b[r]]
        if b[r] < 0:
            row = [-x for x in row]
        row[n + r] = 1
        t.append(row)
    basis = [n + r for r in range(m)]
    obj = [0] * width
    for r in range(m):
        row = t[r]
        for j in range(n):
            obj[j] -= row[j]
        obj[rhs] -= row[rhs]
    dt = 1

    def pivot(p, col, obj, dt):
        prow = t[p]
        pv = prow[col]
        for r in range(m):
            if r == p:
                continue
            row = t[r]
            f = row[col]
            if f:
                t[r] = [(x * pv - f * y) // dt for x, y in zip(row, prow)]
            elif pv != dt:
                t[r] = [(x * pv) // dt for x in row]
        f = obj[col]
        if f:
            obj = [(x * pv - f * y) // dt for x, y in zip(obj, prow)]
        elif pv != dt:
            obj = [(x * pv) // dt for x in obj]
        basis[p] = col
        if pv < 0:
            for r in range(m):
                t[r] = [-x for x in t[r]]
            obj = [-x for x in obj]
            pv = -pv
        return obj, pv

    def run(obj, dt, allowed):
        while True:
            col = -1
            for j in range(allowed):
                if obj[j] < 0:
                    col = j
                    break
            if col < 0:
                return OPTIMAL, obj, dt
            p = -1
            for r in range(m):
                x = t[r][col]
                if x > 0:
                    if p < 0:
                        p = r
                        continue
                    lhs = t[r][rhs] * t[p][col]
                    cur = t[p][rhs] * x
                    if lhs < cur or (lhs == cur and basis[r] < basis[p]):
                        p = r
            if p < 0:
                return UNBOUNDED, obj, dt
            obj, dt = pivot(p, col, obj, dt)

    _, obj, dt = run(obj, dt, n + m)
    if obj[rhs] != 0:
        return INFEASIBLE, None, None

    # Drive zero-level artificials out of the basis where possible.
    for r in range(m):
        if basis[r] >= n:
            for j in range(n):
                if t[r][j] != 0:
                    obj, dt = pivot(r, j, obj, dt)
                    break

    if c is not None:
        obj = [dt * cj for cj in c] + [0] * (m + 1)
        for r in range(m):
            cb = c[basis[r]] if basis[r] < n else 0
            if cb:
                row = t[r]
                obj = [o - cb * x for o, x in zip(obj, row)]
        # Artificials left in the basis sit on all-zero rows; never let one enter.
        status, obj, dt = run(obj, dt, n)
        if status != OPTIMAL:
            return status, None, None

    x = [0] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = t[r][rhs]
    return OPTIMAL, x, dt
