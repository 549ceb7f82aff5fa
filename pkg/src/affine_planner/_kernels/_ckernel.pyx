# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernel``.

Same algorithms and the same exact answers; the floating-point filter and
the facet visibility scan run in C.  Exact arithmetic stays on Python ints.
"""

from libc.math cimport fabs
from libc.stdlib cimport free, malloc

from ._pykernel import _add_to_basis, _plane, det  # noqa: F401  (det re-exported)
from ._pykernel import INFEASIBLE, OPTIMAL, UNBOUNDED

cdef enum:
    MAXK = 16

cdef double EPS = 1e-11


cdef class _Facet:
    cdef public tuple verts
    cdef public list n
    cdef public object c
    cdef double nf[MAXK]
    cdef double cf
    cdef bint has_f
    cdef public bint alive

    def __init__(self, tuple verts, list n, object c):
        cdef int j
        self.verts = verts
        self.n = n
        self.c = c
        self.alive = True
        self.has_f = True
        try:
            for j in range(len(n)):
                self.nf[j] = float(n[j])
            self.cf = float(c)
        except OverflowError:
            self.has_f = False


cdef inline int _side(_Facet f, Py_ssize_t i, double* pf, int k, bint exact_only, list pts):
    cdef double val, mag, t, bound
    cdef int j
    cdef Py_ssize_t base
    if not exact_only and f.has_f:
        base = i * k
        val = -f.cf
        mag = fabs(f.cf)
        for j in range(k):
            t = f.nf[j] * pf[base + j]
            val += t
            mag += fabs(t)
        bound = mag * EPS
        if val > bound:
            return 1
        if val < -bound:
            return -1
    p = pts[i]
    v = -f.c
    for j in range(k):
        v += f.n[j] * p[j]
    return (v > 0) - (v < 0)


def hull(points):
    """Convex hull of full-dimensional integer points in R^k (k >= 2); see ``_pykernel.hull``."""
    cdef Py_ssize_t npts = len(points)
    cdef int k, j, kp1
    cdef Py_ssize_t i, a
    cdef bint exact_only = False
    cdef double* pf = NULL
    cdef double d, acc
    cdef _Facet f, g
    if npts == 0:
        raise ValueError("no points")
    k = len(points[0])
    if k < 2:
        raise ValueError("hull kernel needs dimension >= 2")
    if k > MAXK:
        from ._pykernel import hull as py_hull
        return py_hull(points)
    pts = [list(p) for p in points]
    pf = <double*> malloc(npts * k * sizeof(double))
    if pf == NULL:
        raise MemoryError()
    try:
        try:
            for i in range(npts):
                p = pts[i]
                for j in range(k):
                    pf[i * k + j] = float(p[j])
        except OverflowError:
            exact_only = True

        i0 = min(range(npts), key=lambda t: pts[t])
        if exact_only:
            order = list(range(npts))
        else:
            dist = []
            for i in range(npts):
                acc = 0.0
                for j in range(k):
                    d = pf[i * k + j] - pf[i0 * k + j]
                    acc += d * d
                dist.append(-acc)
            order = sorted(range(npts), key=dist.__getitem__)
        simplex = [i0]
        basis = []
        base0 = pts[i0]
        for i in order:
            if i == i0:
                continue
            if _add_to_basis(basis, [x - y for x, y in zip(pts[i], base0)]):
                simplex.append(i)
                if len(simplex) == k + 1:
                    break
        if len(simplex) < k + 1:
            raise ValueError("points are not full-dimensional")

        interior = [sum(pts[v][j] for v in simplex) for j in range(k)]
        kp1 = k + 1

        def make_facet(verts):
            n, c = _plane([pts[v] for v in verts])
            s = sum(x * y for x, y in zip(n, interior)) - kp1 * c
            if s > 0:
                n = [-x for x in n]
                c = -c
            elif s == 0:
                raise ArithmeticError("degenerate facet")
            return _Facet(tuple(sorted(verts)), n, c)

        ridge_map = {}
        facets = []
        for j in range(kp1):
            f = make_facet([v for t, v in enumerate(simplex) if t != j])
            facets.append(f)
            for r in _ridges(f.verts):
                ridge_map.setdefault(r, []).append(f)

        in_simplex = set(simplex)
        if exact_only:
            rest = [t for t in range(npts) if t not in in_simplex]
        else:
            cen = [0.0] * k
            for i in range(npts):
                for j in range(k):
                    cen[j] += pf[i * k + j]
            cen = [x / npts for x in cen]
            dist = {}
            for i in range(npts):
                if i in in_simplex:
                    continue
                acc = 0.0
                for j in range(k):
                    d = pf[i * k + j] - cen[j]
                    acc += d * d
                dist[i] = -acc
            rest = sorted(dist, key=dist.__getitem__)

        for i in rest:
            visible = []
            for f in facets:
                if _side(f, i, pf, k, exact_only, pts) > 0:
                    visible.append(f)
            if not visible:
                continue
            for f in visible:
                f.alive = False
            horizon = []
            for f in visible:
                for r in _ridges(f.verts):
                    for g in ridge_map[r]:
                        if g is not f and g.alive:
                            horizon.append(r)
            for f in visible:
                for r in _ridges(f.verts):
                    lst = ridge_map[r]
                    lst.remove(f)
                    if not lst:
                        del ridge_map[r]
            facets = [g for g in facets if g.alive]
            for r in horizon:
                f = make_facet(r + (i,))
                facets.append(f)
                for rr in _ridges(f.verts):
                    ridge_map.setdefault(rr, []).append(f)
    finally:
        free(pf)

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


cdef list _ridges(tuple vs):
    cdef Py_ssize_t j, m = len(vs)
    return [vs[:j] + vs[j + 1:] for j in range(m)]


# -- integer-pivoting simplex ---------------------------------------------------


def simplex(a, b, c=None):
    """Integer-pivoting simplex; see ``_pykernel.simplex`` for the contract."""
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t n = len(a[0]) if m else 0
    cdef Py_ssize_t width = n + m + 1
    cdef Py_ssize_t rhs = width - 1
    cdef Py_ssize_t r, j
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

    obj, dt = _run(t, basis, obj, dt, m, n + m, rhs)
    if obj is None:
        return UNBOUNDED, None, None
    if obj[rhs] != 0:
        return INFEASIBLE, None, None

    for r in range(m):
        if basis[r] >= n:
            for j in range(n):
                if t[r][j] != 0:
                    obj, dt = _pivot(t, basis, r, j, obj, dt, m)
                    break

    if c is not None:
        obj = [dt * cj for cj in c] + [0] * (m + 1)
        for r in range(m):
            cb = c[basis[r]] if basis[r] < n else 0
            if cb:
                row = t[r]
                obj = [o - cb * x for o, x in zip(obj, row)]
        obj, dt = _run(t, basis, obj, dt, m, n, rhs)
        if obj is None:
            return UNBOUNDED, None, None

    x = [0] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = t[r][rhs]
    return OPTIMAL, x, dt


cdef tuple _pivot(list t, list basis, Py_ssize_t p, Py_ssize_t col, list obj, object dt, Py_ssize_t m):
    cdef Py_ssize_t r
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


cdef tuple _run(list t, list basis, list obj, object dt, Py_ssize_t m, Py_ssize_t allowed, Py_ssize_t rhs):
    """Bland's-rule pivoting; returns ``(None, dt)`` when unbounded."""
    cdef Py_ssize_t j, r, col, p
    while True:
        col = -1
        for j in range(allowed):
            if obj[j] < 0:
                col = j
                break
        if col < 0:
            return obj, dt
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
            return None, dt
        obj, dt = _pivot(t, basis, p, col, obj, dt, m)
