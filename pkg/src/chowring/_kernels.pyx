# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_kernels_py``."""


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, la = len(a), lb = len(b)
    cdef list out
    cdef tuple ta, tb
    if la == 0:
        return b
    if lb == 0:
        return a
    out = []
    while i < la and j < lb:
        ta = <tuple>a[i]
        tb = <tuple>b[j]
        ga = ta[0]
        gb = tb[0]
        if ga == gb:
            out.append((ga, ta[1] + tb[1]))
            i += 1
            j += 1
        elif ga < gb:
            out.append(ta)
            i += 1
        else:
            out.append(tb)
            j += 1
    while i < la:
        out.append(a[i])
        i += 1
    while j < lb:
        out.append(b[j])
        j += 1
    return tuple(out)


def mul_terms(dict a, dict b, long maxdeg, deg_of):
    cdef list da = [(m, c, deg_of(m)) for m, c in a.items()]
    cdef list db = sorted([(m, c, deg_of(m)) for m, c in b.items()], key=lambda t: t[2])
    cdef dict out = {}
    cdef long ga, gb
    cdef tuple ta, tb, m
    for ta in da:
        ga = ta[2]
        for tb in db:
            gb = tb[2]
            if maxdeg >= 0 and ga + gb > maxdeg:
                break
            m = mono_mul(<tuple>ta[0], <tuple>tb[0])
            v = out.get(m)
            if v is None:
                out[m] = ta[1] * tb[1]
            else:
                out[m] = v + ta[1] * tb[1]
    return {k: c for k, c in out.items() if c}


def bareiss_rank(rows, Py_ssize_t ncols):
    cdef list mat = [list(src_row) for src_row in rows]
    cdef Py_ssize_t nrows = len(mat), rank = 0, col, r, c, piv
    cdef list prow, row
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if (<list>mat[r])[col]:
                piv = r
                break
        if piv < 0:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = <list>mat[rank]
        p = prow[col]
        for r in range(rank + 1, nrows):
            row = <list>mat[r]
            a = row[col]
            if a:
                for c in range(col + 1, ncols):
                    row[c] = (p * row[c] - a * prow[c]) // prev
            else:
                for c in range(col + 1, ncols):
                    row[c] = (p * row[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank
