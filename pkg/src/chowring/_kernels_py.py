"""Pure-Python hot kernels. ``_kernels.pyx`` mirrors this file line for line."""


def mono_mul(a, b):
    """Product of two monomials stored as sorted ``((gen, exp), ...)`` tuples."""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la = len(a)
    lb = len(b)
    while i < la and j < lb:
        ga, ea = a[i]
        gb, eb = b[j]
        if ga == gb:
            out.append((ga, ea + eb))
            i += 1
            j += 1
        elif ga < gb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mul_terms(a, b, maxdeg, deg_of):
    """Multiply two term dicts, dropping products of degree above ``maxdeg``.

    ``maxdeg < 0`` disables truncation.
    """
    da = [(m, c, deg_of(m)) for m, c in a.items()]
    db = sorted(((m, c, deg_of(m)) for m, c in b.items()), key=lambda t: t[2])
    out = {}
    for ma, ca, ga in da:
        for mb, cb, gb in db:
            if maxdeg >= 0 and ga + gb > maxdeg:
                break
            m = mono_mul(ma, mb)
            v = out.get(m)
            if v is None:
                out[m] = ca * cb
            else:
                out[m] = v + ca * cb
    return {m: c for m, c in out.items() if c}


def bareiss_rank(rows, ncols):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if mat[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        p = prow[col]
        for r in range(rank + 1, nrows):
            row = mat[r]
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
