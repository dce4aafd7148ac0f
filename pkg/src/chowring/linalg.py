"""Dense exact linear algebra over Q."""
from math import lcm

from .kernels import bareiss_rank
from .rational import Q, as_q


class RatMatrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        self.rows = [[as_q(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("matrix rows must have equal length")
        self.ncols = ncols

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r, c):
        return cls([[0] * c for _ in range(r)], c)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self):
        return RatMatrix([list(col) for col in zip(*self.rows)] if self.rows else [], self.nrows)

    def __repr__(self):
        return f"RatMatrix({[[str(x) for x in r] for r in self.rows]})"


def _integer_rows(rows):
    out = []
    for r in rows:
        den = 1
        for x in r:
            if x.denominator != 1:
                den = lcm(den, int(x.denominator))
        out.append([int(x * den) for x in r])
    return out


def mat_rank(m):
    """Exact rank, fraction-free after clearing row denominators."""
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return bareiss_rank(_integer_rows(m.rows), m.ncols)


def sparse_rank(vectors):
    """Rank of a list of sparse vectors given as ``{column_key: value}`` dicts."""
    keys = sorted({k for v in vectors for k in v})
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for v in vectors:
        row = [Q(0)] * len(keys)
        for k, x in v.items():
            row[index[k]] = as_q(x)
        rows.append(row)
    if not rows or not keys:
        return 0
    return bareiss_rank(_integer_rows(rows), len(keys))


def rref(m):
    """Reduced row echelon form and pivot columns."""
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    a = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, m.nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    return a, pivots


def solve_nullspace(m):
    """Basis of the right kernel, one vector per free column."""
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    a, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Q(0)] * m.ncols
        v[f] = Q(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def det(m):
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m.rows]
    n = m.nrows
    d = Q(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Q(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m):
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    n = m.nrows
    aug = RatMatrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)])
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return RatMatrix([row[n:] for row in a[:n]])
