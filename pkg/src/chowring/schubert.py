"""Schubert calculus on the Grassmannian G(2,6) of lines in P^5.

Classes are dicts ``{(a, b): Q}`` over partitions 4 >= a >= b >= 0; sigma_{4,4}
is the point class. Products use Pieri for special classes and Giambelli
sigma_{a,b} = sigma_a sigma_b - sigma_{a+1} sigma_{b-1} for the rest.
"""
from functools import lru_cache

from .rational import Q, ZERO, as_q, fmt_q

ROWS, COLS = 2, 4
POINT = (COLS, COLS)


class SchubertError(ValueError):
    pass


def _valid(a, b):
    return COLS >= a >= b >= 0


class SchubertElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        for k, v in (terms or {}).items():
            a, b = k
            if not _valid(a, b):
                raise SchubertError(f"sigma_{a},{b} is not in the 2x4 box")
            v = as_q(v)
            if v:
                out[(a, b)] = v
        self.terms = out

    @classmethod
    def sigma(cls, a, b=0):
        return cls({(a, b): 1})

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return SchubertElement(out)

    def __neg__(self):
        return SchubertElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_q(c)
        return SchubertElement({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SchubertElement):
            return pieri_multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = SchubertElement.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SchubertElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def codims(self):
        return {a + b for a, b in self.terms}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), v in sorted(self.terms.items()):
            body = f"s({a},{b})"
            s = body if abs(v) == 1 else f"{fmt_q(abs(v))}*{body}"
            if not parts:
                parts.append(f"-{s}" if v < 0 else s)
            else:
                parts.append(f"- {s}" if v < 0 else f"+ {s}")
        return " ".join(parts)

    __repr__ = __str__


@lru_cache(maxsize=None)
def _pieri_special(k, a, b):
    """sigma_k * sigma_{a,b} as a tuple of partitions (horizontal strips)."""
    if k == 0:
        return ((a, b),)
    out = []
    for a2 in range(a, COLS + 1):
        b2 = a + b + k - a2
        if b <= b2 <= a and b2 <= a2:
            out.append((a2, b2))
    return tuple(out)


def _times_special(x, k):
    if k < 0 or k > COLS:
        return {}
    out = {}
    for (a, b), v in x.items():
        for part in _pieri_special(k, a, b):
            out[part] = out.get(part, ZERO) + v
    return out


@lru_cache(maxsize=None)
def _times_schubert(key, a, b):
    x = dict(key)
    first = _times_special(_times_special(x, a), b)
    second = _times_special(_times_special(x, a + 1), b - 1) if b >= 1 else {}
    out = dict(first)
    for k, v in second.items():
        out[k] = out.get(k, ZERO) - v
    return tuple(sorted((k, v) for k, v in out.items() if v))


def pieri_multiply(x, y):
    """Exact product in H*(G(2,6))."""
    out = {}
    for (a, b), c in y.terms.items():
        for k, v in _times_schubert(tuple(sorted(x.terms.items())), a, b):
            out[k] = out.get(k, ZERO) + v * c
    return SchubertElement(out)


def integrate_grass(e):
    """Degree: coefficient of the point class."""
    return e.terms.get(POINT, ZERO)


def sigma1():
    return SchubertElement.sigma(1)


def sigma11():
    return SchubertElement.sigma(1, 1)


def poincare_matrix(codim):
    """Pairings of the Schubert classes of a given codimension with those of the complement."""
    parts = sorted(p for p in ((a, codim - a) for a in range(COLS + 1)) if _valid(*p))
    dual = sorted(p for p in ((a, 8 - codim - a) for a in range(COLS + 1)) if _valid(*p))
    return parts, dual, [[integrate_grass(SchubertElement.sigma(*p) * SchubertElement.sigma(*q))
                          for q in dual] for p in parts]
