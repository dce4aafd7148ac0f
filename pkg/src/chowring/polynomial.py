"""Sparse commutative polynomials over Q in index-tagged generator symbols.

A generator is a plain tuple ``(kind, *args)``; ``kind`` is a small integer
registered in :data:`KINDS`, and tuple comparison gives the canonical order
(kind first, then the index tuple). A monomial is a sorted tuple of
``(generator, exponent)`` pairs. All classes handled by the package have even
cohomological degree, so the algebra is commutative and carries no signs.
"""
from dataclasses import dataclass
from typing import Callable

from .kernels import mono_mul, mul_terms
from .rational import Q, ZERO, as_q, fmt_q


class RingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class KindSpec:
    name: str
    codim: Callable
    fmt: Callable
    index_args: tuple = ()  # positions of args that are factor indices


KINDS = {}


def register_kind(code, name, codim, fmt=None, index_args=()):
    if fmt is None:
        fmt = lambda args, _n=name: _n if not args else f"{_n}({','.join(map(str, args))})"
    if not callable(codim):
        codim = (lambda c: (lambda args: c))(codim)
    KINDS[code] = KindSpec(name, codim, fmt, tuple(index_args))


# BV ring of S^m
O, L, D = 0, 1, 2
register_kind(O, "o", 2, index_args=(0,))
register_kind(L, "L", 1, index_args=(1,))
register_kind(D, "D", 2, index_args=(0, 1))

# Hilbert-scheme tautological atoms
HT, HO, HI, HL, HE = 10, 11, 12, 13, 14
register_kind(HT, "c", lambda a: a[0], lambda a: f"c(T,{a[0]})")
register_kind(HO, "c", lambda a: a[0], lambda a: f"c(O,{a[0]})")
register_kind(HI, "c", lambda a: a[0], lambda a: f"c(I,{a[0]},{a[1]})", index_args=(1,))
register_kind(HL, "L", 1)
register_kind(HE, "ell", 1)

# Fano variety of lines; scalar parameters first so they lead each monomial
FQL, FIQL, FQD, FC, FCP = 20, 21, 22, 23, 24
FL, FCC, FEX, FD, FO = 30, 31, 32, 33, 34
register_kind(FQL, "ql", 0)
register_kind(FIQL, "iql", 0)
register_kind(FQD, "q", 0)
register_kind(FC, "C", 0)
register_kind(FCP, "Cp", 0)
register_kind(FL, "l", 1)
register_kind(FCC, "cc", 2)
register_kind(FEX, "Ex", 3)
register_kind(FD, "D", 1)
register_kind(FO, "o", 4)

# P^1-bundle of the universal line
PH = 40
register_kind(PH, "h", 1)

# free symbols (grading 0), used for symbolic certificates
SYM = 50
register_kind(SYM, "sym", 0, lambda a: str(a[0]))


_codim_cache = {}


def gen_codim(g):
    c = _codim_cache.get(g)
    if c is None:
        c = KINDS[g[0]].codim(g[1:])
        _codim_cache[g] = c
    return c


_mono_codim_cache = {}


def mono_codim(m):
    c = _mono_codim_cache.get(m)
    if c is None:
        c = 0
        for g, e in m:
            c += gen_codim(g) * e
        _mono_codim_cache[m] = c
    return c


def fmt_gen(g):
    return KINDS[g[0]].fmt(g[1:])


def mono_from_gens(gens):
    """Monomial from an iterable of generators (repeats allowed)."""
    counts = {}
    for g in gens:
        counts[g] = counts.get(g, 0) + 1
    return tuple(sorted(counts.items()))


def fmt_mono(m):
    parts = []
    for g, e in m:
        s = fmt_gen(g)
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial: ``terms`` maps monomial -> nonzero ``Q``."""

    __slots__ = ("terms", "ring", "_hash")

    def __init__(self, terms=None, ring="bv"):
        if terms:
            terms = {m: as_q(c) for m, c in terms.items()}
            terms = {m: c for m, c in terms.items() if c}
        self.terms = terms or {}
        self.ring = ring
        self._hash = None

    @classmethod
    def _raw(cls, terms, ring):
        p = cls.__new__(cls)
        p.terms = terms
        p.ring = ring
        p._hash = None
        return p

    @classmethod
    def const(cls, c, ring="bv"):
        c = as_q(c)
        return cls._raw({(): c} if c else {}, ring)

    @classmethod
    def gen(cls, g, ring="bv", exp=1):
        return cls._raw({((g, exp),): Q(1)}, ring)

    @classmethod
    def mono(cls, m, c=1, ring="bv"):
        c = as_q(c)
        return cls._raw({m: c} if c else {}, ring)

    # --- structure -------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def codims(self):
        return {mono_codim(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.codims()) <= 1

    def part(self, codim):
        return Polynomial._raw({m: c for m, c in self.terms.items() if mono_codim(m) == codim}, self.ring)

    def truncate(self, maxcodim):
        return Polynomial._raw({m: c for m, c in self.terms.items() if mono_codim(m) <= maxcodim}, self.ring)

    def constant(self):
        return self.terms.get((), ZERO)

    def gens(self):
        return {g for m in self.terms for g, _ in m}

    def with_ring(self, ring):
        return Polynomial._raw(self.terms, ring)

    # --- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return Polynomial.const(other, self.ring)

    def __add__(self, other):
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = as_q(c)
        if not c:
            return Polynomial._raw({}, self.ring)
        return Polynomial._raw({m: v * c for m, v in self.terms.items()}, self.ring)

    def mul(self, other, maxcodim=-1):
        """Product, optionally truncated above codimension ``maxcodim``."""
        other = self._coerce(other)
        if len(other.terms) == 1 and () in other.terms:
            return self.scale(other.terms[()]).truncate(maxcodim) if maxcodim >= 0 else self.scale(other.terms[()])
        return Polynomial._raw(mul_terms(self.terms, other.terms, maxcodim, mono_codim), self.ring)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def pow(self, k, maxcodim=-1):
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial.const(1, self.ring)
        base = self
        while k:
            if k & 1:
                result = result.mul(base, maxcodim)
            k >>= 1
            if k:
                base = base.mul(base, maxcodim)
        return result

    def __pow__(self, k):
        return self.pow(k)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return self.terms == Polynomial.const(other, self.ring).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # --- transformations -------------------------------------------------
    def map_gens(self, fn):
        """Apply ``fn`` to every generator; ``fn`` returns a generator or None (kills the term)."""
        out = {}
        for m, c in self.terms.items():
            gens = []
            dead = False
            for g, e in m:
                h = fn(g)
                if h is None:
                    dead = True
                    break
                gens.extend([h] * e)
            if dead:
                continue
            nm = mono_from_gens(gens)
            v = out.get(nm, ZERO) + c
            if v:
                out[nm] = v
            else:
                out.pop(nm, None)
        return Polynomial._raw(out, self.ring)

    def substitute(self, mapping, maxcodim=-1, ring=None):
        """Replace generators by polynomials (simultaneously).

        Generators absent from ``mapping`` are kept. ``mapping`` values must
        live in the target ``ring`` (default: same ring).
        """
        ring = ring or self.ring
        powers = {}

        def power(g, e):
            key = (g, e)
            p = powers.get(key)
            if p is None:
                p = mapping[g].with_ring(ring).pow(e, maxcodim)
                powers[key] = p
            return p

        acc = {}
        for m, c in self.terms.items():
            kept = []
            subs = []
            for g, e in m:
                if g in mapping:
                    subs.append(power(g, e))
                else:
                    kept.append((g, e))
            term = Polynomial._raw({tuple(kept): c}, ring)
            for p in subs:
                term = term.mul(p, maxcodim)
                if not term.terms:
                    break
            for tm, tc in term.terms.items():
                v = acc.get(tm)
                acc[tm] = tc if v is None else v + tc
        return Polynomial._raw({m: c for m, c in acc.items() if c}, ring)

    def collect(self, g):
        """Split by powers of generator ``g``: returns {power: coefficient polynomial}."""
        out = {}
        for m, c in self.terms.items():
            k = 0
            rest = []
            for h, e in m:
                if h == g:
                    k = e
                else:
                    rest.append((h, e))
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: Polynomial._raw(t, self.ring) for k, t in out.items()}

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"Polynomial({to_text(self)!r}, ring={self.ring!r})"

    def __str__(self):
        return to_text(self)


def to_text(p):
    """Canonical text: terms in monomial order, coefficients as ``a/b``."""
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        neg = c < 0
        a = -c if neg else c
        body = fmt_mono(m)
        if not body:
            s = fmt_q(a)
        elif a == 1:
            s = body
        else:
            s = f"{fmt_q(a)}*{body}"
        if not out:
            out.append(f"-{s}" if neg else s)
        else:
            out.append(f"- {s}" if neg else f"+ {s}")
    return " ".join(out)


def poly_add(a, b):
    return a + b


def poly_mul(a, b):
    return a * b


def gen_poly(kind, *args, ring="bv"):
    return Polynomial.gen((kind, *args), ring)


def o(i, ring="bv"):
    return Polynomial.gen((O, i), ring)


def Lg(s, i, ring="bv"):
    return Polynomial.gen((L, s, i), ring)


def Dg(i, j, ring="bv"):
    if i == j:
        raise ValueError("diagonal generator needs two distinct indices")
    a, b = (i, j) if i < j else (j, i)
    return Polynomial.gen((D, a, b), ring)
