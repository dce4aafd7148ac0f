"""K-theory classes in Chern-character coordinates."""
from math import factorial

from .polynomial import Polynomial
from .rational import Q


def ch_from_chern(rank, chern, d, ring="hilbert"):
    """Chern character components ch_1..ch_d from Chern classes c_1..c_d.

    ``chern`` is a list whose entry k-1 is c_k (missing entries are zero).
    Uses Newton's identities p_k = (-1)^(k-1) k e_k + sum_i (-1)^(i-1) e_i p_(k-i).
    """
    e = [Polynomial.const(1, ring)] + [
        chern[k - 1] if k - 1 < len(chern) else Polynomial({}, ring) for k in range(1, d + 1)
    ]
    p = [None]
    for k in range(1, d + 1):
        acc = e[k].scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            if e[i] and p[k - i]:
                term = e[i] * p[k - i]
                acc = acc + (term if i % 2 == 1 else -term)
        p.append(acc)
    return KClass(rank, {k: p[k].scale(Q(1, factorial(k))) for k in range(1, d + 1) if p[k]}, d, ring)


def chern_from_ch(k, top=None):
    """Chern classes c_1..c_top of a KClass (Newton inversion)."""
    top = k.d if top is None else top
    ring = k.ring
    p = [None] + [k.ch_part(i).scale(factorial(i)) for i in range(1, top + 1)]
    e = [Polynomial.const(1, ring)]
    for n in range(1, top + 1):
        acc = Polynomial({}, ring)
        for i in range(1, n + 1):
            if e[n - i] and p[i]:
                term = e[n - i] * p[i]
                acc = acc + (term if i % 2 == 1 else -term)
        e.append(acc.scale(Q(1, n)))
    return e[1:]


class KClass:
    """Virtual class with formal ``rank`` and graded Chern character ``ch``.

    ``ch`` maps degree k (1..d) to a homogeneous Polynomial; components above
    the working dimension ``d`` are dropped.
    """

    __slots__ = ("rank", "ch", "d", "ring")

    def __init__(self, rank, ch, d, ring="hilbert"):
        self.rank = rank
        self.ch = {k: v for k, v in ch.items() if 1 <= k <= d and v}
        self.d = d
        self.ring = ring

    def ch_part(self, k):
        return self.ch.get(k) or Polynomial({}, self.ring)

    @classmethod
    def trivial(cls, rank, d, ring="hilbert"):
        return cls(rank, {}, d, ring)

    @classmethod
    def line(cls, t, d, ring="hilbert"):
        """Line bundle with first Chern class ``t`` (a codim-1 polynomial)."""
        return cls.trivial(1, d, ring).tensor_line(t)

    def _check(self, other):
        if self.ring != other.ring or self.d != other.d:
            raise ValueError("K-classes live on different ambients")

    def __add__(self, other):
        self._check(other)
        ch = dict(self.ch)
        for k, v in other.ch.items():
            ch[k] = ch[k] + v if k in ch else v
        return KClass(self.rank + other.rank, ch, self.d, self.ring)

    def __neg__(self):
        return KClass(-self.rank, {k: -v for k, v in self.ch.items()}, self.d, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def dual(self):
        return KClass(self.rank, {k: (-v if k % 2 else v) for k, v in self.ch.items()}, self.d, self.ring)

    def tensor(self, other):
        self._check(other)
        ch = {}
        for k, v in self.ch.items():
            ch[k] = v.scale(other.rank)
        for k, v in other.ch.items():
            ch[k] = ch[k] + v.scale(self.rank) if k in ch else v.scale(self.rank)
        for a, va in self.ch.items():
            for b, vb in other.ch.items():
                if a + b <= self.d:
                    ch[a + b] = ch[a + b] + va * vb if a + b in ch else va * vb
        return KClass(self.rank * other.rank, ch, self.d, self.ring)

    def tensor_line(self, t):
        """Tensor with the line bundle of first Chern class ``t``: ch times exp(t)."""
        powers = [Polynomial.const(1, self.ring)]
        for k in range(1, self.d + 1):
            powers.append((powers[-1] * t).scale(Q(1, k)))
        ext = KClass(1, {k: powers[k] for k in range(1, self.d + 1)}, self.d, self.ring)
        return self.tensor(ext)

    def chern(self, top=None):
        return chern_from_ch(self, top)

    def total_chern(self):
        return Polynomial.const(1, self.ring) + sum(self.chern(), Polynomial({}, self.ring))
