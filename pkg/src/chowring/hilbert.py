"""Pullbacks of tautological classes of S^[n] along the correspondences E_mu.

The recursion peels the point labelled n. On the nested Hilbert scheme
S^[n,n-1] the classes O_[n], T_n and I_n are rewritten through level n-1
(Ellingsrud-Goettsche-Lehn):

    psi^! O_[n] = phi^! O_[n-1] + L
    psi^! I_n   = phi^! I_[n-1] - L . O_Delta(residual, marked)
    psi^! T_n   = phi^! T_[n-1] + L . I_r^dual + L^dual . I_r + T_S(r) - 2

with L = O(-E) and I_r the restriction of I_[n-1] to the residual point; the
last line follows from T = chi(O, O) - chi(I, I) and Serre duality. Powers of c1(L) are pushed forward by
sigma_*(c1(L)^i) = (-1)^i c_i(-I_[n-1]) and the residual point becomes a new
marked point. The recursion bottoms out at S^[0] = point, where every
tautological class is trivial and I_0 = O.

Labels: the Hilbert points are 1..n, top-level marked points n+1..n+l and the
residual point of the step peeling j is labelled j. A block of mu ends up
carried by its least element.
"""
import itertools
import logging
from dataclasses import dataclass, field
from math import factorial

from .bv import BVRing, Verdict, forget_index, normalize, relabel, symmetrize
from .k3model import realize
from .kclass import KClass, ch_from_chern
from .polynomial import D, HE, HI, HL, HO, HT, L, O, Polynomial, mono_codim, mono_from_gens
from .rational import Q

log = logging.getLogger(__name__)

RING = "hilbert"
ELL = (HE,)


class PartitionError(ValueError):
    pass


class SetPartition:
    """Partition of {1..n} into blocks, stored sorted by least element."""

    __slots__ = ("n", "blocks")

    def __init__(self, blocks, n=None):
        blocks = [tuple(sorted(set(b))) for b in blocks]
        if any(not b for b in blocks):
            raise PartitionError("empty block")
        elems = [x for b in blocks for x in b]
        if n is None:
            n = max(elems, default=0)
        if sorted(elems) != list(range(1, n + 1)):
            raise PartitionError(f"blocks must be disjoint and cover 1..{n}")
        self.n = n
        self.blocks = tuple(sorted(blocks))

    @classmethod
    def parse(cls, text, n=None):
        text = text.replace(" ", "")
        if not text.startswith("{") or not text.endswith("}"):
            raise PartitionError(f"malformed partition text {text!r}")
        blocks = []
        for chunk in text[1:-1].split("}{"):
            try:
                blocks.append([int(x) for x in chunk.split(",") if x])
            except ValueError:
                raise PartitionError(f"malformed partition text {text!r}") from None
        return cls(blocks, n)

    @classmethod
    def finest(cls, n):
        return cls([[i] for i in range(1, n + 1)], n)

    @property
    def m(self):
        return len(self.blocks)

    def block_of(self, x):
        return next(b for b in self.blocks if x in b)

    def peel(self):
        """Partition of 1..n-1 obtained by removing n."""
        out = [tuple(y for y in b if y != self.n) for b in self.blocks]
        return SetPartition([b for b in out if b], self.n - 1)

    def symmetry_group(self):
        """Permutations of block positions 1..m that only swap blocks of equal size."""
        sizes = [len(b) for b in self.blocks]
        groups = {}
        for pos, s in enumerate(sizes, start=1):
            groups.setdefault(s, []).append(pos)
        parts = [[dict(zip(g, p)) for p in itertools.permutations(g)] for g in groups.values()]
        for combo in itertools.product(*parts):
            perm = {}
            for d in combo:
                perm.update(d)
            yield perm

    def text(self):
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.blocks == other.blocks and self.n == other.n

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        return f"SetPartition({self.text()})"


def set_partitions(n):
    """All set partitions of {1..n} (Bell(n) of them)."""
    def rec(k, blocks):
        if k > n:
            yield SetPartition(blocks, n)
            return
        for i in range(len(blocks)):
            yield from rec(k + 1, blocks[:i] + [blocks[i] + [k]] + blocks[i + 1:])
        yield from rec(k + 1, blocks + [[k]])

    if n == 0:
        return [SetPartition([], 0)]
    return list(rec(1, []))


# --- generators ------------------------------------------------------------

def cT(k):
    return Polynomial.gen((HT, k), RING)


def cO(k):
    return Polynomial.gen((HO, k), RING)


def cI(k, i):
    return Polynomial.gen((HI, k, i), RING)


def LH(s):
    return Polynomial.gen((HL, s), RING)


def _pt(kind, *args):
    if kind == D:
        a, b = args
        return Polynomial.gen((D, min(a, b), max(a, b)), RING)
    return Polynomial.gen((kind, *args), RING)


def _zero():
    return Polynomial({}, RING)


def _one():
    return Polynomial.const(1, RING)


# --- level data ------------------------------------------------------------

def _level_classes(level, labels, d):
    """KClasses of T, O and I at ``labels`` on S^[level] x S^labels, as atoms."""
    if level == 0:
        return (KClass.trivial(0, d, RING), KClass.trivial(0, d, RING),
                {i: KClass.trivial(1, d, RING) for i in labels})
    T = ch_from_chern(2 * level, [cT(k) for k in range(1, min(2 * level, d) + 1)], d, RING)
    Ocls = ch_from_chern(level, [cO(k) for k in range(1, min(level, d) + 1)], d, RING)
    I = {i: ch_from_chern(1, [cI(k, i) for k in range(1, d + 1)], d, RING) for i in labels}
    return T, Ocls, I


def _diag_class(r, i, d):
    """O_Delta on the (r, i) factors: ch = Delta - 2 o x o (Grothendieck-Riemann-Roch, td(S) = 1 + 2o)."""
    return KClass(0, {2: _pt(D, r, i), 4: (_pt(O, r) * _pt(O, i)).scale(-2)}, d, RING)


_subst_cache = {}


def substitution_map(n, marked, d):
    """Level-n atoms on S^[n,n-1] x S^marked in terms of level n-1 atoms and c1(L).

    The residual point is labelled ``n``.
    """
    key = (n, tuple(marked), d)
    sub = _subst_cache.get(key)
    if sub is not None:
        return sub
    r = n
    ell = Polynomial.gen(ELL, RING)
    T, Ocls, I = _level_classes(n - 1, tuple(marked) + (r,), d)
    line = KClass.line(ell, d, RING)
    sub = {}
    # O_[n] = O_[n-1] + L
    cO_new = (Ocls + line).chern(min(n, d))
    for k in range(1, n + 1):
        sub[(HO, k)] = cO_new[k - 1] if k <= len(cO_new) else _zero()
    # T_n = T_[n-1] + L . I(r)^dual + L^dual . I(r) + T_S(r) - 2, from
    # T = chi(O, O) - chi(I, I) and I_n = I_[n-1] - L . O_r
    TS = KClass(2, {2: _pt(O, r).scale(-24)}, d, RING)
    Tn = (T + line.tensor(I[r].dual()) + line.dual().tensor(I[r]) + TS
          - KClass.trivial(2, d, RING))
    cT_new = Tn.chern(min(2 * n, d))
    for k in range(1, 2 * n + 1):
        sub[(HT, k)] = cT_new[k - 1] if k <= len(cT_new) else _zero()
    # I_n(i) = I_[n-1](i) - L . O_Delta(r, i)
    for i in marked:
        In = I[i] - line.tensor(_diag_class(r, i, d))
        cI_new = In.chern(d)
        for k in range(1, d + 1):
            sub[(HI, k, i)] = cI_new[k - 1]
    _subst_cache[key] = sub
    return sub


_push_cache = {}


def sigma_pushforward(i, n, d=None):
    """sigma_*(c1(L)^i) = (-1)^i c_i(-I_[n-1]) on S^[n-1] x S (residual labelled n)."""
    d = 2 * n + 2 if d is None else d
    key = (n, d)
    s = _push_cache.get(key)
    if s is None:
        if n - 1 == 0:
            s = [_one()] + [_zero()] * d
        else:
            neg = -ch_from_chern(1, [cI(k, n) for k in range(1, d + 1)], d, RING)
            cs = neg.chern(d)
            s = [_one()] + [c if k % 2 == 0 else -c for k, c in enumerate(cs, start=1)]
        _push_cache[key] = s
    return s[i] if i < len(s) else _zero()


def egl_substitute(p, n, marked=(), d=None):
    """(psi, Id)^* P = sum_i c1(L)^i (sigma, Id)^* Q_i; returns {i: Q_i}."""
    if n < 1:
        raise ValueError("egl_substitute needs n >= 1")
    d = 2 * n + 2 * len(marked) if d is None else d
    p1 = p.with_ring(RING).substitute(substitution_map(n, tuple(marked), d), maxcodim=d)
    return p1.collect(ELL)


def _check_input(p, n, marked):
    for g in p.gens():
        if g[0] == HT and not 1 <= g[1] <= 2 * n:
            raise ValueError(f"c(T,{g[1]}) out of range for n={n}")
        if g[0] == HO and not 1 <= g[1] <= n:
            raise ValueError(f"c(O,{g[1]}) out of range for n={n}")
        if g[0] == HI and g[2] not in marked:
            raise ValueError(f"c(I,{g[1]},{g[2]}) refers to an unknown marked point")
        if g[0] in (O, L) and g[-1] not in marked:
            raise ValueError(f"point class {g} must sit on a marked point")
        if g[0] == D and not (g[1] in marked and g[2] in marked):
            raise ValueError(f"diagonal {g} must join marked points")


class EGL:
    """Memoizing evaluator for E_{mu,l}^* on one BV ring."""

    def __init__(self, bv=None, cache=None):
        self.bv = bv or BVRing()
        self.cache = cache  # optional ResultCache
        self._memo = {}

    def _pull(self, p, mu, marked):
        n = mu.n
        key = (p, mu, marked)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if n == 0:
            zero_atoms = {g: _zero() for g in p.gens() if g[0] in (HT, HO, HI)}
            res = self.bv.normalize(p.substitute(zero_atoms).with_ring("bv"))
        elif len(mu.block_of(n)) > min(len(b) for b in mu.blocks):
            res = self._pull_relabelled(p, mu, marked)
        elif len(mu.block_of(n)) == 1:
            res = self._pull(self._descend(p, n, marked, 0), mu.peel(), marked + (n,))
        else:
            res = self._pull_on_diagonal(p, mu, marked)
        self._memo[key] = res
        return res

    def _descend(self, p, n, marked, shift):
        """sum_i Q_i sigma_*(c1(L)^(i + shift)), times (-1)^shift."""
        d = 2 * n + 2 * len(marked)
        acc = _zero()
        for i, q in egl_substitute(p, n, marked, d).items():
            acc = acc + q.mul(sigma_pushforward(i + shift, n, d), d)
        return -acc if shift % 2 else acc

    def _pull_relabelled(self, p, mu, marked):
        # E_mu is permuted along with the factors of S^n; move n into a smallest block
        n = mu.n
        target = min(mu.blocks, key=lambda b: (len(b), b))
        s = target[-1]
        swap = {s: n, n: s}
        tau = SetPartition([[swap.get(x, x) for x in b] for b in mu.blocks], n)
        res = self._pull(p, tau, marked)
        back = {min(swap.get(x, x) for x in b): b[0] for b in mu.blocks}
        return relabel(res, lambda i: back.get(i, i))

    def _pull_on_diagonal(self, p, mu, marked):
        """Case where the residual point collides with another point of its block.

        The nested correspondence then lies over the exceptional divisor E, and
        E pulled back to E_mu' x S splits as sum_c |c| [residual = x_c] over the
        blocks c of mu'. The component of the block of n is isolated by
        subtracting the others, each of which has a strictly smaller minimal
        block and is therefore computed first.
        """
        n = mu.n
        sub = mu.peel()
        own = mu.block_of(n)[0]
        # [E] = -c1(L)
        total = self._pull(self._descend(p, n, marked, 1), sub, marked + (n,))
        rest = forget_index(total, n, shift=False)
        for c in sub.blocks:
            if c[0] == own:
                continue
            other = SetPartition([b + (n,) if b == c else b for b in sub.blocks], n)
            rest = rest - self._pull(p, other, marked).scale(len(c))
        return rest.scale(Q(1, len(sub.block_of(own))))

    def pullback(self, p, mu, l=0):
        """E_{mu,l}^*(P) as a BV normal form on S^(m(mu)+l)."""
        if isinstance(mu, str):
            raise TypeError("pass a SetPartition")
        n = mu.n
        marked = tuple(range(n + 1, n + l + 1))
        p = p.with_ring(RING)
        _check_input(p, n, marked)
        if self.cache is not None:
            hit = self.cache.get_pullback(n, mu.text(), l, p, self.bv)
            if hit is not None:
                return hit
        # line-bundle decorations pull back to L_mu = sum_b |b| L(s, b)
        by_line = {}
        for m, c in p.terms.items():
            lpart = tuple((g, e) for g, e in m if g[0] == HL)
            rest = tuple((g, e) for g, e in m if g[0] != HL)
            by_line.setdefault(lpart, {})[rest] = c
        labels = {b[0]: pos for pos, b in enumerate(mu.blocks, start=1)}
        labels.update({n + j: mu.m + j for j in range(1, l + 1)})
        out = Polynomial({}, "bv")
        for lpart, rest in by_line.items():
            res = self._pull(Polynomial(rest, RING), mu, marked)
            for g, e in lpart:
                lmu = Polynomial({((( L, g[1], b[0]), 1),): len(b) for b in mu.blocks}, "bv")
                res = res * lmu.pow(e)
            out = out + res
        out = self.bv.normalize(relabel(out, labels))
        if self.cache is not None:
            self.cache.put_pullback(n, mu.text(), l, p, self.bv, out)
        return out

    def chern_number(self, p, n):
        """Degree of a codim-2n class on S^[n]: finest-partition pullback over n!."""
        p = p.with_ring(RING)
        if p.codims() - {2 * n}:
            raise ValueError(f"chern_number needs a class of codimension {2 * n}")
        pulled = self.pullback(p, SetPartition.finest(n))
        return self.bv.integrate(pulled, n) / factorial(n)


_DEFAULT_EGL = None


def default_egl():
    global _DEFAULT_EGL
    if _DEFAULT_EGL is None:
        _DEFAULT_EGL = EGL()
    return _DEFAULT_EGL


def e_mu_pullback(p, mu, l=0, egl=None):
    return (egl or default_egl()).pullback(p, mu, l)


def chern_number(p, n, egl=None):
    return (egl or default_egl()).chern_number(p, n)


def goettsche_euler(nmax):
    """Coefficients of prod_{m>=1} (1 - q^m)^(-24) up to q^nmax."""
    coeffs = [1] + [0] * nmax
    for m in range(1, nmax + 1):
        for _ in range(24):
            for k in range(m, nmax + 1):
                coeffs[k] += coeffs[k - m]
    return coeffs


def bell(n):
    return len(set_partitions(n))


# --- verification ------------------------------------------------------------

@dataclass
class PartitionCertificate:
    partition: str
    normal_form: Polynomial
    realized_zero: bool
    hypothesis: str
    invariant: bool


@dataclass
class HilbertReport:
    verdict: Verdict
    certificates: list = field(default_factory=list)


def _hypothesis(mu, n, codim, model):
    m = mu.m
    if codim + m - n > 2 * m:
        return "codim-shortcut"
    if m <= 2 * model.b_tr + 1:
        return "m<=2b_tr+1"
    if sum(1 for b in mu.blocks if len(b) >= 2) <= 2:
        return "S_{m-2}-invariant"
    return ""


def verify_chow_zero_hilbert(p, n, model, egl=None):
    """Check a tautological relation on S^[n] through all E_mu pullbacks."""
    egl = egl or EGL(BVRing.for_model(model))
    p = p.with_ring(RING)
    codims = p.codims() or {0}
    certs = []
    nonzero = False
    undecided = False
    for mu in set_partitions(n):
        pulled = egl.pullback(p, mu)
        zero = realize(pulled, model, mu.m).is_zero()
        invariant = symmetrize(pulled, mu.m, list(mu.symmetry_group())) == pulled
        if not invariant:
            raise AssertionError(f"pullback along {mu.text()} is not S_mu-invariant")
        hyp = _hypothesis(mu, n, max(codims), model) if len(codims) == 1 else ""
        if not zero:
            nonzero = True
        elif not hyp:
            undecided = True
        elif pulled:
            raise AssertionError(f"cohomologically trivial pullback along {mu.text()} has nonzero normal form")
        certs.append(PartitionCertificate(mu.text(), pulled, zero, hyp, invariant))
    if nonzero:
        verdict = Verdict.COHOMOLOGICALLY_NONZERO
    elif undecided:
        verdict = Verdict.INDETERMINATE
    else:
        verdict = Verdict.CHOW_ZERO
    return HilbertReport(verdict, certs)


# --- relation search -----------------------------------------------------------

def tautological_monomials(n, codim, rho=1):
    """Monomials of the given codimension in c(T,k), c(O,k) and L(s)."""
    atoms = ([(HT, k) for k in range(1, 2 * n + 1)] + [(HO, k) for k in range(1, n + 1)]
             + [(HL, s) for s in range(1, rho + 1)])
    out = []

    def rec(start, left, chosen):
        if left == 0:
            out.append(Polynomial.mono(mono_from_gens(chosen), 1, RING))
            return
        for i in range(start, len(atoms)):
            c = mono_codim(((atoms[i], 1),))
            if c <= left:
                rec(i, left - c, chosen + [atoms[i]])

    rec(0, codim, [])
    return out


def pullback_vector(p, n, model, egl):
    """All E_mu pullbacks of ``p``, realized and flattened into one sparse vector."""
    vec = {}
    for mu in set_partitions(n):
        t = realize(egl.pullback(p, mu), model, mu.m)
        for slots, c in t.terms.items():
            vec[(mu.text(), slots)] = c
    return vec


def relation_search(n, codim, model, egl=None):
    """Basis of tautological relations invisible to every realized pullback.

    Returns ``(monomials, kernel)`` where each kernel vector lists the
    coefficients of a combination of ``monomials``.
    """
    from .linalg import RatMatrix, solve_nullspace
    egl = egl or EGL(BVRing.for_model(model))
    monos = tautological_monomials(n, codim, model.rho)
    vecs = [pullback_vector(p, n, model, egl) for p in monos]
    keys = sorted({k for v in vecs for k in v})
    if not keys:
        return monos, [[Q(int(i == j)) for i in range(len(monos))] for j in range(len(monos))]
    rows = [[v.get(k, 0) for v in vecs] for k in keys]
    return monos, solve_nullspace(RatMatrix(rows, len(monos)))


def combine(monos, coeffs):
    acc = _zero()
    for p, c in zip(monos, coeffs):
        if c:
            acc = acc + p.scale(c)
    return acc
