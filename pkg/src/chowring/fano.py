"""Intersection calculus on the Fano variety of lines F of a cubic fourfold.

F sits in G(2,6) as the zero locus of a section of Sym^3 E, where E is the
rank-2 quotient bundle restricted from V^*. Integrals of polynomials in
l = c1(E) and cc = c2(E) are computed on G against c4(Sym^3 E).

The Chow-level rewriting system (``fano_normalize``):

    F1  cc . D(k)            -> 0
    F2  l . D(j) D(k)        -> Cp q(j,k) Ex
    F3  l^2 . D(j) D(k)      -> C q(j,k) o
    F4  D(j) D(k) D(r)       -> iql (q(j,k) l^2 D(r) + q(j,r) l^2 D(k) + q(k,r) l^2 D(j))
    F5  l . cc               -> 5/12 l^3           (in codimension 3)
    F6  l^4, l^2 cc, cc^2    -> 108 o, 45 o, 27 o
    F7  Ex                   -> 1/3 (l^3 - 2 l cc) (applied first)
    F8  l^3 . D(k)           -> 0;  o . (positive codimension) -> 0

q(j,k) is the Beauville-Bogomolov pairing of the formal primitive divisors,
ql = q(l) and iql = 1/q(l); C and Cp stay formal.
"""
import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .polynomial import (FC, FCC, FCP, FD, FEX, FIQL, FL, FO, FQD, FQL, PH, SYM, Polynomial,
                         mono_codim, mono_from_gens)
from .rational import Q, ZERO
from .schubert import SchubertElement, integrate_grass, sigma1, sigma11

RING = "fano"
PRING = "pbundle"
PARAMS = (FQL, FIQL, FQD, FC, FCP)
DIM = 4


def _g(*gen, ring=RING):
    return Polynomial.gen(tuple(gen), ring)


def l_(ring=RING):
    return _g(FL, ring=ring)


def cc_(ring=RING):
    return _g(FCC, ring=ring)


def ex_():
    return _g(FEX)


def o_():
    return _g(FO)


def D_(k):
    return _g(FD, k)


def q_(j, k):
    return _g(FQD, min(j, k), max(j, k))


def ql_():
    return _g(FQL)


def iql_():
    return _g(FIQL)


def C_():
    return _g(FC)


def Cp_():
    return _g(FCP)


def h_():
    return _g(PH, ring=PRING)


# --- symmetric functions in the Chern roots a, b of E ----------------------------

def _rmul(x, y, top=DIM):
    out = {}
    for (i, j), u in x.items():
        for (k, m), v in y.items():
            if i + j + k + m <= top:
                key = (i + k, j + m)
                out[key] = out.get(key, ZERO) + u * v
    return {k: v for k, v in out.items() if v}


def _rinv(x, top=DIM):
    """Inverse of a power series in a, b with constant term 1."""
    nil = {k: -v for k, v in x.items() if k != (0, 0)}
    out = {(0, 0): Q(1)}
    power = {(0, 0): Q(1)}
    for _ in range(top):
        power = _rmul(power, nil, top)
        for k, v in power.items():
            out[k] = out.get(k, ZERO) + v
    return {k: v for k, v in out.items() if v}


def _linear(ca, cb):
    return {(0, 0): Q(1), (1, 0): Q(ca), (0, 1): Q(cb)}


def _to_lc(x, degree):
    """Symmetric polynomial in a, b of one degree, as a polynomial in l = a+b, cc = ab."""
    x = {k: v for k, v in x.items() if sum(k) == degree and v}
    out = Polynomial({}, RING)
    while x:
        i, j = max(x)
        if i < j:
            raise ValueError("polynomial in the Chern roots is not symmetric")
        c = x[(i, j)]
        out = out + (l_().pow(i - j) * cc_().pow(j)).scale(c)
        e = {(0, 0): Q(1)}
        for _ in range(i - j):
            e = _rmul(e, {(1, 0): Q(1), (0, 1): Q(1)}, degree)
        for _ in range(j):
            e = _rmul(e, {(1, 1): Q(1)}, degree)
        for k, v in e.items():
            x[k] = x.get(k, ZERO) - c * v
            if not x[k]:
                del x[k]
    return out


def _chern_series(parts):
    out = {(0, 0): Q(1)}
    for p in parts:
        out = _rmul(out, p)
    return out


def sym3_roots():
    return [(3, 0), (2, 1), (1, 2), (0, 3)]


def chern_sym3_quotient():
    """Total Chern class of Sym^3 E, as a SchubertElement on G(2,6)."""
    series = _chern_series(_linear(*r) for r in sym3_roots())
    total = SchubertElement()
    for k in range(DIM + 1):
        total = total + lc_to_schubert(_to_lc(series, k))
    return total


def chern_sym3_polys():
    series = _chern_series(_linear(*r) for r in sym3_roots())
    return [_to_lc(series, k) for k in range(DIM + 1)]


def lc_to_schubert(p):
    out = SchubertElement()
    for m, c in p.terms.items():
        term = SchubertElement.one()
        for g, e in m:
            if g[0] == FL:
                term = term * sigma1() ** e
            elif g[0] == FCC:
                term = term * sigma11() ** e
            else:
                raise ValueError(f"{g} is not a Grassmannian class")
        out = out + term.scale(c)
    return out


def integrate_fano(p):
    """Degree of a codim-4 polynomial in l, cc on F."""
    p = p.with_ring(RING)
    if not p:
        return ZERO
    if p.codims() != {DIM}:
        raise ValueError("integrate_fano needs a class of codimension 4")
    c4 = lc_to_schubert(chern_sym3_polys()[4])
    return integrate_grass(lc_to_schubert(p) * c4)


def chern_T_F():
    """(c2, c4) of T_F in l, cc, from c(T_F) = c(T_G|F) / c(Sym^3 E).

    T_G = E (x) Q with ch(Q) = 6 - ch(E^dual), so T_G = 6E - E (x) E^dual.
    """
    tg = _chern_series([_linear(1, 0)] * 6 + [_linear(0, 1)] * 6)
    tg = _rmul(tg, _rinv(_chern_series([_linear(1, -1), _linear(-1, 1)])))
    sym = _chern_series(_linear(*r) for r in sym3_roots())
    tf = _rmul(tg, _rinv(sym))
    cs = [_to_lc(tf, k) for k in range(DIM + 1)]
    if cs[1]:
        raise AssertionError(f"c1(T_F) = {cs[1]} is not zero")
    if integrate_fano(cs[3] * l_()):
        raise AssertionError(f"c3(T_F) = {cs[3]} is cohomologically nonzero")
    return cs[2], cs[4]


# --- P^1-bundle of the universal line -------------------------------------------

def reduce_h_powers(p):
    """Reduce modulo h^2 = l h - cc until the h-degree is at most one."""
    p = p.with_ring(PRING)
    h2 = (l_(PRING) * h_() - cc_(PRING))
    while True:
        parts = p.collect((PH,))
        top = max(parts, default=0)
        if top <= 1:
            return p
        hk = Polynomial.gen((PH,), PRING, top - 2) if top > 2 else Polynomial.const(1, PRING)
        p = p - (h_().pow(top) - h2 * hk) * parts[top]


def pushforward_p(p):
    """p_*: the coefficient of h after reduction, as a class on F."""
    return reduce_h_powers(p).collect((PH,)).get(1, Polynomial({}, PRING)).with_ring(RING)


def ex_from_h4():
    """E_x = p_* q^* x with 3x = H^4 on the cubic, i.e. (1/3) p_*(h^4)."""
    return pushforward_p(h_().pow(4)).scale(Q(1, 3))


# --- Chow-level normalization -----------------------------------------------------

@lru_cache(maxsize=None)
def lc_constants():
    """Degrees of l^4, l^2 cc, cc^2 and the H^6 ratio l cc = r l^3."""
    l4 = integrate_fano(l_().pow(4))
    l2c = integrate_fano(l_().pow(2) * cc_())
    c2 = integrate_fano(cc_().pow(2))
    return l4, l2c, c2, l2c / l4


def _split(mono):
    params, geo = [], []
    for g, e in mono:
        (params if g[0] in PARAMS else geo).append((g, e))
    return tuple(params), tuple(geo)


def _param_reduce(params):
    d = {}
    for g, e in params:
        d[g] = d.get(g, 0) + e
    a, b = d.get((FQL,), 0), d.get((FIQL,), 0)
    k = min(a, b)
    if k:
        d[(FQL,)] = a - k
        d[(FIQL,)] = b - k
    return tuple(sorted((g, e) for g, e in d.items() if e))


def _poly(gens_with_exp, c=1):
    return Polynomial.mono(tuple(sorted(gens_with_exp)), c, RING)


def _expand(gens):
    out = []
    for g, e in gens:
        out.extend([g] * e)
    return out


@dataclass
class FiredRules:
    counts: dict = field(default_factory=dict)

    def hit(self, name):
        self.counts[name] = self.counts.get(name, 0) + 1


class FanoNormalizer:
    def __init__(self):
        self._memo = {}
        self.fired = FiredRules()

    def geo(self, geo):
        """Normal form of a parameter-free monomial (returns Polynomial)."""
        hit = self._memo.get(geo)
        if hit is not None:
            return hit
        res = self._geo(geo)
        self._memo[geo] = res
        return res

    def _recurse(self, poly):
        return self.normalize(poly)

    def _geo(self, geo):
        codim = mono_codim(geo)
        if codim > DIM:
            return Polynomial({}, RING)
        gens = _expand(geo)
        d = dict(geo)
        rest_without = lambda *drop: self._remove(gens, drop)
        if (FEX,) in d:
            self.fired.hit("F7")
            return self._recurse(rest_without((FEX,)) * ex_from_h4())
        if (FO,) in d:
            if codim > 4:
                return Polynomial({}, RING)
            return _poly(geo)
        ds = [g for g in gens if g[0] == FD]
        a = d.get((FL,), 0)
        b = d.get((FCC,), 0)
        if ds and b:
            self.fired.hit("F1")
            return Polynomial({}, RING)
        if len(ds) >= 3:
            self.fired.hit("F4")
            j, k, r = ds[0][1], ds[1][1], ds[2][1]
            rest = rest_without(ds[0], ds[1], ds[2])
            l2 = l_().pow(2)
            repl = iql_() * (q_(j, k) * l2 * D_(r) + q_(j, r) * l2 * D_(k) + q_(k, r) * l2 * D_(j))
            return self._recurse(rest * repl)
        if len(ds) == 2 and a >= 2:
            self.fired.hit("F3")
            j, k = ds[0][1], ds[1][1]
            rest = rest_without(ds[0], ds[1], (FL,), (FL,))
            return self._recurse(rest * C_() * q_(j, k) * o_())
        if len(ds) == 2 and a == 1:
            self.fired.hit("F2")
            j, k = ds[0][1], ds[1][1]
            rest = rest_without(ds[0], ds[1], (FL,))
            return self._recurse(rest * Cp_() * q_(j, k) * ex_())
        if len(ds) == 1 and a >= 3:
            self.fired.hit("F8")
            return Polynomial({}, RING)
        if not ds:
            l4, l2c, c2, ratio = lc_constants()
            if codim == 4:
                self.fired.hit("F6")
                val = integrate_fano(_poly(geo))
                return o_().scale(val)
            if a >= 1 and b >= 1:
                self.fired.hit("F5")
                rest = rest_without((FL,), (FCC,))
                return self._recurse(rest * l_().pow(2) * l_().scale(ratio))
        return _poly(geo)

    @staticmethod
    def _remove(gens, drop):
        left = list(gens)
        for g in drop:
            left.remove(g)
        return Polynomial.mono(mono_from_gens(left), 1, RING)

    def normalize(self, p):
        p = p.with_ring(RING)
        out = {}
        for m, c in p.terms.items():
            params, geo = _split(m)
            nf = self.geo(geo)
            for m2, c2 in nf.terms.items():
                pr2, geo2 = _split(m2)
                key = tuple(sorted(_param_reduce(params + pr2) + geo2))
                key = mono_from_gens(_expand(key))
                out[key] = out.get(key, ZERO) + c * c2
        return Polynomial({k: v for k, v in out.items() if v}, RING)


_NORMALIZER = FanoNormalizer()


def fano_normalize(p):
    """Chow-level normal form (rules F1-F8)."""
    return _NORMALIZER.normalize(p)


# --- cohomological oracle ----------------------------------------------------------

class FanoVerdict(str, Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    INDETERMINATE = "indeterminate"


def _d_labels(p):
    return sorted({g[1] for g in p.gens() if g[0] == FD})


def _test_monomials(codim, labels):
    """Monomials in l, cc, D(labels) of a given codimension."""
    atoms = [(FL,), (FCC,)] + [(FD, k) for k in labels]
    out = []
    for combo in itertools.combinations_with_replacement(atoms, codim):
        mono = mono_from_gens(combo)
        if mono_codim(mono) == codim:
            out.append(Polynomial.mono(mono, 1, RING))
    if codim == 0:
        out = [Polynomial.const(1, RING)]
    return out


def _integral(p):
    """Degree of a codim-4 class: l, cc parts via Schubert calculus, D parts via F1-F4.

    Returns a polynomial in the formal parameters.
    """
    out = Polynomial({}, RING)
    for m, c in p.terms.items():
        params, geo = _split(m)
        gens = _expand(geo)
        if any(g[0] == FO for g in gens):
            out = out + _poly(params, c)
            continue
        if any(g[0] in (FD, FEX) for g in gens):
            reduced = FanoNormalizer().normalize(_poly(geo))
            out = out + _integral(reduced) * _poly(params, c) if reduced else out
            continue
        val = integrate_fano(_poly(geo))
        out = out + _poly(params, c * val)
    return out.with_ring(RING)


def _classify(value):
    if not value:
        return FanoVerdict.ZERO
    if len(value) == 1:
        return FanoVerdict.NONZERO
    return FanoVerdict.INDETERMINATE


def fano_cohomology_vanishes(p):
    """Decide [P] = 0 in H*(F) by Poincare pairing against l, cc and the D's in P.

    Parameters are generic nonzero: a pairing equal to a single parameter
    monomial is nonzero, while a sum of several parameter monomials could
    vanish for special values and gives an indeterminate verdict.
    """
    p = p.with_ring(RING)
    labels = _d_labels(p)
    worst = FanoVerdict.ZERO
    by_codim = {}
    for m, c in p.terms.items():
        by_codim.setdefault(mono_codim(_split(m)[1]), {})[m] = c
    for codim, terms in sorted(by_codim.items()):
        part = Polynomial(terms, RING)
        if codim > DIM:
            continue
        if codim in (0, 1) and not labels:
            # H^0 and the l-line of H^2 are detected by their coefficients
            verdict = _classify(part)
        else:
            verdicts = [_classify(_integral((part * y).truncate(DIM)))
                        for y in _test_monomials(DIM - codim, labels)]
            verdict = (FanoVerdict.NONZERO if FanoVerdict.NONZERO in verdicts else
                       FanoVerdict.INDETERMINATE if FanoVerdict.INDETERMINATE in verdicts else
                       FanoVerdict.ZERO)
        if verdict == FanoVerdict.NONZERO:
            return FanoVerdict.NONZERO
        if verdict == FanoVerdict.INDETERMINATE:
            worst = verdict
    return worst


def verify_theocubic(p):
    """Chow-level vanishing of a cohomologically trivial polynomial in l, cc and D's."""
    from .bv import Verdict
    v = fano_cohomology_vanishes(p)
    if v == FanoVerdict.ZERO:
        nf = fano_normalize(p)
        if nf:
            raise AssertionError(f"cohomologically trivial class has nonzero normal form {nf}")
        return Verdict.CHOW_ZERO
    if v == FanoVerdict.NONZERO:
        return Verdict.COHOMOLOGICALLY_NONZERO
    return Verdict.INDETERMINATE


# --- lambda expansion for D^3 ---------------------------------------------------------

def _s(name):
    return Polynomial.gen((SYM, name), "sym")


@dataclass
class VerbitskyCertificate:
    coefficient: Q
    denominator: str
    lambda_identities: dict
    cube_identity: tuple
    cross_identity: tuple
    eliminated: tuple

    @property
    def text(self):
        return f"{self.coefficient}/q(l)"


def verbitsky_coefficient():
    """Expand (d + lam l)^3 = (q(d) + lam^2 q(l)) (a N + lam M) and read off D^3.

    The lam^0 and lam^2 coefficients give d^3 = q(d) a N and 3 d l^2 = q(l) a N;
    eliminating a N gives q(l) d^3 = 3 q(d) d l^2.
    """
    d, l, lam, qd, ql, a, N, M = (_s(x) for x in ("d", "l", "lam", "qd", "ql", "a", "N", "M"))
    lhs = (d + lam * l).pow(3)
    rhs = (qd + lam * lam * ql) * (a * N + lam * M)
    lam_g = (SYM, "lam")
    lc, rc = lhs.collect(lam_g), rhs.collect(lam_g)
    zero = Polynomial({}, "sym")
    ids = {k: (lc.get(k, zero), rc.get(k, zero)) for k in range(4)}
    cube, cross = ids[0], ids[2]
    # eliminate a N: ql * (d^3 - qd a N) - qd * (3 d l^2 - ql a N) = ql d^3 - 3 qd d l^2
    combo = ql * (cube[0] - cube[1]) - qd * (cross[0] - cross[1])
    expected = ql * d.pow(3) - (qd * d * l * l).scale(3)
    if combo != expected:
        raise AssertionError("lambda elimination did not produce the D^3 identity")
    coeff = (cross[0].terms[mono_from_gens([(SYM, "d"), (SYM, "l"), (SYM, "l")])])
    return VerbitskyCertificate(coeff, "q(l)", ids, cube, cross, (ql * d.pow(3), (qd * d * l * l).scale(3)))


@dataclass(frozen=True)
class IncidenceLedger:
    """Formal shape of the quadratic relation satisfied by the incidence correspondence I.

    I^2 = alpha Delta_F + Gamma . I + Gamma' in CH^4(F x F), with alpha a nonzero
    scalar, Gamma of degree 2 in l_1, l_2 and Gamma' of weighted degree 4 in
    l_1, l_2, c_1, c_2. No numeric values are recorded.
    """

    alpha: str = "alpha"
    gamma_variables: tuple = ("l1", "l2")
    gamma_degree: int = 2
    gamma_prime_variables: tuple = ("l1", "l2", "c1", "c2")
    gamma_prime_degree: int = 4
    relation: str = "I^2 = alpha*Delta_F + Gamma*I + Gamma'"
    executable: bool = False
