"""Tensor model of H*(S^m, Q) for an algebraic K3 lattice and the realization map.

A :class:`K3Model` fixes a Neron-Severi Gram matrix and a transcendental Gram
matrix. One factor of H*(S) gets the basis ``u`` (H^0), ``ns1..nsR``,
``tr1..trB`` (H^2) and ``pt`` (H^4); a class on S^m is a sparse map from
m-tuples of basis slots to Q.
"""
import hashlib
import itertools
from dataclasses import dataclass, field

from .linalg import RatMatrix, det, inverse, sparse_rank
from .polynomial import D, L, O, Polynomial, mono_from_gens
from .rational import Q, ZERO, as_q, fmt_q


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class K3Model:
    rho: int
    b_tr: int
    ns_gram: tuple
    tr_gram: tuple
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.rho < 1 or self.b_tr < 1:
            raise ModelError("rho and b_tr must be at least 1")
        ns = tuple(tuple(as_q(x) for x in r) for r in self.ns_gram)
        tr = tuple(tuple(as_q(x) for x in r) for r in self.tr_gram)
        object.__setattr__(self, "ns_gram", ns)
        object.__setattr__(self, "tr_gram", tr)
        for name, g, n in (("ns_gram", ns, self.rho), ("tr_gram", tr, self.b_tr)):
            if len(g) != n or any(len(r) != n for r in g):
                raise ModelError(f"{name} must be {n}x{n}")
            if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
                raise ModelError(f"{name} must be symmetric")
            if det(RatMatrix(g)) == 0:
                raise ModelError(f"{name} is degenerate")

    # slot layout
    @property
    def pt(self):
        return self.rho + self.b_tr + 1

    def ns(self, s):
        if not 1 <= s <= self.rho:
            raise ModelError(f"NS label {s} out of range 1..{self.rho}")
        return s

    def tr(self, a):
        if not 1 <= a <= self.b_tr:
            raise ModelError(f"transcendental label {a} out of range 1..{self.b_tr}")
        return self.rho + a

    def slot_name(self, k):
        if k == 0:
            return "u"
        if k == self.pt:
            return "pt"
        if k <= self.rho:
            return f"ns{k}"
        return f"tr{k - self.rho}"

    def slot_codim(self, k):
        return 0 if k == 0 else (2 if k == self.pt else 1)

    @property
    def full_rank(self):
        """True when rho + b_tr = 22, i.e. the model reproduces deg Delta^2 = 24."""
        return self.rho + self.b_tr == 22

    @property
    def chi(self):
        """Degree of Delta^2 in this model: rank of H^2 plus 2."""
        return self.rho + self.b_tr + 2

    @property
    def fingerprint(self):
        fp = self._cache.get("fp")
        if fp is None:
            text = dump_model(self)
            fp = hashlib.sha256(text.encode()).hexdigest()[:16]
            self._cache["fp"] = fp
        return fp

    def slot_mul(self, a, b):
        """Product of two basis slots as ``(slot, coeff)`` or None."""
        if a == 0:
            return b, Q(1)
        if b == 0:
            return a, Q(1)
        pt = self.pt
        if a == pt or b == pt:
            return None
        if a <= self.rho and b <= self.rho:
            c = self.ns_gram[a - 1][b - 1]
        elif a > self.rho and b > self.rho:
            c = self.tr_gram[a - self.rho - 1][b - self.rho - 1]
        else:
            return None
        return (pt, c) if c else None

    def diagonal_terms(self, tr_only=False):
        """Kunneth expansion of the diagonal as ``[((slot_i, slot_j), coeff)]``."""
        key = ("diag", tr_only)
        terms = self._cache.get(key)
        if terms is None:
            terms = []
            g = inverse(RatMatrix(self.tr_gram))
            for a in range(self.b_tr):
                for b in range(self.b_tr):
                    if g[a, b]:
                        terms.append(((self.tr(a + 1), self.tr(b + 1)), g[a, b]))
            if not tr_only:
                terms.append(((0, self.pt), Q(1)))
                terms.append(((self.pt, 0), Q(1)))
                h = inverse(RatMatrix(self.ns_gram))
                for s in range(self.rho):
                    for t in range(self.rho):
                        if h[s, t]:
                            terms.append(((s + 1, t + 1), h[s, t]))
            self._cache[key] = terms
        return terms


def default_model(b_tr=21, rho=1):
    """rho=1 with a degree-2 polarization and identity transcendental form."""
    ns = [[2 if i == j else 0 for j in range(rho)] for i in range(rho)]
    tr = [[1 if i == j else 0 for j in range(b_tr)] for i in range(b_tr)]
    return K3Model(rho, b_tr, ns, tr)


def dump_model(model):
    ns = " ".join(fmt_q(x) for r in model.ns_gram for x in r)
    tr = " ".join(fmt_q(x) for r in model.tr_gram for x in r)
    return f"rho {model.rho}\nb_tr {model.b_tr}\nns_gram {ns}\ntr_gram {tr}\n"


def parse_model(text):
    """Parse ``key value...`` lines (rho, b_tr, ns_gram, tr_gram; '#' comments).

    Gram matrices are row-major; entries may span several lines after the key.
    """
    fields = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.replace(":", " ").split()
        if head in ("rho", "b_tr", "ns_gram", "tr_gram"):
            current = head
            fields[current] = list(rest)
        elif current is not None:
            fields[current].extend([head, *rest])
        else:
            raise ModelError(f"unexpected line in model file: {raw!r}")
    try:
        rho = int(fields["rho"][0])
        b_tr = int(fields["b_tr"][0])
        ns = [as_q(x) for x in fields["ns_gram"]]
        tr = [as_q(x) for x in fields["tr_gram"]]
    except (KeyError, IndexError, ValueError, ZeroDivisionError) as exc:
        raise ModelError(f"malformed model file: {exc}") from exc
    if len(ns) != rho * rho or len(tr) != b_tr * b_tr:
        raise ModelError("Gram matrix entry count does not match rho / b_tr")
    return K3Model(
        rho,
        b_tr,
        [ns[i * rho:(i + 1) * rho] for i in range(rho)],
        [tr[i * b_tr:(i + 1) * b_tr] for i in range(b_tr)],
    )


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


class TensorClass:
    """Class in H*(S^m) as a sparse map from slot tuples to Q."""

    __slots__ = ("m", "terms", "model")

    def __init__(self, m, terms, model):
        self.m = m
        self.terms = {k: v for k, v in terms.items() if v}
        self.model = model

    @classmethod
    def one(cls, m, model):
        return cls(m, {(0,) * m: Q(1)}, model)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return TensorClass(self.m, out, self.model)

    def __neg__(self):
        return TensorClass(self.m, {k: -v for k, v in self.terms.items()}, self.model)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_q(c)
        return TensorClass(self.m, {k: v * c for k, v in self.terms.items()}, self.model)

    def __mul__(self, other):
        if not isinstance(other, TensorClass):
            return self.scale(other)
        mul = self.model.slot_mul
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                c = va * vb
                slots = []
                for a, b in zip(ka, kb):
                    r = mul(a, b)
                    if r is None:
                        break
                    slots.append(r[0])
                    c *= r[1]
                else:
                    k = tuple(slots)
                    out[k] = out.get(k, ZERO) + c
        return TensorClass(self.m, out, self.model)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorClass) and self.m == other.m and self.terms == other.terms

    def degree_parts(self):
        out = {}
        for k, v in self.terms.items():
            d = sum(self.model.slot_codim(s) for s in k)
            out.setdefault(d, {})[k] = v
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            body = "[" + ",".join(self.model.slot_name(s) for s in k) + "]"
            a = -v if v < 0 else v
            s = body if a == 1 else f"{fmt_q(a)}*{body}"
            if not parts:
                parts.append(("-" if v < 0 else "") + s)
            else:
                parts.append(("- " if v < 0 else "+ ") + s)
        return " ".join(parts)


def _local(m, model, placements):
    """Tensor with the given {position: [(slot, coeff)]}-style local terms, units elsewhere."""
    out = {}
    for combo, c in placements:
        key = [0] * m
        for pos, slot in combo:
            key[pos - 1] = slot
        out[tuple(key)] = out.get(tuple(key), ZERO) + c
    return TensorClass(m, out, model)


def realize_gen(g, m, model, tr_only=False):
    kind = g[0]
    if kind == O:
        _check(g[1], m)
        return _local(m, model, [(((g[1], model.pt),), Q(1))])
    if kind == L:
        _check(g[2], m)
        return _local(m, model, [(((g[2], model.ns(g[1])),), Q(1))])
    if kind == D:
        i, j = g[1], g[2]
        _check(i, m)
        _check(j, m)
        return _local(m, model, [(((i, a), (j, b)), c) for (a, b), c in model.diagonal_terms(tr_only)])
    raise ModelError(f"generator {g} has no realization in the K3 model")


def _check(i, m):
    if not 1 <= i <= m:
        raise ModelError(f"index {i} out of range 1..{m}")


def realize_monomial(mono, m, model, tr_only=False):
    key = ("mono", m, mono, tr_only)
    cache = model._cache
    t = cache.get(key)
    if t is None:
        t = TensorClass.one(m, model)
        for g, e in mono:
            f = realize_gen(g, m, model, tr_only)
            for _ in range(e):
                t = t * f
                if t.is_zero():
                    break
        cache[key] = t
    return t


def realize(p, model, m, tr_only=False):
    """Cohomology class of a BV polynomial on S^m."""
    out = {}
    for mono, c in p.terms.items():
        for k, v in realize_monomial(mono, m, model, tr_only).terms.items():
            out[k] = out.get(k, ZERO) + c * v
    return TensorClass(m, out, model)


def integrate_tensor(t):
    """Degree of the top-codimension part."""
    return t.terms.get((t.model.pt,) * t.m, ZERO)


def gamma_action(pairs, eta, model, tr_only=True):
    """gamma_M(eta) = p1_*(M . p2^* eta) for a perfect matching M on 2s indices.

    ``pairs`` is an iterable of index pairs (or a BV monomial in D generators).
    """
    if isinstance(pairs, tuple) and pairs and isinstance(pairs[0][0], tuple):
        pairs = [(g[1], g[2]) for g, e in pairs for _ in range(e)]
    pairs = [tuple(p) for p in pairs]
    s = eta.m
    used = [i for p in pairs for i in p]
    if len(used) != len(set(used)):
        raise ModelError("matching uses an index twice")
    if sorted(used) != list(range(1, 2 * s + 1)):
        raise ModelError(f"matching must cover 1..{2 * s} exactly once")
    mono = mono_from_gens((D, min(p), max(p)) for p in pairs)
    mt = realize_monomial(mono, 2 * s, model, tr_only)
    lifted = TensorClass(2 * s, {(0,) * s + k: v for k, v in eta.terms.items()}, model)
    prod = mt * lifted
    top = (model.pt,) * s
    out = {}
    for k, v in prod.terms.items():
        if k[s:] == top:
            out[k[:s]] = out.get(k[:s], ZERO) + v
    return TensorClass(s, out, model)


def normal_monomials(m, codim, rho, indices=None):
    """All monomials in o, L, D using each index at most once, of the given codim."""
    idx = list(indices) if indices is not None else list(range(1, m + 1))
    out = []

    def rec(pos, used, gens, deg):
        if deg > codim:
            return
        if pos == len(idx):
            if deg == codim:
                out.append(mono_from_gens(gens))
            return
        i = idx[pos]
        if i in used:
            rec(pos + 1, used, gens, deg)
            return
        rec(pos + 1, used, gens, deg)
        rec(pos + 1, used, gens + [(O, i)], deg + 2)
        for s in range(1, rho + 1):
            rec(pos + 1, used, gens + [(L, s, i)], deg + 1)
        for j in idx[pos + 1:]:
            if j not in used:
                rec(pos + 1, used | {j}, gens + [(D, i, j)], deg + 2)

    rec(0, frozenset(), [], 0)
    return sorted(out)


def monomial_basis_rank(m, degree, model):
    """(count, rank) of the realized no-repeated-index monomials of codim ``degree``."""
    monos = normal_monomials(m, degree, model.rho)
    vecs = [realize_monomial(mm, m, model).terms for mm in monos]
    return len(monos), sparse_rank(vecs)


def perfect_matchings(items):
    items = list(items)
    if not items:
        yield ()
        return
    a = items[0]
    for k in range(1, len(items)):
        b = items[k]
        rest = items[1:k] + items[k + 1:]
        for mt in perfect_matchings(rest):
            yield ((a, b),) + mt


def _canon_matching(mt):
    return tuple(sorted(tuple(sorted(p)) for p in mt))


def invariant_orbits(m, index_set):
    """Orbits of the symmetric group on ``index_set & {1..m-2}`` acting on perfect matchings."""
    index_set = sorted(index_set)
    if len(index_set) % 2:
        raise ValueError("index set must have even cardinality")
    movable = [i for i in index_set if i <= m - 2]
    seen = set()
    orbits = []
    for mt in perfect_matchings(index_set):
        mt = _canon_matching(mt)
        if mt in seen:
            continue
        orbit = set()
        for perm in itertools.permutations(movable):
            sub = dict(zip(movable, perm))
            orbit.add(_canon_matching(tuple((sub.get(a, a), sub.get(b, b)) for a, b in mt)))
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def invariant_rank(m, index_set, model, degree=None):
    """(orbit count, rank) for orbit sums of transcendental-diagonal matchings on ``index_set``."""
    if degree is not None and degree != len(index_set):
        return 0, 0
    if any(not 1 <= i <= m for i in index_set):
        raise ValueError("index set must lie in 1..m")
    orbits = invariant_orbits(m, index_set)
    vecs = []
    for orbit in orbits:
        p = Polynomial({mono_from_gens((D, a, b) for a, b in mt): 1 for mt in orbit})
        vecs.append(realize(p, model, m, tr_only=True).terms)
    return len(orbits), sparse_rank(vecs)
