import pytest

from chowring.bv import (BVRing, NotNormalError, Verdict, collision_measure, forget_index,
                         index_permutations, integrate, is_normal, normalize, relabel, symmetrize,
                         verify_vanishing)
from chowring.k3model import K3Model, default_model, integrate_tensor, realize
from chowring.polynomial import Dg, Lg, Polynomial, o
from chowring.rational import Q

from conftest import random_bv_poly

FULL = default_model()


def test_rule_examples():
    assert normalize(Lg(1, 1) ** 2) == o(1).scale(2)
    assert normalize(Dg(1, 2) ** 2) == (o(1) * o(2)).scale(24)
    assert normalize(Lg(1, 1) * o(1)).is_zero()
    assert normalize(o(1) ** 2).is_zero()
    assert normalize(Dg(1, 2) * o(1)) == o(1) * o(2)
    assert normalize(Dg(1, 2) * Lg(1, 1)) == Lg(1, 1) * o(2) + o(1) * Lg(1, 2)


def test_bilinear_rule_uses_gram():
    ring = BVRing([[2, 1], [1, -2]])
    assert ring.normalize(Lg(1, 1) * Lg(2, 1)) == o(1)
    assert ring.normalize(Lg(2, 1) ** 2) == o(1).scale(-2)


def test_three_diagonal_cascade_matches_realization():
    p = Dg(1, 2) * Dg(2, 3) * o(3)
    nf = normalize(p)
    assert is_normal(nf)
    assert realize(nf, FULL, 3) == realize(p, FULL, 3)


def test_is_normal_examples():
    assert is_normal(o(1) * o(2))
    assert not is_normal(o(1) ** 2)
    assert not is_normal(Dg(1, 2) * Lg(1, 1))


def test_forget_index_examples():
    assert forget_index(o(1) * o(2), 2) == o(1)
    assert forget_index(Dg(1, 2), 2) == Polynomial.const(1)
    assert forget_index(o(1), 2).is_zero()
    assert forget_index(Lg(1, 2) * o(1), 2).is_zero()
    assert forget_index(o(1) * Dg(2, 3) * o(4), 2) == o(1) * o(3)
    with pytest.raises(NotNormalError):
        forget_index(o(1) ** 2, 1)


def test_integrate_examples():
    assert integrate(o(1) * o(2), 2) == 1
    assert integrate(Dg(1, 2) ** 2, 2) == 24
    p = Dg(1, 2) * Dg(2, 3) * Dg(1, 3)
    assert integrate(p, 3) == integrate_tensor(realize(p, FULL, 3))


def test_symmetrize_examples():
    assert symmetrize(o(1), 2) == (o(1) + o(2)).scale(Q(1, 2))
    sym = o(1) * o(2) + Dg(1, 2)
    assert symmetrize(sym, 2) == sym
    assert symmetrize(Lg(1, 1) * Lg(1, 2), 2) == Lg(1, 1) * Lg(1, 2)
    p = o(1) * Dg(2, 4)
    assert symmetrize(symmetrize(p, 4, "sub"), 4, "sub") == symmetrize(p, 4, "sub")


def test_measure_strictly_decreases(rng):
    ring = BVRing()
    ring.check_measure = True
    for _ in range(100):
        ring.normalize(random_bv_poly(rng, 4, 1, 8))
    assert ring.stats.applications > 0
    assert collision_measure(((( 0, 1), 2),)) > collision_measure((((0, 1), 1),))


def test_idempotent_and_equivariant(rng):
    perms = list(index_permutations(4))
    for _ in range(60):
        p = random_bv_poly(rng, 4, 1, 8)
        nf = normalize(p)
        assert normalize(nf) == nf
        perm = rng.choice(perms)
        assert normalize(relabel(p, perm)) == relabel(nf, perm)


def test_strategies_agree_in_faithful_range(rng, model_12):
    low, high = BVRing.matching(model_12, "lowest"), BVRing.matching(model_12, "highest")
    for _ in range(80):
        p = random_bv_poly(rng, 5, 1, 10)
        assert low.normalize(p) == high.normalize(p)


def test_verify_examples():
    r = verify_vanishing(Lg(1, 1) ** 2 - o(1).scale(2), FULL, 1)
    assert r.verdict is Verdict.CHOW_ZERO and r.normal_form.is_zero()
    assert verify_vanishing(o(1), FULL, 1).verdict is Verdict.COHOMOLOGICALLY_NONZERO
    r = verify_vanishing(Dg(1, 2) ** 2 - (o(1) * o(2)).scale(24), FULL, 2)
    assert r.verdict is Verdict.CHOW_ZERO


def _kernel_relation(model, m, codim):
    from chowring.k3model import normal_monomials
    from chowring.linalg import solve_nullspace
    monos = normal_monomials(m, codim, model.rho)
    ts = [realize(Polynomial.mono(mm), model, m) for mm in monos]
    keys = sorted({k for t in ts for k in t.terms})
    v = solve_nullspace([[t.terms.get(k, 0) for t in ts] for k in keys])[0]
    return Polynomial({mm: c for mm, c in zip(monos, v) if c})


def test_verify_outside_hypotheses():
    small = K3Model(1, 1, [[2]], [[1]])
    # beyond m = 2*b_tr + 1 normal forms can realize to zero
    p = _kernel_relation(small, 4, 4)
    r = verify_vanishing(p, small, 4)
    assert r.verdict is Verdict.INDETERMINATE and r.normal_form == p
    r = verify_vanishing(Lg(1, 1) ** 2 - o(1).scale(2), small, 4)
    assert r.verdict is Verdict.CHOW_ZERO and r.hypothesis == "normal-form-zero"
    r = verify_vanishing(o(3) * Lg(1, 4) - Lg(1, 4) * o(3), small, 4)
    assert r.verdict is Verdict.CHOW_ZERO and r.hypothesis == "S_{m-2}-invariant"


def test_relabel_rejects_collapse():
    with pytest.raises(ValueError):
        relabel(Dg(1, 2), {1: 1, 2: 1})
