import pytest

from chowring.bv import Verdict
from chowring.expr import parse, print_canonical
from chowring.fano import (FanoVerdict, IncidenceLedger, chern_sym3_polys, chern_sym3_quotient,
                           chern_T_F, ex_from_h4, fano_cohomology_vanishes, fano_normalize, h_,
                           integrate_fano, l_, lc_constants, reduce_h_powers, verbitsky_coefficient,
                           verify_theocubic)
from chowring.rational import Q
from chowring.schubert import (SchubertElement, integrate_grass, pieri_multiply, poincare_matrix,
                               sigma1, sigma11)
from chowring.linalg import det


def f(text):
    return parse(text, "fano")


def pb(text):
    return parse(text, "pbundle")


def s(a, b=0):
    return SchubertElement.sigma(a, b)


# --- Grassmannian ------------------------------------------------------------------

def test_pieri_examples():
    assert sigma1() * sigma1() == s(2) + s(1, 1)
    assert sigma11() ** 4 == s(4, 4)
    assert sigma1() ** 8 == s(4, 4).scale(14)
    assert s(4, 4) * s(1) == SchubertElement()  # leaves the box
    assert s(4) * s(1) == s(4, 1)
    assert pieri_multiply(sigma11(), s(2, 1)) == s(3, 2)


def test_integrate_grass_examples():
    assert integrate_grass(s(4, 4)) == 1
    assert integrate_grass(sigma1() ** 8) == 14
    assert integrate_grass(s(4, 3)) == 0


def test_young_lattice_adjacency():
    # sigma_1 sends each partition to the sum of those obtained by adding one box
    for a in range(5):
        for b in range(a + 1):
            up = {(a + 1, b), (a, b + 1)}
            expected = {p for p in up if 4 >= p[0] >= p[1]}
            assert set((s(a, b) * sigma1()).terms) == expected
            assert all(v == 1 for v in (s(a, b) * sigma1()).terms.values())


def test_poincare_pairing_is_a_permutation():
    for codim in range(9):
        parts, dual, mat = poincare_matrix(codim)
        assert all(sorted(map(int, row)) == [0] * (len(row) - 1) + [1] for row in mat)
        assert all(sorted(map(int, col)) == [0] * (len(col) - 1) + [1] for col in zip(*mat))


def test_schubert_rejects_outside_box():
    with pytest.raises(ValueError):
        s(5)
    with pytest.raises(ValueError):
        s(1, 2)


# --- Fano variety ------------------------------------------------------------------

def test_sym3_chern_classes():
    c = chern_sym3_polys()
    assert c[1] == l_().scale(6)
    assert c[4] == f("18*l^2*cc + 9*cc^2")
    assert chern_sym3_quotient().terms.get((0, 0)) == 1


def test_fano_integrals():
    assert integrate_fano(f("l^4")) == 108
    assert integrate_fano(f("l^2*cc")) == 45
    assert integrate_fano(f("cc^2")) == 27
    assert lc_constants() == (108, 45, 27, Q(5, 12))
    with pytest.raises(ValueError):
        integrate_fano(f("l^3"))


def test_gram_determinant():
    gram = [[integrate_fano(a * b) for b in (f("l^2"), f("cc"))] for a in (f("l^2"), f("cc"))]
    assert gram == [[108, 45], [45, 27]]
    assert det(gram) == 891


def test_tangent_bundle_chern_numbers():
    c2, c4 = chern_T_F()
    assert c2 == f("5*l^2 - 8*cc")
    assert integrate_fano(c4) == 324
    assert integrate_fano(c2 * c2) == 828


def test_h_power_reduction():
    assert reduce_h_powers(pb("h^2")) == pb("l*h - cc")
    assert print_canonical(reduce_h_powers(pb("h^3"))) == print_canonical(pb("(l^2 - cc)*h - l*cc"))
    assert print_canonical(reduce_h_powers(pb("h^4"))) == \
        print_canonical(pb("(l^3 - 2*l*cc)*h - (l^2 - cc)*cc"))
    # one step of the defining relation is identically zero
    assert reduce_h_powers(pb("h*(h - l) + cc")).is_zero()


def test_ex_from_universal_line():
    assert ex_from_h4().scale(3) == f("l^3 - 2*l*cc")


def test_normalize_examples():
    assert fano_normalize(f("cc*D(1)")).is_zero()
    assert fano_normalize(f("D(1)^3")) == f("3*iql*q(1,1)*l^2*D(1)")
    assert fano_normalize(f("D(1)^4")) == f("3*iql*q(1,1)^2*C*o")
    assert fano_normalize(f("12*cc*l")) == f("5*l^3")
    assert fano_normalize(f("l^4 + cc^2 + l^2*cc")) == f("180*o")
    assert fano_normalize(f("Ex")) == fano_normalize(f("1/3*l^3 - 2/3*l*cc"))


def test_polarized_rules_specialize():
    # the three-D rule with equal labels is the cube rule; two-D rules likewise
    assert fano_normalize(f("D(1)*D(1)*D(1)")) == fano_normalize(f("D(1)^3"))
    assert fano_normalize(f("l^2*D(1)*D(2)")) == f("C*q(1,2)*o")
    assert fano_normalize(f("l^2*D(1)^2")) == f("C*q(1,1)*o")
    a = fano_normalize(f("D(1)*D(2)*D(3)"))
    b = fano_normalize(f("D(3)*D(1)*D(2)"))
    assert a == b


def test_normalize_idempotent_and_graded():
    for text in ("D(1)^2*D(2) + l*cc", "Ex*D(1) + l^2*D(2)^2", "cc^2 - 3*l*Ex", "D(1)*D(2)*l"):
        nf = fano_normalize(f(text))
        assert fano_normalize(nf) == nf


def test_cohomology_oracle_examples():
    assert fano_cohomology_vanishes(f("12*cc*l - 5*l^3")) is FanoVerdict.ZERO
    assert fano_cohomology_vanishes(f("l^2 + cc")) is FanoVerdict.NONZERO
    assert fano_cohomology_vanishes(f("l^2*D(1)")) is FanoVerdict.NONZERO
    assert fano_cohomology_vanishes(f("l^4 - 108*o")) is FanoVerdict.ZERO
    assert fano_cohomology_vanishes(f("l^2*D(1)^2 - 2*o")) is FanoVerdict.INDETERMINATE


def test_theocubic_examples():
    assert verify_theocubic(f("12*cc*l - 5*l^3")) is Verdict.CHOW_ZERO
    assert verify_theocubic(f("D(1)^3 - 3*iql*q(1,1)*l^2*D(1)")) is Verdict.CHOW_ZERO
    assert verify_theocubic(f("l^4 - 3*cc^2")) is Verdict.COHOMOLOGICALLY_NONZERO
    assert verify_theocubic(f("3*Ex - l^3 + 2*l*cc")) is Verdict.CHOW_ZERO


def test_verbitsky_certificate():
    cert = verbitsky_coefficient()
    assert cert.coefficient == 3 and cert.text == "3/q(l)"
    d3, rhs0 = cert.cube_identity
    assert print_canonical(d3) == "d^3" and print_canonical(rhs0) == "N*a*qd"
    dl2, rhs2 = cert.cross_identity
    assert print_canonical(dl2) == "3*d*l^2" and print_canonical(rhs2) == "N*a*ql"


def test_incidence_ledger_is_metadata():
    led = IncidenceLedger()
    assert not led.executable and led.gamma_degree == 2
