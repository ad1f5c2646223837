from fractions import Fraction

import pytest

from qborel.coeff import LaurentPoly, ONE, QHAT_INV, qhat_fraction
from qborel.ncalg import NCPoly, borel
from qborel.uqrep import pairing as pr
from qborel.uqrep.functionals import functional_eval, module_eval, raw_eval, xbar_eval
from qborel.uqrep.uq import (
    GEQ0,
    UqElement,
    UqError,
    UqTensor,
    Variant,
    cartan_omega,
    uq_antipode,
    uq_comult,
    uq_counit,
)
from qborel.uqrep.vmodule import ModuleVector, matrix_coefficient, module_act
from qborel.uqrep.weights import (
    Weight,
    alpha,
    beta,
    bilinear_form,
    from_roots,
    fundamental_weight_in_roots,
    int_form,
    kostant_partition_count,
    lambda_grid,
    omega,
)

q = LaurentPoly.q


def test_weight_examples():
    assert alpha(1, 1) == Weight((2,))
    assert fundamental_weight_in_roots(1, 1) == (Fraction(1, 2),)
    assert alpha(2, 1).coords == (2, -1)
    assert bilinear_form(omega(2, 1), alpha(2, 1)) == 1
    assert bilinear_form(alpha(2, 1), alpha(2, 2)) == -1
    assert bilinear_form(alpha(3, 2), alpha(3, 2)) == 2
    for n in (1, 2, 3):
        total = Weight.zero(n)
        for j in range(1, n + 2):
            total = total + beta(n, j)
        assert not total


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_root_coordinates_round_trip(n):
    for w in [omega(n, i) for i in range(1, n + 1)] + lambda_grid(n):
        assert from_roots(n, w.in_roots()) == w
    assert not omega(n, 1).in_root_lattice()
    assert omega(n, 1).in_weight_lattice()


def test_kostant_counts():
    assert kostant_partition_count(2, (1, 1)) == 2
    assert kostant_partition_count(2, (2, 1)) == 2
    assert kostant_partition_count(3, (1, 1, 1)) == 4


def test_variant_guards():
    v = Variant(1, GEQ0)
    with pytest.raises(UqError):
        UqElement.K(v, omega(1, 1))
    UqElement.K(Variant(1, GEQ0, check=True), omega(1, 1))
    with pytest.raises(UqError):
        UqElement.F(v, 1)


@pytest.mark.parametrize("n", [1, 2])
def test_E_K_commutation(n):
    v = Variant(n, GEQ0, check=True)
    for lam in lambda_grid(n) + [omega(n, 1)]:
        lhs = UqElement.E(v, 1) * UqElement.K(v, lam)
        rhs = UqElement.K(v, lam) * UqElement.E(v, 1) * q(-int_form(lam, alpha(n, 1)))
        assert lhs == rhs


def test_comult_example():
    v = Variant(2, GEQ0)
    lam = alpha(2, 2)
    a = alpha(2, 1)
    x = UqElement.K(v, lam) * UqElement.E(v, 1)
    K_lE = (lam, (("E", 1),))
    expected = UqTensor(v, 2, {((lam + a, ()), K_lE): ONE, (K_lE, (lam, ())): ONE})
    assert uq_comult(x) == expected


def _leg_product(t, f):
    v = t.variant
    out = UqElement.zero(v)
    for (w1, w2), c in t.terms.items():
        out = out + f(UqElement(v, {w1: ONE})) * UqElement(v, {w2: ONE}) * c
    return out


def _leg_product_right(t):
    v = t.variant
    out = UqElement.zero(v)
    for (w1, w2), c in t.terms.items():
        out = out + UqElement(v, {w1: ONE}) * uq_antipode(UqElement(v, {w2: ONE})) * c
    return out


def test_hopf_axioms():
    v = Variant(2, "full")
    E, F, K = (lambda i: UqElement.E(v, i)), (lambda i: UqElement.F(v, i)), (lambda w: UqElement.K(v, w))
    samples = [E(1), F(2), E(1) * F(2) * E(2), K(alpha(2, 1)) * E(2) * E(1), F(1) * F(1) + E(2)]
    for u in samples:
        d = uq_comult(u)
        counit = UqElement.one(v) * uq_counit(u)
        assert _leg_product(d, uq_antipode) == counit
        assert _leg_product_right(d) == counit
    assert uq_counit(E(1)) == 0
    assert uq_counit(K(alpha(2, 2))) == 1


def test_cartan_omega_swaps_sides():
    x = UqElement.E(Variant(1, GEQ0, True), 1)
    y = cartan_omega(x)
    assert y == UqElement.F(pr.leq0(1), 1)


def test_module_examples():
    n = 2
    v = Variant(n, "full", check=True)
    E, F = (lambda i: UqElement.E(v, i)), (lambda i: UqElement.F(v, i))
    e = lambda *idx: ModuleVector.basis(n, *idx)
    assert module_act(E(1), e(2)) == e(1)
    assert module_act(F(1), e(1)) == e(2)
    assert not module_act(E(1), e(1))
    assert module_act(E(1) * E(2), e(3)) == e(1)
    assert not module_act(E(2) * E(1), e(3))
    for lam in lambda_grid(n):
        for j in (1, 2, 3):
            assert module_act(UqElement.K(v, lam), e(j)) == e(j) * q(int_form(beta(n, j), lam))
        assert module_act(UqElement.K(v, lam), e(1, 3)) == \
            e(1, 3) * q(int_form(beta(n, 1) + beta(n, 3), lam))


def test_tensor_action_uses_comult():
    v = Variant(1, GEQ0, check=True)
    # E.(e2 (x) e2) = K_a e2 (x) E e2 + E e2 (x) e2 = q^-1 e2 (x) e1 + e1 (x) e2
    out = module_act(UqElement.E(v, 1), ModuleVector.basis(1, 2, 2))
    assert out.coefficient(2, 1) == q(-1)
    assert out.coefficient(1, 2) == 1


def test_xbar_examples():
    n = 1
    assert xbar_eval(n, 1, 2, Weight.zero(n), (1,)) == 1
    assert xbar_eval(n, 1, 2, Weight((2,)), (1,)) == q(1)
    assert xbar_eval(n, 1, 2, Weight.zero(n), ()) == 0
    assert xbar_eval(n, 2, 1, Weight.zero(n), ()) == 0
    assert xbar_eval(2, 1, 3, Weight.zero(2), (1, 2)) == 1
    assert xbar_eval(2, 1, 3, Weight.zero(2), (2, 1)) == 0


def test_functional_eval_matches_module():
    n = 2
    B = borel("+", 3)
    u = pr.E_word(n, [1, 2], alpha(n, 1))
    for (i, j) in ((1, 2), (2, 3), (1, 3)):
        x = NCPoly.gen(B, i, j)
        assert functional_eval(x, u) == module_eval(n, [((i, j), 1)], u)
    x = NCPoly.gen(B, 1, 2) * NCPoly.gen(B, 2, 3)
    assert functional_eval(x, u) == module_eval(n, [((1, 2), 1), ((2, 3), 1)], u)
    assert functional_eval(NCPoly.gen(B, 1, 3), u) == matrix_coefficient(1, 3, u)


def test_pair_examples():
    n = 1
    assert pr.pair(pr.F_word(n, [1]), pr.E_word(n, [1])) == -QHAT_INV
    a = alpha(1, 1)
    assert pr.pair(pr.F_word(n, [], a), pr.E_word(n, [], a)) == q(-2)
    assert pr.pair(pr.F_word(n, [1]), pr.E_word(n, [])) == 0
    # (F F, E E) = (1 + q^-2) (F, K_a E) (F, E), (F, K_a E) = -q^2 qhat^-1
    expected = qhat_fraction(LaurentPoly({2: 1, 0: 1}), 2)
    for s in (pr.LEFT, pr.RIGHT):
        assert pr.pair(pr.F_word(n, [1, 1]), pr.E_word(n, [1, 1]), s) == expected


def test_pair_orthogonal_weights():
    assert pr.pair(pr.F_word(2, [1]), pr.E_word(2, [2])) == 0
    assert pr.pair(pr.F_word(2, [1, 2]), pr.E_word(2, [1])) == 0


def test_phi_examples():
    n = 1
    B = borel("+", 2)
    grid = lambda_grid(n)
    b1 = beta(n, 1)
    assert pr.phi_check(pr.F_word(n, [], -b1), NCPoly.gen(B, 1, 1), 3, grid)
    x = NCPoly.gen(B, 1, 2) * (-(q(-1) * QHAT_INV))
    assert pr.phi_check(pr.F_word(n, [1], -b1 + alpha(n, 1)), x, 3, grid)
    assert not pr.phi_check(pr.F_word(n, [1]), NCPoly.gen(B, 1, 2), 2, grid)


def test_psi_example():
    B = borel("+", 2)
    expected = NCPoly.gen(B, 1, 1) * NCPoly.gen(B, 1, 2) * (-(q(-1) * QHAT_INV))
    assert pr.psi_image([1], 2) == expected


@pytest.mark.parametrize("n", [1, 2, 3])
def test_psi_respects_relations(n):
    assert pr.verify_uqplus_presentation(n).passed


def test_serre_relation_vanishes_directly():
    rels = dict(pr.serre_relations(2))
    res = NCPoly.zero(borel("+", 3))
    for c, seq in rels["serre:1,2"]:
        res = res + pr.psi_image(seq, 3) * c
    assert not res
    bogus = pr.psi_image((1, 2), 3) - pr.psi_image((2, 1), 3)
    assert bogus


def test_gram_examples():
    M, r = pr.gram_rank(1, (1,))
    assert M == [[-QHAT_INV]] and r == 1
    assert pr.gram_rank(2, (1, 1))[1] == 2
    assert pr.gram_rank(1, (2,))[1] == 1
    assert pr.gram_rank(3, (1, 0, 1))[1] == 1
    assert pr.dimension_oracle(3, (1, 0, 1)) == 1
    assert pr.dimension_oracle(3, (1, 0, 1), distant_min=3) == 2


def test_raw_eval_lower_letters_vanish():
    u = pr.E_word(1, [1])
    assert raw_eval(1, [(ONE, [((2, 1), 1)])], u) == 0
