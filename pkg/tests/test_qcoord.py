import random

import pytest

from qborel.coeff import LaurentPoly, QHAT
from qborel.ncalg import AlgebraError, NCPoly, TensorPoly, borel, qmatrix, tensor, torus
from qborel import qcoord as qc

q = LaurentPoly.q


def X(spec, i, j, e=1):
    return NCPoly.gen(spec, i, j, e)


def Y(T, i, e=1):
    return NCPoly.gen(T, i, None, e)


def test_inversions():
    assert qc.inversions((0, 1, 2)) == 0
    assert qc.inversions((2, 1, 0)) == 3
    assert qc.inversions((1, 0, 3, 2)) == 2


def test_qdet_examples():
    s = qmatrix(2)
    assert qc.qdet(2) == X(s, 1, 1) * X(s, 2, 2) - X(s, 1, 2) * X(s, 2, 1) * q(1)
    d3 = qc.qdet(3)
    assert len(d3.terms) == 6
    mono = ((), ((1, 3), (2, 2), (3, 1)))
    assert d3.terms[mono] == -q(3)
    for N in (2, 3, 4):
        assert qc.counit(qc.qdet(N)) == 1


def test_minor_examples():
    s2, s3 = qmatrix(2), qmatrix(3)
    assert qc.qminor([1], [2], 2) == X(s2, 1, 2)
    assert qc.qminor([1, 2], [1, 2], 3) == X(s3, 1, 1) * X(s3, 2, 2) - X(s3, 1, 2) * X(s3, 2, 1) * q(1)
    assert qc.qminor([1, 2], [1, 3], 3) == X(s3, 1, 1) * X(s3, 2, 3) - X(s3, 1, 3) * X(s3, 2, 1) * q(1)
    assert qc.qminor([1, 2, 3], [1, 2, 3], 3) == qc.qdet(3)
    with pytest.raises(AlgebraError):
        qc.qminor([2, 1], [1, 2], 3)
    with pytest.raises(AlgebraError):
        qc.qminor([1], [1, 2], 3)


def test_comult_examples():
    s = qmatrix(2)
    assert qc.comult(X(s, 1, 2)) == tensor(X(s, 1, 1), X(s, 1, 2)) + tensor(X(s, 1, 2), X(s, 2, 2))
    b = borel("+", 3)
    assert qc.comult(X(b, 1, 3)) == (tensor(X(b, 1, 1), X(b, 1, 3)) + tensor(X(b, 1, 2), X(b, 2, 3))
                                     + tensor(X(b, 1, 3), X(b, 3, 3)))
    T = torus(2)
    assert qc.comult(Y(T, 1, -1)) == tensor(Y(T, 1, -1), Y(T, 1, -1))


def test_counit_examples():
    b = borel("+", 2)
    assert qc.counit(X(b, 1, 2)) == 0
    assert qc.counit(X(b, 1, 1, -1) * X(b, 1, 2) + X(b, 1, 1)) == 1
    d = qc.comult(X(b, 1, 2))
    assert d.map_leg(0, qc.counit) == X(b, 1, 2)


def test_antipode_examples():
    s = qmatrix(2)
    for conv in (qc.PLAIN_Q, qc.MINUS_Q):
        assert qc.antipode_gen(1, 1, 2, conv) == X(s, 2, 2)
    assert qc.antipode_gen(1, 2, 2, qc.MINUS_Q) == X(s, 1, 2) * (-q(-1))
    total = sum((qc.antipode_gen(1, k, 2, qc.MINUS_Q) * X(s, k, 1) for k in (1, 2)),
                NCPoly.zero(s))
    assert total == qc.qdet(2)
    bad = sum((qc.antipode_gen(1, k, 2, qc.PLAIN_Q) * X(s, k, 1) for k in (1, 2)),
              NCPoly.zero(s))
    assert bad != qc.qdet(2)


def test_antipode_resolution_reports_discrepancy():
    conv, notes = qc.resolve_antipode_convention()
    assert conv == qc.MINUS_Q
    assert any("fails" in n and "plain-q" in n for n in notes)


@pytest.mark.parametrize("N", [2, 3])
def test_antipode_axiom(N):
    for side in ("left", "right"):
        assert all(not r for r in qc.antipode_residuals(N, qc.MINUS_Q, side).values())


def test_transpose_examples():
    s = qmatrix(2)
    assert qc.transpose(X(s, 1, 2)) == X(s, 2, 1)
    bp, bm = borel("+", 2), borel("-", 2)
    img = qc.borel_transpose(X(bp, 1, 1, -1) * X(bp, 1, 2))
    assert img == X(bm, 2, 1) * X(bm, 1, 1, -1) * q(-1)
    with pytest.raises(AlgebraError):
        qc.transpose(X(bp, 1, 2))


def test_unipotent_examples():
    b = borel("+", 2)
    assert qc.unipotent_gen("y", "+", 1, 2, 2) == X(b, 1, 1, -1) * X(b, 1, 2)
    # X12 X22^-1 = X12 X11 = q^-1 X11 X12
    assert qc.unipotent_gen("z", "+", 1, 2, 2) == X(b, 1, 1) * X(b, 1, 2) * q(-1)
    bm = borel("-", 2)
    assert qc.unipotent_gen("y", "-", 1, 2, 2) == X(bm, 2, 2, -1) * X(bm, 2, 1)
    with pytest.raises(AlgebraError):
        qc.unipotent_gen("y", "+", 2, 1, 2)


def test_unipotent_relation_examples():
    def y(i, j, N=3):
        return qc.unipotent_gen("y", "+", i, j, N)

    def z(i, j, N=4):
        return qc.unipotent_gen("z", "+", i, j, N)

    assert not (y(1, 2) * y(1, 3) - y(1, 3) * y(1, 2) * q(1))
    assert not (y(1, 2) * y(2, 3) - y(2, 3) * y(1, 2) * q(-1) - y(1, 3) * (q(-1) * QHAT))
    assert not (z(1, 2) * z(3, 4) - z(3, 4) * z(1, 2))
    # the plus-side coefficient is q^-1 qhat; a wrong coefficient is caught
    assert y(1, 2) * y(2, 3) - y(2, 3) * y(1, 2) * q(-1) - y(1, 3) * QHAT


@pytest.mark.parametrize("N", [2, 3, 4])
def test_unipotent_presentation(N):
    assert qc.verify_unipotent_presentation(N).passed


def test_coaction_examples():
    b = borel("+", 2)
    T = torus(2)
    assert qc.coaction(X(b, 1, 2), "eta") == tensor(X(b, 1, 2), Y(T, 2))
    z = X(b, 1, 2) * X(b, 2, 2, -1)
    assert qc.coaction(z, "eta") == tensor(z, NCPoly.one(T))
    y = X(b, 1, 1, -1) * X(b, 1, 2)
    assert qc.coaction(y, "theta") == tensor(NCPoly.one(T), y)
    assert qc.is_coinvariant(z, "eta")
    assert qc.is_coinvariant(y, "theta")
    assert not qc.is_coinvariant(X(b, 1, 2), "eta")


def test_coaction_matches_comult_route():
    b = borel("+", 3)
    for g in b.generators():
        for which in ("eta", "theta"):
            assert qc.coaction(X(b, *g), which) == qc.coaction_via_comult(X(b, *g), which)


def test_torus_action_examples():
    b = borel("+", 4)
    T = torus(4)
    assert qc.torus_act(Y(T, 1), X(b, 1, 2)) == X(b, 1, 2) * q(1)
    assert qc.torus_act(Y(T, 2), X(b, 1, 2)) == X(b, 1, 2) * q(-1)
    assert qc.torus_act(Y(T, 3), X(b, 1, 2)) == X(b, 1, 2)


def test_smash_examples():
    S = qc.SmashElement.basis
    N = 2
    lhs = qc.smash_mul(S(qc.A_H, "+", N, (), (1,)), S(qc.A_H, "+", N, ((1, 2),)))
    assert lhs == S(qc.A_H, "+", N, ((1, 2),), (1,), q(1))
    a = S(qc.A_H, "+", 3, ((1, 2),))
    bb = S(qc.A_H, "+", 3, ((2, 3),))
    assert qc.smash_mul(a, bb) == S(qc.A_H, "+", 3, ((1, 2), (2, 3)))
    h = S(qc.A_H, "+", 3, (), (1, 0))
    k = S(qc.A_H, "+", 3, (), (0, -1))
    assert qc.smash_mul(h, k) == S(qc.A_H, "+", 3, (), (1, -1))
    b = borel("+", 2)
    # Y2 = Y1^-1 at N = 2
    assert qc.smash_phi(S(qc.A_H, "+", 2, ((1, 2),), (-1,))) == X(b, 1, 2)
    assert qc.smash_phi(S(qc.A_H, "+", 2)) == NCPoly.one(b)


def test_smash_phi_multiplicative():
    rng = random.Random(5)
    pairs = [(1, 2), (1, 3), (2, 3)]
    for side in (qc.A_H, qc.H_A):
        for _ in range(30):
            def rand():
                w = tuple(rng.choice(pairs) for _ in range(rng.randint(0, 2)))
                return qc.SmashElement.basis(side, "+", 3, w, (rng.randint(-1, 1), rng.randint(-1, 1)))
            s1, s2 = rand(), rand()
            assert qc.smash_phi(qc.smash_mul(s1, s2)) == qc.smash_phi(s1) * qc.smash_phi(s2)


def test_smash_mismatch():
    with pytest.raises(AlgebraError):
        qc.smash_mul(qc.SmashElement.basis(qc.A_H, "+", 2), qc.SmashElement.basis(qc.H_A, "+", 2))
