"""U_q(gl2), the vector R-matrix, O_q(GL2), the embedding, and the action."""

import random

import pytest

from qhc.coeffring import RAT, RC_ONE, RC_Q, RatCoeff
from qhc.linalg import dense_rank
from qhc.ncpoly import NcPoly
from qhc.qgroup import (
    QMQI,
    adjoint_in_uq,
    antipode_lminus,
    embed_phi,
    is_invariant,
    lmatrices,
    lmatrix_check,
    mat_mul,
    oq_action,
    oq_spec,
    phi_images,
    phi_matches_lmatrix_product,
    qdet_oq,
    qtrace_oq,
    reflection_equation_entries,
    rmatrix_vector,
    scalar_inverse_4x4,
    uq_spec,
    yang_baxter_residual,
)
from qhc.rewrite import check_ambiguities


@pytest.fixture(scope="module")
def U():
    return uq_spec()


@pytest.fixture(scope="module")
def O():
    return oq_spec()


def test_uq_normal_forms(U):
    assert U.nf(U.word_poly("K1", "E")) == U.word_poly("E", "K1").scale(RC_Q)
    assert U.nf(U.word_poly("K2", "E")) == U.word_poly("E", "K2").scale(RC_Q.inverse())
    assert U.nf(U.word_poly("K1", "F")) == U.word_poly("F", "K1").scale(RC_Q.inverse())
    com = U.nf(U.word_poly("E", "F") - U.word_poly("F", "E"))
    inv = QMQI.inverse()
    assert com == U.word_poly("K1", "K2i").scale(inv) - U.word_poly("K1i", "K2").scale(inv)
    assert all(r.resolved for r in check_ambiguities(U))


def test_rmatrix_entries():
    R = rmatrix_vector()
    q = RC_Q
    zero = RatCoeff.from_int(0)
    # diagonal (q, 1, 1, q); single off-diagonal entry q - 1/q sending
    # e_- x e_+ to e_+ x e_-
    assert [R[i][i] for i in range(4)] == [q, RC_ONE, RC_ONE, q]
    assert R[2][1] == QMQI
    for i in range(4):
        for j in range(4):
            if i != j and (i, j) != (2, 1):
                assert R[i][j] == zero


def test_yang_baxter():
    assert yang_baxter_residual()


def test_rmatrix_invertible():
    R = rmatrix_vector()
    Ri = scalar_inverse_4x4(R)
    prod = mat_mul(R, Ri)
    for i in range(4):
        for j in range(4):
            assert prod[i][j] == (RC_ONE if i == j else RatCoeff.from_int(0))


def test_lmatrix_presentation_holds():
    for tag, ok in lmatrix_check():
        assert ok, tag


def test_antipode_inverts_lminus(U):
    _, lm = lmatrices()
    sl = antipode_lminus()
    prod = mat_mul(lm, sl)
    for i in range(2):
        for j in range(2):
            want = U.unit() if i == j else U.zero()
            assert not U.nf(prod[i][j] - want)


def test_oq_normal_forms(O):
    assert O.nf(O.word_poly("l22", "l12")) == O.word_poly("l12", "l22").scale(RAT.q_power(2))
    reports = check_ambiguities(O)
    assert reports and all(r.resolved for r in reports)


def test_detq_central(O):
    det = qdet_oq()
    for name in ("l11", "l12", "l21", "l22"):
        g = O.gen(name)
        assert not O.nf(det * g - g * det)


def test_reflection_equation_gives_exactly_the_six_relations(O):
    entries = [O.nf(e, "leftmost") if False else e for e in reflection_equation_entries(O, ("l11", "l12", "l21", "l22"))]
    # every entry reduces to zero under the six rules
    assert all(not O.nf(e) for e in entries)
    # and conversely the six rules lie in the span of the entries: the rank
    # over the 16 length-two words does not grow when a rule is added
    words = [(i, j) for i in range(4) for j in range(4)]
    col = {w: k for k, w in enumerate(words)}
    zero = RatCoeff.from_int(0)

    def row(p):
        r = [zero] * 16
        for w, c in p.terms.items():
            r[col[w]] = c
        return r

    base = [row(e) for e in entries if e]
    rk = dense_rank(base, RC_ONE)
    assert rk == 6
    for rule in O.rules:
        resid = NcPoly.from_word(O.alphabet, rule.lhs) - rule.rhs
        assert dense_rank(base + [row(resid)], RC_ONE) == rk, rule.tag


def test_phi_embedding(O, U):
    img = phi_images()
    # l22 -> K2^-2 and l21 -> (q - 1/q) K2^-2 F
    assert img["l22"] == U.word_poly("K2i", "K2i")
    assert img["l21"] == U.word_poly("K2i", "K2i", "F").scale(QMQI)
    for rule in O.rules:
        resid = NcPoly.from_word(O.alphabet, rule.lhs) - rule.rhs
        assert not embed_phi(resid), rule.tag
    assert embed_phi(qdet_oq()) == U.word_poly("K1i", "K1i", "K2i", "K2i")
    assert phi_matches_lmatrix_product()


def test_adjoint_action_values(O):
    act = oq_action()
    assert act.act("K1", O.gen("l12")) == O.gen("l12").scale(RC_Q)
    assert act.act("E", O.gen("l11")) == O.gen("l12")
    assert act.act("E", O.gen("l22")) == O.gen("l12").scale(-RAT.q_power(2))
    assert not act.act("E", qtrace_oq())
    assert not act.act("F", qtrace_oq())


def test_action_well_defined(O):
    assert all(ok for _, _, ok in oq_action().kills_defining_relations())


def test_invariants(O):
    assert is_invariant(qtrace_oq())
    assert is_invariant(qdet_oq())
    assert not is_invariant(O.gen("l12"))
    assert not is_invariant(O.gen("l11"))


def test_action_compatible_with_phi(O):
    act = oq_action()
    for name in ("l11", "l12", "l21", "l22"):
        for g in ("E", "F", "K1", "K2"):
            lhs = embed_phi(act.act(g, O.gen(name)))
            rhs = adjoint_in_uq(g, embed_phi(O.gen(name)))
            assert not uq_spec().nf(lhs - rhs), (name, g)


def test_module_algebra_coassociativity(O):
    # (EF - FE) acts like (K1 K2i - K1i K2)/(q - 1/q)
    act = oq_action()
    rng = random.Random(23)
    names = ("l11", "l12", "l21", "l22")
    inv = QMQI.inverse()
    for _ in range(8):
        w = [rng.choice(names) for _ in range(rng.randint(1, 3))]
        x = O.nf(O.word_poly(*w))
        lhs = act.act("E", act.act("F", x)) - act.act("F", act.act("E", x))
        k = act.act("K1", act.act("K2i", x)) - act.act("K1i", act.act("K2", x))
        assert not O.nf(lhs - k.scale(inv))
