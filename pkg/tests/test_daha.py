"""Double affine Hecke algebra: derived relations, the idempotent, phi,
spherical diamonds, and graded dimensions."""

import random

import pytest

from qhc.coeffring import RAT, RC_ONE, RC_T
from qhc.daha import (
    BETA,
    T2P1,
    aplus_words,
    daha_spec,
    defining_relation_residuals,
    idempotent,
    idempotent_sandwich,
    phi_apply,
    phi_rank,
    phi_relation_residuals,
    reordering_residuals,
    sdaha_spec,
    spherical_dimension,
)
from qhc.rewrite import check_ambiguities, hilbert_table, q_central_residual, straighten_trace

from oracles import spherical_positive_series


@pytest.fixture(scope="module")
def H():
    return daha_spec()


@pytest.fixture(scope="module")
def A():
    return sdaha_spec()


def test_defining_relations_reduce_to_zero(H):
    for tag, r in defining_relation_residuals(H):
        assert not r, f"{tag}: {r}"


def test_reorderings_reduce_to_zero(H):
    for tag, r in reordering_residuals(H):
        assert not r, f"{tag}: {r}"


def test_conjugation_normal_forms(H):
    assert H.nf(H.word_poly("Ti", "Y1", "Ti")) == H.gen("Y2")
    assert H.nf(H.word_poly("X1", "X1i")) == H.unit()
    # X1*Y1 -> q^-2 (1 + beta^2) Y1X1 - q^-2 beta T Y1 X1, beta = t - 1/t
    qm2 = RAT.q_power(-2)
    expected = (H.word_poly("Y1", "X1").scale(qm2 * (RC_ONE + BETA * BETA))
                - H.word_poly("T", "Y1", "X1").scale(qm2 * BETA))
    assert H.nf(H.word_poly("X1", "Y1")) == expected


def test_all_daha_diamonds_resolve(H):
    reports = check_ambiguities(H)
    assert reports, "expected a nonempty ambiguity set"
    bad = [r for r in reports if not r.resolved]
    assert not bad, [H.alphabet.word_str(r.monomial) for r in bad]


def test_inner_grading(H):
    # Y1 Y2 h = q^{2N} h Y1 Y2 and X1 X2 h = q^{-2M} h X1 X2
    rng = random.Random(11)
    letters = ["T", "Y1", "Y2", "X1", "X2", "Y1i", "X2i"]
    lam = H.word_poly("Y1", "Y2")
    xi = H.word_poly("X1", "X2")
    for _ in range(12):
        w = [rng.choice(letters) for _ in range(rng.randint(1, 5))]
        h = H.nf(H.word_poly(*w))
        if not h:
            continue
        M, N = h.bidegree()
        assert not H.nf(lam * h - (h * lam).scale(RAT.q_power(2 * N)))
        assert not H.nf(xi * h - (h * xi).scale(RAT.q_power(-2 * M)))


def test_idempotent(H):
    e = idempotent()
    assert H.nf(H.mul(e, e) - e) == H.zero()
    assert idempotent_sandwich(H.unit()) == e
    assert idempotent_sandwich(H.gen("T")) == e.scale(RC_T)
    assert idempotent_sandwich(H.gen("Ti")) == e.scale(RC_T.inverse())
    x = H.gen("X1") + H.gen("X2")
    assert idempotent_sandwich(x) == H.mul(x, e)


def test_sdaha_normal_forms(A):
    assert A.nf(A.word_poly("P1", "Q1")) == (
        A.word_poly("Q1", "P1") + A.gen("R").scale(RAT.q_power(-2) - RC_ONE)
    )
    assert A.nf(A.word_poly("R", "Q2")) == A.word_poly("Q2", "R").scale(RAT.q_power(-2))
    r2 = A.nf(A.word_poly("R", "R"))
    coeff = T2P1 * (RAT.q_power(-2) + (RC_T * RC_T).inverse())
    expected = (A.word_poly("Q2", "P2").scale(coeff)
                - A.word_poly("Q2", "P1", "P1").scale(RAT.q_power(-2))
                - A.word_poly("Q1", "Q1", "P2").scale(RAT.q_power(-2))
                + A.word_poly("Q1", "R", "P1").scale(RAT.q_power(-2)))
    assert r2 == expected


def test_sdaha_diamonds_exactly_fifteen(A):
    reports = check_ambiguities(A)
    assert len(reports) == 15
    assert all(r.resolved for r in reports)
    monos = {A.alphabet.word_str(r.monomial) for r in reports}
    assert monos == {
        "P2*P1*R", "P2*P1*Q2", "P2*P1*Q1", "P2*R*Q2", "P2*R*Q1",
        "P2*Q2*Q1", "P1*R*Q2", "R^2*Q2", "P1*Q2*Q1", "R*Q2*Q1",
        "P2*R^2", "P1*R*Q1", "P1*R^2", "R^2*Q1", "R^3",
    }


def test_straighten_trace_p1rq1(A):
    # q^-4 Q1 R P1 + q^-2(1-q^-2) Q2 P1^2 + q^-2(q^-2-1) R^2 + q^-2(1-q^-2) Q1^2 P2
    qm2, qm4 = RAT.q_power(-2), RAT.q_power(-4)
    coeff = qm2 * (RC_ONE - qm2)
    expected = (A.word_poly("Q1", "R", "P1").scale(qm4)
                + A.word_poly("Q2", "P1", "P1").scale(coeff)
                - A.word_poly("R", "R").scale(coeff)
                + A.word_poly("Q1", "Q1", "P2").scale(coeff))
    w = A.alphabet.word("P1", "R", "Q1")
    assert straighten_trace(A, w, "leftmost") == expected
    assert straighten_trace(A, w, "rightmost") == expected


def test_q_centrality_declared(A):
    rng = random.Random(3)
    letters = ["Q1", "Q2", "R", "P1", "P2", "Q2i", "P2i"]
    for name in ("P2", "Q2"):
        for _ in range(8):
            w = [rng.choice(letters) for _ in range(rng.randint(1, 4))]
            h = A.nf(A.word_poly(*w))
            if h and h.bidegree() not in (None, "any"):
                assert not q_central_residual(A, name, h)


def test_phi_homomorphism_relations():
    for tag, r in phi_relation_residuals():
        assert not r, f"phi fails on {tag}"


def test_phi_examples(H, A):
    e = idempotent()
    assert phi_apply(A.gen("Q2")) == H.mul(H.word_poly("Y1", "Y2"), e)
    assert H.mul(phi_apply(A.gen("P2")), phi_apply(A.gen("P2i"))) == e
    p = A.word_poly("P1", "Q1") - A.word_poly("Q1", "P1") - A.gen("R").scale(RAT.q_power(-2) - RC_ONE)
    assert not H.nf(phi_apply(p))


def test_phi_is_multiplicative(A, H):
    rng = random.Random(5)
    names = ["Q1", "Q2", "R", "P1", "P2"]
    for _ in range(6):
        x = A.word_poly(*(rng.choice(names) for _ in range(rng.randint(1, 2))))
        y = A.word_poly(*(rng.choice(names) for _ in range(rng.randint(1, 2))))
        assert phi_apply(A.nf(x * y)) == H.nf(H.mul(phi_apply(x), phi_apply(y)))


def test_hilbert_aplus_matches_series(A):
    tab = hilbert_table(A, (4, 4))
    series = spherical_positive_series(4, 4)
    for m in range(5):
        for n in range(5):
            assert tab.dim(m, n) == series.get((m, n), 0), (m, n)
    assert tab.dim(2, 2) == 5


def test_spherical_dimension_matches_series():
    series = spherical_positive_series(3, 3)
    for m in range(4):
        for n in range(4):
            assert spherical_dimension(m, n) == series.get((m, n), 0), (m, n)


def test_phi_rank_matches_dimension():
    series = spherical_positive_series(3, 3)
    for m, n in [(1, 1), (2, 2), (3, 2), (2, 3)]:
        want = series.get((m, n), 0)
        assert len(aplus_words(m, n)) == want
        assert phi_rank(m, n) == want
