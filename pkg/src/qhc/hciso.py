"""The graded identification between the Hamiltonian reduction and the
spherical subalgebra.

On generators it reads

    d1 -> P1      d2 -> q^2 P2      r -> R
    c1 -> Q1      c2 -> q^2 Q2

and both presentations turn out to coincide under it: every reduction
relation transports to a spherical relation with zero residual, and on each
graded piece the map sends the PBW basis bijectively to scalar multiples of
the PBW basis on the other side (the scalars are powers of q, so the matrix
of the map in those bases is diagonal and invertible).
"""

from __future__ import annotations

from ._util import locked_cache

from .coeffring import RAT
from .daha import sdaha_spec
from .invham import ham_spec
from .ncpoly import NcPoly
from .rewrite import EngineError


_DICT = {
    "d1": ("P1", 0),
    "d2": ("P2", 2),
    "d2i": ("P2i", -2),
    "r": ("R", 0),
    "c1": ("Q1", 0),
    "c2": ("Q2", 2),
    "c2i": ("Q2i", -2),
}


@locked_cache
def _letter_map() -> dict[int, tuple[int, int]]:
    H, A = ham_spec(), sdaha_spec()
    out = {}
    for name, (img, e) in _DICT.items():
        out[H.alphabet.index(name)] = (A.alphabet.index(img), e)
    return out


def hc_apply(x: NcPoly) -> NcPoly:
    """Transport a reduction element into the spherical presentation."""
    H, A = ham_spec(), sdaha_spec()
    if x.alphabet is not H.alphabet:
        raise EngineError("hc_apply expects an element of the reduction")
    lm = _letter_map()
    out = A.zero()
    for word, c in x.terms.items():
        e = 0
        letters = []
        for i in word:
            j, k = lm[i]
            letters.append(j)
            e += k
        out = out + NcPoly.from_word(A.alphabet, tuple(letters), c * RAT.q_power(e))
    return A.nf(out)


def hc_inverse_apply(x: NcPoly) -> NcPoly:
    """The inverse transport, with reciprocal q powers."""
    H, A = ham_spec(), sdaha_spec()
    if x.alphabet is not A.alphabet:
        raise EngineError("hc_inverse_apply expects a spherical element")
    rev = {j: (i, -k) for i, (j, k) in _letter_map().items()}
    out = H.zero()
    for word, c in x.terms.items():
        e = 0
        letters = []
        for i in word:
            j, k = rev[i]
            letters.append(j)
            e += k
        out = out + NcPoly.from_word(H.alphabet, tuple(letters), c * RAT.q_power(e))
    return H.nf(out)


def hc_relation_residuals() -> list[tuple[str, NcPoly]]:
    """Transport of every reduction relation; residuals must vanish."""
    H, A = ham_spec(), sdaha_spec()
    out = []
    for rule in H.rules:
        lhs = NcPoly.from_word(H.alphabet, rule.lhs)
        out.append((rule.tag, A.nf(hc_apply(lhs) - hc_apply(rule.rhs))))
    return out


def hc_basis_bijection(max_bidegree: tuple[int, int]) -> list[dict]:
    """Per bidegree up to max: the map sends PBW words to q-power multiples
    of PBW words, bijectively.  Returns one record per bidegree."""
    H, A = ham_spec(), sdaha_spec()
    out = []
    for m in range(max_bidegree[0] + 1):
        for n in range(max_bidegree[1] + 1):
            ham_words = list(H.pbw.enumerate(m, n))
            sph_words = set(A.pbw.enumerate(m, n))
            seen = {}
            ok = len(ham_words) == len(sph_words)
            for w in ham_words:
                img = hc_apply(NcPoly.from_word(H.alphabet, w))
                if len(img.terms) != 1:
                    ok = False
                    break
                ((iw, c),) = img.terms.items()
                if iw not in sph_words or iw in seen:
                    ok = False
                    break
                seen[iw] = c
            out.append({
                "bidegree": (m, n),
                "count": len(ham_words),
                "bijective": ok and len(seen) == len(sph_words),
                "scalars": sorted({str(c) for c in seen.values()}),
            })
    return out


def hc_verify(max_bidegree: tuple[int, int] = (4, 4)) -> dict:
    """Relation transport plus the graded basis bijection check."""
    relations = [
        {"relation": tag, "residual_zero": not r} for tag, r in hc_relation_residuals()
    ]
    bijection = hc_basis_bijection(max_bidegree)
    return {
        "relations": relations,
        "bijection": bijection,
        "pass": all(r["residual_zero"] for r in relations)
        and all(b["bijective"] for b in bijection),
    }
