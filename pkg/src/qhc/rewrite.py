"""Generic noncommutative rewriting engine.

An algebra is presented by oriented straightening rules lhs -> rhs where lhs
is a word and rhs a polynomial.  Exhaustive application of the rules computes
normal forms; overlap and inclusion ambiguities between rule left-hand sides
are enumerated and checked for resolution (the diamond condition), which by
Bergman's lemma certifies that the normal-form words are a linear basis.

Two layers of rules are kept:

* core rules: the printed straightening relations of the presentation; the
  ambiguity check runs over these only.
* auxiliary rules: mechanically generated commutations for invertible
  q-central generators and their cancellations.  These implement the Ore
  localisation of the positive cone and never enter the ambiguity count,
  mirroring how the localised algebra is obtained from the positive one.

Termination is enforced two ways: every rule must strictly decrease a
per-algebra lexicographic stack of word statistics (checked word by word at
construction), and every normal-form computation carries a step budget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .coeffring import RAT, QQField
from .linalg import frac_rank
from .ncpoly import EMPTY_WORD, Alphabet, NcPoly, Word


class EngineError(RuntimeError):
    pass


class NonTermination(EngineError):
    pass


class SpecError(ValueError):
    pass


# ---------------------------------------------------------------------------
# word orders
# ---------------------------------------------------------------------------

class WordOrder:
    """Lexicographic stack: weighted inversions, heavy-letter count, length,
    letter tiebreak weights, then plain lex on generator indexes.

    An inverted pair (x before y with rank x > rank y) weighs more when x has
    a lower rank: straightening pushes inversions toward the top-ranked
    letters before they disappear, so this weight strictly drops.
    """

    def __init__(
        self,
        ranks: Sequence[int],
        heavy: Iterable[int] = (),
        tiebreak: Optional[dict[int, int]] = None,
        pair_weight: Optional[Callable[[int, int], int]] = None,
    ):
        self.ranks = tuple(ranks)
        self.heavy = frozenset(heavy)
        self.tiebreak = dict(tiebreak or {})
        if pair_weight is None:
            top = max(self.ranks) + 1
            ranks_t = self.ranks
            pair_weight = lambda x, y: top - ranks_t[x]
        self.pair_weight = pair_weight

    def key(self, w: Word):
        ranks = self.ranks
        inv = 0
        n = len(w)
        pw = self.pair_weight
        for i in range(n):
            ri = ranks[w[i]]
            for j in range(i + 1, n):
                if ri > ranks[w[j]]:
                    inv += pw(w[i], w[j])
        hv = sum(1 for x in w if x in self.heavy) if self.heavy else 0
        tb = sum(self.tiebreak.get(x, 0) for x in w) if self.tiebreak else 0
        return (inv, hv, n, tb, w)

    def less(self, u: Word, v: Word) -> bool:
        return self.key(u) < self.key(v)


# ---------------------------------------------------------------------------
# PBW descriptors
# ---------------------------------------------------------------------------

class PowerBlocksPbw:
    """Normal words are g1^{e1} g2^{e2} ... with fixed block order.

    Each block names a positive letter, an optional inverse letter (negative
    exponents), and an optional exponent cap (for involutive-type letters).
    Enumeration covers the nonnegative cone only.
    """

    def __init__(self, alphabet: Alphabet, blocks: Sequence[tuple[str, Optional[str], Optional[int]]]):
        self.alphabet = alphabet
        self.blocks = []
        self.block_of: dict[int, int] = {}
        for k, (pos, inv, cap) in enumerate(blocks):
            p = alphabet.index(pos)
            i = alphabet.index(inv) if inv else None
            self.blocks.append((p, i, cap))
            self.block_of[p] = k
            if i is not None:
                self.block_of[i] = k

    def accepts(self, w: Word) -> bool:
        cur = -1
        i = 0
        n = len(w)
        while i < n:
            j = i
            while j < n and w[j] == w[i]:
                j += 1
            blk = self.block_of.get(w[i])
            if blk is None or blk <= cur:
                return False
            cap = self.blocks[blk][2]
            if cap is not None and j - i > cap:
                return False
            cur = blk
            i = j
        return True

    def enumerate(self, M: int, N: int):
        alph = self.alphabet
        degs = [alph.gens[p].bidegree for p, _, _ in self.blocks]

        def rec(k: int, m: int, n: int, acc: Word):
            if k == len(self.blocks):
                if m == 0 and n == 0:
                    yield acc
                return
            p, _, cap = self.blocks[k]
            a, b = degs[k]
            if a == 0 and b == 0 and cap is None:
                raise EngineError("degree-zero block with unbounded exponent is not enumerable")
            e = 0
            while True:
                if cap is not None and e > cap:
                    break
                mm, nn = m - e * a, n - e * b
                if (a > 0 and mm < 0) or (b > 0 and nn < 0):
                    break
                yield from rec(k + 1, mm, nn, acc + (p,) * e)
                e += 1

        yield from rec(0, M, N, EMPTY_WORD)


class SortedBlocksPbw:
    """Normal words are weakly increasing runs, one block after another.

    Used for the coordinate-style algebras where a basis is given by row-major
    sorted monomials in each family of matrix entries.
    """

    def __init__(self, alphabet: Alphabet, blocks: Sequence[Sequence[str]]):
        self.alphabet = alphabet
        self.blocks = [tuple(alphabet.index(n) for n in blk) for blk in blocks]
        self.block_of = {}
        for k, blk in enumerate(self.blocks):
            for i in blk:
                self.block_of[i] = k

    def accepts(self, w: Word) -> bool:
        cur = 0
        prev = -1
        for x in w:
            blk = self.block_of.get(x)
            if blk is None or blk < cur:
                return False
            if blk > cur:
                cur, prev = blk, x
            else:
                if x < prev:
                    return False
                prev = x
        return True

    def enumerate(self, M: int, N: int):
        alph = self.alphabet
        sizes = []
        for blk in self.blocks:
            degs = {alph.gens[i].bidegree for i in blk}
            if len(degs) != 1:
                raise EngineError("mixed bidegrees inside a sorted block")
            sizes.append(next(iter(degs)))
        want = (M, N)

        def block_count(k):
            a, b = sizes[k]
            tot = want[0] if a else want[1]
            unit = a if a else b
            if tot % unit:
                return None
            return tot // unit

        counts = []
        for k in range(len(self.blocks)):
            c = block_count(k)
            if c is None:
                return
            counts.append(c)
        pools = [
            itertools.combinations_with_replacement(self.blocks[k], counts[k])
            for k in range(len(self.blocks))
        ]
        for combo in itertools.product(*pools):
            yield tuple(itertools.chain.from_iterable(combo))


# ---------------------------------------------------------------------------
# rules and specs
# ---------------------------------------------------------------------------

class RewriteRule:
    __slots__ = ("lhs", "rhs", "tag")

    def __init__(self, lhs: Word, rhs: NcPoly, tag: str, order: Optional[WordOrder] = None):
        if not lhs:
            raise SpecError(f"rule {tag}: empty left-hand side")
        self.lhs = lhs
        self.rhs = rhs
        self.tag = tag
        if lhs in rhs.terms:
            raise SpecError(f"rule {tag}: lhs occurs in rhs")
        alph = rhs.alphabet
        d = alph.word_bidegree(lhs)
        for w in rhs.terms:
            if alph.word_bidegree(w) != d:
                raise SpecError(f"rule {tag}: rhs word {alph.word_str(w)} is not homogeneous with lhs")
        if order is not None:
            kl = order.key(lhs)
            for w in rhs.terms:
                if not order.key(w) < kl:
                    raise SpecError(
                        f"rule {tag}: rhs word {alph.word_str(w)} does not decrease "
                        f"the termination order"
                    )

    def __repr__(self):
        return f"<rule {self.tag}>"


@dataclass(frozen=True)
class QCentralGen:
    """An invertible generator g with g*h = q^<kappa, bideg h> h*g."""

    name: str
    kappa: tuple[int, int]


DEFAULT_STEP_BUDGET = 10**6


class AlgebraSpec:
    """A presentation with oriented rules, a termination order and a PBW map."""

    def __init__(
        self,
        alphabet: Alphabet,
        rules: Sequence[RewriteRule],
        order: WordOrder,
        pbw,
        q_central: Sequence[QCentralGen] = (),
        field=RAT,
        step_budget: int = DEFAULT_STEP_BUDGET,
        validate_pbw: bool = True,
        aux_rules: Optional[Sequence[RewriteRule]] = None,
    ):
        self.alphabet = alphabet
        self.algebra_id = alphabet.algebra_id
        self.rules = list(rules)
        self.order = order
        self.pbw = pbw
        self.q_central = list(q_central)
        self.field = field
        self.step_budget = step_budget
        self.validate_pbw = validate_pbw
        if aux_rules is None:
            self.aux_rules = generate_aux_rules(self)
        else:
            self.aux_rules = list(aux_rules)
        self._index: dict[int, dict[Word, RewriteRule]] = {}
        for r in self.rules + self.aux_rules:
            self._index.setdefault(len(r.lhs), {})
            if r.lhs in self._index[len(r.lhs)]:
                raise SpecError(f"duplicate rule lhs {alphabet.word_str(r.lhs)}")
            self._index[len(r.lhs)][r.lhs] = r
        self._lengths = sorted(self._index)
        self._nf_cache: dict[str, dict[Word, NcPoly]] = {"leftmost": {}, "rightmost": {}}
        # standalone powers of one generator (R^2 and the like) are kept
        # symbolic by straighten_trace, matching by-hand diamond bookkeeping
        self._lhs_words = frozenset(
            r.lhs for r in self.rules + self.aux_rules
            if len(r.lhs) > 1 and len(set(r.lhs)) == 1
        )

    # -- element helpers ------------------------------------------------------

    def zero(self) -> NcPoly:
        return NcPoly.zero(self.alphabet, self.field)

    def unit(self) -> NcPoly:
        return NcPoly.unit(self.alphabet, self.field)

    def gen(self, name: str) -> NcPoly:
        return NcPoly.gen(self.alphabet, name, self.field)

    def word_poly(self, *names: str) -> NcPoly:
        return NcPoly.from_word(self.alphabet, self.alphabet.word(*names), field=self.field)

    def scalar(self, c) -> NcPoly:
        return NcPoly(self.alphabet, {EMPTY_WORD: c}, self.field)

    # -- reduction -------------------------------------------------------------

    def _find_redex(self, w: Word, direction: str):
        idx = self._index
        n = len(w)
        positions = range(n) if direction == "leftmost" else range(n - 1, -1, -1)
        for i in positions:
            for L in self._lengths:
                if i + L <= n:
                    r = idx[L].get(w[i : i + L])
                    if r is not None:
                        return i, L, r
        return None

    def _reduce_terms(
        self,
        terms: dict[Word, object],
        direction: str,
        frozen_lhs: bool = False,
        check_pbw: Optional[bool] = None,
        use_cache: bool = True,
    ) -> dict[Word, object]:
        if check_pbw is None:
            check_pbw = self.validate_pbw
        cache = self._nf_cache[direction] if (use_cache and not frozen_lhs) else None
        work = dict(terms)
        out: dict[Word, object] = {}
        steps = 0
        budget = self.step_budget
        while work:
            w = next(iter(work))
            c = work.pop(w)
            if not c:
                continue
            if cache is not None:
                hit = cache.get(w)
                if hit is not None:
                    for hw, hc in hit.terms.items():
                        s = out.get(hw)
                        s = hc * c if s is None else s + hc * c
                        if s:
                            out[hw] = s
                        else:
                            out.pop(hw, None)
                    continue
            if frozen_lhs and w in self._lhs_words:
                s = out.get(w)
                s = c if s is None else s + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
                continue
            hit = self._find_redex(w, direction)
            if hit is None:
                if check_pbw and not self.pbw.accepts(w):
                    raise EngineError(
                        f"{self.algebra_id}: irreducible word {self.alphabet.word_str(w)} "
                        f"is outside the normal-form set"
                    )
                s = out.get(w)
                s = c if s is None else s + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
                continue
            i, L, rule = hit
            steps += 1
            if steps > budget:
                raise NonTermination(
                    f"{self.algebra_id}: step budget exceeded while reducing "
                    f"{self.alphabet.word_str(w)}"
                )
            pre, post = w[:i], w[i + L :]
            for rw, rc in rule.rhs.terms.items():
                nw = pre + rw + post
                nc = c * rc
                s = work.get(nw)
                s = nc if s is None else s + nc
                if s:
                    work[nw] = s
                else:
                    work.pop(nw, None)
        return out

    def nf_word(self, w: Word, direction: str = "leftmost") -> NcPoly:
        cache = self._nf_cache[direction]
        hit = cache.get(w)
        if hit is not None:
            return hit
        res = NcPoly(
            self.alphabet,
            self._reduce_terms({w: self.field.one}, direction),
            self.field,
            _clean=True,
        )
        if len(w) <= CACHE_MAX_LEN and len(res.terms) <= CACHE_MAX_TERMS and len(cache) < CACHE_MAX_ENTRIES:
            cache[w] = res
        return res

    def nf(self, p: NcPoly, direction: str = "leftmost") -> NcPoly:
        out = self.zero()
        for w, c in p.terms.items():
            out = out + self.nf_word(w, direction).scale(c)
        return out

    def mul(self, *polys: NcPoly) -> NcPoly:
        """Normal form of a product of (any) elements."""
        acc = polys[0]
        for p in polys[1:]:
            acc = self.nf(acc * p)
        return self.nf(acc)

    def is_normal(self, p: NcPoly) -> bool:
        return all(self._find_redex(w, "leftmost") is None for w in p.terms)

    # -- specialisation ----------------------------------------------------------

    def specialize(self, q0, t0) -> "AlgebraSpec":
        fld = QQField(Fraction(q0), Fraction(t0))

        def conv(rule: RewriteRule) -> RewriteRule:
            rhs = NcPoly(
                self.alphabet,
                {w: fld.eval(c) for w, c in rule.rhs.terms.items()},
                fld,
            )
            return RewriteRule(rule.lhs, rhs, rule.tag, self.order)

        return AlgebraSpec(
            self.alphabet,
            [conv(r) for r in self.rules],
            self.order,
            self.pbw,
            self.q_central,
            field=fld,
            step_budget=self.step_budget,
            validate_pbw=self.validate_pbw,
            aux_rules=[conv(r) for r in self.aux_rules],
        )


CACHE_MAX_LEN = 16
CACHE_MAX_TERMS = 4000
CACHE_MAX_ENTRIES = 400_000


# ---------------------------------------------------------------------------
# auxiliary rule generation
# ---------------------------------------------------------------------------

def generate_aux_rules(spec: AlgebraSpec) -> list[RewriteRule]:
    """Commutation and cancellation rules for invertible q-central letters.

    For every misordered letter pair not already covered by a core rule,
    x*y -> q^e y*x is emitted where e comes from the q-centrality exponent
    table of whichever letter is declared q-central; cancellations x*xi -> 1
    are emitted for the declared letters' inverse pairs.
    """
    alph = spec.alphabet
    ranks = spec.order.ranks
    kappa: dict[int, tuple[int, int]] = {}
    for qc in spec.q_central:
        i = alph.index(qc.name)
        kappa[i] = qc.kappa
        j = alph.inverse_index.get(i)
        if j is not None:
            kappa[j] = (-qc.kappa[0], -qc.kappa[1])
    core_lhs = {r.lhs for r in spec.rules}
    # letters rewritten away by a length-1 rule never reach a misordered pair
    eliminated = {r.lhs[0] for r in spec.rules if len(r.lhs) == 1}
    out: list[RewriteRule] = []
    n = len(alph)
    for x in range(n):
        for y in range(n):
            if x in eliminated or y in eliminated:
                continue
            pair = (x, y)
            if pair in core_lhs:
                continue
            if ranks[x] > ranks[y]:
                dy = alph.gens[y].bidegree
                dx = alph.gens[x].bidegree
                if x in kappa:
                    e = kappa[x][0] * dy[0] + kappa[x][1] * dy[1]
                    if y in kappa:
                        e2 = -(kappa[y][0] * dx[0] + kappa[y][1] * dx[1])
                        if e2 != e:
                            raise SpecError(
                                f"inconsistent q-central exponents for "
                                f"{alph.gens[x].name}*{alph.gens[y].name}"
                            )
                elif y in kappa:
                    e = -(kappa[y][0] * dx[0] + kappa[y][1] * dx[1])
                else:
                    raise SpecError(
                        f"{alph.algebra_id}: no rule covers misordered pair "
                        f"{alph.gens[x].name}*{alph.gens[y].name}"
                    )
                rhs = NcPoly(alph, {(y, x): spec.field.q_power(e)}, spec.field)
                out.append(RewriteRule(pair, rhs, f"comm:{alph.gens[x].name}*{alph.gens[y].name}", spec.order))
            elif ranks[x] == ranks[y] and alph.inverse_index.get(x) == y and (x in kappa or y in kappa):
                rhs = NcPoly(alph, {EMPTY_WORD: spec.field.one}, spec.field)
                out.append(RewriteRule(pair, rhs, f"cancel:{alph.gens[x].name}*{alph.gens[y].name}", spec.order))
    return out


# ---------------------------------------------------------------------------
# operations: normal form, ambiguities, traces, Hilbert tables, ranks
# ---------------------------------------------------------------------------

def normal_form(spec: AlgebraSpec, p: NcPoly, direction: str = "leftmost") -> NcPoly:
    if p.alphabet is not spec.alphabet:
        raise EngineError("element does not belong to this algebra")
    return spec.nf(p, direction)


@dataclass
class AmbiguityReport:
    monomial: Word
    left_tag: str
    right_tag: str
    left_first: NcPoly
    right_first: NcPoly
    resolved: bool

    def to_json(self, spec: AlgebraSpec) -> dict:
        alph = spec.alphabet
        fld = spec.field

        def poly_json(p: NcPoly):
            return [[alph.word_str(w), fld.to_str(c)] for w, c in p.sorted_terms()]

        return {
            "algebra": spec.algebra_id,
            "monomial": alph.word_str(self.monomial),
            "rules": [self.left_tag, self.right_tag],
            "resolved": self.resolved,
            "left_first": poly_json(self.left_first),
            "right_first": poly_json(self.right_first),
        }


def _apply_rule_at(spec: AlgebraSpec, w: Word, rule: RewriteRule, i: int) -> NcPoly:
    pre, post = w[:i], w[i + len(rule.lhs):]
    terms = {pre + rw + post: rc for rw, rc in rule.rhs.terms.items()}
    return NcPoly(spec.alphabet, terms, spec.field)


def check_ambiguities(spec: AlgebraSpec) -> list[AmbiguityReport]:
    """One report per overlap or inclusion ambiguity among the core rules."""
    reports: list[AmbiguityReport] = []
    rules = spec.rules
    for r1 in rules:
        for r2 in rules:
            l1, l2 = r1.lhs, r2.lhs
            for k in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - k :] == l2[:k]:
                    mono = l1 + l2[k:]
                    left = spec.nf(_apply_rule_at(spec, mono, r1, 0))
                    right = spec.nf(_apply_rule_at(spec, mono, r2, len(l1) - k))
                    reports.append(
                        AmbiguityReport(mono, r1.tag, r2.tag, left, right, left == right)
                    )
            if r1 is not r2 and len(l2) < len(l1):
                for j in range(len(l1) - len(l2) + 1):
                    if l1[j : j + len(l2)] == l2:
                        mono = l1
                        left = spec.nf(_apply_rule_at(spec, mono, r1, 0))
                        right = spec.nf(_apply_rule_at(spec, mono, r2, j))
                        reports.append(
                            AmbiguityReport(mono, r1.tag, r2.tag, left, right, left == right)
                        )
    reports.sort(key=lambda r: (len(r.monomial), r.monomial, r.left_tag, r.right_tag))
    return reports


def straighten_trace(spec: AlgebraSpec, w: Word, first: str = "leftmost") -> NcPoly:
    """Reduce w resolving its first ambiguity in the requested direction.

    The reduction then runs to exhaustion except that a term whose whole word
    is a standalone power lhs (such as R^2) is kept symbolic.  This is the
    bookkeeping convention of a by-hand diamond computation: reordering steps
    are applied freely, while a bare power is left alone because the branches
    are compared before its expansion would be triggered.
    """
    if first not in ("leftmost", "rightmost"):
        raise ValueError("first must be 'leftmost' or 'rightmost'")
    hit = spec._find_redex(w, first)
    if hit is None:
        return NcPoly.from_word(spec.alphabet, w, field=spec.field)
    i, _, rule = hit
    started = _apply_rule_at(spec, w, rule, i)
    terms = spec._reduce_terms(dict(started.terms), "leftmost", frozen_lhs=True, check_pbw=False)
    return NcPoly(spec.alphabet, terms, spec.field, _clean=True)


@dataclass
class HilbertTable:
    algebra: str
    max_bidegree: tuple[int, int]
    dims: dict[tuple[int, int], int]

    def dim(self, M: int, N: int) -> int:
        return self.dims.get((M, N), 0)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "max": list(self.max_bidegree),
            "dims": [[m, n, d] for (m, n), d in sorted(self.dims.items())],
        }


def hilbert_table(spec: AlgebraSpec, max_bidegree: tuple[int, int]) -> HilbertTable:
    M, N = max_bidegree
    dims = {}
    for m in range(M + 1):
        for n in range(N + 1):
            cnt = 0
            for w in spec.pbw.enumerate(m, n):
                if not spec.pbw.accepts(w):
                    raise EngineError("enumerator produced a non normal-form word")
                cnt += 1
            dims[(m, n)] = cnt
    return HilbertTable(spec.algebra_id, (M, N), dims)


DEFAULT_POINTS = (
    (Fraction(2), Fraction(3)),
    (Fraction(3), Fraction(2)),
    (Fraction(5), Fraction(7)),
)


@dataclass
class RankResult:
    rank: int
    agreeing: int
    per_point: tuple[int, ...]


def rank_of_family(
    spec: AlgebraSpec,
    elems: Sequence[NcPoly],
    points: Sequence[tuple[Fraction, Fraction]] = DEFAULT_POINTS,
) -> RankResult:
    """Maximum rank of the coefficient matrix of elems over the given points."""
    if not elems:
        return RankResult(0, len(points), tuple(0 for _ in points))
    degs = set()
    for p in elems:
        if not spec.is_normal(p):
            raise EngineError("rank_of_family requires normal-form inputs")
        d = p.bidegree()
        if d is None:
            raise EngineError("rank_of_family requires homogeneous inputs")
        if d != "any":
            degs.add(d)
    if len(degs) > 1:
        raise EngineError(f"inputs span several bidegrees: {sorted(degs)}")
    for q0, t0 in points:
        if q0 in (0, 1, -1) or t0 == 0:
            raise EngineError(f"degenerate specialisation point ({q0}, {t0})")
    cols: dict[Word, int] = {}
    for p in elems:
        for w in p.terms:
            cols.setdefault(w, len(cols))
    per_point = []
    for q0, t0 in points:
        rows = []
        for p in elems:
            row = {}
            for w, c in p.terms.items():
                v = c.eval(q0, t0)
                if v:
                    row[cols[w]] = v
            rows.append(row)
        per_point.append(frac_rank(rows))
    rank = max(per_point)
    agreeing = sum(1 for r in per_point if r == rank)
    return RankResult(rank, agreeing, tuple(per_point))


def divide_left(spec: AlgebraSpec, factor: NcPoly, p: NcPoly, dim_guard: int = 600):
    """Exact division: the x with normal_form(factor * x) = p, or None.

    Works per homogeneous component over the positive-cone PBW basis; used to
    strip invertible determinant factors from localised elements.  Returns
    None when no quotient exists or a component exceeds the size guard.
    """
    from .linalg import solve_dense

    fdeg = factor.bidegree()
    if fdeg in (None, "any"):
        return None
    if p.is_zero():
        return spec.zero()
    out = spec.zero()
    for (m, n), part in p.homogeneous_parts().items():
        qm, qn = m - fdeg[0], n - fdeg[1]
        if qm < 0 or qn < 0:
            return None
        cols = list(spec.pbw.enumerate(qm, qn))
        if not cols or len(cols) > dim_guard:
            return None
        images = [spec.nf(factor * NcPoly.from_word(spec.alphabet, w, field=spec.field))
                  for w in cols]
        rows_words = sorted(set().union(*[set(im.terms) for im in images], set(part.terms)))
        zero = spec.field.from_int(0)
        rows = [[im.terms.get(w, zero) for im in images] for w in rows_words]
        rhs = [part.terms.get(w, zero) for w in rows_words]
        status, sol = solve_dense(rows, rhs, zero, spec.field.from_int(1))
        if status == "none" or sol is None:
            return None
        comp = spec.zero()
        for w, lam in zip(cols, sol):
            if lam:
                comp = comp + NcPoly.from_word(spec.alphabet, w, lam, spec.field)
        if spec.nf(factor * comp) != part:
            return None
        out = out + comp
    return out


def q_central_residual(spec: AlgebraSpec, name: str, h: NcPoly) -> NcPoly:
    """normal_form(g*h - q^<kappa,(M,N)> h*g) for a declared q-central g."""
    for qc in spec.q_central:
        if qc.name == name:
            kap = qc.kappa
            break
    else:
        raise EngineError(f"{name} is not declared q-central")
    d = h.bidegree()
    if d in (None, "any"):
        raise EngineError("q-centrality check needs a homogeneous element")
    e = kap[0] * d[0] + kap[1] * d[1]
    g = spec.gen(name)
    return spec.nf(g * h - (h * g).scale(spec.field.q_power(e)))
