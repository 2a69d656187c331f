"""Exact arithmetic in the field of rational functions in q and t.

Scalars live in Frac(Z[q,t]).  A value is a reduced fraction of two integer
polynomials in the commuting variables q and t; Laurent behaviour (negative
powers of q or t) is carried by a monomial denominator.  The canonical form
fixes the sign so that the denominator's leading coefficient under graded
lex with q < t is positive, which makes equality a dictionary comparison.

Polynomials are sparse maps (e_q, e_t) -> int with nonnegative exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd

Mono = tuple[int, int]
Poly = dict[Mono, int]

P_ZERO: Poly = {}
P_ONE: Poly = {(0, 0): 1}


class CoeffError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# raw polynomial arithmetic
# ---------------------------------------------------------------------------

def p_add(f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for m, c in g.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def p_neg(f: Poly) -> Poly:
    return {m: -c for m, c in f.items()}


def p_sub(f: Poly, g: Poly) -> Poly:
    return p_add(f, p_neg(g))


def p_mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return {}
    if len(f) > len(g):
        f, g = g, f
    out: Poly = {}
    for (a, b), c in f.items():
        for (x, y), d in g.items():
            m = (a + x, b + y)
            s = out.get(m, 0) + c * d
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def p_scale(f: Poly, k: int) -> Poly:
    if k == 0:
        return {}
    return {m: c * k for m, c in f.items()}


def p_pow(f: Poly, n: int) -> Poly:
    out = dict(P_ONE)
    for _ in range(n):
        out = p_mul(out, f)
    return out


def _lead_mono(f: Poly) -> Mono:
    # graded lex with q < t: compare (total degree, t-exponent)
    return max(f, key=lambda m: (m[0] + m[1], m[1]))


def p_lead_coeff(f: Poly) -> int:
    return f[_lead_mono(f)]


def _int_content(f: Poly) -> int:
    g = 0
    for c in f.values():
        g = _igcd(g, abs(c))
        if g == 1:
            break
    return g


def _mono_content(f: Poly) -> Mono:
    eq = min(m[0] for m in f)
    et = min(m[1] for m in f)
    return (eq, et)


def _mono_shift(f: Poly, eq: int, et: int) -> Poly:
    if eq == 0 and et == 0:
        return dict(f)
    return {(a + eq, b + et): c for (a, b), c in f.items()}


def _is_mono(f: Poly) -> bool:
    return len(f) == 1


# dense recursive view: a poly in t whose coefficients are dicts {e_q: int}

def _to_rec(f: Poly) -> dict[int, dict[int, int]]:
    out: dict[int, dict[int, int]] = {}
    for (a, b), c in f.items():
        out.setdefault(b, {})[a] = c
    return out


def _from_rec(r: dict[int, dict[int, int]]) -> Poly:
    out: Poly = {}
    for b, qs in r.items():
        for a, c in qs.items():
            if c:
                out[(a, b)] = c
    return out


def _u_gcd(f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
    """gcd in Z[q] by the primitive polynomial remainder sequence."""
    def content(h):
        c = 0
        for v in h.values():
            c = _igcd(c, abs(v))
        return c

    def primitive(h):
        c = content(h)
        return {k: v // c for k, v in h.items()} if c > 1 else dict(h)

    def degree(h):
        return max(h) if h else -1

    def shift_mul(h, s, k):
        return {e + s: v * k for e, v in h.items()}

    def sub(x, y):
        out = dict(x)
        for e, v in y.items():
            s = out.get(e, 0) - v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return out

    if not f:
        return dict(g)
    if not g:
        return dict(f)
    cf, cg = content(f), content(g)
    a, b = primitive(f), primitive(g)
    while b:
        # pseudo-remainder of a by b
        da, db = degree(a), degree(b)
        if da < db:
            a, b = b, a
            continue
        lb = b[degree(b)]
        r = dict(a)
        while r and degree(r) >= db:
            dr = degree(r)
            lr = r[dr]
            r = sub(shift_mul(r, 0, lb), shift_mul(b, dr - db, lr))
        a, b = b, primitive(r) if r else {}
    c = _igcd(cf, cg)
    out = {e: v * c for e, v in a.items()} if c != 1 else a
    if out[degree(out)] < 0:
        out = {e: -v for e, v in out.items()}
    return out


def _rec_content(r: dict[int, dict[int, int]]) -> dict[int, int]:
    g: dict[int, int] = {}
    for qs in r.values():
        g = _u_gcd(g, qs)
        if list(g) == [0] and abs(g.get(0, 0)) == 1:
            break
    return g


def _u_mul(f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for a, c in f.items():
        for b, d in g.items():
            s = out.get(a + b, 0) + c * d
            if s:
                out[a + b] = s
            else:
                del out[a + b]
    return out


def _u_exact_div(f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
    """Exact division in Z[q]; raises if not divisible."""
    if not f:
        return {}
    out: dict[int, int] = {}
    r = dict(f)
    dg = max(g)
    lg = g[dg]
    while r:
        dr = max(r)
        if dr < dg or r[dr] % lg:
            raise CoeffError("inexact univariate division")
        k = r[dr] // lg
        out[dr - dg] = k
        for e, v in g.items():
            s = r.get(e + dr - dg, 0) - v * k
            if s:
                r[e + dr - dg] = s
            else:
                r.pop(e + dr - dg, None)
    return out


def p_exact_div(f: Poly, g: Poly) -> Poly:
    """Exact division f / g in Z[q,t]; raises CoeffError if not divisible."""
    if not f:
        return {}
    if _is_mono(g):
        (eq, et), c = next(iter(g.items()))
        out: Poly = {}
        for (a, b), v in f.items():
            if a < eq or b < et or v % c:
                raise CoeffError("inexact division")
            out[(a - eq, b - et)] = v // c
        return out
    rf, rg = _to_rec(f), _to_rec(g)
    dg = max(rg)
    lg = rg[dg]
    out: dict[int, dict[int, int]] = {}
    while rf:
        df = max(rf)
        if df < dg:
            raise CoeffError("inexact division")
        piece = _u_exact_div(rf[df], lg)
        out[df - dg] = piece
        for b, qs in rg.items():
            tgt = rf.setdefault(b + df - dg, {})
            for a, c in _u_mul(qs, piece).items():
                s = tgt.get(a, 0) - c
                if s:
                    tgt[a] = s
                else:
                    tgt.pop(a, None)
            if not tgt:
                del rf[b + df - dg]
    return _from_rec(out)


def p_gcd(f: Poly, g: Poly) -> Poly:
    """gcd in Z[q,t], positive leading coefficient."""
    if not f:
        return dict(g)
    if not g:
        return dict(f)
    mf, mg = _mono_content(f), _mono_content(g)
    mono = (min(mf[0], mg[0]), min(mf[1], mg[1]))
    f0 = _mono_shift(f, -mf[0], -mf[1])
    g0 = _mono_shift(g, -mg[0], -mg[1])
    cf, cg = _int_content(f0), _int_content(g0)
    c = _igcd(cf, cg)
    if _is_mono(f0) or _is_mono(g0):
        return _mono_shift({(0, 0): c}, mono[0], mono[1])
    # primitive PRS in t over Z[q]
    rf, rg = _to_rec({m: v // cf for m, v in f0.items()}), _to_rec({m: v // cg for m, v in g0.items()})
    contf, contg = _rec_content(rf), _rec_content(rg)
    cont = _u_gcd(contf, contg)

    def rec_primitive(r, ct):
        if list(ct) == [0] and ct.get(0) == 1:
            return r
        return {b: _u_exact_div(qs, ct) for b, qs in r.items()}

    a = rec_primitive(rf, contf)
    b = rec_primitive(rg, contg)

    def rec_degree(r):
        return max(r) if r else -1

    while b:
        da, db = rec_degree(a), rec_degree(b)
        if da < db:
            a, b = b, a
            continue
        lb = b[rec_degree(b)]
        r = a
        while r and rec_degree(r) >= db:
            dr = rec_degree(r)
            lr = r[dr]
            newr: dict[int, dict[int, int]] = {}
            for bb, qs in r.items():
                newr[bb] = _u_mul(qs, lb)
            for bb, qs in b.items():
                tgt = newr.setdefault(bb + dr - db, {})
                for e, v in _u_mul(qs, lr).items():
                    s = tgt.get(e, 0) - v
                    if s:
                        tgt[e] = s
                    else:
                        tgt.pop(e, None)
            r = {bb: qs for bb, qs in newr.items() if qs}
        cr = _rec_content(r) if r else {}
        a, b = b, (rec_primitive(r, cr) if r else {})
    prim = _from_rec(a)
    prim_scaled = p_mul(prim, _from_rec({0: cont}))
    out = _mono_shift(p_scale(prim_scaled, c), mono[0], mono[1])
    if p_lead_coeff(out) < 0:
        out = p_neg(out)
    return out


def p_eval(f: Poly, q0: Fraction, t0: Fraction) -> Fraction:
    acc = Fraction(0)
    for (a, b), c in f.items():
        acc += c * q0**a * t0**b
    return acc


def p_str(f: Poly) -> str:
    if not f:
        return "0"
    parts = []
    for m in sorted(f, key=lambda m: (-(m[0] + m[1]), -m[1])):
        c = f[m]
        eq, et = m
        body = "*".join(
            s for s in (
                ("q" if eq == 1 else f"q^{eq}" if eq else ""),
                ("t" if et == 1 else f"t^{et}" if et else ""),
            ) if s
        )
        if not body:
            term = str(abs(c))
        elif abs(c) == 1:
            term = body
        else:
            term = f"{abs(c)}*{body}"
        parts.append(("- " if c < 0 else "+ ") + term)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---------------------------------------------------------------------------
# the fraction field
# ---------------------------------------------------------------------------

class RatCoeff:
    """A reduced fraction num/den of integer polynomials in q, t."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, _canonical: bool = False):
        if _canonical:
            self.num = num
            self.den = den
            return
        if not den:
            raise CoeffError("zero denominator")
        if not num:
            self.num, self.den = {}, dict(P_ONE)
            return
        g = p_gcd(num, den)
        if g != P_ONE:
            num = p_exact_div(num, g)
            den = p_exact_div(den, g)
        if p_lead_coeff(den) < 0:
            num, den = p_neg(num), p_neg(den)
        self.num, self.den = num, den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "RatCoeff":
        if n == 0:
            return RC_ZERO
        if n == 1:
            return RC_ONE
        return RatCoeff({(0, 0): n}, dict(P_ONE), _canonical=True)

    @staticmethod
    def from_fraction(x: Fraction) -> "RatCoeff":
        return RatCoeff({(0, 0): x.numerator}, {(0, 0): x.denominator})

    @staticmethod
    def monomial(c: int, eq: int, et: int) -> "RatCoeff":
        """c * q^eq * t^et with exponents of either sign."""
        if c == 0:
            return RC_ZERO
        nq, nt = max(eq, 0), max(et, 0)
        dq, dt = max(-eq, 0), max(-et, 0)
        return RatCoeff({(nq, nt): c}, {(dq, dt): 1}, _canonical=True)

    # -- predicates ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == P_ONE and self.den == P_ONE

    def __eq__(self, other) -> bool:
        return isinstance(other, RatCoeff) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RatCoeff") -> "RatCoeff":
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatCoeff(p_add(self.num, other.num), self.den)
        return RatCoeff(
            p_add(p_mul(self.num, other.den), p_mul(other.num, self.den)),
            p_mul(self.den, other.den),
        )

    def __neg__(self) -> "RatCoeff":
        return RatCoeff(p_neg(self.num), self.den, _canonical=True)

    def __sub__(self, other: "RatCoeff") -> "RatCoeff":
        return self + (-other)

    def __mul__(self, other: "RatCoeff") -> "RatCoeff":
        if not self.num or not other.num:
            return RC_ZERO
        if self.is_one():
            return other
        if other.is_one():
            return self
        return RatCoeff(p_mul(self.num, other.num), p_mul(self.den, other.den))

    def inverse(self) -> "RatCoeff":
        if not self.num:
            raise CoeffError("division by zero")
        return RatCoeff(dict(self.den), dict(self.num))

    def __truediv__(self, other: "RatCoeff") -> "RatCoeff":
        if not other.num:
            raise CoeffError("division by zero")
        return self * other.inverse()

    def __pow__(self, n: int) -> "RatCoeff":
        if n < 0:
            return self.inverse() ** (-n)
        out = RC_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- evaluation and profiling --------------------------------------------

    def eval(self, q0: Fraction, t0: Fraction) -> Fraction:
        d = p_eval(self.den, q0, t0)
        if d == 0:
            prof = self.denom_profile()
            if prof.q_power and q0 == 0:
                factor = "q"
            elif prof.t_power and t0 == 0:
                factor = "t"
            elif prof.t2plus1_power and t0 * t0 + 1 == 0:
                factor = "t^2 + 1"
            else:
                factor = p_str(prof.residual.num)
            raise CoeffError(
                f"denominator factor {factor} vanishes at (q, t) = ({q0}, {t0})"
            )
        return p_eval(self.num, q0, t0) / d

    def denom_profile(self) -> "DenomProfile":
        den = self.den
        eq, et = _mono_content(den) if den else (0, 0)
        rest = _mono_shift(den, -eq, -et)
        k = 0
        t2p1: Poly = {(0, 0): 1, (0, 2): 1}
        while True:
            try:
                nxt = p_exact_div(rest, t2p1)
            except CoeffError:
                break
            rest = nxt
            k += 1
        return DenomProfile(eq, et, k, RatCoeff(rest, dict(P_ONE)))

    def __str__(self) -> str:
        if not self.num:
            return "0"
        ns = p_str(self.num)
        if self.den == P_ONE:
            return ns
        ds = p_str(self.den)
        if len(self.num) > 1:
            ns = f"({ns})"
        # leave the denominator bare only for a single power of one variable
        ((eq, et), dc) = next(iter(self.den.items()))
        if len(self.den) > 1 or dc != 1 or (eq and et):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"RatCoeff({self})"


RC_ZERO = RatCoeff({}, dict(P_ONE), _canonical=True)
RC_ONE = RatCoeff(dict(P_ONE), dict(P_ONE), _canonical=True)
RC_Q = RatCoeff.monomial(1, 1, 0)
RC_T = RatCoeff.monomial(1, 0, 1)


@dataclass(frozen=True)
class DenomProfile:
    """Factorisation of a canonical denominator as q^a t^b (t^2+1)^c * residual."""

    q_power: int
    t_power: int
    t2plus1_power: int
    residual: RatCoeff

    @property
    def clean(self) -> bool:
        return self.residual.is_one()


def coeff_arith(a: RatCoeff, b: RatCoeff, op: str) -> RatCoeff:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# coefficient fields for the rewriting engine
# ---------------------------------------------------------------------------

class RatField:
    """Generic coefficients: the fraction field of Z[q,t]."""

    name = "ratfunc"
    zero = RC_ZERO
    one = RC_ONE

    @staticmethod
    def q_power(k: int) -> RatCoeff:
        return RatCoeff.monomial(1, k, 0)

    @staticmethod
    def t_power(k: int) -> RatCoeff:
        return RatCoeff.monomial(1, 0, k)

    @staticmethod
    def from_int(n: int) -> RatCoeff:
        return RatCoeff.from_int(n)

    @staticmethod
    def invert(c: RatCoeff) -> RatCoeff:
        return c.inverse()

    @staticmethod
    def to_str(c: RatCoeff) -> str:
        return str(c)


class QQField:
    """Coefficients specialised at a rational point (q0, t0)."""

    name = "rational"

    def __init__(self, q0: Fraction, t0: Fraction):
        self.q0 = Fraction(q0)
        self.t0 = Fraction(t0)
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def q_power(self, k: int) -> Fraction:
        return self.q0**k

    def t_power(self, k: int) -> Fraction:
        return self.t0**k

    @staticmethod
    def from_int(n: int) -> Fraction:
        return Fraction(n)

    @staticmethod
    def invert(c: Fraction) -> Fraction:
        return 1 / c

    @staticmethod
    def to_str(c: Fraction) -> str:
        return str(c)

    def eval(self, c: RatCoeff) -> Fraction:
        return c.eval(self.q0, self.t0)


RAT = RatField()
