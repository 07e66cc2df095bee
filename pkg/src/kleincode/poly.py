"""Sparse multivariate polynomials, monomial orders, and division.

Monomials are plain tuples of non-negative exponents (index 0 = X,
index 1 = Y).  Polynomials are term maps from monomial to a nonzero
coefficient; the coefficient domain is pluggable so the same machinery
runs over a concrete GF(2^m) (enc integers) and over the parametric
ring GF(8)[a1..at] used by the case-split engine.  Both domains have
characteristic 2, so subtraction is addition throughout.

Division comes in two modes:

* ``full``  -- the textbook multivariate division: every monomial of the
  remainder is irreducible by every divisor head.
* ``head``  -- repeatedly cancels the leading monomial only, stopping as
  soon as the head is irreducible; lower terms may remain reducible.

Both modes return quotients such that s = sum(q_i d_i) + r exactly.
"""

from __future__ import annotations

from .gf import FieldSpec

EXPONENT_CAP = 1 << 20

HEAD = "head"
FULL = "full"


class ArityMismatch(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class DomainMismatch(TypeError):
    pass


class NonInvertibleLeadingCoefficient(ValueError):
    pass


class ExponentCapExceeded(OverflowError):
    pass


class ParametricCoefficients(TypeError):
    """Operation needs concrete field coefficients."""


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial helpers

def mono_mul(u: tuple, v: tuple) -> tuple:
    if len(u) == 2:
        a, b = u[0] + v[0], u[1] + v[1]
        if a > EXPONENT_CAP or b > EXPONENT_CAP:
            raise ExponentCapExceeded(f"exponent cap {EXPONENT_CAP} exceeded")
        return (a, b)
    w = tuple(a + b for a, b in zip(u, v))
    if any(e > EXPONENT_CAP for e in w):
        raise ExponentCapExceeded(f"exponent cap {EXPONENT_CAP} exceeded: {w}")
    return w


def mono_divides(u: tuple, v: tuple) -> bool:
    if len(u) == 2:
        return u[0] <= v[0] and u[1] <= v[1]
    return all(a <= b for a, b in zip(u, v))


def mono_div(v: tuple, u: tuple) -> tuple:
    if len(u) == 2:
        return (v[0] - u[0], v[1] - u[1])
    return tuple(b - a for a, b in zip(u, v))


def mono_lcm(u: tuple, v: tuple) -> tuple:
    if len(u) == 2:
        return (u[0] if u[0] > v[0] else v[0], u[1] if u[1] > v[1] else v[1])
    return tuple(max(a, b) for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    """Total order on exponent tuples.

    kind "lex": plain lexicographic, variable 0 most significant.
    kind "weighted_deg_lex": compare the weighted degree first; ties go to
    the monomial with the larger exponent of ``tiebreak_var`` (the full
    exponent tuple settles anything left, which for two variables never
    happens).
    """

    __slots__ = ("kind", "weights", "tiebreak_var")

    def __init__(self, kind: str, weights=None, tiebreak_var: int | None = None):
        if kind not in ("lex", "weighted_deg_lex"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "weighted_deg_lex":
            if not weights or any(w <= 0 for w in weights):
                raise ValueError("weighted order needs positive weights")
            if tiebreak_var is None or not 0 <= tiebreak_var < len(weights):
                raise ValueError("tiebreak_var out of range")
            weights = tuple(weights)
        self.kind = kind
        self.weights = weights
        self.tiebreak_var = tiebreak_var

    def key(self, mono: tuple):
        if self.kind == "lex":
            return mono
        w = 0
        for wi, ei in zip(self.weights, mono):
            w += wi * ei
        return (w, mono[self.tiebreak_var], mono)

    def weight(self, mono: tuple) -> int:
        if self.kind != "weighted_deg_lex":
            raise ValueError("weight only defined for weighted orders")
        return sum(w * e for w, e in zip(self.weights, mono))

    def compare(self, u: tuple, v: tuple) -> int:
        if len(u) != len(v):
            raise ArityMismatch(f"arity {len(u)} vs {len(v)}")
        ku, kv = self.key(u), self.key(v)
        return (ku > kv) - (ku < kv)

    def lt(self, u: tuple, v: tuple) -> bool:
        return self.compare(u, v) < 0

    def __repr__(self):
        if self.kind == "lex":
            return "MonomialOrder(lex)"
        return f"MonomialOrder(weighted {self.weights}, tiebreak {self.tiebreak_var})"


def order_compare(order: MonomialOrder, u: tuple, v: tuple) -> int:
    """-1, 0, +1 comparison of two monomials under the order."""
    return order.compare(u, v)


def klein_order() -> MonomialOrder:
    """The weighted-degree-lex order with weights (2, 3), larger Y wins ties."""
    return MonomialOrder("weighted_deg_lex", (2, 3), 1)


# ---------------------------------------------------------------------------
# coefficient domains

class FieldDomain:
    """Concrete GF(2^m) coefficients as enc integers."""

    __slots__ = ("spec",)
    parametric = False

    def __init__(self, spec: FieldSpec):
        self.spec = spec

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def is_zero(self, c) -> bool:
        return c == 0

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        return self.spec.mul(a, b)

    def inv(self, a):
        if a == 0:
            raise NonInvertibleLeadingCoefficient("zero leading coefficient")
        return self.spec.inv(a)

    def from_enc(self, n: int):
        return self.spec.check(n)

    def compatible(self, other) -> bool:
        return isinstance(other, FieldDomain) and other.spec.q == self.spec.q \
            and other.spec.modulus_bits == self.spec.modulus_bits


class Polynomial:
    __slots__ = ("domain", "arity", "terms")

    def __init__(self, domain, arity: int, terms=None, _normalized=False):
        self.domain = domain
        self.arity = arity
        if terms is None:
            self.terms = {}
        elif _normalized:
            self.terms = terms
        else:
            is_zero = domain.is_zero
            self.terms = {m: c for m, c in terms.items() if not is_zero(c)}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, domain, arity):
        return cls(domain, arity, {}, _normalized=True)

    @classmethod
    def const(cls, domain, arity, c):
        if domain.is_zero(c):
            return cls.zero(domain, arity)
        return cls(domain, arity, {(0,) * arity: c}, _normalized=True)

    @classmethod
    def monomial(cls, domain, arity, mono, c=None):
        if len(mono) != arity:
            raise ArityMismatch(f"monomial {mono} in arity {arity}")
        if c is None:
            c = domain.one
        return cls(domain, arity, {tuple(mono): c})

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coef(self, mono: tuple):
        return self.terms.get(tuple(mono), self.domain.zero)

    def support(self):
        return set(self.terms)

    def _check_other(self, other: "Polynomial"):
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
        if self.domain is not other.domain and not self.domain.compatible(other.domain):
            raise DomainMismatch("mixed coefficient domains")

    def add(self, other: "Polynomial") -> "Polynomial":
        self._check_other(other)
        dom = self.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = dom.add(out.get(m, dom.zero), c)
            if dom.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial(dom, self.arity, out, _normalized=True)

    def mul(self, other: "Polynomial") -> "Polynomial":
        self._check_other(other)
        dom = self.domain
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = dom.add(out.get(m, dom.zero), dom.mul(c1, c2))
                if dom.is_zero(v):
                    out.pop(m, None)
                else:
                    out[m] = v
        return Polynomial(dom, self.arity, out, _normalized=True)

    def scale(self, c) -> "Polynomial":
        dom = self.domain
        if dom.is_zero(c):
            return Polynomial.zero(dom, self.arity)
        out = {}
        for m, v in self.terms.items():
            cv = dom.mul(c, v)
            if not dom.is_zero(cv):
                out[m] = cv
        return Polynomial(dom, self.arity, out, _normalized=True)

    def mul_mono(self, mono: tuple, c=None) -> "Polynomial":
        dom = self.domain
        if c is None:
            c = dom.one
        out = {}
        for m, v in self.terms.items():
            cv = dom.mul(c, v)
            if not dom.is_zero(cv):
                out[mono_mul(m, mono)] = cv
        return Polynomial(dom, self.arity, out, _normalized=True)

    def leading_term(self, order: MonomialOrder):
        if not self.terms:
            raise ZeroPolynomial("leading term of 0")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, c = self.leading_term(order)
        if self.domain.is_zero(self.domain.add(c, self.domain.one)):
            return self
        return self.scale(self.domain.inv(c))

    def eval(self, point: tuple, spec: FieldSpec = None):
        """Evaluate at a point of the field; 0^0 = 1."""
        if getattr(self.domain, "parametric", False):
            raise ParametricCoefficients("eval needs concrete coefficients")
        if spec is None:
            spec = self.domain.spec
        if len(point) != self.arity:
            raise ArityMismatch(f"point {point} in arity {self.arity}")
        acc = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = spec.mul(v, spec.pow(x, e))
                    if v == 0:
                        break
            acc ^= v
        return acc

    def map_coeffs(self, fn, domain=None) -> "Polynomial":
        dom = domain or self.domain
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not dom.is_zero(v):
                out[m] = v
        return Polynomial(dom, self.arity, out, _normalized=True)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.arity == other.arity \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({format_poly(self)})"


def poly_arith(op: str, p: Polynomial, q) -> Polynomial:
    """Dispatch add/mul/scale on polynomials."""
    if op == "add":
        return p.add(q)
    if op == "mul":
        return p.mul(q)
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown op {op!r}")


def leading_term(p: Polynomial, order: MonomialOrder):
    return p.leading_term(order)


# ---------------------------------------------------------------------------
# division

def divide(s: Polynomial, divisors, order: MonomialOrder, mode: str = FULL):
    """Divide s by an ordered divisor list; returns (quotients, remainder).

    Divisors are tried in list order at each step.  The identity
    s = sum(quotients[i] * divisors[i]) + r holds exactly in both modes.
    """
    if mode not in (HEAD, FULL):
        raise ValueError(f"unknown mode {mode!r}")
    dom = s.domain
    arity = s.arity
    leads = []
    for d in divisors:
        if d.is_zero():
            raise ZeroPolynomial("zero divisor")
        lm, lc = d.leading_term(order)
        leads.append((lm, dom.inv(lc) if not _is_one(dom, lc) else None))
    if arity == 2 and order.kind == "weighted_deg_lex":
        if getattr(dom, "parametric", False):
            return _divide_packed2_param(s, divisors, order, mode, leads)
        return _divide_packed2(s, divisors, order, mode, leads)
    quots = [dict() for _ in divisors]
    p = dict(s.terms)
    rem: dict = {}
    add, mul, is_zero = dom.add, dom.mul, dom.is_zero
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, d in enumerate(divisors):
            dlm, dinv = leads[i]
            if mono_divides(dlm, m):
                t = mono_div(m, dlm)
                qc = c if dinv is None else mul(c, dinv)
                qv = add(quots[i].get(t, dom.zero), qc)
                if is_zero(qv):
                    quots[i].pop(t, None)
                else:
                    quots[i][t] = qv
                for dm, dc in d.terms.items():
                    kmono = mono_mul(t, dm)
                    v = add(p.get(kmono, dom.zero), mul(qc, dc))
                    if is_zero(v):
                        p.pop(kmono, None)
                    else:
                        p[kmono] = v
                break
        else:
            if mode == HEAD:
                rem.update(p)
                p = {}
            else:
                rem[m] = c
                del p[m]
    qpolys = [Polynomial(dom, arity, q, _normalized=True) for q in quots]
    return qpolys, Polynomial(dom, arity, rem, _normalized=True)


def _is_one(dom, c) -> bool:
    return dom.is_zero(dom.add(c, dom.one))


# Packed fast path for concrete bivariate polynomials under weighted orders.
# A monomial maps to the integer (weight << 24 | tiebreak exponent), which is
# exactly the order key and is linear in the exponents, so monomial
# multiplication is integer addition and the next reduction target is a raw
# int max over the dict keys.  Semantics match the generic loop exactly.

_PB = 24
_PM = (1 << _PB) - 1


class Packed2:
    """Key-indexed view of bivariate monomials for one weighted order."""

    __slots__ = ("w0", "w1", "tb", "wt_tb", "wt_other")

    def __init__(self, order: MonomialOrder):
        self.w0, self.w1 = order.weights
        self.tb = order.tiebreak_var
        self.wt_tb = self.w1 if self.tb == 1 else self.w0
        self.wt_other = self.w0 if self.tb == 1 else self.w1

    def key(self, m: tuple) -> int:
        return ((self.w0 * m[0] + self.w1 * m[1]) << _PB) | m[self.tb]

    def decode(self, k: int) -> tuple:
        e = k & _PM
        other = ((k >> _PB) - self.wt_tb * e) // self.wt_other
        return (other, e) if self.tb == 1 else (e, other)

    def to_dict(self, p: Polynomial) -> dict:
        key = self.key
        return {key(m): c for m, c in p.terms.items()}

    def from_dict(self, d: dict, domain, arity=2) -> Polynomial:
        decode = self.decode
        return Polynomial(domain, arity, {decode(k): c for k, c in d.items()},
                          _normalized=True)


def _divide_packed2(s: Polynomial, divisors, order, mode, leads):
    dom = s.domain
    mul = dom.mul
    pk = Packed2(order)
    prepared = []
    for d, (dlm, dinv) in zip(divisors, leads):
        items = [(pk.key(m), c) for m, c in d.terms.items()]
        inv_enc = None if dinv is None else dinv
        prepared.append((dlm[0], dlm[1], pk.key(dlm), inv_enc, items))
    p = pk.to_dict(s)
    quots = [dict() for _ in divisors]
    rem: dict = {}
    decode = pk.decode
    while p:
        mk = max(p)
        c = p[mk]
        ma, mb = decode(mk)
        for i, (da, db, dk, dinv, items) in enumerate(prepared):
            if da <= ma and db <= mb:
                tk = mk - dk
                qc = c if dinv is None else mul(c, dinv)
                qd = quots[i]
                qv = qd.get(tk, 0) ^ qc
                if qv:
                    qd[tk] = qv
                else:
                    qd.pop(tk, None)
                for dmk, dc in items:
                    nk = tk + dmk
                    v = p.get(nk, 0) ^ mul(qc, dc)
                    if v:
                        p[nk] = v
                    else:
                        p.pop(nk, None)
                break
        else:
            if mode == HEAD:
                rem.update(p)
                p = {}
            else:
                rem[mk] = c
                del p[mk]
    qpolys = [pk.from_dict(qd, dom, s.arity) for qd in quots]
    return qpolys, pk.from_dict(rem, dom, s.arity)


def _divide_packed2_param(s: Polynomial, divisors, order, mode, leads):
    """The packed loop with domain-generic coefficient operations."""
    dom = s.domain
    add, mul, is_zero = dom.add, dom.mul, dom.is_zero
    pk = Packed2(order)
    prepared = []
    for d, (dlm, dinv) in zip(divisors, leads):
        items = [(pk.key(m), c) for m, c in d.terms.items()]
        prepared.append((dlm[0], dlm[1], pk.key(dlm), dinv, items))
    p = pk.to_dict(s)
    quots = [dict() for _ in divisors]
    rem: dict = {}
    decode = pk.decode
    zero = dom.zero
    while p:
        mk = max(p)
        c = p[mk]
        ma, mb = decode(mk)
        for i, (da, db, dk, dinv, items) in enumerate(prepared):
            if da <= ma and db <= mb:
                tk = mk - dk
                qc = c if dinv is None else mul(c, dinv)
                qd = quots[i]
                qv = add(qd.get(tk, zero), qc)
                if is_zero(qv):
                    qd.pop(tk, None)
                else:
                    qd[tk] = qv
                for dmk, dc in items:
                    nk = tk + dmk
                    v = add(p.get(nk, zero), mul(qc, dc))
                    if is_zero(v):
                        p.pop(nk, None)
                    else:
                        p[nk] = v
                break
        else:
            if mode == HEAD:
                rem.update(p)
                p = {}
            else:
                rem[mk] = c
                del p[mk]
    qpolys = [pk.from_dict(qd, dom, s.arity) for qd in quots]
    return qpolys, pk.from_dict(rem, dom, s.arity)


# ---------------------------------------------------------------------------
# text grammar
#
# terms joined by '+'; a term is [coef*]X^a*Y^b with '^1' and '*' elidable.
# Concrete coefficients are enc integers ("5*X^2*Y"); parametric ones use
# a1..at, with parentheses around sums: "(a1^3+a2)*X^3".  Whitespace is
# insignificant.  Printing round-trips parsing bit-exactly.

import re

_TOKEN = re.compile(r"\(|\)|\+|\*|\^|[0-9]+|a[0-9]+|[XY]")


def _tokenize(text: str):
    stripped = re.sub(r"\s+", "", text)
    tokens = []
    pos = 0
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            raise ParseError(f"bad character at {stripped[pos:pos+8]!r}")
        tokens.append(m.group())
        pos = m.end()
    return tokens


_VAR_INDEX = {"X": 0, "Y": 1}


class _Parser:
    def __init__(self, tokens, domain, arity, ring):
        self.toks = tokens
        self.i = 0
        self.domain = domain
        self.arity = arity
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return t

    def expect(self, tok):
        t = self.take()
        if t != tok:
            raise ParseError(f"expected {tok!r}, got {t!r}")

    def parse_poly(self) -> Polynomial:
        acc = Polynomial.zero(self.domain, self.arity)
        while True:
            acc = acc.add(self.parse_term())
            if self.peek() == "+":
                self.take()
                continue
            break
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return acc

    def parse_term(self) -> Polynomial:
        dom = self.domain
        coef = dom.one
        exps = [0] * self.arity
        first = True
        while True:
            tok = self.peek()
            if tok is None or tok in ("+", ")"):
                if first:
                    raise ParseError("empty term")
                break
            if not first:
                self.expect("*")
                tok = self.peek()
            first = False
            coef, exps = self.parse_factor(coef, exps)
        mono = tuple(exps)
        return Polynomial(dom, self.arity, {mono: coef})

    def parse_factor(self, coef, exps):
        dom = self.domain
        tok = self.take()
        if tok == "(":
            if self.ring is None:
                raise ParseError("parenthesized coefficients need a parametric ring")
            val = self.parse_param_sum()
            self.expect(")")
            coef = dom.mul(coef, val)
            return coef, exps
        if tok in _VAR_INDEX:
            idx = _VAR_INDEX[tok]
            if idx >= self.arity:
                raise ArityMismatch(f"variable {tok} outside arity {self.arity}")
            e = self.maybe_exponent()
            exps = list(exps)
            exps[idx] += e
            return coef, exps
        if tok.startswith("a") and len(tok) > 1:
            if self.ring is None:
                raise ParseError(f"parameter {tok} in a concrete polynomial")
            idx = int(tok[1:]) - 1
            e = self.maybe_exponent()
            coef = dom.mul(coef, self.ring.var_pow(idx, e))
            return coef, exps
        if tok.isdigit():
            coef = dom.mul(coef, dom.from_enc(int(tok)))
            return coef, exps
        raise ParseError(f"unexpected token {tok!r}")

    def maybe_exponent(self) -> int:
        if self.peek() == "^":
            self.take()
            t = self.take()
            if not t.isdigit():
                raise ParseError(f"exponent expected, got {t!r}")
            return int(t)
        return 1

    def parse_param_sum(self):
        dom = self.domain
        acc = dom.zero
        while True:
            coef = dom.one
            first = True
            while True:
                tok = self.peek()
                if tok is None or tok in ("+", ")"):
                    if first:
                        raise ParseError("empty parametric term")
                    break
                if not first:
                    self.expect("*")
                first = False
                tok = self.take()
                if tok.startswith("a") and len(tok) > 1:
                    idx = int(tok[1:]) - 1
                    coef = dom.mul(coef, self.ring.var_pow(idx, self.maybe_exponent()))
                elif tok.isdigit():
                    coef = dom.mul(coef, dom.from_enc(int(tok)))
                else:
                    raise ParseError(f"unexpected token {tok!r} in coefficient")
            acc = dom.add(acc, coef)
            if self.peek() == "+":
                self.take()
                continue
            break
        return acc


def parse_poly(text: str, domain, arity: int = 2, ring=None) -> Polynomial:
    return _Parser(_tokenize(text), domain, arity, ring).parse_poly()


def parse_monomial(text: str, arity: int = 2) -> tuple:
    from .gf import gf8

    p = parse_poly(text, FieldDomain(gf8()), arity)
    if len(p.terms) != 1:
        raise ParseError(f"{text!r} is not a monomial")
    ((m, c),) = p.terms.items()
    if c != 1:
        raise ParseError(f"{text!r} is not a monic monomial")
    return m


_VAR_NAMES = ("X", "Y")


def format_monomial(mono: tuple) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 0:
            continue
        name = _VAR_NAMES[i] if i < 2 else f"X{i}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: Polynomial, order: MonomialOrder = None) -> str:
    if p.is_zero():
        return "0"
    if order is None:
        order = klein_order() if p.arity == 2 else MonomialOrder(
            "weighted_deg_lex", (1,) * p.arity, p.arity - 1)
    parts = []
    for m in sorted(p.terms, key=order.key, reverse=True):
        c = p.terms[m]
        mono_s = format_monomial(m)
        coef_s = _format_coef(p.domain, c)
        if coef_s is None:
            parts.append(mono_s)
        elif mono_s == "1":
            parts.append(coef_s)
        else:
            parts.append(f"{coef_s}*{mono_s}")
    return "+".join(parts)


def _format_coef(dom, c):
    """Return the coefficient prefix, or None when it prints as bare 1."""
    if getattr(dom, "parametric", False):
        return dom.format_coef(c)
    if c == 1:
        return None
    return str(c)
