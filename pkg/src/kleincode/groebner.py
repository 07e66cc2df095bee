"""Buchberger's algorithm, normal forms, and footprint enumeration.

Everything here runs over concrete field coefficients.  Bases are reduced
and monic with a deterministic ordering (ascending heads), so repeated
runs produce identical output.  The footprint of a zero-dimensional ideal
is enumerated by walking the grid bounded by the pure-power heads.
"""

from __future__ import annotations

from .poly import (
    FULL,
    MonomialOrder,
    Polynomial,
    ZeroPolynomial,
    divide,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class InfiniteFootprint(ValueError):
    """Some variable has no pure power among the basis heads."""


class GroebnerBasis:
    __slots__ = ("order", "gens", "reduced")

    def __init__(self, order: MonomialOrder, gens, reduced: bool = False):
        self.order = order
        self.gens = list(gens)
        self.reduced = reduced

    def heads(self):
        return [g.leading_term(self.order)[0] for g in self.gens]

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """Cancel the lcm of the two heads (standard S-polynomial)."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("S-polynomial of 0")
    fm, fc = f.leading_term(order)
    gm, gc = g.leading_term(order)
    lcm = mono_lcm(fm, gm)
    dom = f.domain
    left = f.mul_mono(mono_div(lcm, fm), dom.inv(fc))
    right = g.mul_mono(mono_div(lcm, gm), dom.inv(gc))
    return left.add(right)


def buchberger(gens, order: MonomialOrder) -> GroebnerBasis:
    """Reduced monic Groebner basis with the normal selection strategy.

    Pairs are processed smallest head-lcm first; pairs with coprime heads
    are skipped (Buchberger's first criterion).
    """
    import heapq

    basis = [g.monic(order) for g in gens if not g.is_zero()]
    if not basis:
        raise ZeroPolynomial("no nonzero generators")
    if basis and basis[0].arity == 2 and order.kind == "weighted_deg_lex" \
            and not getattr(basis[0].domain, "parametric", False):
        return _buchberger_packed(basis, order)
    heads = [g.leading_term(order)[0] for g in basis]
    heap: list = []

    def push_pair(i, j):
        hi, hj = heads[i], heads[j]
        lcm = mono_lcm(hi, hj)
        if lcm == mono_mul(hi, hj):
            return  # coprime heads (Buchberger's first criterion)
        heapq.heappush(heap, (order.key(lcm), i, j))

    for i in range(len(basis)):
        for j in range(i):
            push_pair(i, j)
    while heap:
        _, i, j = heapq.heappop(heap)
        s = s_polynomial(basis[i], basis[j], order)
        _, r = divide(s, basis, order, FULL)
        if r.is_zero():
            continue
        r = r.monic(order)
        k = len(basis)
        basis.append(r)
        heads.append(r.leading_term(order)[0])
        for t in range(k):
            push_pair(k, t)
    return _reduce_basis(basis, order)


def _buchberger_packed(basis, order: MonomialOrder) -> GroebnerBasis:
    """Same algorithm on the key-indexed int representation (see poly.Packed2):
    basis elements are dicts {order key: enc}, monic throughout, so S-pairs
    and reductions are integer adds and dict updates."""
    import heapq

    from .poly import Packed2, _PB

    dom = basis[0].domain
    mul = dom.mul
    inv = dom.inv
    pk = Packed2(order)
    decode = pk.decode

    elems = []   # list of dicts keyed by order key, all monic
    heads = []   # (ha, hb, head_key)

    def add_elem(d):
        hk = max(d)
        lc = d[hk]
        if lc != 1:
            ilc = inv(lc)
            d = {k: mul(ilc, c) for k, c in d.items()}
        ha, hb = decode(hk)
        elems.append(d)
        heads.append((ha, hb, hk))

    for g in basis:
        add_elem(pk.to_dict(g))

    def reduce_full(p, skip=-1):
        rem = {}
        while p:
            mk = max(p)
            c = p[mk]
            ma, mb = decode(mk)
            for idx in range(len(elems)):
                if idx == skip:
                    continue
                ha, hb, hk = heads[idx]
                if ha <= ma and hb <= mb:
                    tk = mk - hk
                    for dk, dc in elems[idx].items():
                        nk = tk + dk
                        v = p.get(nk, 0) ^ mul(c, dc)
                        if v:
                            p[nk] = v
                        else:
                            p.pop(nk, None)
                    break
            else:
                rem[mk] = c
                del p[mk]
        return rem

    heap: list = []

    def push_pair(i, j):
        ia, ib, ik = heads[i]
        ja, jb, jk = heads[j]
        if (ia == 0 or ja == 0) and (ib == 0 or jb == 0):
            return  # coprime heads
        la, lb = max(ia, ja), max(ib, jb)
        lk = ((pk.w0 * la + pk.w1 * lb) << _PB) | (lb if pk.tb == 1 else la)
        heapq.heappush(heap, (lk, i, j))

    for i in range(len(elems)):
        for j in range(i):
            push_pair(i, j)
    while heap:
        lk, i, j = heapq.heappop(heap)
        s: dict = {}
        for src in (i, j):
            tk = lk - heads[src][2]
            for k, c in elems[src].items():
                nk = tk + k
                v = s.get(nk, 0) ^ c
                if v:
                    s[nk] = v
                else:
                    s.pop(nk, None)
        r = reduce_full(s)
        if not r:
            continue
        k = len(elems)
        add_elem(r)
        for t in range(k):
            push_pair(k, t)

    # minimalize: drop any element whose head another head divides
    alive = list(range(len(elems)))
    alive = [i for i in alive if not any(
        j != i and heads[j][0] <= heads[i][0] and heads[j][1] <= heads[i][1]
        and (heads[i][2] != heads[j][2] or j < i) for j in alive)]
    elems = [elems[i] for i in alive]
    heads = [heads[i] for i in alive]
    # inter-reduce tails to the unique reduced basis
    for i in range(len(elems)):
        r = reduce_full(dict(elems[i]), skip=i)
        hk = max(r)
        lc = r[hk]
        if lc != 1:
            ilc = inv(lc)
            r = {k: mul(ilc, c) for k, c in r.items()}
        elems[i] = r
        heads[i] = (*decode(hk), hk)
    by_head = sorted(range(len(elems)), key=lambda i: heads[i][2])
    gens = [pk.from_dict(elems[i], dom) for i in by_head]
    return GroebnerBasis(order, gens, reduced=True)


def _reduce_basis(basis, order: MonomialOrder) -> GroebnerBasis:
    # Drop generators whose head another head divides, then fully reduce
    # each survivor against the others and sort by ascending head.
    changed = True
    while changed:
        changed = False
        basis = [g for g in basis if not g.is_zero()]
        heads = [g.leading_term(order)[0] for g in basis]
        keep = []
        for i, g in enumerate(basis):
            if any(j != i and mono_divides(heads[j], heads[i]) and
                   (not mono_divides(heads[i], heads[j]) or j < i)
                   for j in range(len(basis))):
                changed = True
                continue
            keep.append(g)
        basis = keep
        out = []
        for i, g in enumerate(basis):
            others = basis[:i] + basis[i + 1:]
            if others:
                _, r = divide(g, others, order, FULL)
            else:
                r = g
            if r.is_zero():
                changed = True
                continue
            r = r.monic(order)
            if r != g:
                changed = True
            out.append(r)
        basis = out
    basis.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    return GroebnerBasis(order, basis, reduced=True)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique full-mode remainder modulo the basis; support in the footprint."""
    _, r = divide(p, gb.gens, gb.order, FULL)
    return r


class Footprint:
    """The finite set of monomials divisible by no basis head."""

    __slots__ = ("order", "monomials", "_set")

    def __init__(self, order: MonomialOrder, monomials):
        self.order = order
        self.monomials = tuple(sorted(monomials, key=order.key))
        self._set = frozenset(self.monomials)

    def __contains__(self, mono):
        return tuple(mono) in self._set

    def __iter__(self):
        return iter(self.monomials)

    def __len__(self):
        return len(self.monomials)

    def descending(self):
        return tuple(reversed(self.monomials))


def footprint(gb: GroebnerBasis) -> Footprint:
    heads = gb.heads()
    if not heads:
        raise ZeroPolynomial("empty basis")
    arity = len(heads[0])
    bounds = []
    for i in range(arity):
        pure = [h[i] for h in heads if all(e == 0 for j, e in enumerate(h) if j != i)]
        if not pure:
            raise InfiniteFootprint(f"no pure power of variable {i} among heads")
        bounds.append(min(pure))
    monos = []
    idx = [0] * arity
    total = 1
    for b in bounds:
        total *= b
    for n in range(total):
        v = n
        for i, b in enumerate(bounds):
            idx[i] = v % b
            v //= b
        m = tuple(idx)
        if not any(mono_divides(h, m) for h in heads):
            monos.append(m)
    return Footprint(gb.order, monos)


def order_domain_check(gb: GroebnerBasis, weights) -> tuple[bool, bool, bool]:
    """The three structural conditions under which divisibility-style bounds
    detect the most (satisfied 1 and 2 but not 3 in the Klein setting).

    cond1: the order is weighted-degree-lex with the given weights.
    cond2: every generator has at least two monomials in its support and at
           most two of them attain the top weight.
    cond3: no two distinct footprint monomials share a weight.
    """
    order = gb.order
    cond1 = order.kind == "weighted_deg_lex" and tuple(order.weights) == tuple(weights)

    def wt(m):
        return sum(w * e for w, e in zip(weights, m))

    cond2 = True
    for g in gb.gens:
        supp = list(g.terms)
        if len(supp) < 2:
            cond2 = False
            break
        top = max(wt(m) for m in supp)
        if sum(1 for m in supp if wt(m) == top) > 2:
            cond2 = False
            break
    fp = footprint(gb)
    ws = [wt(m) for m in fp]
    cond3 = len(set(ws)) == len(ws)
    return cond1, cond2, cond3
