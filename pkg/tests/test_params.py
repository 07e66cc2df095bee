from kleincode.params import ConstraintStore, ParamDomain, ParamRing, format_param
from kleincode.poly import parse_poly


def expr(text, ring):
    p = parse_poly(text, ParamDomain(ring), ring=ring)
    return p.coef((0, 0))


def test_exponent_fold():
    ring = ParamRing(2)
    a = ring.var(0)
    assert ring.var_pow(0, 8) == a            # a^8 = a
    assert ring.var_pow(0, 7).mul(a) == a     # a^7 * a = a
    assert ring.var_pow(0, 14) == ring.var_pow(0, 7)


def test_arithmetic_char2():
    ring = ParamRing(2)
    a, b = ring.var(0), ring.var(1)
    assert a.add(a).is_zero()
    s = a.add(b)
    assert s.mul(s) == a.mul(a).add(b.mul(b))  # Frobenius carries over


def test_substitution():
    ring = ParamRing(3)
    p = expr("a1^2*a2+a3", ring)
    q = p.substitute({0: ring.const(1)})
    assert q == expr("a2+a3", ring)
    r = p.substitute({2: expr("a1", ring)})
    assert r == expr("a1^2*a2+a1", ring)


def test_evaluate_matches_substitution():
    ring = ParamRing(2)
    p = expr("a1^3+a1*a2+1", ring)
    for x in range(8):
        for y in range(8):
            direct = p.evaluate((x, y))
            via = p.substitute({0: ring.const(x), 1: ring.const(y)}).as_const()
            assert direct == via


def test_branch_linear_substitutes():
    ring = ParamRing(2)
    cs = ConstraintStore(ring)
    zero, nonzero = cs.branch(expr("a1+1", ring))
    assert zero.subs[0] == ring.const(1)
    assert not zero.vacuous
    assert list(nonzero.nonzeros.values()) == [expr("a1+1", ring)]


def test_branch_pair_substitutes_lower_index():
    ring = ParamRing(4)
    cs = ConstraintStore(ring)
    zero, _ = cs.branch(expr("a3+a4", ring))
    assert zero.subs[2] == ring.var(3)  # a3 := a4


def test_branch_constant_vacuous():
    ring = ParamRing(1)
    cs = ConstraintStore(ring)
    zero, nonzero = cs.branch(ring.const(1))
    assert zero.vacuous
    assert not nonzero.vacuous and not nonzero.nonzeros


def test_contradiction_is_vacuous():
    ring = ParamRing(1)
    cs = ConstraintStore(ring).with_nonzero(expr("a1", ring))
    child = cs.with_zero(expr("a1", ring))
    assert child.vacuous


def test_certified_products():
    ring = ParamRing(2)
    cs = ConstraintStore(ring)
    cs = cs.with_nonzero(expr("a1", ring)).with_nonzero(expr("a1+1", ring))
    assert cs.certified_nonzero(expr("a1^2+a1", ring))  # a1*(a1+1)
    assert cs.certified_nonzero(ring.const(5))
    assert not cs.certified_nonzero(expr("a2", ring))
    assert not cs.certified_nonzero(ring.zero())


def test_proves_zero_function_scan():
    # a1^7 + 1 vanishes identically under a1 != 0 though its reduced form
    # is nonzero
    ring = ParamRing(1)
    cs = ConstraintStore(ring).with_nonzero(expr("a1", ring))
    assert cs.proves_zero(expr("a1^7+1", ring))
    assert not ConstraintStore(ring).proves_zero(expr("a1^7+1", ring))


def test_witness_deterministic():
    ring = ParamRing(3)
    cs = ConstraintStore(ring).with_nonzero(expr("a1+a2", ring))
    w1 = cs.witness()
    cs2 = ConstraintStore(ring).with_nonzero(expr("a1+a2", ring))
    assert w1 == cs2.witness()
    assert expr("a1+a2", ring).evaluate(w1) != 0


def test_sample_witnesses_respect_constraints():
    ring = ParamRing(2)
    cs = ConstraintStore(ring).with_nonzero(expr("a1", ring))
    cs = cs.with_zero(expr("a2+a1", ring))  # a2 := a1
    for w in cs.sample_witnesses(20, seed=5):
        assert w[0] != 0 and w[1] == w[0]


def test_format_param_canonical():
    ring = ParamRing(2)
    assert format_param(expr("a1^3+a2", ring)) == "a1^3+a2"
    assert format_param(expr("a1*a2^2+1", ring)) == "a1*a2^2+1"
    assert format_param(ring.zero()) == "0"
