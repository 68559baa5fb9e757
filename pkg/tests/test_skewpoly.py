import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skewlab.errors import ContractViolation, MalformedInput, UnsupportedOperation
from skewlab.finmod import regular_module
from skewlab.skewpoly import (
    BatchArithmetic,
    LaurentPoly,
    SkewModulePoly,
    SkewPoly,
    all_coefficient_vectors,
    format_terms,
    laurent_mul,
    module_action,
    monomial_test_schedule,
    parse_laurent,
    parse_module_poly,
    parse_poly,
    ring_mul,
    truncated_series_action,
)

import oracle


def as_dense(terms, offset=0):
    if not terms:
        return ()
    hi = max(terms)
    return tuple(terms.get(k, 0) for k in range(offset, hi + 1))


def test_identity_sigma_is_ordinary_product(inst):
    i = inst("z6")
    f, g = SkewPoly(i.sigma, (1, 2, 5)), SkewPoly(i.sigma, (3, 4))
    conv = {}
    for a, fa in enumerate(f.coeffs):
        for b, gb in enumerate(g.coeffs):
            conv[a + b] = (conv.get(a + b, 0) + fa * gb) % 6
    assert ring_mul(f, g).coeffs == as_dense({k: v for k, v in conv.items() if v})


def test_frobenius_twist_on_f4(inst):
    i = inst("f4", "frobenius")
    alpha = 2
    assert int(i.ring.mul[alpha, alpha]) == 3 and int(i.ring.mul[alpha, 3]) == 1  # alpha^3 = 1
    f, g = SkewPoly(i.sigma, (0, alpha)), SkewPoly(i.sigma, (alpha,))
    assert (f * g).coeffs == (0, 1)
    m = SkewModulePoly(i.module, i.sigma, (0, alpha))
    assert (m * g).coeffs == (0, 1)


def test_zero_products(inst):
    i = inst("z6")
    assert ring_mul(SkewPoly(i.sigma, ()), SkewPoly(i.sigma, (1, 2))).is_zero()
    assert SkewPoly(i.sigma, (0, 0, 0)).coeffs == ()


def test_z6_module_action_example(inst):
    i = inst("z6")
    m = SkewModulePoly(i.module, i.sigma, (2, 3))
    assert module_action(m, SkewPoly(i.sigma, (3,))).coeffs == (0, 3)
    assert module_action(m, SkewPoly(i.sigma, (1,))) == m


def test_mismatched_sigma_rejected(inst):
    a, b = inst("z2xz2", "id"), inst("z2xz2", "swap")
    with pytest.raises(ContractViolation):
        ring_mul(SkewPoly(a.sigma, (1,)), SkewPoly(b.sigma, (1,)))
    with pytest.raises(ContractViolation):
        SkewModulePoly(inst("z4").module, inst("z6").sigma, (1,))


def test_laurent_examples(inst):
    i = inst("z2xz2", "swap")
    s = i.sigma
    # x^-1 * a * x with a = (1,0) (index 2)
    one = i.ring.one
    left = laurent_mul(LaurentPoly.monomial(s, one, -1), LaurentPoly.monomial(s, 2, 0))
    out = laurent_mul(left, LaurentPoly.monomial(s, one, 1))
    assert out.terms() == {0: 1}  # (0,1)
    u = parse_laurent("3x^-1+2x", s)
    assert laurent_mul(u, LaurentPoly.monomial(s, i.ring.one, 0)).terms() == u.terms()


def test_laurent_needs_automorphism(inst):
    with pytest.raises(UnsupportedOperation):
        LaurentPoly.monomial(inst("z2xz2", "first").sigma, 1, -1)


def test_truncated_series_examples(inst):
    i = inst("z2")
    assert truncated_series_action(i.module, i.sigma, (1, 1, 1, 1), (1, 1), 3) == (1, 0, 0, 0)
    assert truncated_series_action(i.module, i.sigma, (), (1, 1), 3) == (0, 0, 0, 0)


def test_schedule_examples(inst):
    assert monomial_test_schedule(inst("z6").sigma) == (0,)
    assert monomial_test_schedule(inst("f4", "frobenius").sigma) == (0, 1)
    assert monomial_test_schedule(inst("z2xz2", "first").sigma) == (0, 1)


def test_schedule_exhausts_powers(catalog):
    for entry in catalog:
        for sigma in entry.endomorphisms:
            raw = [int(v) for v in sigma.map]
            seen = {tuple(oracle.sigma_power(raw, k)) for k in monomial_test_schedule(sigma)}
            assert all(tuple(oracle.sigma_power(raw, k)) in seen for k in range(3 * entry.ring.size))


def test_literals(inst):
    i = inst("z6")
    assert parse_poly("2+3x+0x^2", i.sigma).coeffs == (2, 3)
    assert parse_poly("x^2", i.sigma).coeffs == (0, 0, 1)
    assert parse_module_poly("4x", i.module, i.sigma).coeffs == (0, 4)
    assert format_terms((2, 3)) == "2+3x"
    assert format_terms((0, 0, 5), -1) == "5x"
    for bad in ("", "2+", "3y", "x^a", "1+1"):
        with pytest.raises(MalformedInput):
            parse_poly(bad, i.sigma)
    with pytest.raises(MalformedInput):
        parse_poly("x^-1", i.sigma)


def test_coefficient_vector_order():
    vecs = all_coefficient_vectors(3, 2)
    assert [tuple(v) for v in vecs[:4]] == [(0, 0), (1, 0), (2, 0), (0, 1)]
    assert len(vecs) == 9 and len({tuple(v) for v in vecs}) == 9


poly = st.lists(st.integers(0, 63), max_size=3)


def _fit(coeffs, n):
    return tuple(c % n for c in coeffs)


@settings(max_examples=150, deadline=None)
@given(data=st.data(), m=poly, n_=poly, f=poly, g=poly)
def test_module_axioms_over_skew_ring(instances, data, m, n_, f, g):
    i = data.draw(st.sampled_from(instances))
    M, R, s = i.module.size, i.ring.size, i.sigma
    mp = SkewModulePoly(i.module, s, _fit(m, M))
    np_ = SkewModulePoly(i.module, s, _fit(n_, M))
    fp, gp = SkewPoly(s, _fit(f, R)), SkewPoly(s, _fit(g, R))
    assert (mp + np_) * fp == mp * fp + np_ * fp
    assert mp * (fp + gp) == mp * fp + mp * gp
    assert mp * (fp * gp) == (mp * fp) * gp
    assert mp * SkewPoly.constant(s, i.ring.one) == mp
    assert (fp * gp) * SkewPoly(s, _fit(n_, R)) == fp * (gp * SkewPoly(s, _fit(n_, R)))


@settings(max_examples=100, deadline=None)
@given(data=st.data(), m=poly, f=poly)
def test_action_matches_dict_oracle(instances, data, m, f):
    i = data.draw(st.sampled_from(instances))
    _, _, act, madd, sig = oracle.tables(i)
    mc, fc = _fit(m, i.module.size), _fit(f, i.ring.size)
    got = module_action(SkewModulePoly(i.module, i.sigma, mc), SkewPoly(i.sigma, fc)).coeffs
    assert got == as_dense(oracle.skew_mul(mc, fc, act, madd, sig))


@settings(max_examples=100, deadline=None)
@given(data=st.data(), m=poly, f=poly, lo=st.integers(-2, 2), lo2=st.integers(-2, 2))
def test_laurent_matches_dict_oracle(instances, data, m, f, lo, lo2):
    autos = [i for i in instances if i.sigma.is_automorphism()]
    i = data.draw(st.sampled_from(autos))
    _, _, act, madd, sig = oracle.tables(i)
    mc, fc = _fit(m, i.module.size), _fit(f, i.ring.size)
    u = LaurentPoly(SkewModulePoly(i.module, i.sigma, mc), lo)
    v = LaurentPoly(SkewPoly(i.sigma, fc), lo2)
    expected = oracle.skew_mul(u.coeffs, v.coeffs, act, madd, sig, left_start=u.offset, right_start=v.offset)
    assert laurent_mul(u, v).terms() == expected
    if lo == lo2 == 0:
        assert laurent_mul(u, v).terms() == {
            k: c for k, c in enumerate(module_action(u.base, v.base).coeffs) if c != 0
        }


def test_laurent_conjugation_identity(instances):
    for i in instances:
        s = i.sigma
        if not s.is_automorphism():
            continue
        for a in i.ring.elements:
            # x a = sigma(a) x and x^-1 sigma(a) x = a
            xa = laurent_mul(LaurentPoly.monomial(s, i.ring.one, 1), LaurentPoly.monomial(s, a, 0))
            assert xa.terms() == ({1: s(a)} if s(a) else {})
            back = laurent_mul(
                laurent_mul(LaurentPoly.monomial(s, i.ring.one, -1), LaurentPoly.monomial(s, s(a), 0)),
                LaurentPoly.monomial(s, i.ring.one, 1),
            )
            assert back.terms() == ({0: a} if a else {})


@settings(max_examples=60, deadline=None)
@given(data=st.data(), m=poly, f=poly)
def test_truncation_agrees_with_polynomials(instances, data, m, f):
    i = data.draw(st.sampled_from(instances))
    mc, fc = _fit(m, i.module.size), _fit(f, i.ring.size)
    full = module_action(SkewModulePoly(i.module, i.sigma, mc), SkewPoly(i.sigma, fc)).coeffs
    for d in range(4):
        padded = tuple(full) + (0,) * (d + 1)
        assert truncated_series_action(i.module, i.sigma, mc, fc, d) == padded[: d + 1]


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_batch_products_match_scalar(instances, data):
    i = data.draw(st.sampled_from(instances))
    batch = BatchArithmetic(i.module, i.sigma)
    mv = all_coefficient_vectors(i.module.size, 2)
    rv = all_coefficient_vectors(i.ring.size, 2)
    a = data.draw(st.integers(0, len(mv) - 1))
    b = data.draw(st.integers(0, len(rv) - 1))
    prod = batch.products(mv[a : a + 1], 0, rv[b : b + 1], 0)[0, 0]
    scalar = module_action(SkewModulePoly(i.module, i.sigma, tuple(mv[a])), SkewPoly(i.sigma, tuple(rv[b]))).coeffs
    assert tuple(int(c) for c in prod) == tuple(scalar) + (0,) * (3 - len(scalar))
    mask = batch.zero_mask(mv, 0, rv[b : b + 1], 0)
    assert bool(mask[a, 0]) == (len(scalar) == 0)


def test_ring_poly_on_regular_module_matches(inst):
    i = inst("t2z2", "inner")
    reg = regular_module(i.ring)
    f = SkewPoly(i.sigma, (3, 5, 6))
    g = SkewPoly(i.sigma, (7, 2))
    assert module_action(SkewModulePoly(i.module, i.sigma, f.coeffs), g).coeffs == ring_mul(f, g).coeffs
    assert np.array_equal(reg.action, i.ring.mul)
