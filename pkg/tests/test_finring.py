import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skewlab.catalog import zn
from skewlab.errors import ContractViolation, MalformedInput, NotHomomorphism, NotUnital, UnsupportedOperation
from skewlab.finring import (
    RightIdeal,
    RingTable,
    find_idempotent_generator,
    identity_endomorphism,
    idempotents,
    principal_right_ideal,
    verify_endomorphism,
    verify_ring_axioms,
)

import oracle


def mod_ring(n):
    return RingTable(
        [[(a + b) % n for b in range(n)] for a in range(n)],
        [[(a * b) % n for b in range(n)] for a in range(n)],
        1 % n,
    )


def test_z6_tables_are_a_ring():
    assert verify_ring_axioms(mod_ring(6))


def test_z4_corrupted_square_names_distributivity():
    good = mod_ring(4)
    mul = good.mul.copy()
    mul[2, 2] = 1
    verdict = verify_ring_axioms(RingTable(good.add, mul, 1))
    assert not verdict
    assert verdict.axiom == "distributivity"
    assert verdict.witness == (2, 1, 1)


def test_zero_ring_is_a_ring():
    assert verify_ring_axioms(RingTable([[0]], [[0]], 0))


def test_zero_equal_one_rejected_in_bigger_ring():
    r = mod_ring(2)
    verdict = verify_ring_axioms(RingTable(r.add, [[0, 0], [0, 0]], 0))
    assert not verdict


def test_shape_mismatch_is_malformed():
    with pytest.raises(MalformedInput):
        verify_ring_axioms(RingTable([[0, 1], [1, 0]], [[0, 0, 0], [0, 1, 0]], 1))
    with pytest.raises(MalformedInput):
        verify_ring_axioms(RingTable([[0, 1], [1, 5]], [[0, 0], [0, 1]], 1))


def test_ragged_table_is_malformed():
    with pytest.raises(MalformedInput):
        RingTable([[0, 1], [1]], [[0, 0], [0, 1]], 1)


def test_identity_schedule_on_z6():
    sigma = identity_endomorphism(mod_ring(6))
    assert sigma.schedule == (0, 1)


def test_swap_and_first_schedules(inst):
    ring = inst("z2xz2").ring
    # index 2a+b for (a, b)
    swap = verify_endomorphism(ring, [0, 2, 1, 3], "swap")
    assert swap.schedule == (0, 2) and swap.is_automorphism()
    first = verify_endomorphism(ring, [0, 0, 3, 3], "first")
    assert first.schedule == (1, 1)
    assert first(3) == 3


def test_non_unital_is_distinct_from_non_multiplicative():
    ring = mod_ring(6)
    with pytest.raises(NotUnital):
        verify_endomorphism(ring, [0] * 6)
    # doubling on Z_6 fails unitality before anything else
    with pytest.raises(NotUnital):
        verify_endomorphism(ring, [(2 * a) % 6 for a in range(6)])
    # fixes one on Z_2 x Z_2 but sends (0,1) and (1,0) both to (0,1)
    r = oracle_ring_z2xz2()
    with pytest.raises(NotHomomorphism) as exc:
        verify_endomorphism(r, [0, 1, 1, 3])
    assert exc.value.law == "additive"


def oracle_ring_z2xz2():
    els = [(a, b) for a in range(2) for b in range(2)]
    idx = {x: i for i, x in enumerate(els)}
    add = [[idx[((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)] for y in els] for x in els]
    mul = [[idx[(x[0] * y[0], x[1] * y[1])] for y in els] for x in els]
    return RingTable(add, mul, 3)


def test_multiplicative_violation_named():
    # Z_2[t]/t^2 with t -> 1+t: additive and unital, but (1+t)^2 = 1 while t^2 = 0
    add = [[a ^ b for b in range(4)] for a in range(4)]

    def mul(x, y):
        x0, x1, y0, y1 = x & 1, x >> 1, y & 1, y >> 1
        return (x0 * y0) | (((x0 * y1 + x1 * y0) % 2) << 1)

    ring = RingTable(add, [[mul(x, y) for y in range(4)] for x in range(4)], 1)
    assert verify_ring_axioms(ring)
    with pytest.raises(NotHomomorphism) as exc:
        verify_endomorphism(ring, [0, 1, 3, 2])
    assert exc.value.law == "multiplicative"


@pytest.mark.parametrize("n,expected", [(4, (0, 1)), (6, (0, 1, 3, 4))])
def test_idempotents_of_zn(n, expected):
    assert idempotents(mod_ring(n)) == expected
    assert expected == tuple(e for e in range(n) if e * e % n == e)


def test_field_idempotents_are_trivial(inst):
    assert idempotents(inst("f4").ring) == (0, 1)
    assert idempotents(mod_ring(3)) == (0, 1)


def test_principal_right_ideals():
    z6 = mod_ring(6)
    assert principal_right_ideal(z6, 3).sorted() == [0, 3]
    assert principal_right_ideal(z6, 0).sorted() == [0]
    assert principal_right_ideal(z6, 1).sorted() == list(range(6))


def test_idempotent_generator_examples():
    assert find_idempotent_generator({0, 3}, mod_ring(6)) == 3
    assert find_idempotent_generator({0, 2}, mod_ring(4)) is None
    assert find_idempotent_generator({0}, mod_ring(4)) == 0


def test_non_ideal_is_contract_violation():
    with pytest.raises(ContractViolation):
        find_idempotent_generator({0, 1}, mod_ring(4))
    with pytest.raises(ContractViolation):
        find_idempotent_generator([0, 2])


def test_negative_power_needs_automorphism(inst):
    first = inst("z2xz2", "first").sigma
    with pytest.raises(UnsupportedOperation):
        first.power(-1)
    swap = inst("z2xz2", "swap").sigma
    assert list(swap.power(-1)) == oracle.sigma_inverse([int(v) for v in swap.map])


def test_schedule_matches_direct_iteration(catalog):
    for entry in catalog:
        for sigma in entry.endomorphisms:
            mu, p = sigma.schedule
            raw = [int(v) for v in sigma.map]
            assert oracle.sigma_power(raw, mu + p) == oracle.sigma_power(raw, mu)
            # least pair
            for m2 in range(mu + 1):
                for p2 in range(1, p + 1):
                    if (m2, p2) < (mu, p):
                        assert oracle.sigma_power(raw, m2 + p2) != oracle.sigma_power(raw, m2)
            for k in range(mu + 2 * p + 1):
                assert list(sigma.power(k)) == oracle.sigma_power(raw, k)


def test_idempotent_invariants(catalog):
    for entry in catalog:
        ring = entry.ring
        mul = ring.mul
        es = idempotents(ring)
        assert es == tuple(oracle.idempotents([list(r) for r in mul]))
        for e in es:
            f = int(ring.add[ring.one, ring.neg[e]])
            assert int(mul[f, f]) == f and f in es
        for a in ring.elements:
            assert a in principal_right_ideal(ring, a)


@settings(max_examples=60, deadline=None)
@given(n=st.sampled_from([2, 3, 4, 6, 8, 12]), data=st.data())
def test_generator_postcondition(n, data):
    ring = zn(n)
    a = data.draw(st.integers(0, n - 1))
    ideal = principal_right_ideal(ring, a)
    e = find_idempotent_generator(ideal)
    expected = oracle.generator_by_brute_force([list(r) for r in ring.mul], ideal.elements)
    assert e == expected
    if e is not None:
        assert e in ideal and int(ring.mul[e, e]) == e and ring.right_multiples(e) == ideal.elements


def test_right_ideal_predicate():
    z4 = mod_ring(4)
    assert RightIdeal(z4, frozenset({0, 2})).is_right_ideal()
    assert not RightIdeal(z4, frozenset({0, 1})).is_right_ideal()
    assert not RightIdeal(z4, frozenset({2})).is_right_ideal()


def test_tables_are_read_only():
    ring = mod_ring(3)
    with pytest.raises(ValueError):
        ring.mul[0, 0] = 1
    assert isinstance(ring.add, np.ndarray)
