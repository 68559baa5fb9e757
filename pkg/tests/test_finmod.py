import pytest
from hypothesis import given, settings, strategies as st

from skewlab.errors import CapacityError, ContractViolation, MalformedInput
from skewlab.finmod import (
    ModuleTable,
    annihilator,
    annihilator_lattice,
    cyclic_annihilator,
    element_annihilator,
    regular_module,
    set_annihilator,
    submodules,
    verify_module_axioms,
)
from skewlab.properties import check_elementwise_condition


def test_regular_module_passes(catalog):
    for entry in catalog:
        assert verify_module_axioms(regular_module(entry.ring))


def test_z2_over_z4_passes(inst):
    mod = inst("z4", "id", "z2").module
    assert verify_module_axioms(mod)
    assert [[int(v) for v in row] for row in mod.action] == [[0, 0, 0, 0], [0, 1, 0, 1]]


def test_associativity_corruption_named(inst):
    mod = inst("z4", "id", "z2").module
    action = mod.action.copy()
    action[1, 3] = 0
    verdict = verify_module_axioms(ModuleTable(mod.ring, mod.add, action))
    assert not verdict
    assert verdict.witness is not None and len(verdict.witness) == 3
    m, a, b = verdict.witness
    act = action
    ring = mod.ring
    lhs = (act[int(act[m, a]), b], act[m, int(ring.mul[a, b])])
    bad_dist = act[m, int(ring.add[a, b])] != mod.add[act[m, a], act[m, b]]
    assert lhs[0] != lhs[1] or bad_dist


def test_pure_associativity_failure(inst):
    # Z_2 over Z_2[t]/t^2 with t acting as 1 is additive but not associative: (m t) t = m but m t^2 = 0
    ring = inst("z2t").ring
    action = [[0, 0, 0, 0], [0, 1, 1, 0]]  # index 2 = t, 3 = 1+t
    verdict = verify_module_axioms(ModuleTable(ring, [[0, 1], [1, 0]], action))
    assert not verdict
    assert verdict.axiom == "associativity"
    assert verdict.witness == (1, 2, 2)


def test_dimension_mismatch(inst):
    ring = inst("z4").ring
    with pytest.raises(MalformedInput):
        verify_module_axioms(ModuleTable(ring, [[0, 1], [1, 0]], [[0, 0, 0], [0, 1, 0]]))


def test_cyclic_annihilators(inst):
    assert annihilator(inst("z6").module, [2], "cyclic-submodule").sorted() == [0, 3]
    assert annihilator(inst("z4").module, [2], "cyclic-submodule").sorted() == [0, 2]


def test_zero_annihilates_to_everything(instances):
    for i in instances:
        z = i.module.zero
        assert set_annihilator(i.module, [z]) == frozenset(i.ring.elements)
        assert annihilator(i.module, [z], "cyclic-submodule").elements == frozenset(i.ring.elements)


def test_cyclic_mode_needs_singleton(inst):
    with pytest.raises(ContractViolation):
        annihilator(inst("z6").module, [1, 2], "cyclic-submodule")
    with pytest.raises(ContractViolation):
        annihilator(inst("z6").module, [], "cyclic-submodule")


def test_submodules_of_z6():
    from skewlab.catalog import zn

    subs = submodules(regular_module(zn(6)))
    assert [sorted(s) for s in subs] == [[0], [0, 3], [0, 2, 4], list(range(6))]


def test_simple_and_zero_modules(inst):
    assert [sorted(s) for s in submodules(inst("f4").module)] == [[0], [0, 1, 2, 3]]
    assert [sorted(s) for s in submodules(inst("z2", "id", "zero").module)] == [[0]]


def test_submodule_capacity_guard():
    from skewlab.catalog import zn

    with pytest.raises(CapacityError):
        submodules(regular_module(zn(33)))


def test_annihilator_lattices():
    from skewlab.catalog import zn

    got = sorted(sorted(a.elements) for a in annihilator_lattice(regular_module(zn(6))))
    assert got == sorted([[0], [0, 2, 4], [0, 3], list(range(6))])
    got = [sorted(a.elements) for a in annihilator_lattice(regular_module(zn(4)))]
    assert got == [[0], [0, 2], [0, 1, 2, 3]]


def test_field_annihilator_lattice(inst):
    assert [sorted(a.elements) for a in annihilator_lattice(inst("f4").module)] == [[0], [0, 1, 2, 3]]


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_union_is_intersection(instances, data):
    i = data.draw(st.sampled_from(instances))
    n = i.module.size
    xs = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
    ys = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
    mod = i.module
    assert set_annihilator(mod, xs | ys) == set_annihilator(mod, xs) & set_annihilator(mod, ys)
    brute = {a for a in i.ring.elements if all(int(mod.action[x, a]) == mod.zero for x in xs)}
    assert set_annihilator(mod, xs) == brute


def test_cyclic_inside_element_and_semicommutative_cross_check(instances):
    for i in instances:
        mod = i.module
        equal_everywhere = True
        for m in mod.elements:
            c, e = cyclic_annihilator(mod, m), element_annihilator(mod, m)
            assert c <= e
            equal_everywhere &= c == e
        semi = check_elementwise_condition(i, "semicommutative").truth
        assert semi == equal_everywhere, i.id


def test_submodule_lattice_invariants(instances):
    seen = set()
    for i in instances:
        mod = i.module
        if id(mod) in seen:
            continue
        seen.add(id(mod))
        subs = submodules(mod)
        assert frozenset({mod.zero}) in subs and frozenset(mod.elements) in subs
        for s in subs:
            assert annihilator(mod, s).as_ideal().is_right_ideal()
            for t in subs:
                assert s & t in subs
