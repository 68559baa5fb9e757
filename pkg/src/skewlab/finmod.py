"""Finite right R-modules: tables, axioms, annihilators and submodules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import CapacityError, ContractViolation, MalformedInput
from .finring import AxiomVerdict, OK, RightIdeal, RingTable, _first, _table, check_abelian_group, derive_negation

SUBMODULE_CAPACITY = 32


@dataclass(frozen=True, eq=False)
class ModuleTable:
    ring: RingTable
    add: np.ndarray
    action: np.ndarray
    zero: int = 0
    neg: np.ndarray = None  # type: ignore[assignment]
    name: str = "M"
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "add", _table(self.add, 2))
        object.__setattr__(self, "action", _table(self.action, 2))
        if self.neg is None:
            if self.add.shape[0] == self.add.shape[1]:
                neg = derive_negation(self.add, self.zero)
            else:
                neg = np.zeros(self.add.shape[0], dtype=np.intp)
            object.__setattr__(self, "neg", neg)
        object.__setattr__(self, "neg", _table(self.neg, 1))

    @property
    def size(self) -> int:
        return int(self.add.shape[0])

    @property
    def elements(self) -> range:
        return range(self.size)

    def label(self, m: int) -> str:
        return self.labels[m] if self.labels else str(m)

    def orbit(self, m: int) -> frozenset[int]:
        """mR as a set."""
        return frozenset(int(v) for v in self.action[m])

    def is_regular(self) -> bool:
        r = self.ring
        return (
            self.size == r.size
            and self.zero == r.zero
            and np.array_equal(self.add, r.add)
            and np.array_equal(self.action, r.mul)
        )


def regular_module(ring: RingTable, name: str = "regular") -> ModuleTable:
    return ModuleTable(ring, ring.add, ring.mul, ring.zero, ring.neg, name, ring.labels)


def verify_module_axioms(candidate: ModuleTable) -> AxiomVerdict:
    r = candidate.ring
    n, k = candidate.add.shape[0], r.size
    if n == 0:
        raise MalformedInput("module must have at least one element")
    for label, tab, shape in (
        ("add", candidate.add, (n, n)),
        ("neg", candidate.neg, (n,)),
        ("action", candidate.action, (n, k)),
    ):
        if tab.shape != shape:
            raise MalformedInput(f"{label} table has shape {tab.shape}, expected {shape}")
    for label, tab in (("add", candidate.add), ("action", candidate.action)):
        if tab.min() < 0 or tab.max() >= n:
            raise MalformedInput(f"{label} table has entries outside 0..{n - 1}")
    if not 0 <= candidate.zero < n:
        raise MalformedInput(f"zero={candidate.zero} outside 0..{n - 1}")

    verdict = check_abelian_group(candidate.add, candidate.neg, candidate.zero)
    if not verdict:
        return verdict
    add, act = candidate.add, candidate.action
    ms, rs = np.arange(n), np.arange(k)
    w = _first(act[:, r.one] != ms)
    if w:
        return AxiomVerdict(False, "unitary", w, "m1 != m")
    # m(a+b) = ma + mb
    m, a, b = ms[:, None, None], rs[None, :, None], rs[None, None, :]
    w = _first(act[m, r.add[a, b]] != add[act[m, a], act[m, b]])
    if w:
        return AxiomVerdict(False, "distributivity", w, "m(a+b) != ma+mb")
    # (m+n)a = ma + na
    m1, m2, a2 = ms[:, None, None], ms[None, :, None], rs[None, None, :]
    w = _first(act[add[m1, m2], a2] != add[act[m1, a2], act[m2, a2]])
    if w:
        return AxiomVerdict(False, "distributivity", w, "(m+n)a != ma+na")
    w = _first(act[act[m, a], b] != act[m, r.mul[a, b]])
    if w:
        return AxiomVerdict(False, "associativity", w, "(ma)b != m(ab)")
    return OK


@dataclass(frozen=True, eq=False)
class AnnihilatorSet:
    ring: RingTable
    elements: frozenset[int]
    source: str

    def as_ideal(self) -> RightIdeal:
        return RightIdeal(self.ring, self.elements)

    def sorted(self) -> list[int]:
        return sorted(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def element_annihilator(module: ModuleTable, m: int) -> frozenset[int]:
    """r_R(m)."""
    return frozenset(int(a) for a in np.flatnonzero(module.action[m] == module.zero))


def cyclic_annihilator(module: ModuleTable, m: int) -> frozenset[int]:
    """r_R(mR) = {a : (mr)a = 0 for all r}."""
    orbit = module.action[m]
    return frozenset(int(a) for a in np.flatnonzero(np.all(module.action[orbit] == module.zero, axis=0)))


def set_annihilator(module: ModuleTable, xs: Iterable[int]) -> frozenset[int]:
    xs = sorted(set(xs))
    if not xs:
        return frozenset(module.ring.elements)
    return frozenset(int(a) for a in np.flatnonzero(np.all(module.action[xs] == module.zero, axis=0)))


def annihilator(module: ModuleTable, xs: Iterable[int], mode: str = "set") -> AnnihilatorSet:
    xs = sorted(set(xs))
    if mode == "set":
        return AnnihilatorSet(module.ring, set_annihilator(module, xs), f"set {xs}")
    if mode in ("cyclic", "cyclic-submodule"):
        if len(xs) != 1:
            raise ContractViolation(f"cyclic-submodule mode needs exactly one element, got {xs}")
        (m,) = xs
        orbit = module.orbit(m)
        # mR is additively closed by right distributivity
        assert all(int(module.add[u, v]) in orbit for u in orbit for v in orbit), "mR not additively closed"
        ann = AnnihilatorSet(module.ring, cyclic_annihilator(module, m), f"cyclic {m}R")
        assert ann.as_ideal().is_right_ideal()
        return ann
    raise ContractViolation(f"unknown annihilator mode {mode!r}")


def _join(module: ModuleTable, sub: frozenset[int], m: int) -> frozenset[int]:
    # N + mR; mR is already a subgroup and N + mR is closed under the action
    orbit = module.action[m]
    return frozenset(int(v) for v in module.add[np.array(sorted(sub))[:, None], orbit[None, :]].ravel())


def submodules(module: ModuleTable) -> list[frozenset[int]]:
    """Every submodule, sorted by size then lexicographically."""
    if module.size > SUBMODULE_CAPACITY:
        raise CapacityError(
            f"submodule lattice refused: module has {module.size} elements, capacity is {SUBMODULE_CAPACITY}"
        )
    bottom = frozenset({module.zero})
    found = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for sub in frontier:
            for m in module.elements:
                if m in sub:
                    continue
                bigger = _join(module, sub, m)
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def annihilator_lattice(module: ModuleTable) -> list[AnnihilatorSet]:
    """All r_R(X) for non-empty X, as intersections of element annihilators."""
    base = {element_annihilator(module, m) for m in module.elements}
    found = set(base)
    frontier = list(base)
    while frontier:
        nxt = []
        for s in frontier:
            for t in base:
                u = s & t
                if u not in found:
                    found.add(u)
                    nxt.append(u)
        frontier = nxt
    ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
    return [AnnihilatorSet(module.ring, s, "intersection of element annihilators") for s in ordered]
