"""Builtin small rings, endomorphisms and modules, and endomorphism enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import CapacityError, ConfigurationError, ContractViolation, EndomorphismViolation
from .finmod import ModuleTable, regular_module, verify_module_axioms
from .finring import Endomorphism, RingTable, identity_endomorphism, verify_endomorphism, verify_ring_axioms
from .properties import Instance

ENDOMORPHISM_GUARD = 8


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    id: str
    ring: RingTable
    endomorphisms: tuple[Endomorphism, ...]
    modules: tuple[ModuleTable, ...]
    provenance: str = "builtin"

    def __post_init__(self) -> None:
        verdict = verify_ring_axioms(self.ring)
        if not verdict:
            raise ContractViolation(f"{self.id}: {verdict.axiom} fails at {verdict.witness}")
        for mod in self.modules:
            if mod.ring is not self.ring:
                raise ContractViolation(f"{self.id}: module {mod.name} is over another ring")
            verdict = verify_module_axioms(mod)
            if not verdict:
                raise ContractViolation(f"{self.id}/{mod.name}: {verdict.axiom} fails at {verdict.witness}")
        for sigma in self.endomorphisms:
            if sigma.ring is not self.ring:
                raise ContractViolation(f"{self.id}: endomorphism {sigma.name} is over another ring")
        for kind, names in (("endomorphism", [s.name for s in self.endomorphisms]), ("module", [m.name for m in self.modules])):
            if len(set(names)) != len(names):
                raise ContractViolation(f"{self.id}: duplicate {kind} names {names}")

    def endomorphism(self, name: str) -> Endomorphism:
        for s in self.endomorphisms:
            if s.name == name:
                return s
        raise ConfigurationError(f"ring {self.id} has no endomorphism {name!r}; have {[s.name for s in self.endomorphisms]}")

    def module(self, name: str) -> ModuleTable:
        for m in self.modules:
            if m.name == name:
                return m
        raise ConfigurationError(f"ring {self.id} has no module {name!r}; have {[m.name for m in self.modules]}")

    def instances(self) -> list[Instance]:
        return [
            Instance(self.ring, s, m, f"{self.id}/{s.name}/{m.name}")
            for s in self.endomorphisms
            for m in self.modules
        ]


# -- construction helpers ------------------------------------------------------


def ring_from_elements(
    name: str,
    elements: Sequence[Hashable],
    add: Callable,
    mul: Callable,
    one: Hashable,
    label: Callable[[Hashable], str] = str,
) -> RingTable:
    index = {x: i for i, x in enumerate(elements)}
    add_t = [[index[add(x, y)] for y in elements] for x in elements]
    mul_t = [[index[mul(x, y)] for y in elements] for x in elements]
    return RingTable(add_t, mul_t, index[one], index[elements[0]], name=name, labels=tuple(label(x) for x in elements))


def module_from_elements(
    name: str,
    ring: RingTable,
    ring_elements: Sequence[Hashable],
    elements: Sequence[Hashable],
    add: Callable,
    act: Callable,
    label: Callable[[Hashable], str] = str,
) -> ModuleTable:
    index = {x: i for i, x in enumerate(elements)}
    add_t = [[index[add(x, y)] for y in elements] for x in elements]
    act_t = [[index[act(x, a)] for a in ring_elements] for x in elements]
    return ModuleTable(ring, add_t, act_t, index[elements[0]], name=name, labels=tuple(label(x) for x in elements))


def endomorphism_from_function(ring: RingTable, elements: Sequence[Hashable], fn: Callable, name: str) -> Endomorphism:
    index = {x: i for i, x in enumerate(elements)}
    return verify_endomorphism(ring, [index[fn(x)] for x in elements], name)


def zn(n: int) -> RingTable:
    els = list(range(n))
    return ring_from_elements(f"z{n}", els, lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 1 % n)


def zn_quotient(ring: RingTable, n: int, k: int) -> ModuleTable:
    """Z_k as a right Z_n-module (k divides n)."""
    return module_from_elements(
        f"z{k}", ring, list(range(n)), list(range(k)), lambda x, y: (x + y) % k, lambda x, a: (x * a) % k
    )


# -- endomorphism enumeration -----------------------------------------------------


def _additive_generators(ring: RingTable) -> list[int]:
    gens: list[int] = []
    span = {ring.zero}
    for a in ring.elements:
        if a in span:
            continue
        gens.append(a)
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(ring.add[x, g])
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
    return gens


def _extend_additively(ring: RingTable, gens: list[int], images: Sequence[int]) -> list[int] | None:
    mapping = {ring.zero: ring.zero}
    frontier = [ring.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g, img in zip(gens, images):
                y = int(ring.add[x, g])
                val = int(ring.add[mapping[x], img])
                if y in mapping:
                    if mapping[y] != val:
                        return None
                else:
                    mapping[y] = val
                    nxt.append(y)
        frontier = nxt
    return [mapping[a] for a in ring.elements]


def enumerate_endomorphisms(ring: RingTable) -> list[Endomorphism]:
    """All unital endomorphisms, ordered by their index maps (identity included).

    Candidates are additive maps determined by images of an additive generating
    set; this visits exactly the additive maps among all size^size ones.
    """
    if ring.size > ENDOMORPHISM_GUARD:
        raise CapacityError(
            f"{ring.name} has {ring.size} elements; endomorphisms are enumerated only up to "
            f"{ENDOMORPHISM_GUARD} elements, supply maps explicitly"
        )
    gens = _additive_generators(ring)
    maps = set()
    for images in product(ring.elements, repeat=len(gens)):
        mapping = _extend_additively(ring, gens, images)
        if mapping is not None:
            maps.add(tuple(mapping))
    ident = tuple(ring.elements)
    found = []
    for mapping in sorted(maps, key=lambda mp: (mp != ident, mp)):
        try:
            name = "id" if mapping == ident else f"endo{len(found)}"
            found.append(verify_endomorphism(ring, mapping, name))
        except EndomorphismViolation:
            continue
    return found


def _named(endos: Iterable[Endomorphism], names: dict[tuple[int, ...], str]) -> tuple[Endomorphism, ...]:
    out = []
    for s in endos:
        key = tuple(int(v) for v in s.map)
        out.append(Endomorphism(s.ring, s.map, s.preperiod, s.period, names.get(key, s.name), s._powers))
    return tuple(out)


# -- the builtin rings ------------------------------------------------------------


def _zn_entry(n: int, quotients: Sequence[int], extra: Sequence[ModuleTable] = ()) -> CatalogEntry:
    ring = zn(n)
    mods = [regular_module(ring)] + [zn_quotient(ring, n, k) for k in quotients] + list(extra)
    return CatalogEntry(ring.name, ring, (identity_endomorphism(ring),), tuple(mods))


def _zero_ring() -> CatalogEntry:
    ring = RingTable([[0]], [[0]], 0, 0, name="z1")
    return CatalogEntry("z1", ring, (identity_endomorphism(ring),), (regular_module(ring),))


def _f4() -> CatalogEntry:
    # index bits (b1 b0) stand for b0 + b1*a with a^2 = a + 1
    def mul(x, y):
        p = 0
        for bit in range(2):
            if (y >> bit) & 1:
                p ^= x << bit
        if p & 4:
            p ^= 0b111
        return p

    els = [0, 1, 2, 3]
    ring = ring_from_elements("f4", els, lambda x, y: x ^ y, mul, 1, lambda x: ["0", "1", "a", "a+1"][x])
    frob = endomorphism_from_function(ring, els, lambda x: mul(x, x), "frobenius")
    return CatalogEntry("f4", ring, (identity_endomorphism(ring), frob), (regular_module(ring),))


def _z2_dual() -> CatalogEntry:
    # pairs (a, b) stand for a + b t with t^2 = 0
    els = [(a, b) for b in range(2) for a in range(2)]
    add = lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)
    mul = lambda x, y: ((x[0] * y[0]) % 2, (x[0] * y[1] + x[1] * y[0]) % 2)
    label = lambda x: {(0, 0): "0", (1, 0): "1", (0, 1): "t", (1, 1): "1+t"}[x]
    ring = ring_from_elements("z2t", els, add, mul, (1, 0), label)
    kill = endomorphism_from_function(ring, els, lambda x: (x[0], 0), "t0")
    residue = module_from_elements("z2", ring, els, [0, 1], lambda x, y: (x + y) % 2, lambda x, a: (x * a[0]) % 2)
    return CatalogEntry("z2t", ring, (identity_endomorphism(ring), kill), (regular_module(ring), residue))


def _z2_squared() -> CatalogEntry:
    els = [(a, b) for a in range(2) for b in range(2)]
    add = lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)
    mul = lambda x, y: (x[0] * y[0], x[1] * y[1])
    label = lambda x: f"({x[0]},{x[1]})"
    ring = ring_from_elements("z2xz2", els, add, mul, (1, 1), label)
    endos = (
        identity_endomorphism(ring),
        endomorphism_from_function(ring, els, lambda x: (x[1], x[0]), "swap"),
        endomorphism_from_function(ring, els, lambda x: (x[0], x[0]), "first"),
        endomorphism_from_function(ring, els, lambda x: (x[1], x[1]), "second"),
    )
    first = module_from_elements("proj1", ring, els, [0, 1], lambda x, y: (x + y) % 2, lambda x, a: x * a[0])
    second = module_from_elements("proj2", ring, els, [0, 1], lambda x, y: (x + y) % 2, lambda x, a: x * a[1])
    return CatalogEntry("z2xz2", ring, endos, (regular_module(ring), first, second))


def _matrices(upper: bool) -> tuple[RingTable, list]:
    if upper:
        els = [((a, b), (0, d)) for a in range(2) for b in range(2) for d in range(2)]
    else:
        els = [((a, b), (c, d)) for a in range(2) for b in range(2) for c in range(2) for d in range(2)]

    def add(x, y):
        return tuple(tuple((x[i][j] + y[i][j]) % 2 for j in range(2)) for i in range(2))

    def mul(x, y):
        return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) % 2 for j in range(2)) for i in range(2))

    label = lambda x: f"[{x[0][0]}{x[0][1]};{x[1][0]}{x[1][1]}]"
    name = "t2z2" if upper else "m2z2"
    return ring_from_elements(name, els, add, mul, ((1, 0), (0, 1)), label), els


def _row_module(ring: RingTable, els: list) -> ModuleTable:
    rows = [(u, v) for u in range(2) for v in range(2)]

    def act(x, a):
        return ((x[0] * a[0][0] + x[1] * a[1][0]) % 2, (x[0] * a[0][1] + x[1] * a[1][1]) % 2)

    return module_from_elements(
        "row", ring, els, rows, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), act, lambda x: f"({x[0]},{x[1]})"
    )


def _upper_triangular() -> CatalogEntry:
    ring, els = _matrices(upper=True)
    endos = enumerate_endomorphisms(ring)
    names = {}
    idx = {x: i for i, x in enumerate(els)}
    conj = lambda x: ((x[0][0], (x[0][1] + x[0][0] + x[1][1]) % 2), (0, x[1][1]))
    names[tuple(idx[conj(x)] for x in els)] = "inner"
    names[tuple(idx[((x[0][0], 0), (0, x[0][0]))] for x in els)] = "diag11"
    names[tuple(idx[((x[1][1], 0), (0, x[1][1]))] for x in els)] = "diag22"
    top = module_from_elements("top", ring, els, [0, 1], lambda x, y: (x + y) % 2, lambda x, a: x * a[0][0])
    bottom = module_from_elements("bottom", ring, els, [0, 1], lambda x, y: (x + y) % 2, lambda x, a: x * a[1][1])
    mods = (regular_module(ring), _row_module(ring, els), top, bottom)
    return CatalogEntry("t2z2", ring, _named(endos, names), mods)


def _full_matrices() -> CatalogEntry:
    ring, els = _matrices(upper=False)
    return CatalogEntry("m2z2", ring, (identity_endomorphism(ring),), (regular_module(ring), _row_module(ring, els)))


def _zero_module_over_z2(ring: RingTable) -> ModuleTable:
    return ModuleTable(ring, [[0]], [[0] * ring.size], 0, name="zero")


@lru_cache(maxsize=None)
def _builtin() -> tuple[CatalogEntry, ...]:
    z2 = zn(2)
    entries = [
        _zero_ring(),
        CatalogEntry("z2", z2, (identity_endomorphism(z2),), (regular_module(z2), _zero_module_over_z2(z2))),
        _zn_entry(3, ()),
        _zn_entry(4, (2,)),
        _zn_entry(6, (2, 3)),
        _zn_entry(8, (2, 4)),
        _zn_entry(12, (2, 3, 4, 6)),
        _f4(),
        _z2_dual(),
        _z2_squared(),
        _upper_triangular(),
        _full_matrices(),
    ]
    return tuple(entries)


def builtin_catalog() -> list[CatalogEntry]:
    """The builtin entries, constructed deterministically and verified at load time."""
    return list(_builtin())


def find_entry(entries: Iterable[CatalogEntry], ring_id: str) -> CatalogEntry:
    for e in entries:
        if e.id == ring_id:
            return e
    raise ConfigurationError(f"no ring {ring_id!r} in the catalog")


def all_instances(entries: Iterable[CatalogEntry]) -> list[Instance]:
    return [inst for e in entries for inst in e.instances()]


def select_instance(entries: Sequence[CatalogEntry], ring_id: str, sigma: str = "id", module: str = "regular") -> Instance:
    entry = find_entry(entries, ring_id)
    return Instance(entry.ring, entry.endomorphism(sigma), entry.module(module), f"{entry.id}/{sigma}/{module}")
