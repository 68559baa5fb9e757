"""Finite unital rings as Cayley tables over element indices 0..n-1.

Elements are plain ints.  Tables are read-only numpy arrays so a ring can be
shared freely once built; use :func:`verify_ring_axioms` before trusting one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation, MalformedInput, NotHomomorphism, NotUnital, UnsupportedOperation


def _table(values, ndim: int) -> np.ndarray:
    try:
        arr = np.array(values, dtype=np.intp)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"table is not rectangular: {exc}") from None
    if arr.ndim != ndim:
        raise MalformedInput(f"expected a {ndim}-dimensional table, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def derive_negation(add: np.ndarray, zero: int) -> np.ndarray:
    # -1 marks a missing inverse; verification reports it as an axiom failure
    neg = np.full(add.shape[0], -1, dtype=np.intp)
    for a in range(add.shape[0]):
        hits = np.flatnonzero(add[a] == zero)
        if len(hits):
            neg[a] = hits[0]
    return neg


@dataclass(frozen=True, eq=False)
class RingTable:
    add: np.ndarray
    mul: np.ndarray
    one: int
    zero: int = 0
    neg: np.ndarray = None  # type: ignore[assignment]
    name: str = "R"
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "add", _table(self.add, 2))
        object.__setattr__(self, "mul", _table(self.mul, 2))
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

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def right_multiples(self, a: int) -> frozenset[int]:
        """The set aR."""
        return frozenset(int(v) for v in self.mul[a])


@dataclass(frozen=True)
class AxiomVerdict:
    ok: bool
    axiom: str | None = None
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


OK = AxiomVerdict(True)


def check_abelian_group(add: np.ndarray, neg: np.ndarray, zero: int, prefix: str = "additive") -> AxiomVerdict:
    n = add.shape[0]
    idx = np.arange(n)
    w = _first(add[add[:, :, None], idx[None, None, :]] != add[idx[:, None, None], add[None, :, :]])
    if w:
        return AxiomVerdict(False, f"{prefix} associativity", w, "(a+b)+c != a+(b+c)")
    w = _first(add != add.T)
    if w:
        return AxiomVerdict(False, f"{prefix} commutativity", w, "a+b != b+a")
    w = _first((add[zero, :] != idx) | (add[:, zero] != idx))
    if w:
        return AxiomVerdict(False, f"{prefix} identity", w, "0+a != a")
    if np.any(neg < 0) or np.any(neg >= n):
        return AxiomVerdict(False, f"{prefix} inverse", _first((neg < 0) | (neg >= n)), "no negative")
    w = _first(add[idx, neg] != zero)
    if w:
        return AxiomVerdict(False, f"{prefix} inverse", w, "a+(-a) != 0")
    return OK


def _check_shapes(ring: RingTable) -> None:
    n = ring.add.shape[0]
    if n == 0:
        raise MalformedInput("ring must have at least one element")
    for label, tab, shape in (("add", ring.add, (n, n)), ("mul", ring.mul, (n, n)), ("neg", ring.neg, (n,))):
        if tab.shape != shape:
            raise MalformedInput(f"{label} table has shape {tab.shape}, expected {shape}")
    for label, tab in (("add", ring.add), ("mul", ring.mul)):
        if tab.min() < 0 or tab.max() >= n:
            raise MalformedInput(f"{label} table has entries outside 0..{n - 1}")
    for label, v in (("one", ring.one), ("zero", ring.zero)):
        if not 0 <= v < n:
            raise MalformedInput(f"{label}={v} outside 0..{n - 1}")


def verify_ring_axioms(candidate: RingTable) -> AxiomVerdict:
    """Check every ring axiom; the verdict names the first failure and its least witness."""
    _check_shapes(candidate)
    verdict = check_abelian_group(candidate.add, candidate.neg, candidate.zero)
    if not verdict:
        return verdict
    add, mul, one = candidate.add, candidate.mul, candidate.one
    n = candidate.size
    idx = np.arange(n)
    w = _first((mul[one, :] != idx) | (mul[:, one] != idx))
    if w:
        return AxiomVerdict(False, "multiplicative identity", w, "1a != a or a1 != a")
    a, b, c = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    w = _first(mul[a, add[b, c]] != add[mul[a, b], mul[a, c]])
    if w:
        return AxiomVerdict(False, "distributivity", w, "a(b+c) != ab+ac")
    w = _first(mul[add[a, b], c] != add[mul[a, c], mul[b, c]])
    if w:
        return AxiomVerdict(False, "distributivity", w, "(a+b)c != ac+bc")
    w = _first(mul[mul[a, b], c] != mul[a, mul[b, c]])
    if w:
        return AxiomVerdict(False, "multiplicative associativity", w, "(ab)c != a(bc)")
    if n > 1 and candidate.zero == one:
        return AxiomVerdict(False, "nontriviality", (one,), "zero == one in a ring with more than one element")
    return OK


@dataclass(frozen=True, eq=False)
class Endomorphism:
    """A verified unital endomorphism together with its iterate schedule.

    ``preperiod`` and ``period`` are the least (mu, p) with sigma^(mu+p) == sigma^mu.
    """

    ring: RingTable
    map: np.ndarray
    preperiod: int
    period: int
    name: str = "sigma"
    _powers: tuple[np.ndarray, ...] = field(default=(), repr=False)

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    @property
    def schedule(self) -> tuple[int, int]:
        return self.preperiod, self.period

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.map, np.arange(self.ring.size)))

    def is_automorphism(self) -> bool:
        return len(np.unique(self.map)) == self.ring.size

    def power(self, k: int) -> np.ndarray:
        """sigma^k as an index array; negative k needs an automorphism."""
        if k < 0:
            if not self.is_automorphism():
                raise UnsupportedOperation(f"{self.name} is not an automorphism; sigma^{k} undefined")
            return self._powers[k % self.period]
        if k < len(self._powers):
            return self._powers[k]
        mu, p = self.preperiod, self.period
        return self._powers[mu + (k - mu) % p]

    def apply(self, k: int, a: int) -> int:
        return int(self.power(k)[a])

    def same_map(self, other: "Endomorphism") -> bool:
        return self.ring is other.ring and bool(np.array_equal(self.map, other.map))


def iterate_schedule(mapping: np.ndarray) -> tuple[int, int, tuple[np.ndarray, ...]]:
    current = np.arange(len(mapping), dtype=np.intp)
    powers = [current]
    seen = {current.tobytes(): 0}
    while True:
        current = mapping[current]
        key = current.tobytes()
        if key in seen:
            mu = seen[key]
            return mu, len(powers) - mu, tuple(powers)
        seen[key] = len(powers)
        current.setflags(write=False)
        powers.append(current)


def verify_endomorphism(ring: RingTable, mapping: Sequence[int], name: str = "sigma") -> Endomorphism:
    """Validate ``mapping`` as a unital ring endomorphism of ``ring``.

    Raises NotUnital before looking at the other laws, then NotHomomorphism
    naming "additive" or "multiplicative" with the least witness pair.
    """
    arr = _table(mapping, 1)
    n = ring.size
    if arr.shape != (n,):
        raise MalformedInput(f"endomorphism map has length {arr.shape[0]}, ring has {n} elements")
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedInput(f"endomorphism map has entries outside 0..{n - 1}")
    if arr[ring.one] != ring.one:
        raise NotUnital(int(arr[ring.one]), ring.one)
    w = _first(arr[ring.add] != ring.add[arr[:, None], arr[None, :]])
    if w:
        raise NotHomomorphism("additive", w)
    w = _first(arr[ring.mul] != ring.mul[arr[:, None], arr[None, :]])
    if w:
        raise NotHomomorphism("multiplicative", w)
    mu, p, powers = iterate_schedule(arr)
    return Endomorphism(ring, arr, mu, p, name, powers)


def identity_endomorphism(ring: RingTable) -> Endomorphism:
    return verify_endomorphism(ring, list(range(ring.size)), "id")


def idempotents(ring: RingTable) -> tuple[int, ...]:
    idx = np.arange(ring.size)
    return tuple(int(e) for e in np.flatnonzero(ring.mul[idx, idx] == idx))


@dataclass(frozen=True, eq=False)
class RightIdeal:
    ring: RingTable
    elements: frozenset[int]

    def is_right_ideal(self) -> bool:
        r = self.ring
        if r.zero not in self.elements:
            return False
        els = sorted(self.elements)
        for a in els:
            if not set(int(v) for v in r.add[a, els]) <= self.elements:
                return False
            if not set(int(v) for v in r.mul[a]) <= self.elements:
                return False
        return True

    def __contains__(self, a: int) -> bool:
        return a in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def sorted(self) -> list[int]:
        return sorted(self.elements)


def principal_right_ideal(ring: RingTable, a: int) -> RightIdeal:
    ideal = RightIdeal(ring, ring.right_multiples(a))
    assert ideal.is_right_ideal(), f"aR is not a right ideal for a={a}"
    return ideal


def find_idempotent_generator(ideal: RightIdeal | Iterable[int], ring: RingTable | None = None) -> int | None:
    """Least idempotent e with eR equal to the ideal, or None."""
    if not isinstance(ideal, RightIdeal):
        if ring is None:
            raise ContractViolation("a bare element set needs its ring")
        ideal = RightIdeal(ring, frozenset(ideal))
    if not ideal.is_right_ideal():
        raise ContractViolation(f"{sorted(ideal.elements)} is not a right ideal")
    for e in idempotents(ideal.ring):
        if e in ideal.elements and ideal.ring.right_multiples(e) == ideal.elements:
            return e
    return None
