"""Decision procedures for module conditions over finite instances.

Element-level conditions (C1, C2, semicommutativity, reducedness, ...) and the
annihilator conditions on M itself (p.p., p.q.-Baer, quasi-Baer, Baer) are
decided exactly by exhaustion.  Conditions on the extensions M[x;sigma],
M[x,x^-1;sigma] and M[[x;sigma]] quantify over infinite sets and are checked up
to a degree bound D:

* "for all g in the extension ring" is reduced to monomials b x^k with k from
  :func:`monomial_test_schedule` (exact, by linearity in g);
* candidate annihilator elements phi are enumerated up to degree D;
* idempotent witnesses are constant (elements of R).

A "fails" verdict on an extension is only issued with a certificate that holds
at every degree: for a monomial m x^s the annihilator is coefficientwise, I[x],
and a generator E of I[x] would make its constant term E_0 a generator of I.
Everything else that cannot be settled is reported as inconclusive.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Any, Callable

import numpy as np

from .errors import CapacityError, ConfigurationError, ContractViolation, UnsupportedOperation
from .finmod import (
    ModuleTable,
    annihilator_lattice,
    cyclic_annihilator,
    element_annihilator,
    set_annihilator,
    submodules,
)
from .finring import Endomorphism, RingTable, find_idempotent_generator, idempotents
from .skewpoly import (
    BatchArithmetic,
    SkewModulePoly,
    SkewPoly,
    all_coefficient_vectors,
    module_action,
    monomial_test_schedule,
)

DEFAULT_BUDGET = 10**8
DEFAULT_DEGREE = 2

ELEMENTWISE = ("c1", "c2", "compatible", "semicommutative", "sigma-semicommutative", "reduced", "sigma-reduced", "star")
ANNIHILATOR_KINDS = ("pp", "pq-baer", "quasi-baer", "baer")
EXTENSIONS = ("poly", "laurent", "series")
EXTENSION_KINDS = ("pp", "pq-baer", "semicommutative")
STRUCTURAL = ("sigma-identity", "sigma-automorphism", "regular-module", "sigma-idempotent-invariant")

BASE_PROPERTIES = ELEMENTWISE + ANNIHILATOR_KINDS + ("sigma-skew-armendariz",)
EXTENSION_PROPERTIES = tuple(f"{ext}-{kind}" for ext in EXTENSIONS for kind in EXTENSION_KINDS)
ALL_PROPERTIES = BASE_PROPERTIES + EXTENSION_PROPERTIES + STRUCTURAL

SERIES_CAVEAT = (
    "power series are handled only through coefficients up to x^D; "
    "this does not certify the statement over genuine power series"
)


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("SKEWLAB_BUDGET")
    return int(raw) if raw else default


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HOLDS_UP_TO = "holds-up-to-degree-D"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, eq=False)
class Instance:
    ring: RingTable
    sigma: Endomorphism
    module: ModuleTable
    id: str = "instance"

    def __post_init__(self) -> None:
        if self.sigma.ring is not self.ring:
            raise ContractViolation(f"{self.id}: sigma is not an endomorphism of this ring")
        if self.module.ring is not self.ring:
            raise ContractViolation(f"{self.id}: module is over a different ring")


@dataclass(frozen=True)
class PropertyReport:
    property: str
    verdict: Verdict
    witness: dict[str, Any] | None = None
    degree_bound: int | None = None
    detail: str = ""
    notes: tuple[str, ...] = ()
    data: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verdict is Verdict.FAILS and self.witness is None:
            raise ContractViolation(f"{self.property}: a failing verdict needs a witness")
        if self.verdict is Verdict.HOLDS_UP_TO and self.degree_bound is None:
            raise ContractViolation(f"{self.property}: bounded verdict needs its degree bound")

    @property
    def truth(self) -> bool | None:
        if self.verdict in (Verdict.HOLDS, Verdict.HOLDS_UP_TO):
            return True
        if self.verdict is Verdict.FAILS:
            return False
        return None

    def verdict_text(self) -> str:
        if self.verdict is Verdict.HOLDS_UP_TO:
            return f"holds-up-to-degree-{self.degree_bound}"
        return self.verdict.value

    def to_dict(self) -> dict[str, Any]:
        return {
            "property": self.property,
            "verdict": self.verdict_text(),
            "witness": self.witness,
            "degree_bound": self.degree_bound,
            "detail": self.detail,
            "notes": list(self.notes),
            "data": self.data,
        }


def _least(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def _holds(prop: str, detail: str = "", **data) -> PropertyReport:
    return PropertyReport(prop, Verdict.HOLDS, detail=detail, data=data)


def _fails(prop: str, witness: dict[str, Any], detail: str) -> PropertyReport:
    return PropertyReport(prop, Verdict.FAILS, witness=witness, detail=detail)


# -- element-level conditions -------------------------------------------------


def _orbit_matrix(module: ModuleTable) -> np.ndarray:
    """in_mr[m, x]: x lies in mR."""
    n = module.size
    out = np.zeros((n, n), dtype=bool)
    out[np.arange(n)[:, None], module.action] = True
    return out


def _column_matrix(module: ModuleTable) -> np.ndarray:
    """in_ma[a, x]: x lies in Ma."""
    out = np.zeros((module.ring.size, module.size), dtype=bool)
    out[np.arange(module.ring.size)[None, :], module.action] = True
    return out


def _mr_meets_ma(module: ModuleTable) -> np.ndarray:
    """meet[m, a, x]: x is a nonzero element of mR ∩ Ma."""
    meet = _orbit_matrix(module)[:, None, :] & _column_matrix(module)[None, :, :]
    meet[:, :, module.zero] = False
    return meet


def check_elementwise_condition(inst: Instance, cond: str) -> PropertyReport:
    """Decide one element-level condition by scanning all (m, a) and, where needed, r."""
    mod, sigma, ring = inst.module, inst.sigma, inst.ring
    act, z = mod.action, mod.zero
    kills = act == z  # ma = 0
    twisted = act[:, sigma.map]  # m sigma(a)
    twisted_kills = twisted == z

    if cond == "c1":
        w = _least(kills & ~twisted_kills)
        if w:
            return _fails(cond, {"m": w[0], "a": w[1]}, "ma = 0 but m sigma(a) != 0")
        return _holds(cond)
    if cond == "c2":
        w = _least(twisted_kills & ~kills)
        if w:
            return _fails(cond, {"m": w[0], "a": w[1]}, "m sigma(a) = 0 but ma != 0")
        return _holds(cond)
    if cond == "compatible":
        w = _least(kills != twisted_kills)
        if w:
            m, a = w
            side = "ma = 0 but m sigma(a) != 0" if kills[m, a] else "m sigma(a) = 0 but ma != 0"
            return _fails(cond, {"m": m, "a": a}, side)
        return _holds(cond)
    if cond in ("semicommutative", "sigma-semicommutative"):
        # through[m, r, a] = (mr)a
        through = act[act]
        if cond == "sigma-semicommutative":
            through = through[:, :, sigma.map]
        bad = kills[:, :, None] & (through.transpose(0, 2, 1) != z)
        w = _least(bad)
        if w:
            m, a, r = w
            what = "mRa" if cond == "semicommutative" else "mR sigma(a)"
            return _fails(cond, {"m": m, "a": a, "r": r}, f"ma = 0 but {what} != 0")
        return _holds(cond)
    if cond == "reduced":
        sq = ring.mul[np.arange(ring.size), np.arange(ring.size)]
        meet = _mr_meets_ma(mod)
        bad = (act[:, sq] == z)[:, :, None] & meet
        w = _least(bad)
        if w:
            return _fails(cond, {"m": w[0], "a": w[1], "x": w[2]}, "ma^2 = 0 but x in mR ∩ Ma is nonzero")
        return _holds(cond)
    if cond == "sigma-reduced":
        bad = kills[:, :, None] & _mr_meets_ma(mod)
        w = _least(bad)
        if w:
            return _fails(
                cond, {"clause": 1, "m": w[0], "a": w[1], "x": w[2]}, "ma = 0 but x in mR ∩ Ma is nonzero"
            )
        comp = check_elementwise_condition(inst, "compatible")
        if comp.verdict is Verdict.FAILS:
            return _fails(cond, {"clause": 2, **comp.witness}, comp.detail)
        return _holds(cond)
    if cond == "star":
        again = act[twisted, np.arange(ring.size)[None, :]]  # (m sigma(a)) a
        w = _least((again == z) & ~twisted_kills)
        if w:
            return _fails(cond, {"m": w[0], "a": w[1]}, "m sigma(a) a = 0 but m sigma(a) != 0")
        return _holds(cond)
    raise ConfigurationError(f"unknown condition {cond!r}; expected one of {', '.join(ELEMENTWISE)}")


def check_idempotent_invariance(inst: Instance) -> PropertyReport:
    """me = m sigma(e) for every m and every idempotent e."""
    es = np.array(idempotents(inst.ring))
    act = inst.module.action
    w = _least(act[:, es] != act[:, inst.sigma.map[es]])
    prop = "sigma-idempotent-invariant"
    if w:
        m, e = w[0], int(es[w[1]])
        return _fails(prop, {"m": m, "e": e}, "me != m sigma(e)")
    return _holds(prop)


# -- annihilator conditions on M ----------------------------------------------


def _annihilators_for(inst: Instance, kind: str) -> list[tuple[Any, frozenset[int]]]:
    mod = inst.module
    if kind == "pp":
        return [(m, element_annihilator(mod, m)) for m in mod.elements]
    if kind == "pq-baer":
        return [(m, cyclic_annihilator(mod, m)) for m in mod.elements]
    if kind == "quasi-baer":
        return [(sorted(n), set_annihilator(mod, n)) for n in submodules(mod)]
    if kind == "baer":
        return [(None, ann.elements) for ann in annihilator_lattice(mod)]
    raise ConfigurationError(f"unknown annihilator property {kind!r}")


def check_annihilator_property(inst: Instance, kind: str) -> PropertyReport:
    """Does every required annihilator have the form eR with e idempotent?"""
    try:
        anns = _annihilators_for(inst, kind)
    except CapacityError as exc:
        return PropertyReport(kind, Verdict.INCONCLUSIVE, detail=str(exc))
    generators = []
    for source, ann in anns:
        e = find_idempotent_generator(ann, inst.ring)
        if e is None:
            key = {"pp": "m", "pq-baer": "m", "quasi-baer": "submodule", "baer": "annihilator"}[kind]
            witness = {"annihilator": sorted(ann)}
            if source is not None:
                witness = {key: source, **witness}
            return _fails(kind, witness, "annihilator has no idempotent generator")
        generators.append([source, e] if source is not None else [sorted(ann), e])
    return _holds(kind, generators=generators)


# -- constructive idempotent witnesses ----------------------------------------


@dataclass(frozen=True)
class WitnessResult:
    e: int | None
    reason: str = ""
    failing_index: int | None = None
    factors: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.e is not None


def _product(ring: RingTable, factors) -> int:
    return reduce(lambda x, y: int(ring.mul[x, y]), factors, ring.one)


def _constructive(inst: Instance, coeffs, ann_fn: Callable[[ModuleTable, int], frozenset[int]], what: str):
    ring = inst.ring
    factors = []
    for i, mi in enumerate(coeffs):
        ann = ann_fn(inst.module, int(mi))
        e = find_idempotent_generator(ann, ring)
        if e is None:
            return WitnessResult(None, f"{what} of coefficient {i} has no idempotent generator", i)
        factors.append(e)
    return WitnessResult(_product(ring, factors), "", None, tuple(factors))


def pq_baer_witness(inst: Instance, m: SkewModulePoly | tuple[int, ...]) -> WitnessResult:
    """e = e_0 e_1 ... e_n with e_i R = r_R(m_i R), checked against the intersection."""
    coeffs = m.coeffs if isinstance(m, SkewModulePoly) else tuple(m)
    res = _constructive(inst, coeffs, cyclic_annihilator, "r(m_i R)")
    if not res:
        return res
    ring = inst.ring
    target = frozenset(ring.elements)
    for mi in coeffs:
        target &= cyclic_annihilator(inst.module, int(mi))
    e = res.e
    if int(ring.mul[e, e]) != e or ring.right_multiples(e) != target:
        # r(m_i R) are two-sided ideals, so this should be unreachable
        return WitnessResult(None, "soundness alarm: eR differs from the intersection of r(m_i R)", None, res.factors)
    return res


def pp_witness(inst: Instance, m: SkewModulePoly | tuple[int, ...]) -> WitnessResult:
    """e = e_0 ... e_n with e_i R = r_R(m_i); validity is checked by the caller."""
    coeffs = m.coeffs if isinstance(m, SkewModulePoly) else tuple(m)
    return _constructive(inst, coeffs, element_annihilator, "r(m_i)")


# -- bounded checks on extensions ----------------------------------------------


def _cost(inst: Instance, degree: int) -> int:
    return (inst.module.size ** (degree + 1)) * (inst.ring.size ** (degree + 1))


def _over_budget(inst: Instance, prop: str, degree: int, budget: int) -> PropertyReport | None:
    cost = _cost(inst, degree)
    if cost > budget:
        arith = f"{inst.module.size}^{degree + 1} * {inst.ring.size}^{degree + 1} = {cost} pairs > budget {budget}"
        return PropertyReport(prop, Verdict.INCONCLUSIVE, degree_bound=degree, detail=f"enumeration budget exceeded: {arith}")
    return None


class _Extension:
    """Shared enumeration state for one (instance, extension, degree)."""

    def __init__(self, inst: Instance, ext: str, degree: int):
        if ext not in EXTENSIONS:
            raise ConfigurationError(f"unknown extension {ext!r}")
        if ext == "laurent" and not inst.sigma.is_automorphism():
            raise UnsupportedOperation(f"{inst.sigma.name} is not an automorphism; no Laurent extension")
        self.inst = inst
        self.ext = ext
        self.degree = degree
        self.length = degree + 1
        self.offset = -(degree // 2) if ext == "laurent" else 0
        self.batch = BatchArithmetic(inst.module, inst.sigma)
        self.mvecs = all_coefficient_vectors(inst.module.size, self.length)
        self.rvecs = all_coefficient_vectors(inst.ring.size, self.length)
        mu, p = inst.sigma.schedule
        if ext == "laurent":
            self.exponents = tuple(range(-p, p))
        else:
            self.exponents = monomial_test_schedule(inst.sigma)
        self._mask: np.ndarray | None = None

    @property
    def mask(self) -> np.ndarray:
        """mask[i, j]: mvecs[i] * rvecs[j] == 0."""
        if self._mask is None:
            self._mask = self.batch.zero_mask(self.mvecs, self.offset, self.rvecs, self.offset)
        return self._mask

    def poly_repr(self, vec) -> dict[str, Any]:
        return {"coeffs": [int(c) for c in vec], "offset": self.offset}

    def kills_all_multiples(self, m: np.ndarray, phis: np.ndarray) -> np.ndarray:
        """For each phi: m(x) (b x^k) phi(x) == 0 for all b and all scheduled k."""
        keep = np.ones(len(phis), dtype=bool)
        for k in self.exponents:
            if not keep.any():
                break
            shifted = self.batch.shifted_by_monomials(m, self.offset, k)
            zero = self.batch.zero_mask(shifted, self.offset + k, phis, self.offset)
            keep &= zero.all(axis=0)
        return keep

    def coefficient_ideal(self, kind: str, c: int, s: int) -> frozenset[int]:
        """I with r(c x^s ...) = I[x]: the annihilator of a monomial is coefficientwise."""
        inst = self.inst
        act, z = inst.module.action, inst.module.zero
        s_pow = inst.sigma.power(s)
        if kind == "pp":
            return frozenset(int(a) for a in np.flatnonzero(act[c, s_pow] == z))
        ok = np.ones(inst.ring.size, dtype=bool)
        row = act[c]
        for k in self.exponents:
            t_pow = inst.sigma.power(s + k)
            # c sigma^s(b) sigma^(s+k)(a) for all b
            ok &= np.all(act[row[s_pow][:, None], t_pow[None, :]] == z, axis=0)
        return frozenset(int(a) for a in np.flatnonzero(ok))


def _monomial(vec: np.ndarray, zero: int) -> tuple[int, int] | None:
    nz = np.flatnonzero(vec != zero)
    if len(nz) == 1:
        return int(vec[nz[0]]), int(nz[0])
    return None


def _annihilator_generated(ext_state: _Extension, kind: str, prop: str) -> PropertyReport:
    inst, ring = ext_state.inst, ext_state.inst.ring
    mzero = inst.module.zero
    ids = idempotents(ring)
    one_phi = np.zeros((1, 1), dtype=np.intp)
    n_constructive = n_searched = 0
    undecided = None
    mask = ext_state.mask
    for idx, m in enumerate(ext_state.mvecs):
        phis = ext_state.rvecs[mask[idx]]
        if kind == "pq-baer":
            phis = phis[ext_state.kills_all_multiples(m, phis)]

        def works(e: int) -> bool:
            one_phi[0, 0] = e
            if kind == "pq-baer":
                if not ext_state.kills_all_multiples(m, one_phi).all():
                    return False
            elif not ext_state.batch.zero_mask(m[None, :], ext_state.offset, one_phi, 0).all():
                return False
            return bool(np.all(ring.mul[e][phis] == phis))

        built = pq_baer_witness(inst, tuple(m)) if kind == "pq-baer" else pp_witness(inst, tuple(m))
        if built and works(built.e):
            n_constructive += 1
            continue
        found = next((e for e in ids if works(e)), None)
        if found is not None:
            n_searched += 1
            continue
        mono = _monomial(m, mzero)
        if mono is not None:
            c, pos = mono
            ideal = ext_state.coefficient_ideal(kind, c, ext_state.offset + pos)
            if find_idempotent_generator(ideal, ring) is None:
                witness = {"m": ext_state.poly_repr(m), "coefficient_ideal": sorted(ideal)}
                return _fails(
                    prop,
                    witness,
                    "annihilator of a monomial is I[x] with I lacking an idempotent generator",
                )
        if undecided is None:
            undecided = m
    notes = (SERIES_CAVEAT,) if ext_state.ext == "series" else ()
    if undecided is not None:
        return PropertyReport(
            prop,
            Verdict.INCONCLUSIVE,
            degree_bound=ext_state.degree,
            detail="no constant idempotent witness and no degree-independent counterexample",
            notes=notes,
            data={"first_undecided": ext_state.poly_repr(undecided)},
        )
    return PropertyReport(
        prop,
        Verdict.HOLDS_UP_TO,
        degree_bound=ext_state.degree,
        detail="constant idempotent witness found for every element",
        notes=notes,
        data={"elements": len(ext_state.mvecs), "constructive": n_constructive, "searched": n_searched},
    )


def _extension_semicommutative(ext_state: _Extension, prop: str) -> PropertyReport:
    batch, off = ext_state.batch, ext_state.offset
    truncated = ext_state.ext == "series"
    degree = ext_state.degree
    if truncated:
        mask = batch.zero_mask(ext_state.mvecs, 0, ext_state.rvecs, 0, max_exponent=degree)
        exponents = tuple(range(degree + 1))
    else:
        mask = ext_state.mask
        exponents = ext_state.exponents
    for idx, m in enumerate(ext_state.mvecs):
        fs = ext_state.rvecs[mask[idx]]
        if len(fs) == 0:
            continue
        bad = []
        for k in exponents:
            shifted = batch.shifted_by_monomials(m, off, k)
            cap = degree if truncated else None
            bad.append(~batch.zero_mask(shifted, off + k, fs, off, max_exponent=cap))
        bad = np.stack(bad)  # (k, b, f)
        if bad.any():
            f_i, b, k_i = _least(bad.transpose(2, 1, 0))
            witness = {
                "m": ext_state.poly_repr(m),
                "f": ext_state.poly_repr(fs[f_i]),
                "b": int(b),
                "k": int(exponents[k_i]),
            }
            return PropertyReport(
                prop, Verdict.FAILS, witness, degree, "m(x)f(x) = 0 but m(x) (b x^k) f(x) != 0",
                notes=(SERIES_CAVEAT, "computed modulo x^(D+1)") if truncated else (),
            )
    notes = (SERIES_CAVEAT, "computed modulo x^(D+1)") if truncated else ()
    return PropertyReport(prop, Verdict.HOLDS_UP_TO, degree_bound=degree, notes=notes)


def check_extension_property(
    inst: Instance, ext: str, kind: str, degree: int = DEFAULT_DEGREE, budget: int = DEFAULT_BUDGET,
    _state: _Extension | None = None,
) -> PropertyReport:
    prop = f"{ext}-{kind}"
    if kind not in EXTENSION_KINDS:
        raise ConfigurationError(f"unknown extension property kind {kind!r}")
    if degree < 0:
        raise ContractViolation("degree bound must be non-negative")
    state = _state or _Extension(inst, ext, degree)
    over = _over_budget(inst, prop, degree, budget)
    if over:
        return over
    if kind == "semicommutative":
        return _extension_semicommutative(state, prop)
    return _annihilator_generated(state, kind, prop)


def check_skew_armendariz(
    inst: Instance, degree: int = DEFAULT_DEGREE, budget: int = DEFAULT_BUDGET, _state: _Extension | None = None
) -> PropertyReport:
    """m(x)f(x) = 0 forces m_i sigma^i(a_j) = 0, over all pairs of degree <= D."""
    prop = "sigma-skew-armendariz"
    over = _over_budget(inst, prop, degree, budget)
    if over:
        return over
    state = _state or _Extension(inst, "poly", degree)
    mask = state.mask
    act, z, sigma = inst.module.action, inst.module.zero, inst.sigma
    mv, rv = state.mvecs, state.rvecs
    length = state.length
    rows = max(1, (1 << 22) // max(len(rv), 1))
    for s in range(0, len(mv), rows):
        blk = mv[s : s + rows]
        sub = mask[s : s + rows]
        cross_bad = np.zeros(sub.shape + (length, length), dtype=bool)
        for i in range(length):
            twisted = sigma.power(i)[rv]
            for j in range(length):
                cross_bad[:, :, i, j] = act[blk[:, i][:, None], twisted[:, j][None, :]] != z
        cross_bad &= sub[:, :, None, None]
        w = _least(cross_bad)
        if w:
            mi, fi, i, j = w
            witness = {
                "m": state.poly_repr(mv[s + mi]),
                "f": state.poly_repr(rv[fi]),
                "i": i,
                "j": j,
            }
            return PropertyReport(prop, Verdict.FAILS, witness, degree, "m(x)f(x) = 0 but m_i sigma^i(a_j) != 0")
    return PropertyReport(prop, Verdict.HOLDS_UP_TO, degree_bound=degree)


# -- structural predicates -----------------------------------------------------


def check_structural(inst: Instance, prop: str) -> PropertyReport:
    if prop == "sigma-idempotent-invariant":
        return check_idempotent_invariance(inst)
    if prop == "sigma-identity":
        ok = inst.sigma.is_identity()
        witness = None if ok else {"a": int(np.flatnonzero(inst.sigma.map != np.arange(inst.ring.size))[0])}
    elif prop == "sigma-automorphism":
        ok = inst.sigma.is_automorphism()
        witness = None if ok else {"map": [int(v) for v in inst.sigma.map]}
    elif prop == "regular-module":
        ok = inst.module.is_regular()
        witness = None if ok else {"module": inst.module.name}
    else:
        raise ConfigurationError(f"unknown structural predicate {prop!r}")
    return _holds(prop) if ok else _fails(prop, witness, f"{prop} is false")


# -- cached evaluation -----------------------------------------------------------


def split_property(prop: str) -> tuple[str | None, str]:
    for ext in EXTENSIONS:
        if prop.startswith(ext + "-") and prop[len(ext) + 1 :] in EXTENSION_KINDS:
            return ext, prop[len(ext) + 1 :]
    return None, prop


def is_degree_bounded(prop: str) -> bool:
    return prop == "sigma-skew-armendariz" or split_property(prop)[0] is not None


class Evaluator:
    """Evaluates property ids on one instance, caching reports and enumeration state."""

    def __init__(self, inst: Instance, budget: int = DEFAULT_BUDGET):
        self.inst = inst
        self.budget = budget
        self._reports: dict[tuple[str, int | None], PropertyReport] = {}
        self._states: dict[tuple[str, int], _Extension] = {}

    def _state(self, ext: str, degree: int) -> _Extension:
        key = (ext, degree)
        if key not in self._states:
            self._states[key] = _Extension(self.inst, ext, degree)
        return self._states[key]

    def check(self, prop: str, degree: int = DEFAULT_DEGREE) -> PropertyReport:
        if prop not in ALL_PROPERTIES:
            raise ConfigurationError(f"unknown property {prop!r}; valid ids: {', '.join(ALL_PROPERTIES)}")
        key = (prop, degree if is_degree_bounded(prop) else None)
        if key not in self._reports:
            self._reports[key] = self._compute(prop, degree)
        return self._reports[key]

    def _compute(self, prop: str, degree: int) -> PropertyReport:
        inst = self.inst
        if prop in ELEMENTWISE:
            return check_elementwise_condition(inst, prop)
        if prop in ANNIHILATOR_KINDS:
            return check_annihilator_property(inst, prop)
        if prop in STRUCTURAL:
            return check_structural(inst, prop)
        if prop == "sigma-skew-armendariz":
            over = _over_budget(inst, prop, degree, self.budget)
            if over:
                return over
            return check_skew_armendariz(inst, degree, self.budget, self._state("poly", degree))
        ext, kind = split_property(prop)
        over = _over_budget(inst, prop, degree, self.budget)
        if over:
            return over
        if ext == "series" and kind != "semicommutative":
            # on coefficient vectors up to x^D the series products are the
            # polynomial ones, so the bounded computation is literally shared
            base = self.check(f"poly-{kind}", degree)
            return PropertyReport(
                prop, base.verdict, base.witness, base.degree_bound, base.detail,
                base.notes + (SERIES_CAVEAT,), base.data,
            )
        return check_extension_property(inst, ext, kind, degree, self.budget, self._state(ext, degree))


def check_property(inst: Instance, prop: str, degree: int = DEFAULT_DEGREE, budget: int = DEFAULT_BUDGET) -> PropertyReport:
    return Evaluator(inst, budget).check(prop, degree)


# -- replay -------------------------------------------------------------------


def _poly(inst: Instance, rep: dict[str, Any], module: bool):
    coeffs = tuple(rep["coeffs"])
    if module:
        return SkewModulePoly(inst.module, inst.sigma, coeffs)
    return SkewPoly(inst.sigma, coeffs)


def replay_failure(inst: Instance, report: PropertyReport) -> bool:
    """Re-check a failing report's witness with the scalar reference arithmetic."""
    if report.verdict is not Verdict.FAILS:
        raise ContractViolation("only failing reports carry a replayable witness")
    w, prop = report.witness, report.property
    mod, sigma, ring = inst.module, inst.sigma, inst.ring
    act, z = mod.action, mod.zero
    if prop == "c1":
        return act[w["m"], w["a"]] == z and act[w["m"], sigma(w["a"])] != z
    if prop == "c2":
        return act[w["m"], sigma(w["a"])] == z and act[w["m"], w["a"]] != z
    if prop == "compatible":
        return (act[w["m"], w["a"]] == z) != (act[w["m"], sigma(w["a"])] == z)
    if prop == "semicommutative":
        return act[w["m"], w["a"]] == z and act[act[w["m"], w["r"]], w["a"]] != z
    if prop == "sigma-semicommutative":
        return act[w["m"], w["a"]] == z and act[act[w["m"], w["r"]], sigma(w["a"])] != z
    if prop in ("reduced", "sigma-reduced") and w.get("clause", 1) == 1:
        a = w["a"]
        trigger = ring.mul[a, a] if prop == "reduced" else a
        in_mr = w["x"] in mod.orbit(w["m"])
        in_ma = w["x"] in {int(act[n, a]) for n in mod.elements}
        return act[w["m"], trigger] == z and in_mr and in_ma and w["x"] != z
    if prop == "sigma-reduced":
        return (act[w["m"], w["a"]] == z) != (act[w["m"], sigma(w["a"])] == z)
    if prop == "star":
        t = act[w["m"], sigma(w["a"])]
        return act[t, w["a"]] == z and t != z
    if prop == "sigma-idempotent-invariant":
        e = w["e"]
        return ring.mul[e, e] == e and act[w["m"], e] != act[w["m"], sigma(e)]
    if prop in ANNIHILATOR_KINDS:
        return find_idempotent_generator(w["annihilator"], ring) is None
    if prop == "sigma-identity":
        return sigma(w["a"]) != w["a"]
    if prop == "sigma-automorphism":
        return len(set(w["map"])) < ring.size
    if prop == "regular-module":
        return not mod.is_regular()
    if prop == "sigma-skew-armendariz":
        m = _poly(inst, w["m"], True)
        f = _poly(inst, w["f"], False)
        i, j = w["i"], w["j"]
        return module_action(m, f).is_zero() and act[m.coeff(i), sigma.apply(i, f.coeff(j))] != z
    ext, kind = split_property(prop)
    if ext is not None and kind in ("pp", "pq-baer"):
        return find_idempotent_generator(w["coefficient_ideal"], ring) is None
    if ext is not None and kind == "semicommutative":
        from .skewpoly import LaurentPoly, laurent_mul, truncated_series_action

        if ext == "laurent":
            m = LaurentPoly(_poly(inst, w["m"], True), w["m"]["offset"])
            f = LaurentPoly(_poly(inst, w["f"], False), w["f"]["offset"])
            g = LaurentPoly.monomial(sigma, w["b"], w["k"])
            return laurent_mul(m, f).is_zero() and not laurent_mul(laurent_mul(m, g), f).is_zero()
        if ext == "series":
            d = report.degree_bound
            mc, fc = w["m"]["coeffs"], w["f"]["coeffs"]
            mg = module_action(_poly(inst, w["m"], True), SkewPoly.monomial(sigma, w["b"], w["k"])).coeffs
            mg = list(mg) + [z] * (d + 1)
            return all(c == z for c in truncated_series_action(mod, sigma, mc, fc, d)) and any(
                c != z for c in truncated_series_action(mod, sigma, mg[: d + 1], fc, d)
            )
        m = _poly(inst, w["m"], True)
        f = _poly(inst, w["f"], False)
        g = SkewPoly.monomial(sigma, w["b"], w["k"])
        return module_action(m, f).is_zero() and not module_action(module_action(m, g), f).is_zero()
    raise ConfigurationError(f"no replay rule for {prop!r}")
