"""Instance-level verifiers for the module-theoretic results, plus counterexample hunting.

A theorem is a list of hypothesis formulas and a conclusion formula over
property ids.  Formulas are evaluated in three-valued (Kleene) logic: a
property reported as inconclusive is ``None``, and ``None`` only survives
where the other operands cannot decide the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence, Union

from .errors import ConfigurationError
from .properties import (
    ALL_PROPERTIES,
    DEFAULT_BUDGET,
    DEFAULT_DEGREE,
    Evaluator,
    Instance,
    PropertyReport,
    Verdict,
    is_degree_bounded,
)

Truth = Union[bool, None]

VERIFIED = "verified"
VACUOUS = "vacuous"
INCONCLUSIVE = "inconclusive"
REFUTED = "REFUTED"
SEVERITY = {VERIFIED: 0, VACUOUS: 1, INCONCLUSIVE: 2, REFUTED: 3}


# -- formulas -------------------------------------------------------------------


def _and(values: Iterable[Truth]) -> Truth:
    out: Truth = True
    for v in values:
        if v is False:
            return False
        if v is None:
            out = None
    return out


def _or(values: Iterable[Truth]) -> Truth:
    out: Truth = False
    for v in values:
        if v is True:
            return True
        if v is None:
            out = None
    return out


def _not(v: Truth) -> Truth:
    return None if v is None else not v


@dataclass(frozen=True)
class P:
    """An atomic property id."""

    id: str

    def atoms(self) -> tuple[str, ...]:
        return (self.id,)

    def evaluate(self, look) -> Truth:
        return look(self.id)

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class All:
    parts: tuple

    def atoms(self) -> tuple[str, ...]:
        return tuple(a for p in self.parts for a in p.atoms())

    def evaluate(self, look) -> Truth:
        # generator keeps evaluation lazy: stop at the first False
        return _and(p.evaluate(look) for p in self.parts)

    def __str__(self) -> str:
        return "(" + " & ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Any_:
    parts: tuple

    def atoms(self) -> tuple[str, ...]:
        return tuple(a for p in self.parts for a in p.atoms())

    def evaluate(self, look) -> Truth:
        return _or(p.evaluate(look) for p in self.parts)

    def __str__(self) -> str:
        return "(" + " | ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Implies:
    premise: Any
    conclusion: Any

    def atoms(self) -> tuple[str, ...]:
        return self.premise.atoms() + self.conclusion.atoms()

    def evaluate(self, look) -> Truth:
        pre = self.premise.evaluate(look)
        if pre is False:
            return True
        return _or((_not(pre), self.conclusion.evaluate(look)))

    def __str__(self) -> str:
        return f"({self.premise} -> {self.conclusion})"


@dataclass(frozen=True)
class Equivalent:
    """All parts have the same truth value; checked pairwise as both implications."""

    parts: tuple

    def atoms(self) -> tuple[str, ...]:
        return tuple(a for p in self.parts for a in p.atoms())

    def evaluate(self, look) -> Truth:
        values = [p.evaluate(look) for p in self.parts]
        if any(v is True for v in values) and any(v is False for v in values):
            return False
        if any(v is None for v in values):
            return None
        return True

    def __str__(self) -> str:
        return "(" + " <-> ".join(map(str, self.parts)) + ")"


def _f(x) -> Any:
    return P(x) if isinstance(x, str) else x


def all_of(*parts) -> All:
    return All(tuple(_f(p) for p in parts))


def any_of(*parts) -> Any_:
    return Any_(tuple(_f(p) for p in parts))


def implies(a, b) -> Implies:
    return Implies(_f(a), _f(b))


def iff(*parts) -> Equivalent:
    return Equivalent(tuple(_f(p) for p in parts))


# -- specs and reports ----------------------------------------------------------


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    hypotheses: tuple
    conclusion: Any
    summary: str = ""
    caveat: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "hypotheses", tuple(_f(h) for h in self.hypotheses))
        object.__setattr__(self, "conclusion", _f(self.conclusion))
        unknown = sorted({a for a in self.atoms() if a not in ALL_PROPERTIES})
        if unknown:
            raise ConfigurationError(f"{self.id}: unknown property ids {', '.join(unknown)}")

    def atoms(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for part in self.hypotheses + (self.conclusion,):
            for a in part.atoms():
                seen.setdefault(a, None)
        return tuple(seen)

    def statement(self) -> str:
        hyp = " & ".join(map(str, self.hypotheses)) or "true"
        return f"{hyp} => {self.conclusion}"


@dataclass
class TheoremReport:
    theorem: str
    instance: str
    hypotheses_hold: Truth
    conclusion_holds: Truth
    status: str
    degree_bound: int
    evidence: dict[str, PropertyReport] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def witnesses(self) -> dict[str, Any]:
        return {p: r.witness for p, r in sorted(self.evidence.items()) if r.verdict is Verdict.FAILS}

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "status": self.status,
            "hypotheses_hold": self.hypotheses_hold,
            "conclusion_holds": self.conclusion_holds,
            "degree_bound": self.degree_bound,
            "evidence": {p: r.verdict_text() for p, r in sorted(self.evidence.items())},
            "witnesses": self.witnesses,
            "notes": list(self.notes),
        }


def _status(hyp: Truth, concl: Truth) -> str:
    if hyp is False:
        return VACUOUS
    if concl is True:
        return VERIFIED
    if concl is False and hyp is True:
        return REFUTED
    return INCONCLUSIVE


def run_theorem(
    spec: TheoremSpec,
    inst: Instance,
    degree: int = DEFAULT_DEGREE,
    budget: int = DEFAULT_BUDGET,
    evaluator: Evaluator | None = None,
) -> TheoremReport:
    """Evaluate the hypotheses, then the conclusion unless the instance is vacuous.

    On vacuous instances the conclusion is still evaluated when it needs no
    bounded enumeration, so reports can show consistent vacuity cheaply.
    """
    ev = evaluator or Evaluator(inst, budget)
    used: dict[str, PropertyReport] = {}

    def look(prop: str) -> Truth:
        rep = ev.check(prop, degree)
        used[prop] = rep
        return rep.truth

    hyp = _and(h.evaluate(look) for h in spec.hypotheses)
    concl: Truth = None
    if hyp is not False or not any(is_degree_bounded(a) for a in spec.conclusion.atoms()):
        concl = spec.conclusion.evaluate(look)
    status = _status(hyp, concl)

    notes: list[str] = []
    if spec.caveat:
        notes.append(spec.caveat)
    for prop in sorted(used):
        for note in used[prop].notes:
            if note not in notes:
                notes.append(note)
        if used[prop].verdict is Verdict.INCONCLUSIVE and used[prop].detail:
            notes.append(f"{prop}: {used[prop].detail}")
    return TheoremReport(spec.id, inst.id, hyp, concl, status, degree, used, tuple(notes))


def worst_status(reports: Iterable[TheoremReport]) -> str:
    return max((r.status for r in reports), key=SEVERITY.__getitem__, default=VERIFIED)


def run_suite(
    inst: Instance,
    degree: int = DEFAULT_DEGREE,
    budget: int = DEFAULT_BUDGET,
    specs: Sequence[TheoremSpec] | None = None,
) -> list[TheoremReport]:
    """Every spec on one instance, sharing one property cache."""
    ev = Evaluator(inst, budget)
    return [run_theorem(s, inst, degree, budget, ev) for s in (specs or BUILTIN_SPECS)]


@dataclass(frozen=True)
class HuntResult:
    anomalies: list[TheoremReport]
    verified: int

    @property
    def refuted(self) -> list[TheoremReport]:
        return [r for r in self.anomalies if r.status == REFUTED]


def hunt(
    instances: Sequence[Instance], target: TheoremSpec, degree: int = DEFAULT_DEGREE, budget: int = DEFAULT_BUDGET
) -> HuntResult:
    if not instances:
        raise ConfigurationError("hunt needs at least one instance")
    anomalies, verified = [], 0
    for inst in instances:
        rep = run_theorem(target, inst, degree, budget)
        if rep.status == VERIFIED:
            verified += 1
        else:
            anomalies.append(rep)
    return HuntResult(anomalies, verified)


def replay_report(report: TheoremReport, inst: Instance, budget: int = DEFAULT_BUDGET) -> bool:
    """Recompute every recorded sub-verdict and confirm failing witnesses independently."""
    from .properties import replay_failure

    ev = Evaluator(inst, budget)
    for prop, rep in report.evidence.items():
        again = ev.check(prop, report.degree_bound)
        if again.verdict_text() != rep.verdict_text() or again.witness != rep.witness:
            return False
        if rep.verdict is Verdict.FAILS and not replay_failure(inst, rep):
            return False
    return True


# -- builtin specs ----------------------------------------------------------------

FOUR_WAY = iff("pp", "pq-baer", "poly-pp", "poly-pq-baer")
SEMICOMMUTATIVE_EXTENSIONS = all_of("poly-semicommutative", "series-semicommutative")

BUILTIN_SPECS: tuple[TheoremSpec, ...] = (
    TheoremSpec(
        "lemma_2_2",
        (any_of("c1", "c2"),),
        "sigma-idempotent-invariant",
        "either compatibility half forces me = m sigma(e) for idempotent e",
    ),
    TheoremSpec(
        "prop_2_3_1",
        ("pq-baer", "c2"),
        "poly-pq-baer",
        "p.q.-Baer with C2 lifts to the skew polynomial module",
    ),
    TheoremSpec(
        "prop_2_3_2",
        ("c1", any_of("poly-pq-baer", "series-pq-baer")),
        "pq-baer",
        "p.q.-Baer descends from the polynomial or series module under C1",
        caveat="the series direction is checked on truncated series only",
    ),
    TheoremSpec(
        "cor_2_4",
        ("sigma-identity",),
        iff("pq-baer", "poly-pq-baer"),
        "ordinary polynomial module: p.q.-Baer in both directions",
    ),
    TheoremSpec(
        "cor_2_5",
        ("regular-module", "sigma-identity"),
        iff("pq-baer", "poly-pq-baer"),
        "ring case through the regular module",
    ),
    TheoremSpec(
        "cor_2_6_7",
        ("compatible",),
        all_of(
            implies("poly-pq-baer", "pq-baer"),
            implies(all_of("sigma-reduced", "pq-baer"), "poly-pq-baer"),
            implies("series-pq-baer", "pq-baer"),
            iff("pq-baer", "poly-pq-baer"),
        ),
        "compatible versions, including the sigma-reduced converse",
        caveat="the series implication is checked on truncated series only",
    ),
    TheoremSpec(
        "prop_3_1",
        ("sigma-skew-armendariz", "c2"),
        all_of(
            iff("pp", "poly-pp"),
            implies("sigma-automorphism", iff("pp", "laurent-pp")),
        ),
        "p.p. transfers both ways for skew Armendariz modules with C2",
    ),
    TheoremSpec(
        "lemma_3_3",
        ("semicommutative", "star"),
        "sigma-skew-armendariz",
        "semicommutative with the star condition is skew Armendariz",
    ),
    TheoremSpec(
        "prop_3_4",
        ("semicommutative", "star"),
        SEMICOMMUTATIVE_EXTENSIONS,
        "semicommutativity passes to polynomial and series modules",
        caveat="series semicommutativity is checked modulo x^(D+1)",
    ),
    TheoremSpec(
        "cor_3_5",
        ("semicommutative", "c1", any_of("pq-baer", "pp")),
        SEMICOMMUTATIVE_EXTENSIONS,
        "semicommutative with C1 and an annihilator condition",
        caveat="series semicommutativity is checked modulo x^(D+1)",
    ),
    TheoremSpec(
        "thm_3_6",
        ("semicommutative", "compatible"),
        FOUR_WAY,
        "p.p., p.q.-Baer and their polynomial versions coincide",
    ),
    TheoremSpec(
        "cor_3_7",
        ("semicommutative", "sigma-identity"),
        FOUR_WAY,
        "the four-way equivalence for ordinary polynomials",
    ),
    TheoremSpec(
        "cor_3_8",
        ("reduced", "sigma-identity"),
        all_of("semicommutative", FOUR_WAY),
        "reduced modules are semicommutative and satisfy the equivalence",
    ),
    TheoremSpec(
        "remark_pre_3_3",
        ("semicommutative", "star"),
        all_of("sigma-semicommutative", "c1"),
        "semicommutative with star gives sigma-semicommutative and C1",
    ),
    TheoremSpec(
        "remark_def_2_1",
        (),
        iff("compatible", all_of("c1", "c2")),
        "compatibility is exactly C1 together with C2",
    ),
)

SPEC_INDEX = {s.id: s for s in BUILTIN_SPECS}


def get_spec(theorem_id: str) -> TheoremSpec:
    try:
        return SPEC_INDEX[theorem_id]
    except KeyError:
        raise ConfigurationError(
            f"unknown theorem {theorem_id!r}; valid ids: {', '.join(SPEC_INDEX)}"
        ) from None


__all__ = [
    "All", "Any_", "Equivalent", "Implies", "P", "all_of", "any_of", "implies", "iff",
    "TheoremSpec", "TheoremReport", "HuntResult", "BUILTIN_SPECS", "SPEC_INDEX",
    "VERIFIED", "VACUOUS", "INCONCLUSIVE", "REFUTED", "SEVERITY",
    "run_theorem", "run_suite", "hunt", "worst_status", "replay_report", "get_spec",
]
