"""Arithmetic in R[x;sigma], M[x;sigma], their Laurent versions and truncated series.

Multiplication twists coefficients past x: x^i a = sigma^i(a) x^i, so the
product of m(x) = sum m_i x^i by f(x) = sum a_j x^j has coefficient
sum_{i+j=k} m_i sigma^i(a_j) at x^k.  The scalar classes below are the
reference implementation; the ``batch_*`` functions evaluate the same rule
over whole arrays of coefficient vectors for the exhaustive checks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .errors import ContractViolation, MalformedInput, UnsupportedOperation
from .finmod import ModuleTable, regular_module
from .finring import Endomorphism, RingTable


def _strip(coeffs: Sequence[int], zero: int) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == zero:
        out.pop()
    return tuple(out)


def _check_coeffs(coeffs: tuple[int, ...], size: int) -> None:
    for c in coeffs:
        if not 0 <= c < size:
            raise MalformedInput(f"coefficient {c} outside 0..{size - 1}")


def _convolve(left, right, sigma: Endomorphism, act: np.ndarray, add: np.ndarray, zero: int, left_start: int = 0):
    """Twisted convolution; ``left_start`` is the exponent of left[0]."""
    if not left or not right:
        return ()
    out = [zero] * (len(left) + len(right) - 1)
    for i, m in enumerate(left):
        if m == zero:
            continue
        s = sigma.power(left_start + i)
        for j, a in enumerate(right):
            out[i + j] = int(add[out[i + j], act[m, s[a]]])
    return tuple(out)


@dataclass(frozen=True)
class SkewPoly:
    sigma: Endomorphism
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = _strip(self.coeffs, self.sigma.ring.zero)
        _check_coeffs(coeffs, self.sigma.ring.size)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def ring(self) -> RingTable:
        return self.sigma.ring

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        _same_sigma(self.sigma, other.sigma)
        n = max(len(self.coeffs), len(other.coeffs))
        add = self.ring.add
        return SkewPoly(self.sigma, tuple(int(add[self.coeff(i), other.coeff(i)]) for i in range(n)))

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        return ring_mul(self, other)

    @classmethod
    def monomial(cls, sigma: Endomorphism, b: int, k: int) -> "SkewPoly":
        return cls(sigma, (sigma.ring.zero,) * k + (b,))

    @classmethod
    def constant(cls, sigma: Endomorphism, b: int) -> "SkewPoly":
        return cls(sigma, (b,))


@dataclass(frozen=True)
class SkewModulePoly:
    module: ModuleTable
    sigma: Endomorphism
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.module.ring is not self.sigma.ring:
            raise ContractViolation("module and sigma live over different rings")
        coeffs = _strip(self.coeffs, self.module.zero)
        _check_coeffs(coeffs, self.module.size)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.module.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "SkewModulePoly") -> "SkewModulePoly":
        if other.module is not self.module:
            raise ContractViolation("different modules")
        _same_sigma(self.sigma, other.sigma)
        n = max(len(self.coeffs), len(other.coeffs))
        add = self.module.add
        return SkewModulePoly(self.module, self.sigma, tuple(int(add[self.coeff(i), other.coeff(i)]) for i in range(n)))

    def __mul__(self, f: SkewPoly) -> "SkewModulePoly":
        return module_action(self, f)


def _same_sigma(s: Endomorphism, t: Endomorphism) -> None:
    if s is not t and not s.same_map(t):
        raise ContractViolation("operands use different endomorphisms")


def ring_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    _same_sigma(f.sigma, g.sigma)
    r = f.ring
    return SkewPoly(f.sigma, _convolve(f.coeffs, g.coeffs, f.sigma, r.mul, r.add, r.zero))


def module_action(m: SkewModulePoly, f: SkewPoly) -> SkewModulePoly:
    """m(x)f(x) with coefficient sum_{i+j=k} m_i sigma^i(a_j) at x^k."""
    _same_sigma(m.sigma, f.sigma)
    if m.module.ring is not f.ring:
        raise ContractViolation("module and polynomial live over different rings")
    mod = m.module
    return SkewModulePoly(mod, m.sigma, _convolve(m.coeffs, f.coeffs, m.sigma, mod.action, mod.add, mod.zero))


@dataclass(frozen=True)
class LaurentPoly:
    """A skew Laurent polynomial: ``base`` holds the coefficients from exponent ``offset`` upward."""

    base: SkewPoly | SkewModulePoly
    offset: int = 0

    def __post_init__(self) -> None:
        if not self.base.sigma.is_automorphism():
            raise UnsupportedOperation(f"{self.base.sigma.name} is not an automorphism; no Laurent extension")
        zero = self._zero
        coeffs = list(self.base.coeffs)
        offset = self.offset
        while coeffs and coeffs[0] == zero:
            coeffs.pop(0)
            offset += 1
        if not coeffs:
            offset = 0
        object.__setattr__(self, "base", self._rebuild(tuple(coeffs)))
        object.__setattr__(self, "offset", offset)

    @property
    def _zero(self) -> int:
        b = self.base
        return b.module.zero if isinstance(b, SkewModulePoly) else b.ring.zero

    def _rebuild(self, coeffs: tuple[int, ...]):
        b = self.base
        if isinstance(b, SkewModulePoly):
            return SkewModulePoly(b.module, b.sigma, coeffs)
        return SkewPoly(b.sigma, coeffs)

    @property
    def sigma(self) -> Endomorphism:
        return self.base.sigma

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.base.coeffs

    def terms(self) -> dict[int, int]:
        return {self.offset + i: c for i, c in enumerate(self.coeffs) if c != self._zero}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return laurent_mul(self, other)

    @classmethod
    def monomial(cls, sigma: Endomorphism, b: int, k: int) -> "LaurentPoly":
        return cls(SkewPoly(sigma, (b,)), k)


def laurent_mul(u: LaurentPoly, v: LaurentPoly) -> LaurentPoly:
    """Product using x^i a = sigma^i(a) x^i for every integer i."""
    if isinstance(v.base, SkewModulePoly):
        raise ContractViolation("right factor must be a ring element")
    _same_sigma(u.sigma, v.sigma)
    sigma = u.sigma
    if isinstance(u.base, SkewModulePoly):
        mod = u.base.module
        act, add, zero = mod.action, mod.add, mod.zero
    else:
        r = u.base.ring
        act, add, zero = r.mul, r.add, r.zero
    coeffs = _convolve(u.coeffs, v.coeffs, sigma, act, add, zero, left_start=u.offset)
    return LaurentPoly(u._rebuild(coeffs) if coeffs else u._rebuild(()), u.offset + v.offset)


def truncated_series_action(
    module: ModuleTable, sigma: Endomorphism, m: Sequence[int], f: Sequence[int], degree_bound: int
) -> tuple[int, ...]:
    """Coefficients 0..D of m(x)f(x) for power series known up to x^D.

    This is arithmetic modulo x^(D+1), not power-series semantics: the result
    says nothing about coefficients above D.
    """
    out = [module.zero] * (degree_bound + 1)
    for i, mi in enumerate(m[: degree_bound + 1]):
        if mi == module.zero:
            continue
        s = sigma.power(i)
        for j, a in enumerate(f[: degree_bound + 1 - i]):
            out[i + j] = int(module.add[out[i + j], module.action[mi, s[a]]])
    return tuple(out)


def monomial_test_schedule(sigma: Endomorphism) -> tuple[int, ...]:
    """Exponents k whose sigma^k already exhaust {sigma^k : k >= 0}.

    A condition linear in g over all of R[x;sigma] reduces to monomials b x^k
    with b in R and k in this range.
    """
    mu, p = sigma.schedule
    return tuple(range(mu + p))


# -- literals ---------------------------------------------------------------

_TERM = re.compile(r"^(?P<c>\d+)?(?P<x>x(?:\^(?P<e>-?\d+))?)?$")


def parse_terms(text: str, one: int) -> dict[int, int]:
    """Parse ``2+3x+0x^2`` (coefficients are element indices) into {exponent: coefficient}.

    Repeated exponents are rejected rather than summed, since summing needs the ring.
    """
    src = text.replace(" ", "")
    if not src:
        raise MalformedInput("empty polynomial literal")
    terms: dict[int, int] = {}
    col = 1
    for raw in src.split("+"):
        match = _TERM.match(raw)
        if not raw or not match or (match.group("c") is None and match.group("x") is None):
            raise MalformedInput(f"bad term {raw!r} at column {col} of {text!r}")
        coef = int(match.group("c")) if match.group("c") is not None else one
        if match.group("x") is None:
            exp = 0
        else:
            exp = int(match.group("e")) if match.group("e") is not None else 1
        if exp in terms:
            raise MalformedInput(f"exponent {exp} repeated in {text!r}")
        terms[exp] = coef
        col += len(raw) + 1
    return terms


def _dense(terms: dict[int, int], zero: int) -> tuple[int, tuple[int, ...]]:
    lo, hi = min(terms), max(terms)
    return lo, tuple(terms.get(k, zero) for k in range(lo, hi + 1))


def parse_poly(text: str, sigma: Endomorphism) -> SkewPoly:
    r = sigma.ring
    terms = parse_terms(text, r.one)
    lo, coeffs = _dense(terms, r.zero)
    if lo < 0:
        raise MalformedInput(f"negative exponent in {text!r}; use a Laurent literal")
    return SkewPoly(sigma, (r.zero,) * lo + coeffs)


def parse_module_poly(text: str, module: ModuleTable, sigma: Endomorphism) -> SkewModulePoly:
    terms = parse_terms(text, module.ring.one)
    lo, coeffs = _dense(terms, module.zero)
    if lo < 0:
        raise MalformedInput(f"negative exponent in {text!r}; use a Laurent literal")
    return SkewModulePoly(module, sigma, (module.zero,) * lo + coeffs)


def parse_laurent(text: str, sigma: Endomorphism, module: ModuleTable | None = None) -> LaurentPoly:
    zero = module.zero if module is not None else sigma.ring.zero
    lo, coeffs = _dense(parse_terms(text, sigma.ring.one), zero)
    base = SkewModulePoly(module, sigma, coeffs) if module is not None else SkewPoly(sigma, coeffs)
    return LaurentPoly(base, lo)


def format_terms(coeffs: Sequence[int], offset: int = 0, zero: int = 0) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == zero:
            continue
        e = offset + i
        parts.append(str(c) if e == 0 else f"{c}x" if e == 1 else f"{c}x^{e}")
    return "+".join(parts) if parts else "0"


# -- batch evaluation ---------------------------------------------------------

_CHUNK_CELLS = 1 << 22


def all_coefficient_vectors(n: int, length: int) -> np.ndarray:
    """Every length-``length`` coefficient vector over 0..n-1.

    Ordered lexicographically from the highest coefficient down, so all
    constants come before anything of degree 1, and so on.
    """
    if length == 0:
        return np.zeros((1, 0), dtype=np.intp)
    grids = np.indices((n,) * length).reshape(length, -1).T[:, ::-1]
    return np.ascontiguousarray(grids, dtype=np.intp)


@dataclass(frozen=True, eq=False)
class BatchArithmetic:
    """Vectorized twisted products for one (module, sigma) pair."""

    module: ModuleTable
    sigma: Endomorphism
    _act: np.ndarray = field(init=False, repr=False)
    _add: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        dtype = np.uint8 if max(self.module.size, self.sigma.ring.size) <= 256 else np.intp
        object.__setattr__(self, "_act", self.module.action.astype(dtype))
        object.__setattr__(self, "_add", self.module.add.astype(dtype))

    @property
    def zero(self) -> int:
        return self.module.zero

    def products(self, left: np.ndarray, left_off: int, right: np.ndarray, right_off: int) -> np.ndarray:
        """Coefficients of every product left[a] * right[b]; shape (N1, N2, L1+L2-1).

        Output index t is exponent left_off + right_off + t.
        """
        n1, l1 = left.shape
        n2, l2 = right.shape
        out = np.full((n1, n2, max(l1 + l2 - 1, 0)), self.zero, dtype=self._act.dtype)
        if l1 == 0 or l2 == 0:
            return out
        twisted = [self.sigma.power(left_off + i)[right].astype(self._act.dtype) for i in range(l1)]
        lhs = left.astype(self._act.dtype)
        for i in range(l1):
            li = lhs[:, i][:, None]
            for j in range(l2):
                term = self._act[li, twisted[i][:, j][None, :]]
                out[:, :, i + j] = self._add[out[:, :, i + j], term]
        return out

    def zero_mask(
        self,
        left: np.ndarray,
        left_off: int,
        right: np.ndarray,
        right_off: int,
        max_exponent: int | None = None,
    ) -> np.ndarray:
        """Boolean (N1, N2): does left[a] * right[b] vanish (up to ``max_exponent`` if given)?"""
        n1, n2 = left.shape[0], right.shape[0]
        out = np.empty((n1, n2), dtype=bool)
        rows = max(1, _CHUNK_CELLS // max(n2 * max(left.shape[1] + right.shape[1] - 1, 1), 1))
        keep = None
        if max_exponent is not None:
            keep = max(0, max_exponent - left_off - right_off + 1)
        for s in range(0, n1, rows):
            prod = self.products(left[s : s + rows], left_off, right, right_off)
            if keep is not None:
                prod = prod[:, :, :keep]
            out[s : s + rows] = np.all(prod == self.zero, axis=2)
        return out

    def shifted_by_monomials(self, m: np.ndarray, m_off: int, k: int) -> np.ndarray:
        """Coefficients of m(x) * (b x^k) for every b in R; rows indexed by b, offset m_off + k."""
        ring_size = self.sigma.ring.size
        bs = np.arange(ring_size)
        cols = [self.module.action[m[i], self.sigma.power(m_off + i)[bs]] for i in range(len(m))]
        if not cols:
            return np.zeros((ring_size, 0), dtype=np.intp)
        return np.stack(cols, axis=1)


def ring_batch(sigma: Endomorphism) -> BatchArithmetic:
    return BatchArithmetic(regular_module(sigma.ring), sigma)


def enumerate_polys(size: int, degree_bound: int) -> list[tuple[int, ...]]:
    return list(product(range(size), repeat=degree_bound + 1))
