"""Cyclic quotient germs 1/r(a_1, ..., a_d): toric log discrepancies, mlds and enc detection.

A toric divisor over the origin corresponds to a primitive vector of the
lattice N = Z^d + Z.alpha_1 lying in the open positive orthant; its log
discrepancy is the coordinate sum. Every element of N in [0,1)^d is one of the
alpha_k, so the whole low-discrepancy picture is a finite enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .exact import (
    MonomialSupport,
    RatLike,
    Weight,
    as_monomial,
    as_rat,
    fractional_vector,
    weight_of_series,
)


class NotIsolatedError(ValueError):
    """The lattice formulas are only used for isolated germs."""


class NotEncError(ValueError):
    """The germ (or pair) is not exceptionally non-canonical."""


class NotKltError(ArithmeticError):
    """The computed log discrepancy is <= 0."""

    def __init__(self, value: Fraction, message: str = "") -> None:
        super().__init__(message or f"log discrepancy {value} <= 0: not klt")
        self.value = value


class SemiInvarianceError(ValueError):
    """A support mixes monomials of different characters."""


@dataclass(frozen=True)
class CyclicQuotient:
    r: int
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("r must be a positive integer")
        object.__setattr__(self, "a", tuple(int(x) % self.r for x in self.a))
        if not self.a:
            raise ValueError("a cyclic quotient needs at least one weight")

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def is_isolated(self) -> bool:
        # Only the identity may fix a point off the origin.
        return self.r == 1 or all(math.gcd(x, self.r) == 1 for x in self.a)

    def alpha(self, k: int) -> Weight:
        return fractional_vector(self.r, self.a, k)

    @cached_property
    def _residues(self) -> frozenset[tuple[int, ...]]:
        return frozenset(tuple((j * x) % self.r for x in self.a) for j in range(self.r))

    def residues(self) -> frozenset[tuple[int, ...]]:
        """The r points j*a mod r; an integer vector V lies in r*N iff V mod r is one of them."""
        return self._residues

    def in_lattice(self, v: Weight) -> bool:
        scaled = [c * self.r for c in v.coords]
        if any(c.denominator != 1 for c in scaled):
            return False
        return tuple(int(c) % self.r for c in scaled) in self.residues()

    def is_primitive(self, v: Weight) -> bool:
        """No v/m with m >= 2 lies in N."""
        return self._primitive_scaled(tuple(int(c * self.r) for c in v.coords))

    def _primitive_scaled(self, nums: tuple[int, ...]) -> bool:
        g = 0
        for x in nums:
            g = math.gcd(g, x)
        if g < 2:
            return True
        res = self.residues()
        for m in range(2, g + 1):
            if g % m == 0 and tuple((x // m) % self.r for x in nums) in res:
                return False
        return True

    def __str__(self) -> str:
        return f"1/{self.r}(" + ",".join(str(x) for x in self.a) + ")"


@dataclass(frozen=True, order=True)
class ToricDivisorRecord:
    log_discrepancy: Fraction
    k: int
    alpha: Weight
    primitive: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        if self.alpha.total() != self.log_discrepancy:
            raise ValueError("log_discrepancy must equal the coordinate sum of alpha")


@dataclass(frozen=True)
class Boundary:
    """B = sum b_i (f_i = 0) with each f_i given by its monomial support."""

    components: tuple[tuple[Fraction, MonomialSupport], ...] = ()

    def __post_init__(self) -> None:
        comps = tuple((as_rat(b), f) for b, f in self.components)
        dims = {f.dim for _, f in comps}
        if len(dims) > 1:
            raise ValueError("boundary supports live in different dimensions")
        for b, f in comps:
            if not 0 <= b <= 1:
                raise ValueError(f"boundary coefficient {b} outside [0, 1]")
            if any(m.degree == 0 for m in f.monomials):
                raise ValueError("boundary components must pass through the point (no constant term)")
        if comps and sum(b for b, _ in comps) > next(iter(dims)):
            raise ValueError("boundary coefficients sum beyond the dimension")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *pairs: tuple[RatLike, MonomialSupport]) -> "Boundary":
        return cls(tuple(pairs))

    def __bool__(self) -> bool:
        return bool(self.components)

    def weight(self, w: Weight) -> Fraction:
        """sum b_i w(f_i)."""
        return sum((b * weight_of_series(w, f) for b, f in self.components), Fraction(0))

    def __str__(self) -> str:
        return ";".join(f"{b}:{'+'.join(str(m) for m in f.sorted())}" for b, f in self.components)


def _check_isolated(X: CyclicQuotient) -> None:
    if not X.is_isolated:
        raise NotIsolatedError(f"{X} is not isolated: every gcd(a_i, r) must be 1")


def log_discrepancy_of_k(X: CyclicQuotient, k: int) -> Fraction:
    """sum_i (1 + k a_i/r - ceil(k a_i/r))."""
    r = X.r
    return sum((Fraction(r + k * x - r * (-(-k * x // r)), r) for x in X.a), Fraction(0))


def mld_cyclic_quotient(X: CyclicQuotient) -> Fraction:
    _check_isolated(X)
    if X.r == 1:
        return Fraction(X.d)
    return min(log_discrepancy_of_k(X, k) for k in range(1, X.r))


def _shifts(d: int, budget: int) -> Iterator[tuple[int, ...]]:
    """Non-negative integer vectors of length d with coordinate sum <= budget."""
    if d == 0:
        yield ()
        return
    for first in range(budget + 1):
        for rest in _shifts(d - 1, budget - first):
            yield (first,) + rest


def low_discrepancy_divisors(X: CyclicQuotient, threshold: RatLike) -> list[ToricDivisorRecord]:
    """Lattice points of N in the open orthant with coordinate sum <= threshold.

    Unshifted alpha_k come first in the enumeration; shifted points alpha_k + m
    only enter when the threshold leaves room, because every unit shift adds
    exactly 1 to the sum. Non-primitive points (multiples of a smaller lattice
    vector) are kept and flagged, since they are not divisors.
    """
    _check_isolated(X)
    threshold = as_rat(threshold)
    r = X.r
    # Scaled by r: a point is r*alpha_k + r*m, and the sum condition is S <= r*threshold.
    cap = math.floor(threshold * r)
    out: list[ToricDivisorRecord] = []
    classes = range(1, r) if r > 1 else range(0)
    for k in list(classes) + [0]:
        base = [(k * x) % r for x in X.a]
        room = cap - sum(base)
        if room < 0:
            continue
        shifts = _shifts(X.d, room // r) if room >= r else ((0,) * X.d,)
        for m in shifts:
            nums = tuple(b + r * s for b, s in zip(base, m))
            if 0 in nums:
                continue
            v = Weight(tuple(Fraction(x, r) for x in nums))
            out.append(ToricDivisorRecord(Fraction(sum(nums), r), k, v, X._primitive_scaled(nums)))
    return sorted(out)


def is_enc_cyclic_quotient(X: CyclicQuotient) -> tuple[bool, Optional[ToricDivisorRecord]]:
    """Exactly one divisor with log discrepancy <= 1, and that one is < 1."""
    low = [rec for rec in low_discrepancy_divisors(X, 1) if rec.primitive]
    if len(low) == 1 and low[0].log_discrepancy < 1:
        return True, low[0]
    return False, None


def check_semi_invariance(X: CyclicQuotient, f: MonomialSupport) -> Optional[int]:
    chars = {sum(x * e for x, e in zip(X.a, m.exponents)) % X.r for m in f.monomials}
    return chars.pop() if len(chars) == 1 else None


def _check_boundary(X: CyclicQuotient, B: Boundary) -> None:
    for _, f in B.components:
        if f.dim != X.d:
            raise ValueError(f"boundary support has length {f.dim}, germ has dimension {X.d}")
        if check_semi_invariance(X, f) is None:
            raise SemiInvarianceError(f"support {f} is not semi-invariant for {X}")


def mld_with_boundary(X: CyclicQuotient, B: Boundary) -> Fraction:
    """a(E, X, B) = mld(X) - sum b_i w(f_i) for the unique low divisor E of an enc germ."""
    flag, witness = is_enc_cyclic_quotient(X)
    if not flag:
        raise NotEncError(f"{X} is not enc; the subtraction formula does not apply")
    _check_boundary(X, B)
    value = witness.log_discrepancy - B.weight(witness.alpha)
    if value <= 0:
        raise NotKltError(value)
    return value


def pair_log_discrepancy(X: CyclicQuotient, B: Boundary, v: Weight) -> Fraction:
    return v.total() - B.weight(v)


def pair_low_divisors(X: CyclicQuotient, B: Boundary, threshold: RatLike = 1) -> Optional[list[ToricDivisorRecord]]:
    """Primitive lattice points with pair log discrepancy <= threshold.

    Returns None when the search cannot be bounded: some coordinate direction
    does not increase the pair log discrepancy, so infinitely many divisors may
    qualify. The record's ``log_discrepancy`` field stays the plain sum; callers
    recompute the pair value with ``pair_log_discrepancy``.
    """
    _check_isolated(X)
    _check_boundary(X, B)
    threshold = as_rat(threshold)
    # For any mu_i in f_i we have v(f_i) <= v(mu_i), hence a(v) >= sum_j c_j v_j with
    # c = 1 - sum_i b_i mu_i (equality for single-monomial components). Positive c
    # bounds every shift; pick mu_i to keep c as large as possible.
    lower = [Fraction(1)] * X.d
    for b, f in B.components:
        best = min(f.sorted(), key=lambda m: (max(m.exponents), m.degree, m.exponents))
        lower = [c - b * e for c, e in zip(lower, best.exponents)]
    if any(c <= 0 for c in lower):
        return None
    out = []
    for k in range(1, X.r):
        base = X.alpha(k)
        out.extend(_pair_points(X, B, base, lower, threshold, k))
    return sorted(out)


def _pair_points(X, B, base, lower, threshold, k):
    d = X.d
    slack0 = threshold - sum(c * x for c, x in zip(lower, base.coords))

    def rec(i: int, prefix: tuple[int, ...], slack: Fraction):
        if i == d:
            v = base + prefix
            if pair_log_discrepancy(X, B, v) <= threshold and X.is_primitive(v):
                yield ToricDivisorRecord(v.total(), k, v, True)
            return
        for m in range(math.floor(slack / lower[i]) + 1):
            yield from rec(i + 1, prefix + (m,), slack - m * lower[i])

    if slack0 < 0:
        return []
    return list(rec(0, (), slack0))


def is_enc_pair(X: CyclicQuotient, B: Boundary) -> tuple[bool, Optional[ToricDivisorRecord]]:
    """Toric enc test for the pair: one primitive point with pair log discrepancy <= 1, and < 1."""
    low = pair_low_divisors(X, B, 1)
    if low is None or len(low) != 1:
        return False, None
    if pair_log_discrepancy(X, B, low[0].alpha) < 1:
        return True, low[0]
    return False, None


def monomial_menu(d: int, max_degree: int) -> list[MonomialSupport]:
    """Single-monomial supports of total degree 1..max_degree."""
    out = []
    for deg in range(1, max_degree + 1):
        for exps in _shifts(d, deg):
            if sum(exps) == deg:
                out.append(MonomialSupport.of(as_monomial(exps)))
    return out


def relabel(X: CyclicQuotient, j: int) -> CyclicQuotient:
    if math.gcd(j, X.r) != 1:
        raise ValueError("relabeling needs a unit j")
    return CyclicQuotient(X.r, tuple(j * x for x in X.a))


def permute(X: CyclicQuotient, perm: Sequence[int]) -> CyclicQuotient:
    return CyclicQuotient(X.r, tuple(X.a[i] for i in perm))
