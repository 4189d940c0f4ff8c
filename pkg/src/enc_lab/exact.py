"""Exact rationals, weight vectors and the weight calculus on monomial supports.

Every quantity in the package is a ``fractions.Fraction`` (aliased ``Rat``).
Weights are immutable tuples of non-negative rationals; a series is
represented by the finite set of exponent vectors of its monomials.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

Rat = Fraction
RatLike = Union[Fraction, int]


class DimensionError(ValueError):
    """Weight and monomial live in different ambient dimensions."""


class TruncationError(ValueError):
    """A truncated support cannot certify the minimum that was asked for."""


def as_rat(q: RatLike) -> Fraction:
    if isinstance(q, float):
        raise TypeError("floating-point values are not accepted; use Fraction or 'p/q'")
    return Fraction(q)


def frac(q: RatLike) -> Fraction:
    """Fractional part ``q - floor(q)``, always in [0, 1)."""
    q = as_rat(q)
    return q - math.floor(q)


@dataclass(frozen=True, order=True)
class Weight:
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(as_rat(c) for c in self.coords)
        if any(c < 0 for c in coords):
            raise ValueError(f"weight coordinates must be >= 0, got {coords}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: RatLike) -> "Weight":
        return cls(tuple(coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __add__(self, other: Union["Weight", Sequence[RatLike]]) -> "Weight":
        other_coords = other.coords if isinstance(other, Weight) else tuple(other)
        if len(other_coords) != len(self.coords):
            raise DimensionError("cannot add vectors of different length")
        return Weight(tuple(x + as_rat(y) for x, y in zip(self.coords, other_coords)))

    def scale(self, m: RatLike) -> "Weight":
        m = as_rat(m)
        return Weight(tuple(m * c for c in self.coords))

    def total(self) -> Fraction:
        """Coordinate sum, i.e. the weight of x_1 x_2 ... x_d."""
        return sum(self.coords, Fraction(0))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        exps = tuple(int(x) for x in self.exponents)
        if any(x < 0 for x in exps):
            raise ValueError(f"exponents must be non-negative, got {exps}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def of(cls, *exponents: int) -> "Monomial":
        return cls(tuple(exponents))

    def __len__(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if len(other) != len(self):
            raise DimensionError("cannot multiply monomials of different length")
        return Monomial(tuple(x + y for x, y in zip(self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        return all(x <= y for x, y in zip(self.exponents, other.exponents))

    def __str__(self) -> str:
        return ".".join(str(x) for x in self.exponents)


MonomialLike = Union[Monomial, Sequence[int]]


def as_monomial(m: MonomialLike) -> Monomial:
    return m if isinstance(m, Monomial) else Monomial(tuple(m))


@dataclass(frozen=True)
class MonomialSupport:
    """Non-empty finite set of monomials, optionally with a truncation degree.

    ``truncation_degree`` declares that monomials of total degree above it
    were not listed. Plain weight queries trust the caller on this; the
    ``strict`` query mode refuses whenever an unlisted monomial could still
    undercut the listed minimum.
    """

    monomials: frozenset[Monomial]
    truncation_degree: Optional[int] = None

    def __post_init__(self) -> None:
        mons = frozenset(as_monomial(m) for m in self.monomials)
        if not mons:
            raise ValueError("a monomial support must be non-empty")
        dims = {len(m) for m in mons}
        if len(dims) != 1:
            raise DimensionError(f"monomials of mixed length: {sorted(dims)}")
        if self.truncation_degree is not None:
            if self.truncation_degree < 1:
                raise ValueError("truncation_degree must be a positive integer")
            too_big = [m for m in mons if m.degree > self.truncation_degree]
            if too_big:
                raise ValueError(f"monomials above the truncation degree: {sorted(too_big)}")
        object.__setattr__(self, "monomials", mons)

    @classmethod
    def of(cls, *monomials: MonomialLike, truncation_degree: Optional[int] = None) -> "MonomialSupport":
        return cls(frozenset(as_monomial(m) for m in monomials), truncation_degree)

    @property
    def dim(self) -> int:
        return len(next(iter(self.monomials)))

    def sorted(self) -> list[Monomial]:
        return sorted(self.monomials)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.monomials)

    def union(self, other: "MonomialSupport") -> "MonomialSupport":
        mons = self.monomials | other.monomials
        truncs = [t for t in (self.truncation_degree, other.truncation_degree) if t is not None]
        trunc = max(truncs + [max(m.degree for m in mons)]) if truncs else None
        return MonomialSupport(mons, trunc)

    def minimal(self) -> list[Monomial]:
        """Monomials not divisible by another member; only these can attain a minimum."""
        mons = self.sorted()
        return [m for m in mons if not any(o != m and o.divides(m) for o in mons)]

    def __str__(self) -> str:
        return " ".join(str(m) for m in self.sorted())


def fractional_vector(r: int, a: Sequence[int], j: int) -> Weight:
    """alpha_j = ({j a_1 / r}, ..., {j a_d / r})."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    return Weight(tuple(Fraction((j * ai) % r, r) for ai in a))


def weight_of_monomial(w: Weight, m: MonomialLike) -> Fraction:
    m = as_monomial(m)
    if len(m) != len(w):
        raise DimensionError(f"weight has length {len(w)} but monomial has length {len(m)}")
    return sum((c * e for c, e in zip(w.coords, m.exponents)), Fraction(0))


def weight_of_series(w: Weight, f: MonomialSupport, strict: bool = False) -> Fraction:
    """Minimum of ``w`` over the monomials of ``f``.

    With ``strict=True`` and a truncated support, the answer is returned only
    when every unlisted monomial (total degree > truncation_degree) provably
    weighs at least the listed minimum; otherwise ``TruncationError``.
    """
    if not isinstance(f, MonomialSupport):
        raise TypeError("weight_of_series expects a MonomialSupport")
    best = min(weight_of_monomial(w, m) for m in f.monomials)
    if strict and f.truncation_degree is not None:
        floor_unlisted = (f.truncation_degree + 1) * min(w.coords)
        if best > floor_unlisted:
            raise TruncationError(
                f"listed minimum {best} exceeds the certified floor {floor_unlisted} "
                f"for monomials above degree {f.truncation_degree}"
            )
    return best


def complement(w: Weight) -> Weight:
    """(1, ..., 1) - w, defined for weights inside the unit cube."""
    if any(c > 1 for c in w.coords):
        raise ValueError(f"complement needs coordinates in [0, 1], got {w}")
    return Weight(tuple(1 - c for c in w.coords))


_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rat(text: str) -> Fraction:
    """Parse an exact rational written as an integer or 'p/q'. Decimals are rejected."""
    s = text.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"not an exact rational 'p/q' (floats are rejected): {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator: {text!r}") from exc


def iter_rats(values: Iterable[RatLike]) -> list[Fraction]:
    return [as_rat(v) for v in values]
