"""Sweeps over three-dimensional cyclic quotients: the gap below 1, enc mld sets and their gap summaries.

For an isolated 1/r(a_1, a_2, a_3) every alpha_k (1 <= k < r) lies in the open
unit cube, so the scaled sums S_k = sum_i (k a_i mod r) carry everything: the
mld is min S_k / r, and the lattice points with log discrepancy <= 1 are the
alpha_k with S_k <= r. The sweeps fix a_1 = 1 by relabeling and a_2 <= a_3 by
symmetry, both of which leave those quantities unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .exact import MonomialSupport, RatLike, as_rat, weight_of_series
from .parallel import pmap
from .toric import (
    Boundary,
    CyclicQuotient,
    is_enc_cyclic_quotient,
    is_enc_pair,
    monomial_menu,
    pair_log_discrepancy,
)

GAP_BOUND = Fraction(12, 13)
GAP_WITNESS = (13, (3, 4, 5))


def canonical_pairs(r: int) -> np.ndarray:
    """(a_2, a_3) with both units mod r and a_2 <= a_3; rows of an int64 array."""
    units = np.array([x for x in range(1, r) if math.gcd(x, r) == 1], dtype=np.int64)
    i, j = np.triu_indices(len(units))
    return np.column_stack([units[i], units[j]])


def scaled_sums(r: int, pairs: np.ndarray) -> np.ndarray:
    """S[k-1, p] = k + (k a_2 mod r) + (k a_3 mod r) for k = 1..r-1."""
    k = np.arange(1, r, dtype=np.int64)[:, None]
    return k + (k * pairs[:, 0][None, :]) % r + (k * pairs[:, 1][None, :]) % r


def orbit(r: int, a: Sequence[int]) -> list[tuple[int, ...]]:
    """Sorted weight triples equivalent to a under relabeling by units and permutation."""
    out = set()
    for j in range(1, max(r, 2)):
        if math.gcd(j, r) == 1:
            out.add(tuple(sorted((j * x) % r for x in a)))
    return sorted(out)


# ---------------------------------------------------------------- gap scan


@dataclass
class GapScanReport:
    R: int
    max_below_one: Optional[Fraction] = None
    witnesses: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    germs: int = 0
    violations: list[tuple[int, tuple[int, ...], Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if self.violations:
            return False
        if self.R < GAP_WITNESS[0]:
            return self.max_below_one is None or self.max_below_one < GAP_BOUND
        return self.max_below_one == GAP_BOUND and GAP_WITNESS in self.witnesses


def _gap_slice(r: int) -> tuple[int, Optional[Fraction], list, list]:
    if r < 2:
        return 0, None, [], []
    pairs = canonical_pairs(r)
    mld = scaled_sums(r, pairs).min(axis=0)
    below = mld < r
    best = int(mld[below].max()) if below.any() else None
    wit = [(r, (1, int(p[0]), int(p[1]))) for p in pairs[below & (mld == best)]] if best is not None else []
    bad = [(r, (1, int(p[0]), int(p[1])), Fraction(int(m), r)) for p, m in zip(pairs, mld) if 12 * r < 13 * m < 13 * r]
    return len(pairs), (Fraction(best, r) if best is not None else None), wit, bad


def gap_scan(R: int, jobs: int = 1) -> GapScanReport:
    """Largest mld < 1 over isolated 1/r(a_1, a_2, a_3) with r <= R, and every germ attaining it."""
    report = GapScanReport(R)
    canon_witnesses = []
    for count, best, wit, bad in pmap(_gap_slice, range(1, R + 1), jobs):
        report.germs += count
        report.violations.extend(bad)
        if best is None:
            continue
        if report.max_below_one is None or best > report.max_below_one:
            report.max_below_one, canon_witnesses = best, list(wit)
        elif best == report.max_below_one:
            canon_witnesses.extend(wit)
    report.witnesses = sorted({(r, o) for r, a in canon_witnesses for o in orbit(r, a)})
    return report


# ---------------------------------------------------------------- enc sweep


def _enc_slice(r: int) -> list[tuple[int, int, int, int, int]]:
    """Enc germs (r, 1, a_2, a_3) with witness k and scaled mld, from the sums alone.

    The minimising alpha_k is primitive (a proper divisor would have a smaller
    sum), and its multiples m alpha_k stay low while m * max coordinate < r and
    m * S <= r. The germ is enc iff those multiples are the only low points.
    """
    if r < 2:
        return []
    pairs = canonical_pairs(r)
    S = scaled_sums(r, pairs)
    k0 = S.argmin(axis=0)
    cols = np.arange(S.shape[1])
    s0 = S[k0, cols]
    kk = (k0 + 1).astype(np.int64)
    vmax = np.maximum(kk, np.maximum((kk * pairs[:, 0]) % r, (kk * pairs[:, 1]) % r))
    multiples = np.minimum(r // s0, (r - 1) // vmax)
    low = (S <= r).sum(axis=0)
    enc = (s0 < r) & (low == multiples)
    return [(r, 1, int(p[0]), int(p[1]), int(k), int(s)) for p, k, s in zip(pairs[enc], kk[enc], s0[enc])]


def enc_germs(R: int, jobs: int = 1) -> list[tuple[CyclicQuotient, int, Fraction]]:
    """Every enc isolated 1/r(1, a_2, a_3), a_2 <= a_3, r <= R, with witness k and mld."""
    out = []
    for part in pmap(_enc_slice, range(2, R + 1), jobs):
        for r, a1, a2, a3, k, s in part:
            out.append((CyclicQuotient(r, (a1, a2, a3)), k, Fraction(s, r)))
    return out


@dataclass(frozen=True)
class MldRecord:
    germ: CyclicQuotient
    boundary: Boundary
    mld: Fraction
    enc: bool
    k0: int

    def recompute(self) -> "MldRecord":
        """Rebuild the record from its descriptors alone."""
        return mld_record(self.germ, self.boundary)


def mld_record(X: CyclicQuotient, B: Boundary) -> MldRecord:
    """mld of the pair from the toric enumeration; enc refers to the pair."""
    if not B:
        flag, wit = is_enc_cyclic_quotient(X)
        if not flag:
            raise ValueError(f"{X} is not enc")
        return MldRecord(X, B, wit.log_discrepancy, True, wit.k)
    flag, wit = is_enc_pair(X, B)
    if not flag:
        raise ValueError(f"the pair ({X}, {B}) is not enc")
    return MldRecord(X, B, pair_log_discrepancy(X, B, wit.alpha), True, wit.k)


@dataclass
class EmldReport:
    R: int
    gamma: tuple[Fraction, ...]
    eps: Fraction
    menu_degree: int
    values: list[Fraction] = field(default_factory=list)
    records: list[MldRecord] = field(default_factory=list)
    summary: Optional["AccSummary"] = None


def emld(
    gamma: Iterable[RatLike],
    R: int,
    eps: RatLike,
    menu: Optional[Sequence[MonomialSupport]] = None,
    menu_degree: int = 3,
    jobs: int = 1,
    keep_records: bool = False,
) -> EmldReport:
    """mlds >= eps of enc pairs (X, b (f = 0)) with X an enc 1/r(1, a_2, a_3), b in gamma, f in the menu.

    Zero coefficients give the enc germ itself. A pair is kept only when it is
    enc as a pair (one primitive point of pair log discrepancy <= 1, and < 1).
    Each boundary has a single component.
    """
    gamma = tuple(sorted({as_rat(b) for b in gamma}))
    if any(not 0 <= b <= 1 for b in gamma):
        raise ValueError("coefficients must lie in [0, 1]")
    eps = as_rat(eps)
    if menu is None:
        menu = monomial_menu(3, menu_degree)
    report = EmldReport(R, gamma, eps, menu_degree)
    values: set[Fraction] = set()
    positive = [b for b in gamma if b > 0]
    for X, k, m in enc_germs(R, jobs):
        if 0 in gamma or not gamma:
            if m >= eps:
                values.add(m)
                if keep_records:
                    report.records.append(MldRecord(X, Boundary(), m, True, k))
        for b in positive:
            for f in menu:
                # The enc witness bounds the pair mld from above; skip pairs that cannot reach eps.
                if m - b * weight_of_series(X.alpha(k), f) < eps:
                    continue
                B = Boundary.of((b, f))
                flag, wit = is_enc_pair(X, B)
                if not flag:
                    continue
                value = pair_log_discrepancy(X, B, wit.alpha)
                if value >= eps:
                    values.add(value)
                    if keep_records:
                        report.records.append(MldRecord(X, B, value, True, wit.k))
    report.values = sorted(values)
    report.summary = acc_report(report.values, eps)
    return report


# ---------------------------------------------------------------- summaries


@dataclass(frozen=True)
class AccSummary:
    eps: Fraction
    count: int
    min_gap: Optional[Fraction]
    longest_increasing_run: int
    stabilized: Optional[bool] = None


def acc_report(values: Sequence[RatLike], eps: RatLike = 0, previous: Optional[Sequence[RatLike]] = None) -> AccSummary:
    """Count of distinct values >= eps, least gap between consecutive values above eps, longest strictly increasing run.

    With ``previous`` (the values of a smaller sweep) the summary also says
    whether the part above eps is unchanged.
    """
    eps = as_rat(eps)
    vals = [as_rat(v) for v in values]
    above = sorted({v for v in vals if v >= eps})
    gaps = [b - a for a, b in zip(above, above[1:])]
    run = best = 0
    prev = None
    for v in above:
        run = run + 1 if prev is not None and v > prev else 1
        best = max(best, run)
        prev = v
    stable = None
    if previous is not None:
        stable = above == sorted({as_rat(v) for v in previous if as_rat(v) >= eps})
    return AccSummary(eps, len(above), min(gaps) if gaps else None, best, stable)


def emld_stabilization(gamma: Iterable[RatLike], R_small: int, R_large: int, eps: RatLike, jobs: int = 1, **kw) -> tuple[EmldReport, EmldReport, AccSummary]:
    gamma = list(gamma)
    small = emld(gamma, R_small, eps, jobs=jobs, **kw)
    large = emld(gamma, R_large, eps, jobs=jobs, **kw)
    return small, large, acc_report(large.values, eps, previous=small.values)

