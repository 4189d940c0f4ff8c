"""Exhaustive checks of three arithmetic statements about fractional parts.

* the terminal lemma: a fractional-part identity holding for every j forces the
  weights to pair up modulo r;
* the index bound: the inequality sum_i (1 + (m-1) v_i - ceil(m v_i)) >= eps for
  all m in [2, r] caps r;
* the transfer scan: the set of r / gcd(r, k0) realised by tuples meeting an
  equality at k0 and a delta-margin inequality elsewhere.

All three run over integers scaled by r, vectorised with numpy.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .exact import RatLike, as_rat
from .parallel import pmap


class LemmaViolation(AssertionError):
    """An exhaustive check found a counterexample to a proved statement."""


# ---------------------------------------------------------------- terminal lemma


@dataclass(frozen=True)
class TerminalTuple:
    r: int
    a: tuple[int, int, int, int]
    e: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("r must be a positive integer")
        a = tuple(int(x) % self.r for x in self.a)
        if len(a) != 4:
            raise ValueError("a terminal tuple has four weights")
        e = int(self.e) % self.r
        if math.gcd(a[3], self.r) != math.gcd(e, self.r):
            raise ValueError("gcd(a_4, r) must equal gcd(e, r)")
        if any(math.gcd(x, self.r) != 1 for x in a[:3]):
            raise ValueError("a_1, a_2, a_3 must be units mod r")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "e", e)


@dataclass(frozen=True)
class PairingPattern:
    """variant 1: (i1, i2, i3) with a_i1 = 1, a_i2 + a_i3 = 0 (and a_4 = e).
    variant 2: (i1, ..., i6) pairing the six values a_1..a_4, -e, -1 into zero sums.
    Indices are 1-based."""

    variant: int
    pairing: tuple[int, ...]


def hypothesis_identity(r: int, a: Sequence[int], e: int) -> bool:
    """sum_i {j a_i / r} = {j e / r} + j/r + 1 for every 1 <= j <= r-1, with no domain checks on (a, e)."""
    return all(sum((j * x) % r for x in a) == (j * e) % r + j + r for j in range(1, r))


def terminal_hypothesis(t: TerminalTuple) -> bool:
    return hypothesis_identity(t.r, t.a, t.e)


def _pairings(items: Sequence[int]) -> list[tuple[int, ...]]:
    """Perfect matchings of the items, each flattened as (p1, q1, p2, q2, ...), in lexicographic order."""
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    out = []
    for idx, partner in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1 :]
        for tail in _pairings(remaining):
            out.append((first, partner) + tail)
    return out


PAIRINGS_OF_SIX = tuple(_pairings(tuple(range(1, 7))))


def find_pattern(t: TerminalTuple) -> Optional[PairingPattern]:
    r, a, e = t.r, t.a, t.e
    if math.gcd(e, r) > 1:
        if (a[3] - e) % r:
            return None
        for i1, i2, i3 in itertools.permutations((1, 2, 3)):
            if (a[i1 - 1] - 1) % r == 0 and (a[i2 - 1] + a[i3 - 1]) % r == 0:
                return PairingPattern(1, (i1, i2, i3))
        return None
    six = list(a) + [-e, -1]
    for p in PAIRINGS_OF_SIX:
        if all((six[p[2 * s] - 1] + six[p[2 * s + 1] - 1]) % r == 0 for s in range(3)):
            return PairingPattern(2, p)
    return None


def terminal_conclusion(t: TerminalTuple) -> PairingPattern:
    """The first pattern (lexicographic search) guaranteed by the lemma; raises LemmaViolation if none."""
    if not terminal_hypothesis(t):
        raise ValueError(f"{t} does not satisfy the hypothesis identity")
    pattern = find_pattern(t)
    if pattern is None:
        raise LemmaViolation(f"no pairing pattern for {t}")
    return pattern


@dataclass
class TerminalReport:
    R: int
    domain_raw: int = 0
    hypothesis_raw: int = 0
    hypothesis_canonical: int = 0
    by_variant: dict[int, int] = field(default_factory=dict)
    violations: list[TerminalTuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _units(r: int) -> list[int]:
    return [x for x in range(r) if math.gcd(x, r) == 1]


def _terminal_slice(r: int) -> tuple[int, int, int, dict[int, int], list[tuple]]:
    """Hypothesis-true tuples for one r, with (a_1, a_2, a_3) sorted (the statement is symmetric in them)."""
    units = _units(r)
    by_gcd: dict[int, int] = {}
    for x in range(r):
        by_gcd[math.gcd(x, r)] = by_gcd.get(math.gcd(x, r), 0) + 1
    domain = len(units) ** 3 * sum(c * c for c in by_gcd.values())
    if r == 1:
        # One tuple, empty range of j; gcd(e, 1) = 1 selects variant 2.
        t = TerminalTuple(1, (0, 0, 0, 0), 0)
        pat = find_pattern(t)
        return domain, 1, 1, {pat.variant: 1} if pat else {}, [] if pat else [(1, (0, 0, 0, 0), 0)]
    triples = np.array(list(itertools.combinations_with_replacement(units, 3)), dtype=np.int64)
    es = np.arange(r, dtype=np.int64)
    A3 = np.repeat(triples, r, axis=0)
    E = np.tile(es, len(triples))
    # j = 1 pins a_4 down: a_1 + a_2 + a_3 + a_4 = e + 1 + r with all residues in [0, r).
    A4 = E + 1 + r - A3.sum(axis=1)
    keep = (A4 >= 0) & (A4 < r)
    A3, E, A4 = A3[keep], E[keep], A4[keep]
    g4 = np.gcd(A4, r)
    keep = g4 == np.gcd(E, r)
    A3, E, A4 = A3[keep], E[keep], A4[keep]
    A = np.column_stack([A3, A4])
    for j in range(2, r):
        if len(A) == 0:
            break
        ok = ((j * A) % r).sum(axis=1) == (j * E) % r + j + r
        A, E = A[ok], E[ok]
    raw = 0
    by_variant: dict[int, int] = {}
    bad = []
    for row, e in zip(A.tolist(), E.tolist()):
        mult = len(set(itertools.permutations(row[:3])))
        raw += mult
        t = TerminalTuple(r, tuple(row), e)
        pat = find_pattern(t)
        if pat is None:
            bad.append((r, tuple(row), e))
        else:
            by_variant[pat.variant] = by_variant.get(pat.variant, 0) + mult
    return domain, raw, len(A), by_variant, bad


def verify_terminal_lemma(R: int, jobs: int = 1) -> TerminalReport:
    """Every tuple with r <= R meeting the hypothesis gets a pattern; counts are raw and canonical."""
    if R < 1:
        raise ValueError("R must be positive")
    report = TerminalReport(R)
    for domain, raw, canon, by_variant, bad in pmap(_terminal_slice, range(1, R + 1), jobs):
        report.domain_raw += domain
        report.hypothesis_raw += raw
        report.hypothesis_canonical += canon
        for v, c in by_variant.items():
            report.by_variant[v] = report.by_variant.get(v, 0) + c
        report.violations.extend(TerminalTuple(*b) for b in bad)
    return report


# ---------------------------------------------------------------- index bound


def _index_terms(r: int) -> np.ndarray:
    """T[m, n] = r * (1 + (m-1) n/r - ceil(m n/r)) for m in [0, r], n in [0, r]."""
    m = np.arange(r + 1, dtype=np.int64)[:, None]
    n = np.arange(r + 1, dtype=np.int64)[None, :]
    return r + (m - 1) * n - r * (-((-m * n) // r))


def index_bound_admits(r: int, d: int, eps: RatLike) -> bool:
    """Is there v in ((0,1] with denominator r)^d meeting the inequality for all m in [2, r]?

    Coordinates equal to 0 are excluded: each contributes 1 for every m, which
    would make the condition vacuous for eps <= 1 and any r.
    """
    eps = as_rat(eps)
    if r < 2:
        return d >= 0
    T = _index_terms(r)
    cand = np.array(list(itertools.combinations_with_replacement(range(1, r + 1), d)), dtype=np.int64)
    for m in range(2, r + 1):
        s = T[m][cand].sum(axis=1)
        cand = cand[eps.denominator * s >= eps.numerator * r]
        if len(cand) == 0:
            return False
    return True


def index_bound_search(d: int, eps: RatLike, R: int) -> int:
    """Largest r <= R admitting such a v (r = 1 always does: the range of m is empty)."""
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    for r in range(R, 0, -1):
        if index_bound_admits(r, d, eps):
            return r
    return 1


# ---------------------------------------------------------------- transfer scan


def _transfer_slice(args: tuple[int, Fraction]) -> list[int]:
    r, delta = args
    if r < 2:
        return []
    p, q = delta.numerator, delta.denominator
    mult = (np.arange(r, dtype=np.int64)[:, None] * np.arange(r, dtype=np.int64)[None, :]) % r
    A = np.array(list(itertools.combinations_with_replacement(range(r), 4)), dtype=np.int64)
    found: set[int] = set()
    by_gcd: dict[int, list[int]] = {}
    for k0 in range(1, r):
        by_gcd.setdefault(math.gcd(k0, r), []).append(k0)
    for g, k0s in sorted(by_gcd.items()):
        for k0 in k0s:
            if _transfer_realised(r, k0, g, A, mult, p, q):
                found.add(r // g)
                break
    return sorted(found)


def _transfer_realised(r, k0, g, A, mult, p, q) -> bool:
    U = mult[k0][A].sum(axis=1)
    c = U - k0
    sel = (c >= 0) & (c < r) & (c % g == 0)
    if not np.any(sel):
        return False
    rows, cv = A[sel], c[sel]
    # e k0 = c (mod r): e = e0 + s r/g for s in [0, g).
    rg = r // g
    inv = pow(k0 // g, -1, rg) if rg > 1 else 0
    e0 = ((cv // g) * inv) % rg if rg > 1 else np.zeros_like(cv)
    rows = np.repeat(rows, g, axis=0)
    E = (np.repeat(e0, g) + np.tile(np.arange(g, dtype=np.int64) * rg, len(e0))) % r
    order = [(m * k0) % r for m in range(2, r)]
    order = [k for k in dict.fromkeys(order) if k != k0 and k != 0]
    order += [k for k in range(1, r) if k != k0 and k not in set(order)]
    for k in order:
        lhs = mult[k][rows].sum(axis=1) - mult[k][E]
        ok = q * lhs >= q * k0 + p * r
        rows, E = rows[ok], E[ok]
        if len(rows) == 0:
            return False
    return True


def transfer_fivefold_scan(delta: RatLike, R: int, jobs: int = 1) -> set[int]:
    """Values r / gcd(r, k0) over all (r <= R, k0, a, e) meeting the equality and the delta margin."""
    delta = as_rat(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    out: set[int] = set()
    for part in pmap(_transfer_slice, [(r, delta) for r in range(1, R + 1)], jobs):
        out.update(part)
    return out
