"""Parameter families of enc hyperquotient germs and sweeps over them.

Each family fixes f's type and the residues (a_1, a_2, a_3, a_4, e) mod r as a
function of one unit parameter a. ``verify_family`` runs the beta search over a
family and checks that beta-admitting germs either stay below the family's r
cutoff or reuse a beta already realised at half the sweep bound.
``enc_census`` sweeps every valid germ with r <= R and sorts the hits by k.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .exact import Weight
from .hyperquotient import (
    F_TYPES,
    LEADING,
    HyperquotientGerm,
    classify_low_values,
    validate_setting,
    witness_g_support,
)
from .parallel import pmap

G_MODES = ("leading", "witness")

Shape = Callable[[int, int], tuple[int, int, int, int, int]]


@dataclass(frozen=True)
class Family:
    id: str
    f_type: str
    shape: Shape
    parity: Optional[int] = None  # required r mod 2 (or r mod 4 == 0 when 4)
    unit_shift: bool = False  # a + 1 must be a unit too
    has_parameter: bool = True

    def admits_r(self, r: int) -> bool:
        if self.parity == 4:
            return r % 4 == 0
        if self.parity is not None:
            return r % 2 == self.parity
        return True

    def parameters(self, r: int) -> list[int]:
        if not self.admits_r(r):
            return []
        if not self.has_parameter:
            return [0]
        out = []
        for a in range(r):
            if math.gcd(a, r) != 1:
                continue
            if self.unit_shift and math.gcd(a + 1, r) != 1:
                continue
            out.append(a)
        return out

    def residues(self, r: int, a: int) -> tuple[tuple[int, int, int, int], int]:
        vals = tuple(x % r for x in self.shape(r, a))
        return vals[:4], vals[4]


FAMILIES: dict[str, Family] = {
    f.id: f
    for f in (
        Family("cA-C", "cA", lambda r, a: (a, 1, -a, a + 1, a + 1), unit_shift=True),
        Family("cA-D", "cA", lambda r, a: (a, -a - 1, -a, a + 1, -1), unit_shift=True),
        Family("cA-B", "cA", lambda r, a: (1, a, -a, a + 1, a + 1)),
        Family("odd", "odd", lambda r, a: (1, (r + 2) // 2, (r - 2) // 2, 2, 2), parity=4, has_parameter=False),
        Family("cDE-b", "cDE", lambda r, a: (a, -a, 1, 2 * a, 2 * a), parity=0),
        Family("cDE-c", "cDE", lambda r, a: (1, a, -a, 2, 2), parity=0),
        Family("cDE-d", "cDE", lambda r, a: ((r - 1) // 2, (r + 1) // 2, a, -a, -1), parity=1),
        Family("cDE-e", "cDE", lambda r, a: (a, -a, 2 * a, 1, 2 * a), parity=1),
        Family("cDE-f", "cDE", lambda r, a: (1, a, -a, 2, 2), parity=1),
        Family("cDE-a", "cDE", lambda r, a: (0, a, -a, 1, 0)),
    )
}


def r_cutoff(family_id: str, k: int) -> int:
    """Largest r at which a beta-admitting germ of the family can occur at this k."""
    if family_id == "cA-C":
        return max(13, 3 * k * (k + 1) // 2)
    if family_id == "cDE-a":
        return 6 * k + 1
    return _FIXED_CUTOFFS[family_id]


_FIXED_CUTOFFS = {
    "cA-D": 13,
    "cA-B": 27,
    "odd": 27,
    "cDE-b": 18,
    "cDE-c": 30,
    "cDE-d": 13,
    "cDE-e": 14,
    "cDE-f": 17,
}


def make_germ(r: int, a, e: int, f_type: str, g_mode: str, R: int) -> HyperquotientGerm:
    if g_mode not in G_MODES:
        raise ValueError(f"g_mode must be one of {G_MODES}")
    g = witness_g_support(r, a, e, f_type, 2 * R) if g_mode == "witness" else None
    return HyperquotientGerm(r, tuple(a), e, f_type, g)


def family_instances(family_id: str, R: int, g_mode: str = "witness") -> Iterator[HyperquotientGerm]:
    """Germs with 2 <= r <= R of the family's shape that pass every setting check."""
    fam = FAMILIES[family_id]
    for r in range(2, R + 1):
        for p in fam.parameters(r):
            a, e = fam.residues(r, p)
            germ = make_germ(r, a, e, fam.f_type, g_mode, R)
            if validate_setting(germ).ok:
                yield germ


@dataclass(frozen=True)
class BetaHit:
    r: int
    a: tuple[int, int, int, int]
    e: int
    f_type: str
    beta: Weight
    t: Fraction
    k: int


@dataclass
class FamilyReport:
    family: str
    k: int
    R: int
    g_mode: str
    cutoff: int
    examined: int = 0
    statuses: dict[str, int] = field(default_factory=dict)
    hits: list[BetaHit] = field(default_factory=list)  # beta-admitting germs at this k
    other_k: int = 0
    escaped: list[BetaHit] = field(default_factory=list)
    stabilized: bool = True

    @property
    def realized(self) -> list[tuple[int, Weight]]:
        return sorted({(h.r, h.beta) for h in self.hits})

    @property
    def max_r(self) -> int:
        return max((h.r for h in self.hits), default=0)

    @property
    def beyond_cutoff(self) -> list[BetaHit]:
        return [h for h in self.hits if h.r > self.cutoff]

    @property
    def ok(self) -> bool:
        return not self.escaped


def _classify(germ: HyperquotientGerm):
    res = classify_low_values(germ)
    return res.status, res.beta


def verify_family(family_id: str, k: int, R: int, g_mode: str = "witness", jobs: int = 1) -> FamilyReport:
    """Beta search over the family; hits at this k must respect the cutoff or reuse a beta from r <= R/2."""
    if k < 2:
        raise ValueError("k must be at least 2 (k = 1 means no beta)")
    germs = list(family_instances(family_id, R, g_mode))
    report = FamilyReport(family_id, k, R, g_mode, r_cutoff(family_id, k))
    statuses: Counter[str] = Counter()
    for germ, (status, beta) in zip(germs, pmap(_classify, germs, jobs)):
        report.examined += 1
        statuses[status] += 1
        if status != "b":
            continue
        if beta.k != k:
            report.other_k += 1
            continue
        report.hits.append(BetaHit(germ.r, germ.a, germ.e, germ.f_type, beta.beta, beta.t, beta.k))
    report.statuses = dict(sorted(statuses.items()))
    half = R // 2
    early = {h.beta for h in report.hits if h.r <= half}
    late = {h.beta for h in report.hits}
    report.stabilized = late <= early
    report.escaped = [h for h in report.hits if h.r > max(report.cutoff, half) and h.beta not in early]
    return report


# ---------------------------------------------------------------- census


_SYMMETRIES = {
    "cA": [(0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2)],
    "odd": [(0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2)],
    "cDE": [(0,) + p for p in itertools.permutations((1, 2, 3))],
}


def match_family(r: int, a, e: int, f_type: str) -> Optional[tuple[str, int]]:
    """First family (in FAMILIES order) containing the germ up to the coordinate symmetries of f's type."""
    a = tuple(x % r for x in a)
    e %= r
    for fam in FAMILIES.values():
        if fam.f_type != f_type:
            continue
        for p in fam.parameters(r):
            shape, fe = fam.residues(r, p)
            if fe != e:
                continue
            for perm in _SYMMETRIES[f_type]:
                if tuple(a[i] for i in perm) == shape:
                    return fam.id, p
    return None


@dataclass(frozen=True)
class CensusRow:
    k: int
    r: int
    a: tuple[int, int, int, int]
    e: int
    f_type: str
    beta: Optional[Weight]
    t: Optional[Fraction]
    family: Optional[str]


@dataclass
class CensusReport:
    R: int
    k_max: int
    g_mode: str
    examined: int = 0
    statuses: dict[str, int] = field(default_factory=dict)
    rows: list[CensusRow] = field(default_factory=list)

    def by_k(self, k: int) -> list[CensusRow]:
        return [row for row in self.rows if row.k == k]

    def gamma(self, k: int) -> list[Weight]:
        """The empirical finite set of betas realised at index k."""
        return sorted({row.beta for row in self.by_k(k) if row.beta is not None})

    @property
    def residuals(self) -> list[CensusRow]:
        return [row for row in self.rows if row.k >= 2 and row.family is None]


def setting_germs(r: int, g_mode: str = "witness", R: Optional[int] = None) -> list[HyperquotientGerm]:
    """Every germ with this r passing the setting checks (e is forced by the sum condition)."""
    R = r if R is None else R
    out = []
    for a in itertools.product(range(r), repeat=4):
        e = (sum(a) - 1) % r
        for f_type in F_TYPES:
            if any(sum(x * y for x, y in zip(a, m)) % r != e for m in LEADING[f_type]):
                continue
            germ = make_germ(r, a, e, f_type, g_mode, R)
            if validate_setting(germ).ok:
                out.append(germ)
    return out


def _census_slice(args: tuple[int, str, int]) -> list[tuple[HyperquotientGerm, str, object]]:
    r, g_mode, R = args
    return [(g, *_classify(g)) for g in setting_germs(r, g_mode, R)]


def enc_census(R: int, k_max: int, g_mode: str = "witness", jobs: int = 1) -> CensusReport:
    """All valid germs with 2 <= r <= R; rows for k = 1 (nothing low) up to k_max."""
    report = CensusReport(R, k_max, g_mode)
    statuses: Counter[str] = Counter()
    for part in pmap(_census_slice, [(r, g_mode, R) for r in range(2, R + 1)], jobs):
        for germ, status, beta in part:
            report.examined += 1
            statuses[status] += 1
            if status == "a":
                report.rows.append(CensusRow(1, germ.r, germ.a, germ.e, germ.f_type, None, None, None))
            elif status == "b" and beta.k <= k_max:
                fam = match_family(germ.r, germ.a, germ.e, germ.f_type)
                report.rows.append(
                    CensusRow(beta.k, germ.r, germ.a, germ.e, germ.f_type, beta.beta, beta.t, fam[0] if fam else None)
                )
    report.statuses = dict(sorted(statuses.items()))
    report.rows.sort(key=lambda row: (row.k, row.r, row.f_type, row.a, row.e))
    return report
