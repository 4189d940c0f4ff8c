"""Hyperquotient germs (f = 0) / mu_r in C^4 and the search for the low-value vector beta.

For a weight w in the lattice N the relevant functional is

    value(w) = w(x1 x2 x3 x4) - w(f) = max over monomials mu of f of  sum_i (1 - mu_i) w_i,

a maximum of linear forms. The set {value <= 1} is therefore a polyhedron cut
out by one inequality per monomial, and its vertices give an exact bounding box
for the lattice search. This replaces a guessed shift bound: a lattice vector
outside the box has value > 1 for every f whose known monomials produced the box.

Internally weights are handled as integer vectors W = r * w so that the
enumeration runs in numpy integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .exact import Monomial, MonomialSupport, TruncationError, Weight, fractional_vector, weight_of_monomial
from .toric import Boundary, NotEncError, SemiInvarianceError

F_TYPES = ("cA", "odd", "cDE")

LEADING: dict[str, tuple[tuple[int, ...], ...]] = {
    "cA": ((1, 1, 0, 0),),
    "odd": ((2, 0, 0, 0), (0, 2, 0, 0)),
    "cDE": ((2, 0, 0, 0),),
}
# Variables g may involve (0-based) and the least total degree of its monomials.
G_VARIABLES: dict[str, tuple[int, ...]] = {"cA": (2, 3), "odd": (2, 3), "cDE": (1, 2, 3)}
G_MIN_DEGREE: dict[str, int] = {"cA": 2, "odd": 3, "cDE": 3}

# Setting ceiling on t for k >= 2 (besides the t = 1, k = 2 edge).
T_CEILING = Fraction(12, 13)


class UnboundedSearchError(NotEncError):
    """Some direction never raises the value: infinitely many lattice vectors have value <= 1."""


class NotLcAlongError(ArithmeticError):
    def __init__(self, value: Fraction) -> None:
        super().__init__(f"ambient log discrepancy {value} <= 0: not lc along the divisor of beta")
        self.value = value


@dataclass(frozen=True)
class HyperquotientGerm:
    """(f = 0) in C^4 / mu_r, weights a, character e, f = leading(f_type) + g.

    ``g_support=None`` means only the leading monomials are known and g is
    assumed negligible for every weight queried (the truncation contract in its
    strongest form).
    """

    r: int
    a: tuple[int, int, int, int]
    e: int
    f_type: str
    g_support: Optional[MonomialSupport] = None

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("r must be a positive integer")
        if len(self.a) != 4:
            raise ValueError("a hyperquotient germ needs four weights")
        if self.f_type not in F_TYPES:
            raise ValueError(f"f_type must be one of {F_TYPES}, got {self.f_type!r}")
        if self.g_support is not None and self.g_support.dim != 4:
            raise ValueError("g_support must consist of monomials in four variables")
        object.__setattr__(self, "a", tuple(int(x) % self.r for x in self.a))
        object.__setattr__(self, "e", int(self.e) % self.r)

    @property
    def leading(self) -> list[Monomial]:
        return [Monomial(m) for m in LEADING[self.f_type]]

    def known_monomials(self) -> list[Monomial]:
        mons = set(self.leading)
        if self.g_support is not None:
            mons |= self.g_support.monomials
        return sorted(mons)

    def minimal_monomials(self) -> tuple[tuple[int, ...], ...]:
        mons = self.known_monomials()
        keep = [m for m in mons if not any(o != m and o.divides(m) for o in mons)]
        return tuple(m.exponents for m in keep)

    def residues(self) -> frozenset[tuple[int, ...]]:
        return frozenset(tuple((j * x) % self.r for x in self.a) for j in range(self.r))

    def alpha(self, j: int) -> Weight:
        return fractional_vector(self.r, self.a, j)

    def character(self, m: Monomial) -> int:
        return sum(x * y for x, y in zip(self.a, m.exponents)) % self.r

    def __str__(self) -> str:
        g = "" if self.g_support is None else str(self.g_support)
        return f"{self.r};{','.join(map(str, self.a))};{self.e};{self.f_type};{g}"


@dataclass(frozen=True)
class SettingReport:
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, passed in self.checks.items() if not passed]


def _ca_excluded(r: int, a: Sequence[int], e: int) -> bool:
    """(a1..a4, e) = (c, -c, 1, 0, 0) mod r for a unit c, up to swapping x1<->x2 and x3<->x4."""
    for a1, a2 in ((a[0], a[1]), (a[1], a[0])):
        for a3, a4 in ((a[2], a[3]), (a[3], a[2])):
            if (
                e % r == 0
                and a4 % r == 0
                and a3 % r == 1 % r
                and (a1 + a2) % r == 0
                and math.gcd(a1, r) == 1
            ):
                return True
    return False


def validate_setting(germ: HyperquotientGerm) -> SettingReport:
    """Arithmetic and shape conditions on (r, a, e, f): one boolean per condition."""
    r, a, e = germ.r, germ.a, germ.e
    ge = math.gcd(e, r)
    checks = {
        "gcd-e": all(ge % math.gcd(x, r) == 0 for x in a),
        "pairwise-coprime": all(math.gcd(math.gcd(a[i], a[j]), r) == 1 for i, j in itertools.combinations(range(4), 2)),
        "weight-sum": (sum(a) - e) % r == 1 % r,
        "leading": all(germ.character(m) == e for m in germ.leading)
        and (germ.f_type != "odd" or (a[0] - a[1]) % r != 0),
    }
    shape_ok = True
    semi_ok = True
    if germ.g_support is not None:
        allowed = set(G_VARIABLES[germ.f_type])
        for m in germ.g_support.monomials:
            if m.degree < G_MIN_DEGREE[germ.f_type] or any(x and i not in allowed for i, x in enumerate(m.exponents)):
                shape_ok = False
            if germ.character(m) != e:
                semi_ok = False
    checks["g-shape"] = shape_ok
    checks["g-semi-invariant"] = semi_ok
    checks["cA-exclusion"] = germ.f_type != "cA" or not _ca_excluded(r, a, e)
    return SettingReport(checks)


def enumerate_lattice(germ: HyperquotientGerm, shift_bound: int) -> list[Weight]:
    """alpha_j + m for j = 0..r-1 and 0 <= m_i <= shift_bound, without the zero vector."""
    out = set()
    for j in range(germ.r):
        base = germ.alpha(j)
        for m in itertools.product(range(shift_bound + 1), repeat=4):
            v = base + m
            if v.total() != 0:
                out.add(v)
    return sorted(out)


def _g_floor_scaled(germ: HyperquotientGerm, W: np.ndarray) -> Optional[np.ndarray]:
    """Lower bound for r*w(unlisted part of g), or None when g's list is complete."""
    g = germ.g_support
    if g is None or g.truncation_degree is None:
        return None
    cols = list(G_VARIABLES[germ.f_type])
    return (g.truncation_degree + 1) * W[:, cols].min(axis=1)


def f_weight(germ: HyperquotientGerm, w: Weight) -> Fraction:
    """w(f) over leading + g, refusing when a truncated g cannot certify the minimum."""
    best = min(weight_of_monomial(w, m) for m in germ.known_monomials())
    g = germ.g_support
    if g is not None and g.truncation_degree is not None:
        floor = (g.truncation_degree + 1) * min(w[i] for i in G_VARIABLES[germ.f_type])
        if best > floor:
            raise TruncationError(f"w(f) at {w} is not certified by the truncated support of g")
    return best


def value(germ: HyperquotientGerm, w: Weight) -> Fraction:
    """w(x1 x2 x3 x4) - w(f)."""
    if len(w) != 4:
        raise ValueError("value() needs a weight in four variables")
    return w.total() - f_weight(germ, w)


# ---------------------------------------------------------------- exact polyhedral box


def _solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Gaussian elimination over Q; None when the system is singular."""
    n = len(rows)
    m = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        for i in range(n):
            if i != col and m[i][col] != 0:
                factor = m[i][col] / p
                m[i] = [x - factor * y for x, y in zip(m[i], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


@lru_cache(maxsize=4096)
def polytope_box(monomials: tuple[tuple[int, ...], ...]) -> Optional[tuple[Fraction, ...]]:
    """Coordinatewise maxima of {w >= 0 : sum_i (1 - mu_i) w_i <= 1 for every listed mu}.

    Returns None when the region is unbounded. Both questions are settled by
    exact vertex enumeration, which is cheap for the handful of Newton-minimal
    monomials a germ carries.
    """
    n = 4
    cons = [tuple(Fraction(1 - x) for x in mu) for mu in monomials]
    unit = [tuple(Fraction(-1 if i == j else 0) for j in range(n)) for i in range(n)]
    # Recession cone: d >= 0, sum d = 1, c.d <= 0; nonempty iff it has a vertex.
    pool = [(c, Fraction(0)) for c in cons] + [(u, Fraction(0)) for u in unit]
    ones = tuple(Fraction(1) for _ in range(n))
    for choice in itertools.combinations(pool, n - 1):
        sol = _solve([c for c, _ in choice] + [ones], [b for _, b in choice] + [Fraction(1)])
        if sol is None:
            continue
        if all(x >= 0 for x in sol) and all(sum(ci * x for ci, x in zip(c, sol)) <= 0 for c in cons):
            return None
    pool = [(c, Fraction(1)) for c in cons] + [(u, Fraction(0)) for u in unit]
    best = [Fraction(0)] * n
    for choice in itertools.combinations(pool, n):
        sol = _solve([c for c, _ in choice], [b for _, b in choice])
        if sol is None:
            continue
        if all(x >= 0 for x in sol) and all(sum(ci * x for ci, x in zip(c, sol)) <= 1 for c in cons):
            best = [max(b, x) for b, x in zip(best, sol)]
    return tuple(best)


def search_box(germ: HyperquotientGerm) -> tuple[Fraction, ...]:
    """Sound coordinate bounds for every w in N with value(w) <= 1.

    Raises UnboundedSearchError when no such bound exists (the known monomials
    leave a direction along which the value never grows), or TruncationError
    when that verdict depends on unlisted monomials of a truncated g.
    """
    box = polytope_box(germ.minimal_monomials())
    if box is None:
        g = germ.g_support
        if g is not None and g.truncation_degree is not None:
            raise TruncationError("the listed monomials do not bound the search; g is truncated")
        raise UnboundedSearchError(f"value <= 1 on an unbounded region for {germ}")
    return box


def shift_is_irrelevant(germ: HyperquotientGerm, j: int, m: Sequence[int]) -> bool:
    """True when alpha_j + m lies outside the search box, which forces value > 1."""
    box = search_box(germ)
    v = germ.alpha(j) + tuple(m)
    return any(x > b for x, b in zip(v.coords, box))


# ---------------------------------------------------------------- low-value enumeration


def _fm_eliminate(cons: list[tuple[tuple[int, ...], int]], v: int) -> list[tuple[tuple[int, ...], int]]:
    """Fourier-Motzkin: the projection of {c.W <= b} along coordinate v, integer coefficients, deduplicated."""
    pos = [(c, b) for c, b in cons if c[v] > 0]
    neg = [(c, b) for c, b in cons if c[v] < 0]
    out = {(c, b) for c, b in cons if c[v] == 0}
    for cp, bp in pos:
        for cn, bn in neg:
            p, n = cp[v], -cn[v]
            c = tuple(n * x + p * y for x, y in zip(cp, cn))
            b = n * bp + p * bn
            g = 0
            for x in c + (b,):
                g = math.gcd(g, x)
            if g > 1:
                c, b = tuple(x // g for x in c), b // g
            if any(c):
                out.add((c, b))
            elif b < 0:
                out.add((c, b))
    return sorted(out)


def _interval(cons, v: int, fixed: dict[int, int]) -> tuple[int, int]:
    """Integer range of W_v allowed by constraints whose other variables are all fixed."""
    lo, hi = 0, None
    for c, b in cons:
        s = b - sum(c[i] * x for i, x in fixed.items())
        if c[v] > 0:
            top = s // c[v]
            hi = top if hi is None else min(hi, top)
        elif c[v] < 0:
            lo = max(lo, -((-s) // c[v]))
        elif s < 0:
            return 1, 0
    return lo, hi


def _candidates(germ: HyperquotientGerm, box: Sequence[Fraction]) -> np.ndarray:
    """All r*w with w in N inside the polytope cut out by the known monomials, as int64 rows.

    Exact projections give, for each prefix of coordinates, the range that
    still extends to a real point of the polytope, so the enumeration never
    walks the (possibly huge) empty corners of the bounding box. The last two
    coordinates are expanded with numpy.
    """
    r = germ.r
    caps = [math.floor(b * r) for b in box]
    full = [(tuple(1 - x for x in mu), r) for mu in germ.minimal_monomials()]
    full += [(tuple(-1 if i == j else 0 for j in range(4)), 0) for i in range(4)]
    full += [(tuple(1 if i == j else 0 for j in range(4)), caps[i]) for i in range(4)]
    order = sorted(range(4), key=lambda i: (caps[i], i))
    levels = [full]
    for v in reversed(order[1:]):
        levels.append(_fm_eliminate(levels[-1], v))
    levels.reverse()  # levels[i] involves order[0..i] only
    o0, o1, o2, o3 = order
    c3 = np.array([c for c, _ in levels[3]], dtype=np.int64)
    b3 = np.array([b for _, b in levels[3]], dtype=np.int64)
    chunks = []
    for j in range(r):
        base = [(j * x) % r for x in germ.a]
        lo0, hi0 = _interval(levels[0], o0, {})
        for x0 in range(lo0 + (base[o0] - lo0) % r, hi0 + 1, r):
            lo1, hi1 = _interval(levels[1], o1, {o0: x0})
            for x1 in range(lo1 + (base[o1] - lo1) % r, hi1 + 1, r):
                lo2, hi2 = _interval(levels[2], o2, {o0: x0, o1: x1})
                x2 = np.arange(lo2 + (base[o2] - lo2) % r, hi2 + 1, r, dtype=np.int64)
                if len(x2) == 0:
                    continue
                s = b3[None, :] - c3[:, o0][None, :] * x0 - c3[:, o1][None, :] * x1 - c3[:, o2][None, :] * x2[:, None]
                coef = c3[:, o3][None, :]
                big = np.int64(1) << 60
                hi3 = np.where(coef > 0, s // np.where(coef > 0, coef, 1), big).min(axis=1)
                lo3 = np.where(coef < 0, -((-s) // np.where(coef < 0, coef, -1)), 0).max(axis=1)
                lo3 = np.maximum(lo3, 0)
                bad = ((coef == 0) & (s < 0)).any(axis=1)
                start = lo3 + (base[o3] - lo3) % r
                count = np.where(bad, 0, np.maximum((hi3 - start) // r + 1, 0))
                if not count.any():
                    continue
                reps = np.repeat(np.arange(len(x2)), count)
                offs = np.arange(count.sum()) - np.repeat(np.cumsum(count) - count, count)
                block = np.empty((len(reps), 4), dtype=np.int64)
                block[:, o0] = x0
                block[:, o1] = x1
                block[:, o2] = x2[reps]
                block[:, o3] = start[reps] + r * offs
                chunks.append(block)
    if not chunks:
        return np.zeros((0, 4), dtype=np.int64)
    W = np.concatenate(chunks)
    return W[np.any(W > 0, axis=1)]


def _scaled_values(germ: HyperquotientGerm, W: np.ndarray) -> np.ndarray:
    """r * value on each row of W, certifying truncated g where it matters."""
    M = np.array([m.exponents for m in germ.known_monomials()], dtype=np.int64)
    fmin = (W @ M.T).min(axis=1)
    vals = W.sum(axis=1) - fmin
    floor = _g_floor_scaled(germ, W)
    if floor is not None:
        low = vals <= germ.r
        if np.any(low & (fmin > floor)):
            raise TruncationError("a low-value candidate depends on unlisted monomials of g")
    return vals


def _not_unit(W: np.ndarray, r: int) -> np.ndarray:
    """Mask dropping r*e_i: the unit vectors are the ambient coordinate divisors, never exceptional."""
    return ~((W.sum(axis=1) == r) & ((W == r).sum(axis=1) == 1))


def low_value_vectors(germ: HyperquotientGerm) -> list[tuple[Weight, Fraction]]:
    """Every w in N other than the unit vectors with value(w) <= 1, with its value."""
    box = search_box(germ)
    W = _candidates(germ, box)
    if len(W) == 0:
        return []
    vals = _scaled_values(germ, W)
    mask = (vals <= germ.r) & _not_unit(W, germ.r)
    r = germ.r
    out = [
        (Weight(tuple(Fraction(int(x), r) for x in row)), Fraction(int(v), r))
        for row, v in zip(W[mask], vals[mask])
    ]
    return sorted(out)


def is_primitive(germ: HyperquotientGerm, w: Weight) -> bool:
    """No w/m (m >= 2) lies in N: exact division followed by a residue lookup."""
    r = germ.r
    nums = [c * r for c in w.coords]
    if any(x.denominator != 1 for x in nums):
        raise ValueError(f"{w} is not in N")
    ints = [int(x) for x in nums]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    res = germ.residues()
    return not any(g % m == 0 and tuple((x // m) % r for x in ints) in res for m in range(2, g + 1))


@dataclass(frozen=True)
class BetaResult:
    beta: Weight
    t: Fraction
    k: int

    def __post_init__(self) -> None:
        if not 0 < self.t <= 1:
            raise ValueError(f"t must lie in (0, 1], got {self.t}")
        if self.k != index_of(self.t):
            raise ValueError(f"k={self.k} does not match t={self.t}")


def index_of(t: Fraction) -> int:
    """k = floor(1/t) + 1, with the t = 1 edge sent to k = 2."""
    return 2 if t == 1 else math.floor(1 / t) + 1


def beta_search(germ: HyperquotientGerm) -> Optional[BetaResult]:
    """The unique primitive w in N (unit vectors aside) with value(w) <= 1.

    Returns None when no lattice vector has value <= 1. Raises NotEncError when
    two primitive vectors qualify or the single one has value <= 0, and
    UnboundedSearchError when infinitely many vectors qualify.
    """
    low = low_value_vectors(germ)
    prim = [(w, v) for w, v in low if is_primitive(germ, w)]
    if not prim:
        return None
    if len(prim) > 1:
        shown = ", ".join(f"{w} (value {v})" for w, v in prim[:3])
        raise NotEncError(f"{len(prim)} primitive vectors with value <= 1, e.g. {shown}")
    beta, t = prim[0]
    if t <= 0:
        raise NotEncError(f"primitive vector {beta} has value {t} <= 0")
    return BetaResult(beta, t, index_of(t))


@dataclass(frozen=True)
class LowValueStatus:
    """Outcome of the value conditions on N: 'a' (nothing low), 'b' (a valid beta) or a failure reason."""

    status: str
    beta: Optional[BetaResult] = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("a", "b")


def classify_low_values(germ: HyperquotientGerm) -> LowValueStatus:
    try:
        res = beta_search(germ)
    except UnboundedSearchError as exc:
        return LowValueStatus("unbounded", None, str(exc))
    except TruncationError as exc:
        return LowValueStatus("indeterminate", None, str(exc))
    except NotEncError as exc:
        return LowValueStatus("not-enc", None, str(exc))
    if res is None:
        return LowValueStatus("a")
    if res.t == 1 or res.t <= T_CEILING:
        return LowValueStatus("b", res)
    return LowValueStatus("ceiling", res, f"t = {res.t} lies in (12/13, 1)")


def ambient_discrepancy(germ: HyperquotientGerm, B: Boundary, beta: Optional[BetaResult] = None) -> Fraction:
    """t - sum b_i beta(f_i): the log discrepancy of beta's divisor for the ambient pair."""
    if beta is None:
        beta = beta_search(germ)
    if beta is None:
        raise NotEncError("no vector with value <= 1: there is no beta")
    for _, f in B.components:
        if f.dim != 4:
            raise ValueError("boundary supports must live in four variables")
        if len({germ.character(m) for m in f.monomials}) != 1:
            raise SemiInvarianceError(f"support {f} is not semi-invariant")
    a = beta.t - B.weight(beta.beta)
    if a <= 0:
        raise NotLcAlongError(a)
    return a


def relabel_germ(germ: HyperquotientGerm, j: int) -> HyperquotientGerm:
    """Change of generator a -> j a, e -> j e; N and f are untouched."""
    if math.gcd(j, germ.r) != 1:
        raise ValueError("relabeling needs a unit j")
    return HyperquotientGerm(germ.r, tuple(j * x for x in germ.a), j * germ.e, germ.f_type, germ.g_support)


def witness_g_support(r: int, a: Sequence[int], e: int, f_type: str, degree_cap: int) -> Optional[MonomialSupport]:
    """Pure powers x_i^n (i a g-variable, n >= the g degree floor, n <= degree_cap) of character e."""
    mons = []
    for i in G_VARIABLES[f_type]:
        for n in range(G_MIN_DEGREE[f_type], degree_cap + 1):
            if (n * a[i] - e) % r == 0:
                exps = [0, 0, 0, 0]
                exps[i] = n
                mons.append(tuple(exps))
    return MonomialSupport.of(*mons) if mons else None


def generic_g_support(r: int, a: Sequence[int], e: int, f_type: str) -> Optional[MonomialSupport]:
    """Every Newton-minimal monomial of character e in g's variables.

    A monomial with some exponent >= r + floor is divisible by another one of the
    same character and admissible degree, so exponents stay below r + floor.
    """
    vars_ = G_VARIABLES[f_type]
    floor = G_MIN_DEGREE[f_type]
    top = r + floor
    found = []
    for exps in itertools.product(range(top), repeat=len(vars_)):
        if sum(exps) < floor:
            continue
        if (sum(a[i] * x for i, x in zip(vars_, exps)) - e) % r:
            continue
        full = [0, 0, 0, 0]
        for i, x in zip(vars_, exps):
            full[i] = x
        found.append(Monomial(tuple(full)))
    if not found:
        return None
    support = MonomialSupport(frozenset(found))
    return MonomialSupport(frozenset(support.minimal()))
