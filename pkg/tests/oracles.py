"""Independent brute-force routes used to pin the library's answers.

Nothing here imports the enumeration code under test: lattice points come
straight from the definition N = Z^d + Z (a/r), values from the monomials, and
search bounds from a floating-point LP (only ever used with a safety margin).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction as F

import numpy as np
from scipy.optimize import linprog


def frac(q):
    return q - math.floor(q)


def cube_points(r, a):
    """Points of N in (0,1]^d as scaled integer tuples (each coordinate in 1..r)."""
    pts = set()
    for j in range(r):
        pts.add(tuple((j * x - 1) % r + 1 for x in a))
    return pts


def low_cube_points(r, a, threshold=1):
    """(scaled point, primitive) for points of N in (0,1]^d with sum <= threshold.

    A point is a multiple m*u (m >= 2) of a lattice point u iff u is also in the
    cube with a smaller sum, so primitivity is decided inside the same list.
    """
    pts = sorted(p for p in cube_points(r, a) if F(sum(p), r) <= threshold)
    pset = set(pts)
    out = []
    for p in pts:
        g = 0
        for x in p:
            g = math.gcd(g, x)
        divisible = any(g % m == 0 and tuple(x // m for x in p) in pset for m in range(2, g + 1))
        out.append((p, not divisible))
    return out


def mld_formula(r, a):
    if r == 1:
        return F(len(a))
    return min(sum(1 + F(k * x, r) - math.ceil(F(k * x, r)) for x in a) for k in range(1, r))


def enc_oracle(r, a):
    prim = [p for p, ok in low_cube_points(r, a) if ok]
    return len(prim) == 1 and sum(prim[0]) < r


def lattice_box(r, a, caps):
    """All nonzero points of N with coordinate i in [0, caps[i]], scaled by r."""
    out = []
    for j in range(r):
        base = [(j * x) % r for x in a]
        ranges = [range(b, c * r + 1, r) for b, c in zip(base, caps)]
        for p in itertools.product(*ranges):
            if any(p):
                out.append(p)
    return out


def series_weight(w, monomials):
    return min(sum(c * e for c, e in zip(w, m)) for m in monomials)


def lp_box(monomials, d=4):
    """Integer caps on each coordinate of {w >= 0 : sum_i (1 - mu_i) w_i <= 1}, from an LP plus margin."""
    A = np.array([[1 - x for x in mu] for mu in monomials], dtype=float)
    b = np.ones(len(monomials))
    caps = []
    for i in range(d):
        c = np.zeros(d)
        c[i] = -1
        res = linprog(c, A_ub=A, b_ub=b, bounds=[(0, None)] * d, method="highs")
        if res.status == 3:
            return None
        assert res.status == 0, res.message
        caps.append(int(math.floor(-res.fun + 1e-6)) + 1)
    return caps


def low_value_oracle(r, a, monomials):
    """Nonzero points of N, unit vectors aside, with w(x1x2x3x4) - w(f) <= 1, as (Fractions, value)."""
    caps = lp_box(monomials)
    if caps is None:
        return None
    out = []
    for p in lattice_box(r, a, caps):
        if sum(p) == r and max(p) == r:
            continue
        w = tuple(F(x, r) for x in p)
        v = sum(w) - series_weight(w, monomials)
        if v <= 1:
            out.append((w, v))
    return sorted(out)


def terminal_identity(r, a, e):
    return all(sum(frac(F(j * x, r)) for x in a) == frac(F(j * e, r)) + F(j, r) + 1 for j in range(1, r))


def index_condition(v, r, eps):
    return all(sum(1 + (m - 1) * x - math.ceil(m * x) for x in v) >= eps for m in range(2, r + 1))


def transfer_realised(delta, R):
    found = set()
    for r in range(2, R + 1):
        for k0 in range(1, r):
            rp = r // math.gcd(r, k0)
            if rp in found:
                continue
            for a in itertools.combinations_with_replacement(range(r), 4):
                lhs0 = sum(frac(F(x * k0, r)) for x in a)
                for e in range(r):
                    if lhs0 != frac(F(e * k0, r)) + F(k0, r):
                        continue
                    if all(
                        sum(frac(F(x * k, r)) for x in a) >= frac(F(e * k, r)) + F(k0, r) + delta
                        for k in range(1, r)
                        if k != k0
                    ):
                        found.add(rp)
                        break
                if rp in found:
                    break
    return found


def low_cube_points_batch(r, a1, pairs):
    """low_cube_points for every 1/r(a1, a2, a3) with (a2, a3) in pairs, sharing the numpy work.

    Returns {(a2, a3): [(scaled point, primitive), ...]} sorted as low_cube_points does.
    """
    A = np.column_stack([np.full(len(pairs), a1), np.array(pairs, dtype=np.int64).reshape(-1, 2)])
    j = np.arange(r, dtype=np.int64)[:, None, None]
    P = (j * A[None, :, :] - 1) % r + 1  # (r, n, 3), every point of the cube
    low = P.sum(axis=2) <= r
    out = {}
    for col, pair in enumerate(pairs):
        pts = sorted({tuple(p) for p in P[low[:, col], col].tolist()})
        pset = set(pts)
        rows = []
        for p in pts:
            g = math.gcd(*p)
            divisible = any(g % m == 0 and tuple(x // m for x in p) in pset for m in range(2, g + 1))
            rows.append((p, not divisible))
        out[tuple(pair)] = rows
    return out
