"""Lattice-pair counting behind the L4 embedding.

For dyadic M let S_M = {x integer : <x> in [M, 2M)} with <x> = sqrt(1+x^2).
The counted quantity is

    alpha(tau, n; M1, M2, R) = #{ (tau1, n1) : |n1| <= R,
                                  tau1 - n1^2 in S_M1,
                                  tau - tau1 - (n - n1)^2 in S_M2 }

whose sweep maximum is compared against (M1 ^ M2) * (M1 v M2)^(1/2).  The
curvature of n1 -> tau - n1^2 - (n-n1)^2 (second difference -4) is what
keeps the count that small.

Two routes: modulation_pair_count is an exact direct evaluation (interval
intersections per n1); max_ratio_sweep takes the maximum over ALL integer
(tau, n <= R) via a correlation of shell indicators, which dominates any
finite tau window.  A literal brute-force enumerator cross-checks both.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np


def shell_bounds(m):
    """Absolute-value range [a, b] of integers x with <x> in [m, 2m)."""
    if m < 1:
        raise ValueError(f"dyadic level must be >= 1, got {m}")
    lo2 = m * m - 1           # need x^2 >= m^2 - 1
    r = isqrt(lo2)
    a = r if r * r == lo2 else r + 1
    b = isqrt(4 * m * m - 2)  # need x^2 <= 4m^2 - 2
    return a, b


def _segments(a, b):
    """S as disjoint integer intervals: [-b,-a] u [a,b], merged when a = 0."""
    if a == 0:
        return [(-b, b)]
    return [(-b, -a), (a, b)]


def _overlap(lo1, hi1, lo2, hi2):
    return max(0, min(hi1, hi2) - max(lo1, lo2) + 1)


def modulation_pair_count(tau, n, m1, m2, n_range):
    """Exact alpha(tau, n) for the given dyadic pair and |n1| <= n_range."""
    a1, b1 = shell_bounds(m1)
    a2, b2 = shell_bounds(m2)
    total = 0
    for n1 in range(-n_range, n_range + 1):
        c = tau - n1 * n1 - (n - n1) ** 2
        # tau1 = n1^2 + x with x in S_M1 and x in c - S_M2
        for lo1, hi1 in _segments(a1, b1):
            for lo2, hi2 in _segments(a2, b2):
                total += _overlap(lo1, hi1, c - hi2, c - lo2)
    return total


def brute_force_pair_count(tau, n, m1, m2, n_range):
    """Literal enumeration over (tau1, n1); validator for the fast routes."""
    _, b1 = shell_bounds(m1)
    count = 0
    for n1 in range(-n_range, n_range + 1):
        for x in range(-b1, b1 + 1):
            tau1 = n1 * n1 + x
            g1 = 1 + (tau1 - n1 * n1) ** 2
            g2 = 1 + (tau - tau1 - (n - n1) ** 2) ** 2
            if m1 * m1 <= g1 < 4 * m1 * m1 and m2 * m2 <= g2 < 4 * m2 * m2:
                count += 1
    return count


def _shell_indicator(m):
    """0/1 vector of the shell over offsets [-b, b]; returns (vector, b)."""
    a, b = shell_bounds(m)
    v = np.zeros(2 * b + 1, dtype=np.int64)
    for lo, hi in _segments(a, b):
        v[lo + b: hi + b + 1] = 1
    return v, b


@dataclass(frozen=True)
class SweepCell:
    m1: int
    m2: int
    max_count: int
    bound: float
    ratio: float
    argmax_tau: int
    argmax_n: int


def max_over_tau(n, m1, m2, n_range):
    """(max over all integer tau of alpha(tau, n), argmax tau)."""
    v1, b1 = _shell_indicator(m1)
    v2, b2 = _shell_indicator(m2)
    # g(c) = #(S_M1 intersect (c - S_M2)); correlation of the indicators.
    g = np.convolve(v1, v2)          # S_M2 symmetric, so convolution = correlation
    goff = b1 + b2                   # g index c + goff, support |c| <= b1+b2
    qs = np.array([n1 * n1 + (n - n1) ** 2 for n1 in range(-n_range, n_range + 1)])
    lo = int(qs.min()) - goff
    hi = int(qs.max()) + goff
    acc = np.zeros(hi - lo + 1, dtype=np.int64)
    for q in qs:
        start = q - goff - lo
        acc[start: start + len(g)] += g
    j = int(np.argmax(acc))
    return int(acc[j]), j + lo


def max_ratio_sweep(m_max, n_range):
    """Per-(M1, M2) maxima of alpha over all (tau, |n| <= n_range), with the
    ratio against (M1 ^ M2)(M1 v M2)^(1/2).  Returns (cells, overall C)."""
    levels = []
    m = 1
    while m <= m_max:
        levels.append(m)
        m *= 2
    cells = []
    for m1 in levels:
        for m2 in levels:
            best, arg = 0, (0, 0)
            for n in range(0, n_range + 1):  # alpha is even in n
                cnt, tau_star = max_over_tau(n, m1, m2, n_range)
                if cnt > best:
                    best, arg = cnt, (tau_star, n)
            bound = min(m1, m2) * np.sqrt(max(m1, m2))
            cells.append(SweepCell(m1, m2, best, float(bound), best / float(bound),
                                   arg[0], arg[1]))
    overall = max(c.ratio for c in cells)
    return cells, overall
