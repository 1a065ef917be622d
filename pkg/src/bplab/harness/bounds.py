"""Closed-form right-hand sides, evaluated exactly or rounded up.

Irrational values are written as coef * radicand**(1/degree) and replaced
by ceil(10**6 * value) / 10**6, so a comparison against them can only err
on the side of reporting that a bound holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

DENOMINATOR = 10**6
SURFACE_SHIFT = 3152


@dataclass(frozen=True)
class BoundValue:
    value: Fraction
    rounding: str  # "exact" or "up"

    def __str__(self) -> str:
        return str(self.value)


def _ceil_root(n: int, degree: int) -> int:
    """Smallest integer t >= 0 with t**degree >= n."""
    if n <= 0:
        return 0
    if degree == 2:
        t = math.isqrt(n)
    elif degree == 4:
        t = math.isqrt(math.isqrt(n))
    else:
        t = int(round(n ** (1.0 / degree)))
    while t ** degree < n:
        t += 1
    while t > 0 and (t - 1) ** degree >= n:
        t -= 1
    return t


def root_up(coef, radicand, degree: int) -> BoundValue:
    """coef * radicand**(1/degree), exact when rational, else rounded up."""
    coef, radicand = Fraction(coef), Fraction(radicand)
    if radicand < 0 or coef < 0:
        raise ValueError("root_up expects nonnegative inputs")
    num, den = radicand.numerator, radicand.denominator
    rn, rd = round(num ** (1.0 / degree)), round(den ** (1.0 / degree))
    for a in (rn - 1, rn, rn + 1):
        for b in (rd - 1, rd, rd + 1):
            if a >= 0 and b > 0 and a ** degree == num and b ** degree == den:
                return BoundValue(coef * Fraction(a, b), "exact")
    scaled = (coef * DENOMINATOR) ** degree * radicand
    t = _ceil_root(math.ceil(scaled), degree)
    return BoundValue(Fraction(t, DENOMINATOR), "up")


def exact(x) -> BoundValue:
    return BoundValue(Fraction(x), "exact")


def d_k(k: int) -> Fraction:
    """3 (k+1)^(k+1) / k^k with 0^0 = 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    value = Fraction(3 * (k + 1) ** (k + 1), k**k)
    assert value < 9 * (k + 1)
    return value


# name -> (anchor, description)
BOUND_INFO = {
    "extremal": ("Extremal", "density of a k-gap-planar graph <= 8 sqrt(k+1)"),
    "treewidth": ("Treewidth", "tw <= 21 (k+1)^(3/4) n^(1/2)"),
    "linear_expansion": ("LinearExpansion", "nabla_r <= 18 (k+1)(r+1)"),
    "linear_topo_expansion": ("LinearTopoExpansion", "topo nabla_r <= 8 sqrt((2r+1)(k+1))"),
    "gap_cover_expansion": ("GapCoverPlanarExpansion", "nabla_r <= d_{(2r+1)k}"),
    "gap_cover_expansion_linear": ("GapCoverPlanarExpansion", "d_{(2r+1)k} < 18 (r+1)(k+1)"),
    "extremal_gap_cover": ("ExtremalGapCover", "density <= d_k"),
    "extremal_surface": ("ExtremalSurface", "density <= sqrt((8k+4)(2g+9))"),
    "gk_gap_treewidth": ("gkGapTreewidth", "tw <= 4 (2g+3)^(1/2) (2k+1)^(3/4) n^(1/2)"),
    "extremal_gap_cover_surface": ("ExtremalGapCoverSurface", "density <= 3 (g+3152)(k+1)"),
    "linear_expansion_surface": ("LinearExpansionSurface", "nabla_r <= 6 (g+3152)(k+1)(r+1)"),
    "gap_cover_topo_expansion_surface": ("GapCoverTopoExpansionSurface",
                                         "topo nabla_r < 6 (g+3152)(r+1)(k+1)"),
    "degeneracy": ("Extremal", "k-gap-planar graphs are 16 sqrt(k+1)-degenerate"),
}

NOT_CHECKABLE = {
    "ER": "not checkable: unspecified absolute constants",
    "kGapPlanarNabla": "not checkable: unspecified absolute constants",
}


def closed_form_bounds(k: int = 0, r: int = 0, g: int = 0, n: int = 0) -> dict[str, BoundValue]:
    """Every closed-form right-hand side at (k, r, g, n)."""
    if min(k, r, g, n) < 0:
        raise ValueError("all parameters must be >= 0")
    s = SURFACE_SHIFT
    return {
        "extremal": root_up(8, k + 1, 2),
        "treewidth": root_up(21, Fraction((k + 1) ** 3 * n**2), 4),
        "linear_expansion": exact(18 * (k + 1) * (r + 1)),
        "linear_topo_expansion": root_up(8, (2 * r + 1) * (k + 1), 2),
        "gap_cover_expansion": exact(d_k((2 * r + 1) * k)),
        "gap_cover_expansion_linear": exact(18 * (r + 1) * (k + 1)),
        "extremal_gap_cover": exact(d_k(k)),
        "extremal_surface": root_up(1, (8 * k + 4) * (2 * g + 9), 2),
        "gk_gap_treewidth": root_up(4, Fraction((2 * g + 3) ** 2 * (2 * k + 1) ** 3 * n**2), 4),
        "extremal_gap_cover_surface": exact(3 * (g + s) * (k + 1)),
        "linear_expansion_surface": exact(6 * (g + s) * (k + 1) * (r + 1)),
        "gap_cover_topo_expansion_surface": exact(6 * (g + s) * (r + 1) * (k + 1)),
        "degeneracy": root_up(16, k + 1, 2),
    }


def scol_nabla_bound(r: int, topo_nabla_prev: Fraction) -> BoundValue:
    """(6r)^r * topo_nabla_{r-1}^(3r), exact for rational inputs."""
    return exact(Fraction(6 * r) ** r * Fraction(topo_nabla_prev) ** (3 * r))
