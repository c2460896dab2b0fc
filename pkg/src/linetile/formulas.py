"""Closed-form predictions for the triangular and pentagonal families."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .spheres import HomotopyClass, SphereCountTable, suspension, wedge

Poly = dict[tuple[int, int], int]  # (power of x, power of y) -> coefficient

GF_NUMERATOR: Poly = {(2, 0): 2, (3, 1): 1, (4, 1): 5, (6, 2): 2}
GF_DENOMINATOR: Poly = {(0, 0): 1, (3, 1): -2, (5, 2): -1}

# seed values of s(t, d) that the recursion does not generate
RECURSION_SEEDS: Poly = {(2, 0): 2, (3, 1): 1, (4, 1): 5, (5, 1): 4, (6, 2): 4}


def fibonacci(n: int) -> int:
    if n < 1:
        raise ValueError("fibonacci needs n >= 1")
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


# -- triangles ---------------------------------------------------------

_TRIANGLE_BASE = {
    0: HomotopyClass.contractible(),
    1: HomotopyClass.sphere(0, 2),
    2: HomotopyClass.sphere(0, 2),
    3: HomotopyClass.sphere(1),
    4: HomotopyClass.sphere(1, 5),
}


@lru_cache(maxsize=None)
def triangle_homotopy(t: int) -> HomotopyClass:
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t in _TRIANGLE_BASE:
        return _TRIANGLE_BASE[t]
    # iterate upward so large t does not recurse deeply
    for s in range(5, t):
        triangle_homotopy(s)
    three = suspension(triangle_homotopy(t - 3))
    return wedge(three, three, suspension(triangle_homotopy(t - 5), 2))


def _series_divide(num: Poly, den: Poly, x_max: int) -> Poly:
    """Coefficients of num/den up to x^x_max; den must have constant term 1."""
    if den.get((0, 0)) != 1:
        raise ValueError("denominator must have constant term 1")
    out: Poly = {}
    for i in range(x_max + 1):
        ys = {j for (a, j) in num if a == i}
        ys |= {j + dj for (a, j) in out for (da, dj) in den if a + da == i and (da, dj) != (0, 0)}
        for j in sorted(ys):
            c = num.get((i, j), 0)
            for (da, dj), dc in den.items():
                if (da, dj) != (0, 0):
                    c -= dc * out.get((i - da, j - dj), 0)
            if c:
                out[(i, j)] = c
    return out


def triangle_counts_via_gf(t_max: int) -> SphereCountTable:
    if t_max < 2:
        raise ValueError("t_max must be at least 2")
    coeffs = _series_divide(GF_NUMERATOR, GF_DENOMINATOR, t_max)
    return SphereCountTable({k: v for k, v in coeffs.items() if k[0] >= 2})


def triangle_counts_via_recursion(t_max: int) -> SphereCountTable:
    if t_max < 2:
        raise ValueError("t_max must be at least 2")
    s: Poly = {k: v for k, v in RECURSION_SEEDS.items() if k[0] <= t_max}
    for t in range(7, t_max + 1):
        for d in range(2, t + 1):
            c = 2 * s.get((t - 3, d - 1), 0) + s.get((t - 5, d - 2), 0)
            if c:
                s[(t, d)] = c
    return SphereCountTable(s)


@dataclass(frozen=True)
class DimInterval:
    lo: int
    hi: int

    def __contains__(self, d: int) -> bool:
        return self.lo <= d <= self.hi

    def as_list(self) -> list[int]:
        return list(range(self.lo, self.hi + 1))


_F = {0: 5, 1: 2, 2: 4, 3: 1, 4: 3}


def f_of_t(t: int) -> int:
    return _F[t % 5]


def dim_interval(t: int) -> DimInterval:
    if t < 2:
        raise ValueError("t must be at least 2")
    num = 2 * t - f_of_t(t)
    assert num % 5 == 0, t
    return DimInterval(t // 3, num // 5)


# -- pentagons ---------------------------------------------------------


def pentagon_homotopy(t: int) -> HomotopyClass:
    if t < 1:
        raise ValueError("t must be at least 1")
    return HomotopyClass.sphere(t, fibonacci(t + 2) - 1)


def pendant_pentagon_homotopy(t: int) -> HomotopyClass:
    if t < 1:
        raise ValueError("t must be at least 1")
    return HomotopyClass.sphere(t, fibonacci(t + 2))


# golden reference rows for t = 2..13; used only to flag mismatches
REFERENCE_TABLE: dict[int, dict[int, int]] = {
    2: {0: 2},
    3: {1: 1},
    4: {1: 5},
    5: {1: 4},
    6: {2: 4},
    7: {2: 12},
    8: {2: 8, 3: 1},
    9: {3: 13},
    10: {3: 28},
    11: {3: 16, 4: 6},
    12: {4: 38},
    13: {4: 64, 5: 1},
}


def predict(family: str, t: int) -> HomotopyClass:
    if family == "triangular":
        return triangle_homotopy(t)
    if family == "pentagonal":
        return pentagon_homotopy(t)
    if family == "pentagonal_pendant":
        return pendant_pentagon_homotopy(t)
    raise ValueError(f"no formula for family {family!r}")
