"""Exact multilinear polynomials over the Boolean cube.

Every function on {0,1}^d equals a unique weighted sum of monomials
prod_{i in S} x_i over variable subsets S.  That representation is what
lets a network approximate an arbitrary cube function one monomial at a
time, and its uniqueness is what the redundancy rank check relies on, so
everything here is exact rational arithmetic with no rounding anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

MAX_DIMENSION = 20  # 2^d table blowup guard

CoeffMap = dict[frozenset[int], Fraction]


def cube_points(d: int) -> Iterator[tuple[int, ...]]:
    """All 2^d points of {0,1}^d, in bitmask order (coordinate i = bit i)."""
    for mask in range(1 << d):
        yield tuple((mask >> i) & 1 for i in range(d))


def _check_dimension(d: int) -> None:
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if d > MAX_DIMENSION:
        raise ValueError(f"dimension {d} exceeds the cap of {MAX_DIMENSION} (table size 2^d)")


@dataclass(frozen=True)
class MultilinearPoly:
    """Monomial-basis polynomial: coeffs maps a variable subset to its weight."""

    dimension: int
    coeffs: CoeffMap = field(default_factory=dict)

    def __post_init__(self):
        _check_dimension(self.dimension)
        clean: CoeffMap = {}
        for S, v in self.coeffs.items():
            S = frozenset(S)
            if any(not (0 <= i < self.dimension) for i in S):
                raise ValueError(f"subset {sorted(S)} is out of range for dimension {self.dimension}")
            clean[S] = Fraction(v)
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, S) -> Fraction:
        return self.coeffs.get(frozenset(S), Fraction(0))


def interpolate_multilinear(truth_table: Mapping[tuple[int, ...], object], d: int) -> MultilinearPoly:
    """Recover the unique multilinear polynomial matching a full truth table.

    Uses the subset Moebius transform: the coefficient of S is the
    alternating sum of table values over the sub-cube below S, computed
    here one coordinate at a time in O(d * 2^d) exact operations.  Float
    table values are converted to rationals exactly (binary expansion).
    """
    _check_dimension(d)
    values: list[Fraction] = []
    for point in cube_points(d):
        try:
            raw = truth_table[point]
        except KeyError:
            raise ValueError(f"truth table is missing cube point {point}") from None
        values.append(Fraction(raw))
    for i in range(d):
        bit = 1 << i
        for mask in range(1 << d):
            if mask & bit:
                values[mask] -= values[mask ^ bit]
    coeffs: CoeffMap = {}
    for mask in range(1 << d):
        S = frozenset(i for i in range(d) if mask & (1 << i))
        coeffs[S] = values[mask]
    return MultilinearPoly(d, coeffs)


def eval_poly(poly: MultilinearPoly, x: Sequence):
    """Evaluate sum_S v_S prod_{i in S} x_i; exact when x is rational."""
    if len(x) != poly.dimension:
        raise ValueError(f"x has length {len(x)}, polynomial has dimension {poly.dimension}")
    total = Fraction(0)
    for S, v in poly.coeffs.items():
        term = v
        for i in sorted(S):
            term = term * x[i]
        total = total + term
    return total
