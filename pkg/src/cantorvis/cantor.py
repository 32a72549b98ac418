"""The two-branch Cantor system: basic intervals, windows, and membership.

For 0 < lam < 1/2 the attractor of {x -> lam*x, x -> lam*x + 1 - lam} is a
Cantor set whose rank-n pieces are the 2^n map compositions applied to
[0, 1]. Depth budgets keep the exponential enumeration explicit: operations
fail loudly instead of silently materializing 2^n intervals.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import DepthBudgetExceeded, NotBasicEndpoints, OutOfRange, ParseError
from .exact import Interval, IntervalSet, RationalLike, as_rational, format_rational

DEPTH_ENV_VAR = "CANTOR_VIS_MAX_DEPTH"
DEFAULT_DEPTH_BUDGET = 24

UNIT = Interval(0, 1)


def depth_budget() -> int:
    """Hard depth ceiling; the environment variable overrides the default."""
    raw = os.environ.get(DEPTH_ENV_VAR)
    if raw is None:
        return DEFAULT_DEPTH_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ParseError(f"{DEPTH_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ParseError(f"{DEPTH_ENV_VAR} must be nonnegative, got {raw!r}")
    return value


def ensure_depth(n: int, budget: Optional[int] = None, what: str = "enumeration") -> None:
    ceiling = depth_budget() if budget is None else budget
    if n > ceiling:
        raise DepthBudgetExceeded(
            f"{what} at depth {n} exceeds the depth budget {ceiling}")


@dataclass(frozen=True)
class IfsMap:
    """Orientation-preserving contraction x -> ratio*x + shift, 0 < ratio < 1."""

    ratio: Fraction
    shift: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ratio", as_rational(self.ratio))
        object.__setattr__(self, "shift", as_rational(self.shift))
        if not Fraction(0) < self.ratio < Fraction(1):
            raise OutOfRange(
                f"contraction ratio must lie in (0, 1), got {format_rational(self.ratio)}")

    def apply(self, x: RationalLike) -> Fraction:
        return self.ratio * as_rational(x) + self.shift

    def apply_interval(self, iv: Interval) -> Interval:
        return iv.affine(self.ratio, self.shift)

    def invert(self, y: RationalLike) -> Fraction:
        return (as_rational(y) - self.shift) / self.ratio


@dataclass(frozen=True)
class CantorParams:
    """Contraction ratio of the two-branch system; must satisfy 0 < lam < 1/2."""

    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", as_rational(self.lam))
        if not Fraction(0) < self.lam < Fraction(1, 2):
            raise OutOfRange(
                f"lambda must lie in (0, 1/2), got {format_rational(self.lam)}")

    @property
    def low_map(self) -> IfsMap:
        return IfsMap(self.lam, Fraction(0))

    @property
    def high_map(self) -> IfsMap:
        return IfsMap(self.lam, 1 - self.lam)

    @property
    def maps(self) -> tuple[IfsMap, IfsMap]:
        return (self.low_map, self.high_map)


@dataclass(frozen=True)
class Coding:
    """Finite branch word; digits index the owning system's maps from 1."""

    digits: tuple[int, ...]
    alphabet: int = 2

    def __post_init__(self):
        for d in self.digits:
            if not 1 <= d <= self.alphabet:
                raise OutOfRange(f"digit {d} outside alphabet 1..{self.alphabet}")

    def interval(self, params: CantorParams) -> Interval:
        """Image of [0, 1] under the branch composition named by the digits.

        The first digit names the outermost map, so the last digit acts first.
        """
        iv = UNIT
        for d in reversed(self.digits):
            iv = params.maps[d - 1].apply_interval(iv)
        return iv


def _children(params: CantorParams, iv: Interval) -> tuple[Interval, Interval]:
    # both end-subintervals of proportion lam
    t = iv.length * params.lam
    return (Interval(iv.lo, iv.lo + t), Interval(iv.hi - t, iv.hi))


def refine_to_depth(params: CantorParams, iv: Interval, depth: int) -> list[Interval]:
    """The 2^depth descendants of `iv` after `depth` refinement rounds, in order."""
    parts = [iv]
    for _ in range(depth):
        nxt: list[Interval] = []
        for p in parts:
            nxt.extend(_children(params, p))
        parts = nxt
    return parts


def basic_intervals(params: CantorParams, n: int,
                    budget: Optional[int] = None) -> IntervalSet:
    """Exact union of all 2^n rank-n basic intervals.

    For lam < 1/2 the pieces are pairwise disjoint, so the result has
    exactly 2^n parts and total length (2*lam)^n.
    """
    if n < 0:
        raise OutOfRange(f"depth must be nonnegative, got {n}")
    ensure_depth(n, budget, what=f"basic-interval enumeration (2^{n} parts)")
    return IntervalSet(refine_to_depth(params, UNIT, n))


def refine_tilde(params: CantorParams, iv: Interval) -> IntervalSet:
    """Replace [a, a+t] by its two end-subintervals of proportion lam."""
    return IntervalSet(_children(params, iv))


def _peel_to_corner(params: CantorParams, x: Fraction,
                    max_rank: int) -> Optional[tuple[int, int]]:
    """Greedy inverse iteration; returns (rank, corner) when x reaches 0 or 1.

    A point is an endpoint of a rank-k basic interval exactly when k inverse
    branch steps send it to a corner of [0, 1]. The branch is unique because
    the two rank-1 pieces are disjoint for lam < 1/2.
    """
    lam = params.lam
    y = x
    for k in range(max_rank + 1):
        if y == 0:
            return k, 0
        if y == 1:
            return k, 1
        if 0 < y <= lam:
            y = y / lam
        elif 1 - lam <= y < 1:
            y = (y - (1 - lam)) / lam
        else:
            return None
    return None


def endpoint_rank(params: CantorParams, x: RationalLike,
                  max_rank: int) -> Optional[int]:
    """Smallest k <= max_rank such that x is an endpoint of a rank-k basic interval."""
    res = _peel_to_corner(params, as_rational(x), max_rank)
    return None if res is None else res[0]


def window_gn(params: CantorParams, a: RationalLike, b: RationalLike, n: int,
              budget: Optional[int] = None) -> IntervalSet:
    """Union of the rank-n basic intervals contained in [a, b].

    The bounds are validated by exact inverse iteration: `a` must be a left
    endpoint and `b` a right endpoint of basic intervals of rank <= n.
    Successive windows nest: every rank-(n+1) part lies inside a rank-n part.
    """
    lo = as_rational(a)
    hi = as_rational(b)
    if not lo < hi:
        raise OutOfRange(f"window must satisfy A < B, got "
                         f"{format_rational(lo)} >= {format_rational(hi)}")
    ensure_depth(n, budget, what=f"window enumeration (rank {n})")
    res_a = _peel_to_corner(params, lo, n)
    if res_a is None or res_a[1] != 0:
        raise NotBasicEndpoints(
            f"{format_rational(lo)} is not a left endpoint of any rank <= {n} basic interval")
    res_b = _peel_to_corner(params, hi, n)
    if res_b is None or res_b[1] != 1:
        raise NotBasicEndpoints(
            f"{format_rational(hi)} is not a right endpoint of any rank <= {n} basic interval")
    window = Interval(lo, hi)
    out: list[Interval] = []

    def descend(piece: Interval, depth: int) -> None:
        if not piece.intersects(window):
            return
        if depth == n:
            if window.contains_interval(piece):
                out.append(piece)
            return
        left, right = _children(params, piece)
        descend(left, depth + 1)
        descend(right, depth + 1)

    descend(UNIT, 0)
    return IntervalSet(out)


class Membership(Enum):
    IN = "In"
    OUT = "Out"
    UNKNOWN_AT_DEPTH = "UnknownAtDepth"


@dataclass(frozen=True)
class MembershipResult:
    """Finite-depth membership verdict for a rational point.

    IN certificates are exact: either the point peels to a corner of [0, 1]
    (an endpoint, `rank` set) or its inverse orbit revisits a value
    (`cycle_entry`/`cycle_period` set), which pins an eventually periodic
    branch expansion that never leaves the construction.
    """

    status: Membership
    depth: int
    rank: Optional[int] = None
    escaped_at: Optional[int] = None
    cycle_entry: Optional[int] = None
    cycle_period: Optional[int] = None


def membership(params: CantorParams, x: RationalLike, n: int) -> MembershipResult:
    """Classify a rational point against the attractor at depth n.

    OUT means the point leaves the rank-k cover for some k <= n. IN is
    certified exactly (endpoint or periodic inverse orbit). Verdicts are
    monotone: IN/OUT never flip as n grows, UNKNOWN_AT_DEPTH can only resolve.
    """
    lam = params.lam
    y = as_rational(x)
    seen: dict[Fraction, int] = {}
    for step in range(n + 1):
        if y < 0 or y > 1:
            return MembershipResult(Membership.OUT, n, escaped_at=step)
        if y == 0 or y == 1:
            return MembershipResult(Membership.IN, n, rank=step)
        if y in seen:
            return MembershipResult(Membership.IN, n, cycle_entry=seen[y],
                                    cycle_period=step - seen[y])
        seen[y] = step
        if step == n:
            break
        if y <= lam:
            y = y / lam
        elif y >= 1 - lam:
            y = (y - (1 - lam)) / lam
        else:
            # strictly inside the middle gap at this rank
            return MembershipResult(Membership.OUT, n, escaped_at=step + 1)
    return MembershipResult(Membership.UNKNOWN_AT_DEPTH, n)
