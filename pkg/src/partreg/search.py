"""Combinatorial searches for monochromatic kernel solutions.

Solution enumeration goes through the kernel parametrization: free columns
of the reduced row echelon form range over the bounded domain and the pivot
columns are back-substituted, so only genuine kernel lattice points are
ever visited.  Forcing numbers come from depth-first search over colorings
of 1..N with color(1) = 0 fixed for symmetry; a prefix of an avoiding
coloring is itself avoiding, so the first failure depth is the forcing
number.

All searches are deterministic: enumeration orders are canonical and the
first hit in that order is returned.  Outcomes are re-verified (exact
equation check plus color re-evaluation) before they are reported.
"""

from __future__ import annotations

import math
import time
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence

from .colorings import (Coloring, factorial_expand, phi, phi_index,
                        _floor_log2_ints, tau)
from .linalg import Matrix, Vector, frac, is_zero_vector, rref
from .systems import dyadic_blocks, truncate_with_identity

_F = Fraction


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for a search: domain size, node count, wall time."""

    domain_bound: Optional[int] = None
    height_bound: Optional[int] = None
    max_nodes: Optional[int] = None
    max_ms: Optional[float] = None

    def __post_init__(self):
        for name in ("domain_bound", "height_bound", "max_nodes"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a solution search.

    kind is "solution" (with the verified assignment) or "exhausted" (with
    the reason: domain fully scanned or a budget hit).  `ms` is wall time
    and is excluded from canonical serializations.
    """

    kind: str
    assignment: Optional[Vector]
    nodes: int
    ms: float
    reason: Optional[str] = None


@dataclass(frozen=True)
class ForcingResult:
    """Outcome of coloring-space backtracking up to a cap.

    forced_at is the minimal N such that every coloring of 1..N contains a
    monochromatic solution; when no such N <= cap exists, `avoiding` holds
    the lexicographically least avoiding coloring of 1..cap (colors of
    1, 2, ..., cap with color(1) = 0).
    """

    colors: int
    cap: int
    forced_at: Optional[int]
    avoiding: Optional[tuple[int, ...]]
    nodes: int


def _kernel_parametrization(m: Matrix):
    red, pivots = rref(m.entries)
    free = [c for c in range(m.cols) if c not in pivots]
    return red, pivots, free


def iter_kernel_assignments(m: Matrix, candidates: Sequence[Fraction],
                            member=None) -> Iterator[Vector]:
    """All x with m.x = 0, free entries drawn from `candidates` in order,
    pivot entries accepted when `member(value)` holds (default: value is one
    of the candidates)."""
    red, pivots, free = _kernel_parametrization(m)
    if member is None:
        candidate_set = set(candidates)
        member = candidate_set.__contains__
    for combo in product(candidates, repeat=len(free)):
        x = [_F(0)] * m.cols
        for f, val in zip(free, combo):
            x[f] = frac(val)
        ok = True
        for r, p in enumerate(pivots):
            val = -sum((red[r][f] * x[f] for f in free), _F(0))
            if not member(val):
                ok = False
                break
            x[p] = val
        if ok:
            yield tuple(x)


def _box_member(n: int):
    def member(v: Fraction) -> bool:
        return v.denominator == 1 and 1 <= v <= n
    return member


def iter_box_solutions(m: Matrix, n: int) -> Iterator[Vector]:
    """All kernel vectors with every entry an integer in 1..n."""
    candidates = [_F(k) for k in range(1, n + 1)]
    return iter_kernel_assignments(m, candidates, member=_box_member(n))


def find_mono_solution(system: Matrix, coloring: Coloring,
                       budget: SearchBudget) -> SearchOutcome:
    """First kernel lattice point in 1..N monochromatic under the coloring."""
    if budget.domain_bound is None:
        raise ValueError("find_mono_solution needs budget.domain_bound")
    n = budget.domain_bound
    start = time.monotonic()
    nodes = 0
    for x in iter_box_solutions(system, n):
        nodes += 1
        if budget.max_nodes is not None and nodes > budget.max_nodes:
            return SearchOutcome("exhausted", None, nodes - 1,
                                 (time.monotonic() - start) * 1000,
                                 reason="node budget")
        if budget.max_ms is not None and (time.monotonic() - start) * 1000 > budget.max_ms:
            return SearchOutcome("exhausted", None, nodes,
                                 (time.monotonic() - start) * 1000,
                                 reason="time budget")
        colors = {coloring(v) for v in x}
        if len(colors) == 1:
            # independent re-check before reporting
            assert is_zero_vector(system.mul_vec(x))
            assert len({coloring(v) for v in x}) == 1
            return SearchOutcome("solution", x, nodes,
                                 (time.monotonic() - start) * 1000)
    return SearchOutcome("exhausted", None, nodes,
                         (time.monotonic() - start) * 1000, reason="domain")


def solution_value_sets(system: Matrix, n: int) -> dict[int, list[frozenset[int]]]:
    """Distinct value sets of box solutions, grouped by their maximum entry.

    Monochromaticity only depends on the set of values, so duplicates
    (permuted or repeated entries) are dropped.
    """
    by_max: dict[int, list[frozenset[int]]] = {}
    seen: set[frozenset[int]] = set()
    for x in iter_box_solutions(system, n):
        values = frozenset(int(v) for v in x)
        if values in seen:
            continue
        seen.add(values)
        by_max.setdefault(max(values), []).append(values)
    return by_max


def _decide_avoidable(by_max: dict[int, list[frozenset[int]]], k: int,
                      n: int) -> tuple[Optional[tuple[int, ...]], int]:
    """Lexicographically least avoiding k-coloring of 1..n, or None.

    Depth-first in value order with color 0 first (color(1) = 0 by
    symmetry), plus forward checking: per solution set, count the uncolored
    members below its maximum; when they run out with a single color c
    present, color c is blocked at the maximum, and a value with every
    color blocked kills the branch.  Values that belong to no solution set
    take color 0 without branching.
    """
    triples = []  # (max value, members below max)
    for m_val, sets in by_max.items():
        if m_val > n:
            continue
        for values in sets:
            triples.append((m_val, tuple(sorted(values - {m_val}))))
    block_count = [[0] * k for _ in range(n + 1)]
    for m_val, others in triples:
        if not others:  # constant solution: any color completes it
            for c in range(k):
                block_count[m_val][c] += 1
    by_member: dict[int, list[int]] = {}
    uncolored = [len(others) for _, others in triples]
    color_cnt = [[0] * k for _ in triples]
    for ix, (_, others) in enumerate(triples):
        for v in others:
            by_member.setdefault(v, []).append(ix)
    constrained = set(by_member) | {m_val for m_val, _ in triples}
    colors: list[Optional[int]] = [None] * (n + 1)
    nodes = 0

    def assign(v: int, c: int) -> bool:
        """Propagate; returns False on a dead future value (still applied)."""
        ok = True
        for ix in by_member.get(v, ()):
            color_cnt[ix][c] += 1
            uncolored[ix] -= 1
            if uncolored[ix] == 0:
                seen = [cc for cc in range(k) if color_cnt[ix][cc] > 0]
                if len(seen) == 1:
                    w = triples[ix][0]
                    bc = block_count[w]
                    bc[seen[0]] += 1
                    if all(bc[cc] > 0 for cc in range(k)):
                        ok = False
        return ok

    def unassign(v: int, c: int) -> None:
        for ix in by_member.get(v, ()):
            if uncolored[ix] == 0:
                seen = [cc for cc in range(k) if color_cnt[ix][cc] > 0]
                if len(seen) == 1:
                    block_count[triples[ix][0]][seen[0]] -= 1
            color_cnt[ix][c] -= 1
            uncolored[ix] += 1

    def extend(v: int) -> bool:
        nonlocal nodes
        if v > n:
            return True
        if v not in constrained:
            colors[v] = 0
            if extend(v + 1):
                return True
            colors[v] = None
            return False
        for c in range(1) if v == 1 else range(k):
            if block_count[v][c] > 0:
                continue  # completes a monochromatic solution
            nodes += 1
            colors[v] = c
            if assign(v, c) and extend(v + 1):
                return True
            unassign(v, c)
            colors[v] = None
        return False

    if extend(1):
        return tuple(colors[1:]), nodes
    return None, nodes


def forcing_number(system: Matrix, k: int, cap: int) -> ForcingResult:
    """Minimal N <= cap forcing every k-coloring of 1..N, else the
    lexicographically least avoiding coloring of 1..cap.

    Avoidability is monotone (a prefix of an avoiding coloring avoids), so
    the threshold is located by bisection over N, each step an avoiding-
    coloring existence search.
    """
    if k < 1:
        raise ValueError("need at least one color")
    by_max = solution_value_sets(system, cap)
    avoiding, nodes = _decide_avoidable(by_max, k, cap)
    if avoiding is not None:
        return ForcingResult(k, cap, None, avoiding, nodes)
    lo, hi = 0, cap  # avoidable at lo, not at hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        found, n2 = _decide_avoidable(by_max, k, mid)
        nodes += n2
        if found is not None:
            lo = mid
        else:
            hi = mid
    return ForcingResult(k, cap, hi, None, nodes)


def verify_avoiding(system: Matrix, coloring_list: Sequence[int]) -> bool:
    """Exhaustively re-check an avoiding coloring by scanning the whole box.

    Deliberately enumeration-only (no kernel parametrization, no pruning) so
    it is an independent oracle for the search path.  Exponential in the
    column count; intended for small instances.
    """
    n = len(coloring_list)
    for candidate in product(range(1, n + 1), repeat=system.cols):
        if not is_zero_vector(system.mul_vec([_F(v) for v in candidate])):
            continue
        cs = {coloring_list[v - 1] for v in candidate}
        if len(cs) == 1:
            return False
    return True


def solution_in_class(system: Matrix, class_values: Sequence[int],
                      distinct: bool = False) -> Optional[Vector]:
    """First solution with every entry in the class (all distinct if asked)."""
    if not class_values:
        raise ValueError("class must be non-empty")
    values = sorted({int(v) for v in class_values})
    members = set(_F(v) for v in values)
    candidates = [_F(v) for v in values]
    for x in iter_kernel_assignments(system, candidates,
                                     member=members.__contains__):
        if distinct and len(set(x)) != len(x):
            continue
        return x
    return None


def truncation_forcing_demo(m: int, k: int, cap: int) -> ForcingResult:
    """Forcing search for the first m+1 dyadic-block equations.

    Small m only: the variable count 2^{m+1} + m + 1 drives the free-variable
    enumeration, so the demo is capped at m <= 2.
    """
    if m < 0 or m > 2:
        raise ValueError("the truncation demo supports m in 0..2")
    if k > 2:
        raise ValueError("the truncation demo supports at most 2 colors")
    system = truncate_with_identity(dyadic_blocks(), m + 1, 2 ** (m + 1))
    return forcing_number(system, k, cap)


@dataclass(frozen=True)
class BlockingResult:
    """Result of a counterexample scan for one blocking-coloring property."""

    property_id: str
    bound: int
    counterexample: Optional[dict[str, str]]
    checked: int


def _rationals_up_to_height(h: int) -> list[Fraction]:
    """Positive rationals with max(|num|, den) <= h in lowest terms, sorted."""
    values = []
    for p in range(1, h + 1):
        for q in range(1, h + 1):
            if math.gcd(p, q) == 1:
                values.append(_F(p, q))
    values.sort()
    return values


def _tau_gap_scan(h: int) -> BlockingResult:
    # A violation is a pair tau(x) == tau(y) with 2x <= y <= 4x.
    values = _rationals_up_to_height(h)
    buckets: dict[int, list[Fraction]] = {0: [], 1: [], 2: []}
    for v in values:
        buckets[tau(v)].append(v)
    checked = 0
    for x in values:
        bucket = buckets[tau(x)]
        lo = bisect_left(bucket, 2 * x)
        hi = bisect_right(bucket, 4 * x)
        checked += 1
        if lo < hi:
            y = bucket[lo]
            return BlockingResult("tau-gap", h,
                                  {"x": str(x), "y": str(y)}, checked)
    return BlockingResult("tau-gap", h, None, checked)


def _chain_step_scan(h: int) -> BlockingResult:
    # A violation: y = x + 2x' with phi(y) == phi(x') but x <= 2x'.
    values = _rationals_up_to_height(h)
    info = [(v.numerator, v.denominator, phi(v)) for v in values]
    checked = 0
    for xp_num, xp_den, xp_phi in info:
        xp_lt1 = xp_num < xp_den
        for x_num, x_den, _ in info:
            checked += 1
            # only pairs with x <= 2x' can violate
            if x_num * xp_den > 2 * xp_num * x_den:
                continue
            y_num = x_num * xp_den + 2 * xp_num * x_den
            y_den = x_den * xp_den
            if (y_num < y_den) != xp_lt1:
                continue
            if _floor_log2_ints(y_num, y_den) % 3 != xp_phi[0]:
                continue
            if phi(_F(y_num, y_den)) == xp_phi:
                return BlockingResult(
                    "chain-step", h,
                    {"x": str(_F(x_num, x_den)),
                     "xprime": str(_F(xp_num, xp_den)),
                     "y": str(_F(y_num, y_den))},
                    checked)
    return BlockingResult("chain-step", h, None, checked)


def _carry_blocking_scan(b: int) -> BlockingResult:
    # A violation: x, x', y = x + 2x' all in (0,1) with the same phi color
    # and last_position(x') > last_position(x).  All candidates have
    # denominator dividing b!, so y does too and everything is one table.
    fact = math.factorial(b)
    positions = [0] * fact
    phi_of = [0] * fact
    for num in range(1, fact):
        x = _F(num, fact)
        positions[num] = factorial_expand(x).last_position
        phi_of[num] = phi_index(x)
    by_phi: dict[int, list[int]] = {}
    for num in range(1, fact):
        by_phi.setdefault(phi_of[num], []).append(num)
    checked = 0
    for x_num in range(1, fact):
        color = phi_of[x_num]
        m_x = positions[x_num]
        for xp_num in by_phi[color]:
            checked += 1
            if positions[xp_num] <= m_x:
                continue
            y_num = x_num + 2 * xp_num
            if y_num >= fact:
                continue
            if phi_of[y_num] == color:
                return BlockingResult(
                    "carry-blocking", b,
                    {"x": str(_F(x_num, fact)),
                     "xprime": str(_F(xp_num, fact)),
                     "y": str(_F(y_num, fact))},
                    checked)
    return BlockingResult("carry-blocking", b, None, checked)


BLOCKING_PROPERTIES = ("tau-gap", "chain-step", "carry-blocking")


def blocking_counterexample_search(property_id: str, height_bound: int = 64,
                                   factorial_bound: int = 7) -> BlockingResult:
    """Exhaustive counterexample scan for one of the blocking properties.

    tau-gap and chain-step scan all positive rationals of height at most
    `height_bound`; carry-blocking scans all rationals in (0,1) with
    denominator dividing factorial_bound!.
    """
    if property_id == "tau-gap":
        return _tau_gap_scan(height_bound)
    if property_id == "chain-step":
        return _chain_step_scan(height_bound)
    if property_id == "carry-blocking":
        return _carry_blocking_scan(factorial_bound)
    raise KeyError(f"unknown blocking property: {property_id}")
