"""Decision procedures for kernel partition regularity.

`columns_property` decides Rado's criterion for a finite rational matrix
and returns a checkable certificate: an ordered partition I_0, ..., I_{m-1}
of the columns where the I_0 columns sum to zero and each later block sum
is an explicit rational combination of the earlier columns.  By Rado's
theorem this is exactly kernel partition regularity, so
`is_partition_regular` is a thin wrapper.

The search enumerates candidate I_0 blocks (all zero-sum column subsets,
found by meet-in-the-middle, smallest first) and then absorbs the remaining
columns greedily: reduce them against the span accumulated so far and look
for a zero-sum subset of the reductions.  Greedy absorption is complete,
because consuming any valid block only grows the span by whole columns, so
every completion that existed before still exists after; backtracking is
therefore needed over the choice of I_0 only.

`zero_column_subset` answers the weaker question "does any non-empty set of
columns sum to zero", including for infinite systems, where it works on the
closed-form full column supports so that an Absent answer is a statement
about the actual infinite columns, not about a truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .colorings import base_q_digit_decompose, is_prime, next_prime
from .linalg import Matrix, Vector, column_sum, frac, is_zero_vector, span_membership
from .systems import AugmentedSystem, InfiniteMatrix

_F = Fraction

DEFAULT_COLUMN_CAP = 16


class CapacityError(Exception):
    """Raised when a matrix exceeds the exhaustive-search column cap."""


@dataclass(frozen=True)
class ColumnsPropertyCertificate:
    """Ordered partition plus rational witnesses for the block-sum conditions.

    witnesses[t-1] lists one coefficient per column of
    sorted(union(blocks[:t])), in ascending column order.
    """

    blocks: tuple[tuple[int, ...], ...]
    witnesses: tuple[tuple[Fraction, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "witnesses": [[str(c) for c in w] for w in self.witnesses],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ColumnsPropertyCertificate":
        return cls(
            blocks=tuple(tuple(int(i) for i in b) for b in data["blocks"]),
            witnesses=tuple(tuple(frac(c) for c in w) for w in data["witnesses"]),
        )


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def zero_sum_subset_masks(vectors: Sequence[Vector]) -> list[int]:
    """All non-empty subsets (as bitmasks) whose vectors sum to zero.

    Meet-in-the-middle on subset sums of the two halves; result sorted by
    (size, mask) so smaller and earlier subsets come first.
    """
    n = len(vectors)
    if n == 0:
        return []
    dim = len(vectors[0])
    zero = tuple(_F(0) for _ in range(dim))
    h = n // 2

    def subset_sums(vs):
        acc = {0: zero}
        for k, v in enumerate(vs):
            for mask, s in list(acc.items()):
                acc[mask | (1 << k)] = tuple(a + b for a, b in zip(s, v))
        return acc

    left_by_sum: dict[tuple, list[int]] = {}
    for mask, s in subset_sums(vectors[:h]).items():
        left_by_sum.setdefault(s, []).append(mask)

    results = []
    for rmask, rsum in subset_sums(vectors[h:]).items():
        need = tuple(-x for x in rsum)
        for lmask in left_by_sum.get(need, []):
            mask = lmask | (rmask << h)
            if mask:
                results.append(mask)
    results.sort(key=lambda m: (_popcount(m), m))
    return results


class _Span:
    """Incrementally maintained row basis of a rational span."""

    def __init__(self):
        self.rows: list[list[Fraction]] = []  # each normalized, distinct pivots
        self.pivots: list[int] = []

    def reduce(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            if w[p] != 0:
                f = w[p]
                for i, r in enumerate(row):
                    if r != 0:
                        w[i] -= f * r
        return tuple(w)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vector(self.reduce(v))

    def add(self, v: Sequence[Fraction]) -> None:
        w = list(self.reduce(v))
        for p, e in enumerate(w):
            if e != 0:
                inv = 1 / e
                self.rows.append([x * inv for x in w])
                self.pivots.append(p)
                return


def columns_property(m: Matrix,
                     cap: int = DEFAULT_COLUMN_CAP
                     ) -> Optional[ColumnsPropertyCertificate]:
    """Certificate for Rado's columns property, or None when no partition works."""
    if m.cols > cap:
        raise CapacityError(
            f"{m.cols} columns exceeds the exhaustive-search cap of {cap}")
    cols = m.columns()
    v = m.cols
    for mask0 in zero_sum_subset_masks(cols):
        blocks = [tuple(_bits(mask0))]
        span = _Span()
        for j in blocks[0]:
            span.add(cols[j])
        remaining = [j for j in range(v) if not mask0 >> j & 1]
        stuck = False
        while remaining:
            reduced = [span.reduce(cols[j]) for j in remaining]
            masks = zero_sum_subset_masks(reduced)
            if not masks:
                stuck = True
                break
            block = tuple(remaining[i] for i in _bits(masks[0]))
            blocks.append(block)
            for j in block:
                span.add(cols[j])
            chosen = set(block)
            remaining = [j for j in remaining if j not in chosen]
        if stuck:
            continue
        witnesses = []
        earlier: list[int] = sorted(blocks[0])
        for block in blocks[1:]:
            target = column_sum(m, block)
            coeffs = span_membership([cols[j] for j in earlier], target)
            assert coeffs is not None  # guaranteed: block sum reduced to zero
            witnesses.append(tuple(coeffs))
            earlier = sorted(earlier + list(block))
        return ColumnsPropertyCertificate(tuple(blocks), tuple(witnesses))
    return None


def verify_certificate(m: Matrix, cert: ColumnsPropertyCertificate) -> bool:
    """Exact re-check of a certificate against the matrix; no searching."""
    seen: set[int] = set()
    for block in cert.blocks:
        if not block:
            return False
        for j in block:
            if j in seen or not 0 <= j < m.cols:
                return False
            seen.add(j)
    if seen != set(range(m.cols)):
        return False
    if len(cert.witnesses) != len(cert.blocks) - 1:
        return False
    if not is_zero_vector(column_sum(m, cert.blocks[0])):
        return False
    earlier = sorted(cert.blocks[0])
    for block, coeffs in zip(cert.blocks[1:], cert.witnesses):
        if len(coeffs) != len(earlier):
            return False
        target = column_sum(m, block)
        combo = [_F(0)] * m.rows
        for c, j in zip(coeffs, earlier):
            if c != 0:
                col = m.column(j)
                combo = [a + c * b for a, b in zip(combo, col)]
        if tuple(combo) != target:
            return False
        earlier = sorted(earlier + list(block))
    return True


def is_partition_regular(m: Matrix, cap: int = DEFAULT_COLUMN_CAP
                         ) -> tuple[bool, Optional[ColumnsPropertyCertificate]]:
    """Rado's theorem: partition regular iff the columns property holds."""
    cert = columns_property(m, cap=cap)
    return cert is not None, cert


ColumnLabel = Union[int, str]


def _labeled_columns(target, cols: Optional[int]
                     ) -> list[tuple[ColumnLabel, dict[int, Fraction]]]:
    if isinstance(target, Matrix):
        out = []
        for j in range(target.cols):
            support = {i: target.entry(i, j)
                       for i in range(target.rows) if target.entry(i, j) != 0}
            out.append((j, support))
        return out
    if cols is None:
        raise ValueError("infinite systems need an explicit column count")
    if isinstance(target, InfiniteMatrix):
        return [(j, dict(target.column_support(j))) for j in range(cols)]
    if isinstance(target, AugmentedSystem):
        xs = [(f"x{j}", dict(target.x_support(j))) for j in range(cols)]
        ys = [(f"y{j}", dict(target.y_support(j))) for j in range(cols)]
        return xs + ys
    raise TypeError(f"unsupported system type: {type(target).__name__}")


def zero_column_subset(target, cols: Optional[int] = None,
                       max_size: Optional[int] = None
                       ) -> Optional[list[ColumnLabel]]:
    """First non-empty column subset summing exactly to zero, or None.

    For infinite systems the full closed-form column supports are used, so
    None is a genuine statement about the first `cols` columns (per family
    for augmented systems), not about a truncation.  Depth-first over
    columns in order, include-first; a branch is cut as soon as some row's
    partial sum cannot be driven back to zero by the remaining columns.
    """
    columns = _labeled_columns(target, cols)
    n = len(columns)
    if max_size is None:
        max_size = n
    rows = sorted({r for _, support in columns for r in support})
    row_ix = {r: k for k, r in enumerate(rows)}
    nrows = len(rows)
    # pos_suffix[k][r] / neg_suffix[k][r]: total positive/negative mass still
    # available at row r among columns k..n-1.
    pos_suffix = [[_F(0)] * nrows for _ in range(n + 1)]
    neg_suffix = [[_F(0)] * nrows for _ in range(n + 1)]
    for k in range(n - 1, -1, -1):
        pos_suffix[k] = pos_suffix[k + 1][:]
        neg_suffix[k] = neg_suffix[k + 1][:]
        for r, val in columns[k][1].items():
            if val > 0:
                pos_suffix[k][row_ix[r]] += val
            else:
                neg_suffix[k][row_ix[r]] += val

    sums = [_F(0)] * nrows
    nonzero = 0
    chosen: list[int] = []
    found: Optional[list[int]] = None

    def feasible(k: int) -> bool:
        pos, neg = pos_suffix[k], neg_suffix[k]
        for r in range(nrows):
            s = sums[r]
            if s == 0:
                continue
            if s + neg[r] > 0 or s + pos[r] < 0:
                return False
        return True

    def dfs(k: int) -> bool:
        nonlocal nonzero, found
        if nonzero == 0 and chosen:
            found = chosen.copy()
            return True
        if k == n:
            return False
        if len(chosen) == max_size:
            return False  # no more includes and sums are nonzero
        if not feasible(k):
            return False
        # include column k
        deltas = columns[k][1]
        for r, val in deltas.items():
            ix = row_ix[r]
            before = sums[ix]
            sums[ix] = before + val
            if before == 0 and sums[ix] != 0:
                nonzero += 1
            elif before != 0 and sums[ix] == 0:
                nonzero -= 1
        chosen.append(k)
        if dfs(k + 1):
            return True
        chosen.pop()
        for r, val in deltas.items():
            ix = row_ix[r]
            before = sums[ix]
            sums[ix] = before - val
            if before == 0 and sums[ix] != 0:
                nonzero += 1
            elif before != 0 and sums[ix] == 0:
                nonzero -= 1
        # exclude column k
        return dfs(k + 1)

    if dfs(0):
        assert found is not None
        return [columns[k][0] for k in found]
    return None


@dataclass(frozen=True)
class RowSumProfile:
    """Row sums of absolute values: all rows for a finite matrix, a sampled
    prefix for an infinite one; `bound`, when set, dominates every row."""

    bounded: bool
    bound: Optional[Fraction]
    sums: tuple[Fraction, ...]


def bounded_row_sums(target, sample_rows: int = 12) -> RowSumProfile:
    """Decide bounded row sums; unbounded systems expose a growing witness
    prefix in `sums`.

    Row supports are materialized for the sampled prefix only; keep
    sample_rows modest for views whose supports grow with the row index.
    """
    if isinstance(target, Matrix):
        sums = tuple(sum((abs(e) for e in target.row(i)), _F(0))
                     for i in range(target.rows))
        return RowSumProfile(True, max(sums), sums)
    if isinstance(target, (InfiniteMatrix, AugmentedSystem)):
        sums = tuple(target.row_abs_sum(i) for i in range(sample_rows))
        bound = target.row_abs_bound
        if bound is not None:
            if any(s > bound for s in sums):
                raise AssertionError(
                    "declared row-sum bound violated by a sampled row")
            return RowSumProfile(True, bound, sums)
        return RowSumProfile(False, None, sums)
    raise TypeError(f"unsupported system type: {type(target).__name__}")


def _integer_entries(target) -> bool:
    if isinstance(target, Matrix):
        return all(e.denominator == 1 for row in target.entries for e in row)
    if isinstance(target, InfiniteMatrix):
        return all(v.denominator == 1
                   for i in range(12) for _, v in target.row_support(i))
    if isinstance(target, AugmentedSystem):
        return _integer_entries(target.base)
    return False


def smallest_admissible_prime(target) -> int:
    """Smallest prime strictly above every row sum of absolute values."""
    if not _integer_entries(target):
        raise ValueError("admissible primes require integer entries")
    profile = bounded_row_sums(target)
    if not profile.bounded:
        raise ValueError("row sums are unbounded; no admissible prime exists")
    assert profile.bound is not None and profile.bound.denominator == 1
    return next_prime(int(profile.bound))


def extract_zero_subset_from_solution(m: Matrix, q: int,
                                      x: Sequence) -> tuple[int, ...]:
    """Zero-sum column subset J read off a digit-monochromatic kernel vector.

    Requires m x = 0 with x positive integers, all sharing the same
    rightmost nonzero base-q digit, with q prime and strictly above every
    row sum of absolute values.  J collects the coordinates whose digit sits
    at the minimal position; the columns over J must then sum to zero, and
    that is asserted (a failure signals a violated precondition).
    """
    values = [frac(v) for v in x]
    if len(values) != m.cols:
        raise ValueError("solution length does not match column count")
    if any(v.denominator != 1 or v <= 0 for v in values):
        raise ValueError("solution entries must be positive integers")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    profile = bounded_row_sums(m)
    if not _integer_entries(m) or profile.bound >= q:
        raise ValueError(f"q={q} is not admissible for this matrix")
    if not is_zero_vector(m.mul_vec(values)):
        raise ValueError("x is not a kernel vector")
    decomps = [base_q_digit_decompose(q, int(v)) for v in values]
    digits = {d.digit for d in decomps}
    if len(digits) > 1:
        raise ValueError(
            f"solution is not monochromatic under the base-{q} digit coloring")
    d = min(dec.position for dec in decomps)
    subset = tuple(i for i, dec in enumerate(decomps) if dec.position == d)
    if not is_zero_vector(column_sum(m, subset)):
        raise AssertionError(
            "extracted subset does not sum to zero; a precondition was violated")
    return subset
