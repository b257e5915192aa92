"""Generators for the linear systems studied by this package.

Finite systems (Schur, van der Waerden, Folkman) are plain matrices.
Infinite systems are never materialized: an InfiniteMatrix is a bundle of
closed-form rules (entry, per-column support, per-row support), and
truncation is the only bridge back to a finite Matrix.  Every row and
every column of every generated system has finitely many nonzero entries.

The two chain systems interleave their variables x0, y0, x1, y1, ... in
column order, matching the usual way the recurrences are written down.
Systems of the form (A | -I) keep the x-block and the y-block as two
separate column families (see AugmentedSystem), since no single
omega-indexing can place one infinite block after another.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .linalg import Matrix

_F = Fraction

Support = tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class InfiniteMatrix:
    """Lazily evaluated omega x omega matrix given by closed-form rules.

    `row_abs_bound` is the supremum of the row sums of absolute values, or
    None when those sums are unbounded.
    """

    name: str
    entry: Callable[[int, int], Fraction]
    column_support: Callable[[int], Support]
    row_support: Callable[[int], Support]
    column_label: Callable[[int], str]
    row_abs_bound: Optional[Fraction] = None

    def row_abs_sum(self, i: int) -> Fraction:
        return sum((abs(v) for _, v in self.row_support(i)), _F(0))


@dataclass(frozen=True)
class AugmentedSystem:
    """System (A | -I): a base block A plus one fresh y_n per equation.

    Columns come in two labeled families: x_j (the columns of A) and y_j
    (support {(j, -1)}).  entry(i, j) indexes the A block.  For the
    generators in this module every x_j column has at most two nonzero
    entries and every y_j column exactly one; the combined system therefore
    stays within three nonzeros per column with room to spare.
    """

    base: InfiniteMatrix
    name: str

    def entry(self, i: int, j: int) -> Fraction:
        return self.base.entry(i, j)

    def x_support(self, j: int) -> Support:
        return self.base.column_support(j)

    def y_support(self, j: int) -> Support:
        return ((j, _F(-1)),)

    def row_support(self, i: int) -> tuple[tuple[str, Fraction], ...]:
        xs = tuple((f"x{j}", v) for j, v in self.base.row_support(i))
        return xs + ((f"y{i}", _F(-1)),)

    @property
    def row_abs_bound(self) -> Optional[Fraction]:
        if self.base.row_abs_bound is None:
            return None
        return self.base.row_abs_bound + 1

    def row_abs_sum(self, i: int) -> Fraction:
        return self.base.row_abs_sum(i) + 1


AnySystem = Union[Matrix, InfiniteMatrix, AugmentedSystem]


def schur() -> Matrix:
    """The 1x3 matrix of Schur's equation x + y = z."""
    return Matrix.from_rows([[1, 1, -1]])


def vdw(m: int) -> Matrix:
    """Arithmetic-progression system with m terms and monochromatic gap.

    (m-1) x (m+1): column 0 carries the common difference; row r says
    d + a_{r+1} = a_{r+2}.
    """
    if m < 2:
        raise ValueError("need at least a 2-term progression")
    rows = []
    for r in range(m - 1):
        row = [0] * (m + 1)
        row[0] = 1
        row[r + 1] = 1
        row[r + 2] = -1
        rows.append(row)
    return Matrix.from_rows(rows)


def _folkman_subsets(m: int) -> list[tuple[int, ...]]:
    subsets = []
    for mask in range(1, 1 << m):
        members = tuple(i + 1 for i in range(m) if mask >> i & 1)
        if len(members) >= 2:
            subsets.append(members)
    subsets.sort(key=lambda f: (len(f), f))
    return subsets


def folkman(m: int) -> Matrix:
    """Finite-sums system: one row sum(x_i, i in F) = y_F per F with |F| >= 2.

    Capped at m <= 10 to bound the subset enumeration.  m = 1 yields no
    equations, hence no matrix.
    """
    if m < 2:
        raise ValueError("need m >= 2 (a single generator has no sum equations)")
    if m > 10:
        raise ValueError("subset enumeration capped at m <= 10")
    subsets = _folkman_subsets(m)
    cols = m + len(subsets)
    rows = []
    for k, members in enumerate(subsets):
        row = [0] * cols
        for i in members:
            row[i - 1] = 1
        row[m + k] = -1
        rows.append(row)
    return Matrix.from_rows(rows)


def folkman_labels(m: int) -> tuple[str, ...]:
    xs = tuple(f"x{i}" for i in range(1, m + 1))
    ys = tuple("y" + ".".join(str(i) for i in f) for f in _folkman_subsets(m))
    return xs + ys


def dyadic_blocks() -> InfiniteMatrix:
    """Row n: 2 on the diagonal plus ones across the dyadic block [2^n, 2^{n+1}).

    Augmented with -I this encodes the equations
    2 x_n + x_{2^n} + x_{2^n + 1} + ... + x_{2^{n+1} - 1} = y_n.
    Row n has 2 + 2^n as its absolute sum, so row sums are unbounded.
    """

    def entry(i, j):
        if i < 0 or j < 0:
            raise IndexError("negative index")
        if j == i:
            return _F(2)
        if 2 ** i <= j < 2 ** (i + 1):
            return _F(1)
        return _F(0)

    def column_support(j):
        if j == 0:
            return ((0, _F(2)),)
        return ((j.bit_length() - 1, _F(1)), (j, _F(2)))

    def row_support(i):
        return ((i, _F(2)),) + tuple((j, _F(1)) for j in range(2 ** i, 2 ** (i + 1)))

    return InfiniteMatrix(
        name="dyadic-blocks",
        entry=entry,
        column_support=column_support,
        row_support=row_support,
        column_label=lambda j: f"x{j}",
        row_abs_bound=None,
    )


def growing_diagonal() -> InfiniteMatrix:
    """Dyadic-block matrix with diagonal entry -(n+2) in row n.

    Signed row sums stay bounded (they telescope against the block of ones)
    while the sums of absolute values, -(n+2) plus 2^n ones, are unbounded.
    """

    def entry(i, j):
        if i < 0 or j < 0:
            raise IndexError("negative index")
        if j == i:
            return _F(-(i + 2))
        if 2 ** i <= j < 2 ** (i + 1):
            return _F(1)
        return _F(0)

    def column_support(j):
        if j == 0:
            return ((0, _F(-2)),)
        return ((j.bit_length() - 1, _F(1)), (j, _F(-(j + 2))))

    def row_support(i):
        return ((i, _F(-(i + 2))),) + tuple(
            (j, _F(1)) for j in range(2 ** i, 2 ** (i + 1)))

    return InfiniteMatrix(
        name="growing-diagonal",
        entry=entry,
        column_support=column_support,
        row_support=row_support,
        column_label=lambda j: f"x{j}",
        row_abs_bound=None,
    )


def augment_neg_identity(base: InfiniteMatrix) -> AugmentedSystem:
    """Append the -I block: each row i gains a fresh variable y_i with -1."""
    return AugmentedSystem(base=base, name=f"{base.name}+neg-identity")


def _interleaved_label(j: int) -> str:
    return f"x{j // 2}" if j % 2 == 0 else f"y{j // 2}"


def chain_minus() -> InfiniteMatrix:
    """The chain x_n - x_{n+1} = y_n with columns x0, y0, x1, y1, ...

    Row n is (.. 1, -1, -1 ..) at columns 2n, 2n+1, 2n+2.
    """

    def entry(i, j):
        if i < 0 or j < 0:
            raise IndexError("negative index")
        if j == 2 * i:
            return _F(1)
        if j == 2 * i + 1 or j == 2 * i + 2:
            return _F(-1)
        return _F(0)

    def column_support(j):
        if j % 2 == 1:
            return ((j // 2, _F(-1)),)
        n = j // 2
        if n == 0:
            return ((0, _F(1)),)
        return ((n - 1, _F(-1)), (n, _F(1)))

    def row_support(i):
        return ((2 * i, _F(1)), (2 * i + 1, _F(-1)), (2 * i + 2, _F(-1)))

    return InfiniteMatrix(
        name="chain-minus",
        entry=entry,
        column_support=column_support,
        row_support=row_support,
        column_label=_interleaved_label,
        row_abs_bound=_F(3),
    )


def chain_plus2() -> InfiniteMatrix:
    """The chain x_n + 2 x_{n+1} = y_n with columns x0, y0, x1, y1, ...

    Row n is (.. 1, -1, 2 ..) at columns 2n, 2n+1, 2n+2; every row's
    absolute sum is 4 and every column sums to 1, -1 or 3.
    """

    def entry(i, j):
        if i < 0 or j < 0:
            raise IndexError("negative index")
        if j == 2 * i:
            return _F(1)
        if j == 2 * i + 1:
            return _F(-1)
        if j == 2 * i + 2:
            return _F(2)
        return _F(0)

    def column_support(j):
        if j % 2 == 1:
            return ((j // 2, _F(-1)),)
        n = j // 2
        if n == 0:
            return ((0, _F(1)),)
        return ((n - 1, _F(2)), (n, _F(1)))

    def row_support(i):
        return ((2 * i, _F(1)), (2 * i + 1, _F(-1)), (2 * i + 2, _F(2)))

    return InfiniteMatrix(
        name="chain-plus2",
        entry=entry,
        column_support=column_support,
        row_support=row_support,
        column_label=_interleaved_label,
        row_abs_bound=_F(4),
    )


def truncate(view, rows: int, cols: int) -> Matrix:
    """Top-left rows x cols corner of an infinite view, entry by entry."""
    if rows < 1 or cols < 1:
        raise ValueError("truncation needs at least one row and one column")
    return Matrix.from_rows(
        [[view.entry(i, j) for j in range(cols)] for i in range(rows)])


def truncate_with_identity(base: InfiniteMatrix, rows: int, cols: int) -> Matrix:
    """Finite (P | -I): `cols` base columns, then a -I block for `rows` rows."""
    p = truncate(base, rows, cols)
    data = [list(p.row(i)) + [-1 if k == i else 0 for k in range(rows)]
            for i in range(rows)]
    return Matrix.from_rows(data)


def truncated_block_system(m: int) -> Matrix:
    """First m+1 dyadic-block equations over x_0..x_{2^{m+1}-1}, y_0..y_m."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return truncate_with_identity(dyadic_blocks(), m + 1, 2 ** (m + 1))


def truncated_block_labels(m: int) -> tuple[str, ...]:
    return tuple(f"x{j}" for j in range(2 ** (m + 1))) + tuple(
        f"y{n}" for n in range(m + 1))


@dataclass(frozen=True)
class SystemSpec:
    """A named system: its coefficient matrix plus variable labels."""

    id: str
    matrix: AnySystem
    description: str
    labels: Optional[tuple[str, ...]] = None

    @property
    def is_finite(self) -> bool:
        return isinstance(self.matrix, Matrix)


def _generic_labels(v: int) -> tuple[str, ...]:
    return tuple(f"x{j}" for j in range(v))


def get_system(system_id: str) -> SystemSpec:
    """Resolve a registry id: schur, vdw:m, folkman:m, sec2, sec2-augmented,
    chain-minus, chain-plus2, remark."""
    if system_id == "schur":
        return SystemSpec("schur", schur(), "x + y = z", ("x", "y", "z"))
    if system_id.startswith("vdw:"):
        m = int(system_id.split(":", 1)[1])
        labels = ("d",) + tuple(f"a{i}" for i in range(1, m + 1))
        return SystemSpec(system_id, vdw(m),
                          f"{m}-term arithmetic progression plus difference", labels)
    if system_id.startswith("folkman:"):
        m = int(system_id.split(":", 1)[1])
        return SystemSpec(system_id, folkman(m),
                          f"finite sums of x1..x{m} monochromatic", folkman_labels(m))
    if system_id == "sec2":
        return SystemSpec(system_id, dyadic_blocks(),
                          "dyadic-block matrix (2 on diagonal, ones on [2^n, 2^{n+1}))")
    if system_id == "sec2-augmented":
        return SystemSpec(system_id, augment_neg_identity(dyadic_blocks()),
                          "dyadic-block equations 2x_n + sum of block = y_n")
    if system_id == "chain-minus":
        return SystemSpec(system_id, chain_minus(), "x_n - x_{n+1} = y_n")
    if system_id == "chain-plus2":
        return SystemSpec(system_id, chain_plus2(), "x_n + 2x_{n+1} = y_n")
    if system_id == "remark":
        return SystemSpec(system_id, augment_neg_identity(growing_diagonal()),
                          "dyadic blocks with diagonal -(n+2), augmented")
    raise KeyError(f"unknown system id: {system_id}")


def finite_system(system_id: str) -> SystemSpec:
    spec = get_system(system_id)
    if not spec.is_finite:
        raise ValueError(f"system {system_id!r} is infinite; truncate it first")
    if spec.labels is None:
        spec = SystemSpec(spec.id, spec.matrix, spec.description,
                          _generic_labels(spec.matrix.cols))
    return spec
