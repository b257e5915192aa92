"""Exact linear algebra over the rationals.

Everything here works with `fractions.Fraction`, so all results are exact:
no rounding, no tolerances.  Vectors are plain tuples of Fractions and
matrices are small immutable dense grids; that is all the desk-scale
searches in this package need.

All types are immutable values and all functions are pure, so concurrent
use from multiple threads is safe.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple[Fraction, ...]


def frac(value) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def vector(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def vec_add(a: Vector, b: Vector) -> Vector:
    if len(a) != len(b):
        raise ValueError("vector length mismatch")
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def is_zero_vector(a: Vector) -> bool:
    return all(x == 0 for x in a)


@dataclass(frozen=True)
class Matrix:
    """Dense u x v matrix of Fractions (u, v >= 1)."""

    entries: tuple[Vector, ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "Matrix":
        return cls(tuple(vector(row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, i: int, j: int) -> Fraction:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) out of bounds")
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of bounds")
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def mul_vec(self, x: Sequence) -> Vector:
        xs = vector(x)
        if len(xs) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(sum((r * v for r, v in zip(row, xs)), Fraction(0))
                     for row in self.entries)

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(e) for e in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "Matrix":
        m = cls.from_rows(data["entries"])
        if m.rows != data["rows"] or m.cols != data["cols"]:
            raise ValueError("matrix JSON header disagrees with entries")
        return m

    @classmethod
    def from_json(cls, text: str) -> "Matrix":
        return cls.from_json_dict(json.loads(text))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in row) for row in self.entries)


def identity(n: int) -> Matrix:
    return Matrix.from_rows(
        [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def _bit_size(x: Fraction) -> int:
    return max(abs(x.numerator).bit_length(), x.denominator.bit_length())


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns).

    The pivot row at each column is the candidate with the smallest
    numerator/denominator bit size, which keeps intermediate fractions small;
    the RREF itself is unique, so this choice never changes the result.
    """
    m = [[frac(e) for e in row] for row in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        best = None
        for i in range(r, n_rows):
            if m[i][c] != 0 and (best is None or _bit_size(m[i][c]) < _bit_size(m[best][c])):
                best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        inv = 1 / m[r][c]
        m[r] = [e * inv for e in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(m: Matrix) -> int:
    return len(rref(m.entries)[1])


def kernel_basis(m: Matrix) -> list[Vector]:
    """Canonical basis of {x : m.x = 0}.

    Free variables are set to unit vectors against the RREF, giving a
    deterministic basis of size cols - rank (suitable for golden tests).
    """
    red, pivots = rref(m.entries)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return basis


def span_membership(basis: Sequence[Sequence], target: Sequence) -> Optional[list[Fraction]]:
    """Coefficients c with sum(c_i * basis_i) == target, or None.

    The empty span contains exactly the zero vector (empty-sum convention).
    The returned combination reproduces the target bit-exactly; free
    coefficients are fixed to 0 for determinism.
    """
    t = vector(target)
    vecs = [vector(b) for b in basis]
    if any(len(b) != len(t) for b in vecs):
        raise ValueError("basis/target dimension mismatch")
    if not vecs:
        return [] if is_zero_vector(t) else None
    # Solve B c = t where B's columns are the basis vectors.
    aug = [[vecs[j][i] for j in range(len(vecs))] + [t[i]] for i in range(len(t))]
    red, pivots = rref(aug)
    last = len(vecs)
    if last in pivots:
        return None  # inconsistent: a pivot in the augmented column
    coeffs = [Fraction(0)] * len(vecs)
    for r, p in enumerate(pivots):
        coeffs[p] = red[r][last]
    return coeffs


def column_sum(m: Matrix, subset: Iterable[int]) -> Vector:
    """Exact componentwise sum of the selected columns (empty -> zero)."""
    total = [Fraction(0)] * m.rows
    for j in subset:
        if not 0 <= j < m.cols:
            raise IndexError(f"column index {j} out of range")
        for i in range(m.rows):
            total[i] += m.entries[i][j]
    return tuple(total)
