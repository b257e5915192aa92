"""Exact number-system expansions and the colorings built from them.

Everything is computed with integer/Fraction arithmetic only; in particular
floor(log2(x)) of a rational is located by bit-length comparison, never by
floating point.

The headline coloring is `phi`: a finite coloring of the positive rationals
built from three ingredients,

  * tau(x) = floor(log2 x) mod 3, which forces y > 4x whenever y >= 2x in
    one tau class;
  * the factorial-base expansion x = sum(a_t / t!) of x in (0, 1), with
    last nonzero digit a_m at position m = last_position(x);
  * a 3-coloring nu_t of {1..t-1} separating i from 2i mod t.

phi is implemented as a canonical tuple, so equal colors imply tau
agreement, agreement of the "< 1" flag, m mod 3 agreement, and nu agreement
on the leading digit.  That refines the pairwise conditions it needs to
satisfy and costs at most 30 colors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .linalg import frac

_F = Fraction

POSITIVE_INTEGERS = "positive-integers"
POSITIVE_RATIONALS = "positive-rationals"
NONZERO_RATIONALS = "nonzero-rationals"


def floor_log2(x) -> int:
    """Exact floor(log2(x)) for a positive rational, via bit lengths."""
    x = frac(x)
    if x <= 0:
        raise ValueError("floor_log2 needs x > 0")
    return _floor_log2_ints(x.numerator, x.denominator)


def _floor_log2_ints(num: int, den: int) -> int:
    # 2^(e-1) < num/den < 2^(e+1) for e = bitlen difference; one test fixes it.
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        return e if num >= den << e else e - 1
    return e if num << -e >= den else e - 1


def tau(x) -> int:
    """floor(log2 x) mod 3, with the nonnegative residue."""
    return floor_log2(x) % 3


def two_adic_valuation(x) -> int:
    """v2(x) = v2(numerator) - v2(denominator) for nonzero rational x."""
    x = frac(x)
    if x == 0:
        raise ValueError("the zero rational has no 2-adic valuation")
    num = abs(x.numerator)
    return (num & -num).bit_length() - (x.denominator & -x.denominator).bit_length()


def psi(x) -> int:
    """Parity of the 2-adic valuation; satisfies psi(2x) != psi(x)."""
    return two_adic_valuation(x) % 2


@dataclass(frozen=True)
class DigitDecomposition:
    """x = digit * base^position + rest * base^(position + 1), digit in 1..base-1.

    `digit` is the rightmost nonzero digit of x in the given base and
    `position` is where it sits.
    """

    base: int
    digit: int
    position: int
    rest: int

    @property
    def value(self) -> int:
        return self.digit * self.base ** self.position + \
            self.rest * self.base ** (self.position + 1)


def base_q_digit_decompose(q: int, x: int) -> DigitDecomposition:
    """Rightmost nonzero base-q digit of a positive integer."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if not isinstance(x, int) or x <= 0:
        raise ValueError("x must be a positive integer")
    position = 0
    while x % q == 0:
        x //= q
        position += 1
    return DigitDecomposition(base=q, digit=x % q, position=position, rest=x // q)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    candidate = n + 1
    while not is_prime(candidate):
        candidate += 1
    return candidate


@dataclass(frozen=True)
class FactorialExpansion:
    """x = sum(digits[t-2] / t! for t = 2..m) with 0 <= a_t <= t-1, a_m > 0."""

    digits: tuple[int, ...]

    @property
    def last_position(self) -> int:
        return len(self.digits) + 1

    def digit(self, t: int) -> int:
        if t < 2:
            raise ValueError("digits start at position 2")
        if t > self.last_position:
            return 0
        return self.digits[t - 2]

    @property
    def leading_digit(self) -> int:
        return self.digits[-1]

    def value(self) -> Fraction:
        total = _F(0)
        fact = 1
        for t, a in enumerate(self.digits, start=2):
            fact *= t
            total += _F(a, fact)
        return total


def factorial_expand(x) -> FactorialExpansion:
    """Greedy factorial-base digits of a rational in (0, 1).

    Terminates at the minimal m with den(x) | m!, since the running
    remainder r satisfies r * m! integral exactly then.
    """
    x = frac(x)
    if not 0 < x < 1:
        raise ValueError("factorial expansion is defined on (0, 1)")
    digits = []
    r = x
    t = 2
    while True:
        r *= t
        a = int(r)  # 0 <= a <= t-1 because r < 1 before the multiply
        digits.append(a)
        r -= a
        if r == 0:
            break
        t += 1
    return FactorialExpansion(tuple(digits))


@lru_cache(maxsize=None)
def nu_table(t: int) -> tuple[int, ...]:
    """A 3-coloring of 1..t-1 with nu(i) != nu(j) whenever j = 2i mod t != 0.

    The doubling map i -> 2i mod t is a functional graph whose components
    have at most one cycle each.  Cycles are colored first (alternating,
    with color 2 closing odd cycles), then the in-trees outward, always
    taking the smallest color differing from the successor.  Lowest-vertex
    first everywhere, so the table is reproducible.
    """
    if t < 2:
        raise ValueError("need t >= 2")
    succ = {i: (2 * i) % t for i in range(1, t)}
    color: dict[int, int] = {}
    visited: set[int] = set()
    for start in range(1, t):
        if start in visited:
            continue
        path, pos = [], {}
        v = start
        while v != 0 and v not in visited and v not in pos:
            pos[v] = len(path)
            path.append(v)
            v = succ[v]
        visited.update(path)
        if v != 0 and v in pos:  # fresh cycle found on this walk
            cycle = path[pos[v]:]
            n = len(cycle)
            for idx, u in enumerate(cycle):
                color[u] = idx % 2
            if n % 2 == 1 and n > 1:
                color[cycle[-1]] = 2
    pending = [i for i in range(1, t) if i not in color]
    while pending:
        rest = []
        for i in pending:
            j = succ[i]
            if j == 0:
                color[i] = 0
            elif j in color:
                color[i] = 0 if color[j] != 0 else 1
            else:
                rest.append(i)
                continue
        if len(rest) == len(pending):
            raise RuntimeError("doubling graph processing stalled")
        pending = rest
    return tuple(color[i] for i in range(1, t))


def nu(t: int, i: int) -> int:
    if not 1 <= i <= t - 1:
        raise ValueError(f"nu_{t} is defined on 1..{t - 1}")
    return nu_table(t)[i - 1]


def phi(x) -> tuple:
    """Canonical color tuple of a positive rational.

    (tau, False) for x >= 1, else (tau, True, m mod 3, nu_m(leading digit)).
    """
    x = frac(x)
    if x <= 0:
        raise ValueError("phi is defined on positive rationals")
    t = tau(x)
    if x >= 1:
        return (t, False)
    exp = factorial_expand(x)
    m = exp.last_position
    return (t, True, m % 3, nu(m, exp.leading_digit))


def phi_index(x) -> int:
    """phi as an integer color in range(30)."""
    tup = phi(x)
    if not tup[1]:
        return tup[0]
    return 3 + tup[0] * 9 + tup[2] * 3 + tup[3]


def phi_prime(x) -> tuple:
    """phi extended to nonzero rationals; negatives get a disjoint palette."""
    x = frac(x)
    if x == 0:
        raise ValueError("phi' is defined on nonzero rationals")
    return (x > 0, phi(abs(x)))


def phi_prime_index(x) -> int:
    """phi' as an integer color in range(60)."""
    x = frac(x)
    base = phi_index(abs(x))
    return base if x > 0 else 30 + base


@dataclass(frozen=True)
class Coloring:
    """Total map from a rational domain onto a finite palette of ints."""

    name: str
    domain: str
    palette: range
    fn: Callable[[Fraction], int]

    def check_domain(self, x) -> Fraction:
        x = frac(x)
        if self.domain == POSITIVE_INTEGERS:
            if x.denominator != 1 or x <= 0:
                raise ValueError(f"{self.name} expects a positive integer, got {x}")
        elif self.domain == POSITIVE_RATIONALS:
            if x <= 0:
                raise ValueError(f"{self.name} expects a positive rational, got {x}")
        elif self.domain == NONZERO_RATIONALS:
            if x == 0:
                raise ValueError(f"{self.name} expects a nonzero rational")
        else:
            raise ValueError(f"unknown domain tag {self.domain}")
        return x

    def __call__(self, x) -> int:
        x = self.check_domain(x)
        c = self.fn(x)
        if c not in self.palette:
            raise AssertionError(f"{self.name} produced {c} outside {self.palette}")
        return c

    @property
    def palette_size(self) -> int:
        return len(self.palette)


def digit_class_coloring(q: int) -> Coloring:
    """Color a positive integer by its rightmost nonzero base-q digit."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    return Coloring(
        name=f"digit:q={q}",
        domain=POSITIVE_INTEGERS,
        palette=range(1, q),
        fn=lambda x: base_q_digit_decompose(q, int(x)).digit,
    )


def parity_coloring() -> Coloring:
    return Coloring("parity", POSITIVE_INTEGERS, range(2), lambda x: int(x) % 2)


def constant_coloring() -> Coloring:
    return Coloring("constant", POSITIVE_RATIONALS, range(1), lambda x: 0)


def tau_coloring() -> Coloring:
    return Coloring("tau", POSITIVE_RATIONALS, range(3), tau)


def psi_coloring() -> Coloring:
    return Coloring("psi", NONZERO_RATIONALS, range(2), psi)


def phi_coloring() -> Coloring:
    return Coloring("phi", POSITIVE_RATIONALS, range(30), phi_index)


def phi_prime_coloring() -> Coloring:
    return Coloring("phiprime", NONZERO_RATIONALS, range(60), phi_prime_index)


def table_coloring(mapping: dict, palette_size: int,
                   name: str = "table") -> Coloring:
    """Explicit finite coloring given by a lookup table on positive integers."""
    table = {int(k): int(v) for k, v in mapping.items()}

    def fn(x):
        n = int(x)
        if n not in table:
            raise ValueError(f"{name} is only defined on {sorted(table)}")
        return table[n]

    return Coloring(name, POSITIVE_INTEGERS, range(palette_size), fn)


def product_coloring(c1: Coloring, c2: Coloring) -> Coloring:
    """Pointwise pair of two colorings over the same domain."""
    if c1.domain != c2.domain:
        raise ValueError("product of colorings needs matching domains")
    s2 = c2.palette_size

    def fn(x):
        return (c1(x) - c1.palette.start) * s2 + (c2(x) - c2.palette.start)

    return Coloring(
        name=f"{c1.name}*{c2.name}",
        domain=c1.domain,
        palette=range(c1.palette_size * s2),
        fn=fn,
    )


def get_coloring(coloring_id: str) -> Coloring:
    """Resolve a registry id: digit:q=Q, tau, phi, phiprime, psi, parity,
    constant."""
    if coloring_id.startswith("digit:q="):
        return digit_class_coloring(int(coloring_id.split("=", 1)[1]))
    factories = {
        "tau": tau_coloring,
        "phi": phi_coloring,
        "phiprime": phi_prime_coloring,
        "psi": psi_coloring,
        "parity": parity_coloring,
        "constant": constant_coloring,
    }
    if coloring_id in factories:
        return factories[coloring_id]()
    raise KeyError(f"unknown coloring id: {coloring_id}")


def nu_rows(t_max: int) -> Iterable[tuple[int, int, int]]:
    """(t, i, color) rows for CSV export of the doubling-map tables."""
    for t in range(2, t_max + 1):
        table = nu_table(t)
        for i in range(1, t):
            yield t, i, table[i - 1]
