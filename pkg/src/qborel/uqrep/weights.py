"""Weights of sl_{n+1} in fundamental-weight coordinates."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class WeightError(ValueError):
    pass


class Weight:
    """A rational weight sum_i c_i omega_i, stored as the tuple (c_1, ..., c_n)."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(Fraction(c) for c in coords)
        if not self.coords:
            raise WeightError("rank must be at least 1")

    @property
    def n(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    def _check(self, other):
        if not isinstance(other, Weight):
            raise TypeError(f"expected a Weight, got {other!r}")
        if other.n != self.n:
            raise WeightError(f"rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return Weight(-a for a in self.coords)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return Weight(a * k for a in self.coords)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return "K{" + ",".join(str(c) for c in self.coords) + "}"

    def in_roots(self):
        """alpha-coordinates (rational)."""
        return tuple(sum(g * c for g, c in zip(row, self.coords)) for row in inverse_cartan(self.n))

    def in_root_lattice(self) -> bool:
        return all(a.denominator == 1 for a in self.in_roots())

    def in_weight_lattice(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def height(self):
        return sum(self.in_roots())


def cartan_matrix(n: int):
    return tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n))
                 for i in range(n))


@lru_cache(maxsize=None)
def inverse_cartan(n: int):
    """(omega_i, omega_j) = min(i,j) (n+1-max(i,j)) / (n+1)."""
    return tuple(tuple(Fraction(min(i, j) * (n + 1 - max(i, j)), n + 1)
                       for j in range(1, n + 1)) for i in range(1, n + 1))


def _check_index(n, i, lo=1, hi=None):
    hi = n if hi is None else hi
    if not (lo <= i <= hi):
        raise WeightError(f"index {i} out of range [{lo}, {hi}]")


def omega(n: int, i: int) -> Weight:
    """Fundamental weight; omega_0 = omega_{n+1} = 0."""
    _check_index(n, i, 0, n + 1)
    return Weight(1 if k == i else 0 for k in range(1, n + 1))


def alpha(n: int, i: int) -> Weight:
    """alpha_i = -omega_{i-1} + 2 omega_i - omega_{i+1}."""
    _check_index(n, i)
    return omega(n, i) * 2 - omega(n, i - 1) - omega(n, i + 1)


root_to_fundamental = alpha


def fundamental_weight_in_roots(n: int, i: int):
    _check_index(n, i)
    return omega(n, i).in_roots()


def from_roots(n: int, coeffs) -> Weight:
    coeffs = list(coeffs)
    if len(coeffs) != n:
        raise WeightError(f"expected {n} root coordinates, got {len(coeffs)}")
    out = Weight.zero(n)
    for i, a in enumerate(coeffs, start=1):
        out = out + alpha(n, i) * Fraction(a)
    return out


def beta(n: int, j: int) -> Weight:
    """Weight of e_j in V(omega_1): -omega_{j-1} + omega_j, 1 <= j <= n+1."""
    _check_index(n, j, 1, n + 1)
    return omega(n, j) - omega(n, j - 1)


def bilinear_form(a: Weight, b: Weight) -> Fraction:
    a._check(b)
    G = inverse_cartan(a.n)
    return sum((a.coords[i] * G[i][j] * b.coords[j]
                for i in range(a.n) for j in range(a.n) if a.coords[i] and b.coords[j]),
               Fraction(0))


def int_form(a: Weight, b: Weight) -> int:
    v = bilinear_form(a, b)
    if v.denominator != 1:
        raise WeightError(f"({a}, {b}) = {v} is not an integer")
    return v.numerator


def lambda_grid(n: int):
    """0, +-alpha_i and the adjacent sums alpha_i + alpha_{i+1}."""
    grid = [Weight.zero(n)]
    for i in range(1, n + 1):
        grid += [alpha(n, i), -alpha(n, i)]
    for i in range(1, n):
        grid.append(alpha(n, i) + alpha(n, i + 1))
    return grid


def word_weight(n: int, letters) -> Weight:
    """Sum of +alpha_i over E_i letters and -alpha_i over F_i letters."""
    out = Weight.zero(n)
    for kind, i in letters:
        out = out + alpha(n, i) if kind == "E" else out - alpha(n, i)
    return out


def positive_roots(n: int):
    """alpha_i + ... + alpha_j as root-coordinate tuples."""
    out = []
    for i in range(n):
        for j in range(i, n):
            out.append(tuple(1 if i <= k <= j else 0 for k in range(n)))
    return out


def kostant_partition_count(n: int, mu_roots) -> int:
    """Number of ways to write mu as an unordered sum of positive roots."""
    roots = positive_roots(n)

    @lru_cache(maxsize=None)
    def count(rem, start):
        if not any(rem):
            return 1
        total = 0
        for r in range(start, len(roots)):
            root = roots[r]
            nxt = tuple(a - b for a, b in zip(rem, root))
            if min(nxt) >= 0:
                total += count(nxt, r)
        return total

    return count(tuple(mu_roots), 0)
