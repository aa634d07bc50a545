"""Exact arithmetic over the Gaussian rationals Q[i].

Unit phases exp(-i*k*pi/2) for integer k are fourth roots of unity, so all
exact computations with integer phase shifts stay inside Z[i] resp. Q[i].
Gaussian integers are represented as plain ``(re, im)`` int tuples in the
hot paths (Bareiss determinants); :class:`GaussianRational` wraps a pair of
:class:`fractions.Fraction` for the interpolation and normalization layers.
"""

from __future__ import annotations

from fractions import Fraction

# i^k for k = 0..3
I_POWERS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def unit_phase(k: int) -> tuple[int, int]:
    """exp(-i*k*pi/2) as a Gaussian integer (a fourth root of unity)."""
    return I_POWERS[(-k) % 4]


def gi_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def gi_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def gi_neg(a):
    return (-a[0], -a[1])


def gi_conj(a):
    return (a[0], -a[1])


def gi_scale(a, s: int):
    return (a[0] * s, a[1] * s)


def gi_exact_div(a, b):
    """a / b in Z[i]; raises if the division is not exact."""
    den = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    if re % den or im % den:
        raise ArithmeticError("inexact Gaussian-integer division")
    return (re // den, im // den)


def gi_det(matrix) -> tuple[int, int]:
    """Fraction-free (Bareiss) determinant of a square Gaussian-integer matrix.

    ``matrix`` is a list of rows of ``(re, im)`` pairs; it is not modified.
    """
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return (1, 0)
    sign = 1
    prev = (1, 0)
    for k in range(n - 1):
        if m[k][k] == (0, 0):
            for i in range(k + 1, n):
                if m[i][k] != (0, 0):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return (0, 0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            row_k = m[k]
            for j in range(k + 1, n):
                num = gi_sub(gi_mul(pivot, row_i[j]), gi_mul(lead, row_k[j]))
                row_i[j] = gi_exact_div(num, prev)
        prev = pivot
    d = m[n - 1][n - 1]
    return (sign * d[0], sign * d[1])


class GaussianRational:
    """An element of Q[i] with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def from_pair(cls, pair) -> "GaussianRational":
        return cls(pair[0], pair[1])

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other):
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("division by zero in Q[i]")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / den,
            (self.im * other.re - self.re * other.im) / den,
        )

    def divided_by_int(self, k: int) -> "GaussianRational":
        return GaussianRational(self.re / k, self.im / k)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


GQ_ZERO = GaussianRational(0)
GQ_ONE = GaussianRational(1)
