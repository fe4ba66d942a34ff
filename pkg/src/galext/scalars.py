"""Scalar arithmetic for the exact and floating-point backends.

Exact values live in a cyclotomic field Q(zeta_N).  A `Cyclo` stores its
coordinates in the power basis 1, z, ..., z^(phi(N)-1) of Q[x]/Phi_N(x)
as `Fraction`s.  Arithmetic between different orders promotes both
operands to the lcm order first, so mixed expressions "just work".
Plain `Fraction`/`int` values are accepted everywhere and kept rational
when possible.

The float backend uses ordinary Python/numpy complex numbers; the only
helpers it needs from here are `root_of_unity` and the tolerance tests.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

Rational = (int, Fraction)


@lru_cache(maxsize=None)
def _cyclotomic_ints(order: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_order, constant term first."""
    from sympy import cyclotomic_poly, Poly, Symbol

    x = Symbol("x")
    coeffs = Poly(cyclotomic_poly(order, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def _power_table(order: int) -> tuple[tuple[Fraction, ...], ...]:
    """x^k mod Phi_order for k = 0 .. 2*(d-1), d = deg Phi_order."""
    phi = _cyclotomic_ints(order)
    d = len(phi) - 1
    # x^d = -(phi[0] + phi[1] x + ... + phi[d-1] x^(d-1)), Phi monic.
    top = [Fraction(-phi[i]) for i in range(d)]
    rows: list[list[Fraction]] = []
    for k in range(max(2 * d - 1, order)):
        if k < d:
            row = [Fraction(0)] * d
            row[k] = Fraction(1)
        else:
            prev = rows[k - 1]
            row = [Fraction(0)] + list(prev[: d - 1])
            lead = prev[d - 1]
            if lead:
                row = [row[i] + lead * top[i] for i in range(d)]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def _reduce_poly(order: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a coefficient list (any length) mod Phi_order."""
    d = len(_cyclotomic_ints(order)) - 1
    table = _power_table(order)
    out = [Fraction(0)] * d
    for k, c in enumerate(coeffs):
        if not c:
            continue
        # x^order == 1 in Q[x]/Phi_order, so fold large exponents first.
        row = table[k if k < len(table) else k % order]
        for i in range(d):
            out[i] += c * row[i]
    return tuple(out)


class Cyclo:
    """An element of Q(zeta_order) in the power basis of Q[x]/Phi_order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        self.order = order
        d = len(_cyclotomic_ints(order)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) != d:
            raise ValueError(f"need {d} coefficients for order {order}")
        self.coeffs = tuple(cs)

    @staticmethod
    def root(order: int, power: int = 1) -> "Cyclo":
        """zeta_order ** power."""
        k = power % order
        return Cyclo(order, _reduce_poly(order, [Fraction(0)] * k + [Fraction(1)]))

    @staticmethod
    def from_rational(order: int, value) -> "Cyclo":
        d = len(_cyclotomic_ints(order)) - 1
        coeffs = [Fraction(value)] + [Fraction(0)] * (d - 1)
        return Cyclo(order, coeffs)

    def promote(self, order: int) -> "Cyclo":
        """Embed into Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("can only promote to a multiple order")
        step = order // self.order
        out: list[Fraction] = []
        for k, c in enumerate(self.coeffs):
            if c:
                while len(out) < step * k + 1:
                    out.append(Fraction(0))
                out[step * k] += c
        return Cyclo(order, _reduce_poly(order, out))

    def _pair(self, other):
        if isinstance(other, Rational):
            other = Cyclo.from_rational(self.order, other)
        if not isinstance(other, Cyclo):
            return None, None
        n = self.order * other.order // gcd(self.order, other.order)
        return self.promote(n), other.promote(n)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Cyclo(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Cyclo(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Rational):
            q = Fraction(other)
            return Cyclo(self.order, [c * q for c in self.coeffs])
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        d = len(a.coeffs)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
        return Cyclo(a.order, _reduce_poly(a.order, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        """Multiplicative inverse via a small exact linear solve."""
        d = len(self.coeffs)
        # Columns: coordinates of self * x^j  =>  solve M a = e0.
        table = _power_table(self.order)
        cols = []
        for j in range(d):
            col = [Fraction(0)] * d
            for i, c in enumerate(self.coeffs):
                if c:
                    row = table[i + j]
                    for k in range(d):
                        col[k] += c * row[k]
            cols.append(col)
        mat = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [Fraction(1)] + [Fraction(0)] * (d - 1)
        sol = _solve_fraction_system(mat, rhs)
        if sol is None:
            raise ZeroDivisionError("division by zero cyclotomic")
        return Cyclo(self.order, sol)

    def __truediv__(self, other):
        if isinstance(other, Rational):
            q = Fraction(other)
            return Cyclo(self.order, [c / q for c in self.coeffs])
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse().__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyclo.from_rational(self.order, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "Cyclo":
        """Complex conjugation zeta -> zeta^(-1)."""
        n = self.order
        acc = Cyclo.from_rational(n, 0)
        for k, c in enumerate(self.coeffs):
            if c:
                acc = acc + Cyclo.root(n, (-k) % n) * c
        return acc

    def as_fraction(self):
        """Return a Fraction if the value is rational, else None."""
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        if self.order == 2:  # phi(2) = 1, always rational
            return self.coeffs[0]
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, Rational):
            f = self.as_fraction()
            return f is not None and f == other
        if isinstance(other, Cyclo):
            a, b = self._pair(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self):
        f = self.as_fraction()
        if f is not None:
            return hash(f)
        return hash((self.order, self.coeffs))

    def __repr__(self):
        f = self.as_fraction()
        if f is not None:
            return f"Cyclo({f})"
        terms = [f"{c}*z{self.order}^{k}" for k, c in enumerate(self.coeffs) if c]
        return "Cyclo(" + " + ".join(terms) + ")"


def _solve_fraction_system(mat, rhs):
    """Solve a small square Fraction system in place; None if singular."""
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Backend-agnostic helpers.  Exact scalars are Fraction | int | Cyclo;
# float scalars are float | complex.


def root_of_unity(order: int, power: int = 1, exact: bool = True):
    """Primitive order-th root of unity raised to `power`."""
    if exact:
        k = power % order
        if order == 1 or k == 0:
            return Fraction(1)
        if order == 2:
            return Fraction(-1)
        c = Cyclo.root(order, k)
        f = c.as_fraction()
        return f if f is not None else c
    return cmath.exp(2j * cmath.pi * power / order)


def conj_scalar(x):
    if isinstance(x, Cyclo):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x


def scalar_is_zero(x, tol: float = 0.0) -> bool:
    if isinstance(x, Cyclo):
        return x.is_zero()
    if isinstance(x, Rational):
        return x == 0
    return abs(x) <= tol


def scalar_to_complex(x) -> complex:
    if isinstance(x, Cyclo):
        return x.to_complex()
    if isinstance(x, Fraction):
        return complex(float(x))
    return complex(x)


def scalar_to_json(x):
    """JSON-friendly form: "p/q", cyclotomic coefficient dict, or [re, im]."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, Cyclo):
        f = x.as_fraction()
        if f is not None:
            return scalar_to_json(f)
        return {
            "cyclotomic_order": x.order,
            "coeffs": [scalar_to_json(c) for c in x.coeffs],
        }
    z = complex(x)
    return [z.real, z.imag]


def scalars_close(x, y, tol: float) -> bool:
    """Equality in exact mode, |x-y| <= tol in float mode."""
    if isinstance(x, (Cyclo, Fraction, int)) and isinstance(y, (Cyclo, Fraction, int)):
        d = x - y
        return d.is_zero() if isinstance(d, Cyclo) else d == 0
    return abs(scalar_to_complex(x) - scalar_to_complex(y)) <= tol
