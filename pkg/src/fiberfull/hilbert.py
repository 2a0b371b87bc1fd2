"""Exact Hilbert series ``N(t) / (1 - t)^n`` with a Laurent-polynomial numerator."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial


def _clean(d):
    return {k: v for k, v in d.items() if v}


def _mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return _clean(out)


def _one_minus_t_power(k):
    return {i: (-1) ** i * comb(k, i) for i in range(k + 1)}


def binomial_value(x, r):
    """The binomial polynomial x(x-1)...(x-r+1)/r! at an integer x (any sign)."""
    if r < 0:
        return 0
    num = 1
    for i in range(r):
        num *= x - i
    return num // factorial(r)


class HilbertSeries:
    """A graded dimension function as a rational function in ``t``.

    ``numerator`` maps exponents (possibly negative) to integer coefficients.
    """

    __slots__ = ("numerator", "denominator_power")

    def __init__(self, numerator, denominator_power):
        if denominator_power < 0:
            raise ValueError("denominator power must be non-negative")
        self.numerator = _clean(dict(numerator))
        self.denominator_power = denominator_power

    @classmethod
    def zero(cls, n):
        return cls({}, n)

    @classmethod
    def free(cls, twists, n):
        """Series of the free module ``(+)_j R(-a_j)`` over n variables."""
        num = {}
        for a in twists:
            num[a] = num.get(a, 0) + 1
        return cls(num, n)

    def is_zero(self):
        return not self.numerator

    def with_power(self, n):
        """Same function, rewritten over ``(1 - t)^n`` (n >= current power)."""
        k = n - self.denominator_power
        if k < 0:
            raise ValueError("cannot lower the denominator power this way")
        return HilbertSeries(_mul(self.numerator, _one_minus_t_power(k)), n)

    def reduced(self):
        """Cancel common ``(1 - t)`` factors; returns a new series."""
        num = dict(self.numerator)
        n = self.denominator_power
        while n and num and sum(num.values()) == 0:
            lo, hi = min(num), max(num)
            q = {}
            acc = 0
            # divide by (1 - t): q_k = sum_{j<=k} num_j
            for k in range(lo, hi):
                acc += num.get(k, 0)
                if acc:
                    q[k] = acc
            num = q
            n -= 1
        return HilbertSeries(num, n)

    @property
    def dimension(self):
        """Pole order at t = 1, i.e. the Krull dimension; -1 for the zero series."""
        if self.is_zero():
            return -1
        return self.reduced().denominator_power

    def __call__(self, nu):
        return self.coefficient(nu)

    def coefficient(self, nu):
        """Coefficient of ``t^nu`` in the power series expansion."""
        n = self.denominator_power
        if n == 0:
            return self.numerator.get(nu, 0)
        total = 0
        for k, c in self.numerator.items():
            if nu - k >= 0:
                total += c * comb(nu - k + n - 1, n - 1)
        return total

    def values(self, lo, hi):
        return [self.coefficient(nu) for nu in range(lo, hi + 1)]

    def hilbert_polynomial(self):
        """Coefficients (Fractions, constant first) of the Hilbert polynomial."""
        red = self.reduced()
        d = red.denominator_power
        if d == 0:
            return []
        coeffs = [Fraction(0)] * d
        for k, c in red.numerator.items():
            # C(nu - k + d - 1, d - 1) as a polynomial in nu
            poly = [Fraction(1)]
            for i in range(d - 1):
                shift = -k + d - 1 - i
                new = [Fraction(0)] * (len(poly) + 1)
                for j, a in enumerate(poly):
                    new[j] += a * shift
                    new[j + 1] += a
                poly = new
            for j, a in enumerate(poly):
                coeffs[j] += c * a / factorial(d - 1)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs

    def hilbert_polynomial_value(self, nu):
        red = self.reduced()
        d = red.denominator_power
        if d == 0:
            return 0
        return sum(c * binomial_value(nu - k + d - 1, d - 1) for k, c in red.numerator.items())

    def shift(self, a):
        """Series of ``M(-a)``: multiply by ``t^a``."""
        return HilbertSeries({k + a: v for k, v in self.numerator.items()}, self.denominator_power)

    def _common(self, other):
        n = max(self.denominator_power, other.denominator_power)
        return self.with_power(n), other.with_power(n), n

    def __add__(self, other):
        a, b, n = self._common(other)
        num = dict(a.numerator)
        for k, v in b.numerator.items():
            num[k] = num.get(k, 0) + v
        return HilbertSeries(num, n)

    def __neg__(self):
        return HilbertSeries({k: -v for k, v in self.numerator.items()}, self.denominator_power)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        a, b, _ = self._common(other)
        return a.numerator == b.numerator

    def __hash__(self):
        red = self.reduced()
        return hash((frozenset(red.numerator.items()), red.denominator_power))

    def support_bounds(self):
        """(lowest degree with possibly nonzero value, highest nonzero degree or None if infinite)."""
        if self.is_zero():
            return None, None
        lo = min(self.numerator)
        red = self.reduced()
        hi = max(red.numerator) if red.denominator_power == 0 else None
        return lo, hi

    def to_json(self):
        red = self.reduced()
        return {
            "numerator": [[k, red.numerator[k]] for k in sorted(red.numerator)],
            "denominator_power": red.denominator_power,
        }

    def __repr__(self):
        red = self.reduced()
        if not red.numerator:
            return "0"
        terms = " + ".join(f"{v}*t^{k}" for k, v in sorted(red.numerator.items())).replace("+ -", "- ")
        return f"({terms})/(1-t)^{red.denominator_power}"
