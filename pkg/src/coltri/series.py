"""Truncated power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class PowerSeries:
    """Series ``sum_{n <= order} c_n x^n``, exact up to ``O(x^(order+1))``.

    Binary operations truncate to the smaller order of the operands.
    """

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs: Iterable = (), order: int | None = None, var: str = "x"):
        c = [_frac(a) for a in coeffs]
        if order is None:
            order = max(len(c) - 1, 0)
        c = c[: order + 1] + [Fraction(0)] * (order + 1 - len(c))
        self.coeffs = c
        self.order = order
        self.var = var

    @classmethod
    def constant(cls, value, order: int, var: str = "x") -> "PowerSeries":
        return cls([value], order, var)

    @classmethod
    def variable(cls, order: int, var: str = "x") -> "PowerSeries":
        return cls([0, 1], order, var)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        terms = []
        for n, a in enumerate(self.coeffs):
            if a:
                terms.append(f"{a}" if n == 0 else f"{a}*{self.var}^{n}")
        terms.append(f"O({self.var}^{self.order + 1})")
        return " + ".join(terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return self.coeffs[: n + 1] == other.coeffs[: n + 1]
        return NotImplemented

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(order, self.order), self.var)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(other, self.order, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-a for a in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            k = _frac(other)
            return PowerSeries([k * a for a in self.coeffs], self.order, self.var)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(n + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return PowerSeries(out, n, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = PowerSeries.constant(1, self.order, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            return self * (1 / _frac(other))
        return self * other.reciprocal()

    def shift(self, k: int = 1) -> "PowerSeries":
        """Multiply by ``x^k``."""
        return PowerSeries([0] * k + self.coeffs, self.order, self.var)

    def derivative(self) -> "PowerSeries":
        return PowerSeries(
            [n * a for n, a in enumerate(self.coeffs)][1:], max(self.order - 1, 0), self.var
        )

    def reciprocal(self) -> "PowerSeries":
        """``1/self`` by Newton iteration ``g <- g (2 - self g)``."""
        if self[0] == 0:
            raise ZeroDivisionError("constant term must be invertible")
        g = PowerSeries.constant(1 / self[0], 0, self.var)
        prec = 0
        while prec < self.order:
            prec = min(2 * prec + 1, self.order)
            g = PowerSeries(g.coeffs, prec, self.var)
            g = g * (2 - self.truncate(prec) * g)
        return g.truncate(self.order)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(x))``; ``inner`` must have zero constant term."""
        if inner[0] != 0:
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = PowerSeries.constant(self[n], n, inner.var)
        for a in reversed(self.coeffs[:n]):
            result = result * inner + a
        return result

    def __call__(self, inner: "PowerSeries") -> "PowerSeries":
        return self.compose(inner)

    def reversion(self) -> "PowerSeries":
        """Compositional inverse ``h`` with ``self(h(x)) = x``.

        Needs ``self[0] == 0`` and ``self[1] != 0``.  Newton step
        ``h <- h - (self(h) - x) / self'(h)``, doubling the precision.
        """
        if self[0] != 0 or self[1] == 0:
            raise ValueError("reversion needs f(0) = 0 and f'(0) != 0")
        h = PowerSeries([0, 1 / self[1]], 1, self.var)
        deriv = self.derivative()
        prec = 1
        while prec < self.order:
            prec = min(2 * prec, self.order)
            h = PowerSeries(h.coeffs, prec, self.var)
            f = self.truncate(prec)
            x = PowerSeries.variable(prec, self.var)
            # f' is known to order-1 only; its missing top coefficient never
            # reaches the kept orders because f(h) - x starts at x^2.
            df = PowerSeries(deriv.coeffs, prec, self.var)
            h = h - (f.compose(h) - x) * df.compose(h).reciprocal()
        return h.truncate(self.order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def polynomial(coeffs: Sequence, order: int, var: str = "x") -> PowerSeries:
    return PowerSeries(coeffs, order, var)
