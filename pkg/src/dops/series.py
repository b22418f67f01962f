"""Truncated formal power series in t whose coefficients are polynomials in x.

This is the oracle layer: every generating function is built here twice over,
once through the exp/log exponent route and once through closed-form binomial
expansions, and the two constructions are required to agree coefficientwise.
Truncation order is always explicit; binary operations truncate to the
smaller operand order so nothing is silently extended.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .polynomials import (
    Poly,
    RationalLike,
    as_rational,
    factorial,
    falling_factorial,
)

__all__ = [
    "Series",
    "series_mul",
    "series_exp",
    "series_log",
    "series_log1p_scaled",
    "normalize_exponent",
    "gf_ratio_power",
    "gf_binomial_xw",
    "egf_extract",
]


class Series:
    """Power series in t, truncated at an explicit order N.

    ``coeffs`` always holds exactly N+1 Poly values, coefficient of t**n at
    index n (zero polynomials are kept, unlike in Poly itself, so the order
    is never ambiguous).
    """

    __slots__ = ("order", "coeffs")

    order: int
    coeffs: tuple[Poly, ...]

    def __init__(self, order: int, coeffs: Iterable[Poly] = ()):
        if order < 0:
            raise ValueError("series order must be non-negative")
        cs = list(coeffs)
        if len(cs) > order + 1:
            raise ValueError("more coefficients than the stated order allows")
        cs += [Poly.zero()] * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls(order, (Poly.one(),))

    @classmethod
    def from_scalars(cls, order: int, scalars: Iterable[RationalLike]) -> "Series":
        return cls(order, tuple(Poly.const(s) for s in scalars))

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(order, self.coeffs[: order + 1])

    def __add__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return Series(n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return Series(n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Series":
        return Series(self.order, tuple(-c for c in self.coeffs))

    def scale(self, factor) -> "Series":
        """Multiply every coefficient by a rational or a fixed Poly."""
        if isinstance(factor, Poly):
            return Series(self.order, tuple(c * factor for c in self.coeffs))
        f = as_rational(factor)
        return Series(self.order, tuple(c * f for c in self.coeffs))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Series)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        terms = ", ".join(f"t^{n}: {c}" for n, c in enumerate(self.coeffs))
        return f"Series(order={self.order}; {terms})"


def series_mul(f: Series, g: Series) -> Series:
    """Cauchy product truncated at min(order f, order g)."""
    n = min(f.order, g.order)
    out = []
    for m in range(n + 1):
        acc = Poly.zero()
        for i in range(m + 1):
            fi = f.coeffs[i]
            gj = g.coeffs[m - i]
            if fi.is_zero() or gj.is_zero():
                continue
            acc = acc + fi * gj
        out.append(acc)
    return Series(n, tuple(out))


def series_exp(f: Series) -> Series:
    """exp(f) for a series with zero constant term.

    Solved coefficientwise from g' = f'.g, which keeps every intermediate a
    plain convolution: g_n = (1/n) sum_{k=1..n} k f_k g_{n-k}.
    """
    if not f.coeffs[0].is_zero():
        raise ValueError("series_exp requires a zero constant term; use normalize_exponent first")
    out = [Poly.one()]
    for n in range(1, f.order + 1):
        acc = Poly.zero()
        for k in range(1, n + 1):
            fk = f.coeffs[k]
            if fk.is_zero():
                continue
            acc = acc + (fk * out[n - k]) * k
        out.append(acc / n)
    return Series(f.order, tuple(out))


def series_log(f: Series) -> Series:
    """log(f) for a series with constant term 1 (inverse of series_exp)."""
    if f.coeffs[0] != Poly.one():
        raise ValueError("series_log requires constant term exactly 1")
    out = [Poly.zero()]
    for n in range(1, f.order + 1):
        acc = f.coeffs[n] * n
        for k in range(1, n):
            hk = out[k]
            if hk.is_zero():
                continue
            acc = acc - (hk * f.coeffs[n - k]) * k
        out.append(acc / n)
    return Series(f.order, tuple(out))


def series_log1p_scaled(c: RationalLike, order: int) -> Series:
    """The series of log(1 - c t): sum_{n>=1} -(c**n / n) t**n."""
    c = as_rational(c)
    coeffs = [Poly.zero()]
    power = Fraction(1)
    for n in range(1, order + 1):
        power *= c
        coeffs.append(Poly.const(-power / n))
    return Series(order, tuple(coeffs))


def normalize_exponent(f: Series) -> tuple[Series, Poly]:
    """Split off the constant term of an exponent series.

    Returns (f minus its constant term, the removed constant).  Callers
    exponentiate the remainder, which pins the generating function to the
    value 1 at t = 0 without ever forming exp of a rational.  A constant term
    of positive degree in x is rejected: it would make the t = 0 value
    x-dependent.
    """
    c0 = f.coeffs[0]
    if c0.degree > 0:
        raise ValueError("exponent constant term must not depend on x")
    if c0.is_zero():
        return f, Poly.zero()
    rest = Series(f.order, (Poly.zero(),) + f.coeffs[1:])
    return rest, c0


def gf_ratio_power(alpha: RationalLike, beta: RationalLike, order: int) -> Series:
    """The series of ((1 - beta t)/(1 - alpha t)) ** (x/w) with w = alpha - beta.

    Built through the exponent route: exp of (x/w) (log(1 - beta t) -
    log(1 - alpha t)).  The coefficient of t**n is a degree-n polynomial in x
    whose x**n coefficient is 1/n!.
    """
    alpha = as_rational(alpha)
    beta = as_rational(beta)
    w = alpha - beta
    if w == 0:
        raise ValueError("gf_ratio_power requires alpha != beta")
    logs = series_log1p_scaled(beta, order) - series_log1p_scaled(alpha, order)
    exponent = logs.scale(Poly.x() / w)
    return series_exp(exponent)


def gf_binomial_xw(w: RationalLike, sign_scale: RationalLike, order: int) -> Series:
    """Closed-form series of (1 + w * sign_scale * t) ** (x/w) for w != 0.

    The coefficient of t**n is the step-w falling factorial polynomial of
    degree n times sign_scale**n / n!; this is the binomial-series cross-check
    for the exponent-route ratio powers.
    """
    w = as_rational(w)
    if w == 0:
        raise ValueError("gf_binomial_xw requires w != 0")
    s = as_rational(sign_scale)
    coeffs = []
    power = Fraction(1)
    for n in range(order + 1):
        coeffs.append(falling_factorial(w, n) * (power / factorial(n)))
        power *= s
    return Series(order, tuple(coeffs))


def egf_extract(f: Series) -> list[Poly]:
    """Read a polynomial sequence out of an exponential generating function:
    the n-th entry is n! times the coefficient of t**n."""
    return [f.coeffs[n] * factorial(n) for n in range(f.order + 1)]
