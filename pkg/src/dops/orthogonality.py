"""Recurrence fitting, regularity analysis, dual-functional moments, and the
orthogonality pattern checks built on them.

A monic sequence of degrees 0..N determines at most one band recurrence of a
given bandwidth; fitting is a triangular solve done by expanding the defect
x P_n - P_{n+1} back in the P basis, so it is exact and needs no pivoting.
Moments of the dual functionals come from inverting the (unit lower
triangular) coefficient matrix of the sequence, which is likewise exact and
works whether or not the sequence is regular; non-regularity is something
these tools report, never a reason to fail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polynomials import Poly

__all__ = [
    "FitError",
    "RecurrenceTable",
    "MomentTable",
    "OrthogonalityCheck",
    "OrthogonalityReport",
    "fit_recurrence",
    "check_regularity",
    "moments_by_inversion",
    "verify_d_orthogonality",
    "expand_in_basis",
    "quasi_orthogonality_order",
]


class FitError(ValueError):
    """The input sequence satisfies no band recurrence of the requested
    bandwidth; ``index`` is the first step where fitting failed."""

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


def expand_in_basis(q: Poly, basis: Sequence[Poly]) -> list[Fraction]:
    """Exact coefficients a_i with q = sum a_i basis[i].

    The basis must be graded (degree of basis[i] is exactly i) with nonzero
    leading coefficients; monic is the common case but not required.  Returns
    a list of length deg(q)+1 (empty for the zero polynomial).
    """
    if q.is_zero():
        return []
    if q.degree >= len(basis):
        raise ValueError(f"need basis elements up to degree {q.degree}, have {len(basis) - 1}")
    for i, p in enumerate(basis[: q.degree + 1]):
        if p.degree != i:
            raise ValueError(f"basis element {i} has degree {p.degree}, expected {i}")
    out = [Fraction(0)] * (q.degree + 1)
    rest = q
    while not rest.is_zero():
        i = rest.degree
        a = rest.leading_coefficient / basis[i].leading_coefficient
        out[i] = a
        rest = rest - basis[i] * a
        if not rest.is_zero() and rest.degree >= i:
            raise AssertionError("basis expansion failed to reduce degree")
    return out


@dataclass(frozen=True)
class RecurrenceTable:
    """Fitted coefficients of the band recurrence

        P_{n+1} = (x - beta_n) P_n - sum_{nu=0..d-1} gamma_{n-nu}^{d-1-nu} P_{n-1-nu}

    for a monic sequence of degrees 0..n_max.  ``gamma`` maps the pair
    (subscript m, superscript k) to the stored value; each pair is determined
    by exactly one fitting step.  The superscript-0 class carries the
    regularity conditions gamma_{m+1}^0 != 0.
    """

    d: int
    n_max: int
    beta: tuple[Fraction, ...]
    gamma: dict[tuple[int, int], Fraction] = field(compare=False)

    def gamma_at(self, m: int, k: int) -> Fraction:
        try:
            return self.gamma[(m, k)]
        except KeyError:
            raise ValueError(f"gamma with subscript {m} and superscript {k} is outside the fitted range") from None

    def regenerate(self) -> list[Poly]:
        """Re-run the fitted recurrence from P_0 = 1; reproduces the input."""
        polys = [Poly.one()]
        x = Poly.x()
        for n in range(self.n_max):
            nxt = (x - Poly.const(self.beta[n])) * polys[n]
            for nu in range(min(self.d, n)):
                nxt = nxt - polys[n - 1 - nu] * self.gamma_at(n - nu, self.d - 1 - nu)
            polys.append(nxt)
        return polys

    def regular_upto(self) -> int:
        """Largest m such that gamma_{m+1}^0 is in the fitted range."""
        return self.n_max - 1 - self.d


def fit_recurrence(polys: Sequence[Poly], d: int) -> RecurrenceTable:
    """Solve exactly for the band recurrence reproducing a monic sequence.

    Each step n expands x P_n - P_{n+1} over the basis P_0..P_n; the top
    coefficient is beta_n, the next d are the gamma values, and anything
    below the band is an inconsistency (the sequence satisfies no such
    recurrence), reported with the failing step index.
    """
    n_max = len(polys) - 1
    if d < 1:
        raise ValueError("d must be a positive integer")
    if n_max < d + 1:
        raise ValueError(f"need degrees through {d + 1} to fit a bandwidth-{d + 2} recurrence")
    for i, p in enumerate(polys):
        if p.degree != i or not p.is_monic():
            raise ValueError(f"input element {i} is not monic of degree {i}")
    beta: list[Fraction] = []
    gamma: dict[tuple[int, int], Fraction] = {}
    for n in range(n_max):
        defect = Poly.x() * polys[n] - polys[n + 1]
        coeffs = expand_in_basis(defect, polys)
        coeffs += [Fraction(0)] * (n + 1 - len(coeffs))
        beta.append(coeffs[n])
        for nu in range(min(d, n)):
            gamma[(n - nu, d - 1 - nu)] = coeffs[n - 1 - nu]
        for j in range(n - d):
            if coeffs[j] != 0:
                raise FitError(n, f"no bandwidth-{d + 2} recurrence: step {n} leaves "
                                  f"a nonzero component on P_{j}")
    return RecurrenceTable(d=d, n_max=n_max, beta=tuple(beta), gamma=gamma)


def check_regularity(table: RecurrenceTable, upto: int) -> list[int]:
    """Indices m <= upto with gamma_{m+1}^0 = 0.

    An empty list means the fitted sequence is d-orthogonal through the
    checked range; a non-empty list is a report, not an error.
    """
    if upto > table.regular_upto():
        raise ValueError(f"table fitted only through m = {table.regular_upto()}, asked for {upto}")
    return [m for m in range(upto + 1) if table.gamma_at(m + 1, 0) == 0]


@dataclass(frozen=True)
class MomentTable:
    """Moments moments[r][k] = <u_r, x**k> of the first d dual functionals of
    a monic sequence, through degree n_max."""

    d: int
    n_max: int
    moments: tuple[tuple[Fraction, ...], ...]

    def moment(self, r: int, k: int) -> Fraction:
        if not 0 <= r < self.d:
            raise ValueError(f"functional index {r} out of range 0..{self.d - 1}")
        if not 0 <= k <= self.n_max:
            raise ValueError(f"moment degree {k} outside the computed range 0..{self.n_max}")
        return self.moments[r][k]

    def apply(self, r: int, q: Poly) -> Fraction:
        """<u_r, q> for any polynomial inside the degree budget."""
        if q.degree > self.n_max:
            raise ValueError(f"degree {q.degree} exceeds the moment budget {self.n_max}")
        return sum((c * self.moments[r][k] for k, c in enumerate(q.coeffs)), Fraction(0))


def moments_by_inversion(polys: Sequence[Poly], d: int) -> MomentTable:
    """Dual-functional moments by triangular inversion.

    Expands each monomial x**k over the monic basis; the coefficient of P_r
    in that expansion is <u_r, x**k> by biorthogonality.  Exact and
    unconditional (the coefficient matrix is unit lower triangular).
    """
    n_max = len(polys) - 1
    if d < 1:
        raise ValueError("d must be a positive integer")
    if d > n_max:
        raise ValueError(f"need degrees through at least d = {d}")
    rows: list[list[Fraction]] = [[] for _ in range(d)]
    for k in range(n_max + 1):
        coeffs = expand_in_basis(Poly.monomial(k), polys)
        coeffs += [Fraction(0)] * (n_max + 1 - len(coeffs))
        for r in range(d):
            rows[r].append(coeffs[r])
    return MomentTable(d=d, n_max=n_max, moments=tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class OrthogonalityCheck:
    """One (r, m, n) cell of the orthogonality pattern: ``kind`` is "zero"
    for the vanishing conditions and "nonzero" for the regularity ones."""

    r: int
    m: int
    n: int
    kind: str
    value: Fraction
    ok: bool


@dataclass(frozen=True)
class OrthogonalityReport:
    d: int
    n_max: int
    checks: tuple[OrthogonalityCheck, ...]

    @property
    def zero_failures(self) -> list[OrthogonalityCheck]:
        return [c for c in self.checks if c.kind == "zero" and not c.ok]

    @property
    def regularity_failures(self) -> list[OrthogonalityCheck]:
        return [c for c in self.checks if c.kind == "nonzero" and not c.ok]

    @property
    def passed(self) -> bool:
        """True when every vanishing condition holds; regularity failures are
        reported separately (non-regular input is a finding, not a failure)."""
        return not self.zero_failures


def verify_d_orthogonality(polys: Sequence[Poly], table: MomentTable, d: int,
                           n_max: int) -> OrthogonalityReport:
    """Check the full orthogonality pattern within the degree budget:
    <u_r, x**m P_n> = 0 whenever n >= m d + r + 1, and != 0 at n = m d + r."""
    if table.d < d:
        raise ValueError("moment table covers fewer functionals than requested")
    checks: list[OrthogonalityCheck] = []
    for r in range(d):
        m = 0
        while m + (m * d + r) <= n_max:
            base = m * d + r
            for n in range(base, min(n_max - m, len(polys) - 1) + 1):
                value = table.apply(r, Poly.monomial(m) * polys[n])
                if n == base:
                    checks.append(OrthogonalityCheck(r, m, n, "nonzero", value, value != 0))
                else:
                    checks.append(OrthogonalityCheck(r, m, n, "zero", value, value == 0))
            m += 1
    return OrthogonalityReport(d=d, n_max=n_max, checks=tuple(checks))


def quasi_orthogonality_order(q_seq: Sequence[Poly], basis: Sequence[Poly],
                              d: int) -> tuple[int, bool]:
    """Smallest l such that every q_seq[n] expands over the basis with
    support inside [n - d*l, n], plus whether that order is exact.

    The order is exact when the bottom coefficient a_{n, n-d*l} is nonzero
    for every checked n >= d*l; otherwise the sequence is quasi-orthogonal of
    order at most l.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    expansions: list[list[Fraction]] = []
    for n, q in enumerate(q_seq):
        if q.degree != n:
            raise ValueError(f"element {n} has degree {q.degree}; the sequence must be graded")
        expansions.append(expand_in_basis(q, basis))
    l = 0
    for n, coeffs in enumerate(expansions):
        low = next(i for i, c in enumerate(coeffs) if c != 0)
        need = -((low - n) // d)  # ceil((n - low) / d)
        l = max(l, need)
    exact = True
    for n, coeffs in enumerate(expansions):
        if n >= d * l and coeffs[n - d * l] == 0:
            exact = False
            break
    return l, exact
