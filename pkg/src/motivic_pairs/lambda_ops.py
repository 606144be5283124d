"""Lambda operations on E-polynomials through the power structure.

``lambda_k(a, k)`` is the coefficient of t^k in

    prod_{(p,q)} (1 - u^p v^q t) ** (-a_pq)

so that lambda^k [X] = [Sym^k X] on effective classes.  Negative
coefficients use the binomial series with negative exponent.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .poly import ONE, ZERO, ClassPoly


@dataclass(frozen=True)
class SymSeries:
    base: ClassPoly
    coefficients: Tuple[ClassPoly, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> ClassPoly:
        return self.coefficients[k]


def _binom_series_coeffs(a: int, K: int) -> List[int]:
    # coefficients of (1 - x)^(-a) up to x^K: binom(a + j - 1, j)
    out = [1]
    c = 1
    for j in range(1, K + 1):
        c = c * (a + j - 1) // j
        out.append(c)
    return out


def sym_series(a: ClassPoly, K: int) -> SymSeries:
    if K < 0:
        raise ValueError("truncation order must be nonnegative")
    series: List[ClassPoly] = [ONE] + [ZERO] * K
    if K == 0:
        return SymSeries(a, tuple(series))
    # (0,0) factor first: (1 - t)^(-c) has scalar coefficients
    for (p, q), c in sorted(a.items()):
        bc = _binom_series_coeffs(c, K)
        factor = [ClassPoly._raw({(j * p, j * q): bc[j]}) if bc[j] else ZERO for j in range(K + 1)]
        new = []
        for k in range(K + 1):
            acc = series[k]
            for j in range(1, k + 1):
                f = factor[j]
                if f and series[k - j]:
                    acc = acc + f * series[k - j]
            new.append(acc)
        series = new
    return SymSeries(a, tuple(series))


def lambda_k(a: ClassPoly, k: int) -> ClassPoly:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return ONE
    if k == 1:
        return a
    return sym_series(a, k)[k]


def adams(a: ClassPoly, k: int) -> ClassPoly:
    """psi^k for the power structure above: u -> u^k, v -> v^k."""
    if k < 1:
        raise ValueError("Adams operations are indexed from 1")
    return a.substitute_powers(k)
