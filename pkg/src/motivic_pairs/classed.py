"""A class together with the certificate that produces it.

Every arithmetic step updates the E-polynomial and the certificate in
lockstep, so ``evaluate(c.cert, g) == c.poly`` holds by construction and is
checked independently in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import motive_expr as mx
from .lambda_ops import adams, lambda_k
from .poly import ONE, ZERO, ClassPoly, div_exact


@dataclass(frozen=True)
class Classed:
    poly: ClassPoly
    cert: mx.MotiveExpr

    @classmethod
    def const(cls, n: int) -> "Classed":
        return cls(ClassPoly.const(n), mx.const(n))

    @classmethod
    def tate(cls, poly: ClassPoly) -> "Classed":
        """Wrap a polynomial in q = uv with its literal certificate."""
        return cls(poly, mx.q_polynomial(poly.q_coeffs()))

    @classmethod
    def named(cls, key: str, poly: ClassPoly) -> "Classed":
        return cls(poly, mx.named(key))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: "Classed") -> "Classed":
        return Classed(self.poly + other.poly, mx.add(self.cert, other.cert))

    def __sub__(self, other: "Classed") -> "Classed":
        return Classed(self.poly - other.poly, mx.sub(self.cert, other.cert))

    def __mul__(self, other: "Classed") -> "Classed":
        if self.poly.is_zero() or other.poly.is_zero():
            return ZERO_C
        return Classed(self.poly * other.poly, mx.mul(self.cert, other.cert))

    def div_exact(self, other: "Classed") -> "Classed":
        return Classed(div_exact(self.poly, other.poly), mx.div(self.cert, other.cert))

    def lam(self, k: int) -> "Classed":
        if k < 0:
            return ZERO_C
        if k == 0:
            return ONE_C
        return Classed(lambda_k(self.poly, k), mx.lam(k, self.cert))

    def psi(self, k: int) -> "Classed":
        """Adams operation; the certificate uses Newton's identity
        k lambda^k = sum_{i=1..k} psi^i lambda^(k-i)."""
        return Classed(adams(self.poly, k), psi_cert(self.cert, k))


def psi_cert(x: mx.MotiveExpr, k: int) -> mx.MotiveExpr:
    psis = [None, x]
    for m in range(2, k + 1):
        rest = [mx.mul(psis[i], mx.lam(m - i, x)) for i in range(1, m)]
        psis.append(mx.sub(mx.mul(mx.const(m), mx.lam(m, x)), mx.add(*rest)))
    return psis[k]


def csum(items: Iterable[Classed]) -> Classed:
    out = ZERO_C
    for it in items:
        if not it.is_zero():
            out = out + it if not out.is_zero() else it
    return out


def cprod(items: Iterable[Classed]) -> Classed:
    out = ONE_C
    for it in items:
        out = out * it
    return out


ZERO_C = Classed(ZERO, mx.const(0))
ONE_C = Classed(ONE, mx.const(1))
