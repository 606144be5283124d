"""Reference computations that share nothing with the engine but ClassPoly.

* ``macdonald_sym_curve``: symmetric powers of a curve from the generating
  series in Hodge variables, switched to E-polynomial signs afterwards.
* ``hn_coprime_bundle_class``: moduli of stable bundles from the
  Harder-Narasimhan recursion over the class of the stack of all bundles,
  with the infinite sums over degrees summed as geometric series (sympy).
* ``squarefree_config_count``: unordered distinct points on the affine line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Tuple

import sympy as sp

from .poly import ClassPoly

_u, _v = sp.symbols("u v")
_L = _u * _v


@dataclass
class OracleReport:
    name: str
    inputs: Dict
    expected: ClassPoly
    actual: ClassPoly
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.expected == self.actual

    def to_json_obj(self) -> dict:
        return {"name": self.name, "inputs": self.inputs, "pass": self.passed,
                "expected": self.expected.to_json_obj(), "actual": self.actual.to_json_obj()}


def macdonald_sym_curve(k: int, g: int) -> ClassPoly:
    """Coefficient of t^k in (1+xt)^g (1+yt)^g / ((1-t)(1-xyt)) at x=-u, y=-v."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    terms: Dict[Tuple[int, int], int] = {}
    for i in range(min(g, k) + 1):
        for j in range(min(g, k - i) + 1):
            for m in range(k - i - j + 1):
                # the remaining k - i - j - m powers of t come from 1/(1-t)
                c = math.comb(g, i) * math.comb(g, j) * (-1) ** (i + j)
                key = (i + m, j + m)
                terms[key] = terms.get(key, 0) + c
    return ClassPoly(terms)


def squarefree_config_count(k: int) -> ClassPoly:
    """Squarefree monic polynomials of degree k: q^k - q^(k-1) for k >= 2, q for k = 1."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        return ClassPoly({(1, 1): 1})
    return ClassPoly({(k, k): 1, (k - 1, k - 1): -1})


# Harder-Narasimhan recursion

def _jac(g: int):
    return (1 - _u) ** g * (1 - _v) ** g


@lru_cache(maxsize=None)
def _bun_all(n: int, g: int):
    """Class of the stack of all bundles of rank n and fixed degree."""
    out = _jac(g) * _L ** ((n * n - 1) * (g - 1)) / (_L - 1)
    for i in range(2, n + 1):
        # Z(C, L^-i) with numerator and denominator multiplied by L^(2 i g)
        x = _L ** i
        num = (x - _u) ** g * (x - _v) ** g
        out *= num * x * x / (x ** (2 * g) * (x - 1) * (x - _L))
    return sp.cancel(out)


def _minus_chi(nj: int, dj: int, ni: int, di: int, g: int) -> int:
    # -chi(E_j, E_i)
    return -(nj * ni * (1 - g) + nj * di - ni * dj)


@lru_cache(maxsize=None)
def _bun_ss(n: int, d: int, g: int):
    """Class of the semistable stack; depends on d mod n only."""
    d = d % n
    total = _bun_all(n, g)
    if n == 1:
        return total
    for n1 in range(1, n):
        total -= _two_step(n1, n - n1, d, g)
    if n == 3:
        total -= _three_rank_one(d, g)
    elif n > 3:
        raise NotImplementedError("the oracle covers rank at most 3")
    return sp.cancel(total)


def _lpow(k: int):
    return _L ** k if k >= 0 else 1 / _L ** (-k)


def _two_step(n1: int, n2: int, d: int, g: int):
    """HN types (n1, d1) > (n2, d - d1): sum over d1 with d1/n1 > (d - d1)/n2."""
    # d1 (n1 + n2) > n1 d  <=>  d1 >= floor(n1 d / n) + 1
    n = n1 + n2
    start = (n1 * d) // n + 1
    period = n1 * n2 // math.gcd(n1, n2)
    # exponent of L is linear in d1 with slope -n, so each residue class is geometric
    out = 0
    for r in range(period):
        d1 = start + r
        d2 = d - d1
        term = _bun_ss(n1, d1, g) * _bun_ss(n2, d2, g) * _lpow(_minus_chi(n2, d2, n1, d1, g))
        # 1 / (1 - L^(-n period)) without negative powers
        out += term * _L ** (n * period) / (_L ** (n * period) - 1)
    return out


def _three_rank_one(d: int, g: int):
    """HN type of three line bundles d1 > d2 > d3: with a = d2 - d3, b = d1 - d2
    the exponent is 3(g-1) - 2a - 2b and the constraint is 2a + b = d mod 3."""
    j = _bun_ss(1, 0, g)
    out = 0
    for a0, b0 in product(range(1, 4), repeat=2):
        if (d - 2 * a0 - b0) % 3:
            continue
        geo = _L ** (12 - 2 * a0 - 2 * b0) / ((_L ** 6 - 1) ** 2)
        out += j ** 3 * _L ** (3 * (g - 1)) * geo
    return out


def _to_classpoly(expr) -> ClassPoly:
    poly = sp.Poly(sp.expand(sp.cancel(expr)), _u, _v)
    terms = {}
    for (p, q), c in poly.terms():
        if c.q != 1:
            raise ArithmeticError("oracle produced a non-integral coefficient")
        terms[(p, q)] = int(c)
    return ClassPoly(terms)


def hn_coprime_bundle_class(n: int, d: int, g: int) -> ClassPoly:
    """E-polynomial of the moduli of stable bundles of coprime rank and degree."""
    if math.gcd(n, d) != 1:
        from .domain import NotCoprime
        raise NotCoprime(f"gcd({n}, {d}) != 1")
    if not 1 <= n <= 3:
        raise ValueError("the oracle covers rank 1 to 3")
    return _to_classpoly((_L - 1) * _bun_ss(n, d, g))


def rank2_poincare_closed_form(g: int):
    """Poincare polynomial of M(2, odd): the fixed-determinant closed form times
    the Jacobian factor (1 + t)^{2g}."""
    t = sp.symbols("t")
    fixed = ((1 + t ** 3) ** (2 * g) - t ** (2 * g) * (1 + t) ** (2 * g)) / ((1 - t ** 2) * (1 - t ** 4))
    full = sp.Poly(sp.cancel(fixed * (1 + t) ** (2 * g)), t)
    return [int(c) for c in reversed(full.all_coeffs())]
