"""Triples of type (n, 1): parameter range, critical values, Ext dimensions,
the dimension formula and the catalog of stock classes.

All parameters are exact :class:`fractions.Fraction` values; floating point
never enters wall or integrality computations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from . import motive_expr as mx
from .lambda_ops import lambda_k
from .poly import ONE, ZERO, ClassPoly, curve

Rational = Fraction
INF = math.inf


class NegativeExtDim(ValueError):
    """The Euler-form computation left the range where Ext^0 = Ext^2 = 0."""


class NotCoprime(ValueError):
    pass


@dataclass(frozen=True)
class PairProblem:
    g: int
    n: int
    d: int
    d0: int = 0

    def __post_init__(self):
        if self.g < 2:
            raise ValueError("genus must be at least 2")
        if not 1 <= self.n <= 4:
            raise ValueError("rank must satisfy 1 <= n <= 4")

    def sigma_range(self) -> Tuple[Fraction, object]:
        return sigma_range(self)

    def normalized(self) -> "PairProblem":
        """Twist so that d0 = 0; the moduli spaces are isomorphic."""
        if self.d0 == 0:
            return self
        return PairProblem(self.g, self.n, self.d - self.n * self.d0, 0)

    def tau_to_sigma(self, tau) -> Fraction:
        return (self.n + 1) * Fraction(tau) - self.d

    def sigma_to_tau(self, sigma) -> Fraction:
        return (Fraction(sigma) + self.d) / (self.n + 1)

    def mu_c(self, sigma) -> Fraction:
        return (self.d + self.d0 + Fraction(sigma)) / (self.n + 1)


@dataclass(frozen=True, order=True)
class Wall:
    sigma: Fraction
    mu_c: Fraction


@dataclass(frozen=True)
class TripleShape:
    """Ranks and degrees (n1, d1, n2, d2) of a triple; n2 is 0 or 1."""
    n1: int
    d1: int
    n2: int = 0
    d2: int = 0

    def __post_init__(self):
        if self.n1 < 0 or self.n2 not in (0, 1):
            raise ValueError(f"invalid triple shape {self}")


def sigma_range(p: PairProblem):
    """(sigma_m, sigma_M); sigma_M is ``math.inf`` for n = 1."""
    sm = Fraction(p.d, p.n) - p.d0
    if p.n == 1:
        return sm, INF
    return sm, (1 + Fraction(p.n + 1, p.n - 1)) * sm


def sigma_M(p: PairProblem):
    return sigma_range(p)[1]


def sigma_m(p: PairProblem) -> Fraction:
    return sigma_range(p)[0]


def _in_open(s: Fraction, lo, hi) -> bool:
    return lo < s and (hi == INF or s < hi)


def walls(p: PairProblem) -> List[Wall]:
    """Critical values strictly inside (sigma_m, sigma_M), ascending.

    A wall is where a subtriple of rank (m, 0) and degree k has the same
    sigma-slope as the triple: sigma = (n+1) k/m - d - d0 for 1 <= m <= n-1.
    The rank (m, 1) family gives the same set through the quotient.
    """
    if p.n == 1:
        return []
    lo, hi = sigma_range(p)
    if not lo < hi:
        return []
    found = set()
    for m in range(1, p.n):
        # sigma in (lo, hi)  <=>  k in ((lo + d + d0) m/(n+1), (hi + d + d0) m/(n+1))
        kmin = math.floor((lo + p.d + p.d0) * m / (p.n + 1)) + 1
        kmax = math.ceil((hi + p.d + p.d0) * m / (p.n + 1)) - 1
        for k in range(kmin, kmax + 1):
            s = Fraction((p.n + 1) * k, m) - p.d - p.d0
            if _in_open(s, lo, hi):
                found.add(s)
    return [Wall(s, p.mu_c(s)) for s in sorted(found)]


def walls_brute_force(p: PairProblem, degree_window: int = 200) -> List[Wall]:
    """Enumerate the defining formula over all (n1', n2', d1' + d2').

    Zero-rank components carry zero degree, so d2' = n2' d0 and a rank-n
    first component has degree d.
    """
    if p.n == 1:
        return []
    lo, hi = sigma_range(p)
    found = set()
    for n1p in range(0, p.n + 1):
        for n2p in (0, 1):
            den = n1p - p.n * n2p
            if den == 0:
                continue
            d1_choices = [p.d] if n1p == p.n else range(-degree_window, degree_window + 1)
            if n1p == 0:
                d1_choices = [0]
            for d1p in d1_choices:
                s_deg = d1p + n2p * p.d0
                s = Fraction((p.n + 1) * s_deg - (n1p + n2p) * (p.d + p.d0), den)
                if _in_open(s, lo, hi):
                    found.add(s)
    return [Wall(s, p.mu_c(s)) for s in sorted(found)]


def is_wall(p: PairProblem, sigma) -> bool:
    sigma = Fraction(sigma)
    return any(w.sigma == sigma for w in walls(p))


def chamber_index(p: PairProblem, sigma) -> int:
    """Number of walls below ``sigma``; raises if sigma is a wall or out of range."""
    sigma = Fraction(sigma)
    lo, hi = sigma_range(p)
    if not _in_open(sigma, lo, hi):
        raise ValueError(f"sigma={sigma} outside ({lo}, {hi})")
    ws = walls(p)
    if any(w.sigma == sigma for w in ws):
        raise ValueError(f"sigma={sigma} is a critical value")
    return sum(1 for w in ws if w.sigma < sigma)


def chamber_sample(p: PairProblem, index: int) -> Fraction:
    """A rational parameter in the given chamber (0 = bottom)."""
    lo, hi = sigma_range(p)
    pts = [lo] + [w.sigma for w in walls(p)]
    if not 0 <= index < len(pts):
        raise ValueError(f"chamber index {index} out of range")
    left = pts[index]
    right = pts[index + 1] if index + 1 < len(pts) else hi
    if right == INF:
        return left + 1
    return (left + right) / 2


def moduli_dim(p: PairProblem) -> int:
    n, g = p.n, p.g
    return (n * n - n + 1) * (g - 1) + 1 + p.d - n * p.d0


def triple_dim(n: int, d: int, d0: int, g: int) -> int:
    return (n * n - n + 1) * (g - 1) + 1 + d - n * d0


def bundle_moduli_dim(n: int, g: int) -> int:
    return n * n * (g - 1) + 1


# Euler form of triples

def chi_bundles(ra: int, da: int, rb: int, db: int, g: int) -> int:
    """chi(A, B) = dim Hom(A, B) - dim Ext^1(A, B) for bundles on the curve."""
    if ra == 0 or rb == 0:
        return 0
    return ra * rb * (1 - g) + ra * db - rb * da


def chi_triples(src: TripleShape, tgt: TripleShape, g: int) -> int:
    return (chi_bundles(src.n1, src.d1, tgt.n1, tgt.d1, g)
            + chi_bundles(src.n2, src.d2, tgt.n2, tgt.d2, g)
            - chi_bundles(src.n2, src.d2, tgt.n1, tgt.d1, g))


def ext1_dim(src: TripleShape, tgt: TripleShape, g: int) -> int:
    """dim Ext^1(src, tgt) = -chi(src, tgt) when Ext^0 and Ext^2 vanish."""
    val = -chi_triples(src, tgt, g)
    if val < 0:
        raise NegativeExtDim(f"Ext^1({src}, {tgt}) would have dimension {val}")
    return val


# q-analogues

@lru_cache(maxsize=None)
def _gauss_coeffs(w: int, k: int) -> Tuple[int, ...]:
    if k < 0 or k > w:
        return ()
    # [w, k] = [w-1, k-1] + q^k [w-1, k]
    if k == 0 or k == w:
        return (1,)
    a = _gauss_coeffs(w - 1, k - 1)
    b = _gauss_coeffs(w - 1, k)
    out = [0] * max(len(a), len(b) + k)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + k] += c
    return tuple(out)


def gaussian_binomial(w: int, k: int) -> ClassPoly:
    return ClassPoly.from_q(_gauss_coeffs(w, k))


def frames_poly(k: int, w: int) -> ClassPoly:
    out = ONE
    for i in range(k):
        out = out * (ClassPoly.lefschetz_power(w) - ClassPoly.lefschetz_power(i))
    return out


def gl_poly(k: int) -> ClassPoly:
    return frames_poly(k, k)


def projective_poly(n: int) -> ClassPoly:
    if n < 0:
        return ZERO
    return ClassPoly.from_q([1] * (n + 1))


# stock classes: (class, certificate)

StockClass = Tuple[ClassPoly, mx.MotiveExpr]


def _check_genus(g: int) -> None:
    if g < 2:
        raise ValueError("genus must be at least 2")


def cls_curve(g: int) -> StockClass:
    _check_genus(g)
    return curve(g), mx.C


def cls_lefschetz() -> StockClass:
    return ClassPoly.lefschetz_power(1), mx.L


def cert_lefschetz_power(k: int) -> mx.MotiveExpr:
    return mx.lefschetz_power(k)


def cls_projective(n: int) -> StockClass:
    if n < 0:
        return ZERO, mx.const(0)
    return projective_poly(n), mx.add(*[mx.lefschetz_power(i) for i in range(n + 1)])


def _frames_cert(k: int, w: int) -> mx.MotiveExpr:
    return mx.mul(*[mx.sub(mx.lefschetz_power(w), mx.lefschetz_power(i)) for i in range(k)])


def cls_frames(k: int, w: int) -> StockClass:
    if not 0 <= k <= w:
        raise ValueError(f"need 0 <= k <= w, got k={k}, w={w}")
    return frames_poly(k, w), _frames_cert(k, w)


def cls_gl(k: int) -> StockClass:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return gl_poly(k), _frames_cert(k, k)


def cls_grassmannian(k: int, w: int) -> StockClass:
    if not 0 <= k <= w:
        raise ValueError(f"need 0 <= k <= w, got k={k}, w={w}")
    cert = mx.div(_frames_cert(k, w), _frames_cert(k, k)) if k else mx.const(1)
    return gaussian_binomial(w, k), cert


def jacobian_poly(g: int) -> ClassPoly:
    one_minus_u = ClassPoly({(0, 0): 1, (1, 0): -1})
    one_minus_v = ClassPoly({(0, 0): 1, (0, 1): -1})
    return (one_minus_u ** g) * (one_minus_v ** g)


def cls_jacobian(g: int) -> StockClass:
    _check_genus(g)
    cert = mx.div(mx.lam(2 * g - 1, mx.C), cls_projective(g - 1)[1])
    return jacobian_poly(g), cert


@lru_cache(maxsize=None)
def sym_curve_poly(k: int, g: int) -> ClassPoly:
    if k < 0:
        return ZERO
    return lambda_k(curve(g), k)


def cls_sym_curve(k: int, g: int) -> StockClass:
    _check_genus(g)
    if k < 0:
        return ZERO, mx.const(0)
    return sym_curve_poly(k, g), mx.lam(k, mx.C)

