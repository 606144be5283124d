"""Flip-locus strata at a critical value.

A stratum type records how a triple on one side of a wall is assembled by
iterated extensions of a residual triple T' by polystable pieces
S(a_j) = sum_i S_i^{a_ij}, all pieces having the critical slope.  The class
of a stratum is

    [N'] * (1/|Sym|) * sum_{perm} [distinct pieces]_perm * prod_steps [fibre]_perm

where the sum runs over the permutations of identical pieces and the
subscript means the count of the twisted form.  With no symmetry this is the
product of the configuration class, the residual class and the fibre
polynomials; for one extension step with symmetry the quotient is computed
from decorated symmetric products instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Protocol, Sequence, Tuple

from . import domain as dm
from .classed import ONE_C, ZERO_C, Classed, cprod, csum
from .configurations import (centralizer_order, decorated_config_quotient_classed,
                             integer_partitions, ordered_config_classed,
                             twisted_distinct_count)
from .domain import PairProblem, TripleShape
from .poly import ONE, ZERO, ClassPoly, div_exact

PLUS = "plus"
MINUS = "minus"


class UnsupportedShape(ValueError):
    pass


@dataclass(frozen=True)
class StratumType:
    side: str
    sigma: Fraction
    d0: int
    pieces: Tuple[Tuple[int, int], ...]
    a: Tuple[Tuple[int, ...], ...]
    n_prime: int
    d_prime: int

    @property
    def r(self) -> int:
        return len(self.a[0])

    @property
    def b(self) -> int:
        return len(self.pieces)

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.a)

    def outward_columns(self) -> List[Tuple[int, ...]]:
        """Columns in the order they are attached to T'."""
        cols = [self.column(j) for j in range(self.r)]
        return cols[::-1] if self.side == PLUS else cols

    def blocks(self) -> List[List[int]]:
        """Index sets of identical pieces (same rank, degree and row)."""
        out: List[List[int]] = []
        for i, key in enumerate(zip(self.pieces, self.a)):
            if out and (self.pieces[out[-1][0]], self.a[out[-1][0]]) == key:
                out[-1].append(i)
            else:
                out.append([i])
        return out

    def rank_used(self) -> int:
        return sum(n * sum(row) for (n, _), row in zip(self.pieces, self.a))

    def to_json_obj(self) -> dict:
        return {
            "side": self.side,
            "sigma": str(self.sigma),
            "r": self.r,
            "pieces": [list(pc) for pc in self.pieces],
            "a": [list(row) for row in self.a],
            "n_prime": self.n_prime,
            "d_prime": self.d_prime,
            "group_order": sym_group_order(self),
        }


def sym_group_order(t: StratumType) -> int:
    return math.prod(math.factorial(len(b)) for b in t.blocks())


# enumeration

def _atoms(mu: Fraction, mass: int, r: int) -> List[Tuple[int, Tuple[int, ...]]]:
    out = []
    for ni in range(1, mass + 1):
        if (mu * ni).denominator != 1:
            continue
        for row in product(range(mass // ni + 1), repeat=r):
            s = sum(row)
            if s and ni * s <= mass:
                out.append((ni, row))
    return sorted(out)


def _multisets(atoms, mass: int):
    def rec(start: int, rem: int, acc):
        if rem == 0:
            yield list(acc)
            return
        for i in range(start, len(atoms)):
            ni, row = atoms[i]
            w = ni * sum(row)
            if w <= rem:
                acc.append(atoms[i])
                yield from rec(i, rem - w, acc)
                acc.pop()

    yield from rec(0, mass, [])


def enumerate_types(p: PairProblem, sigma, side: str) -> List[StratumType]:
    """All stratum types of the flip locus on ``side`` of ``sigma``.

    ``sigma`` must be a wall of p or one of the endpoints of its range.
    """
    sigma = Fraction(sigma)
    if side not in (PLUS, MINUS):
        raise ValueError(f"side must be {PLUS!r} or {MINUS!r}")
    lo, hi = dm.sigma_range(p)
    if not (sigma == lo or sigma == hi or dm.is_wall(p, sigma)):
        raise ValueError(f"sigma={sigma} is neither a wall nor an endpoint")
    if (sigma == lo and side == MINUS) or (sigma == hi and side == PLUS):
        return []
    mu = p.mu_c(sigma)
    n_primes = [0] if sigma == lo else range(1, p.n)
    out = []
    for n_prime in n_primes:
        mass = p.n - n_prime
        for r in range(1, mass + 1):
            for combo in _multisets(_atoms(mu, mass, r), mass):
                rows = [row for _, row in combo]
                if any(all(row[j] == 0 for row in rows) for j in range(r)):
                    continue
                pieces = tuple((ni, int(mu * ni)) for ni, _ in combo)
                d_used = sum(di * sum(row) for (_, di), row in zip(pieces, rows))
                out.append(StratumType(side, sigma, p.d0, pieces, tuple(rows),
                                       n_prime, p.d - d_used))
    return out


# fibre counts

@dataclass(frozen=True)
class Step:
    column: Tuple[int, ...]
    previous: Optional[Tuple[int, ...]]
    ext_dims: Tuple[int, ...]      # dim Ext^1 between the triple built so far and S_i
    kernel_dims: Tuple[int, ...]   # part of ext_dims not coming from the previous layer
    cross: Tuple[Tuple[int, ...], ...]  # cross[k][i] = dim Ext^1 between S_k and S_i


def base_ext_dims(t: StratumType, g: int) -> Tuple[int, ...]:
    tp = TripleShape(t.n_prime, t.d_prime, 1, t.d0)
    out = []
    for ni, di in t.pieces:
        s = TripleShape(ni, di)
        out.append(dm.ext1_dim(tp, s, g) if t.side == PLUS else dm.ext1_dim(s, tp, g))
    return tuple(out)


def steps(t: StratumType, g: int) -> List[Step]:
    base = base_ext_dims(t, g)
    b = t.b
    same = [[t.pieces[k][0] * t.pieces[i][0] * (g - 1) for i in range(b)] for k in range(b)]
    cross = tuple(tuple(same[k][i] + (k == i) for i in range(b)) for k in range(b))
    out = []
    level = list(base)           # Ext^1 with the triple built so far
    before_prev = list(base)     # the same one step earlier
    prev = None
    for col in t.outward_columns():
        if prev is None:
            kernel = tuple(level)
        else:
            kernel = tuple(before_prev[i] - prev[i] for i in range(b))
        out.append(Step(col, prev, tuple(level), kernel, cross))
        before_prev = list(level)
        level = [level[i] + sum(col[k] * same[k][i] for k in range(b)) for i in range(b)]
        prev = col
    return out


def _q_power(k: int) -> ClassPoly:
    return ClassPoly.lefschetz_power(k)


def _moebius_weight(a: int, u: int, ell: int) -> ClassPoly:
    """[a choose u]_{q^l} (-1)^u q^{l u(u-1)/2}."""
    gb = dm.gaussian_binomial(a, u).substitute_powers(ell)
    sign = -1 if u % 2 else 1
    return gb * ClassPoly.monomial(ell * u * (u - 1) // 2, ell * u * (u - 1) // 2, sign)


def step_count(step: Step, cycles: Sequence[Sequence[int]]) -> ClassPoly:
    """Twisted count of the fibre of one extension step, already divided by
    the automorphism groups of the new layer.

    The new layer contributes column[i] vectors in Ext^1 for each piece i.
    They must be independent for each piece, and their images in the
    directions coming from the previous layer must span, for each earlier
    piece k, no proper subspace annihilated by the whole block.  Both
    conditions are imposed by Moebius inversion over subspace lattices.
    """
    col, prev = step.column, step.previous
    new = [c for c in cycles if col[c[0]]]
    old = [c for c in cycles if prev is not None and prev[c[0]]]
    total = ZERO
    ranges = [range(col[c[0]] + 1) for c in new] + [range(prev[c[0]] + 1) for c in old]
    for choice in product(*ranges):
        us, vs = choice[:len(new)], choice[len(new):]
        coef = ONE
        for c, u in zip(new, us):
            coef = coef * _moebius_weight(col[c[0]], u, len(c))
        for c, v in zip(old, vs):
            coef = coef * _moebius_weight(prev[c[0]], v, len(c))
        D = 0
        for c, u in zip(new, us):
            free = col[c[0]] - u
            if not free:
                continue
            for i in c:
                D += free * step.kernel_dims[i]
                for c2, v in zip(old, vs):
                    D += free * (prev[c2[0]] - v) * sum(step.cross[k][i] for k in c2)
        if D < 0:
            raise dm.NegativeExtDim(f"fibre dimension {D} in {step}")
        total = total + coef * _q_power(D)
    gl = ONE
    for c in new:
        gl = gl * dm.gl_poly(col[c[0]]).substitute_powers(len(c))
    return div_exact(total, gl)


# the class provider used by stratum_class

class ClassProvider(Protocol):
    g: int

    def bundle(self, n: int, d: int) -> Classed:
        """[M^s(n, d)] for the stable bundles of rank n and degree d."""

    def residual(self, n: int, d: int, d0: int, sigma: Fraction) -> Tuple[Classed, bool]:
        """Class of N^s_sigma(n, 1, d, d0) and whether it was pruned as empty."""


@dataclass
class StratumResult:
    type: StratumType
    value: Classed
    route: str
    emptiness_assumed: bool = False

    def to_json_obj(self) -> dict:
        out = self.type.to_json_obj()
        out.update({"class": self.value.poly.to_json_obj(), "route": self.route,
                    "emptiness_assumed": self.emptiness_assumed})
        return out


def _representative_cycles(blocks: Sequence[Sequence[int]], parts: Sequence[Tuple[int, ...]]):
    cycles = []
    for blk, lam in zip(blocks, parts):
        pos = 0
        for ell in lam:
            cycles.append(tuple(blk[pos:pos + ell]))
            pos += ell
    return cycles


def _groups_by_bundle(t: StratumType) -> Dict[Tuple[int, int], List[int]]:
    out: Dict[Tuple[int, int], List[int]] = {}
    for i, pc in enumerate(t.pieces):
        out.setdefault(pc, []).append(i)
    return out


def _trivial_group(t: StratumType, ctx: ClassProvider, st: List[Step]) -> Classed:
    configs = [ordered_config_classed(ctx.bundle(*pc), len(idx))
               for pc, idx in _groups_by_bundle(t).items()]
    fibres = _fibres(st, [(i,) for i in range(t.b)], grassmannian_first=True)
    if fibres is None:
        return ZERO_C
    return cprod(configs) * cprod(fibres)


def _fibres(st: List[Step], cycles, grassmannian_first: bool = False) -> Optional[List[Classed]]:
    """Fibre classes step by step; None as soon as one of them is empty."""
    out = []
    for k, s in enumerate(st):
        if k == 0 and grassmannian_first:
            if any(s.column[i] > s.ext_dims[i] for i in range(len(s.column))):
                return None
            out.extend(Classed(*dm.cls_grassmannian(s.column[i], s.ext_dims[i]))
                       for i in range(len(s.column)) if s.column[i])
            continue
        c = _step_classed(s, cycles)
        if c.is_zero():
            return None
        out.append(c)
    return out


def _step_classed(s: Step, cycles) -> Classed:
    col = s.column
    num_gl = ONE
    for c in cycles:
        if col[c[0]]:
            num_gl = num_gl * dm.gl_poly(col[c[0]]).substitute_powers(len(c))
    value = step_count(s, cycles)
    return Classed.tate(value * num_gl).div_exact(Classed.tate(num_gl))


def _one_step_symmetric(t: StratumType, ctx: ClassProvider, st: List[Step]) -> Classed:
    species = []
    for blk in t.blocks():
        i = blk[0]
        if t.a[i][0] > st[0].ext_dims[i]:
            return ZERO_C
        dec =Classed(*dm.cls_grassmannian(t.a[i][0], st[0].ext_dims[i]))
        species.append((ctx.bundle(*t.pieces[i]), dec, len(blk)))
    return decorated_config_quotient_classed(species)


def cycle_index_quotient(t: StratumType, ctx: ClassProvider, st: List[Step]) -> Classed:
    """Average of twisted counts over the conjugacy classes of the symmetry group."""
    blocks = t.blocks()
    groups = _groups_by_bundle(t)
    order = sym_group_order(t)
    terms = []
    for parts in product(*(list(integer_partitions(len(b))) for b in blocks)):
        size = math.prod(math.factorial(len(b)) // centralizer_order(lam)
                         for b, lam in zip(blocks, parts))
        cycles = _representative_cycles(blocks, parts)
        config = []
        for pc, idx in groups.items():
            lengths = [len(c) for c in cycles if c[0] in idx]
            config.append(twisted_distinct_count(ctx.bundle(*pc), lengths))
        fibres = _fibres(st, cycles)
        if fibres is None:
            continue
        terms.append(Classed.const(size) * cprod(config) * cprod(fibres))
    return csum(terms).div_exact(Classed.const(order))


def stratum_class(t: StratumType, ctx: ClassProvider, route: Optional[str] = None) -> StratumResult:
    """Class of the stratum X(t) on its side of the wall.

    ``route`` forces "product", "decorated" or "cycle-index"; by default the
    product formula is used without symmetry, decorated configurations for a
    single step with symmetry, and the cycle index otherwise.
    """
    if t.rank_used() + t.n_prime < 1 or any(n < 1 for n, _ in t.pieces):
        raise UnsupportedShape(f"malformed stratum type {t}")
    residual, pruned = ctx.residual(t.n_prime, t.d_prime, t.d0, t.sigma)
    order = sym_group_order(t)
    if route is None:
        route = "product" if order == 1 else ("decorated" if t.r == 1 else "cycle-index")
    if residual.is_zero():
        return StratumResult(t, ZERO_C, route, pruned)
    st = steps(t, ctx.g)
    if route == "product":
        if order != 1:
            raise UnsupportedShape("product route needs a trivial symmetry group")
        quotient = _trivial_group(t, ctx, st)
    elif route == "decorated":
        if t.r != 1:
            raise UnsupportedShape("decorated route handles one extension step")
        quotient = _one_step_symmetric(t, ctx, st)
    elif route == "cycle-index":
        quotient = cycle_index_quotient(t, ctx, st)
    else:
        raise ValueError(f"unknown route {route!r}")
    return StratumResult(t, residual * quotient, route, pruned)


def strata_sum(p: PairProblem, sigma, side: str, ctx: ClassProvider) -> Tuple[Classed, List[StratumResult]]:
    results = [stratum_class(t, ctx) for t in enumerate_types(p, sigma, side)]
    return csum(r.value for r in results), results


def stratum_dim(t: StratumType, value: Classed) -> int:
    return value.poly.q_degree()


__all__ = [
    "PLUS", "MINUS", "StratumType", "UnsupportedShape", "sym_group_order", "enumerate_types",
    "Step", "steps", "step_count", "stratum_class", "strata_sum", "StratumResult",
    "cycle_index_quotient", "ClassProvider", "ONE_C",
]
