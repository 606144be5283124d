"""Classes of configuration spaces of distinct points.

Ordered configurations come from Moebius inversion on the lattice of set
partitions.  Unordered configurations with decorations are obtained from the
compactified symmetric products by peeling off collision strata.  A third
route, counting points of twisted forms, sums over the conjugacy classes of
the permuting group and is used to cross-check the other two.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from .classed import ONE_C, ZERO_C, Classed, cprod, csum
from .poly import ClassPoly


@dataclass(frozen=True)
class PartitionLattice:
    """A set partition of {0, ..., size-1} into bricks."""
    size: int
    bricks: FrozenSet[FrozenSet[int]]

    def __post_init__(self):
        seen = [x for b in self.bricks for x in b]
        if sorted(seen) != list(range(self.size)) or any(not b for b in self.bricks):
            raise ValueError("bricks must partition the ground set")

    @classmethod
    def discrete(cls, size: int) -> "PartitionLattice":
        return cls(size, frozenset(frozenset([i]) for i in range(size)))

    @classmethod
    def from_blocks(cls, size: int, blocks) -> "PartitionLattice":
        return cls(size, frozenset(frozenset(b) for b in blocks))

    def __len__(self) -> int:
        return len(self.bricks)

    def refines(self, other: "PartitionLattice") -> bool:
        """self <= other: every brick of self sits inside a brick of other."""
        return all(any(b <= c for c in other.bricks) for b in self.bricks)

    def meet(self, other: "PartitionLattice") -> "PartitionLattice":
        cuts = [b & c for b in self.bricks for c in other.bricks]
        return PartitionLattice(self.size, frozenset(x for x in cuts if x))

    def mobius_from_bottom(self) -> int:
        """mu(discrete, self) = prod over bricks of (-1)^(|B|-1) (|B|-1)!."""
        out = 1
        for b in self.bricks:
            k = len(b)
            out *= (-1) ** (k - 1) * math.factorial(k - 1)
        return out


def set_partitions(size: int) -> Iterator[PartitionLattice]:
    def rec(i: int, blocks: List[List[int]]):
        if i == size:
            yield PartitionLattice.from_blocks(size, blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def ordered_config_class(m: ClassPoly, k: int) -> ClassPoly:
    """Class of ordered k-tuples of pairwise distinct points.

    X^k is the disjoint union over partitions pi of the loci where equal
    coordinates are exactly the bricks of pi, each isomorphic to F(X, |pi|).
    Inverting over the partition lattice gives
    [F(X, k)] = sum_pi mu(0, pi) [X]^|pi|.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    by_len: Dict[int, int] = {}
    for pi in set_partitions(k):
        by_len[len(pi)] = by_len.get(len(pi), 0) + pi.mobius_from_bottom()
    out = ClassPoly()
    for j, c in by_len.items():
        if c:
            out = out + ClassPoly.const(c) * m ** j
    return out


def ordered_config_classed(m: Classed, k: int) -> Classed:
    """Same as :func:`ordered_config_class`, with certificate m(m-1)...(m-k+1)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    poly = ordered_config_class(m.poly, k)
    return Classed(poly, cprod(m - Classed.const(t) for t in range(k)).cert)


# decorated unordered configurations

Species = Tuple[ClassPoly, ClassPoly, int]


def _vector_partitions(total: Tuple[int, ...]) -> List[List[Tuple[int, ...]]]:
    """Multisets of nonzero vectors (as nonincreasing lists) summing to total."""
    vecs = [v for v in product(*(range(c + 1) for c in total)) if any(v)]
    vecs.sort(reverse=True)
    out: List[List[Tuple[int, ...]]] = []

    def rec(rem: Tuple[int, ...], start: int, acc: List[Tuple[int, ...]]):
        if not any(rem):
            out.append(list(acc))
            return
        for i in range(start, len(vecs)):
            v = vecs[i]
            if all(x <= r for x, r in zip(v, rem)):
                acc.append(v)
                rec(tuple(r - x for r, x in zip(rem, v)), i, acc)
                acc.pop()

    rec(total, 0, [])
    return out


def _config_one_base(base: Classed, species: Sequence[Tuple[Classed, int]],
                     check: bool = True) -> Classed:
    """Unordered distinct points of one base, species gamma having count c_gamma
    and fibre decoration D_gamma; points of different species are distinct too.

    Every point of prod_gamma Sym^{c_gamma}(base x D_gamma) has a collision
    pattern: the multiset of vectors m = (m_gamma) recording how many points of
    each species sit over a common base point.  The locus with a given pattern
    is again such a configuration space, whose species are the distinct
    vectors m with decoration prod_gamma Sym^{m_gamma}(D_gamma).
    """
    counts = tuple(c for _, c in species)
    compact = cprod((base * d).lam(c) for d, c in species)
    singles = tuple(tuple(int(i == j) for j in range(len(counts))) for i in range(len(counts)))
    strata = []
    for pattern in _vector_partitions(counts):
        mult: Dict[Tuple[int, ...], int] = {}
        for v in pattern:
            mult[v] = mult.get(v, 0) + 1
        if set(mult) <= set(singles):
            continue
        derived = []
        for v, k in sorted(mult.items(), reverse=True):
            dec = cprod(d.lam(m) for (d, _), m in zip(species, v) if m)
            derived.append((dec, k))
        strata.append(_config_one_base(base, derived, check))
    result = compact - csum(strata)
    if check:
        # telescoping: the strata recombine into the compactified product
        total = result.poly
        for s in strata:
            total = total + s.poly
        assert total == compact.poly, "collision strata do not recombine"
    return result


def decorated_config_quotient_classed(species: Sequence[Tuple[Classed, Classed, int]],
                                      check: bool = True) -> Classed:
    """Species sharing a base class live on one base variety and must be
    pairwise distinct; species on different bases are independent."""
    groups: Dict[ClassPoly, Tuple[Classed, List[Tuple[Classed, int]]]] = {}
    for base, dec, count in species:
        if count < 1:
            raise ValueError("counts must be positive")
        entry = groups.setdefault(base.poly, (base, []))
        entry[1].append((dec, count))
    return cprod(_config_one_base(b, sp, check) for b, sp in groups.values())


def decorated_config_quotient_class(species: Sequence[Species]) -> ClassPoly:
    wrapped = [(Classed.tate(b) if b.is_tate() else Classed(b, _opaque(b)),
                Classed.tate(d) if d.is_tate() else Classed(d, _opaque(d)), c)
               for b, d, c in species]
    return decorated_config_quotient_classed(wrapped).poly


def _opaque(p: ClassPoly):
    # certificate placeholder for raw polynomial input; never serialized
    from . import motive_expr as mx
    return mx.named("raw" + str(abs(hash(p))))


# twisted counts

@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    out, k, m = 1, 2, n
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            out = -out
        k += 1
    return -out if m > 1 else out


def primitive_orbits(y: Classed, length: int) -> Classed:
    """Virtual class of orbits of exact length ``length`` of Frobenius on y:
    (1/length) sum_{e | length} mu(length/e) psi^e(y), times length."""
    terms = []
    for e in range(1, length + 1):
        if length % e == 0 and mobius(length // e):
            t = y.psi(e)
            terms.append(t if mobius(length // e) == 1 else ZERO_C - t)
    return csum(terms)


def twisted_distinct_count(y: Classed, cycle_lengths: Sequence[int]) -> Classed:
    """Fixed points of a permutation with the given cycle lengths acting on
    ordered tuples of distinct points of y composed with Frobenius.

    Each cycle of length l picks a point of degree exactly l (l choices per
    orbit) and different cycles pick different orbits.
    """
    by_len: Dict[int, int] = {}
    for ell in cycle_lengths:
        by_len[ell] = by_len.get(ell, 0) + 1
    factors = []
    for ell, c in sorted(by_len.items()):
        prim = primitive_orbits(y, ell)
        factors.extend(prim - Classed.const(ell * t) for t in range(c))
    return cprod(factors)


def integer_partitions(n: int, largest: int | None = None) -> Iterator[Tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest


def centralizer_order(parts: Sequence[int]) -> int:
    out = 1
    for k in set(parts):
        c = parts.count(k)
        out *= k ** c * math.factorial(c)
    return out


def unordered_config_by_cycle_index(y: Classed, k: int) -> Classed:
    """[F(y, k) / S_k] by averaging twisted counts over conjugacy classes."""
    total = csum(Classed.const(math.factorial(k) // centralizer_order(lam))
                 * twisted_distinct_count(y, lam) for lam in integer_partitions(k))
    return total.div_exact(Classed.const(math.factorial(k)))


__all__ = [
    "PartitionLattice", "set_partitions", "ordered_config_class", "ordered_config_classed",
    "decorated_config_quotient_class", "decorated_config_quotient_classed",
    "mobius", "primitive_orbits", "twisted_distinct_count", "integer_partitions",
    "centralizer_order", "unordered_config_by_cycle_index", "ONE_C",
]
