"""Exact bivariate integer polynomials in (u, v).

A :class:`ClassPoly` is the E-polynomial realization of a class in the
Grothendieck ring: the Lefschetz class is the monomial ``uv`` and the class
of a curve of genus g is ``1 - g(u + v) + uv``.  Values are immutable and
all coefficients are Python integers, so arithmetic is exact at any size.
"""
from __future__ import annotations

import json
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

Exponent = Tuple[int, int]


class NonExactDivision(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


class ClassPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean: Dict[Exponent, int] = {}
        if terms:
            for (p, q), c in terms.items():
                if p < 0 or q < 0:
                    raise ValueError(f"negative exponent {(p, q)}")
                if c:
                    clean[(int(p), int(q))] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, int]) -> "ClassPoly":
        # trusted constructor: caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def const(cls, c: int) -> "ClassPoly":
        return cls._raw({(0, 0): int(c)} if c else {})

    @classmethod
    def monomial(cls, p: int, q: int, c: int = 1) -> "ClassPoly":
        return cls({(p, q): c})

    @classmethod
    def lefschetz_power(cls, k: int) -> "ClassPoly":
        return cls._raw({(k, k): 1})

    @classmethod
    def from_q(cls, coeffs: Iterable[int]) -> "ClassPoly":
        """Polynomial in q = uv from a coefficient list (constant term first)."""
        return cls({(i, i): c for i, c in enumerate(coeffs)})

    # accessors

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(self._terms.items())

    def coeff(self, p: int, q: int) -> int:
        return self._terms.get((p, q), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        """Largest p + q among the terms; -1 for the zero polynomial."""
        return max((p + q for p, q in self._terms), default=-1)

    def q_degree(self) -> int:
        """Largest k with a nonzero (uv)^k term; -1 if there is none."""
        return max((p for p, q in self._terms if p == q), default=-1)

    def is_tate(self) -> bool:
        """True when every term is a power of uv."""
        return all(p == q for p, q in self._terms)

    def q_coeffs(self) -> List[int]:
        if not self.is_tate():
            raise ValueError("not a polynomial in uv")
        out = [0] * (self.q_degree() + 1)
        for (p, _), c in self._terms.items():
            out[p] = c
        return out

    # ring operations

    def __add__(self, other) -> "ClassPoly":
        other = _coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ClassPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ClassPoly":
        return ClassPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "ClassPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "ClassPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "ClassPoly":
        other = _coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((bp, bq), bc), = b.items()
            return ClassPoly._raw({(p + bp, q + bq): c * bc for (p, q), c in a.items()})
        out: Dict[Exponent, int] = {}
        get = out.get
        for (p1, q1), c1 in b.items():
            for (p2, q2), c2 in a.items():
                k = (p1 + p2, q1 + q2)
                out[k] = get(k, 0) + c1 * c2
        return ClassPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ClassPoly":
        if k < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def div_exact(self, other: "ClassPoly") -> "ClassPoly":
        return div_exact(self, other)

    def __floordiv__(self, other) -> "ClassPoly":
        return div_exact(self, _coerce(other))

    # comparisons

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ClassPoly.const(other)
        if not isinstance(other, ClassPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # specializations

    def substitute_powers(self, k: int) -> "ClassPoly":
        """Adams-type substitution u -> u^k, v -> v^k."""
        if k == 1:
            return self
        return ClassPoly._raw({(k * p, k * q): c for (p, q), c in self._terms.items()})

    def poincare(self) -> List[int]:
        """Coefficients of E(-t, -t), constant term first."""
        return poincare(self)

    def euler(self) -> int:
        return euler(self)

    # text

    def __repr__(self) -> str:
        return f"ClassPoly({self.to_str()})"

    def to_str(self, var_u: str = "u", var_v: str = "v") -> str:
        if not self._terms:
            return "0"
        parts = []
        for (p, q), c in sorted(self._terms.items(), key=lambda t: (t[0][0] + t[0][1], t[0])):
            mono = _mono_str(((var_u, p), (var_v, q)))
            parts.append(_term_str(c, mono))
        return _join_terms(parts)

    def to_q_str(self) -> str:
        if not self._terms:
            return "0"
        parts = [_term_str(c, _mono_str((("q", k),))) for k, c in enumerate(self.q_coeffs()) if c]
        return _join_terms(parts)

    def to_json_obj(self) -> List[List]:
        return [[p, q, str(c)] for (p, q), c in sorted(self._terms.items())]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, data: Iterable) -> "ClassPoly":
        terms: Dict[Exponent, int] = {}
        for p, q, c in data:
            terms[(int(p), int(q))] = terms.get((int(p), int(q)), 0) + int(c)
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "ClassPoly":
        return cls.from_json_obj(json.loads(text))


def _mono_str(pairs) -> str:
    out = []
    for var, e in pairs:
        if e == 1:
            out.append(var)
        elif e > 1:
            out.append(f"{var}^{e}")
    return "*".join(out)


def _term_str(c: int, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _join_terms(parts: List[str]) -> str:
    s = parts[0]
    for t in parts[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


def _coerce(x) -> ClassPoly:
    if isinstance(x, ClassPoly):
        return x
    if isinstance(x, int):
        return ClassPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as ClassPoly")


ZERO = ClassPoly._raw({})
ONE = ClassPoly._raw({(0, 0): 1})
L = ClassPoly._raw({(1, 1): 1})


def add(a: ClassPoly, b: ClassPoly) -> ClassPoly:
    return a + b


def mul(a: ClassPoly, b: ClassPoly) -> ClassPoly:
    return a * b


def neg(a: ClassPoly) -> ClassPoly:
    return -a


def _lead(terms: Mapping[Exponent, int]) -> Exponent:
    return max(terms)


def div_exact(a: ClassPoly, b: ClassPoly) -> ClassPoly:
    """Return ``a / b``, raising :class:`NonExactDivision` on any remainder.

    Plain multivariate long division in lex order on (p, q); when ``b``
    divides ``a`` the leading term of the running remainder is always
    divisible by the leading term of ``b``.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero class")
    bt = b._terms
    (lp, lq) = _lead(bt)
    lc = bt[(lp, lq)]
    if len(bt) == 1:
        out = {}
        for (p, q), c in a._terms.items():
            if p < lp or q < lq or c % lc:
                raise NonExactDivision(f"{a.to_str()} is not divisible by {b.to_str()}")
            out[(p - lp, q - lq)] = c // lc
        return ClassPoly._raw(out)
    rem = dict(a._terms)
    quot: Dict[Exponent, int] = {}
    rest = [(k, c) for k, c in bt.items() if k != (lp, lq)]
    while rem:
        (p, q) = _lead(rem)
        c = rem.pop((p, q))
        if p < lp or q < lq or c % lc:
            raise NonExactDivision(f"{a.to_str()} is not divisible by {b.to_str()}")
        mp, mq, mc = p - lp, q - lq, c // lc
        quot[(mp, mq)] = mc
        for (bp, bq), bc in rest:
            k = (bp + mp, bq + mq)
            s = rem.get(k, 0) - bc * mc
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return ClassPoly._raw(quot)


def poincare(a: ClassPoly) -> List[int]:
    """Substitute u = v = -t; returns the coefficient list in t."""
    deg = a.total_degree()
    out = [0] * (deg + 1)
    for (p, q), c in a.items():
        k = p + q
        out[k] += c if k % 2 == 0 else -c
    while out and out[-1] == 0:
        out.pop()
    return out


def euler(a: ClassPoly) -> int:
    return sum(c for _, c in a.items())


def curve(g: int) -> ClassPoly:
    return ClassPoly({(0, 0): 1, (1, 0): -g, (0, 1): -g, (1, 1): 1})


def q_poly(coeffs: Iterable[int]) -> ClassPoly:
    return ClassPoly.from_q(coeffs)
