"""Certificate expressions built from the curve class and the Lefschetz class.

A :class:`MotiveExpr` is a small expression tree whose leaves are ``C``,
``L`` and integer constants, closed under ``+``, ``-``, ``*``, exact
division and lambda operations.  ``named`` nodes point at other
certificates held in a cache so that large moduli computations are shared.

Text form is a prefix S-expression::

    (/ (lam 3 C) (+ 1 L))
    (* (named N:g2:n2:d5:c0) (lam 2 L))
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

from .lambda_ops import lambda_k
from .poly import ClassPoly, L as L_POLY, curve, div_exact

GEN_C = "C"
GEN_L = "L"
CONST = "const"
ADD = "+"
SUB = "-"
MUL = "*"
DIV = "/"
LAMBDA = "lam"
NAMED = "named"

ADMISSIBLE = frozenset({GEN_C, GEN_L, CONST, ADD, SUB, MUL, DIV, LAMBDA, NAMED})


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnresolvedName(KeyError):
    pass


@dataclass(frozen=True)
class MotiveExpr:
    kind: str
    children: Tuple["MotiveExpr", ...] = ()
    value: Union[int, str, None] = None

    def __post_init__(self):
        if self.kind not in ADMISSIBLE:
            raise ValueError(f"unknown node kind {self.kind!r}")
        if self.kind == LAMBDA and (not isinstance(self.value, int) or self.value < 0):
            raise ValueError("lambda index must be a nonnegative integer")

    def __str__(self) -> str:
        return serialize(self)

    # operator sugar for building certificates
    def __add__(self, other: "MotiveExpr") -> "MotiveExpr":
        return add(self, other)

    def __sub__(self, other: "MotiveExpr") -> "MotiveExpr":
        return sub(self, other)

    def __mul__(self, other: "MotiveExpr") -> "MotiveExpr":
        return mul(self, other)

    def __truediv__(self, other: "MotiveExpr") -> "MotiveExpr":
        return div(self, other)

    def walk(self) -> Iterator["MotiveExpr"]:
        seen = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            yield node
            stack.extend(node.children)

    def names(self) -> List[str]:
        return sorted({n.value for n in self.walk() if n.kind == NAMED})


C = MotiveExpr(GEN_C)
L = MotiveExpr(GEN_L)


def const(n: int) -> MotiveExpr:
    return MotiveExpr(CONST, (), int(n))


def _is_const(e: MotiveExpr, n: int) -> bool:
    return e.kind == CONST and e.value == n


def add(*terms: MotiveExpr) -> MotiveExpr:
    flat = []
    for t in terms:
        if t.kind == ADD:
            flat.extend(t.children)
        elif not _is_const(t, 0):
            flat.append(t)
    if not flat:
        return const(0)
    if len(flat) == 1:
        return flat[0]
    return MotiveExpr(ADD, tuple(flat))


def sub(a: MotiveExpr, b: MotiveExpr) -> MotiveExpr:
    if _is_const(b, 0):
        return a
    return MotiveExpr(SUB, (a, b))


def mul(*factors: MotiveExpr) -> MotiveExpr:
    flat = []
    for f in factors:
        if _is_const(f, 0):
            return const(0)
        if f.kind == MUL:
            flat.extend(f.children)
        elif not _is_const(f, 1):
            flat.append(f)
    if not flat:
        return const(1)
    if len(flat) == 1:
        return flat[0]
    return MotiveExpr(MUL, tuple(flat))


def div(a: MotiveExpr, b: MotiveExpr) -> MotiveExpr:
    if _is_const(b, 1):
        return a
    return MotiveExpr(DIV, (a, b))


def lam(k: int, a: MotiveExpr) -> MotiveExpr:
    if k == 0:
        return const(1)
    if k == 1:
        return a
    return MotiveExpr(LAMBDA, (a,), k)


def named(key: str) -> MotiveExpr:
    if not key or any(ch.isspace() or ch in "()" for ch in key):
        raise ValueError(f"invalid name {key!r}")
    return MotiveExpr(NAMED, (), key)


def lefschetz_power(k: int) -> MotiveExpr:
    # lambda^k(L) = L^k keeps large powers compact
    return lam(k, L)


def q_polynomial(coeffs) -> MotiveExpr:
    """sum_i c_i L^i as a certificate."""
    terms = []
    for i, c in enumerate(coeffs):
        if c:
            terms.append(mul(const(c), lefschetz_power(i)))
    return add(*terms)


# evaluation

Resolver = Callable[[str], MotiveExpr]


def evaluate(e: MotiveExpr, g: int, resolve: Optional[Resolver] = None,
             memo: Optional[Dict[str, ClassPoly]] = None) -> ClassPoly:
    """Evaluate a certificate to its E-polynomial for a curve of genus g.

    ``named`` nodes are looked up with ``resolve`` (which returns the
    referenced certificate) and evaluated recursively, memoized per name.
    """
    if g < 2:
        raise ValueError("genus must be at least 2")
    memo = {} if memo is None else memo
    node_memo: Dict[int, ClassPoly] = {}
    c_poly = curve(g)

    def ev(node: MotiveExpr) -> ClassPoly:
        hit = node_memo.get(id(node))
        if hit is not None:
            return hit
        k = node.kind
        if k == GEN_C:
            out = c_poly
        elif k == GEN_L:
            out = L_POLY
        elif k == CONST:
            out = ClassPoly.const(node.value)
        elif k == ADD:
            out = ClassPoly()
            for ch in node.children:
                out = out + ev(ch)
        elif k == SUB:
            out = ev(node.children[0]) - ev(node.children[1])
        elif k == MUL:
            out = ev(node.children[0])
            for ch in node.children[1:]:
                out = out * ev(ch)
        elif k == DIV:
            out = div_exact(ev(node.children[0]), ev(node.children[1]))
        elif k == LAMBDA:
            out = lambda_k(ev(node.children[0]), node.value)
        else:
            key = node.value
            if key in memo:
                out = memo[key]
            else:
                if resolve is None:
                    raise UnresolvedName(key)
                try:
                    target = resolve(key)
                except KeyError:
                    raise UnresolvedName(key) from None
                out = evaluate(target, g, resolve, memo)
                memo[key] = out
        node_memo[id(node)] = out
        return out

    return ev(e)


def is_admissible(e: MotiveExpr) -> bool:
    return all(n.kind in ADMISSIBLE and (n.kind != LAMBDA or n.value >= 0) for n in e.walk())


# text form

def serialize(e: MotiveExpr) -> str:
    out: List[str] = []

    def emit(node: MotiveExpr) -> None:
        k = node.kind
        if k in (GEN_C, GEN_L):
            out.append(k)
        elif k == CONST:
            out.append(str(node.value))
        elif k == LAMBDA:
            out.append(f"(lam {node.value} ")
            emit(node.children[0])
            out.append(")")
        elif k == NAMED:
            out.append(f"(named {node.value})")
        else:
            out.append("(" + k)
            for ch in node.children:
                out.append(" ")
                emit(ch)
            out.append(")")

    emit(e)
    return "".join(out)


def _tokenize(text: str) -> List[Tuple[str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append((ch, i))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], i))
            i = j
    return tokens


def _int_token(tok: str) -> Optional[int]:
    body = tok[1:] if tok.startswith("-") and len(tok) > 1 else tok
    return int(tok) if body.isdigit() else None


def parse(text: str) -> MotiveExpr:
    tokens = _tokenize(text)
    pos = 0

    def peek() -> Tuple[str, int]:
        if pos >= len(tokens):
            raise ParseError("unexpected end of input", len(text))
        return tokens[pos]

    def take() -> Tuple[str, int]:
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expect_close() -> None:
        tok, at = take()
        if tok != ")":
            raise ParseError(f"expected ')' but found {tok!r}", at)

    def node() -> MotiveExpr:
        tok, at = take()
        if tok == "C":
            return C
        if tok == "L":
            return L
        if tok == ")":
            raise ParseError("unexpected ')'", at)
        if tok != "(":
            val = _int_token(tok)
            if val is None:
                raise ParseError(f"unknown atom {tok!r}", at)
            return const(val)
        head, hat = take()
        if head == "lam":
            ktok, kat = take()
            k = _int_token(ktok)
            if k is None or k < 0:
                raise ParseError(f"lambda index must be a nonnegative integer, got {ktok!r}", kat)
            arg = node()
            expect_close()
            return MotiveExpr(LAMBDA, (arg,), k)
        if head == "named":
            key, kat = take()
            if key in "()":
                raise ParseError("missing name", kat)
            expect_close()
            return MotiveExpr(NAMED, (), key)
        if head in (ADD, MUL):
            args = []
            while peek()[0] != ")":
                args.append(node())
            take()
            if len(args) < 2:
                raise ParseError(f"'{head}' needs at least two arguments", hat)
            return MotiveExpr(head, tuple(args))
        if head in (SUB, DIV):
            a = node()
            b = node()
            expect_close()
            return MotiveExpr(head, (a, b))
        raise ParseError(f"unknown operator {head!r}", hat)

    result = node()
    if pos != len(tokens):
        raise ParseError("trailing input", tokens[pos][1])
    return result
