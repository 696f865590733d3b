"""
Surface syntax for paths.

    path := term { "*" term }
    term := atom [ "^-1" ]
    atom := "0" | "i(" ID ")" | "d(" ID "," ID ")" | "u(" ID "," ID ")"
          | "[" ID "^" ID ID "]" | "(" path ")"

`d(b,a)` is the descending step from a to b (b <= a), `u(b,a)` the ascending step
from a to b (b >= a). As in the written notation, `p * q` applies q first.
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from src.algebra.paths import (
    ZERO,
    Path,
    compose_all,
    from_simplices,
    inverse,
    simplex,
    step,
    trivial,
)
from src.algebra.poset import Poset
from src.errors import NotComparable, PathSyntaxError

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s+|(\^-1)|([\^*()\[\],])|([A-Za-z0-9_]+)")


@dataclass(frozen=True)
class ZeroAtom:
    pass


@dataclass(frozen=True)
class TrivialAtom:
    a: str


@dataclass(frozen=True)
class DownAtom:
    b: str
    a: str


@dataclass(frozen=True)
class UpAtom:
    b: str
    a: str


@dataclass(frozen=True)
class SimplexAtom:
    a: str
    x: str
    b: str


@dataclass(frozen=True)
class Inverse:
    body: 'Node'


@dataclass(frozen=True)
class Product:
    factors: Tuple['Node', ...]


Node = Union[ZeroAtom, TrivialAtom, DownAtom, UpAtom, SimplexAtom, Inverse, Product]


def tokenize(source: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(source):
        match = _TOKEN.match(source, pos)
        if match is None:
            raise PathSyntaxError(pos, f"unexpected character {source[pos]!r}")
        if match.group(1):
            tokens.append(('INV', match.group(1), pos))
        elif match.group(2):
            tokens.append((match.group(2), match.group(2), pos))
        elif match.group(3):
            tokens.append(('ID', match.group(3), pos))
        pos = match.end()
    tokens.append(('EOF', '', len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> str:
        tok_kind, value, pos = self.peek()
        if tok_kind != kind:
            expected = 'identifier' if kind == 'ID' else repr(kind)
            found = 'end of input' if tok_kind == 'EOF' else repr(value)
            raise PathSyntaxError(pos, f"expected {expected}, found {found}")
        self.i += 1
        return value

    def path(self) -> Node:
        factors = [self.term()]
        while self.peek()[0] == '*':
            self.take('*')
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def term(self) -> Node:
        node = self.atom()
        if self.peek()[0] == 'INV':
            self.take('INV')
            node = Inverse(node)
        return node

    def atom(self) -> Node:
        kind, value, pos = self.peek()
        if kind == '(':
            self.take('(')
            node = self.path()
            self.take(')')
            return node
        if kind == '[':
            self.take('[')
            a = self.take('ID')
            self.take('^')
            x = self.take('ID')
            b = self.take('ID')
            self.take(']')
            return SimplexAtom(a, x, b)
        if kind == 'ID' and value == '0':
            self.take('ID')
            return ZeroAtom()
        if kind == 'ID' and value in ('i', 'd', 'u'):
            self.take('ID')
            self.take('(')
            first = self.take('ID')
            if value == 'i':
                self.take(')')
                return TrivialAtom(first)
            self.take(',')
            second = self.take('ID')
            self.take(')')
            return DownAtom(first, second) if value == 'd' else UpAtom(first, second)
        found = 'end of input' if kind == 'EOF' else repr(value)
        raise PathSyntaxError(pos, f"expected a path atom, found {found}")


def parse_expression(source: str) -> Node:
    parser = _Parser(source)
    node = parser.path()
    kind, value, pos = parser.peek()
    if kind != 'EOF':
        raise PathSyntaxError(pos, f"unexpected {value!r} after complete expression")
    return node


def elaborate(P: Poset, node: Node) -> Path:
    if isinstance(node, ZeroAtom):
        return ZERO
    if isinstance(node, TrivialAtom):
        return trivial(P, node.a)
    if isinstance(node, DownAtom):
        P.check(node.b, node.a)
        if not P.le(node.b, node.a):
            raise NotComparable(node.b, node.a, "d(b,a) needs b <= a")
        return step(P, node.a, node.b)
    if isinstance(node, UpAtom):
        P.check(node.b, node.a)
        if not P.le(node.a, node.b):
            raise NotComparable(node.b, node.a, "u(b,a) needs b >= a")
        return step(P, node.a, node.b)
    if isinstance(node, SimplexAtom):
        return from_simplices(P, [simplex(P, node.a, node.x, node.b)])
    if isinstance(node, Inverse):
        return inverse(elaborate(P, node.body))
    return compose_all(P, *(elaborate(P, f) for f in node.factors))


def parse_path(source: str, P: Poset) -> Path:
    path = elaborate(P, parse_expression(source))
    logger.debug(f"Parsed {source!r} as {path}")
    return path
