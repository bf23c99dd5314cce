"""Text grammar for words and automorphism specifications.

Words::

    word := term+
    term := atom ('^' int)?
    atom := 'x' posint | '[' word ',' word ']' | '(' word ')' | '1'

``[a, b]`` expands to ``a b a^-1 b^-1``.  Automorphism specifications are one of

    K i j                      conjugation x_i -> x_j^-1 x_i x_j
    K i j l                    x_i -> x_i [x_j, x_l]
    inner <word>               x -> w x w^-1
    sigma m j s                x_j -> x_j [[x1, x_s], [x1^m, x_s]]
    map x1 -> <word>; ... ; inv x1 -> <word>; ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Union

from .errors import GeneratorIndexError, ParseError
from .free_group import (
    Automorphism,
    Word,
    inner,
    magnus_commutator,
    magnus_conjugation,
    sigma_automorphism,
)

_TOKEN = re.compile(r"\s*(?:(x\d+)|(-?\d+)|([\[\](),^]))")


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Concat:
    parts: tuple


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class One:
    pass


Expr = Union[Gen, Power, Concat, Bracket, One]


def _tokenize(text: str) -> List[tuple]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("gen", int(m.group(1)[1:]), start))
        elif m.group(2):
            tokens.append(("int", int(m.group(2)), start))
        else:
            tokens.append((m.group(3), None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def word(self) -> Expr:
        parts = []
        while self.peek()[0] in ("gen", "[", "(", "int"):
            parts.append(self.term())
        if not parts:
            tok = self.peek()
            raise ParseError(f"expected a word, found {tok[0]!r}", tok[2])
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def term(self) -> Expr:
        node = self.atom()
        if self.peek()[0] == "^":
            self.i += 1
            node = Power(node, self.take("int")[1])
        return node

    def atom(self) -> Expr:
        kind, value, pos = self.peek()
        if kind == "gen":
            self.i += 1
            if value < 1:
                raise ParseError("generator indices start at 1", pos)
            return Gen(value)
        if kind == "int":
            if value != 1:
                raise ParseError(f"bare integer {value} is not a word", pos)
            self.i += 1
            return One()
        if kind == "[":
            self.i += 1
            left = self.word()
            self.take(",")
            right = self.word()
            self.take("]")
            return Bracket(left, right)
        if kind == "(":
            self.i += 1
            inside = self.word()
            self.take(")")
            return inside
        raise ParseError(f"unexpected token {kind!r}", pos)


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.word()
    kind, _, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input starting with {kind!r}", pos)
    return node


def elaborate(node: Expr, rank: int) -> Word:
    if isinstance(node, Gen):
        if node.index > rank:
            raise GeneratorIndexError(f"generator x{node.index} outside 1..{rank}")
        return Word.generator(rank, node.index)
    if isinstance(node, One):
        return Word.identity(rank)
    if isinstance(node, Power):
        return elaborate(node.base, rank) ** node.exponent
    if isinstance(node, Bracket):
        return elaborate(node.left, rank).commutator(elaborate(node.right, rank))
    result = Word.identity(rank)
    for part in node.parts:
        result = result * elaborate(part, rank)
    return result


def parse_word(text: str, rank: int) -> Word:
    return elaborate(parse_expr(text), rank)


_MAP_ENTRY = re.compile(r"^\s*x(\d+)\s*->\s*(.+?)\s*$")


def parse_automorphism(text: str, rank: int) -> Automorphism:
    text = text.strip()
    head, _, rest = text.partition(" ")
    if head == "K":
        try:
            idx = [int(t) for t in rest.split()]
        except ValueError:
            raise ParseError("K expects integer indices", 2) from None
        if len(idx) == 2:
            return magnus_conjugation(rank, *idx)
        if len(idx) == 3:
            return magnus_commutator(rank, *idx)
        raise ParseError("K expects two or three indices", 2)
    if head == "inner":
        return inner(parse_word(rest, rank))
    if head == "sigma":
        try:
            m, j, s = (int(t) for t in rest.split())
        except ValueError:
            raise ParseError("sigma expects three integers m j s", 6) from None
        return sigma_automorphism(rank, m, j, s)
    if head == "map":
        moves, inv = {}, {}
        for chunk in rest.split(";"):
            if not chunk.strip():
                continue
            target = moves
            body = chunk.strip()
            if body.startswith("inv "):
                target = inv
                body = body[4:]
            m = _MAP_ENTRY.match(body)
            if not m:
                raise ParseError(f"bad map entry {chunk.strip()!r}", text.find(chunk.strip()))
            i = int(m.group(1))
            if not 1 <= i <= rank:
                raise GeneratorIndexError(f"generator x{i} outside 1..{rank}")
            target[i] = parse_word(m.group(2), rank)
        return Automorphism.from_moves(rank, moves, inv, check=True)
    raise ParseError(f"unknown automorphism kind {head!r}", 0)
