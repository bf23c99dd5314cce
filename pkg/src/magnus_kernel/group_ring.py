"""Exact arithmetic in H = Z^n, the Laurent ring Z[H], Z[F_n] and matrices over Z[H].

Exponent vectors are plain tuples of ints.  Coefficients are Python ints, so
there is no overflow to guard against.
"""

from __future__ import annotations

import json
import re
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import ParseError, RankMismatchError
from .free_group import Automorphism, Word

ExpVec = Tuple[int, ...]


def abelianize_word(w: Word) -> ExpVec:
    v = [0] * w.rank
    for g, e in w.syllables:
        v[g - 1] += e
    return tuple(v)


def _add_into(target: dict, key, coeff: int) -> None:
    c = target.get(key, 0) + coeff
    if c:
        target[key] = c
    else:
        target.pop(key, None)


def _monomial_str(exps: ExpVec) -> str:
    parts = []
    for i, a in enumerate(exps, 1):
        if a == 1:
            parts.append(f"x{i}")
        elif a:
            parts.append(f"x{i}^{a}")
    return "*".join(parts)


class LaurentPoly:
    """Element of Z[H]: a sparse map from exponent vectors to nonzero ints."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[ExpVec, int] = ()):
        self.rank = rank
        clean: Dict[ExpVec, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != rank:
                raise RankMismatchError(f"exponent vector {exps} in rank {rank} ring")
            _add_into(clean, exps, int(c))
        self.terms = clean

    @classmethod
    def _trusted(cls, rank: int, terms: dict) -> "LaurentPoly":
        p = object.__new__(cls)
        p.rank = rank
        p.terms = terms
        return p

    @classmethod
    def zero(cls, rank: int) -> "LaurentPoly":
        return cls._trusted(rank, {})

    @classmethod
    def one(cls, rank: int) -> "LaurentPoly":
        return cls.monomial(rank, (0,) * rank)

    @classmethod
    def monomial(cls, rank: int, exps: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        return cls(rank, {tuple(exps): coeff})

    @classmethod
    def variable(cls, rank: int, i: int, power: int = 1) -> "LaurentPoly":
        exps = [0] * rank
        exps[i - 1] = power
        return cls.monomial(rank, exps)

    def _same(self, other: "LaurentPoly") -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} and rank {other.rank} polynomials")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.monomial(self.rank, (0,) * self.rank, other)
        self._same(other)
        return other

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return LaurentPoly._trusted(self.rank, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._trusted(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero(self.rank)
            return LaurentPoly._trusted(self.rank, {k: c * other for k, c in self.terms.items()})
        self._same(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                _add_into(out, tuple(a + b for a, b in zip(k1, k2)), c1 * c2)
        return LaurentPoly._trusted(self.rank, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.rank: 1}

    def substitute(self, tau: Automorphism) -> "LaurentPoly":
        """Apply the ring automorphism of Z[H] induced by tau's action on H."""
        if tau.rank != self.rank:
            raise RankMismatchError("automorphism and polynomial ranks differ")
        cols = [abelianize_word(w) for w in tau.images]
        out: dict = {}
        for exps, c in self.terms.items():
            new = [0] * self.rank
            for a, col in zip(exps, cols):
                if a:
                    for t in range(self.rank):
                        new[t] += a * col[t]
            _add_into(out, tuple(new), c)
        return LaurentPoly._trusted(self.rank, out)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.monomial(self.rank, (0,) * self.rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for exps, c in self.sorted_terms():
            mono = _monomial_str(exps)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.rank}, '{self}')"

    def to_json(self) -> list:
        return [{"exponents": list(k), "coeff": str(c)} for k, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, rank: int, data: list) -> "LaurentPoly":
        return cls(rank, {tuple(t["exponents"]): int(t["coeff"]) for t in data})


_POLY_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*((?:x\d+(?:\^-?\d+)?\s*\*?\s*)*)")
_POLY_FACTOR = re.compile(r"x(\d+)(?:\^(-?\d+))?")


def parse_poly(text: str, rank: int) -> LaurentPoly:
    """Inverse of ``str(LaurentPoly)``; accepts e.g. ``"3*x1^2*x2^-1 - 1"``."""
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(rank)
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _POLY_TERM.match(text, pos)
        sign, digits, star, factors = m.groups()
        if m.end() == pos or (not digits and not factors.strip()):
            raise ParseError("malformed polynomial term", pos)
        if sign is None and not first:
            raise ParseError("missing + or - between terms", pos)
        if digits and factors.strip() and not star:
            raise ParseError("expected '*' between coefficient and monomial", pos)
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        exps = [0] * rank
        for fm in _POLY_FACTOR.finditer(factors):
            i = int(fm.group(1))
            if not 1 <= i <= rank:
                raise ParseError(f"variable x{i} outside 1..{rank}", pos)
            exps[i - 1] += int(fm.group(2)) if fm.group(2) else 1
        _add_into(terms, tuple(exps), coeff)
        pos = m.end()
        first = False
    return LaurentPoly(rank, terms)


def poly_substitute(p: LaurentPoly, tau: Automorphism) -> LaurentPoly:
    return p.substitute(tau)


class FreeRingElem:
    """Element of Z[F_n]: a finite integer combination of reduced words."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[Word, int] = ()):
        self.rank = rank
        clean: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            if w.rank != rank:
                raise RankMismatchError("word rank differs from ring rank")
            _add_into(clean, w, int(c))
        self.terms = clean

    @classmethod
    def of_word(cls, w: Word, coeff: int = 1) -> "FreeRingElem":
        return cls(w.rank, {w: coeff})

    @classmethod
    def zero(cls, rank: int) -> "FreeRingElem":
        return cls(rank)

    def _coerce(self, other) -> "FreeRingElem":
        if isinstance(other, Word):
            other = FreeRingElem.of_word(other)
        elif isinstance(other, int):
            other = FreeRingElem.of_word(Word.identity(self.rank), other)
        if other.rank != self.rank:
            raise RankMismatchError("ring elements of different rank")
        return other

    def __add__(self, other) -> "FreeRingElem":
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out, w, c)
        return FreeRingElem(self.rank, out)

    __radd__ = __add__

    def __neg__(self) -> "FreeRingElem":
        return FreeRingElem(self.rank, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "FreeRingElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FreeRingElem":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FreeRingElem":
        if isinstance(other, int):
            return FreeRingElem(self.rank, {w: c * other for w, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(out, w1 * w2, c1 * c2)
        return FreeRingElem(self.rank, out)

    def __rmul__(self, other) -> "FreeRingElem":
        return self._coerce(other) * self

    def is_zero(self) -> bool:
        return not self.terms

    def abelianize(self) -> LaurentPoly:
        out: dict = {}
        for w, c in self.terms.items():
            _add_into(out, abelianize_word(w), c)
        return LaurentPoly._trusted(self.rank, out)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Word)):
            other = self._coerce(other)
        if not isinstance(other, FreeRingElem):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for w, c in sorted(self.terms.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if w.is_identity():
                body = str(mag)
            else:
                body = str(w) if mag == 1 else f"{mag}*({w})"
            out += (f"{'-' if c < 0 else ''}{body}" if not out else f" {sign} {body}")
        return out

    __repr__ = __str__


def abelianize_ring(e: FreeRingElem) -> LaurentPoly:
    return e.abelianize()


class GrMatrix:
    """Square matrix over Z[H]."""

    __slots__ = ("size", "rank", "entries")

    def __init__(self, entries: Sequence[Sequence[LaurentPoly]]):
        rows = tuple(tuple(r) for r in entries)
        size = len(rows)
        if size == 0 or any(len(r) != size for r in rows):
            raise ValueError("GrMatrix must be square and non-empty")
        rank = rows[0][0].rank
        if any(p.rank != rank for r in rows for p in r):
            raise RankMismatchError("entries of different ranks")
        self.size = size
        self.rank = rank
        self.entries = rows

    @classmethod
    def identity(cls, size: int, rank: int = None) -> "GrMatrix":
        rank = size if rank is None else rank
        one, zero = LaurentPoly.one(rank), LaurentPoly.zero(rank)
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)])

    def __getitem__(self, ij) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other: "GrMatrix") -> "GrMatrix":
        if self.size != other.size or self.rank != other.rank:
            raise RankMismatchError("matrix size or rank mismatch")
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = LaurentPoly.zero(self.rank)
                for k in range(n):
                    a = self.entries[i][k]
                    if a.terms:
                        b = other.entries[k][j]
                        if b.terms:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GrMatrix(out)

    def substitute(self, tau: Automorphism) -> "GrMatrix":
        return GrMatrix([[p.substitute(tau) for p in row] for row in self.entries])

    def is_identity(self) -> bool:
        return all(
            (p.is_one() if i == j else p.is_zero())
            for i, row in enumerate(self.entries)
            for j, p in enumerate(row)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def to_json(self) -> list:
        return [[p.to_json() for p in row] for row in self.entries]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, rank: int, data: list) -> "GrMatrix":
        return cls([[LaurentPoly.from_json(rank, p) for p in row] for row in data])

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(p) for p in row) + "]" for row in self.entries)

    def __repr__(self) -> str:
        return f"GrMatrix(size={self.size})\n{self}"


def matrix_mul(a: GrMatrix, b: GrMatrix) -> GrMatrix:
    return a * b
