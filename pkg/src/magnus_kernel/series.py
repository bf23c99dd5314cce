"""Truncated Magnus expansions and the free Lie algebra in the Lyndon basis.

The Magnus expansion sends x_i to 1 + X_i in the ring of noncommutative
power series, truncated at a fixed degree.  Homogeneous pieces are plain
dicts ``{monomial: coeff}`` where a monomial is a tuple of variable indices
(1-based).  A word lies in the k-th lower central term exactly when its
expansion has no terms of degree 1..k-1, and then its degree-k part is the
tensor of its class in L(k).

Lie coordinates use the standard bracketing of Lyndon words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Tuple, Union

from .errors import CapExceededError, NotLieElementError
from .free_group import Word
from .group_ring import _add_into

MAX_DEGREE = 6

Monomial = Tuple[int, ...]
Tensor = Dict[Monomial, int]
BracketExpr = Union[int, tuple]


def _check_degree(D: int) -> None:
    if D < 0:
        raise ValueError("degree must be non-negative")
    if D > MAX_DEGREE:
        raise CapExceededError(f"truncation degree {D} exceeds the cap {MAX_DEGREE}")


class NcSeries:
    """Noncommutative power series in X_1..X_rank, truncated above ``degree``."""

    __slots__ = ("rank", "degree", "terms")

    def __init__(self, rank: int, degree: int, terms: Tensor = None):
        _check_degree(degree)
        self.rank = rank
        self.degree = degree
        self.terms: Tensor = {}
        for m, c in (terms or {}).items():
            if len(m) <= degree:
                _add_into(self.terms, tuple(m), c)

    @classmethod
    def one(cls, rank: int, degree: int) -> "NcSeries":
        return cls(rank, degree, {(): 1})

    def __mul__(self, other: "NcSeries") -> "NcSeries":
        D = min(self.degree, other.degree)
        out: Tensor = {}
        for m1, c1 in self.terms.items():
            room = D - len(m1)
            if room < 0:
                continue
            for m2, c2 in other.terms.items():
                if len(m2) <= room:
                    _add_into(out, m1 + m2, c1 * c2)
        s = NcSeries(self.rank, D)
        s.terms = out
        return s

    def _mul_power(self, gen: int, exp: int) -> "NcSeries":
        # multiply on the right by the expansion of x_gen^exp
        coeffs = _power_coeffs(exp, self.degree)
        out: Tensor = {}
        for m, c in self.terms.items():
            for k in range(self.degree - len(m) + 1):
                a = coeffs[k]
                if a:
                    _add_into(out, m + (gen,) * k, c * a)
        s = NcSeries(self.rank, self.degree)
        s.terms = out
        return s

    def graded_part(self, k: int) -> Tensor:
        if not 0 <= k <= self.degree:
            raise ValueError(f"degree {k} outside 0..{self.degree}")
        return {m: c for m, c in self.terms.items() if len(m) == k}

    def lowest_nonconstant_degree(self):
        degrees = [len(m) for m in self.terms if m]
        return min(degrees) if degrees else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcSeries):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self) -> str:
        return f"NcSeries(rank={self.rank}, degree={self.degree}, {format_tensor(self.terms)})"


def _power_coeffs(exp: int, D: int) -> List[int]:
    if exp >= 0:
        return [comb(exp, k) for k in range(D + 1)]
    e = -exp
    return [(-1) ** k * comb(e + k - 1, k) for k in range(D + 1)]


def expand(w: Word, D: int) -> NcSeries:
    """Magnus expansion of w truncated at degree D."""
    s = NcSeries.one(w.rank, D)
    for g, e in w.syllables:
        s = s._mul_power(g, e)
    return s


def graded_part(s: NcSeries, k: int) -> Tensor:
    return s.graded_part(k)


# --- tensor helpers ----------------------------------------------------------

def tensor_add(*ts: Tensor, scale: int = 1) -> Tensor:
    out: Tensor = {}
    for t in ts:
        for m, c in t.items():
            _add_into(out, m, c * scale)
    return out


def tensor_sub(a: Tensor, b: Tensor) -> Tensor:
    out = dict(a)
    for m, c in b.items():
        _add_into(out, m, -c)
    return out


def tensor_scale(t: Tensor, c) -> Tensor:
    return {m: v * c for m, v in t.items() if v * c}


def tensor_mul(a: Tensor, b: Tensor) -> Tensor:
    out: Tensor = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            _add_into(out, m1 + m2, c1 * c2)
    return out


def bracket(a: Tensor, b: Tensor) -> Tensor:
    """[a, b] = ab - ba."""
    return tensor_sub(tensor_mul(a, b), tensor_mul(b, a))


def bracket_tensor(expr: BracketExpr) -> Tensor:
    """Expand a nested bracket such as ``((4, 2), 3)`` meaning [[X4, X2], X3]."""
    if isinstance(expr, int):
        return {(expr,): 1}
    left, right = expr
    return bracket(bracket_tensor(left), bracket_tensor(right))


def format_tensor(t: Tensor) -> str:
    if not t:
        return "0"
    parts = []
    for m, c in sorted(t.items(), key=lambda mc: (len(mc[0]), mc[0])):
        mono = "".join(f"X{i}" for i in m) or "1"
        parts.append(f"{c:+d}{'*' + mono if mono != '1' else ''}")
    return " ".join(parts)


def tensor_to_json(t: Tensor) -> list:
    return [{"monomial": list(m), "coeff": str(c)} for m, c in sorted(t.items())]


def is_antisymmetric_degree2(t: Tensor) -> bool:
    return all(t.get((b, a), 0) == -c for (a, b), c in ((m, c) for m, c in t.items() if len(m) == 2))


# --- Lyndon words ------------------------------------------------------------

def is_lyndon(w: Tuple[int, ...]) -> bool:
    return len(w) > 0 and all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(r: int, k: int) -> Iterator[Tuple[int, ...]]:
    """All Lyndon words of length <= k over 1..r in lexicographic order (Duval)."""
    w = [1]
    while w:
        yield tuple(w)
        m = len(w)
        while len(w) < k:
            w.append(w[len(w) - m])
        while w and w[-1] == r:
            w.pop()
        if w:
            w[-1] += 1


def lyndon_basis(r: int, k: int) -> List[Tuple[int, ...]]:
    if r < 1 or k < 1:
        raise ValueError("rank and degree must be positive")
    return [w for w in lyndon_words(r, k) if len(w) == k]


def standard_factorization(w: Tuple[int, ...]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Split w = uv with v the longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("letters have no standard factorization")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} is not a Lyndon word")


def lyndon_bracket(w: Tuple[int, ...]) -> BracketExpr:
    if len(w) == 1:
        return w[0]
    u, v = standard_factorization(w)
    return (lyndon_bracket(u), lyndon_bracket(v))


@lru_cache(maxsize=None)
def _lyndon_tensor_cached(w: Tuple[int, ...]) -> Tuple[Tuple[Monomial, int], ...]:
    if len(w) == 1:
        return (((w[0],), 1),)
    u, v = standard_factorization(w)
    t = bracket(dict(_lyndon_tensor_cached(u)), dict(_lyndon_tensor_cached(v)))
    return tuple(sorted(t.items()))


def lyndon_tensor(w: Tuple[int, ...]) -> Tensor:
    return dict(_lyndon_tensor_cached(tuple(w)))


@dataclass(frozen=True)
class LieElement:
    """Integer combination of standard Lyndon brackets of one degree."""

    rank: int
    degree: int
    coords: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.coords

    def to_tensor(self) -> Tensor:
        out: Tensor = {}
        for w, c in self.coords.items():
            for m, a in lyndon_tensor(w).items():
                _add_into(out, m, a * c)
        return out

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        return " ".join(f"{c:+d}*{_bracket_str(lyndon_bracket(w))}" for w, c in sorted(self.coords.items()))

    def to_json(self) -> list:
        return [{"lyndon": list(w), "coeff": str(c)} for w, c in sorted(self.coords.items())]


def _bracket_str(expr: BracketExpr) -> str:
    if isinstance(expr, int):
        return f"x{expr}"
    return f"[{_bracket_str(expr[0])},{_bracket_str(expr[1])}]"


# --- Dynkin criterion and decomposition --------------------------------------

@lru_cache(maxsize=None)
def _left_normed(m: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    if len(m) == 1:
        return ((m, 1),)
    t = bracket(dict(_left_normed(m[:-1])), {(m[-1],): 1})
    return tuple(t.items())


def dynkin_operator(t: Tensor) -> Tensor:
    out: Tensor = {}
    for m, c in t.items():
        for mm, a in _left_normed(m):
            _add_into(out, mm, a * c)
    return out


def dynkin_check(t: Tensor) -> bool:
    """True iff the homogeneous tensor t is a Lie element (Dynkin-Specht-Wever)."""
    if not t:
        return True
    degrees = {len(m) for m in t}
    if len(degrees) != 1:
        raise ValueError("tensor is not homogeneous")
    k = degrees.pop()
    if k == 0:
        return False
    return dynkin_operator(t) == tensor_scale(t, k)


@lru_cache(maxsize=None)
def _echelon(r: int, k: int):
    """Exact echelon form of the expanded Lyndon brackets of degree k over r letters.

    Each entry is (pivot monomial, reduced column, transform) where the
    reduced column equals the transform applied to the original columns.
    """
    basis = lyndon_basis(r, k)
    rows = []
    for j, w in enumerate(basis):
        v = {m: Fraction(c) for m, c in lyndon_tensor(w).items()}
        tr = {j: Fraction(1)}
        for p, b, btr in rows:
            a = v.get(p)
            if a:
                f = a / b[p]
                _axpy(v, b, -f)
                _axpy(tr, btr, -f)
        if not v:
            raise ArithmeticError(f"Lyndon bracket {w} is dependent on earlier ones")
        pivot = min(v, key=lambda m: (abs(v[m]), m))
        rows.append((pivot, v, tr))
    return basis, rows


def _axpy(y: dict, x: dict, a) -> None:
    for key, val in x.items():
        c = y.get(key, 0) + a * val
        if c:
            y[key] = c
        else:
            y.pop(key, None)


def lie_decompose(t: Tensor, r: int) -> LieElement:
    """Coordinates of the Lie element t in the Lyndon basis, solved exactly."""
    if not t:
        return LieElement(r, 0, {})
    degrees = {len(m) for m in t}
    if len(degrees) != 1:
        raise ValueError("tensor is not homogeneous")
    k = degrees.pop()
    _check_degree(k)
    if any(not 1 <= i <= r for m in t for i in m):
        raise ValueError(f"tensor uses variables outside 1..{r}")
    if not dynkin_check(t):
        raise NotLieElementError("tensor fails the Dynkin criterion")
    basis, rows = _echelon(r, k)
    residual = {m: Fraction(c) for m, c in t.items()}
    coeffs: dict = {}
    for p, b, btr in rows:
        a = residual.get(p)
        if a:
            f = a / b[p]
            _axpy(residual, b, -f)
            _axpy(coeffs, btr, f)
    if residual:
        raise ArithmeticError("Lie element not in the span of the Lyndon brackets")
    out = {}
    for j, c in coeffs.items():
        if c.denominator != 1:
            raise ArithmeticError("non-integral Lyndon coordinate")
        out[basis[j]] = int(c)
    elem = LieElement(r, k, out)
    if elem.to_tensor() != t:
        raise ArithmeticError("decomposition does not reproduce the input tensor")
    return elem
