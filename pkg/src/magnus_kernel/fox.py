"""Fox derivatives, the Magnus representation r_M and the metabelian embedding.

``magnus_matrix(s)[i][j]`` is the abelianized Fox derivative of x_i^s with
respect to x_j.  On all of Aut F_n it is a crossed homomorphism,

    r_M(s t) = r_M(s)^{t*} . r_M(t),

and on IA-automorphisms an honest homomorphism whose kernel is K_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import GeneratorIndexError, NotIAError
from .free_group import Automorphism, Word, inner
from .group_ring import ExpVec, FreeRingElem, GrMatrix, LaurentPoly, _add_into


def _check_index(w: Word, i: int) -> None:
    if not 1 <= i <= w.rank:
        raise GeneratorIndexError(f"derivative index {i} outside 1..{w.rank}")


def fox_free(w: Word, i: int) -> FreeRingElem:
    """d w / d x_i in Z[F_n].

    A syllable x_i^e after prefix p contributes p(1 + x_i + ... + x_i^(e-1))
    for e > 0 and -p(x_i^-1 + ... + x_i^e) for e < 0.
    """
    _check_index(w, i)
    rank = w.rank
    terms: dict = {}
    prefix = Word.identity(rank)
    for g, e in w.syllables:
        if g == i:
            if e > 0:
                for k in range(e):
                    _add_into(terms, prefix * Word.generator(rank, i, k), 1)
            else:
                for k in range(1, -e + 1):
                    _add_into(terms, prefix * Word.generator(rank, i, -k), -1)
        prefix = prefix * Word.generator(rank, g, e)
    return FreeRingElem(rank, terms)


def fox_ab(w: Word, i: int) -> LaurentPoly:
    """Abelianized Fox derivative, computed directly on exponent vectors."""
    _check_index(w, i)
    rank = w.rank
    terms: dict = {}
    prefix = [0] * rank
    for g, e in w.syllables:
        if g == i:
            base = prefix[i - 1]
            if e > 0:
                for k in range(e):
                    prefix[i - 1] = base + k
                    _add_into(terms, tuple(prefix), 1)
            else:
                for k in range(1, -e + 1):
                    prefix[i - 1] = base - k
                    _add_into(terms, tuple(prefix), -1)
            prefix[i - 1] = base + e
        else:
            prefix[g - 1] += e
    return LaurentPoly._trusted(rank, terms)


def magnus_matrix(sigma: Automorphism) -> GrMatrix:
    n = sigma.rank
    return GrMatrix([[fox_ab(sigma.images[i], j) for j in range(1, n + 1)] for i in range(n)])


def require_ia(sigma: Automorphism) -> None:
    if not sigma.is_ia():
        raise NotIAError("automorphism acts non-trivially on the abelianization")


def kernel_member(sigma: Automorphism) -> bool:
    """True iff sigma is in K_n, i.e. r_M(sigma) is the identity matrix."""
    require_ia(sigma)
    return magnus_matrix(sigma).is_identity()


@dataclass(frozen=True)
class MetabelianElem:
    """The matrix [[x, v_1 t_1 + ... + v_n t_n], [0, 1]] with x in H, v_i in Z[H]."""

    rank: int
    abelian: ExpVec
    form: Tuple[LaurentPoly, ...]

    @classmethod
    def identity(cls, rank: int) -> "MetabelianElem":
        return cls(rank, (0,) * rank, tuple(LaurentPoly.zero(rank) for _ in range(rank)))

    @classmethod
    def generator(cls, rank: int, i: int) -> "MetabelianElem":
        ab = tuple(1 if k == i else 0 for k in range(1, rank + 1))
        form = tuple(LaurentPoly.one(rank) if k == i else LaurentPoly.zero(rank) for k in range(1, rank + 1))
        return cls(rank, ab, form)

    def __mul__(self, other: "MetabelianElem") -> "MetabelianElem":
        x = LaurentPoly.monomial(self.rank, self.abelian)
        return MetabelianElem(
            self.rank,
            tuple(a + b for a, b in zip(self.abelian, other.abelian)),
            tuple(v + x * u for v, u in zip(self.form, other.form)),
        )

    def inverse(self) -> "MetabelianElem":
        neg = tuple(-a for a in self.abelian)
        xinv = LaurentPoly.monomial(self.rank, neg)
        return MetabelianElem(self.rank, neg, tuple(-(xinv * v) for v in self.form))

    def is_identity(self) -> bool:
        return not any(self.abelian) and all(v.is_zero() for v in self.form)


def metabelian_embed(w: Word) -> MetabelianElem:
    """Image of w in the 2x2 matrix model of the free metabelian group.

    Computed by multiplying generator matrices, independently of ``fox_ab``.
    """
    rank = w.rank
    result = MetabelianElem.identity(rank)
    for g, e in w.syllables:
        m = MetabelianElem.generator(rank, g)
        if e < 0:
            m = m.inverse()
        for _ in range(abs(e)):
            result = result * m
    return result


def metabelian_trivial(w: Word) -> bool:
    """True iff w lies in the second derived subgroup [[F, F], [F, F]]."""
    return metabelian_embed(w).is_identity()


def inner_kernel_member(w: Word) -> bool:
    """kernel_member of the inner automorphism by w."""
    return kernel_member(inner(w))


def crossed_rhs(sigma: Automorphism, tau: Automorphism) -> GrMatrix:
    """r_M(sigma)^{tau*} . r_M(tau)."""
    return magnus_matrix(sigma).substitute(tau) * magnus_matrix(tau)
