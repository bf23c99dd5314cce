"""The finite-index subgroups W_{n,d} = ker(F_n -> C_d, x1 -> s, x_i -> 1).

Transversal {1, x1, ..., x1^(d-1)}; free basis

    b0 = x1^d,   b[k,i] = x1^k x_i x1^-k   (2 <= i <= n, 0 <= k < d)

ordered b0, b[0,2], ..., b[d-1,2], b[0,3], ..., b[d-1,n].  As generators of a
free group of rank d(n-1)+1, b0 is index 1 and b[k,i] is 2 + (i-2)d + k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from .errors import NotIAError, NotInSubgroupError
from .free_group import Automorphism, Word, _push


def cyclic_image(w: Word, d: int) -> int:
    """Exponent sum of x1 modulo d."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return w.exponent_sum(1) % d


@dataclass(frozen=True)
class SubgroupContext:
    n: int
    d: int
    basis: Tuple[Word, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 2 or self.d < 2:
            raise ValueError("W_{n,d} needs n >= 2 and d >= 2")
        x1 = Word.generator(self.n, 1)
        words = [x1 ** self.d]
        for i in range(2, self.n + 1):
            xi = Word.generator(self.n, i)
            for k in range(self.d):
                words.append(xi.conjugate(x1 ** k))
        object.__setattr__(self, "basis", tuple(words))

    @property
    def rank(self) -> int:
        return self.d * (self.n - 1) + 1

    def index(self, k: int, i: int) -> int:
        """Generator index of b[k,i] in the rank d(n-1)+1 free group."""
        if not (2 <= i <= self.n and 0 <= k < self.d):
            raise IndexError(f"no basis letter b[{k},{i}] in W_{{{self.n},{self.d}}}")
        return 2 + (i - 2) * self.d + k

    def label(self, idx: int) -> str:
        if idx == 1:
            return "b0"
        i, k = divmod(idx - 2, self.d)
        return f"b[{k},{i + 2}]"

    def letter(self, k: int, i: int, exp: int = 1) -> Word:
        return Word.generator(self.rank, self.index(k, i), exp)

    def b0(self, exp: int = 1) -> Word:
        return Word.generator(self.rank, 1, exp)

    def conj_letter(self, j: int, i: int, exp: int = 1) -> Word:
        """Rewriting of x1^j x_i^exp x1^-j for any integer j, as a W-word."""
        q, k = divmod(j, self.d)
        return self.letter(k, i, exp).conjugate(self.b0(q))

    def evaluate(self, w: Word) -> Word:
        """Substitute basis words into a W-word and reduce in F_n."""
        if w.rank != self.rank:
            raise ValueError("word is not over the W basis alphabet")
        stack: list = []
        for g, e in w.syllables:
            src = self.basis[g - 1] if e > 0 else self.basis[g - 1].inverse()
            for _ in range(abs(e)):
                for gg, ee in src.syllables:
                    _push(stack, gg, ee)
        return Word(self.n, stack)

    def format(self, w: Word) -> str:
        if w.is_identity():
            return "1"
        return " ".join(
            self.label(g) if e == 1 else f"{self.label(g)}^{e}" for g, e in w.syllables
        )

    def basis_strings(self) -> List[str]:
        return [f"{self.label(i)} = {w}" for i, w in enumerate(self.basis, 1)]


def build_context(n: int, d: int) -> SubgroupContext:
    return SubgroupContext(n, d)


@dataclass(frozen=True)
class SubgroupWord:
    context: SubgroupContext
    word: Word

    def evaluate(self) -> Word:
        return self.context.evaluate(self.word)

    def __str__(self) -> str:
        return self.context.format(self.word)


def rewrite_word(w: Word, ctx: SubgroupContext) -> Word:
    """Reidemeister-Schreier rewriting of w in W_{n,d} as a word over the basis."""
    if w.rank != ctx.n:
        raise ValueError(f"expected a word in F_{ctx.n}")
    d = ctx.d
    state = 0
    stack: list = []
    for g, e in w.syllables:
        if g == 1:
            q, state = divmod(state + e, d)
            _push(stack, 1, q)
        else:
            _push(stack, 2 + (g - 2) * d + state, e)
    if state != 0:
        raise NotInSubgroupError(f"{w} is not in W_{{{ctx.n},{d}}} (x1-exponent sum not divisible by {d})")
    return Word._trusted(ctx.rank, tuple(stack))


def rewrite(w: Word, ctx: SubgroupContext) -> SubgroupWord:
    return SubgroupWord(ctx, rewrite_word(w, ctx))


def restrict(sigma: Automorphism, ctx: SubgroupContext) -> Automorphism:
    """The automorphism of W_{n,d} induced by an IA-automorphism of F_n."""
    if sigma.rank != ctx.n:
        raise ValueError("automorphism rank does not match the context")
    if not sigma.is_ia():
        raise NotIAError("only IA-automorphisms are restricted to W_{n,d}")
    inv = sigma.inverse()
    images = [rewrite_word(sigma.apply(b), ctx) for b in ctx.basis]
    inverse_images = [rewrite_word(inv.apply(b), ctx) for b in ctx.basis]
    return Automorphism(images, inverse_images, check=True)


def ia_w_member(sigma_w: Automorphism) -> bool:
    """True iff the automorphism acts trivially on the abelianization."""
    return sigma_w.is_ia()
