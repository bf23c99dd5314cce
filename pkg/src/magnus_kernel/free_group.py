"""Reduced words in a free group F_n and automorphisms acting on the right.

Words are run-length encoded tuples of ``(generator, exponent)`` syllables,
generators numbered from 1.  Every constructor reduces its input, so two
words are equal in F_n exactly when their syllable tuples agree.

Automorphisms store the image of every generator together with the image
under the inverse automorphism.  ``compose(s, t)`` is the product ``st`` for
the right action ``x -> x^s``: apply ``s`` first, then ``t``.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

from .errors import GeneratorIndexError, NotInvertibleError, RankMismatchError

Syllable = Tuple[int, int]

MAX_RANK = 10_000


def _push(stack: list, gen: int, exp: int) -> None:
    if exp == 0:
        return
    if stack and stack[-1][0] == gen:
        total = stack[-1][1] + exp
        if total:
            stack[-1] = (gen, total)
        else:
            stack.pop()
    else:
        stack.append((gen, exp))


def _check_rank(a: "Word", b: "Word") -> None:
    if a.rank != b.rank:
        raise RankMismatchError(f"rank {a.rank} word combined with rank {b.rank} word")


class Word:
    """A freely reduced element of the free group of the given rank."""

    __slots__ = ("rank", "syllables", "_hash")

    def __init__(self, rank: int, syllables: Iterable[Syllable] = ()):
        if rank < 1:
            raise ValueError("rank must be positive")
        stack: list = []
        for gen, exp in syllables:
            if not 1 <= gen <= rank:
                raise GeneratorIndexError(f"generator x{gen} outside 1..{rank}")
            _push(stack, gen, int(exp))
        self.rank = rank
        self.syllables: Tuple[Syllable, ...] = tuple(stack)
        self._hash = None

    @classmethod
    def _trusted(cls, rank: int, syllables: Tuple[Syllable, ...]) -> "Word":
        # syllables already reduced and in range
        w = object.__new__(cls)
        w.rank = rank
        w.syllables = syllables
        w._hash = None
        return w

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls._trusted(rank, ())

    @classmethod
    def generator(cls, rank: int, i: int, exp: int = 1) -> "Word":
        return cls(rank, [(i, exp)])

    @classmethod
    def from_letters(cls, rank: int, letters: Iterable[int]) -> "Word":
        """Build from signed letters: ``3`` is x3 and ``-3`` is x3^-1."""
        return cls(rank, ((abs(a), 1 if a > 0 else -1) for a in letters))

    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> list:
        """Signed single letters, e.g. x1^2 x2^-1 -> [1, 1, -2]."""
        out = []
        for gen, exp in self.syllables:
            out.extend([gen if exp > 0 else -gen] * abs(exp))
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        _check_rank(self, other)
        if not other.syllables:
            return self
        if not self.syllables:
            return other
        stack = list(self.syllables)
        for gen, exp in other.syllables:
            _push(stack, gen, exp)
        return Word._trusted(self.rank, tuple(stack))

    def inverse(self) -> "Word":
        return Word._trusted(self.rank, tuple((g, -e) for g, e in reversed(self.syllables)))

    __invert__ = inverse

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        result = Word.identity(self.rank)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def commutator(self, other: "Word") -> "Word":
        return self * other * self.inverse() * other.inverse()

    def conjugate(self, g: "Word") -> "Word":
        """g self g^-1."""
        return g * self * g.inverse()

    def with_rank(self, rank: int) -> "Word":
        """The same word viewed in a free group of larger (or equal) rank."""
        return Word(rank, self.syllables)

    def exponent_sum(self, gen: int) -> int:
        return sum(e for g, e in self.syllables if g == gen)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.rank == other.rank and self.syllables == other.syllables

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, self.syllables))
        return self._hash

    def __lt__(self, other: "Word") -> bool:
        return (len(self.syllables), self.syllables) < (len(other.syllables), other.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(f"x{g}" if e == 1 else f"x{g}^{e}" for g, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({self.rank}, '{self}')"


def concat_reduce(a: Word, b: Word) -> Word:
    return a * b


def inverse(w: Word) -> Word:
    return w.inverse()


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    return a.commutator(b)


class Automorphism:
    """An automorphism of F_n given by generator images and inverse images.

    ``images[i-1]`` is x_i^sigma and ``inverse_images[i-1]`` is x_i^(sigma^-1).
    The constructor verifies that the two tables are mutually inverse unless
    ``check=False`` is passed by a builder that knows the closed form.
    """

    __slots__ = ("rank", "images", "inverse_images", "_hash")

    def __init__(self, images: Sequence[Word], inverse_images: Sequence[Word], check: bool = True):
        images = tuple(images)
        inverse_images = tuple(inverse_images)
        rank = len(images)
        if rank == 0 or len(inverse_images) != rank:
            raise ValueError("image tables must be non-empty and of equal length")
        for w in images + inverse_images:
            if w.rank != rank:
                raise RankMismatchError(f"image {w} has rank {w.rank}, expected {rank}")
        self.rank = rank
        self.images = images
        self.inverse_images = inverse_images
        self._hash = None
        if check:
            self._check_inverse()

    def _check_inverse(self) -> None:
        for i in range(1, self.rank + 1):
            x = Word.generator(self.rank, i)
            if _substitute(self.inverse_images, self.images[i - 1]) != x:
                raise NotInvertibleError(f"inverse table does not undo the image of x{i}")
            if _substitute(self.images, self.inverse_images[i - 1]) != x:
                raise NotInvertibleError(f"image table does not undo the inverse image of x{i}")

    @classmethod
    def identity(cls, rank: int) -> "Automorphism":
        gens = [Word.generator(rank, i) for i in range(1, rank + 1)]
        return cls(gens, gens, check=False)

    @classmethod
    def from_moves(cls, rank: int, moves: dict, inverse_moves: dict, check: bool = True) -> "Automorphism":
        """Build from partial tables ``{i: word}``; unlisted generators are fixed."""
        gens = [Word.generator(rank, i) for i in range(1, rank + 1)]
        images = [moves.get(i, gens[i - 1]) for i in range(1, rank + 1)]
        inv = [inverse_moves.get(i, gens[i - 1]) for i in range(1, rank + 1)]
        return cls(images, inv, check=check)

    def apply(self, w: Word) -> Word:
        if w.rank != self.rank:
            raise RankMismatchError(f"rank {self.rank} automorphism applied to rank {w.rank} word")
        return _substitute(self.images, w)

    __call__ = apply

    def compose(self, other: "Automorphism") -> "Automorphism":
        """Product self*other: apply self, then other."""
        if self.rank != other.rank:
            raise RankMismatchError("automorphisms of different ranks")
        images = [_substitute(other.images, w) for w in self.images]
        inv = [_substitute(self.inverse_images, w) for w in other.inverse_images]
        return Automorphism(images, inv, check=False)

    __mul__ = compose

    def inverse(self) -> "Automorphism":
        return Automorphism(self.inverse_images, self.images, check=False)

    def __pow__(self, k: int) -> "Automorphism":
        if k < 0:
            return self.inverse() ** (-k)
        result = Automorphism.identity(self.rank)
        for _ in range(k):
            result = result * self
        return result

    def commutator(self, other: "Automorphism") -> "Automorphism":
        """Group commutator s t s^-1 t^-1 in the right-action product."""
        return self * other * self.inverse() * other.inverse()

    def moved(self) -> list:
        """Generators whose image is not themselves."""
        return [i for i, w in enumerate(self.images, 1) if w.syllables != ((i, 1),)]

    def is_ia(self) -> bool:
        """True when the induced action on H = F_n^ab is trivial."""
        for i, w in enumerate(self.images, 1):
            for g in range(1, self.rank + 1):
                if w.exponent_sum(g) != (1 if g == i else 0):
                    return False
        return True

    def is_identity(self) -> bool:
        return not self.moved()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __str__(self) -> str:
        moved = self.moved()
        if not moved:
            return "id"
        return "; ".join(f"x{i} -> {self.images[i - 1]}" for i in moved)

    def __repr__(self) -> str:
        return f"Automorphism(rank={self.rank}, {self})"


def _substitute(images: Sequence[Word], w: Word) -> Word:
    stack: list = []
    inverses: dict = {}
    for gen, exp in w.syllables:
        if exp > 0:
            img = images[gen - 1].syllables
        else:
            if gen not in inverses:
                inverses[gen] = images[gen - 1].inverse().syllables
            img = inverses[gen]
        for _ in range(abs(exp)):
            for g, e in img:
                _push(stack, g, e)
    return Word._trusted(len(images), tuple(stack))


def apply(sigma: Automorphism, w: Word) -> Word:
    return sigma.apply(w)


def compose(sigma: Automorphism, tau: Automorphism) -> Automorphism:
    return sigma.compose(tau)


# --- built-in automorphisms with closed-form inverses ------------------------

def _distinct(rank: int, *indices: int) -> None:
    for i in indices:
        if not 1 <= i <= rank:
            raise GeneratorIndexError(f"index {i} outside 1..{rank}")


def magnus_conjugation(rank: int, i: int, j: int) -> Automorphism:
    """K_ij : x_i -> x_j^-1 x_i x_j."""
    _distinct(rank, i, j)
    if i == j:
        raise GeneratorIndexError("K_ij needs i != j")
    xi, xj = Word.generator(rank, i), Word.generator(rank, j)
    return Automorphism.from_moves(
        rank, {i: xj.inverse() * xi * xj}, {i: xj * xi * xj.inverse()}, check=False
    )


def magnus_commutator(rank: int, i: int, j: int, l: int) -> Automorphism:
    """K_ijl : x_i -> x_i [x_j, x_l].  K_ijj is the identity."""
    _distinct(rank, i, j, l)
    if i in (j, l):
        raise GeneratorIndexError("K_ijl needs i distinct from j and l")
    xi = Word.generator(rank, i)
    c = commutator(Word.generator(rank, j), Word.generator(rank, l))
    return Automorphism.from_moves(rank, {i: xi * c}, {i: xi * c.inverse()}, check=False)


def inner(g: Word) -> Automorphism:
    """The inner automorphism x -> g x g^-1."""
    rank = g.rank
    gi = g.inverse()
    images = [g * Word.generator(rank, i) * gi for i in range(1, rank + 1)]
    inv = [gi * Word.generator(rank, i) * g for i in range(1, rank + 1)]
    return Automorphism(images, inv, check=False)


def double_commutator_word(rank: int, m: int, s: int) -> Word:
    """[[x1, x_s], [x1^m, x_s]]."""
    x1, xs = Word.generator(rank, 1), Word.generator(rank, s)
    return commutator(commutator(x1, xs), commutator(x1 ** m, xs))


def sigma_automorphism(rank: int, m: int, j: int, s: int) -> Automorphism:
    """x_j -> x_j [[x1, x_s], [x1^m, x_s]], other generators fixed."""
    if rank < 3:
        raise GeneratorIndexError("needs rank >= 3")
    if not (2 <= j <= rank and 2 <= s <= rank) or j == s:
        raise GeneratorIndexError(f"need 2 <= j, s <= {rank} with j != s, got j={j}, s={s}")
    if m < 2:
        raise ValueError("m must be at least 2")
    xj = Word.generator(rank, j)
    c = double_commutator_word(rank, m, s)
    return Automorphism.from_moves(rank, {j: xj * c}, {j: xj * c.inverse()}, check=False)
