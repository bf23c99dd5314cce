"""Deliberately naive reference implementations used to cross-check the library.

Words here are plain lists of signed generator indices (x2^-1 is -2); nothing
is imported from the package so that agreement means something.
"""

from fractions import Fraction
from itertools import product


def reduce_letters(letters):
    stack = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return stack


def inv_letters(letters):
    return [-a for a in reversed(letters)]


def mul(*words):
    out = []
    for w in words:
        out.extend(w)
    return reduce_letters(out)


def comm(a, b):
    return mul(a, b, inv_letters(a), inv_letters(b))


def power(letters, k):
    base = letters if k >= 0 else inv_letters(letters)
    return mul(*([base] * abs(k)))


def gen(i, e=1):
    return power([i], e)


# --- Z[F]: dict from tuple(reduced letters) to int -------------------------------

def ring_add(*elems):
    out = {}
    for e in elems:
        for w, c in e.items():
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def ring_left_mul(word, elem):
    return ring_add({tuple(mul(list(word), list(w))): c for w, c in elem.items()})


def fox(letters, i):
    """Fox derivative by recursion on the product rule, one letter at a time."""
    if not letters:
        return {}
    if len(letters) == 1:
        a = letters[0]
        if a == i:
            return {(): 1}
        if a == -i:
            return {(-i,): -1}
        return {}
    head, tail = letters[:1], letters[1:]
    return ring_add(fox(head, i), ring_left_mul(head, fox(tail, i)))


def abelianize(letters, rank):
    v = [0] * rank
    for a in letters:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(v)


def abelianize_ring(elem, rank):
    out = {}
    for w, c in elem.items():
        k = abelianize(w, rank)
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


# --- Magnus expansion, one letter at a time ---------------------------------------

def series_mul(a, b, D):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            if len(m1) + len(m2) <= D:
                out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def letter_series(a, D):
    g = abs(a)
    if a > 0:
        return {(): 1, (g,): 1}
    return {(g,) * k: (-1) ** k for k in range(D + 1)}


def magnus(letters, D):
    s = {(): 1}
    for a in letters:
        s = series_mul(s, letter_series(a, D), D)
    return s


def degree_part(s, k):
    return {m: c for m, c in s.items() if len(m) == k}


def tensor_bracket(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
            out[m2 + m1] = out.get(m2 + m1, 0) - c1 * c2
    return {m: c for m, c in out.items() if c}


def bracket_expr(expr):
    if isinstance(expr, int):
        return {(expr,): 1}
    return tensor_bracket(bracket_expr(expr[0]), bracket_expr(expr[1]))


# --- counting and linear algebra --------------------------------------------------

def mobius(n):
    result, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def witt(r, k):
    return sum(mobius(e) * r ** (k // e) for e in range(1, k + 1) if k % e == 0) // k


def brute_lyndon(r, k):
    """Lyndon words by checking every word against all its rotations."""
    out = []
    for w in product(range(1, r + 1), repeat=k):
        if all(w < w[i:] + w[:i] for i in range(1, k)):
            out.append(w)
    return out


def fraction_rank(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col] / M[rank][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank
