"""Explicit elements of K_n, the detection map pi_{n,d} and lemma verifiers.

pi_{n,d} restricts an element of K_n to W_{n,d} and reads off its tau_1
coordinates there, in the Magnus-generator key order of ``johnson.magnus_keys``
for rank d(n-1)+1.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Sequence

from . import __version__
from .errors import CapExceededError, NotInKernelError
from .fox import kernel_member, magnus_matrix, crossed_rhs, fox_free, metabelian_trivial
from .free_group import (
    Automorphism,
    Word,
    commutator,
    inner,
    magnus_commutator,
    magnus_conjugation,
    sigma_automorphism,
)
from .group_ring import FreeRingElem
from .johnson import MagnusGenKey, johnson_depth, key_sum, magnus_keys, tau, tau1_vector
from .sampling import random_automorphism, random_second_derived, random_word
from .schreier import SubgroupContext, restrict
from .series import bracket_tensor, dynkin_check, expand, tensor_sub

MAX_N = 6
MAX_D = 12


# --- elements ------------------------------------------------------------------

def make_sigma(m: int, j: int, s: int, n: int) -> Automorphism:
    """x_j -> x_j [[x1, x_s], [x1^m, x_s]], fixing the other generators."""
    return sigma_automorphism(n, m, j, s)


def make_inner(g: Word) -> Automorphism:
    """x -> g x g^-1."""
    return inner(g)


def undetected_conjugator(n: int) -> Word:
    """c = [[x2, x3], [x2, x4]]."""
    if n < 4:
        raise ValueError("needs n >= 4")
    x2, x3, x4 = (Word.generator(n, i) for i in (2, 3, 4))
    return commutator(commutator(x2, x3), commutator(x2, x4))


def undetected_sigma(n: int) -> Automorphism:
    """The automorphism x -> c x c^-1 with c = [[x2, x3], [x2, x4]]."""
    return make_inner(undetected_conjugator(n))


def iota_commutator_sigma(n: int) -> Automorphism:
    """[[i2, i3], [i2, i4]] formed with the right-action product, i_k : x -> x_k x x_k^-1."""
    i2, i3, i4 = (make_inner(Word.generator(n, k)) for k in (2, 3, 4))
    return i2.commutator(i3).commutator(i2.commutator(i4))


def _check_omega_params(m: int, k: int, ctx: SubgroupContext) -> None:
    if ctx.n < 3 or ctx.d < 3:
        raise ValueError("omega_{m,k} needs n >= 3 and d >= 3")
    if not 2 <= m <= ctx.d - 1:
        raise ValueError(f"m must lie in 2..{ctx.d - 1}")
    if not 0 <= k <= ctx.d - 1:
        raise ValueError(f"k must lie in 0..{ctx.d - 1}")


def omega_tail(m: int, k: int, ctx: SubgroupContext) -> Word:
    """The word appended to b[k,2] by omega_{m,k}.

    Conjugating powers x1^j with j >= d are rewritten as b0 b[j-d,3] b0^-1.
    """
    _check_omega_params(m, k, ctx)
    c = ctx.conj_letter
    return c(k + 1, 3) * c(k, 3, -1) * c(m + k, 3) * c(k + 1, 3, -1) * c(k, 3) * c(m + k, 3, -1)


def make_omega(m: int, k: int, ctx: SubgroupContext) -> Automorphism:
    tail = omega_tail(m, k, ctx)
    idx = ctx.index(k, 2)
    b = Word.generator(ctx.rank, idx)
    return Automorphism.from_moves(ctx.rank, {idx: b * tail}, {idx: b * tail.inverse()}, check=False)


def omega_case(m: int, k: int, d: int) -> int:
    if k <= d - 1 - m:
        return 1
    if k <= d - 2:
        return 2
    return 3


def omega_terms(m: int, k: int, ctx: SubgroupContext) -> List[tuple]:
    """The three Magnus generators summing to omega_{m,k} in IA(W)^ab.

    Exponents are read modulo d.
    """
    _check_omega_params(m, k, ctx)
    d = ctx.d
    a = ctx.index(k, 2)
    c = lambda j: ctx.index(j % d, 3)  # noqa: E731
    return [(a, c(m + k), c(k)), (a, c(k + 1), c(m + k)), (a, c(k), c(k + 1))]


def case_sum_vector(m: int, ctx: SubgroupContext) -> List[int]:
    """pi(sigma_m) assembled from the per-case Magnus-generator sums."""
    terms = []
    for k in range(ctx.d):
        terms.extend(omega_terms(m, k, ctx))
    return key_sum(terms, ctx.rank)


# --- the three composite decompositions ---------------------------------------

def _gen(rank: int, i: int, e: int = 1) -> Word:
    return Word.generator(rank, i, e)


def lemma_tail(kind: str, rank: int, i: int, j: int, l: int, m: int, p: int = None) -> Word:
    g = lambda t, e=1: _gen(rank, t, e)  # noqa: E731
    if kind == "L1":
        parts = [g(j), g(l, -1), g(m), g(j, -1), g(l), g(m, -1)]
    elif kind == "L2":
        parts = [g(j), g(l, -1), g(p), g(m), g(p, -1), g(j, -1), g(l), g(p), g(m, -1), g(p, -1)]
    elif kind == "L4":
        parts = [
            g(p), g(j), g(p, -1), g(l, -1), g(p), g(m), g(p, -1), g(p), g(j, -1),
            g(p, -1), g(l), g(p), g(m, -1), g(p, -1),
        ]
    else:
        raise ValueError(f"unknown decomposition {kind}")
    w = Word.identity(rank)
    for part in parts:
        w = w * part
    return w


def lemma_omega(kind: str, rank: int, i: int, j: int, l: int, m: int, p: int = None) -> Automorphism:
    """x_i -> x_i * tail, other generators fixed."""
    tail = lemma_tail(kind, rank, i, j, l, m, p)
    xi = _gen(rank, i)
    return Automorphism.from_moves(rank, {i: xi * tail}, {i: xi * tail.inverse()}, check=False)


def lemma_chain(kind: str, rank: int, i: int, j: int, l: int, m: int, p: int = None) -> Automorphism:
    """The product of Magnus generators claimed to equal ``lemma_omega``."""
    K = lambda *idx: (magnus_conjugation if len(idx) == 2 else magnus_commutator)(rank, *idx)  # noqa: E731
    core = [K(i, l), K(i, m, l), K(i, j, m), K(i, l, j), K(i, l).inverse()]
    if kind == "L1":
        outer = []
    elif kind == "L2":
        outer = [K(m, p)]
    elif kind == "L4":
        outer = [K(j, p), K(m, p)]
    else:
        raise ValueError(f"unknown decomposition {kind}")
    factors = outer + core + [f.inverse() for f in reversed(outer)]
    result = Automorphism.identity(rank)
    for f in factors:
        result = result * f
    return result


def lemma_tau1_terms(i: int, j: int, l: int, m: int) -> List[tuple]:
    """K_{iml} + K_{ijm} + K_{ilj}."""
    return [(i, m, l), (i, j, m), (i, l, j)]


def omega_lemma_instance(m: int, k: int, ctx: SubgroupContext):
    """(kind, i, j, l, m', p) matching omega_{m,k} to one of the decompositions."""
    d = ctx.d
    case = omega_case(m, k, d)
    a = ctx.index(k, 2)
    c3 = lambda j: ctx.index(j, 3)  # noqa: E731
    if case == 1:
        return "L1", a, c3(k + 1), c3(k), c3(m + k), None
    if case == 2:
        return "L2", a, c3(k + 1), c3(k), c3(m + k - d), 1
    return "L4", a, c3(0), c3(d - 1), c3(m - 1), 1


# --- detection ---------------------------------------------------------------

def pi(sigma: Automorphism, ctx: SubgroupContext) -> List[int]:
    """tau_1 coordinates of the restriction of sigma in K_n to W_{n,d}."""
    if not kernel_member(sigma):
        raise NotInKernelError("pi is defined on the kernel of the Magnus representation only")
    return tau1_vector(restrict(sigma, ctx))


@dataclass
class CoordMatrix:
    rows: List[List[int]]
    keys: List[MagnusGenKey] = field(default_factory=list)

    def rank(self) -> int:
        return int_rank(self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([str(k) for k in self.keys])
        writer.writerows(self.rows)
        return buf.getvalue()


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    if any(len(r) != ncols for r in M):
        raise ValueError("rows of unequal length")
    nrows = len(M)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if M[r][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        top = M[rank]
        p = top[col]
        for r in range(rank + 1, nrows):
            row = M[r]
            a = row[col]
            for c in range(col + 1, ncols):
                row[c] = (p * row[c] - a * top[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank1_rows(n: int, d: int) -> CoordMatrix:
    ctx = SubgroupContext(n, d)
    rows = [pi(make_sigma(m, 2, 3, n), ctx) for m in range(2, d)]
    return CoordMatrix(rows, magnus_keys(ctx.rank))


def rank2_rows(n: int, d: int) -> CoordMatrix:
    ctx = SubgroupContext(n, d)
    rows = []
    for m in range(2, d):
        for j in range(2, n + 1):
            for s in range(2, n + 1):
                if s != j:
                    rows.append(pi(make_sigma(m, j, s, n), ctx))
    return CoordMatrix(rows, magnus_keys(ctx.rank))


# --- verifiers -------------------------------------------------------------------

@dataclass
class Report:
    id: str
    params: Dict[str, Any]
    claim: str
    expected: Any
    got: Any
    passed: bool
    millis: float = 0.0
    tool_version: str = __version__
    details: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        out["pass"] = out.pop("passed")
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.id} {self.params}: expected {self.expected}, got {self.got} ({self.millis:.0f} ms)"


def _caps(params: dict) -> None:
    if params.get("n", 0) > MAX_N:
        raise CapExceededError(f"n = {params['n']} exceeds the cap {MAX_N}")
    if params.get("d", 0) > MAX_D:
        raise CapExceededError(f"d = {params['d']} exceeds the cap {MAX_D}")


def _verify_decomposition(kind: str, n: int, indices=None):
    need = 4 if kind == "L1" else 5
    if n < need:
        raise ValueError(f"{kind} needs n >= {need}")
    tuples = [tuple(indices)] if indices else list(itertools.permutations(range(1, n + 1), need))
    bad = []
    for t in tuples:
        i, j, l, m = t[:4]
        p = t[4] if need == 5 else None
        omega = lemma_omega(kind, n, i, j, l, m, p)
        ok = lemma_chain(kind, n, i, j, l, m, p) == omega
        ok = ok and tau1_vector(omega) == key_sum(lemma_tau1_terms(i, j, l, m), n)
        if not ok:
            bad.append(list(t))
    return len(tuples), len(tuples) - len(bad), {"failures": bad[:10]}


def _v_L1(n=4, indices=None):
    return _verify_decomposition("L1", n, indices)


def _v_L2(n=5, indices=None):
    return _verify_decomposition("L2", n, indices)


def _v_L4(n=5, indices=None):
    return _verify_decomposition("L4", n, indices)


def _v_case_sum(n=3, d=4, m=None):
    ctx = SubgroupContext(n, d)
    ms = [m] if m is not None else list(range(2, d))
    bad = []
    for mm in ms:
        sigma = make_sigma(mm, 2, 3, n)
        direct = pi(sigma, ctx)
        ok = direct == case_sum_vector(mm, ctx)
        # each omega against its decomposition, and the product against the restriction
        prod = Automorphism.identity(ctx.rank)
        for k in range(d):
            omega = make_omega(mm, k, ctx)
            kind, i, j, l, mp, p = omega_lemma_instance(mm, k, ctx)
            ok = ok and omega == lemma_chain(kind, ctx.rank, i, j, l, mp, p)
            ok = ok and tau1_vector(omega) == key_sum(omega_terms(mm, k, ctx), ctx.rank)
            prod = prod * omega
        ok = ok and prod == restrict(sigma, ctx)
        if not ok:
            bad.append(mm)
    return len(ms), len(ms) - len(bad), {"failures": bad}


def _v_rank1(n=3, d=5):
    if n < 3 or d < 3:
        raise ValueError("needs n >= 3 and d >= 3")
    return d - 2, rank1_rows(n, d).rank(), {}


def _v_rank2(n=4, d=4):
    if n < 3 or d < 3:
        raise ValueError("needs n >= 3 and d >= 3")
    return (d - 2) * (n - 1) * (n - 2), rank2_rows(n, d).rank(), {}


def expected_tau4_tensor(n: int, i: int):
    """[[[x4, x2], x_i], [x2, x3]] - [[[x3, x2], x_i], [x2, x4]]."""
    return tensor_sub(
        bracket_tensor((((4, 2), i), (2, 3))),
        bracket_tensor((((3, 2), i), (2, 4))),
    )


def tau4_checks(sigma: Automorphism) -> Dict[str, bool]:
    n = sigma.rank
    checks = {"low_degrees_vanish": True, "degree5_nonzero": True, "lie": True, "matches_display": True}
    for i in range(1, n + 1):
        w = Word.generator(n, i, -1) * sigma.images[i - 1]
        s = expand(w, 5)
        if any(s.graded_part(k) for k in range(1, 5)):
            checks["low_degrees_vanish"] = False
        t = s.graded_part(5)
        if not t:
            checks["degree5_nonzero"] = False
        if not dynkin_check(t):
            checks["lie"] = False
        if i >= 2 and t != expected_tau4_tensor(n, i):
            checks["matches_display"] = False
    return checks


def _v_tau4(n=4):
    sigma = undetected_sigma(n)
    checks = tau4_checks(sigma)
    checks["kernel_member"] = kernel_member(sigma)
    checks["depth_is_4"] = johnson_depth(sigma, 5) == 4
    tau4 = tau(sigma, 4)
    checks["tau4_nonzero"] = not tau4.is_zero()
    return True, all(checks.values()), {"checks": checks}


def _v_undetected(n=4, d=3):
    ctx = SubgroupContext(n, d)
    v = pi(undetected_sigma(n), ctx)
    return 0, sum(1 for x in v if x), {}


def _v_n2(samples=100, seed=0):
    rng = random.Random(seed)
    good = 0
    for _ in range(samples):
        w = random_second_derived(rng, 2)
        if kernel_member(make_inner(w)) and metabelian_trivial(w):
            good += 1
    x1, x2 = Word.generator(2, 1), Word.generator(2, 2)
    for w in (commutator(x1, x2), x1, commutator(x1, commutator(x1, x2))):
        if not kernel_member(make_inner(w)) and not metabelian_trivial(w):
            good += 1
    return samples + 3, good, {}


def _v_crossed(samples=200, seed=0, n=3):
    rng = random.Random(seed)
    good = 0
    for _ in range(samples):
        s = random_automorphism(rng, n)
        t = random_automorphism(rng, n)
        if magnus_matrix(s * t) == crossed_rhs(s, t):
            good += 1
    return samples, good, {}


def fox_identity_holds(w: Word) -> bool:
    total = FreeRingElem.zero(w.rank)
    for i in range(1, w.rank + 1):
        total = total + fox_free(w, i) * (FreeRingElem.of_word(Word.generator(w.rank, i)) - 1)
    return total == FreeRingElem.of_word(w) - 1


def _v_foxid(samples=200, seed=0, n=3, max_len=64):
    rng = random.Random(seed)
    good = sum(fox_identity_holds(random_word(rng, n, max_len)) for _ in range(samples))
    return samples, good, {}


VERIFIERS: Dict[str, tuple] = {
    "L1": (_v_L1, "K_il K_iml K_ijm K_ilj K_il^-1 has the stated action and tau_1 = K_iml + K_ijm + K_ilj"),
    "L2": (_v_L2, "conjugating the L1 chain by K_mp gives the stated action, same tau_1"),
    "L4": (_v_L4, "conjugating by K_jp K_mp gives the stated action, same tau_1"),
    "MAYUMI": (_v_case_sum, "pi(sigma_m) equals the case-by-case sum of Magnus generators of W"),
    "RANK1": (_v_rank1, "pi(sigma_2), ..., pi(sigma_{d-1}) are linearly independent"),
    "RANK2": (_v_rank2, "pi(sigma_m^{j,s}) span a free abelian group of rank (d-2)(n-1)(n-2)"),
    "TAU4": (_v_tau4, "conjugation by [[x2,x3],[x2,x4]] lies in K_n with tau_4 a nonzero Lie element of the displayed form"),
    "UNDETECTED": (_v_undetected, "pi of conjugation by [[x2,x3],[x2,x4]] vanishes"),
    "N2": (_v_n2, "inner automorphisms in K_2 are exactly conjugations by [[F2,F2],[F2,F2]]"),
    "CROSSED": (_v_crossed, "r_M(st) = r_M(s)^{t*} r_M(t)"),
    "FOXID": (_v_foxid, "sum_i (dw/dx_i)(x_i - 1) = w - 1"),
}

DEFAULT_PARAMS: Dict[str, dict] = {
    "L1": {"n": 4},
    "L2": {"n": 5},
    "L4": {"n": 5},
    "MAYUMI": {"n": 3, "d": 4},
    "RANK1": {"n": 3, "d": 5},
    "RANK2": {"n": 4, "d": 4},
    "TAU4": {"n": 4},
    "UNDETECTED": {"n": 4, "d": 3},
    "N2": {"samples": 100, "seed": 0},
    "CROSSED": {"samples": 200, "seed": 0, "n": 3},
    "FOXID": {"samples": 200, "seed": 0, "n": 3},
}


def verify(lemma_id: str, **params) -> Report:
    """Run one verifier; unspecified parameters take the defaults above."""
    key = lemma_id.upper()
    if key not in VERIFIERS:
        raise KeyError(f"unknown lemma id {lemma_id!r}; known: {', '.join(VERIFIERS)}")
    fn, claim = VERIFIERS[key]
    merged = dict(DEFAULT_PARAMS[key])
    merged.update({k: v for k, v in params.items() if v is not None})
    _caps(merged)
    start = time.perf_counter()
    expected, got, details = fn(**merged)
    millis = (time.perf_counter() - start) * 1000
    return Report(key, merged, claim, expected, got, expected == got, round(millis, 1), details=details)


def verify_all(params_for: Callable[[str], dict] = None) -> List[Report]:
    return [verify(k, **(params_for(k) if params_for else {})) for k in VERIFIERS]
