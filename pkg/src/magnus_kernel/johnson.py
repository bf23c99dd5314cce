"""Johnson filtration depth, Johnson homomorphisms and tau_1 coordinates.

tau_k sends sigma in A(k) to the map x_i -> class of x_i^-1 x_i^sigma in
L(k+1).  Classes are read off the degree-(k+1) part of the Magnus expansion.

tau_1 coordinates are expressed in the basis of IA^ab given by the Magnus
generators.  The class of [a, b] in degree 2 is a^b, read from the
antisymmetric tensor ab - ba.  For a basis element x_a* (x) (x_b ^ x_c) with
b < c the matching generator is

* K_{a,c} when a == b (conjugation of x_a by x_c),
* K_{a,b} with sign -1 when a == c,
* K_{a,b,c} otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Tuple

from .errors import CapExceededError, FiltrationError
from .fox import require_ia
from .free_group import Automorphism, Word
from .series import LieElement, Tensor, expand, lie_decompose

MAX_TAU_DEGREE = 4
MAX_DEPTH_DEGREE = 5


@dataclass(frozen=True, order=True)
class MagnusGenKey:
    """A Magnus generator K_{a,b} (kind 'conj') or K_{a,b,c} (kind 'comm', b < c)."""

    kind: str
    indices: Tuple[int, ...]

    def __str__(self) -> str:
        return "K[" + ",".join(map(str, self.indices)) + "]"

    def to_json(self, sign: int = 1) -> dict:
        return {"kind": self.kind, "indices": list(self.indices), "sign": sign}


def normalize_key(a: int, b: int, c: int = None) -> Tuple[MagnusGenKey, int]:
    """Canonical key and sign for K_{a,b} or K_{a,b,c} (K_{a,c,b} = K_{a,b,c}^-1).

    K_{a,b,b} is trivial; it returns (None, 0).
    """
    if c is None:
        if a == b:
            raise ValueError("K_{a,b} needs a != b")
        return MagnusGenKey("conj", (a, b)), 1
    if a in (b, c):
        raise ValueError("K_{a,b,c} needs a distinct from b and c")
    if b == c:
        return None, 0
    if b < c:
        return MagnusGenKey("comm", (a, b, c)), 1
    return MagnusGenKey("comm", (a, c, b)), -1


def magnus_keys(rank: int) -> List[MagnusGenKey]:
    """Documented key order: outer loop over a, inner over pairs b < c."""
    keys = []
    for a in range(1, rank + 1):
        for b, c in combinations(range(1, rank + 1), 2):
            if a == b:
                keys.append(MagnusGenKey("conj", (a, c)))
            elif a == c:
                keys.append(MagnusGenKey("conj", (a, b)))
            else:
                keys.append(MagnusGenKey("comm", (a, b, c)))
    return keys


_KEY_INDEX: Dict[int, Dict[MagnusGenKey, int]] = {}


def key_index(rank: int) -> Dict[MagnusGenKey, int]:
    if rank not in _KEY_INDEX:
        _KEY_INDEX[rank] = {k: i for i, k in enumerate(magnus_keys(rank))}
    return _KEY_INDEX[rank]


def _deviation(sigma: Automorphism, i: int) -> Word:
    return Word.generator(sigma.rank, i, -1) * sigma.images[i - 1]


def tau1_coords(sigma: Automorphism) -> Dict[MagnusGenKey, int]:
    """Sparse coordinates of tau_1(sigma) over the Magnus generators."""
    require_ia(sigma)
    coords: Dict[MagnusGenKey, int] = {}
    for a in sigma.moved():
        t = expand(_deviation(sigma, a), 2).graded_part(2)
        for (b, c), v in t.items():
            if b >= c or not v:
                continue
            if a == b:
                key, s = MagnusGenKey("conj", (a, c)), 1
            elif a == c:
                key, s = MagnusGenKey("conj", (a, b)), -1
            else:
                key, s = MagnusGenKey("comm", (a, b, c)), 1
            coords[key] = coords.get(key, 0) + s * v
    return {k: v for k, v in coords.items() if v}


def coords_to_vector(coords: Dict[MagnusGenKey, int], rank: int) -> List[int]:
    index = key_index(rank)
    vec = [0] * len(index)
    for k, v in coords.items():
        vec[index[k]] += v
    return vec


def tau1_vector(sigma: Automorphism) -> List[int]:
    return coords_to_vector(tau1_coords(sigma), sigma.rank)


def key_sum(terms, rank: int) -> List[int]:
    """Dense vector of a formal sum of Magnus generators.

    ``terms`` holds index tuples ``(a, b)`` or ``(a, b, c)`` in any order;
    reversed commutator keys contribute with sign -1.
    """
    index = key_index(rank)
    vec = [0] * len(index)
    for t in terms:
        key, s = normalize_key(*t)
        if key is not None:
            vec[index[key]] += s
    return vec


def coords_to_json(coords: Dict[MagnusGenKey, int]) -> list:
    return [{"key": k.to_json(), "coeff": str(v)} for k, v in sorted(coords.items())]


def johnson_depth(sigma: Automorphism, kmax: int) -> int:
    """Largest k <= kmax with sigma in A(k), i.e. x^-1 x^sigma in Gamma(k+1) for all x."""
    if kmax > MAX_DEPTH_DEGREE:
        raise CapExceededError(f"kmax {kmax} exceeds {MAX_DEPTH_DEGREE}")
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    require_ia(sigma)
    depth = kmax
    for i in sigma.moved():
        low = expand(_deviation(sigma, i), kmax).lowest_nonconstant_degree()
        if low is not None:
            depth = min(depth, low - 1)
    return depth


@dataclass
class JohnsonImage:
    rank: int
    degree: int
    rows: Dict[int, LieElement] = field(default_factory=dict)
    tensors: Dict[int, Tensor] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return all(r.is_zero() for r in self.rows.values())

    def __str__(self) -> str:
        lines = [f"tau_{self.degree}:"]
        for i in sorted(self.rows):
            lines.append(f"  x{i}* (x) {self.rows[i]}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "degree": self.degree,
            "rows": {f"x{i}": r.to_json() for i, r in sorted(self.rows.items())},
        }


def tau(sigma: Automorphism, k: int) -> JohnsonImage:
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > MAX_TAU_DEGREE:
        raise CapExceededError(f"tau_k is only computed for k <= {MAX_TAU_DEGREE}")
    require_ia(sigma)
    image = JohnsonImage(sigma.rank, k)
    for i in range(1, sigma.rank + 1):
        s = expand(_deviation(sigma, i), k + 1)
        low = s.lowest_nonconstant_degree()
        if low is not None and low <= k:
            raise FiltrationError(f"sigma is not in A({k}): x{i}^-1 x{i}^sigma has degree-{low} terms")
        t = s.graded_part(k + 1)
        image.tensors[i] = t
        image.rows[i] = lie_decompose(t, sigma.rank) if t else LieElement(sigma.rank, k + 1, {})
    return image
