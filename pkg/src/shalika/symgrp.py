"""The symmetric-group shadow: ΔS_n acting on r-subsets of {1..2n}.

Permutations are 1-based in the public API (``images[i] = σ(i+1)``), as in
the usual one-line notation. Internally subsets are bitmasks over 2n bits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cosets import CosetLabel, LabelError, check_nr, kl_bounds
from .gf import PrimeField
from .linalg import Matrix

MAX_BRUTE_N = 4


class SizeLimitError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition self ∘ other."""
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i, j in enumerate(self.images, 1):
            out[j - 1] = i
        return Permutation(tuple(out))

    def image_of(self, A: Iterable[int]) -> frozenset:
        return frozenset(self.images[a - 1] for a in A)

    def matrix(self, field: PrimeField | int = 2) -> Matrix:
        from .cosets import _field
        return Matrix.permutation([i - 1 for i in self.images], _field(field))

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    def to_json(self) -> list:
        return list(self.images)

    @classmethod
    def from_json(cls, doc: Sequence[int]) -> "Permutation":
        return cls(tuple(doc))


def permutation_matrix(sigma: Permutation, field: PrimeField | int = 2) -> Matrix:
    return sigma.matrix(field)


@dataclass(frozen=True, order=True)
class SubsetLabel:
    k: int
    l: int


def is_in_delta_sn(sigma: Permutation, n: int) -> bool:
    if sigma.degree != 2 * n:
        raise ValueError(f"expected a permutation of degree {2 * n}, got {sigma.degree}")
    return all(sigma(j) <= n and sigma(n + j) == n + sigma(j) for j in range(1, n + 1))


def subset_label(A: Iterable[int], n: int) -> SubsetLabel:
    A = frozenset(A)
    if any(not 1 <= a <= 2 * n for a in A):
        raise ValueError(f"subset {sorted(A)} not inside 1..{2 * n}")
    low = {a for a in A if a <= n}
    return SubsetLabel(len(low), len({a + n for a in low} & A))


def model_subset(label: CosetLabel) -> frozenset:
    """A_{k,l} = {1..k} ∪ {n+1..n+l} ∪ {n+k+1..n+r-l}."""
    n, r, k, l = label.n, label.r, label.k, label.l
    return frozenset(list(range(1, k + 1)) + list(range(n + 1, n + l + 1)) + list(range(n + k + 1, n + r - l + 1)))


def w_prime(label: CosetLabel) -> Permutation:
    """The permutation whose matrix is w_{k,l}."""
    n, r, k, l = label.n, label.r, label.k, label.l
    s = {}
    for j in range(1, k + 1):
        s[j] = j
    for j in range(n + r - l + 1, 2 * n + 1):
        s[j] = j
    for j in range(1, l + 1):
        s[k + j] = n + j
    for j in range(1, r - k - l + 1):
        s[k + l + j] = n + k + j
    for j in range(1, n - k + 1):
        s[r + j] = k + j
    for j in range(1, k - l + 1):
        s[n + r - k + j] = n + l + j
    return Permutation(tuple(s[j] for j in range(1, 2 * n + 1)))


def delta_orbit_transversal(n: int, r: int) -> list:
    return [(SubsetLabel(lab.k, lab.l), w_prime(lab)) for lab in kl_bounds(n, r)]


# -- brute force ----------------------------------------------------------

def _transposition(m: int, pairs) -> tuple:
    img = list(range(m))
    for a, b in pairs:
        img[a], img[b] = img[b], img[a]
    return tuple(img)


def delta_generators(n: int) -> list:
    """Diagonal adjacent transpositions (i i+1)(n+i n+i+1), 0-based images."""
    return [_transposition(2 * n, [(i, i + 1), (n + i, n + i + 1)]) for i in range(n - 1)]


def young_generators(n: int, r: int) -> list:
    """Adjacent transpositions inside {1..r} and inside {r+1..2n}."""
    m = 2 * n
    return [_transposition(m, [(i, i + 1)]) for i in range(m - 1) if i + 1 != r]


def brute_force_sym_cosets(n: int, r: int) -> list:
    """Partition S_2n into (ΔS_n, S_r × S_{2n-r}) double cosets by closure.

    Returns a list of frozensets of 1-based image tuples, in discovery order
    (seeds taken in lexicographic order of S_2n).
    """
    check_nr(n, r)
    if n > MAX_BRUTE_N:
        raise SizeLimitError(f"brute force limited to n <= {MAX_BRUTE_N}")
    from itertools import permutations

    m = 2 * n
    left = delta_generators(n)
    right = young_generators(n, r)
    seen = set()
    classes = []
    for seed in permutations(range(m)):
        if seed in seen:
            continue
        cls = {seed}
        queue = deque([seed])
        while queue:
            x = queue.popleft()
            # left: g ∘ x ; right: x ∘ h
            for g in left:
                y = tuple(g[i] for i in x)
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
            for h in right:
                y = tuple(x[i] for i in h)
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        seen |= cls
        classes.append(frozenset(tuple(i + 1 for i in x) for x in cls))
    return classes


def delta_orbits_on_subsets(n: int, r: int) -> list:
    """ΔS_n-orbits on r-subsets of {1..2n}, by BFS on bitmasks."""
    check_nr(n, r)
    if n > MAX_BRUTE_N:
        raise SizeLimitError(f"brute force limited to n <= {MAX_BRUTE_N}")
    from itertools import combinations

    m = 2 * n
    gens = delta_generators(n)

    def act(g, mask):
        out = 0
        for i in range(m):
            if mask >> i & 1:
                out |= 1 << g[i]
        return out

    seen = set()
    orbits = []
    for A in combinations(range(m), r):
        mask = sum(1 << a for a in A)
        if mask in seen:
            continue
        orbit = {mask}
        queue = deque([mask])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = act(g, x)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        seen |= orbit
        orbits.append([frozenset(i + 1 for i in range(m) if x >> i & 1) for x in orbit])
    return orbits


def check_sym_bijection(n: int, r: int) -> dict:
    """Compare brute-force double cosets with the w'_{k,l} transversal."""
    classes = brute_force_sym_cosets(n, r)
    reps = {w_prime(lab).images: lab for lab in kl_bounds(n, r)}
    hits = [[reps[x] for x in reps if x in cls] for cls in classes]
    one_each = all(len(h) == 1 for h in hits)
    return {
        "n": n,
        "r": r,
        "classes": len(classes),
        "transversal": len(reps),
        "one_representative_per_class": one_each,
        "ok": len(classes) == len(reps) and one_each,
        "class_sizes": [len(c) for c in classes],
    }


__all__ = [
    "LabelError",
    "Permutation",
    "SizeLimitError",
    "SubsetLabel",
    "brute_force_sym_cosets",
    "check_sym_bijection",
    "delta_orbit_transversal",
    "delta_orbits_on_subsets",
    "is_in_delta_sn",
    "model_subset",
    "permutation_matrix",
    "subset_label",
    "w_prime",
]
