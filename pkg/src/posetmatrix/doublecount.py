"""Ordered partitions of a permutation and their prefix-union matrices.

A partition splits a permutation of 1..n into d ordered runs.  Picking an
index into each run and collecting the elements before it yields a prefix
union; the 0-1 matrix of which index vectors land inside a set family is the
bridge between family problems and pattern problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from math import comb, factorial
from typing import NamedTuple

from .errors import CapExceeded, InvariantError
from .family import SetFamily, find_embedding
from .hypermatrix import HyperMatrix, contains
from .poset import Poset, Realizer, realizer_to_matrix
from .rng import make_rng


@dataclass(frozen=True)
class PermutationPartition:
    """d ordered runs whose concatenation is a permutation of 1..n."""

    n: int
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = int(self.n)
        parts = tuple(tuple(int(x) for x in part) for part in self.parts)
        if not parts:
            raise InvariantError("at least one part", "no parts given")
        flat = [x for part in parts for x in part]
        if sorted(flat) != list(range(1, n + 1)):
            raise InvariantError(
                "parts form a permutation", f"concatenation {flat} is not 1..{n}"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "parts", parts)

    @property
    def d(self) -> int:
        return len(self.parts)


def parse_partition(text: str) -> PermutationPartition:
    """Parse "142|5|3" (digits, n <= 9) or "1,4,2|5|3"; empty runs allowed."""
    parts = []
    for chunk in text.split("|"):
        if not chunk:
            parts.append(())
        elif "," in chunk:
            parts.append(tuple(int(x) for x in chunk.split(",")))
        else:
            parts.append(tuple(int(ch) for ch in chunk))
    n = sum(len(p) for p in parts)
    return PermutationPartition(n, tuple(parts))


def format_partition(q: PermutationPartition) -> str:
    joiner = "" if q.n <= 9 else ","
    return "|".join(joiner.join(str(x) for x in part) for part in q.parts)


def prefix_union(q: PermutationPartition, idx) -> frozenset[int]:
    """Union of the first idx[j]-1 entries of each part; idx[j] ranges over
    1..len(part)+1."""
    idx = tuple(int(i) for i in idx)
    if len(idx) != q.d:
        raise ValueError(f"index vector has {len(idx)} entries for {q.d} parts")
    out: set[int] = set()
    for part, i in zip(q.parts, idx):
        if i < 1 or i > len(part) + 1:
            raise ValueError(f"index {i} out of range 1..{len(part) + 1}")
        out.update(part[: i - 1])
    return frozenset(out)


def partition_count(n: int, d: int) -> int:
    """Number of d-part partitions of a permutation of 1..n."""
    return factorial(n) * comb(n + d - 1, d - 1)


def enumerate_partitions(n: int, d: int, cap: int = 10_000_000):
    """All partitions, permutation-major lexicographic then cut positions
    ascending.  Raises immediately when the count would exceed cap."""
    if n < 0 or d < 1:
        raise ValueError(f"need n >= 0 and d >= 1, got n={n} d={d}")
    total = partition_count(n, d)
    if total > cap:
        raise CapExceeded(f"{total} partitions exceeds the enumeration cap ({cap})")
    cut_tuples = list(combinations_with_replacement(range(n + 1), d - 1))

    def gen():
        for perm in permutations(range(1, n + 1)):
            for cuts in cut_tuples:
                bounds = (0,) + cuts + (n,)
                parts = tuple(perm[bounds[j] : bounds[j + 1]] for j in range(d))
                yield PermutationPartition(n, parts)

    return gen()


def count_partitions_with_prefix(n: int, d: int, f: int) -> int:
    """Number of d-part partitions of 1..n having a given f-set among their
    prefix unions: the set fills the run prefixes, its complement the rest."""
    if not 0 <= f <= n:
        raise ValueError(f"need 0 <= f <= n, got f={f} n={n}")
    return (
        factorial(f + d - 1)
        // factorial(d - 1)
        * (factorial(n - f + d - 1) // factorial(d - 1))
    )


def _prefix_mask_lists(q: PermutationPartition) -> list[list[int]]:
    lists = []
    for part in q.parts:
        acc = 0
        row = [0]
        for x in part:
            acc |= 1 << (x - 1)
            row.append(acc)
        lists.append(row)
    return lists


def all_prefix_union_masks(q: PermutationPartition) -> set[int]:
    masks = _prefix_mask_lists(q)
    out = set()
    for pick in product(*masks):
        u = 0
        for m in pick:
            u |= m
        out.add(u)
    return out


def prefix_union_matrix(q: PermutationPartition, fam: SetFamily) -> HyperMatrix:
    """0-1 matrix over index vectors, with a 1 where the prefix union is a
    member of the family."""
    if fam.n != q.n:
        raise ValueError(f"family ground set {fam.n} does not match partition {q.n}")
    member = set(fam.masks)
    masks = _prefix_mask_lists(q)
    dims = tuple(len(part) + 1 for part in q.parts)
    ones = []
    for idx in product(*(range(1, s + 1) for s in dims)):
        u = 0
        for j, i in enumerate(idx):
            u |= masks[j][i - 1]
        if u in member:
            ones.append(idx)
    return HyperMatrix(dims, tuple(ones))


class FreenessReport(NamedTuple):
    trials: int
    seed: int
    violations: list


def prefix_matrix_freeness_check(
    p: Poset, r: Realizer, trials: int, n: int = 5, seed: int = 0
) -> FreenessReport:
    """Randomized check: a family with no induced copy of p yields a
    prefix-union matrix avoiding the poset's permutation matrix.

    Each trial draws a random family, deletes random members until it is
    induced-p-free, draws a random partition, and tests the matrix.
    """
    d = r.order_count
    if d < 2:
        raise ValueError("need a realizer with at least 2 linear orders")
    pattern = realizer_to_matrix(p, r)
    rng = make_rng(seed, f"freeness:{n}:{d}")
    violations = []
    for trial in range(trials):
        masks = tuple(m for m in range(1 << n) if rng.random() < 0.5)
        fam = SetFamily(n, masks)
        while True:
            emb = find_embedding(fam, p, induced=True)
            if emb is None:
                break
            drop = rng.choice(emb)
            fam = SetFamily(n, tuple(m for i, m in enumerate(fam.masks) if i != drop))
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        marks = sorted(rng.sample(range(n + d - 1), d - 1))
        cuts = tuple(m - j for j, m in enumerate(marks))
        bounds = (0,) + cuts + (n,)
        q = PermutationPartition(
            n, tuple(tuple(perm[bounds[j] : bounds[j + 1]]) for j in range(d))
        )
        matrix = prefix_union_matrix(q, fam)
        if contains(matrix, pattern):
            violations.append(
                {
                    "trial": trial,
                    "partition": format_partition(q),
                    "family": [sorted(s) for s in fam.sets()],
                }
            )
    return FreenessReport(trials, seed, violations)


class DoubleCountResult(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def double_count_identity(fam: SetFamily, d: int, cap: int = 10_000_000) -> DoubleCountResult:
    """Count (partition, member) pairs where the member is a prefix union,
    once by the per-size formula and once by enumeration."""
    if d < 1:
        raise ValueError("d must be positive")
    lhs = sum(count_partitions_with_prefix(fam.n, d, m.bit_count()) for m in fam.masks)
    member = set(fam.masks)
    rhs = 0
    for q in enumerate_partitions(fam.n, d, cap):
        rhs += len(all_prefix_union_masks(q) & member)
    return DoubleCountResult(lhs, rhs, lhs == rhs)
