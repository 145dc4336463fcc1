"""Finite strict partial orders: realizers, dimension, and order patterns.

A poset holds labelled elements and, per element, the bitmask of elements
strictly above it.  Construction always validates irreflexivity, antisymmetry
and transitivity, so every Poset in the system is a genuine strict order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .embed import find_order_embedding
from .errors import CapExceeded, DimensionCapExceeded, InvariantError
from .hypermatrix import HyperMatrix


@dataclass(frozen=True)
class Poset:
    """Strict order; up[i] is the bitmask of elements strictly above element i."""

    elements: tuple[str, ...]
    up: tuple[int, ...]

    def __post_init__(self) -> None:
        elements = tuple(str(e) for e in self.elements)
        up = tuple(int(m) for m in self.up)
        n = len(elements)
        if len(set(elements)) != n:
            raise InvariantError("distinct element labels", f"{elements}")
        if len(up) != n:
            raise InvariantError("relation table size", f"{len(up)} rows for {n} elements")
        if any(m < 0 or m >> n for m in up):
            raise InvariantError("relation table range", "mask bits outside the element range")
        for i in range(n):
            if up[i] >> i & 1:
                raise InvariantError("irreflexive", f"{elements[i]} < itself")
            m = up[i]
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                if up[j] >> i & 1:
                    raise InvariantError(
                        "antisymmetric", f"{elements[i]} and {elements[j]} below each other"
                    )
                if up[j] & ~up[i]:
                    raise InvariantError(
                        "transitive",
                        f"{elements[i]} < {elements[j]} but not everything above {elements[j]}",
                    )
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "up", up)

    @property
    def n(self) -> int:
        return len(self.elements)

    def less(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        dn = [0] * self.n
        for i, m in enumerate(self.up):
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                dn[j] |= 1 << i
        return tuple(dn)

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r}") from None

    def relation_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(self.n) if self.less(i, j)]

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        """Unordered incomparable pairs as (i, j) with i < j."""
        return [
            (i, j)
            for i, j in combinations(range(self.n), 2)
            if not self.less(i, j) and not self.less(j, i)
        ]

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i, j in self.relation_pairs():
            if not any(self.less(i, k) and self.less(k, j) for k in range(self.n)):
                out.append((i, j))
        return tuple(out)

    def to_obj(self) -> dict:
        return {
            "elements": list(self.elements),
            "covers": sorted([self.elements[i], self.elements[j]] for i, j in self.covers),
        }

    @classmethod
    def from_pairs(cls, elements, pairs, *, close: bool = False) -> "Poset":
        """Build from (below, above) label pairs; close=True takes the
        transitive closure first (cover-list input)."""
        elements = tuple(str(e) for e in elements)
        pos = {e: i for i, e in enumerate(elements)}
        if len(pos) != len(elements):
            raise InvariantError("distinct element labels", f"{elements}")
        up = [0] * len(elements)
        for a, b in pairs:
            if a not in pos or b not in pos:
                raise InvariantError("relation over listed elements", f"({a}, {b})")
            up[pos[a]] |= 1 << pos[b]
        if close:
            changed = True
            while changed:
                changed = False
                for i in range(len(elements)):
                    m = up[i]
                    acc = m
                    while m:
                        j = (m & -m).bit_length() - 1
                        m &= m - 1
                        acc |= up[j]
                    if acc != up[i]:
                        up[i] = acc
                        changed = True
        return cls(elements, tuple(up))


def load_poset_obj(obj) -> Poset:
    if not isinstance(obj, dict) or "elements" not in obj or "covers" not in obj:
        raise InvariantError("poset object shape", 'need "elements" and "covers" keys')
    return Poset.from_pairs(obj["elements"], [tuple(p) for p in obj["covers"]], close=True)


def load_poset_file(path) -> Poset:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvariantError("poset file is valid JSON", str(exc)) from exc
    return load_poset_obj(obj)


# --- builtins --------------------------------------------------------------


def chain(k: int) -> Poset:
    _positive(k)
    up = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            up[i] |= 1 << j
    return Poset(tuple(f"a{i + 1}" for i in range(k)), tuple(up))


def antichain(k: int) -> Poset:
    _positive(k)
    return Poset(tuple(f"a{i + 1}" for i in range(k)), (0,) * k)


def diamond() -> Poset:
    # a < b, c < d with b, c incomparable
    return Poset.from_pairs("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")], close=True)


def vee(r: int) -> Poset:
    """One minimum below r pairwise incomparable elements."""
    _positive(r)
    tops = [f"b{i + 1}" for i in range(r)]
    return Poset.from_pairs(["a"] + tops, [("a", t) for t in tops], close=True)


def butterfly() -> Poset:
    return Poset.from_pairs(
        ["a1", "a2", "b1", "b2"],
        [(a, b) for a in ("a1", "a2") for b in ("b1", "b2")],
        close=True,
    )


def boolean_lattice(m: int) -> Poset:
    """All subsets of {1..m} ordered by strict inclusion."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    masks = sorted(range(1 << m), key=lambda s: (s.bit_count(), s))
    label = ["{" + ",".join(str(i + 1) for i in range(m) if s >> i & 1) + "}" for s in masks]
    up = []
    for s in masks:
        bits = 0
        for j, t in enumerate(masks):
            if s != t and s & t == s:
                bits |= 1 << j
        up.append(bits)
    return Poset(tuple(label), tuple(up))


_BUILTIN = re.compile(r"^(chain|antichain|vee|boolean):(\d+)$")


def builtin(name: str) -> Poset:
    if name == "diamond":
        return diamond()
    if name == "butterfly":
        return butterfly()
    m = _BUILTIN.match(name)
    if not m:
        raise ValueError(
            f"unknown poset {name!r}; use chain:k, antichain:k, diamond, vee:r, "
            "butterfly, boolean:m, or a JSON file path"
        )
    kind, arg = m.group(1), int(m.group(2))
    if kind == "chain":
        return chain(arg)
    if kind == "antichain":
        return antichain(arg)
    if kind == "vee":
        return vee(arg)
    return boolean_lattice(arg)


def load_poset(spec: str) -> Poset:
    """Accept a builtin name or a JSON file path."""
    if spec == "diamond" or spec == "butterfly" or _BUILTIN.match(spec):
        return builtin(spec)
    return load_poset_file(spec)


def _positive(k: int) -> None:
    if k < 1:
        raise ValueError("size must be positive")


# --- chains and extensions -------------------------------------------------


def height(p: Poset) -> int:
    """Number of elements in a longest chain."""
    if p.n == 0:
        raise ValueError("empty poset")
    memo: dict[int, int] = {}

    def climb(i: int) -> int:
        if i in memo:
            return memo[i]
        best = 1
        m = p.up[i]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            best = max(best, 1 + climb(j))
        memo[i] = best
        return best

    return max(climb(i) for i in range(p.n))


def linear_extensions(p: Poset):
    """All linear extensions as index tuples, lexicographic by index sequence."""
    n = p.n
    down = p.down
    seq: list[int] = []

    def rec(placed: int):
        if len(seq) == n:
            yield tuple(seq)
            return
        for i in range(n):
            if not placed >> i & 1 and down[i] & ~placed == 0:
                seq.append(i)
                yield from rec(placed | 1 << i)
                seq.pop()

    yield from rec(0)


@dataclass(frozen=True)
class Realizer:
    """Ordered tuple of linear orders whose intersection is the poset."""

    extensions: tuple[tuple[int, ...], ...]

    @property
    def order_count(self) -> int:
        return len(self.extensions)

    def labelled(self, p: Poset) -> list[list[str]]:
        return [[p.elements[i] for i in ext] for ext in self.extensions]


def is_realizer(p: Poset, r: Realizer) -> bool:
    n = p.n
    if not r.extensions:
        return False
    positions = []
    for ext in r.extensions:
        if sorted(ext) != list(range(n)):
            return False
        pos = [0] * n
        for rank, e in enumerate(ext):
            pos[e] = rank
        if any(pos[i] > pos[j] for i, j in p.relation_pairs()):
            return False
        positions.append(pos)
    for i in range(n):
        for j in range(n):
            if i != j:
                everywhere = all(pos[i] < pos[j] for pos in positions)
                if everywhere != p.less(i, j):
                    return False
    return True


def dimension(p: Poset, cap: int | None = None, size_cap: int = 8) -> tuple[int, Realizer]:
    """Least t with a t-order realizer, plus the lexicographically least witness.

    Iterative deepening on t.  A tuple of extensions realizes p exactly when,
    for every ordered incomparable pair (x, y), some extension puts y before
    x; so the search is a minimum cover of the reversal requirements by the
    extensions' reversal sets, explored in enumeration order.
    """
    if p.n == 0:
        raise ValueError("empty poset")
    if p.n > size_cap:
        raise CapExceeded(f"poset has {p.n} elements, dimension search cap is {size_cap}")
    exts = list(linear_extensions(p))
    inc = [
        (i, j)
        for i in range(p.n)
        for j in range(p.n)
        if i != j and not p.less(i, j) and not p.less(j, i)
    ]
    bit = {pair: t for t, pair in enumerate(inc)}
    full = (1 << len(inc)) - 1
    cover = []
    for ext in exts:
        pos = [0] * p.n
        for rank, e in enumerate(ext):
            pos[e] = rank
        mask = 0
        for x, y in inc:
            if pos[y] < pos[x]:  # ext refutes x < y
                mask |= 1 << bit[(x, y)]
        cover.append(mask)
    max_cover = max((c.bit_count() for c in cover), default=0)
    t_cap = cap if cap is not None else p.n

    choice: list[int] = []

    def dfs(start: int, covered: int, slots: int) -> bool:
        if covered == full:
            # only reachable with slots left when there is nothing to cover
            if slots:
                if start + slots > len(exts):
                    return False
                choice.extend(range(start, start + slots))
            return True
        if slots == 0:
            return False
        if max_cover * slots < (full & ~covered).bit_count():
            return False
        for e in range(start, len(exts) - slots + 1):
            if cover[e] & ~covered == 0:
                continue  # contributes nothing; minimal witnesses never need it
            choice.append(e)
            if dfs(e + 1, covered | cover[e], slots - 1):
                return True
            choice.pop()
        return False

    for t in range(1, t_cap + 1):
        choice.clear()
        if dfs(0, 0, t):
            return t, Realizer(tuple(exts[e] for e in choice))
    raise DimensionCapExceeded(f"no realizer with at most {t_cap} linear orders")


def realizer_to_matrix(p: Poset, r: Realizer) -> HyperMatrix:
    """Permutation matrix of the poset: element -> its rank in each order.

    Coordinatewise strict dominance between 1s then mirrors the order
    relation exactly, because the orders form a realizer.
    """
    if p.n == 0:
        raise ValueError("empty poset")
    if not is_realizer(p, r):
        raise ValueError("the given orders do not realize the poset")
    positions = []
    for ext in r.extensions:
        pos = [0] * p.n
        for rank, e in enumerate(ext):
            pos[e] = rank + 1
        positions.append(pos)
    ones = tuple(tuple(pos[e] for pos in positions) for e in range(p.n))
    return HyperMatrix((p.n,) * len(r.extensions), ones)


# --- order patterns --------------------------------------------------------


def pattern_order(m: HyperMatrix) -> Poset:
    """Order of the 1s of a matrix under componentwise dominance.

    A 1 sits below another when no coordinate decreases.  Index maps in the
    containment relation are strictly increasing per axis, so they preserve
    this order and its incomparabilities exactly.
    """
    labels = tuple(",".join(map(str, o)) for o in m.ones)
    up = []
    for a in m.ones:
        mask = 0
        for j, b in enumerate(m.ones):
            if a != b and all(x <= y for x, y in zip(a, b)):
                mask |= 1 << j
        up.append(mask)
    return Poset(labels, tuple(up))


def is_isomorphic(p: Poset, q: Poset) -> bool:
    """Brute-force order isomorphism for small posets."""
    if p.n != q.n:
        return False
    if p.n > 8:
        raise CapExceeded("isomorphism test supports at most 8 elements")

    def profile(r: Poset):
        return sorted((r.up[i].bit_count(), r.down[i].bit_count()) for i in range(r.n))

    if profile(p) != profile(q):
        return False
    sup = list(q.up)
    sub = list(q.down)
    match = find_order_embedding(p, sup, sub, (1 << q.n) - 1, induced=True)
    # an induced injection between equal-sized posets is an isomorphism
    return match is not None


def enumerate_patterns(p: Poset, d: int = 2) -> list[HyperMatrix]:
    """All 2-dimensional 0-1 matrices with |p| ones, no all-zero row or
    column, whose dominance order is isomorphic to p.  Deterministic order:
    by (rows, cols), then by 1-set."""
    if d != 2:
        raise ValueError("pattern enumeration is only supported in 2 dimensions")
    m = p.n
    if m == 0 or m > 6:
        raise ValueError("pattern enumeration supports 1..6 elements")
    want_relations = len(p.relation_pairs())
    out: list[HyperMatrix] = []
    for rows in range(1, m + 1):
        for cols in range(1, m + 1):
            if rows * cols < m:
                continue
            cellbox = [(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]
            for combo in combinations(cellbox, m):
                if len({c[0] for c in combo}) != rows or len({c[1] for c in combo}) != cols:
                    continue
                rel = sum(
                    1
                    for a in combo
                    for b in combo
                    if a != b and a[0] <= b[0] and a[1] <= b[1]
                )
                if rel != want_relations:
                    continue
                mat = HyperMatrix((rows, cols), combo)
                if is_isomorphic(pattern_order(mat), p):
                    out.append(mat)
    return out


def subposet_embeds(p: Poset, q: Poset, induced: bool) -> bool:
    """Whether p embeds into q (order-preserving; both ways when induced)."""
    if p.n > q.n:
        return False
    found = find_order_embedding(p, list(q.up), list(q.down), (1 << q.n) - 1, induced)
    return found is not None
