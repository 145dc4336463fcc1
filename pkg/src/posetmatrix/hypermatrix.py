"""d-dimensional 0-1 hypermatrices with sub-grid pattern containment.

A matrix is stored sparsely as the lexicographically sorted tuple of its
1-entry coordinates, 1-based on every axis.  A host "contains" a pattern when
strictly increasing index selections, one per axis and of the pattern's full
side length, map every 1 of the pattern onto a 1 of the host.  The matcher
walks the pattern's 1s in lexicographic order; images then also advance
lexicographically, which caps the candidate pool and lets per-axis spacing
constraints prune early.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import comb, prod

from .errors import InvariantError

Coord = tuple[int, ...]


@dataclass(frozen=True)
class HyperMatrix:
    """Sparse 0-1 hypermatrix: positive side lengths plus sorted 1-entries."""

    dims: tuple[int, ...]
    ones: tuple[Coord, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(s) for s in self.dims)
        if not dims:
            raise InvariantError("positive dimension", "at least one axis is required")
        if any(s < 1 for s in dims):
            raise InvariantError("positive side lengths", f"dims={dims}")
        ones = tuple(tuple(int(c) for c in o) for o in self.ones)
        d = len(dims)
        for o in ones:
            if len(o) != d:
                raise InvariantError(
                    "coordinate arity", f"{o} in a {d}-dimensional matrix"
                )
            if any(not 1 <= o[j] <= dims[j] for j in range(d)):
                raise InvariantError("coordinate within dims", f"{o} outside {dims}")
        if len(set(ones)) != len(ones):
            raise InvariantError("duplicate coordinates", "1-entries must be distinct")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "ones", tuple(sorted(ones)))

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def weight(self) -> int:
        return len(self.ones)

    @property
    def cell_count(self) -> int:
        return prod(self.dims)

    @cached_property
    def ones_set(self) -> frozenset[Coord]:
        return frozenset(self.ones)

    def cell(self, coord) -> int:
        return 1 if tuple(coord) in self.ones_set else 0

    def to_obj(self) -> dict:
        return {"dims": list(self.dims), "ones": [list(o) for o in self.ones]}

    @classmethod
    def from_obj(cls, obj) -> "HyperMatrix":
        if not isinstance(obj, dict) or "dims" not in obj or "ones" not in obj:
            raise InvariantError("matrix object shape", 'need "dims" and "ones" keys')
        return cls(tuple(obj["dims"]), tuple(tuple(o) for o in obj["ones"]))


def load_matrix(path) -> HyperMatrix:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvariantError("matrix file is valid JSON", str(exc)) from exc
    return HyperMatrix.from_obj(obj)


def dump_matrix(m: HyperMatrix, path) -> None:
    with open(path, "w") as fh:
        json.dump(m.to_obj(), fh, sort_keys=True)
        fh.write("\n")


# --- containment -----------------------------------------------------------


def _axis_ok(mp: dict, u: int, v: int, a_side: int, m_side: int) -> bool:
    """Can one axis map send pattern index u to host index v, given the partial
    map mp?  The map must extend to a strictly increasing function on the full
    range [1, a_side] -> [1, m_side], which forces the spacing constraints
    below against every already-mapped index."""
    got = mp.get(u)
    if got is not None:
        return got == v
    if v < u or m_side - v < a_side - u:
        return False
    for w, x in mp.items():
        if w < u:
            if v - x < u - w:
                return False
        elif x - v < w - u:
            return False
    return True


def _match(m_dims, m_ones, a_dims, a_ones, pin_last: Coord | None = None) -> bool:
    """Core matcher.  m_ones and a_ones are lexicographically sorted sequences.

    With pin_last set, the lexicographically last 1 of the pattern is forced
    onto that host coordinate; m_ones must then hold only host 1s that are
    lexicographically smaller (the incremental-search case).
    """
    d = len(m_dims)
    if any(a_dims[j] > m_dims[j] for j in range(d)):
        return False
    maps: list[dict] = [{} for _ in range(d)]

    def assign(one, img):
        done = []
        for j in range(d):
            u, v = one[j], img[j]
            if not _axis_ok(maps[j], u, v, a_dims[j], m_dims[j]):
                for jj, uu in done:
                    del maps[jj][uu]
                return None
            if u not in maps[j]:
                maps[j][u] = v
                done.append((j, u))
        return done

    todo = a_ones
    if pin_last is not None:
        if assign(a_ones[-1], pin_last) is None:
            return False
        todo = a_ones[:-1]
    need = len(todo)
    pool = m_ones

    def dfs(t, start):
        if t == need:
            return True
        one = todo[t]
        for idx in range(start, len(pool) - (need - t - 1)):
            placed = assign(one, pool[idx])
            if placed is None:
                continue
            if dfs(t + 1, idx + 1):
                return True
            for j, u in placed:
                del maps[j][u]
        return False

    return dfs(0, 0)


def contains(host: HyperMatrix, pattern: HyperMatrix) -> bool:
    """Whether `pattern` occurs in `host` on a strictly increasing sub-grid."""
    if host.d != pattern.d:
        raise ValueError(f"dimension mismatch: host is {host.d}-dim, pattern {pattern.d}-dim")
    if pattern.weight == 0:
        raise ValueError("pattern must have at least one 1-entry")
    return _match(host.dims, host.ones, pattern.dims, pattern.ones)


# --- structural predicates -------------------------------------------------


def is_permutation_matrix(m: HyperMatrix) -> bool:
    """k ones in a k^d cube, exactly one per axis-parallel hyperplane."""
    k = m.dims[0]
    if any(s != k for s in m.dims):
        raise ValueError(f"permutation matrices must be cubic, got dims {m.dims}")
    if m.weight != k:
        return False
    return all(len({o[j] for o in m.ones}) == k for j in range(m.d))


def identity_matrix(k: int, d: int = 2) -> HyperMatrix:
    """The diagonal permutation matrix of size k^d."""
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    return HyperMatrix((k,) * d, tuple((i,) * d for i in range(1, k + 1)))


def projection(m: HyperMatrix, axis: int) -> HyperMatrix:
    """Delete coordinate `axis` (1-based) from every 1; duplicates collapse."""
    if m.d < 2:
        raise ValueError("projection needs dimension >= 2")
    if not 1 <= axis <= m.d:
        raise ValueError(f"axis {axis} out of range 1..{m.d}")
    j = axis - 1
    dims = m.dims[:j] + m.dims[j + 1 :]
    ones = {o[:j] + o[j + 1 :] for o in m.ones}
    return HyperMatrix(dims, tuple(ones))


def loomis_whitney_holds(m: HyperMatrix) -> bool:
    """|M|^(d-1) <= product over axes of |projection|; exact integers."""
    if m.d < 2:
        raise ValueError("the projection inequality needs dimension >= 2")
    rhs = 1
    for axis in range(1, m.d + 1):
        rhs *= projection(m, axis).weight
    return m.weight ** (m.d - 1) <= rhs


# --- block decomposition ---------------------------------------------------


@dataclass(frozen=True)
class BlockReport:
    """Classification of every side-s block of a host against a permutation pattern.

    A block is "wide" in axis i when its projection along i contains the
    pattern's projection along i; it is "thin" when it holds at least one 1
    but is wide in no axis.  Blocks without 1s are reported separately as
    "empty": they are trivially not wide, but only blocks that actually hold
    a 1 can contribute an occurrence, so the coarse matrix marks exactly the
    thin blocks.  The final blocks on each axis may be smaller than s.
    """

    side: int
    grid: tuple[int, ...]
    wide: dict[Coord, tuple[int, ...]]
    nonempty: frozenset[Coord]
    coarse: HyperMatrix

    @property
    def block_count(self) -> int:
        return prod(self.grid)

    def classify(self, block: Coord) -> str:
        if block in self.wide:
            return "wide"
        if block in self.nonempty:
            return "thin"
        return "empty"

    def thin_blocks(self) -> list[Coord]:
        return list(self.coarse.ones)

    def wide_count(self, axis: int) -> dict[Coord, int]:
        """Number of axis-wide blocks in each blockcolumn along `axis`.

        Blockcolumns are keyed by the block coordinate with `axis` deleted.
        """
        if not 1 <= axis <= len(self.grid):
            raise ValueError(f"axis {axis} out of range")
        counts: dict[Coord, int] = {}
        for b, axes in self.wide.items():
            if axis in axes:
                key = b[: axis - 1] + b[axis:]
                counts[key] = counts.get(key, 0) + 1
        return counts


def wide_block_limit(pattern: HyperMatrix, side: int) -> int:
    """Cap on axis-wide blocks per blockcolumn of a pattern-free host:
    (k-1) * C(side^(d-1), k) for a permutation pattern with k ones."""
    if not is_permutation_matrix(pattern):
        raise ValueError("the wide-block limit needs a permutation pattern")
    k = pattern.dims[0]
    return (k - 1) * comb(side ** (pattern.d - 1), k)


def block_analyze(host: HyperMatrix, pattern: HyperMatrix, side: int) -> BlockReport:
    """Cut the host into side-s blocks and classify each against the pattern."""
    if host.d != pattern.d:
        raise ValueError("host and pattern must have the same dimension")
    if host.d < 2:
        raise ValueError("block analysis needs dimension >= 2")
    if side < 1:
        raise ValueError("block side must be positive")
    if not is_permutation_matrix(pattern):
        raise ValueError("block analysis is defined against a permutation pattern")
    d = host.d
    grid = tuple(-(-n // side) for n in host.dims)
    cells: dict[Coord, list[Coord]] = {}
    for o in host.ones:
        b = tuple((c - 1) // side + 1 for c in o)
        local = tuple(c - (b[j] - 1) * side for j, c in enumerate(o))
        cells.setdefault(b, []).append(local)
    proj_pat = [projection(pattern, ax) for ax in range(1, d + 1)]
    wide: dict[Coord, tuple[int, ...]] = {}
    for b, locs in cells.items():
        bdims = tuple(
            min(host.dims[j], b[j] * side) - (b[j] - 1) * side for j in range(d)
        )
        local = HyperMatrix(bdims, tuple(locs))
        axes = tuple(
            ax
            for ax in range(1, d + 1)
            if contains(projection(local, ax), proj_pat[ax - 1])
        )
        if axes:
            wide[b] = axes
    coarse = HyperMatrix(grid, tuple(b for b in cells if b not in wide))
    return BlockReport(
        side=side,
        grid=grid,
        wide=dict(sorted(wide.items())),
        nonempty=frozenset(cells),
        coarse=coarse,
    )


def all_cells(dims) -> list[Coord]:
    """Every coordinate of the given box, in lexicographic order."""
    return sorted(product(*(range(1, s + 1) for s in dims)))
