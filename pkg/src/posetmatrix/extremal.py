"""Exact extremal search: most 1s avoiding patterns, largest families
avoiding a poset.

Both engines are include-first branch and bound over a fixed enumeration
order, so ties break the same way every run and the reported witness is the
lexicographically least maximum one.  Results are optionally cached on disk;
cached witnesses are re-verified before being returned.
"""

from __future__ import annotations

from typing import NamedTuple

from .cache import ResultCache
from .embed import degree_filter, find_order_embedding
from .errors import CapExceeded
from .family import SetFamily, family_contains
from .hypermatrix import HyperMatrix, _match, all_cells, contains
from .poset import Poset, diamond, enumerate_patterns

ENGINE_VERSION = 1
DEFAULT_CELL_CAP = 36
DEFAULT_LA_CAP = 5


class ExResult(NamedTuple):
    value: int
    witness: HyperMatrix


class LaResult(NamedTuple):
    value: int
    witness: SetFamily


class MonotonicityResult(NamedTuple):
    holds: bool
    small_value: int
    big_value: int


class DiamondBoundResult(NamedTuple):
    value: int
    bound: int
    holds: bool


def _check_patterns(dims, patterns) -> tuple[HyperMatrix, ...]:
    pats = tuple(patterns)
    if not pats:
        raise ValueError("need at least one forbidden pattern")
    for a in pats:
        if a.d != len(dims):
            raise ValueError(f"pattern dimension {a.d} does not match host {len(dims)}")
        if a.weight == 0:
            raise ValueError("forbidden patterns must have at least one 1")
    return pats


def ex_exact(
    dims,
    patterns,
    *,
    cell_cap: int = DEFAULT_CELL_CAP,
    allow_over_cap: bool = False,
    cache: ResultCache | None = None,
) -> ExResult:
    """Maximum number of 1s in a dims-shaped 0-1 matrix containing none of
    the patterns, with a witness attaining it."""
    dims = tuple(int(x) for x in dims)
    if not dims or any(x < 1 for x in dims):
        raise ValueError(f"bad dims {dims}")
    pats = _check_patterns(dims, patterns)
    total = 1
    for x in dims:
        total *= x
    if total > cell_cap and not allow_over_cap:
        raise CapExceeded(
            f"{total} cells exceeds the exact search cap ({cell_cap}); "
            "pass allow_over_cap=True (CLI: --cap-override) to run anyway"
        )
    key = {
        "kind": "ex",
        "engine": ENGINE_VERSION,
        "dims": list(dims),
        "patterns": [a.to_obj() for a in pats],
    }
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            wit = HyperMatrix(dims, tuple(tuple(c) for c in hit["witness"]))
            return _checked_ex(ExResult(int(hit["value"]), wit), pats)
    value, ones = _ex_search(dims, pats)
    result = _checked_ex(ExResult(value, HyperMatrix(dims, ones)), pats)
    if cache is not None:
        cache.put(key, {"value": result.value, "witness": [list(c) for c in ones]})
    return result


def _checked_ex(result: ExResult, pats) -> ExResult:
    if result.witness.weight != result.value:
        raise RuntimeError("extremal witness does not attain the reported value")
    for a in pats:
        if contains(result.witness, a):
            raise RuntimeError("extremal witness contains a forbidden pattern")
    return result


def _ex_search(dims, pats):
    cells = all_cells(dims)
    total = len(cells)
    cur: list[tuple[int, ...]] = []
    best = -1
    best_ones: tuple = ()

    def fits(c) -> bool:
        # cells arrive in lex order, so c is the lex-greatest 1 and any new
        # pattern copy must use it as the image of the pattern's last 1
        return all(not _match(dims, cur, a.dims, a.ones, pin_last=c) for a in pats)

    def rec(pos: int) -> None:
        nonlocal best, best_ones
        if len(cur) + (total - pos) <= best:
            return
        if pos == total:
            best = len(cur)
            best_ones = tuple(cur)
            return
        c = cells[pos]
        if fits(c):
            cur.append(c)
            rec(pos + 1)
            cur.pop()
        rec(pos + 1)

    rec(0)
    return best, best_ones


def la_exact(
    n: int,
    p: Poset,
    induced: bool,
    *,
    n_cap: int = DEFAULT_LA_CAP,
    allow_over_cap: bool = False,
    cache: ResultCache | None = None,
) -> LaResult:
    """Largest family of subsets of {1..n} with no copy of p in the
    inclusion order (no induced copy when induced=True)."""
    if n < 0:
        raise ValueError(f"bad ground set size {n}")
    if p.n == 0:
        raise ValueError("the forbidden poset must be nonempty")
    if n > n_cap and not allow_over_cap:
        raise CapExceeded(
            f"ground set size {n} exceeds the exact search cap ({n_cap}); "
            "pass allow_over_cap=True (CLI: --cap-override) to run anyway"
        )
    key = {
        "kind": "la",
        "engine": ENGINE_VERSION,
        "n": n,
        "poset": p.to_obj(),
        "induced": induced,
    }
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            fam = SetFamily.from_sets(n, hit["witness"])
            return _checked_la(LaResult(int(hit["value"]), fam), p, induced)
    value, masks = _la_search(n, p, induced)
    fam = SetFamily(n, masks)
    result = _checked_la(LaResult(value, fam), p, induced)
    if cache is not None:
        cache.put(key, {"value": result.value, "witness": [sorted(s) for s in fam.sets()]})
    return result


def _checked_la(result: LaResult, p: Poset, induced: bool) -> LaResult:
    if result.witness.size != result.value:
        raise RuntimeError("family witness does not attain the reported value")
    if family_contains(result.witness, p, induced):
        raise RuntimeError("family witness contains the forbidden poset")
    return result


def _la_search(n: int, p: Poset, induced: bool):
    ground = sorted(range(1 << n), key=lambda s: (s.bit_count(), s))
    total = len(ground)
    cur: list[int] = []
    best = -1
    best_masks: tuple = ()
    is_chain = not p.incomparable_pairs()

    # sup/sub tables over positions in cur, grown and shrunk with the stack.
    # ground is size-sorted, so a new set is never strictly below an old one.
    sup: list[int] = []
    sub: list[int] = []
    down_len: list[int] = []  # longest chain ending at cur[i], chain fast path

    def fits_chain(s: int) -> bool:
        longest = 1
        for i, m in enumerate(cur):
            if m != s and m & ~s == 0:
                longest = max(longest, down_len[i] + 1)
        return longest <= p.n - 1

    def push(s: int) -> None:
        t = len(cur)
        below = 0
        longest = 1
        for i, m in enumerate(cur):
            if m != s and m & ~s == 0:
                below |= 1 << i
                sup[i] |= 1 << t
                longest = max(longest, down_len[i] + 1)
        cur.append(s)
        sup.append(0)
        sub.append(below)
        down_len.append(longest)

    def pop() -> None:
        t = len(cur) - 1
        cur.pop()
        sup.pop()
        sub.pop()
        down_len.pop()
        for i in range(t):
            sup[i] &= ~(1 << t)

    def fits_generic(s: int) -> bool:
        push(s)
        t = len(cur) - 1
        universe = (1 << len(cur)) - 1
        cand0 = degree_filter(p, sup, sub)
        found = False
        for src in range(p.n):
            if find_order_embedding(p, sup, sub, universe, induced, pin=(src, t), cand0=cand0):
                found = True
                break
        pop()
        return not found

    fits = fits_chain if is_chain else fits_generic

    def rec(pos: int) -> None:
        nonlocal best, best_masks
        if len(cur) + (total - pos) <= best:
            return
        if pos == total:
            best = len(cur)
            best_masks = tuple(cur)
            return
        s = ground[pos]
        if fits(s):
            push(s)
            rec(pos + 1)
            pop()
        rec(pos + 1)

    rec(0)
    return best, best_masks


def ex_monotonicity_check(pattern: HyperMatrix, small, big, **caps) -> MonotonicityResult:
    """Exact check that the 1-density of the extremal value does not grow
    when every side length grows: ex(big)/cells(big) <= ex(small)/cells(small)."""
    small = tuple(int(x) for x in small)
    big = tuple(int(x) for x in big)
    if len(small) != len(big) or len(small) != pattern.d:
        raise ValueError("dimension mismatch between pattern and the two shapes")
    if any(a > b for a, b in zip(small, big)):
        raise ValueError(f"{small} must be coordinatewise at most {big}")
    exs = ex_exact(small, [pattern], **caps).value
    exb = ex_exact(big, [pattern], **caps).value
    cs = 1
    for x in small:
        cs *= x
    cb = 1
    for x in big:
        cb *= x
    return MonotonicityResult(exb * cs <= exs * cb, exs, exb)


def tardos_diamond_check(n: int, **caps) -> DiamondBoundResult:
    """Forbid every 2-dimensional pattern whose 1s order like the diamond;
    the extremal value on the n x n grid is then at most 4n."""
    if n < 1:
        raise ValueError("n must be positive")
    pats = enumerate_patterns(diamond(), 2)
    value = ex_exact((n, n), pats, **caps).value
    return DiamondBoundResult(value, 4 * n, value <= 4 * n)


def random_free_matrix(dims, patterns, rng) -> HyperMatrix:
    """Greedy random maximal pattern-free matrix: shuffle the cells, keep
    each one that does not complete a forbidden pattern."""
    dims = tuple(int(x) for x in dims)
    pats = _check_patterns(dims, patterns)
    cells = list(all_cells(dims))
    rng.shuffle(cells)
    ones: list[tuple[int, ...]] = []
    for c in cells:
        trial = sorted(ones + [c])
        if not any(_match(dims, trial, a.dims, a.ones) for a in pats):
            ones.append(c)
    return HyperMatrix(dims, tuple(ones))
