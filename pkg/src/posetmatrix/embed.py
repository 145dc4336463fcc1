"""Backtracking injection search shared by order-into-order and order-into-family embedding.

The target side is abstract: indices 0..T-1 with bitmask tables sup[t] / sub[t]
listing the targets strictly above / below t.  The source is a poset-like
object exposing n, less(i, j), up and down bitmasks.  Weak mode preserves
relations one way (x < y forces image above image); induced mode preserves
both relations and incomparabilities.
"""

from __future__ import annotations


def degree_filter(p, sup: list[int], sub: list[int]) -> list[int]:
    """cand0[x]: targets whose up/down degrees can accommodate source element x.

    Valid for both modes: any embedding maps the up-set of x injectively into
    the up-set of its image, and likewise below.
    """
    t_count = len(sup)
    sus = [m.bit_count() for m in sup]
    sds = [m.bit_count() for m in sub]
    out = []
    for x in range(p.n):
        need_up = p.up[x].bit_count()
        need_dn = p.down[x].bit_count()
        mask = 0
        for t in range(t_count):
            if sus[t] >= need_up and sds[t] >= need_dn:
                mask |= 1 << t
        out.append(mask)
    return out


def find_order_embedding(
    p,
    sup: list[int],
    sub: list[int],
    universe: int,
    induced: bool,
    pin: tuple[int, int] | None = None,
    cand0: list[int] | None = None,
) -> tuple[int, ...] | None:
    """First injection of p into the targets of `universe`, or None.

    `pin`, when given, forces source element pin[0] onto target pin[1].
    Candidates are scanned in increasing target order, so the witness is
    deterministic.  `cand0` may carry a precomputed degree_filter.
    """
    k = p.n
    if k == 0:
        return ()
    if universe.bit_count() < k:
        return None
    if cand0 is None:
        cand0 = degree_filter(p, sup, sub)
    assign = [0] * k
    less = p.less

    def dfs(x: int, used: int) -> bool:
        if x == k:
            return True
        cand = universe & cand0[x] & ~used
        if pin is not None and pin[0] == x:
            cand &= 1 << pin[1]
        for y in range(x):
            t = assign[y]
            if less(y, x):
                cand &= sup[t]
            elif less(x, y):
                cand &= sub[t]
            elif induced:
                cand &= ~(sup[t] | sub[t])
            if not cand:
                return False
        while cand:
            low = cand & -cand
            cand ^= low
            assign[x] = low.bit_length() - 1
            if dfs(x + 1, used | low):
                return True
        return False

    return tuple(assign) if dfs(0, 0) else None
