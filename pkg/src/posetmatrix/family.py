"""Families of subsets of {1..n} under inclusion, and Lubell-style weights.

Sets are bitmasks (bit i-1 = element i).  A family keeps insertion order so
witnesses round-trip byte-identically, but equality of content is what the
containment routines care about.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .embed import degree_filter, find_order_embedding
from .errors import InvariantError


@dataclass(frozen=True)
class SetFamily:
    """Distinct subsets of {1..n}, kept in the order given."""

    n: int
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        n = int(self.n)
        masks = tuple(int(m) for m in self.masks)
        if n < 0:
            raise InvariantError("ground set size", f"n={n}")
        if len(set(masks)) != len(masks):
            raise InvariantError("duplicate set in family", f"{masks}")
        for m in masks:
            if m < 0 or m >> n:
                raise InvariantError("set element out of range", f"mask {m} with n={n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "masks", masks)

    @property
    def size(self) -> int:
        return len(self.masks)

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(i + 1 for i in range(self.n) if m >> i & 1) for m in self.masks]

    def to_obj(self) -> dict:
        return {"n": self.n, "sets": [sorted(s) for s in self.sets()]}

    @classmethod
    def from_sets(cls, n: int, sets) -> "SetFamily":
        masks = []
        for s in sets:
            m = 0
            for e in s:
                e = int(e)
                if e < 1 or e > n:
                    raise InvariantError("set element out of range", f"{e} with n={n}")
                m |= 1 << (e - 1)
            masks.append(m)
        return cls(n, tuple(masks))


def load_family_obj(obj) -> SetFamily:
    if not isinstance(obj, dict) or "n" not in obj or "sets" not in obj:
        raise InvariantError("family object shape", 'need "n" and "sets" keys')
    return SetFamily.from_sets(int(obj["n"]), obj["sets"])


def load_family(path) -> SetFamily:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvariantError("family file is valid JSON", str(exc)) from exc
    return load_family_obj(obj)


def _inclusion_tables(masks):
    """sup[i] / sub[i] = bitmasks of members strictly containing / contained
    in member i."""
    k = len(masks)
    sup = [0] * k
    sub = [0] * k
    for i in range(k):
        for j in range(k):
            if i != j and masks[i] & ~masks[j] == 0:  # masks[i] subset of masks[j]
                sup[i] |= 1 << j
                sub[j] |= 1 << i
    return sup, sub


def find_embedding(fam: SetFamily, p, induced: bool, require: int | None = None):
    """An injection of poset p into the family (subset order), or None.

    induced=True also forbids extra inclusions between image sets.  require
    pins a family member index that the image must use.
    """
    if p.n == 0:
        return ()
    if p.n > fam.size:
        return None
    sup, sub = _inclusion_tables(fam.masks)
    cand0 = degree_filter(p, sup, sub)
    universe = (1 << fam.size) - 1
    if require is None:
        return find_order_embedding(p, sup, sub, universe, induced, cand0=cand0)
    for src in range(p.n):
        got = find_order_embedding(
            p, sup, sub, universe, induced, pin=(src, require), cand0=cand0
        )
        if got is not None:
            return got
    return None


def family_contains(fam: SetFamily, p, induced: bool) -> bool:
    return find_embedding(fam, p, induced) is not None


def lubell(fam: SetFamily) -> Fraction:
    """Sum of 1/C(n, |S|) over members; at most the number of maximal chains
    through any one set, so antichains give at most 1."""
    return sum(
        (Fraction(1, comb(fam.n, m.bit_count())) for m in fam.masks), Fraction(0)
    )


def shifted_lubell(fam: SetFamily, d: int) -> Fraction:
    """Weight with each member's size shifted by d-1 inside a ground set
    padded by 2d-2, matching the prefix-union construction in d parts."""
    if d < 1:
        raise ValueError("d must be positive")
    big = fam.n + 2 * d - 2
    return sum(
        (Fraction(1, comb(big, m.bit_count() + d - 1)) for m in fam.masks), Fraction(0)
    )


def middle_levels(n: int, m: int) -> SetFamily:
    """Union of the m middle size-levels of the n-cube, smaller sizes first."""
    if n < 0 or m < 1 or m > n + 1:
        raise ValueError(f"need 0 <= n and 1 <= m <= n+1, got n={n} m={m}")
    # center the window: lowest included size is ceil((n-m+1)/2)
    lo = max(0, -(-(n - m + 1) // 2))
    hi = lo + m - 1
    masks = [s for s in range(1 << n) if lo <= s.bit_count() <= hi]
    masks.sort(key=lambda s: (s.bit_count(), s))
    return SetFamily(n, tuple(masks))
