"""Deterministic seed derivation for the randomized verification suites.

Every randomized check owns a tag; the effective 64-bit seed is derived from
(user seed, tag) so that checks are independent of each other and reproducible
from the single seed echoed in reports.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(seed: int, tag: str) -> int:
    digest = hashlib.sha256(f"{seed}:{tag}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def make_rng(seed: int, tag: str = "") -> random.Random:
    return random.Random(derive_seed(seed, tag) if tag else seed)
