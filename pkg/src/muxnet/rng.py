"""Deterministic random streams derived from one root seed.

Every component draws from its own stream, derived from the root seed and
a text label.  Reordering components or running them in parallel therefore
never changes what any single component sees.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(root_seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{root_seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(root_seed: int, label: str) -> random.Random:
    """Independent stream for `label`, reproducible from the root seed."""
    return random.Random(derive_seed(root_seed, label))
