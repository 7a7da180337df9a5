"""Deterministic seed derivation for every stochastic stage.

All randomness in the toolkit flows from a master seed through
``derive_seed(master, stage, *indices)``, so any stage can be recomputed in
isolation and two runs with the same master seed are bit-identical.
"""

from __future__ import annotations

import hashlib


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from an arbitrary (master, stage, index...) path."""
    text = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "little") % (2**63)
