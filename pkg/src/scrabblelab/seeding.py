"""Process-independent seed derivation."""

import hashlib

SEED_MASK = (1 << 64) - 1


def derive_seed(*parts: object) -> int:
    """Stable 64-bit seed from an ordered tuple of parts.

    Uses SHA-256 over the parts' reprs, so results do not depend on
    PYTHONHASHSEED or on which worker process computes them.
    """
    payload = "\x1f".join(repr(part) for part in parts).encode("utf-8")
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big") & SEED_MASK
