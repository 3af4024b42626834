"""SHA-256 message digests and the XOR key-masking used for authentication.

The 32-byte digest is masked by XOR with the 16-byte secret key repeated
twice, producing a value safe to ship under RSA alongside the ciphertext.
The mask is an involution, so recovery is the same XOR. This is a plain
XOR mask, not an HMAC; its (known) weaknesses are inherited deliberately.
"""

import hashlib
import hmac

DIGEST_SIZE = 32
KEY_SIZE = 16


def hash_message(message: bytes) -> bytes:
    """SHA-256 digest of the message."""
    return hashlib.sha256(message).digest()


def compute_hmk(hm: bytes, ks: bytes) -> bytes:
    """Mask a digest with the secret key: hm XOR (ks || ks)."""
    _check_lengths(hm, ks)
    return bytes(a ^ b for a, b in zip(hm, ks + ks))


def recover_hm(hmk: bytes, ks: bytes) -> bytes:
    """Unmask a digest; exact inverse of compute_hmk."""
    _check_lengths(hmk, ks)
    return bytes(a ^ b for a, b in zip(hmk, ks + ks))


def verify(message: bytes, hm: bytes) -> bool:
    """True iff the message hashes to hm (constant-time comparison)."""
    return hmac.compare_digest(hash_message(message), bytes(hm))


def _check_lengths(digest_value: bytes, ks: bytes) -> None:
    if len(digest_value) != DIGEST_SIZE:
        raise ValueError(f"digest must be {DIGEST_SIZE} bytes, got {len(digest_value)}")
    if len(ks) != KEY_SIZE:
        raise ValueError(f"secret key must be {KEY_SIZE} bytes, got {len(ks)}")
