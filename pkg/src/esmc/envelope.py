"""Hybrid seal/open protocol and the bit-exact ESMC container format.

Sealing hashes the message, encrypts the body with the 16-byte secret key,
masks the digest with that key, and encrypts both the key and the masked
digest under the recipient's RSA public key. Opening reverses the steps:
the secret key is always recovered first (nothing else can be read without
it), then the masked digest, then the body; the plaintext is released only
if its digest matches the recovered one.

ESMC container layout (all multi-byte integers big-endian):

    offset 0   magic "ESMC" (4 bytes)
    offset 4   version, 0x01
    offset 5   modulus_len L (u16)
    offset 7   enc_key chunk count (u16), then count*L chunk bytes
    ...        enc_hmk chunk count (u16), then count*L chunk bytes
    ...        body length (u64), then body bytes

No trailing bytes are permitted.
"""

import struct
from dataclasses import dataclass

from . import digest, fset, rsa
from .errors import (
    AuthenticationError,
    InvalidKeyError,
    MalformedContainerError,
    MalformedPackageError,
)

MAGIC = b"ESMC"
VERSION = 1


@dataclass(frozen=True)
class EnvelopePackage:
    """The three transmitted items: RSA-encrypted secret key, RSA-encrypted
    masked digest, and the symmetric ciphertext body."""

    enc_key: rsa.RsaCiphertext
    enc_hmk: rsa.RsaCiphertext
    body: bytes


def seal(message: bytes, ks, pub: rsa.RsaPublicKey) -> EnvelopePackage:
    """Encrypt and authenticate ``message`` for the holder of ``pub``.

    Deterministic: the same (message, ks, pub) always yields an identical
    package.
    """
    ks = bytes(ks)
    if len(ks) != fset.KEY_SIZE:
        raise InvalidKeyError(f"secret key must be {fset.KEY_SIZE} bytes, got {len(ks)}")
    hm = digest.hash_message(message)
    body = fset.encrypt_message(ks, message)
    hmk = digest.compute_hmk(hm, ks)
    return EnvelopePackage(
        enc_key=rsa.encrypt_bytes(ks, pub),
        enc_hmk=rsa.encrypt_bytes(hmk, pub),
        body=body,
    )


def open_package(pkg: EnvelopePackage, priv: rsa.RsaPrivateKey) -> bytes:
    """Recover and authenticate the plaintext; fail-closed.

    Raises AuthenticationError on digest mismatch and never returns an
    unauthenticated plaintext.
    """
    # The secret key must come out first; the body and digest are unreadable
    # without it.
    ks = rsa.decrypt_bytes(pkg.enc_key, priv)
    if len(ks) != fset.KEY_SIZE:
        raise MalformedPackageError(
            f"decrypted secret key is {len(ks)} bytes, expected {fset.KEY_SIZE}"
        )
    hmk = rsa.decrypt_bytes(pkg.enc_hmk, priv)
    if len(hmk) != digest.DIGEST_SIZE:
        raise MalformedPackageError(
            f"decrypted masked digest is {len(hmk)} bytes, expected {digest.DIGEST_SIZE}"
        )
    hm = digest.recover_hm(hmk, ks)
    message = fset.decrypt_message(ks, pkg.body)
    if not digest.verify(message, hm):
        raise AuthenticationError("authentication failed")
    return message


def serialize(pkg: EnvelopePackage) -> bytes:
    """Encode a package as ESMC container bytes."""
    if pkg.enc_key.modulus_len != pkg.enc_hmk.modulus_len:
        raise MalformedPackageError("enc_key and enc_hmk must share one modulus width")
    width = pkg.enc_key.modulus_len
    parts = [struct.pack(">4sBH", MAGIC, VERSION, width)]
    for ct in (pkg.enc_key, pkg.enc_hmk):
        if len(ct.chunks) > 0xFFFF:
            raise MalformedPackageError(f"too many chunks to serialize: {len(ct.chunks)}")
        parts.append(struct.pack(">H", len(ct.chunks)))
        parts.extend(c.to_bytes(width, "big") for c in ct.chunks)
    parts.append(struct.pack(">Q", len(pkg.body)))
    parts.append(pkg.body)
    return b"".join(parts)


class _Reader:
    """Cursor over container bytes that reports the offset of any shortage."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int, what: str) -> bytes:
        if self.pos + size > len(self.data):
            raise MalformedContainerError(
                f"container truncated at byte {self.pos}: "
                f"need {size} bytes for {what}, have {len(self.data) - self.pos}"
            )
        piece = self.data[self.pos:self.pos + size]
        self.pos += size
        return piece

    def take_u16(self, what: str) -> int:
        return struct.unpack(">H", self.take(2, what))[0]

    def take_u64(self, what: str) -> int:
        return struct.unpack(">Q", self.take(8, what))[0]


def deserialize(data: bytes) -> EnvelopePackage:
    """Parse ESMC container bytes, rejecting any structural damage."""
    reader = _Reader(bytes(data))
    magic = reader.take(4, "magic")
    if magic != MAGIC:
        raise MalformedContainerError(f"bad magic {magic!r} at byte 0, expected {MAGIC!r}")
    version = reader.take(1, "version")[0]
    if version != VERSION:
        raise MalformedContainerError(f"unsupported version {version} at byte 4")
    width = reader.take_u16("modulus length")
    if width == 0:
        raise MalformedContainerError("modulus length of zero at byte 5")

    ciphertexts = []
    for name in ("enc_key", "enc_hmk"):
        n_chunks = reader.take_u16(f"{name} chunk count")
        chunks = tuple(
            int.from_bytes(reader.take(width, f"{name} chunk {i}"), "big")
            for i in range(n_chunks)
        )
        ciphertexts.append(rsa.RsaCiphertext(modulus_len=width, chunks=chunks))

    body_len = reader.take_u64("body length")
    if body_len == 0 or body_len % fset.BLOCK_SIZE:
        raise MalformedContainerError(
            f"body length {body_len} is not a positive multiple of {fset.BLOCK_SIZE}"
        )
    body = reader.take(body_len, "body")
    if reader.pos != len(reader.data):
        raise MalformedContainerError(
            f"{len(reader.data) - reader.pos} trailing bytes after byte {reader.pos}"
        )
    return EnvelopePackage(enc_key=ciphertexts[0], enc_hmk=ciphertexts[1], body=body)
