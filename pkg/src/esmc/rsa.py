"""Textbook RSA over Python integers.

Encryption is the bare modular exponentiation c = m^e mod n with no
randomized padding, so it is deterministic and malleable by design. Byte
sequences are carried through a length-prefixed chunk codec that is
reversible for every input, including leading and trailing zero bytes.
Suitable for desk-scale keys and protocol plumbing, not for protecting
real data.
"""

import math
import random
from dataclasses import dataclass
from itertools import count
from pathlib import Path

from .errors import (
    CorruptCiphertextError,
    InvalidExponentError,
    InvalidPrimeError,
    KeyFormatError,
    ModulusTooSmallError,
    OutOfRangeError,
)

DEFAULT_EXPONENT = 65537
DEFAULT_MODULUS_BITS = 512
MILLER_RABIN_ROUNDS = 40

PUBLIC_KEY_MAGIC = "ESMC-PUB v1"
PRIVATE_KEY_MAGIC = "ESMC-PRV v1"

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_sysrand = random.SystemRandom()


@dataclass(frozen=True)
class RsaPublicKey:
    e: int
    n: int


@dataclass(frozen=True)
class RsaPrivateKey:
    d: int
    n: int


@dataclass(frozen=True)
class RsaKeyPair:
    public: RsaPublicKey
    private: RsaPrivateKey


@dataclass(frozen=True)
class RsaCiphertext:
    """Encrypted byte sequence: chunk integers all below the modulus,
    serialized big-endian at ``modulus_len`` bytes each."""

    modulus_len: int
    chunks: tuple[int, ...]


def is_probable_prime(n: int, rounds: int = MILLER_RABIN_ROUNDS, rng=None) -> bool:
    """Miller-Rabin test with random bases (plus a small-prime screen)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    rng = rng if rng is not None else _sysrand
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def generate_prime(bits: int, rng) -> int:
    """Draw a probable prime of exactly ``bits`` bits (top bit set) from
    ``rng``, retrying until the primality test passes."""
    if bits < 8:
        raise ValueError(f"prime size must be at least 8 bits, got {bits}")
    while True:
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(candidate, rng=rng):
            return candidate


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def keygen(p: int, q: int, e: int) -> RsaKeyPair:
    """Assemble a keypair from explicit primes and public exponent.

    n = p*q, and d is the inverse of e modulo (p-1)(q-1), normalized to
    0 < d < totient. The caller is responsible for the primality of p
    and q; only distinctness is checked here.
    """
    if p == q:
        raise InvalidPrimeError("p and q must be distinct primes")
    n = p * q
    phi = (p - 1) * (q - 1)
    if not 1 < e < phi:
        raise InvalidExponentError(f"e must satisfy 1 < e < {phi}, got {e}")
    g, x, _ = _extended_gcd(e, phi)
    if g != 1:
        raise InvalidExponentError(f"e={e} is not coprime with totient {phi} (gcd={g})")
    d = x % phi
    return RsaKeyPair(public=RsaPublicKey(e=e, n=n), private=RsaPrivateKey(d=d, n=n))


def pick_exponent(phi: int, preferred: int = DEFAULT_EXPONENT) -> int:
    """Return ``preferred`` when usable, otherwise the smallest odd
    exponent >= 3 coprime with ``phi``."""
    if 1 < preferred < phi and math.gcd(preferred, phi) == 1:
        return preferred
    for e in count(3, 2):
        if e >= phi:
            raise InvalidExponentError(f"no usable exponent below totient {phi}")
        if math.gcd(e, phi) == 1:
            return e


def generate_keypair(bits: int = DEFAULT_MODULUS_BITS, rng=None) -> RsaKeyPair:
    """Generate a keypair with a roughly ``bits``-bit modulus."""
    rng = rng if rng is not None else _sysrand
    p = generate_prime((bits + 1) // 2, rng)
    q = generate_prime(bits // 2, rng)
    while q == p:
        q = generate_prime(bits // 2, rng)
    e = pick_exponent((p - 1) * (q - 1))
    return keygen(p, q, e)


def encrypt_int(m: int, pub: RsaPublicKey) -> int:
    if not 0 <= m < pub.n:
        raise OutOfRangeError(f"plaintext integer must be in [0, n), got {m}")
    return pow(m, pub.e, pub.n)


def decrypt_int(c: int, priv: RsaPrivateKey) -> int:
    if not 0 <= c < priv.n:
        raise OutOfRangeError(f"ciphertext integer must be in [0, n), got {c}")
    return pow(c, priv.d, priv.n)


def modulus_len(n: int) -> int:
    """Serialized width of one chunk: the byte length of the modulus."""
    return (n.bit_length() + 7) // 8


def _chunk_width(n: int) -> int:
    # Widest byte width at which every possible value stays below n.
    return (n.bit_length() - 1) // 8


def encrypt_bytes(data: bytes, pub: RsaPublicKey) -> RsaCiphertext:
    """Encrypt an arbitrary byte sequence chunk by chunk.

    Each plaintext chunk is one block of _chunk_width(n) bytes: a length
    byte, the data bytes, then zero fill. Keeping the length byte inside
    the block guarantees every encoded value is below the modulus and
    makes the codec reversible for data with trailing zeros.
    """
    width = _chunk_width(pub.n)
    capacity = width - 1
    if capacity < 1:
        raise ModulusTooSmallError(
            f"{pub.n.bit_length()}-bit modulus leaves no room for data in the chunk codec"
        )
    data = bytes(data)
    chunks = []
    for off in range(0, len(data), capacity):
        run = data[off:off + capacity]
        block = bytes([len(run)]) + run.ljust(capacity, b"\x00")
        chunks.append(encrypt_int(int.from_bytes(block, "big"), pub))
    return RsaCiphertext(modulus_len=modulus_len(pub.n), chunks=tuple(chunks))


def decrypt_bytes(ct: RsaCiphertext, priv: RsaPrivateKey) -> bytes:
    """Inverse of encrypt_bytes."""
    width = _chunk_width(priv.n)
    capacity = width - 1
    if capacity < 1:
        raise ModulusTooSmallError(
            f"{priv.n.bit_length()}-bit modulus leaves no room for data in the chunk codec"
        )
    if ct.modulus_len != modulus_len(priv.n):
        raise CorruptCiphertextError(
            f"chunk width {ct.modulus_len} does not match the key modulus "
            f"({modulus_len(priv.n)} bytes)"
        )
    out = bytearray()
    for idx, c in enumerate(ct.chunks):
        if not 0 <= c < priv.n:
            raise CorruptCiphertextError(f"chunk {idx} is not below the modulus")
        m = decrypt_int(c, priv)
        try:
            block = m.to_bytes(width, "big")
        except OverflowError:
            raise CorruptCiphertextError(
                f"chunk {idx} decrypts outside the {width}-byte chunk width"
            ) from None
        length = block[0]
        if length > capacity:
            raise CorruptCiphertextError(
                f"chunk {idx} declares {length} data bytes, maximum is {capacity}"
            )
        out += block[1:1 + length]
    return bytes(out)


def save_public_key(pub: RsaPublicKey, path) -> None:
    Path(path).write_text(f"{PUBLIC_KEY_MAGIC}\n{pub.e}\n{pub.n}\n")


def save_private_key(priv: RsaPrivateKey, path) -> None:
    Path(path).write_text(f"{PRIVATE_KEY_MAGIC}\n{priv.d}\n{priv.n}\n")


def load_public_key(path) -> RsaPublicKey:
    e, n = _parse_key_file(path, PUBLIC_KEY_MAGIC)
    return RsaPublicKey(e=e, n=n)


def load_private_key(path) -> RsaPrivateKey:
    d, n = _parse_key_file(path, PRIVATE_KEY_MAGIC)
    return RsaPrivateKey(d=d, n=n)


def _parse_key_file(path, magic: str) -> tuple[int, int]:
    # Three lines: magic, exponent, modulus, with a required trailing newline.
    lines = Path(path).read_text().split("\n")
    if len(lines) != 4 or lines[3] != "":
        raise KeyFormatError(f"{path}: expected exactly three lines and a trailing newline")
    if lines[0] != magic:
        raise KeyFormatError(f"{path}: bad magic line {lines[0]!r}, expected {magic!r}")
    if not (lines[1].isdigit() and lines[2].isdigit()):
        raise KeyFormatError(f"{path}: exponent and modulus must be decimal integers")
    exponent, n = int(lines[1]), int(lines[2])
    if exponent <= 0 or n <= 0:
        raise KeyFormatError(f"{path}: exponent and modulus must be positive")
    return exponent, n
