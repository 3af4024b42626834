"""Exception hierarchy shared by the cipher, RSA, and envelope layers.

Everything raised on bad key material, bad ciphertext, or failed
authentication derives from EsmcError so callers (and the CLI exit-code
mapping) can treat the whole family as "crypto failure".
"""


class EsmcError(Exception):
    """Base class for all crypto-level failures."""


class InvalidKeyError(EsmcError):
    """Secret key is not exactly 16 bytes."""


class PaddingError(EsmcError):
    """Block padding is malformed; surfaces as a decryption failure."""


class MalformedCiphertextError(EsmcError):
    """Ciphertext length is not a positive multiple of the block size."""


class InvalidPrimeError(EsmcError):
    """Key generation was given unusable primes (e.g. p == q)."""


class InvalidExponentError(EsmcError):
    """Public exponent is out of range or not coprime with the totient."""


class OutOfRangeError(EsmcError):
    """Integer plaintext or ciphertext is not in [0, n)."""


class ModulusTooSmallError(EsmcError):
    """Modulus leaves no room for data in the chunk codec."""


class CorruptCiphertextError(EsmcError):
    """An RSA chunk fails codec validation on decryption."""


class KeyFormatError(EsmcError):
    """An on-disk key file does not match the expected text format."""


class MalformedPackageError(EsmcError):
    """A decrypted envelope field has the wrong shape."""


class MalformedContainerError(EsmcError):
    """Serialized container bytes fail structural validation."""


class AuthenticationError(EsmcError):
    """Digest of the decrypted message does not match the transmitted one."""
