"""Hybrid secure-message toolkit.

A 128-bit-block substitution/rotation cipher for message bodies, textbook
RSA for encapsulating the session key and the masked SHA-256 digest, and
the bit-exact ESMC container that carries all three. Educational fidelity
project; not a vetted cryptosystem.
"""

from .bench import BenchReport, run_bench
from .digest import compute_hmk, hash_message, recover_hm, verify
from .envelope import EnvelopePackage, deserialize, open_package, seal, serialize
from .errors import (
    AuthenticationError,
    CorruptCiphertextError,
    EsmcError,
    InvalidExponentError,
    InvalidKeyError,
    InvalidPrimeError,
    KeyFormatError,
    MalformedCiphertextError,
    MalformedContainerError,
    MalformedPackageError,
    ModulusTooSmallError,
    OutOfRangeError,
    PaddingError,
)
from .fset import (
    BLOCK_SIZE,
    KEY_SIZE,
    FsetCipher,
    SubKeySchedule,
    SubstitutionMatrix,
    decrypt_block,
    decrypt_message,
    derive_subkeys,
    encrypt_block,
    encrypt_message,
    init_matrix,
    inverse_map,
    pad,
    round_detranspose,
    round_translate,
    round_transpose,
    substitute_block,
    unpad,
)
from .rsa import (
    RsaCiphertext,
    RsaKeyPair,
    RsaPrivateKey,
    RsaPublicKey,
    decrypt_bytes,
    decrypt_int,
    encrypt_bytes,
    encrypt_int,
    generate_keypair,
    generate_prime,
    is_probable_prime,
    keygen,
    load_private_key,
    load_public_key,
    save_private_key,
    save_public_key,
)

__version__ = "0.1.0"
