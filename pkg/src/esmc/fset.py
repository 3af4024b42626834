"""FSET block cipher: position-dependent byte substitution plus eight
XOR/rotation rounds over 16-byte blocks with a 16-byte key.

The substitution table is a 16x256 matrix holding one rotated copy of the
byte alphabet per block position, so the same plaintext byte maps to a
different value at each of the 16 positions. Encryption substitutes every
byte through its row, then runs eight rounds of "translation" (XOR with a
16-byte sub-key) and "transposition" (a position permutation built from
four circular shifts). Decryption applies the exact inverse of each step
in reverse order.

Blocks are processed independently (ECB style): identical plaintext blocks
at different offsets produce identical ciphertext blocks, and encryption
is fully deterministic for a fixed key. This cipher is implemented for
fidelity and measurement, not as a vetted primitive; do not use it to
protect real data.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidKeyError, MalformedCiphertextError, PaddingError

BLOCK_SIZE = 16
KEY_SIZE = 16
MATRIX_COLS = 256
ROUNDS = 8

_ROW_INDEX = np.arange(BLOCK_SIZE)


@dataclass(frozen=True)
class SubstitutionMatrix:
    """Key-shuffled byte substitution table and its per-row inverse.

    ``m`` is 16x256 where every row is a rotation of the identity row;
    ``inv`` satisfies ``inv[i][m[i][j]] == j``. Both arrays are read-only.
    """

    m: np.ndarray
    inv: np.ndarray


@dataclass(frozen=True)
class SubKeySchedule:
    """Per-round key material drawn from the substitution matrix.

    ``kts[n]`` is the 16-byte XOR sub-key for round n (columns 0..15 of
    row n); ``ktp[n]`` holds the four rotation counts for round n
    (columns 0..3 of row n).
    """

    kts: tuple[bytes, ...]
    ktp: tuple[tuple[int, int, int, int], ...]


def _check_key(key) -> bytes:
    key = bytes(key)
    if len(key) != KEY_SIZE:
        raise InvalidKeyError(f"secret key must be {KEY_SIZE} bytes, got {len(key)}")
    return key


def _check_block(block) -> bytes:
    block = bytes(block)
    if len(block) != BLOCK_SIZE:
        raise ValueError(f"block must be {BLOCK_SIZE} bytes, got {len(block)}")
    return block


def _rot_right(data: bytes, count: int) -> bytes:
    count %= len(data)
    if count == 0:
        return data
    return data[-count:] + data[:-count]


def _rot_left(data: bytes, count: int) -> bytes:
    count %= len(data)
    if count == 0:
        return data
    return data[count:] + data[:count]


def init_matrix(key) -> SubstitutionMatrix:
    """Build the substitution matrix for ``key``.

    Every row starts as the identity row (value j in column j) and is
    right-rotated twice: row i first by key byte (i+1) mod 16, then by
    key byte i. A right rotation by s moves the value at index j to
    index (j+s) mod 256.
    """
    key = _check_key(key)
    rows = [list(range(MATRIX_COLS)) for _ in range(BLOCK_SIZE)]
    for i in range(BLOCK_SIZE):
        rows[i] = _rotate_row(rows[i], key[(i + 1) % KEY_SIZE])
    for i in range(BLOCK_SIZE):
        rows[i] = _rotate_row(rows[i], key[i])

    m = np.array(rows, dtype=np.uint8)
    inv = np.empty_like(m)
    inv[_ROW_INDEX[:, None], m] = np.arange(MATRIX_COLS, dtype=np.uint8)[None, :]
    m.flags.writeable = False
    inv.flags.writeable = False
    return SubstitutionMatrix(m=m, inv=inv)


def _rotate_row(row: list[int], count: int) -> list[int]:
    count %= len(row)
    return row[-count:] + row[:-count] if count else row


def derive_subkeys(matrix: SubstitutionMatrix) -> SubKeySchedule:
    """Extract the eight XOR sub-keys and eight rotation 4-tuples.

    Round n draws both from row n of the matrix: the XOR sub-key is
    columns 0..15, the rotation counts are columns 0..3.
    """
    kts = tuple(bytes(matrix.m[n, :BLOCK_SIZE]) for n in range(ROUNDS))
    ktp = tuple(tuple(int(v) for v in matrix.m[n, :4]) for n in range(ROUNDS))
    return SubKeySchedule(kts=kts, ktp=ktp)


def substitute_block(matrix: SubstitutionMatrix, block) -> bytes:
    """Map each byte through its row: output[i] = m[i][block[i]]."""
    block = _check_block(block)
    return bytes(int(matrix.m[i, b]) for i, b in enumerate(block))


def inverse_map(matrix: SubstitutionMatrix, block) -> bytes:
    """Exact inverse of substitute_block: output[i] = inv[i][block[i]]."""
    block = _check_block(block)
    return bytes(int(matrix.inv[i, b]) for i, b in enumerate(block))


def round_translate(block, kts_n) -> bytes:
    """XOR the block with a 16-byte sub-key. Self-inverse."""
    block = _check_block(block)
    kts_n = _check_block(kts_n)
    return bytes(a ^ b for a, b in zip(block, kts_n))


def round_transpose(block, ktp_n) -> bytes:
    """Permute block positions using four circular shifts.

    Right-rotate the full block by ktp_n[0], right-rotate the first half
    by ktp_n[1], left-rotate the second half by ktp_n[2], rejoin, then
    right-rotate the full block by ktp_n[3]. Counts reduce mod the array
    length (16 for the block, 8 for the halves).
    """
    a1 = _rot_right(_check_block(block), ktp_n[0])
    a2 = _rot_right(a1[:8], ktp_n[1])
    a3 = _rot_left(a1[8:], ktp_n[2])
    return _rot_right(a2 + a3, ktp_n[3])


def round_detranspose(block, ktp_n) -> bytes:
    """Exact inverse of round_transpose for the same rotation counts."""
    a1 = _rot_left(_check_block(block), ktp_n[3])
    a2 = _rot_left(a1[:8], ktp_n[1])
    a3 = _rot_right(a1[8:], ktp_n[2])
    return _rot_left(a2 + a3, ktp_n[0])


def encrypt_block(matrix: SubstitutionMatrix, schedule: SubKeySchedule, block) -> bytes:
    """Substitute, then run the eight translate/transpose rounds in order."""
    state = substitute_block(matrix, block)
    for kts_n, ktp_n in zip(schedule.kts, schedule.ktp):
        state = round_transpose(round_translate(state, kts_n), ktp_n)
    return state


def decrypt_block(matrix: SubstitutionMatrix, schedule: SubKeySchedule, block) -> bytes:
    """Undo the rounds in reverse order, then inverse-map. Exact inverse
    of encrypt_block."""
    state = _check_block(block)
    for kts_n, ktp_n in reversed(list(zip(schedule.kts, schedule.ktp))):
        state = round_translate(round_detranspose(state, ktp_n), kts_n)
    return inverse_map(matrix, state)


def pad(message: bytes) -> bytes:
    """Append v copies of byte v, v = 16 - (len mod 16). Always adds at
    least one byte, so a whole-block pad marks inputs already at a block
    boundary."""
    fill = BLOCK_SIZE - len(message) % BLOCK_SIZE
    return bytes(message) + bytes([fill]) * fill


def unpad(padded: bytes) -> bytes:
    """Strip pad() padding; raises PaddingError if the trailer is not
    v copies of byte v with 1 <= v <= 16."""
    if not padded or len(padded) % BLOCK_SIZE:
        raise PaddingError("padded data must be a positive multiple of 16 bytes")
    fill = padded[-1]
    if not 1 <= fill <= BLOCK_SIZE or padded[-fill:] != bytes([fill]) * fill:
        raise PaddingError("invalid padding trailer")
    return padded[:-fill]


class FsetCipher:
    """A key bound to its substitution matrix and sub-key schedule.

    Building the tables once and reusing the instance keeps per-message
    work down to the cipher rounds themselves. Instances are immutable
    after construction and safe to share between threads.
    """

    def __init__(self, key):
        self.matrix = init_matrix(key)
        self.schedule = derive_subkeys(self.matrix)
        self._kts = np.array([list(k) for k in self.schedule.kts], dtype=np.uint8)
        identity = bytes(range(BLOCK_SIZE))
        # round_transpose is a pure position permutation; applying it to the
        # identity block yields, at each output index, the input index to read.
        self._enc_perm = [
            np.array(list(round_transpose(identity, t)), dtype=np.intp)
            for t in self.schedule.ktp
        ]
        self._dec_perm = [
            np.array(list(round_detranspose(identity, t)), dtype=np.intp)
            for t in self.schedule.ktp
        ]

    def encrypt_block(self, block) -> bytes:
        return encrypt_block(self.matrix, self.schedule, block)

    def decrypt_block(self, block) -> bytes:
        return decrypt_block(self.matrix, self.schedule, block)

    def encrypt(self, message: bytes) -> bytes:
        """Pad, then encrypt every block. Output length is the padded
        length. Blocks are independent, so the whole message is processed
        as one array; the result is bit-identical to a per-block loop."""
        data = np.frombuffer(pad(message), dtype=np.uint8).reshape(-1, BLOCK_SIZE)
        state = self.matrix.m[_ROW_INDEX, data]
        for n in range(ROUNDS):
            state ^= self._kts[n]
            state = state[:, self._enc_perm[n]]
        return state.tobytes()

    def decrypt(self, ciphertext: bytes) -> bytes:
        """Decrypt every block, then unpad."""
        if not ciphertext or len(ciphertext) % BLOCK_SIZE:
            raise MalformedCiphertextError(
                f"ciphertext length {len(ciphertext)} is not a positive multiple of {BLOCK_SIZE}"
            )
        state = np.frombuffer(ciphertext, dtype=np.uint8).reshape(-1, BLOCK_SIZE)
        for n in reversed(range(ROUNDS)):
            state = state[:, self._dec_perm[n]]
            state = state ^ self._kts[n]
        return unpad(self.matrix.inv[_ROW_INDEX, state].tobytes())


def encrypt_message(key, message: bytes) -> bytes:
    """One-shot encryption; builds the tables for ``key`` on each call."""
    return FsetCipher(key).encrypt(message)


def decrypt_message(key, ciphertext: bytes) -> bytes:
    """One-shot inverse of encrypt_message."""
    return FsetCipher(key).decrypt(ciphertext)
