"""RSA unit tests: key generation against worked-example values, the
modexp primitives against a hand-rolled square-and-multiply oracle, prime
generation against trial division, the byte chunk codec, and key files."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from esmc import rsa
from esmc.errors import (
    CorruptCiphertextError,
    InvalidExponentError,
    InvalidPrimeError,
    KeyFormatError,
    ModulusTooSmallError,
    OutOfRangeError,
)


class TestKeygen:
    def test_worked_example_values(self, fig3_keypair):
        assert fig3_keypair.public.n == 11021
        assert fig3_keypair.public.e == 5
        assert fig3_keypair.private.n == 11021
        assert fig3_keypair.private.d == 4325

    def test_minimum_hand_checkable_case(self):
        pair = rsa.keygen(3, 5, 3)
        assert pair.public.n == 15
        assert pair.private.d == 3  # 3*3 = 9 = 1 mod 8

    def test_non_coprime_exponent_rejected(self):
        with pytest.raises(InvalidExponentError):
            rsa.keygen(103, 107, 4)  # gcd(4, 10812) == 4

    def test_exponent_out_of_range_rejected(self):
        with pytest.raises(InvalidExponentError):
            rsa.keygen(103, 107, 1)
        with pytest.raises(InvalidExponentError):
            rsa.keygen(103, 107, 102 * 106)

    def test_equal_primes_rejected(self):
        with pytest.raises(InvalidPrimeError):
            rsa.keygen(103, 103, 5)

    def test_key_identity_and_normalization(self):
        rng = random.Random(99)
        for _ in range(10):
            p = rsa.generate_prime(24, rng)
            q = rsa.generate_prime(24, rng)
            if p == q:
                continue
            phi = (p - 1) * (q - 1)
            e = rsa.pick_exponent(phi)
            pair = rsa.keygen(p, q, e)
            assert pair.private.d * e % phi == 1
            assert 0 < pair.private.d < phi

    def test_private_exponent_matches_builtin_inverse(self):
        pair = rsa.keygen(103, 107, 5)
        assert pair.private.d == pow(5, -1, 102 * 106)

    def test_pick_exponent_falls_back_from_default(self):
        # totient 10812 < 65537, so the default cannot be used; the smallest
        # usable odd exponent is 5 (gcd(3, 10812) == 3)
        assert rsa.pick_exponent(102 * 106) == 5
        assert rsa.pick_exponent(1 << 30) == 65537


class TestPrimeGeneration:
    def test_eight_bit_primes_are_prime_by_trial_division(self):
        rng = random.Random(1)
        for _ in range(20):
            p = rsa.generate_prime(8, rng)
            assert 128 <= p <= 255
            assert p % 2 == 1
            assert oracles.is_prime_trial_division(p)

    def test_sixteen_bit_primes_are_prime_by_trial_division(self):
        rng = random.Random(2)
        for _ in range(20):
            p = rsa.generate_prime(16, rng)
            assert p.bit_length() == 16
            assert oracles.is_prime_trial_division(p)

    def test_exact_bit_length(self):
        rng = random.Random(3)
        for bits in (8, 9, 33, 64, 128):
            assert rsa.generate_prime(bits, rng).bit_length() == bits

    def test_deterministic_given_seed(self):
        assert rsa.generate_prime(64, random.Random(4)) == rsa.generate_prime(64, random.Random(4))

    def test_too_few_bits_rejected(self):
        with pytest.raises(ValueError):
            rsa.generate_prime(7, random.Random(5))

    def test_distinct_primes_in_keypair(self):
        import math

        rng = random.Random(6)
        for _ in range(5):
            pair = rsa.generate_keypair(64, rng=rng)
            assert pair.public.n.bit_length() >= 60
            # p == q would make n a perfect square
            assert math.isqrt(pair.public.n) ** 2 != pair.public.n

    def test_miller_rabin_agrees_with_trial_division(self):
        rng = random.Random(7)
        for n in range(2, 2000):
            assert rsa.is_probable_prime(n, rng=rng) == oracles.is_prime_trial_division(n)


class TestIntOps:
    def test_fixed_points(self, fig3_keypair):
        assert rsa.encrypt_int(0, fig3_keypair.public) == 0
        assert rsa.encrypt_int(1, fig3_keypair.public) == 1
        assert rsa.decrypt_int(0, fig3_keypair.private) == 0

    def test_small_power_below_modulus(self, fig3_keypair):
        assert rsa.encrypt_int(2, fig3_keypair.public) == 32
        assert rsa.decrypt_int(32, fig3_keypair.private) == 2

    def test_matches_square_and_multiply_oracle(self, fig3_keypair):
        pub, priv = fig3_keypair.public, fig3_keypair.private
        rng = random.Random(8)
        for _ in range(200):
            m = rng.randrange(pub.n)
            c = rsa.encrypt_int(m, pub)
            assert c == oracles.modexp(m, pub.e, pub.n)
            assert rsa.decrypt_int(c, priv) == oracles.modexp(c, priv.d, priv.n) == m

    def test_round_trip_with_big_keypair(self, keypair_512):
        rng = random.Random(9)
        for _ in range(20):
            m = rng.randrange(keypair_512.public.n)
            assert rsa.decrypt_int(rsa.encrypt_int(m, keypair_512.public), keypair_512.private) == m

    def test_out_of_range_rejected(self, fig3_keypair):
        with pytest.raises(OutOfRangeError):
            rsa.encrypt_int(11021, fig3_keypair.public)
        with pytest.raises(OutOfRangeError):
            rsa.encrypt_int(-1, fig3_keypair.public)
        with pytest.raises(OutOfRangeError):
            rsa.decrypt_int(11021, fig3_keypair.private)


class TestByteCodec:
    def test_empty_data_gives_zero_chunks(self, keypair_512):
        ct = rsa.encrypt_bytes(b"", keypair_512.public)
        assert ct.chunks == ()
        assert rsa.decrypt_bytes(ct, keypair_512.private) == b""

    @given(data=st.binary(min_size=0, max_size=256))
    @settings(max_examples=60, deadline=None)
    def test_round_trip(self, data, keypair_512):
        ct = rsa.encrypt_bytes(data, keypair_512.public)
        assert rsa.decrypt_bytes(ct, keypair_512.private) == data

    def test_trailing_and_leading_zeros_survive(self, keypair_512):
        for data in (b"\x00", b"\x00" * 70, b"\x00abc\x00\x00", bytes(200)):
            ct = rsa.encrypt_bytes(data, keypair_512.public)
            assert rsa.decrypt_bytes(ct, keypair_512.private) == data

    def test_chunk_values_below_modulus_and_width(self, keypair_512):
        ct = rsa.encrypt_bytes(bytes(range(200)), keypair_512.public)
        assert ct.modulus_len == 64
        assert all(0 <= c < keypair_512.public.n for c in ct.chunks)

    def test_small_modulus_rejected(self, fig3_keypair):
        # 14-bit modulus: one-byte chunks leave no room beside the length byte
        with pytest.raises(ModulusTooSmallError):
            rsa.encrypt_bytes(bytes(16), fig3_keypair.public)
        ct = rsa.RsaCiphertext(modulus_len=2, chunks=(1,))
        with pytest.raises(ModulusTooSmallError):
            rsa.decrypt_bytes(ct, fig3_keypair.private)

    def test_chunk_at_least_17_bits_works(self):
        # smallest modulus the codec accepts: chunk width 2, one data byte
        pair = rsa.keygen(509, 521, 3)  # n = 265189, 19 bits
        data = b"xyz"
        assert rsa.decrypt_bytes(rsa.encrypt_bytes(data, pair.public), pair.private) == data

    def test_oversized_chunk_rejected(self, keypair_512):
        good = rsa.encrypt_bytes(b"hi", keypair_512.public)
        bad = rsa.RsaCiphertext(modulus_len=good.modulus_len,
                                chunks=(keypair_512.public.n,))
        with pytest.raises(CorruptCiphertextError):
            rsa.decrypt_bytes(bad, keypair_512.private)

    def test_bad_length_byte_rejected(self, keypair_512):
        # encrypt a block whose length prefix exceeds the data capacity
        width = (keypair_512.public.n.bit_length() - 1) // 8
        block = bytes([width]) + bytes(width - 1)  # capacity is width - 1
        c = rsa.encrypt_int(int.from_bytes(block, "big"), keypair_512.public)
        bad = rsa.RsaCiphertext(modulus_len=64, chunks=(c,))
        with pytest.raises(CorruptCiphertextError):
            rsa.decrypt_bytes(bad, keypair_512.private)

    def test_chunk_decrypting_outside_width_rejected(self, keypair_512):
        # pick m in [2^(8*width), n): decrypts fine but cannot fit the chunk
        width = (keypair_512.public.n.bit_length() - 1) // 8
        m = 1 << (8 * width)
        assert m < keypair_512.public.n
        c = rsa.encrypt_int(m, keypair_512.public)
        bad = rsa.RsaCiphertext(modulus_len=64, chunks=(c,))
        with pytest.raises(CorruptCiphertextError):
            rsa.decrypt_bytes(bad, keypair_512.private)

    def test_width_mismatch_rejected(self, keypair_512):
        ct = rsa.encrypt_bytes(b"data", keypair_512.public)
        bad = rsa.RsaCiphertext(modulus_len=ct.modulus_len + 1, chunks=ct.chunks)
        with pytest.raises(CorruptCiphertextError):
            rsa.decrypt_bytes(bad, keypair_512.private)

    def test_tampered_chunk_never_silently_succeeds(self, keypair_512):
        data = bytes(range(64))
        ct = rsa.encrypt_bytes(data, keypair_512.public)
        rng = random.Random(10)
        for _ in range(50):
            chunks = list(ct.chunks)
            idx = rng.randrange(len(chunks))
            chunks[idx] ^= 1 << rng.randrange(chunks[idx].bit_length() or 1)
            bad = rsa.RsaCiphertext(modulus_len=ct.modulus_len, chunks=tuple(chunks))
            try:
                out = rsa.decrypt_bytes(bad, keypair_512.private)
            except CorruptCiphertextError:
                continue
            assert out != data


class TestKeyFiles:
    def test_round_trip(self, tmp_path, keypair_512):
        pub_path = tmp_path / "key.pub"
        priv_path = tmp_path / "key.prv"
        rsa.save_public_key(keypair_512.public, pub_path)
        rsa.save_private_key(keypair_512.private, priv_path)
        assert rsa.load_public_key(pub_path) == keypair_512.public
        assert rsa.load_private_key(priv_path) == keypair_512.private

    def test_exact_file_bytes(self, tmp_path, fig3_keypair):
        pub_path = tmp_path / "key.pub"
        rsa.save_public_key(fig3_keypair.public, pub_path)
        assert pub_path.read_text() == "ESMC-PUB v1\n5\n11021\n"

    @pytest.mark.parametrize(
        "content",
        [
            "ESMC-PRV v1\n5\n11021\n",      # wrong magic for a public key
            "ESMC-PUB v1\n5\n11021",        # missing trailing newline
            "ESMC-PUB v1\n5\n11021\n\n",    # extra blank line
            "ESMC-PUB v1\n-5\n11021\n",     # negative exponent
            "ESMC-PUB v1\nfive\n11021\n",   # non-decimal
            "garbage",
        ],
    )
    def test_malformed_key_files_rejected(self, tmp_path, content):
        path = tmp_path / "bad.pub"
        path.write_text(content)
        with pytest.raises(KeyFormatError):
            rsa.load_public_key(path)
