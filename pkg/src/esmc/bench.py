"""Throughput measurement for the block cipher.

Timing covers the encrypt/decrypt calls only; building the substitution
matrix and sub-key schedule happens once, outside the measured region.
The monotonic perf_counter clock is used, never wall-clock time. Every run
asserts the payload round-trips before reporting, and the CSV line
(size,iters,enc_bps,dec_bps) leaves room for external baseline numbers to
be placed alongside.
"""

import random
import time
from dataclasses import dataclass

from . import fset


@dataclass
class BenchReport:
    payload_size: int
    iterations: int
    encrypt_bps: float
    decrypt_bps: float
    timer_note: str

    def csv_line(self) -> str:
        return (
            f"{self.payload_size},{self.iterations},"
            f"{self.encrypt_bps:.2f},{self.decrypt_bps:.2f}"
        )

    def summary(self) -> str:
        return (
            f"payload: {self.payload_size} bytes, {self.iterations} iteration(s)\n"
            f"encrypt: {self.encrypt_bps:,.0f} bytes/s ({self.encrypt_bps / 1e6:.2f} MB/s)\n"
            f"decrypt: {self.decrypt_bps:,.0f} bytes/s ({self.decrypt_bps / 1e6:.2f} MB/s)\n"
            f"timer:   {self.timer_note}"
        )


def run_bench(size: int, iters: int, key, rng=None) -> BenchReport:
    """Encrypt (and separately decrypt) a random payload ``iters`` times
    and report mean throughput in bytes per second."""
    if size < fset.BLOCK_SIZE:
        raise ValueError(f"payload size must be at least {fset.BLOCK_SIZE} bytes")
    if iters < 1:
        raise ValueError("iteration count must be at least 1")
    rng = rng if rng is not None else random.SystemRandom()
    payload = rng.randbytes(size)
    cipher = fset.FsetCipher(key)

    start = time.perf_counter()
    for _ in range(iters):
        ciphertext = cipher.encrypt(payload)
    enc_elapsed = max(time.perf_counter() - start, 1e-9)

    start = time.perf_counter()
    for _ in range(iters):
        recovered = cipher.decrypt(ciphertext)
    dec_elapsed = max(time.perf_counter() - start, 1e-9)

    if recovered != payload:
        raise RuntimeError("benchmark payload failed to round-trip")

    resolution = time.get_clock_info("perf_counter").resolution
    return BenchReport(
        payload_size=size,
        iterations=iters,
        encrypt_bps=size * iters / enc_elapsed,
        decrypt_bps=size * iters / dec_elapsed,
        timer_note=f"perf_counter (monotonic), resolution {resolution:g} s",
    )
