"""Command line front end.

usage:
  esmc keygen  (--bits N | --p P --q Q) [--e E] --pub PATH --priv PATH
  esmc encrypt --pub PATH --in FILE --out FILE [--key HEX32 | --passphrase STR]
  esmc decrypt --priv PATH --in FILE --out FILE
  esmc fset    --mode enc|dec --key HEX32 --in FILE --out FILE
  esmc bench   [--size N] [--iters K] [--csv]

Exit codes: 0 success, 1 usage error, 2 crypto or authentication failure,
3 I/O error. Set ESMC_SEED to a decimal integer to make every random draw
(keys, primes) reproducible; unseeded runs use OS entropy.
"""

import argparse
import math
import os
import random
import sys

from . import bench, envelope, fset, rsa
from .errors import EsmcError

SEED_ENV_VAR = "ESMC_SEED"


class UsageError(Exception):
    """Bad flags or flag values; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rng():
    seed_text = os.environ.get(SEED_ENV_VAR)
    if seed_text is None:
        return random.SystemRandom()
    try:
        seed = int(seed_text, 10)
    except ValueError:
        raise UsageError(f"{SEED_ENV_VAR} must be a decimal integer, got {seed_text!r}") from None
    if not 0 <= seed < 2**64:
        raise UsageError(f"{SEED_ENV_VAR} must fit in 64 bits, got {seed}")
    return random.Random(seed)


def _key_from_hex(text: str) -> bytes:
    if len(text) != 32:
        raise UsageError(f"--key must be 32 hex digits (16 bytes), got {len(text)}")
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise UsageError(f"--key is not valid hex: {text!r}") from None


def _key_from_passphrase(text: str) -> bytes:
    # Truncate long passphrases, zero-pad short ones, to exactly 16 bytes.
    raw = text.encode("utf-8")
    return raw[:fset.KEY_SIZE].ljust(fset.KEY_SIZE, b"\x00")


def _read_file(path) -> bytes:
    with open(path, "rb") as handle:
        return handle.read()


def _write_file(path, data: bytes) -> None:
    with open(path, "wb") as handle:
        handle.write(data)


def cmd_keygen(args) -> int:
    if (args.p is None) != (args.q is None):
        raise UsageError("--p and --q must be given together")
    if args.p is not None:
        for name, value in (("--p", args.p), ("--q", args.q)):
            if not rsa.is_probable_prime(value, rng=_rng()):
                raise UsageError(f"{name} value {value} is not prime")
        if args.p == args.q:
            raise UsageError("--p and --q must be distinct")
        phi = (args.p - 1) * (args.q - 1)
        if args.e is not None:
            if not 1 < args.e < phi or math.gcd(args.e, phi) != 1:
                raise UsageError(f"--e value {args.e} is not a usable exponent for these primes")
            e = args.e
        else:
            e = rsa.pick_exponent(phi)
        pair = rsa.keygen(args.p, args.q, e)
    else:
        if args.e is not None:
            raise UsageError("--e is only meaningful with explicit --p/--q")
        if args.bits < 16:
            raise UsageError(f"--bits must be at least 16, got {args.bits}")
        pair = rsa.generate_keypair(args.bits, rng=_rng())
    rsa.save_public_key(pair.public, args.pub)
    rsa.save_private_key(pair.private, args.priv)
    print(f"wrote public key to {args.pub} and private key to {args.priv} "
          f"(modulus {pair.public.n.bit_length()} bits)")
    return 0


def cmd_encrypt(args) -> int:
    if args.key is not None:
        ks = _key_from_hex(args.key)
    elif args.passphrase is not None:
        ks = _key_from_passphrase(args.passphrase)
    else:
        ks = _rng().randbytes(fset.KEY_SIZE)
    pub = rsa.load_public_key(args.pub)
    message = _read_file(args.infile)
    pkg = envelope.seal(message, ks, pub)
    _write_file(args.outfile, envelope.serialize(pkg))
    return 0


def cmd_decrypt(args) -> int:
    priv = rsa.load_private_key(args.priv)
    container = _read_file(args.infile)
    pkg = envelope.deserialize(container)
    message = envelope.open_package(pkg, priv)
    # Only reached when authentication succeeded; nothing is written otherwise.
    _write_file(args.outfile, message)
    return 0


def cmd_fset(args) -> int:
    key = _key_from_hex(args.key)
    data = _read_file(args.infile)
    if args.mode == "enc":
        result = fset.encrypt_message(key, data)
    else:
        result = fset.decrypt_message(key, data)
    _write_file(args.outfile, result)
    return 0


def cmd_bench(args) -> int:
    if args.size < fset.BLOCK_SIZE:
        raise UsageError(f"--size must be at least {fset.BLOCK_SIZE}")
    if args.iters < 1:
        raise UsageError("--iters must be at least 1")
    rng = _rng()
    report = bench.run_bench(args.size, args.iters, key=rng.randbytes(fset.KEY_SIZE), rng=rng)
    print(report.csv_line() if args.csv else report.summary())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="esmc", description="Hybrid secure-message tool")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate an RSA keypair")
    p.add_argument("--bits", type=int, default=rsa.DEFAULT_MODULUS_BITS,
                   help="modulus size for random generation (default 512)")
    p.add_argument("--p", type=int, help="explicit first prime")
    p.add_argument("--q", type=int, help="explicit second prime")
    p.add_argument("--e", type=int, help="explicit public exponent (with --p/--q)")
    p.add_argument("--pub", required=True, help="output path for the public key")
    p.add_argument("--priv", required=True, help="output path for the private key")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="seal a file into an ESMC container")
    p.add_argument("--pub", required=True, help="recipient public key file")
    p.add_argument("--in", dest="infile", required=True, help="plaintext input file")
    p.add_argument("--out", dest="outfile", required=True, help="container output file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--key", help="session key as 32 hex digits")
    group.add_argument("--passphrase", help="session key from a passphrase "
                                            "(truncated/zero-padded to 16 bytes)")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="open an ESMC container")
    p.add_argument("--priv", required=True, help="recipient private key file")
    p.add_argument("--in", dest="infile", required=True, help="container input file")
    p.add_argument("--out", dest="outfile", required=True, help="plaintext output file")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("fset", help="raw block cipher with no envelope (debugging)")
    p.add_argument("--mode", choices=("enc", "dec"), required=True)
    p.add_argument("--key", required=True, help="key as 32 hex digits")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=cmd_fset)

    p = sub.add_parser("bench", help="measure cipher throughput")
    p.add_argument("--size", type=int, default=1 << 20, help="payload bytes (default 1 MiB)")
    p.add_argument("--iters", type=int, default=3, help="iterations (default 3)")
    p.add_argument("--csv", action="store_true",
                   help="emit one line: size,iters,enc_bps,dec_bps")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"esmc: {exc}", file=sys.stderr)
        return 1
    except EsmcError as exc:
        print(f"esmc: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"esmc: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
