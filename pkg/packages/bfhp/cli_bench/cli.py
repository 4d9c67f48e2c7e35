"""
Command-line interface.

Subcommands:
    params           write common public parameters
    keygen           write a sender or recipient key file, print the public key
    encrypt          encrypt a message file for a peer's public key
    decrypt          decrypt a ciphertext file, or ABORT
    bfhp-solve       list every in-box solution of A1*u + A2*v = G
    bfhp-experiment  collision rate against 2^-n
    rsa-bfhp-demo    toy RSA round-trip through the reformulation
    bench            timing and size report as CSV

Exit codes: 0 success, 2 usage or domain error, 3 integrity ABORT,
4 file format error. Error messages go to standard error.
"""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from ..bfhp_core import box_count_survey, collision_experiment, solutions_in_box
from ..config import get_settings
from ..errors import (
    BfhpError,
    DomainError,
    FormatError,
    IntegrityAbort,
    MalformedBundleError,
)
from ..numtheory import make_rng
from ..rsa_bfhp import RsaBfhpInstance, lemma1_interval, solve_given_j, toy_rsa
from ..scheme import (
    CiphertextBundle,
    PublicParams,
    RecipientKeyPair,
    Role,
    SenderKeyPair,
    decode_message,
    decrypt_or_raise,
    encode_message,
    encrypt,
    keygen_recipient,
    keygen_sender,
    setup,
)
from .bench import bench_run, format_ratio, table1_reference
from .formats import FileKind, deserialize, serialize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ABORT = 3
EXIT_FORMAT = 4


def _read_params(path: str) -> PublicParams:
    value = deserialize(Path(path).read_bytes(), expected=FileKind.PARAMS).value
    assert isinstance(value, PublicParams)
    return value


def _read_key(path: str, kind: FileKind, params: PublicParams) -> SenderKeyPair | RecipientKeyPair:
    envelope = deserialize(Path(path).read_bytes(), expected=kind)
    if envelope.n != params.n:
        raise FormatError(f"Key built for n={envelope.n}, parameters have n={params.n}")
    key = envelope.value
    assert isinstance(key, SenderKeyPair | RecipientKeyPair)
    try:
        key.verify(params)
    except DomainError as e:
        raise FormatError(f"Key file does not match the parameters: {e}") from e
    return key


def _parse_hex(text: str) -> int:
    try:
        return int(text.removeprefix("0x"), 16)
    except ValueError as e:
        raise DomainError("peer-pub", "must be a hexadecimal integer") from e


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise DomainError("sizes", "must be a comma separated list of integers") from e


def cmd_params(args: argparse.Namespace) -> int:
    params = setup(args.bits, make_rng(args.seed))
    Path(args.out).write_bytes(serialize(params))
    print(f"p = 0x{params.p:x}")
    return EXIT_OK


def cmd_keygen(args: argparse.Namespace) -> int:
    params = _read_params(args.params)
    rng = make_rng(args.seed)
    role = Role(args.role)
    keys = keygen_sender(params, rng) if role is Role.SENDER else keygen_recipient(params, rng)
    Path(args.out).write_bytes(serialize(keys, n=params.n))
    print(f"{keys.e_pub:x}")
    return EXIT_OK


def cmd_encrypt(args: argparse.Namespace) -> int:
    params = _read_params(args.params)
    key = _read_key(args.key, FileKind.SENDER_KEY, params)
    assert isinstance(key, SenderKeyPair)
    e_b = _parse_hex(args.peer_pub)
    m = decode_message(Path(args.msg_file).read_bytes())
    bundle = encrypt(params, key, e_b, m)
    Path(args.out).write_bytes(serialize(bundle, n=params.n))
    return EXIT_OK


def cmd_decrypt(args: argparse.Namespace) -> int:
    params = _read_params(args.params)
    key = _read_key(args.key, FileKind.RECIPIENT_KEY, params)
    assert isinstance(key, RecipientKeyPair)
    envelope = deserialize(Path(args.input).read_bytes(), expected=FileKind.CIPHERTEXT)
    if envelope.n != params.n:
        raise FormatError(f"Ciphertext built for n={envelope.n}, parameters have n={params.n}")
    bundle = envelope.value
    assert isinstance(bundle, CiphertextBundle)
    m = decrypt_or_raise(params, key, bundle)
    Path(args.out).write_bytes(encode_message(m))
    return EXIT_OK


def cmd_bfhp_solve(args: argparse.Namespace) -> int:
    for u, v in solutions_in_box(args.a1, args.a2, args.g, args.lo, args.hi, cap=args.cap):
        print(f"{u} {v}")
    return EXIT_OK


def cmd_bfhp_experiment(args: argparse.Namespace) -> int:
    rng = make_rng(args.seed)
    m = args.m if args.m is not None else 2 * args.n
    estimate = collision_experiment(args.n, m, args.trials, rng)
    print(f"n={estimate.n} m={estimate.m} trials={estimate.trials} hits={estimate.hits}")
    print(f"empirical rate  {float(estimate.fraction):.6g}")
    print(f"claimed 2^-{args.n}    {float(estimate.claimed_rate):.6g}")
    print(f"expected rate   {float(estimate.expected_rate):.6g} (z = {estimate.z_score:+.2f})")
    if args.instances:
        survey = box_count_survey(args.n, m, args.instances, rng)
        print(
            f"in-box solutions: mean {float(survey.mean_count):.3f} over {survey.instances} "
            f"planted instances, estimate 2^(m-n-2) = {survey.expected_width}, "
            f"planted always found: {survey.always_contains_planted}"
        )
    return EXIT_OK


def cmd_rsa_bfhp_demo(args: argparse.Namespace) -> int:
    rng = make_rng(args.seed)
    key = toy_rsa(args.k, args.e, rng, require_invertible=False)
    m = rng.randrange(2, key.N)
    instance = RsaBfhpInstance.from_message(m, args.e, key.N)
    recovered = solve_given_j(instance.C, instance.j, instance.e, instance.N)
    lo, hi = lemma1_interval(instance.k, instance.e)
    print(f"N={key.N} ({instance.k} bits) e={instance.e}")
    print(f"M={m} C={instance.C} j={instance.j} recovered M={recovered}")
    print(f"j inside ({lo}, {hi}): {lo < instance.j < hi}")
    return EXIT_OK if recovered == m else EXIT_USAGE


def cmd_bench(args: argparse.Namespace) -> int:
    report = bench_run(
        _parse_sizes(args.sizes),
        args.trials,
        make_rng(args.seed),
        runs=args.runs,
        warmups=args.warmups,
    )
    csv_text = report.to_csv()
    if args.out == "-":
        sys.stdout.write(csv_text)
        summary = sys.stderr
    else:
        Path(args.out).write_text(csv_text)
        summary = sys.stdout

    print("Reference figures (input block of n bits):", file=summary)
    for ref in table1_reference():
        print(
            f"  {ref.algorithm:<5} enc {ref.encryption:<13} dec {ref.decryption:<13} "
            f"|M|:|C| {ref.ratio_mc:<7} |M|:|E| {ref.ratio_me}",
            file=summary,
        )
    for n in sorted({row.n for row in report.rows}):
        print(f"  n={n}: modexp/encrypt speedup {format_ratio(report.speedup(n), 1)}", file=summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bfhp", description="BFHP cryptosystem toolkit and benchmark harness."
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(
        name: str, handler: Callable[[argparse.Namespace], int], help_text: str
    ) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    def seed(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=None, help="Seed for reproducible runs")

    p = add("params", cmd_params, "Generate common public parameters")
    p.add_argument("--bits", type=int, required=True, help="Security size n")
    p.add_argument("--out", required=True, help="Parameters file to write")
    seed(p)

    p = add("keygen", cmd_keygen, "Generate a key pair")
    p.add_argument("--params", required=True)
    p.add_argument("--role", choices=[r.value for r in Role], required=True)
    p.add_argument("--out", required=True, help="Key file to write")
    seed(p)

    p = add("encrypt", cmd_encrypt, "Encrypt a message file")
    p.add_argument("--params", required=True)
    p.add_argument("--key", required=True, help="Sender key file")
    p.add_argument("--peer-pub", required=True, help="Recipient public key e_B as hex")
    p.add_argument("--msg-file", required=True, help="Message as big-endian bytes, M < p")
    p.add_argument("--out", required=True, help="Ciphertext file to write")

    p = add("decrypt", cmd_decrypt, "Decrypt a ciphertext file")
    p.add_argument("--params", required=True)
    p.add_argument("--key", required=True, help="Recipient key file")
    p.add_argument("--in", dest="input", required=True, help="Ciphertext file")
    p.add_argument("--out", required=True, help="Plaintext file to write")

    p = add("bfhp-solve", cmd_bfhp_solve, "Enumerate in-box BFHP solutions")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--a2", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--lo", type=int, required=True, help="Exclusive lower bound")
    p.add_argument("--hi", type=int, required=True, help="Exclusive upper bound")
    p.add_argument("--cap", type=int, default=None, help="Largest t-range to enumerate")

    p = add("bfhp-experiment", cmd_bfhp_experiment, "Measure the collision rate")
    p.add_argument("--n", type=int, required=True, help="Bit size of A1, A2")
    p.add_argument("--m", type=int, default=None, help="Bit size of u, v (default 2n)")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument(
        "--instances", type=int, default=0, help="Also survey in-box counts over planted instances"
    )
    seed(p)

    p = add("rsa-bfhp-demo", cmd_rsa_bfhp_demo, "Toy RSA round-trip via (C, j)")
    p.add_argument("--k", type=int, default=16, help="Bit size of N")
    p.add_argument("--e", type=int, default=3)
    seed(p)

    p = add("bench", cmd_bench, "Benchmark against a modexp baseline")
    p.add_argument("--sizes", default="128,256,512,1024,2048")
    p.add_argument("--trials", type=int, default=1, help="Sessions per size")
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--warmups", type=int, default=None)
    p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    seed(p)

    return parser


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.getLevelNamesMapping()[get_settings().log_level]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        _configure_logging(args.verbose)
        logger.debug("Running %s", args.command)
        return args.handler(args)
    except IntegrityAbort as e:
        print(str(e), file=sys.stderr)
        return EXIT_ABORT
    except (FormatError, MalformedBundleError) as e:
        print(f"format error: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except (BfhpError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
