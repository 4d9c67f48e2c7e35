"""
Benchmark harness for the size and speed comparison.

For every size n it measures key generation, encryption and decryption
against an n-bit modular exponentiation baseline, and records the wire
sizes of the message, the transmitted ciphertext (C1, C2, e_A) and the
public key. Ratios come from measured byte lengths.

Timing: each operation gets untimed warmup runs, then an odd number of
timed runs; the reported figure is the median in nanoseconds. Runs are
strictly sequential.
"""

import csv
import io
import logging
import statistics
import time
from collections.abc import Callable, Sequence
from fractions import Fraction

from pydantic import BaseModel, ConfigDict

from ..config import get_settings
from ..errors import DomainError
from ..numtheory import RandomSource, int_to_bytes
from ..scheme import decrypt, encrypt, keygen_recipient, keygen_sender, setup
from ..scheme.cipher import encode_message

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("n", "op", "median_ns", "msg_bits", "ct_bits", "pubkey_bits", "ratio_mc", "ratio_me")
OPERATIONS = ("keygen", "encrypt", "decrypt", "modexp")


class BenchRow(BaseModel):
    n: int
    op: str
    median_ns: int
    msg_bits: int
    ct_bits: int
    pubkey_bits: int

    model_config = ConfigDict(frozen=True)

    @property
    def ratio_mc(self) -> Fraction:
        return Fraction(self.ct_bits, self.msg_bits)

    @property
    def ratio_me(self) -> Fraction:
        return Fraction(self.pubkey_bits, self.msg_bits)


class ReferenceRow(BaseModel):
    """One row of the published comparison table."""

    algorithm: str
    encryption: str
    decryption: str
    ratio_mc: str
    ratio_me: str
    remark: str

    model_config = ConfigDict(frozen=True)


class BenchReport(BaseModel):
    rows: list[BenchRow]

    model_config = ConfigDict(frozen=True)

    def row(self, n: int, op: str) -> BenchRow:
        for r in self.rows:
            if r.n == n and r.op == op:
                return r
        raise KeyError((n, op))

    def speedup(self, n: int) -> Fraction:
        """Baseline median over encrypt median at size n."""
        return Fraction(self.row(n, "modexp").median_ns, max(1, self.row(n, "encrypt").median_ns))

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(
                [
                    r.n,
                    r.op,
                    r.median_ns,
                    r.msg_bits,
                    r.ct_bits,
                    r.pubkey_bits,
                    format_ratio(r.ratio_mc),
                    format_ratio(r.ratio_me),
                ]
            )
        return buffer.getvalue()


def format_ratio(value: Fraction, places: int = 4) -> str:
    """Exact decimal rendering, rounded half-up."""
    scale = 10**places
    scaled = (value.numerator * scale * 2 + value.denominator) // (2 * value.denominator)
    return f"{scaled // scale}.{scaled % scale:0{places}d}"


def table1_reference() -> list[ReferenceRow]:
    """Published comparison figures for an input block of n bits."""
    return [
        ReferenceRow(
            algorithm="RSA",
            encryption="O(n^2 log n)",
            decryption="O(n^2 log n)",
            ratio_mc="1:2",
            ratio_me="1:2",
            remark="2 parameter ciphertext of n-bits each",
        ),
        ReferenceRow(
            algorithm="ECC",
            encryption="O(n^2 log n)",
            decryption="O(n^2 log n)",
            ratio_mc="1:3",
            ratio_me="1:2",
            remark="2 parameter ciphertext of n-bits each + 1 n-bit public key",
        ),
        ReferenceRow(
            algorithm="NTRU",
            encryption="O(n log n)",
            decryption="O(n log n)",
            ratio_mc="varies",
            ratio_me="N/A",
            remark="",
        ),
        ReferenceRow(
            algorithm="BFHP",
            encryption="O(n log n)",
            decryption="O(n log n)",
            ratio_mc="1:5",
            ratio_me="1:3",
            remark="2 parameter ciphertext of n-bits each + 1 3n-bit public key",
        ),
    ]


def median_ns(fn: Callable[[int], object], runs: int, warmups: int) -> int:
    """Median wall time of fn(i) over `runs` timed calls after `warmups` untimed ones."""
    for i in range(warmups):
        fn(i)
    samples = []
    for i in range(runs):
        started = time.perf_counter_ns()
        fn(i)
        samples.append(time.perf_counter_ns() - started)
    return statistics.median_low(samples)


def bench_run(
    sizes: Sequence[int],
    trials: int,
    rng: RandomSource,
    runs: int | None = None,
    warmups: int | None = None,
) -> BenchReport:
    """
    Measure every operation at every size.

    `trials` independent (key pair, message) sessions are prepared per
    size; timed runs cycle through them and the size columns sum over all
    of them.
    """
    settings = get_settings()
    runs = runs or settings.bench_runs
    warmups = warmups or settings.bench_warmups
    if trials < 1:
        raise DomainError("trials", "must be at least 1")

    rows: list[BenchRow] = []
    for n in sizes:
        if n < 64:
            raise DomainError("sizes", "every size must be at least 64")
        params = setup(n, rng)
        senders = [keygen_sender(params, rng) for _ in range(trials)]
        recipients = [keygen_recipient(params, rng) for _ in range(trials)]
        messages = [rng.randrange((1 << (n - 1)) + 1, params.p) for _ in range(trials)]
        bundles = [
            encrypt(params, s, r.e_pub, m)
            for s, r, m in zip(senders, recipients, messages, strict=True)
        ]

        msg_bits = 8 * sum(len(encode_message(m)) for m in messages)
        ct_bits = 8 * sum(b.transmitted_bytes() for b in bundles)
        pk_bits = 8 * sum(len(int_to_bytes(s.e_pub)) for s in senders)

        base = rng.getrandbits(n) | (1 << (n - 1))
        exponent = rng.getrandbits(n) | (1 << (n - 1))
        modulus = rng.getrandbits(n) | (1 << (n - 1)) | 1

        timings = {
            "keygen": median_ns(lambda i: keygen_sender(params, rng), runs, warmups),
            "encrypt": median_ns(
                lambda i: encrypt(
                    params,
                    senders[i % trials],
                    recipients[i % trials].e_pub,
                    messages[i % trials],
                ),
                runs,
                warmups,
            ),
            "decrypt": median_ns(
                lambda i: decrypt(params, recipients[i % trials], bundles[i % trials]), runs, warmups
            ),
            "modexp": median_ns(lambda i: pow(base, exponent, modulus), runs, warmups),
        }

        for op in OPERATIONS:
            row = BenchRow(
                n=n,
                op=op,
                median_ns=timings[op],
                msg_bits=msg_bits,
                ct_bits=ct_bits,
                pubkey_bits=pk_bits,
            )
            rows.append(row)
            logger.info(
                "n=%d %s median=%dns |M|:|C|=1:%s |M|:|E|=1:%s",
                n,
                op,
                row.median_ns,
                format_ratio(row.ratio_mc),
                format_ratio(row.ratio_me),
            )

    return BenchReport(rows=rows)
