"""
Arbitrary-precision number theory shared by every other module.

All values are Python ints. Signed results only come out of ext_gcd;
everything else is non-negative with explicit modular reduction. Every
randomized function takes its random source explicitly, so the module
holds no mutable state.
"""

import logging
import math
import random
from collections.abc import Callable, Iterable
from typing import TypeVar

from tenacity import RetryError, Retrying, retry_if_result, stop_after_attempt

from .config import get_settings
from .errors import DomainError, SamplingBudgetExceeded

logger = logging.getLogger(__name__)

T = TypeVar("T")

RandomSource = random.Random


def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return tuple(i for i, f in enumerate(flags) if f)


SMALL_PRIMES = _sieve(2000)


def make_rng(seed: int | None = None) -> RandomSource:
    """
    Random source used throughout the toolkit.

    A seed gives the deterministic Mersenne Twister generator
    random.Random(seed), so every seeded run is reproducible. Without a
    seed the OS entropy pool is used.
    """
    if seed is None:
        return random.SystemRandom()
    return random.Random(seed)


def _no_sleep(_: float) -> None:
    return None


def rejection_sample(draw: Callable[[], T | None], what: str, attempts: int) -> T:
    """
    Call draw() until it returns something other than None.

    Raises:
        SamplingBudgetExceeded: If every one of the attempts was rejected
    """
    retrying = Retrying(
        stop=stop_after_attempt(attempts),
        retry=retry_if_result(lambda result: result is None),
        sleep=_no_sleep,
    )
    try:
        return retrying(draw)
    except RetryError as e:
        logger.warning("Sampling budget exhausted for %s after %d attempts", what, attempts)
        raise SamplingBudgetExceeded(what, attempts) from e


def bitlen(x: int) -> int:
    """Bit length with bitlen(0) = 0."""
    if x < 0:
        raise DomainError("x", "must be non-negative")
    return x.bit_length()


def int_to_bytes(x: int) -> bytes:
    """Minimal big-endian encoding; 0 encodes to the empty string."""
    if x < 0:
        raise DomainError("x", "must be non-negative")
    return x.to_bytes((x.bit_length() + 7) // 8, "big")


def bytes_to_int(data: bytes, strict: bool = True) -> int:
    """Inverse of int_to_bytes. In strict mode a leading zero byte is rejected."""
    if strict and data[:1] == b"\x00":
        raise DomainError("data", "non-minimal encoding (leading zero byte)")
    return int.from_bytes(data, "big")


def floor_div(a: int, b: int) -> int:
    if b <= 0:
        raise DomainError("b", "divisor must be positive")
    return a // b


def ceil_div(a: int, b: int) -> int:
    if b <= 0:
        raise DomainError("b", "divisor must be positive")
    return -((-a) // b)


def is_probable_prime(n: int, rng: RandomSource | None = None, rounds: int | None = None) -> bool:
    """
    Trial division by the small primes, then Miller-Rabin.

    With the default 40 random bases a composite survives with
    probability below 4^-40 = 2^-80.
    """
    if n < 2:
        return False
    for q in SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    if n < SMALL_PRIMES[-1] ** 2:
        return True

    rng = rng or make_rng()
    rounds = rounds or get_settings().mr_rounds

    # n - 1 = 2^r * s with s odd
    r, s = 0, n - 1
    while s % 2 == 0:
        r += 1
        s //= 2

    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, s, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def gen_prime(bits: int, rng: RandomSource, rounds: int | None = None) -> int:
    """Random prime p with 2^(bits-1) < p < 2^bits."""
    if bits < 3:
        raise DomainError("bits", "must be at least 3")
    top = 1 << (bits - 1)
    tried = 0
    while True:
        candidate = rng.getrandbits(bits) | top | 1
        tried += 1
        if is_probable_prime(candidate, rng, rounds):
            logger.debug("Found %d-bit prime after %d candidates", bits, tried)
            return candidate


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """
    Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b).

    x and y may be negative.
    """
    if a < 0 or b < 0:
        raise DomainError("a, b", "must be non-negative")
    if a == 0 and b == 0:
        raise DomainError("a, b", "gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def integer_root(x: int, e: int) -> tuple[int, bool]:
    """floor(x^(1/e)) and whether it is exact."""
    if x < 0:
        raise DomainError("x", "must be non-negative")
    if e < 1:
        raise DomainError("e", "must be at least 1")
    if e == 1 or x < 2:
        return x, True
    if e == 2:
        r = math.isqrt(x)
        return r, r * r == x

    # Newton iteration from above converges to the floor root
    r = 1 << ceil_div(x.bit_length(), e)
    while True:
        y = ((e - 1) * r + x // r ** (e - 1)) // e
        if y >= r:
            break
        r = y
    return r, r**e == x


def open_interval(bits: int) -> tuple[int, int]:
    """Bounds (lo, hi) of the open interval (2^(bits-1), 2^bits - 1)."""
    return 1 << (bits - 1), (1 << bits) - 1


def sample_open_interval(bits: int, rng: RandomSource) -> int:
    """Uniform integer strictly inside (2^(bits-1), 2^bits - 1)."""
    lo, hi = open_interval(bits)
    if hi - lo < 2:
        raise DomainError("bits", f"interval ({lo}, {hi}) holds no integers")
    return rng.randrange(lo + 1, hi)


def sample_pairwise_coprime(
    count: int,
    bits: int,
    exclude: Iterable[int] = (),
    rng: RandomSource | None = None,
    attempts: int | None = None,
) -> list[int]:
    """
    Draw `count` pairwise-coprime integers from (2^(bits-1), 2^bits - 1).

    Each attempt draws one candidate and keeps it when it is coprime to
    everything kept so far and not excluded.

    Raises:
        SamplingBudgetExceeded: If the attempt budget runs out first
    """
    if count < 1:
        raise DomainError("count", "must be at least 1")
    if bits < 1:
        raise DomainError("bits", "must be positive")
    rng = rng or make_rng()
    attempts = attempts or get_settings().coprime_attempts
    excluded = set(exclude)
    lo, hi = open_interval(bits)
    what = f"{count} pairwise-coprime {bits}-bit integers"

    if hi - lo - 1 < count:
        logger.warning("Interval (%d, %d) cannot hold %d distinct values", lo, hi, count)
        raise SamplingBudgetExceeded(what, 0)

    chosen: list[int] = []

    def draw() -> list[int] | None:
        candidate = rng.randrange(lo + 1, hi)
        if candidate not in excluded and all(math.gcd(candidate, c) == 1 for c in chosen):
            chosen.append(candidate)
        return list(chosen) if len(chosen) == count else None

    return rejection_sample(draw, what, attempts)
