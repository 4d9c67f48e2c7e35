"""
RSA rewritten as a BFHP: C(M, j) = M^e - N*j.

j counts how many times M^e is reduced by N. Knowing j turns RSA
decryption into an exact integer root, with no factor of N involved.
Includes a toy RSA key helper and desk-scale checks of the interval
and uniqueness claims.
"""

import logging
import math
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, model_validator

from .config import get_settings
from .errors import DomainError, InvalidInstanceError, SearchSpaceTooLarge
from .numtheory import RandomSource, gen_prime, integer_root, rejection_sample

logger = logging.getLogger(__name__)


class RsaBfhpInstance(BaseModel):
    """(N, e, C, j) of the reformulation; k is the bit size of N."""

    N: int
    e: int
    C: int
    j: int
    k: int

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_invariants(self) -> "RsaBfhpInstance":
        if not 0 <= self.C < self.N:
            raise ValueError("C must satisfy 0 <= C < N")
        if self.j < 0:
            raise ValueError("j must be non-negative")
        if self.e < 1:
            raise ValueError("e must be positive")
        return self

    @classmethod
    def from_message(cls, M: int, e: int, N: int) -> "RsaBfhpInstance":  # noqa: N803
        c, j = to_bfhp(M, e, N)
        return cls(N=N, e=e, C=c, j=j, k=N.bit_length())

    def is_genuine(self) -> bool:
        """True when C + N*j is a perfect e-th power."""
        return integer_root(self.C + self.N * self.j, self.e)[1]


class RsaSolutionLine(BaseModel):
    """Integer solutions X = X0 + N*t, j = j0 + t of C = X - N*j."""

    x0: int
    j0: int
    N: int

    model_config = ConfigDict(frozen=True)

    def x_at(self, t: int) -> int:
        return self.x0 + self.N * t

    def j_at(self, t: int) -> int:
        return self.j0 + t


class ToyRsaKey(BaseModel):
    N: int
    e: int
    d: int | None
    p: int
    q: int

    model_config = ConfigDict(frozen=True)

    @property
    def phi(self) -> int:
        return (self.p - 1) * (self.q - 1)


class Lemma1Coverage(BaseModel):
    """Measured j against the interval (2^(k(e-1)-1), 2^(k(e-1)) - 1)."""

    k: int
    e: int
    samples: int
    below_upper: int
    inside_interval: int
    max_j: int

    model_config = ConfigDict(frozen=True)

    @property
    def coverage(self) -> Fraction:
        return Fraction(self.inside_interval, self.samples)


def to_bfhp(M: int, e: int, N: int) -> tuple[int, int]:  # noqa: N803
    """C = M^e mod N and j = (M^e - C) / N."""
    if not 0 <= M < N:
        raise DomainError("M", "must satisfy 0 <= M < N")
    if e < 1:
        raise DomainError("e", "must be positive")
    x = M**e
    j, c = divmod(x, N)
    return c, j


def solve_given_j(C: int, j: int, e: int, N: int) -> int:  # noqa: N803
    """
    M = e-th root of C + N*j.

    Takes no factor of N.

    Raises:
        InvalidInstanceError: If C + N*j is not a perfect e-th power
    """
    if C < 0 or j < 0:
        raise DomainError("C, j", "must be non-negative")
    root, exact = integer_root(C + N * j, e)
    if not exact:
        raise InvalidInstanceError("C, j", f"{C} + {N}*{j} is not a perfect {e}-th power")
    return root


def check_equivalence(M: int, e: int, N: int) -> bool:  # noqa: N803
    """
    Both reductions between RSA and RSA-BFHP on one message.

    Knowing M yields j = (M^e - C) / N; knowing (C, j) yields M back.
    """
    c, j = to_bfhp(M, e, N)
    try:
        recovered = solve_given_j(c, j, e, N)
    except InvalidInstanceError:
        return False
    recomputed_j, rem = divmod(recovered**e - c, N)
    return recovered == M and rem == 0 and recomputed_j == j


def lemma1_interval(k: int, e: int) -> tuple[int, int]:
    """(2^(k(e-1)-1), 2^(k(e-1)) - 1)."""
    if k < 1:
        raise DomainError("k", "must be positive")
    if e < 2:
        raise DomainError("e", "must be at least 2")
    top = k * (e - 1)
    return 1 << (top - 1), (1 << top) - 1


def rsa_general_solution(C: int, N: int) -> RsaSolutionLine:  # noqa: N803
    """The solution line of C = X - N*j through X0 = C, j0 = 0."""
    return RsaSolutionLine(x0=C, j0=0, N=N)


def search_j(
    C: int,  # noqa: N803
    e: int,
    N: int,  # noqa: N803
    cap: int | None = None,
) -> list[tuple[int, int]]:
    """
    Solve the RSA-BFHP by scanning every j < N^(e-1).

    Returns every (M, j) with M < N and M^e = C + N*j.

    Raises:
        SearchSpaceTooLarge: If N^(e-1) exceeds the cap
    """
    cap = cap or get_settings().j_cap
    bound = N ** (e - 1)
    if bound > cap:
        raise SearchSpaceTooLarge("j-range", bound, cap)
    found = []
    for j in range(bound):
        root, exact = integer_root(C + N * j, e)
        if exact and root < N:
            found.append((root, j))
    logger.debug("j-search over %d values found %d solutions", bound, len(found))
    return found


def toy_rsa(
    k: int,
    e: int,
    rng: RandomSource,
    require_invertible: bool = True,
    attempts: int | None = None,
) -> ToyRsaKey:
    """
    Toy RSA modulus from two primes of about k/2 bits each.

    d is computed when e is invertible mod phi(N); nothing on the BFHP
    path uses it. With require_invertible=False any distinct prime pair
    is accepted, which tiny k needs (e.g. 143 = 11*13 is the only 8-bit
    option and phi = 120 shares factors with 3 and 5).
    """
    if k < 6:
        raise DomainError("k", "must be at least 6")
    half = k // 2
    attempts = attempts or get_settings().keygen_attempts

    def draw() -> ToyRsaKey | None:
        p = gen_prime(half, rng)
        q = gen_prime(k - half, rng)
        if p == q:
            return None
        phi = (p - 1) * (q - 1)
        invertible = math.gcd(e, phi) == 1
        if require_invertible and not invertible:
            return None
        d = pow(e, -1, phi) if invertible else None
        return ToyRsaKey(N=p * q, e=e, d=d, p=p, q=q)

    return rejection_sample(draw, f"{k}-bit toy RSA modulus", attempts)


def lemma1_coverage(k: int, e: int, samples: int, rng: RandomSource) -> Lemma1Coverage:
    """
    How often the measured j falls inside the Lemma 1 interval.

    Messages are drawn with 2^(k-1) < M < N. The upper bound always
    holds; membership in the full interval is only reported.
    """
    key = toy_rsa(k, e, rng, require_invertible=False)
    lo, hi = lemma1_interval(key.N.bit_length(), e)
    m_lo = 1 << (key.N.bit_length() - 1)
    below = inside = 0
    max_j = 0
    for _ in range(samples):
        m = rng.randrange(m_lo + 1, key.N)
        _, j = to_bfhp(m, e, key.N)
        max_j = max(max_j, j)
        below += j < hi + 1
        inside += lo < j < hi
    return Lemma1Coverage(
        k=key.N.bit_length(),
        e=e,
        samples=samples,
        below_upper=below,
        inside_interval=inside,
        max_j=max_j,
    )
