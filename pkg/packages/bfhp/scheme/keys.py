"""
Common parameters and key generation for both parties.

The sender lifts (g1, g2)*d into the 2n-bit interval and publishes
e_A = g3*alpha1 + g4*alpha2. The recipient mirrors this with (g3, g4)
for the lifts and (g1, g2) for e_B. Recovering a secret pair from a
public key is itself a BFHP instance; key_candidates enumerates it at
desk scale.
"""

import logging
import time

from ..bfhp_core import solutions_in_box
from ..config import get_settings
from ..errors import DomainError
from ..metrics import get_metrics_collector
from ..numtheory import (
    RandomSource,
    gen_prime,
    open_interval,
    rejection_sample,
    sample_open_interval,
    sample_pairwise_coprime,
)
from .models import PartyKeys, PublicParams, RecipientKeyPair, Role, SenderKeyPair

logger = logging.getLogger(__name__)


def setup(n: int, rng: RandomSource) -> PublicParams:
    """
    Common n-bit prime p and four pairwise-coprime n-bit generators.

    Raises:
        SamplingBudgetExceeded: If n is too small to host the generators
    """
    if n < 3:
        raise DomainError("n", "must be at least 3")
    p = gen_prime(n, rng)
    g1, g2, g3, g4 = sample_pairwise_coprime(4, n, exclude={p}, rng=rng)
    logger.info("Public parameters ready: n=%d", n)
    return PublicParams(n=n, p=p, g1=g1, g2=g2, g3=g3, g4=g4)


def _lifts(params: PublicParams, role: Role, d: int, k1: int, k2: int) -> tuple[int, int, int]:
    p = params.p
    a, b = params.lift_set(role)
    x1 = (a * d) % p + k1 * p
    x2 = (b * d) % p + k2 * p
    c1, c2 = params.public_set(role)
    return x1, x2, c1 * x1 + c2 * x2


def _check_scalars(params: PublicParams, d: int, k1: int, k2: int) -> None:
    lo, hi = open_interval(params.n)
    for name, value in (("d", d), ("k1", k1), ("k2", k2)):
        if not lo < value < hi:
            raise DomainError(name, f"must lie in ({lo}, {hi})")
    if k1 == k2:
        raise DomainError("k1, k2", "ephemeral lifts must be distinct")


def derive_sender_keys(params: PublicParams, d: int, k1: int, k2: int) -> SenderKeyPair:
    """Sender key pair from explicit d, k1, k2."""
    _check_scalars(params, d, k1, k2)
    alpha1, alpha2, e_a = _lifts(params, Role.SENDER, d, k1, k2)
    keys = SenderKeyPair(d=d, k1=k1, k2=k2, alpha1=alpha1, alpha2=alpha2, e_pub=e_a)
    keys.verify(params)
    return keys


def derive_recipient_keys(params: PublicParams, d: int, k1: int, k2: int) -> RecipientKeyPair:
    """Recipient key pair from explicit d, k1, k2."""
    _check_scalars(params, d, k1, k2)
    beta1, beta2, e_b = _lifts(params, Role.RECIPIENT, d, k1, k2)
    keys = RecipientKeyPair(d=d, k1=k1, k2=k2, beta1=beta1, beta2=beta2, e_pub=e_b)
    keys.verify(params)
    return keys


def _sample_scalars(
    params: PublicParams, role: Role, rng: RandomSource, attempts: int
) -> tuple[int, int, int]:
    n, p = params.n, params.p
    box_lo, box_hi = params.secret_box

    def draw_d() -> int | None:
        d = sample_open_interval(n, rng)
        # d = 0 mod p collapses both residues to 0 and the shared secret with them
        return d if d % p else None

    d = rejection_sample(draw_d, "private scalar", attempts)
    residues = [(g * d) % p for g in params.lift_set(role)]
    lifts: list[int] = []

    for residue in residues:

        def draw_k(residue: int = residue) -> int | None:
            k = sample_open_interval(n, rng)
            if k in lifts or not box_lo < residue + k * p < box_hi:
                return None
            return k

        lifts.append(rejection_sample(draw_k, "ephemeral lift", attempts))

    return d, lifts[0], lifts[1]


def keygen_sender(
    params: PublicParams, rng: RandomSource, attempts: int | None = None
) -> SenderKeyPair:
    """
    Random sender key pair.

    Each lift k_i is resampled until alpha_i lands in (2^(2n-1), 2^(2n) - 1).

    Raises:
        SamplingBudgetExceeded: If a rejection loop runs out of attempts
    """
    started = time.perf_counter()
    attempts = attempts or get_settings().keygen_attempts
    d, k1, k2 = _sample_scalars(params, Role.SENDER, rng, attempts)
    keys = derive_sender_keys(params, d, k1, k2)
    get_metrics_collector().record_keygen(Role.SENDER, time.perf_counter() - started)
    logger.debug("Sender key generated: e_A has %d bits", keys.e_pub.bit_length())
    return keys


def keygen_recipient(
    params: PublicParams, rng: RandomSource, attempts: int | None = None
) -> RecipientKeyPair:
    """Random recipient key pair; mirror of keygen_sender."""
    started = time.perf_counter()
    attempts = attempts or get_settings().keygen_attempts
    d, k1, k2 = _sample_scalars(params, Role.RECIPIENT, rng, attempts)
    keys = derive_recipient_keys(params, d, k1, k2)
    get_metrics_collector().record_keygen(Role.RECIPIENT, time.perf_counter() - started)
    logger.debug("Recipient key generated: e_B has %d bits", keys.e_pub.bit_length())
    return keys


def keygen_party(params: PublicParams, rng: RandomSource) -> PartyKeys:
    """Keys for both roles, so a party can either initiate or accept."""
    return PartyKeys(sender=keygen_sender(params, rng), recipient=keygen_recipient(params, rng))


def key_candidates(
    params: PublicParams, e_pub: int, role: Role, cap: int | None = None
) -> list[tuple[int, int]]:
    """
    Every secret pair consistent with a public key inside the 2n-bit box.

    The true pair is always on this list; its length is what an attacker
    would have to search.

    Raises:
        SearchSpaceTooLarge: At sizes where the search is infeasible
    """
    a, b = params.public_set(role)
    lo, hi = params.secret_box
    return solutions_in_box(a, b, e_pub, lo, hi, cap=cap)
