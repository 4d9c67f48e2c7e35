"""
Shared-secret agreement and hybrid encryption.

The sender computes e_AB = d_A*e_B mod p, masks the message additively
as C1 = (M + e_AB) mod p and encrypts it again under sk = H(e_AB) as C2.
The recipient recovers M twice, once from each part, and aborts when the
two disagree.
"""

import logging
import time

from ..errors import DomainError, IntegrityAbort, MalformedBundleError
from ..metrics import get_metrics_collector
from ..numtheory import bytes_to_int, int_to_bytes
from .models import (
    CiphertextBundle,
    DecryptionResult,
    PublicParams,
    RecipientKeyPair,
    SenderKeyPair,
    SharedSecret,
)
from .symmetric import kdf, keystream_xor

logger = logging.getLogger(__name__)

ABORT_MISMATCH = "integrity check failed"


def shared_from_sender(d_a: int, e_b: int, p: int) -> int:
    """e_AB = d_A * e_B mod p."""
    return (d_a * e_b) % p


def shared_from_recipient(d_b: int, e_a: int, p: int) -> int:
    """e_BA = d_B * e_A mod p."""
    return (d_b * e_a) % p


def shared_secret(value: int) -> SharedSecret:
    return SharedSecret(value=value, sk=kdf(value))


def encode_message(m: int) -> bytes:
    """Canonical minimal big-endian bytes of M; empty for M = 0."""
    return int_to_bytes(m)


def decode_message(data: bytes) -> int:
    """Inverse of encode_message; leading zero bytes are rejected."""
    return bytes_to_int(data, strict=True)


def encrypt(
    params: PublicParams, skp: SenderKeyPair, e_b: int, m: int
) -> CiphertextBundle:
    """
    Encrypt 0 <= M < p for the holder of e_B.

    Raises:
        DomainError: If M is negative or not below p
    """
    if not 0 <= m < params.p:
        raise DomainError("M", "must satisfy 0 <= M < p")
    started = time.perf_counter()
    secret = shared_secret(shared_from_sender(skp.d, e_b, params.p))
    c1 = (m + secret.value) % params.p
    c2 = keystream_xor(secret.sk, encode_message(m))
    get_metrics_collector().record_encrypt(time.perf_counter() - started)
    return CiphertextBundle(C1=c1, C2=c2, e_A=skp.e_pub)


def decrypt(
    params: PublicParams, rkp: RecipientKeyPair, bundle: CiphertextBundle
) -> DecryptionResult:
    """
    Recover M from a bundle, or ABORT.

    ABORT is a normal outcome: M' from C1 and M from C2 must agree.

    Raises:
        MalformedBundleError: If C1 is not below p
    """
    started = time.perf_counter()
    metrics = get_metrics_collector()
    if bundle.C1 >= params.p:
        metrics.record_decrypt("malformed", time.perf_counter() - started)
        raise MalformedBundleError("C1", "must be below p")

    secret = shared_secret(shared_from_recipient(rkp.d, bundle.e_A, params.p))
    m_prime = (bundle.C1 - secret.value) % params.p
    plain = keystream_xor(secret.sk, bundle.C2)

    try:
        m = decode_message(plain)
    except DomainError:
        m = None

    if m != m_prime:
        metrics.record_decrypt("abort", time.perf_counter() - started)
        logger.warning("Decryption aborted: %s", ABORT_MISMATCH)
        return DecryptionResult(ok=False, reason=ABORT_MISMATCH)

    metrics.record_decrypt("ok", time.perf_counter() - started)
    return DecryptionResult(ok=True, message=m_prime)


def decrypt_or_raise(
    params: PublicParams, rkp: RecipientKeyPair, bundle: CiphertextBundle
) -> int:
    """
    decrypt for callers that prefer exceptions.

    Raises:
        IntegrityAbort: On ABORT
    """
    result = decrypt(params, rkp, bundle)
    if not result.ok or result.message is None:
        raise IntegrityAbort(result.reason or ABORT_MISMATCH)
    return result.message
