"""
H and Enc of the scheme.

H is SHA-256 over the minimal big-endian encoding of the shared secret.
Enc is a counter-mode keystream: block j is SHA-256(sk || BE64(j)),
XORed into the data and truncated to its length.
"""

import hashlib
import struct

from ..errors import DomainError
from ..numtheory import int_to_bytes

KEY_BYTES = 32
BLOCK_BYTES = hashlib.sha256().digest_size


def kdf(shared: int) -> bytes:
    """sk = SHA-256(minimal big-endian bytes of shared)."""
    if shared < 0:
        raise DomainError("shared", "must be non-negative")
    return hashlib.sha256(int_to_bytes(shared)).digest()


def keystream(sk: bytes, length: int) -> bytes:
    blocks = -(-length // BLOCK_BYTES)
    stream = b"".join(
        hashlib.sha256(sk + struct.pack(">Q", j)).digest() for j in range(blocks)
    )
    return stream[:length]


def keystream_xor(sk: bytes, data: bytes) -> bytes:
    """XOR data with the keystream; applying it twice is the identity."""
    if len(sk) != KEY_BYTES:
        raise DomainError("sk", f"must be {KEY_BYTES} bytes")
    if not data:
        return b""
    stream = keystream(sk, len(data))
    mixed = int.from_bytes(data, "big") ^ int.from_bytes(stream, "big")
    return mixed.to_bytes(len(data), "big")
