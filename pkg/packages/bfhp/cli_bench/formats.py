"""
Binary file formats for parameters, keys and ciphertexts.

Layout (all integers big-endian):

    magic    5 bytes  b"BFHP1"
    kind     1 byte   0x01 params, 0x02 sender key, 0x03 recipient key, 0x04 ciphertext
    version  1 byte   0x01
    n        4 bytes
    fields   each a 4-byte length followed by that many bytes

Integer fields hold the minimal big-endian magnitude (0 is empty).
Field order per kind:

    params         p, g1, g2, g3, g4
    sender key     d, k1, k2, alpha1, alpha2, e_pub
    recipient key  d, k1, k2, beta1, beta2, e_pub
    ciphertext     C1, C2 (raw bytes), e_A
"""

import struct
from dataclasses import dataclass
from enum import IntEnum

from pydantic import ValidationError

from ..errors import DomainError, FormatError
from ..numtheory import bitlen, bytes_to_int, int_to_bytes
from ..scheme.models import CiphertextBundle, PublicParams, RecipientKeyPair, SenderKeyPair

MAGIC = b"BFHP1"
VERSION = 0x01
_HEADER = struct.Struct(">5sBBI")
_LENGTH = struct.Struct(">I")

FileValue = PublicParams | SenderKeyPair | RecipientKeyPair | CiphertextBundle


class FileKind(IntEnum):
    PARAMS = 0x01
    SENDER_KEY = 0x02
    RECIPIENT_KEY = 0x03
    CIPHERTEXT = 0x04


@dataclass(frozen=True)
class Envelope:
    """A decoded file: its kind, the security size n and the value."""

    kind: FileKind
    n: int
    value: FileValue


def kind_of(value: FileValue) -> FileKind:
    if isinstance(value, PublicParams):
        return FileKind.PARAMS
    if isinstance(value, SenderKeyPair):
        return FileKind.SENDER_KEY
    if isinstance(value, RecipientKeyPair):
        return FileKind.RECIPIENT_KEY
    if isinstance(value, CiphertextBundle):
        return FileKind.CIPHERTEXT
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def _field(raw: bytes) -> bytes:
    return _LENGTH.pack(len(raw)) + raw


def _fields(value: FileValue) -> list[bytes]:
    if isinstance(value, PublicParams):
        return [int_to_bytes(x) for x in (value.p, *value.generators)]
    if isinstance(value, SenderKeyPair | RecipientKeyPair):
        x1, x2 = value.secret_pair
        return [int_to_bytes(x) for x in (value.d, value.k1, value.k2, x1, x2, value.e_pub)]
    return [int_to_bytes(value.C1), value.C2, int_to_bytes(value.e_A)]


def serialize(value: FileValue, n: int | None = None) -> bytes:
    """
    Encode a value. n defaults to value.n for parameters and is required
    for keys and ciphertexts.
    """
    kind = kind_of(value)
    if isinstance(value, PublicParams):
        n = value.n if n is None else n
        if n != value.n:
            raise DomainError("n", "does not match the parameters")
    if n is None:
        raise DomainError("n", f"required to serialize {kind.name.lower()}")
    out = [_HEADER.pack(MAGIC, kind, VERSION, n)]
    out.extend(_field(raw) for raw in _fields(value))
    return b"".join(out)


class _Reader:
    def __init__(self, data: bytes) -> None:
        self._data = data
        self._offset = 0

    def take(self, size: int) -> bytes:
        end = self._offset + size
        if end > len(self._data):
            raise FormatError("Truncated file", self._offset)
        chunk = self._data[self._offset : end]
        self._offset = end
        return chunk

    def raw_field(self) -> bytes:
        (length,) = _LENGTH.unpack(self.take(_LENGTH.size))
        return self.take(length)

    def int_field(self) -> int:
        start = self._offset
        try:
            return bytes_to_int(self.raw_field(), strict=True)
        except DomainError as e:
            raise FormatError("Non-minimal integer encoding", start) from e

    def finish(self) -> None:
        if self._offset != len(self._data):
            raise FormatError("Trailing bytes", self._offset)


def deserialize(data: bytes, expected: FileKind | None = None) -> Envelope:
    """
    Decode a file produced by serialize.

    Raises:
        FormatError: On bad magic, kind, version, truncation, non-minimal
            integers, trailing bytes or values that violate their invariants
    """
    reader = _Reader(data)
    magic, kind_byte, version, n = _HEADER.unpack(reader.take(_HEADER.size))
    if magic != MAGIC:
        raise FormatError("Bad magic", 0)
    try:
        kind = FileKind(kind_byte)
    except ValueError as e:
        raise FormatError(f"Unknown kind 0x{kind_byte:02x}", 5) from e
    if version != VERSION:
        raise FormatError(f"Unsupported version {version}", 6)
    if expected is not None and kind != expected:
        raise FormatError(f"Expected {expected.name.lower()} file, got {kind.name.lower()}")

    try:
        value: FileValue
        if kind is FileKind.PARAMS:
            p, g1, g2, g3, g4 = (reader.int_field() for _ in range(5))
            if bitlen(p) != n:
                raise FormatError(f"Header n={n} does not match the {bitlen(p)}-bit prime")
            value = PublicParams(n=n, p=p, g1=g1, g2=g2, g3=g3, g4=g4)
        elif kind is FileKind.CIPHERTEXT:
            c1 = reader.int_field()
            c2 = reader.raw_field()
            e_a = reader.int_field()
            value = CiphertextBundle(C1=c1, C2=c2, e_A=e_a)
        else:
            d, k1, k2, x1, x2, e_pub = (reader.int_field() for _ in range(6))
            if kind is FileKind.SENDER_KEY:
                value = SenderKeyPair(d=d, k1=k1, k2=k2, alpha1=x1, alpha2=x2, e_pub=e_pub)
            else:
                value = RecipientKeyPair(d=d, k1=k1, k2=k2, beta1=x1, beta2=x2, e_pub=e_pub)
    except ValidationError as e:
        raise FormatError(f"Invalid {kind.name.lower()} contents: {e.error_count()} errors") from e

    reader.finish()
    return Envelope(kind=kind, n=n, value=value)
