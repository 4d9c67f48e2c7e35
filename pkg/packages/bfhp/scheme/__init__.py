"""
Two-party asymmetric cryptosystem built on the BFHP.

Usage:
    rng = make_rng(7)
    params = setup(128, rng)
    along = keygen_sender(params, rng)
    busu = keygen_recipient(params, rng)

    bundle = encrypt(params, along, busu.e_pub, 42)
    result = decrypt(params, busu, bundle)   # result.message == 42
"""

from .cipher import (
    ABORT_MISMATCH,
    decode_message,
    decrypt,
    decrypt_or_raise,
    encode_message,
    encrypt,
    shared_from_recipient,
    shared_from_sender,
    shared_secret,
)
from .keys import (
    derive_recipient_keys,
    derive_sender_keys,
    key_candidates,
    keygen_party,
    keygen_recipient,
    keygen_sender,
    setup,
)
from .models import (
    CiphertextBundle,
    DecryptionResult,
    PartyKeys,
    PublicParams,
    RecipientKeyPair,
    Role,
    SenderKeyPair,
    SharedSecret,
)
from .symmetric import kdf, keystream_xor

__all__ = [
    "ABORT_MISMATCH",
    "CiphertextBundle",
    "DecryptionResult",
    "PartyKeys",
    "PublicParams",
    "RecipientKeyPair",
    "Role",
    "SenderKeyPair",
    "SharedSecret",
    "decode_message",
    "decrypt",
    "decrypt_or_raise",
    "derive_recipient_keys",
    "derive_sender_keys",
    "encode_message",
    "encrypt",
    "kdf",
    "key_candidates",
    "keygen_party",
    "keygen_recipient",
    "keygen_sender",
    "keystream_xor",
    "setup",
    "shared_from_recipient",
    "shared_from_sender",
    "shared_secret",
]
