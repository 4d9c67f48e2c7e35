"""
Domain models for the two-party BFHP cryptosystem.

All models are frozen. Invariants that only need the model itself are
checked on construction; those that also need the public parameters are
checked by verify(params).
"""

import math
import random
from abc import abstractmethod
from enum import StrEnum
from typing import ClassVar

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import DomainError
from ..numtheory import bitlen, int_to_bytes, is_probable_prime, open_interval
from .symmetric import kdf


class Role(StrEnum):
    """Which side of a conversation a key pair serves."""

    SENDER = "sender"
    RECIPIENT = "recipient"


class PublicParams(BaseModel):
    """Common n-bit prime p and the public sets G1 = (g1, g2), G2 = (g3, g4)."""

    n: int = Field(ge=3)
    p: int
    g1: int
    g2: int
    g3: int
    g4: int

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_invariants(self) -> "PublicParams":
        if bitlen(self.p) != self.n:
            raise ValueError(f"p must be an {self.n}-bit integer")
        lo, hi = open_interval(self.n)
        # Bases derived from p keep validation deterministic
        if not is_probable_prime(self.p, random.Random(self.p)):
            raise ValueError("p is not prime")
        gs = self.generators
        for i, g in enumerate(gs, start=1):
            if not lo < g < hi:
                raise ValueError(f"g{i} must lie in ({lo}, {hi})")
            if g == self.p:
                raise ValueError(f"g{i} must differ from p")
        for i in range(4):
            for j in range(i + 1, 4):
                if math.gcd(gs[i], gs[j]) != 1:
                    raise ValueError(f"g{i + 1} and g{j + 1} are not coprime")
        return self

    @property
    def generators(self) -> tuple[int, int, int, int]:
        return self.g1, self.g2, self.g3, self.g4

    @property
    def G1(self) -> tuple[int, int]:  # noqa: N802
        return self.g1, self.g2

    @property
    def G2(self) -> tuple[int, int]:  # noqa: N802
        return self.g3, self.g4

    @property
    def secret_box(self) -> tuple[int, int]:
        """Open interval (2^(2n-1), 2^(2n) - 1) holding every secret lift."""
        return open_interval(2 * self.n)

    def lift_set(self, role: Role) -> tuple[int, int]:
        """Generators a role multiplies its private scalar by."""
        return self.G1 if role is Role.SENDER else self.G2

    def public_set(self, role: Role) -> tuple[int, int]:
        """Generators a role combines its secret pair with."""
        return self.G2 if role is Role.SENDER else self.G1


class _KeyPair(BaseModel):
    """Private scalar d, ephemeral lifts (k1, k2), secret pair and public key."""

    role: ClassVar[Role]

    d: int
    k1: int
    k2: int
    e_pub: int

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_distinct_lifts(self) -> "_KeyPair":
        if self.k1 == self.k2:
            raise ValueError("ephemeral lifts k1 and k2 must be distinct")
        return self

    @property
    @abstractmethod
    def secret_pair(self) -> tuple[int, int]: ...

    def verify(self, params: PublicParams) -> None:
        """
        Check every invariant that depends on the public parameters.

        Raises:
            DomainError: On the first violated invariant
        """
        n, p = params.n, params.p
        lo, hi = open_interval(n)
        for name, value in (("d", self.d), ("k1", self.k1), ("k2", self.k2)):
            if not lo < value < hi:
                raise DomainError(name, f"must lie in ({lo}, {hi})")
        box_lo, box_hi = params.secret_box
        lifts = params.lift_set(self.role)
        for i, (g, x, k) in enumerate(zip(lifts, self.secret_pair, (self.k1, self.k2), strict=True)):
            if x != (g * self.d) % p + k * p:
                raise DomainError(f"secret{i + 1}", "does not match g*d mod p + k*p")
            if not box_lo < x < box_hi:
                raise DomainError(f"secret{i + 1}", "outside the 2n-bit secret interval")
        a, b = params.public_set(self.role)
        x1, x2 = self.secret_pair
        if self.e_pub != a * x1 + b * x2:
            raise DomainError("e_pub", "does not match the secret pair")
        if bitlen(self.e_pub) not in (3 * n, 3 * n + 1):
            raise DomainError("e_pub", f"bit length must be {3 * n} or {3 * n + 1}")


class SenderKeyPair(_KeyPair):
    """Initiator keys: alpha_i = (g_i * d mod p) + k_i * p, e_A = g3*alpha1 + g4*alpha2."""

    role: ClassVar[Role] = Role.SENDER

    alpha1: int
    alpha2: int

    @property
    def secret_pair(self) -> tuple[int, int]:
        return self.alpha1, self.alpha2


class RecipientKeyPair(_KeyPair):
    """Acceptor keys: beta_i = (g_(2+i) * d mod p) + k_i * p, e_B = g1*beta1 + g2*beta2."""

    role: ClassVar[Role] = Role.RECIPIENT

    beta1: int
    beta2: int

    @property
    def secret_pair(self) -> tuple[int, int]:
        return self.beta1, self.beta2


class PartyKeys(BaseModel):
    """A party holds keys for both roles so it can initiate or accept."""

    sender: SenderKeyPair
    recipient: RecipientKeyPair

    model_config = ConfigDict(frozen=True)


class CiphertextBundle(BaseModel):
    """(C1, C2, e_A) as relayed from sender to recipient."""

    C1: int = Field(ge=0)
    C2: bytes
    e_A: int = Field(ge=0)

    model_config = ConfigDict(frozen=True)

    def transmitted_bytes(self) -> int:
        """Measured wire size of C1, C2 and e_A in canonical encoding."""
        return len(int_to_bytes(self.C1)) + len(self.C2) + len(int_to_bytes(self.e_A))


class SharedSecret(BaseModel):
    """Agreement value e_AB = e_BA and the symmetric key derived from it."""

    value: int = Field(ge=0)
    sk: bytes

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_key(self) -> "SharedSecret":
        if self.sk != kdf(self.value):
            raise ValueError("sk does not match H(value)")
        return self


class DecryptionResult(BaseModel):
    """The message, or an ABORT with its reason."""

    ok: bool
    message: int | None = None
    reason: str | None = None

    model_config = ConfigDict(frozen=True)

    @property
    def aborted(self) -> bool:
        return not self.ok
