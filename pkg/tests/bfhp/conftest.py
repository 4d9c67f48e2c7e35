"""
Shared fixtures for the BFHP toolkit tests.

The micro-instance is small enough to check by hand:
    p = 29, (g1, g2, g3, g4) = (17, 19, 21, 23), n = 5
    sender    d = 20, k = (20, 25) -> alpha = (601, 728), e_A = 29365
    recipient d = 18, k = (19, 22) -> beta = (552, 646),  e_B = 21658
    shared secret 16 on both sides
"""

import random

import pytest

from packages.bfhp.scheme import (
    PublicParams,
    RecipientKeyPair,
    SenderKeyPair,
    derive_recipient_keys,
    derive_sender_keys,
    setup,
)


@pytest.fixture()
def rng() -> random.Random:
    """Seeded random source, fresh per test."""
    return random.Random(20240501)


@pytest.fixture()
def micro_params() -> PublicParams:
    return PublicParams(n=5, p=29, g1=17, g2=19, g3=21, g4=23)


@pytest.fixture()
def micro_sender(micro_params: PublicParams) -> SenderKeyPair:
    return derive_sender_keys(micro_params, d=20, k1=20, k2=25)


@pytest.fixture()
def micro_recipient(micro_params: PublicParams) -> RecipientKeyPair:
    return derive_recipient_keys(micro_params, d=18, k1=19, k2=22)


@pytest.fixture(scope="module")
def params64() -> PublicParams:
    """64-bit parameters shared by a module's tests."""
    return setup(64, random.Random(64))
