"""
Acceptance sweeps for the BFHP toolkit.

These run the full-size checks and are marked slow:
1. Shared-secret agreement at n in {32, 64, 128, 256}
2. Encryption round-trips with zero ABORTs
3. ABORT on single-bit flips in C1, C2 and e_A
4. Public key and ciphertext size ratios at n in {128, 512, 2048}
5. Encryption against the modexp baseline at n = 2048
6. Box solver against brute force for every 3 <= n < m <= 8
7. Collision rate against the exact divisibility rate and 2^-n
8. RSA-BFHP equivalence on small moduli
9. Secret pairs recoverable from public keys at n in {5, 6, 7}
10. Byte-identical re-serialization of every file kind
"""

import random
import time
from fractions import Fraction

import pytest

from packages.bfhp.bfhp_core import BfhpInstance, brute_force_box, collision_experiment, solutions_in_box
from packages.bfhp.cli_bench.bench import bench_run
from packages.bfhp.cli_bench.formats import deserialize, serialize
from packages.bfhp.errors import MalformedBundleError
from packages.bfhp.numtheory import bitlen
from packages.bfhp.rsa_bfhp import check_equivalence, toy_rsa
from packages.bfhp.scheme import (
    Role,
    decrypt,
    encrypt,
    key_candidates,
    keygen_recipient,
    keygen_sender,
    setup,
    shared_from_recipient,
    shared_from_sender,
)

pytestmark = pytest.mark.slow


def _rejected(params, keys, bundle) -> bool:
    """ABORT, or refused outright because C1 is no longer below p."""
    try:
        return decrypt(params, keys, bundle).aborted
    except MalformedBundleError:
        return True


@pytest.fixture(scope="module")
def report():
    """One benchmark run shared by the ratio and speed checks."""
    return bench_run([128, 512, 2048], 3, random.Random(2048))


class TestSchemeAcceptance:
    """Agreement, round-trip and tamper sweeps."""

    @pytest.mark.parametrize("n", [32, 64, 128, 256])
    def test_shared_secret_agreement(self, n):
        rng = random.Random(n)
        params = setup(n, rng)
        started = time.perf_counter()
        for _ in range(1000):
            a = keygen_sender(params, rng)
            b = keygen_recipient(params, rng)
            e_ab = shared_from_sender(a.d, b.e_pub, params.p)
            assert e_ab == shared_from_recipient(b.d, a.e_pub, params.p)
        assert time.perf_counter() - started < 10

    @pytest.mark.parametrize("n", [32, 64, 128, 256])
    def test_round_trip_without_abort(self, n):
        rng = random.Random(1000 + n)
        params = setup(n, rng)
        for _ in range(100):
            a = keygen_sender(params, rng)
            b = keygen_recipient(params, rng)
            for _ in range(10):
                m = rng.randrange(params.p)
                result = decrypt(params, b, encrypt(params, a, b.e_pub, m))
                assert result.ok and result.message == m

    def test_single_bit_flips_abort(self):
        rng = random.Random(3)
        params = setup(64, rng)
        aborts = {"C1": 0, "C2": 0, "e_A": 0}
        trials = 1000
        for _ in range(trials):
            a = keygen_sender(params, rng)
            b = keygen_recipient(params, rng)
            bundle = encrypt(params, a, b.e_pub, rng.randrange(1, params.p))

            c1 = bundle.C1 ^ (1 << rng.randrange(bitlen(params.p)))
            aborts["C1"] += _rejected(params, b, bundle.model_copy(update={"C1": c1}))

            flipped = int.from_bytes(bundle.C2, "big") ^ (1 << rng.randrange(8 * len(bundle.C2)))
            c2 = flipped.to_bytes(len(bundle.C2), "big")
            aborts["C2"] += _rejected(params, b, bundle.model_copy(update={"C2": c2}))

            e_a = bundle.e_A ^ (1 << rng.randrange(bundle.e_A.bit_length()))
            aborts["e_A"] += _rejected(params, b, bundle.model_copy(update={"e_A": e_a}))

        assert aborts["C1"] == trials
        assert aborts["C2"] == trials
        assert aborts["e_A"] >= 999


class TestTableRatios:
    """Size and speed figures from the benchmark."""

    @pytest.mark.parametrize("n", [128, 512, 2048])
    def test_public_key_bit_length(self, n):
        rng = random.Random(n)
        params = setup(n, rng)
        for _ in range(5):
            assert bitlen(keygen_sender(params, rng).e_pub) in (3 * n, 3 * n + 1)
            assert bitlen(keygen_recipient(params, rng).e_pub) in (3 * n, 3 * n + 1)

    @pytest.mark.parametrize("n", [128, 512, 2048])
    def test_ciphertext_ratio(self, report, n):
        row = report.row(n, "encrypt")
        assert Fraction(9, 2) <= row.ratio_mc <= Fraction(11, 2)
        assert Fraction(3) <= row.ratio_me <= Fraction(13, 4)

    def test_encrypt_beats_modexp(self, report):
        assert report.speedup(2048) > 10


class TestSolverAcceptance:
    """Box solver, collision rate and key-candidate sweeps."""

    def test_solver_matches_brute_force(self):
        rng = random.Random(6)
        for n in range(3, 8):
            for m in range(n + 1, 9):
                for _ in range(200):
                    inst = BfhpInstance.plant(n, m, rng)
                    lo, hi = inst.box
                    found = solutions_in_box(inst.A1, inst.A2, inst.G, lo, hi)
                    assert found == brute_force_box(inst.A1, inst.A2, inst.G, lo, hi)
                    assert (inst.u, inst.v) in found

    @pytest.mark.parametrize("n", [3, 6])
    def test_collision_rate(self, n):
        estimate = collision_experiment(n, n + 10, 100_000, random.Random(n))
        assert abs(estimate.z_score) < 5
        ratio = estimate.fraction / estimate.claimed_rate
        assert Fraction(1, 2) < ratio < 2

    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_secret_pair_among_candidates(self, n, record_property):
        rng = random.Random(50 + n)
        params = setup(n, rng)
        counts = []
        for _ in range(50):
            keys = keygen_sender(params, rng)
            candidates = key_candidates(params, keys.e_pub, Role.SENDER)
            assert keys.secret_pair in candidates
            counts.append(len(candidates))
        record_property("candidate_counts", counts)
        record_property("mean_candidates", str(Fraction(sum(counts), len(counts))))
        assert min(counts) >= 1


class TestRsaAcceptance:
    """RSA-BFHP equivalence on small moduli."""

    @pytest.mark.parametrize("e", [3, 5, 7])
    def test_equivalence(self, e):
        rng = random.Random(e)
        moduli = [77, 2491] + [toy_rsa(16, e, rng, require_invertible=False).N for _ in range(3)]
        for modulus in moduli:
            assert all(check_equivalence(rng.randrange(modulus), e, modulus) for _ in range(500))


class TestSerializationAcceptance:
    """Re-serialization of every file kind."""

    def test_byte_identical(self):
        rng = random.Random(10)
        for _ in range(1000):
            params = setup(64, rng)
            a = keygen_sender(params, rng)
            b = keygen_recipient(params, rng)
            bundle = encrypt(params, a, b.e_pub, rng.randrange(params.p))
            for value, n in ((params, None), (a, 64), (b, 64), (bundle, 64)):
                data = serialize(value, n=n)
                decoded = deserialize(data)
                assert decoded.value == value
                assert serialize(decoded.value, n=decoded.n) == data
