"""
BFHP toolkit.

Provides:
- Number theory primitives (primes, extended Euclid, exact roots, coprime sampling)
- The Bivariate Function Hard Problem: solution lines, bounded enumeration,
  collision and box-count experiments
- RSA rewritten as a BFHP instance (C, j) and its toy-scale checks
- A two-party hybrid cryptosystem (scheme subpackage)
- Binary file formats, a CLI and a benchmark harness (cli_bench subpackage)

Usage:
    from packages.bfhp import make_rng, solutions_in_box
    from packages.bfhp.scheme import decrypt, encrypt, keygen_recipient, keygen_sender, setup

    solutions_in_box(13, 11, 1070, 32, 63)   # [(40, 50), (51, 37)]

    rng = make_rng(7)
    params = setup(128, rng)
    alice, bob = keygen_sender(params, rng), keygen_recipient(params, rng)
    decrypt(params, bob, encrypt(params, alice, bob.e_pub, 42)).message   # 42
"""

from .bfhp_core import (
    BfhpInstance,
    BoxCountSurvey,
    CollisionEstimate,
    SolutionLine,
    TIntervals,
    TRange,
    box_count_survey,
    brute_force_box,
    collision_experiment,
    eval_g,
    expected_t_width,
    general_solution,
    solutions_in_box,
    t_interval,
)
from .config import BfhpSettings, get_settings, validate_settings
from .errors import (
    BfhpError,
    ConfigurationError,
    DomainError,
    FormatError,
    IntegrityAbort,
    InvalidInstanceError,
    MalformedBundleError,
    SamplingBudgetExceeded,
    SearchSpaceTooLarge,
)
from .metrics import MetricsCollector, get_metrics_collector
from .numtheory import (
    bitlen,
    ext_gcd,
    gen_prime,
    integer_root,
    is_probable_prime,
    make_rng,
    sample_pairwise_coprime,
)
from .rsa_bfhp import (
    Lemma1Coverage,
    RsaBfhpInstance,
    check_equivalence,
    lemma1_coverage,
    lemma1_interval,
    rsa_general_solution,
    search_j,
    solve_given_j,
    to_bfhp,
    toy_rsa,
)

__all__ = [
    "BfhpError",
    "BfhpInstance",
    "BfhpSettings",
    "BoxCountSurvey",
    "CollisionEstimate",
    "ConfigurationError",
    "DomainError",
    "FormatError",
    "IntegrityAbort",
    "InvalidInstanceError",
    "Lemma1Coverage",
    "MalformedBundleError",
    "MetricsCollector",
    "RsaBfhpInstance",
    "SamplingBudgetExceeded",
    "SearchSpaceTooLarge",
    "SolutionLine",
    "TIntervals",
    "TRange",
    "bitlen",
    "box_count_survey",
    "brute_force_box",
    "check_equivalence",
    "collision_experiment",
    "eval_g",
    "expected_t_width",
    "ext_gcd",
    "gen_prime",
    "general_solution",
    "get_metrics_collector",
    "get_settings",
    "integer_root",
    "is_probable_prime",
    "lemma1_coverage",
    "lemma1_interval",
    "make_rng",
    "rsa_general_solution",
    "sample_pairwise_coprime",
    "search_j",
    "solutions_in_box",
    "solve_given_j",
    "t_interval",
    "to_bfhp",
    "toy_rsa",
    "validate_settings",
]
