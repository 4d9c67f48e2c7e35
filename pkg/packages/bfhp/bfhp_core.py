"""
The Bivariate Function Hard Problem G(u, v) = A1*u + A2*v.

Provides:
- Evaluation of G and the general integer solution line
- Exact t-interval arithmetic for the bounded search
- Desk-scale enumeration of every solution inside a box, with a cap
  that makes the solver refuse at cryptographic sizes
- The uniqueness (collision) experiment and the t-width estimate

Usage:
    line = general_solution(13, 11, 1070)
    solutions_in_box(13, 11, 1070, 32, 63)   # [(40, 50), (51, 37)]
"""

import logging
import math
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, model_validator

from .config import get_settings
from .errors import DomainError, SearchSpaceTooLarge
from .metrics import get_metrics_collector
from .numtheory import (
    RandomSource,
    ceil_div,
    ext_gcd,
    floor_div,
    open_interval,
    sample_open_interval,
    sample_pairwise_coprime,
)

logger = logging.getLogger(__name__)


class BfhpInstance(BaseModel):
    """A BFHP instance, optionally carrying its planted solution."""

    A1: int
    A2: int
    m: int
    n: int
    G: int
    u: int | None = None
    v: int | None = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_invariants(self) -> "BfhpInstance":
        if math.gcd(self.A1, self.A2) != 1:
            raise ValueError("gcd(A1, A2) must be 1")
        lo, hi = 1 << (self.n - 1), 1 << self.n
        if not (lo < self.A1 < hi and lo < self.A2 < hi):
            raise ValueError(f"A1, A2 must lie in ({lo}, {hi})")
        if (self.u is None) != (self.v is None):
            raise ValueError("u and v must be planted together")
        if self.u is not None and self.v is not None:
            box_lo, box_hi = open_interval(self.m)
            if not (box_lo < self.u < box_hi and box_lo < self.v < box_hi):
                raise ValueError("planted (u, v) must lie inside the m-bit box")
            if self.A1 * self.u + self.A2 * self.v != self.G:
                raise ValueError("G does not match the planted (u, v)")
        return self

    @property
    def box(self) -> tuple[int, int]:
        return open_interval(self.m)

    @classmethod
    def plant(cls, n: int, m: int, rng: RandomSource) -> "BfhpInstance":
        """Sample coprime n-bit coefficients and an in-box (u, v)."""
        a1, a2 = sample_pairwise_coprime(2, n, rng=rng)
        u = sample_open_interval(m, rng)
        v = sample_open_interval(m, rng)
        return cls(A1=a1, A2=a2, m=m, n=n, G=a1 * u + a2 * v, u=u, v=v)


class SolutionLine(BaseModel):
    """All solutions (u0 + step_u*t, v0 - step_v*t) of A1*u + A2*v = G."""

    u0: int
    v0: int
    step_u: int
    step_v: int

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_normalized(self) -> "SolutionLine":
        if not 0 <= self.u0 < self.step_u:
            raise ValueError("u0 must satisfy 0 <= u0 < A2")
        return self

    @property
    def A1(self) -> int:  # noqa: N802
        return self.step_v

    @property
    def A2(self) -> int:  # noqa: N802
        return self.step_u

    @property
    def G(self) -> int:  # noqa: N802
        return self.A1 * self.u0 + self.A2 * self.v0

    def at(self, t: int) -> tuple[int, int]:
        return self.u0 + self.step_u * t, self.v0 - self.step_v * t


class TRange(BaseModel):
    """Inclusive integer range [lo, hi] of t; empty when lo > hi."""

    lo: int
    hi: int

    model_config = ConfigDict(frozen=True)

    @property
    def size(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def intersect(self, other: "TRange") -> "TRange":
        return TRange(lo=max(self.lo, other.lo), hi=min(self.hi, other.hi))


class TIntervals(BaseModel):
    u: TRange
    v: TRange
    joint: TRange

    model_config = ConfigDict(frozen=True)


class CollisionEstimate(BaseModel):
    """Outcome of the collision experiment; `fraction` is the estimate."""

    n: int
    m: int
    trials: int
    hits: int
    fraction: Fraction
    expected_rate: Fraction
    variance: Fraction

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def claimed_rate(self) -> Fraction:
        return Fraction(1, 1 << self.n)

    @property
    def z_score(self) -> float:
        if self.variance == 0:
            return 0.0
        expected_hits = self.expected_rate * self.trials
        return float(self.hits - expected_hits) / math.sqrt(self.variance)


class BoxCountSurvey(BaseModel):
    n: int
    m: int
    instances: int
    mean_count: Fraction
    expected_width: int
    always_contains_planted: bool

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def _require_coprime(a1: int, a2: int) -> None:
    if a1 <= 0 or a2 <= 0:
        raise DomainError("A1, A2", "must be positive")
    if math.gcd(a1, a2) != 1:
        raise DomainError("A1, A2", f"gcd({a1}, {a2}) != 1")


def eval_g(A1: int, A2: int, u: int, v: int) -> int:  # noqa: N803
    """G(u, v) = A1*u + A2*v."""
    _require_coprime(A1, A2)
    if u < 0 or v < 0:
        raise DomainError("u, v", "must be non-negative")
    return A1 * u + A2 * v


def general_solution(A1: int, A2: int, G: int) -> SolutionLine:  # noqa: N803
    """
    Particular solution normalized to 0 <= u0 < A2, plus the line steps.

    v0 is exact and may be negative.
    """
    _require_coprime(A1, A2)
    _, x, _ = ext_gcd(A1, A2)
    u0 = (G * x) % A2
    v0, rem = divmod(G - A1 * u0, A2)
    assert rem == 0
    return SolutionLine(u0=u0, v0=v0, step_u=A2, step_v=A1)


def t_interval(line: SolutionLine, lo: int, hi: int) -> TIntervals:
    """
    Integer t keeping u, v (and both) strictly inside (lo, hi).

    lo < u0 + A2*t < hi and lo < v0 - A1*t < hi.
    """
    u_range = TRange(
        lo=floor_div(lo - line.u0, line.step_u) + 1,
        hi=ceil_div(hi - line.u0, line.step_u) - 1,
    )
    v_range = TRange(
        lo=floor_div(line.v0 - hi, line.step_v) + 1,
        hi=ceil_div(line.v0 - lo, line.step_v) - 1,
    )
    return TIntervals(u=u_range, v=v_range, joint=u_range.intersect(v_range))


def solutions_in_box(
    A1: int,  # noqa: N803
    A2: int,  # noqa: N803
    G: int,  # noqa: N803
    lo: int,
    hi: int,
    cap: int | None = None,
) -> list[tuple[int, int]]:
    """
    Every (u, v) with A1*u + A2*v = G and lo < u, v < hi, sorted by u.

    Raises:
        SearchSpaceTooLarge: If the joint t-range is wider than the cap
    """
    if lo >= hi:
        raise DomainError("lo, hi", "lo must be below hi")
    cap = cap or get_settings().t_cap
    line = general_solution(A1, A2, G)
    joint = t_interval(line, lo, hi).joint
    logger.debug("Joint t-range [%d, %d] (%d values)", joint.lo, joint.hi, joint.size)

    if joint.size > cap:
        get_metrics_collector().record_solver_call("refused")
        raise SearchSpaceTooLarge("t-range", joint.size, cap)

    solutions = [line.at(t) for t in range(joint.lo, joint.hi + 1)]
    get_metrics_collector().record_solver_call("solved" if solutions else "empty")
    return solutions


def brute_force_box(
    A1: int,  # noqa: N803
    A2: int,  # noqa: N803
    G: int,  # noqa: N803
    lo: int,
    hi: int,
    cap: int | None = None,
) -> list[tuple[int, int]]:
    """Reference enumeration over every u in the box."""
    _require_coprime(A1, A2)
    cap = cap or get_settings().t_cap
    width = max(0, hi - lo - 1)
    if width > cap:
        raise SearchSpaceTooLarge("u-range", width, cap)
    found = []
    for u in range(lo + 1, hi):
        rest = G - A1 * u
        if rest % A2 == 0 and lo < rest // A2 < hi:
            found.append((u, rest // A2))
    return found


def expected_t_width(m: int, n: int) -> int:
    """2^(m-n-2): the estimated number of t keeping u inside the m-bit box."""
    if m < n + 2:
        raise DomainError("m", "must be at least n + 2")
    return 1 << (m - n - 2)


def _divisible_difference_rate(count: int, modulus: int) -> Fraction:
    """P[modulus | x - y] for distinct x, y drawn uniformly from `count` consecutive ints."""
    q, s = divmod(count, modulus)
    same_residue = s * (q + 1) * q + (modulus - s) * q * (q - 1)
    return Fraction(same_residue, count * (count - 1))


def collision_experiment(n: int, m: int, trials: int, rng: RandomSource) -> CollisionEstimate:
    """
    Empirical rate at which a second pair (u2, v2) with u2 != u1 solves G.

    Each trial draws fresh coprime n-bit (A1, A2) and independent u1 != u2
    and v1 from the open m-bit interval. A hit is a trial where
    v2 = v1 - A1*(u1 - u2)/A2 is an integer, i.e. A2 divides u1 - u2.
    """
    if n < 3:
        raise DomainError("n", "must be at least 3")
    if m <= n:
        raise DomainError("m", "must exceed n")
    if trials < 1:
        raise DomainError("trials", "must be at least 1")

    lo, hi = open_interval(m)
    width = hi - lo - 1
    hits = 0
    expected = Fraction(0)
    variance = Fraction(0)

    for _ in range(trials):
        a1, a2 = sample_pairwise_coprime(2, n, rng=rng)
        u1 = rng.randrange(lo + 1, hi)
        u2 = rng.randrange(lo + 1, hi - 1)
        if u2 >= u1:
            u2 += 1
        v1 = rng.randrange(lo + 1, hi)
        numerator = a1 * (u1 - u2)
        if numerator % a2 == 0:
            hits += 1
            logger.debug("Collision: v2 = %d", v1 - numerator // a2)
        rate = _divisible_difference_rate(width, a2)
        expected += rate
        variance += rate * (1 - rate)

    estimate = CollisionEstimate(
        n=n,
        m=m,
        trials=trials,
        hits=hits,
        fraction=Fraction(hits, trials),
        expected_rate=expected / trials,
        variance=variance,
    )
    logger.info(
        "Collision experiment n=%d m=%d: %d/%d hits (claimed rate 2^-%d)", n, m, hits, trials, n
    )
    return estimate


def box_count_survey(n: int, m: int, instances: int, rng: RandomSource) -> BoxCountSurvey:
    """Mean number of in-box solutions over planted instances."""
    total = 0
    contains = True
    for _ in range(instances):
        inst = BfhpInstance.plant(n, m, rng)
        lo, hi = inst.box
        found = solutions_in_box(inst.A1, inst.A2, inst.G, lo, hi)
        total += len(found)
        contains = contains and (inst.u, inst.v) in found
    return BoxCountSurvey(
        n=n,
        m=m,
        instances=instances,
        mean_count=Fraction(total, instances),
        expected_width=expected_t_width(m, n),
        always_contains_planted=contains,
    )
