"""Isentropic sources: subset entropy depending only on subset size.

Exchangeable sources (invariant under permuting terminals) are isentropic,
as are complete-graph PIN sources.  For isentropic sources the singleton
partition always minimizes the partition surplus; the structural reason is
that the per-symbol conditional block entropy

    g(k) / k,   g(k) = H(X_{1..k} | X_{k+1..m})

is non-decreasing in k, which makes coarser partitions pay more surplus
per merged cell.  This module classifies oracles as isentropic (within a
spread tolerance), extracts the per-size entropy levels, evaluates g and
checks the monotonicity, and computes the complementary surplus

    complement(P) = H(X_{1..m}) - surplus(P),

which for isentropic sources is monotone in partition refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Optional

from . import subsets
from .capacity import partition_surplus
from .errors import InvalidSubsetError, PreconditionError, SizeLimitError
from .partitions import Partition
from .sources import EntropyOracle, conditional_entropy

MAX_ISENTROPY_M = 12

DEFAULT_SPREAD_TOL = 1e-9

#: Spreads beyond this multiple of the tolerance are clear violations;
#: spreads between the two are reported as ambiguous.
_CLEAR_FACTOR = 10


@dataclass(frozen=True)
class SpreadWitness:
    """Two same-size subsets whose entropies differ the most."""

    low_subset: int
    high_subset: int
    spread: Any


@dataclass(frozen=True)
class IsentropyProfile:
    status: str  # "yes" | "no" | "ambiguous"
    levels: Optional[tuple[Any, ...]]
    spreads: tuple[Any, ...]
    worst: Optional[SpreadWitness]


def isentropy_check(oracle: EntropyOracle, tol: float = DEFAULT_SPREAD_TOL) -> IsentropyProfile:
    """Classify the oracle by the largest entropy spread within each size.

    "yes" when every size-k spread is <= tol (then ``levels[k-1]`` is the
    common size-k entropy, taken from the prefix subset {1..k}); "no" when
    some spread exceeds 10*tol, with the offending pair as witness;
    "ambiguous" in between.  Exact oracles are classified exactly.
    """
    m = oracle.m
    if m > MAX_ISENTROPY_M:
        raise SizeLimitError(f"isentropy check supports m <= {MAX_ISENTROPY_M}")
    spreads = []
    worst: Optional[SpreadWitness] = None
    levels = []
    for k in range(1, m + 1):
        lo_mask = hi_mask = None
        lo = hi = None
        for combo in combinations(range(m), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            h = oracle.entropy(mask)
            if lo is None or h < lo:
                lo, lo_mask = h, mask
            if hi is None or h > hi:
                hi, hi_mask = h, mask
        spread = hi - lo
        spreads.append(spread)
        levels.append(oracle.entropy(subsets.full_mask(k)))
        if worst is None or spread > worst.spread:
            worst = SpreadWitness(lo_mask, hi_mask, spread)
    if oracle.exact:
        flat = all(s == 0 for s in spreads)
        return IsentropyProfile(
            "yes" if flat else "no",
            tuple(levels) if flat else None,
            tuple(spreads),
            None if flat else worst,
        )
    if all(s <= tol for s in spreads):
        return IsentropyProfile("yes", tuple(levels), tuple(spreads), None)
    if worst is not None and worst.spread > _CLEAR_FACTOR * tol:
        return IsentropyProfile("no", None, tuple(spreads), worst)
    return IsentropyProfile("ambiguous", None, tuple(spreads), worst)


def block_conditional_entropy(oracle: EntropyOracle, k: int) -> Any:
    """g(k) = H(X_{1..k} | X_{k+1..m}) for 1 <= k <= m."""
    m = oracle.m
    if not 1 <= k <= m:
        raise InvalidSubsetError(f"block size {k} outside 1..{m}")
    prefix = subsets.full_mask(k)
    rest = subsets.full_mask(m) & ~prefix
    return conditional_entropy(oracle, prefix, rest)


@dataclass(frozen=True)
class MonotonicityViolation:
    k: int
    rate_k: Any
    rate_next: Any


def check_block_rate_monotone(
    oracle: EntropyOracle,
    tol: float = DEFAULT_SPREAD_TOL,
) -> tuple[bool, Optional[MonotonicityViolation]]:
    """Check that g(k)/k is non-decreasing over k = 1..m.

    Requires an isentropic oracle (the quantity is representative of all
    size-k blocks only then); raises PreconditionError otherwise.
    """
    profile = isentropy_check(oracle, tol)
    if profile.status != "yes":
        raise PreconditionError(f"oracle is not isentropic (status {profile.status!r})")
    rates = []
    for k in range(1, oracle.m + 1):
        g = block_conditional_entropy(oracle, k)
        rates.append(Fraction(g, k) if oracle.exact else g / k)
    slack = 0 if oracle.exact else tol
    for k in range(1, oracle.m):
        if rates[k] < rates[k - 1] - slack:
            return False, MonotonicityViolation(k, rates[k - 1], rates[k])
    return True, None


def surplus_complement(oracle: EntropyOracle, partition: Partition) -> Any:
    """H(X_{1..m}) - surplus(P); equals the normalized sum of cell-
    complement conditional entropies, which the test suite verifies."""
    return oracle.entropy(subsets.full_mask(oracle.m)) - partition_surplus(oracle, partition)
