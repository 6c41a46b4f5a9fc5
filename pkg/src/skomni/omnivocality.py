"""When must every terminal talk to reach secret-key capacity?

A terminal subset D can stay silent without loss iff the restricted
capacity with speakers T = {1..m} minus D equals the unrestricted
capacity.  Omnivocality (all m terminals talking) is *necessary* iff no
nonempty D works.  Three decision routes are provided:

* ``verdict_by_condition``: if the singleton partition is the unique
  surplus minimizer, omnivocality is necessary.  The converse direction is
  unproven for m >= 4, so failure of the condition returns Unknown.
* ``verdict_for_three_terminals``: for m = 3 the condition is an exact
  characterization; when it fails, an explicit silent set is constructed
  from the witness set W = {k : surplus(S) >= surplus of the partition
  cutting k off}.  |W| >= 2 lets a single speaker carry the protocol (two
  silent terminals from W); |W| = 1 silences exactly that terminal.
* ``verdict_by_lp``: capacity restricted to each leave-one-out speaker set
  is compared against the unrestricted capacity.  A scheme for speaker set
  T is also a scheme for any larger speaker set, so restricted capacity is
  monotone in T; if any proper silent set achieves capacity then so does
  some single silent terminal, and checking the m leave-one-out sets is
  exhaustive.  The verdict is exact whenever the oracle is.

``probe_conjecture`` combines the condition with the LP route on one
source and classifies the outcome; a candidate counterexample (condition
fails but the LP still says necessary) is re-verified at extended
precision before being reported, so float artifacts do not survive into
hunt logs.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass
from typing import Any, Optional, Union

from . import subsets
from .capacity import (
    DEFAULT_TIE_TOL,
    MinimizerStatus,
    MinimizerVerdict,
    partition_surplus,
    singleton_minimizer_check,
    singleton_partition,
    sk_capacity,
)
from .errors import InternalInconsistencyError, SizeLimitError
from .generators import random_source
from .partitions import isolating_partition
from .pin import PinGraph, PinOracle
from .silent_rate import silent_capacity
from .sources import EntropyOracle, ExtendedPrecisionOracle, JointSource, TabularOracle


class OmniStatus(str, enum.Enum):
    NECESSARY = "Necessary"
    NOT_NECESSARY = "NotNecessary"
    UNKNOWN = "Unknown"
    AMBIGUOUS = "NumericallyAmbiguous"


class Construction(str, enum.Enum):
    """How a NotNecessary verdict silences terminals."""

    SINGLE_SPEAKER = "single-speaker"  # one terminal talks, two stay silent
    SINGLE_SILENT = "single-silent"  # one terminal stays silent
    LP_EQUALITY = "lp-equality"  # a leave-one-out LP matched the capacity


@dataclass(frozen=True)
class SilentWitness:
    silent: int
    construction: Construction


@dataclass(frozen=True)
class EvidenceRow:
    speakers: int
    silent_capacity: Any
    capacity: Any
    gap: Any


@dataclass(frozen=True)
class OmnivocalityVerdict:
    status: OmniStatus
    method: str
    silent_witness: Optional[SilentWitness]
    evidence: tuple[EvidenceRow, ...]
    minimizer: Optional[MinimizerVerdict]
    #: For the three-terminal route: mask of terminals whose cut surplus
    #: does not exceed the singleton surplus (any two of them may be the
    #: silent pair when there are at least two).
    w_set: Optional[int] = None


def _require_m(oracle: EntropyOracle, method: str) -> int:
    m = oracle.m
    if m == 2:
        raise SizeLimitError("omnivocality is never necessary for m = 2")
    if m < 2:
        raise SizeLimitError(f"{method} needs m >= 3")
    return m


def verdict_by_condition(
    oracle: EntropyOracle, tie_tol: float = DEFAULT_TIE_TOL
) -> OmnivocalityVerdict:
    """Sufficient condition: unique singleton minimizer forces omnivocality."""
    _require_m(oracle, "condition")
    mv = singleton_minimizer_check(oracle, "isolating", tie_tol)
    if mv.status is MinimizerStatus.UNIQUE:
        status = OmniStatus.NECESSARY
    elif mv.status is MinimizerStatus.AMBIGUOUS:
        status = OmniStatus.AMBIGUOUS
    else:
        status = OmniStatus.UNKNOWN
    return OmnivocalityVerdict(status, "condition", None, (), mv)


def verdict_for_three_terminals(
    oracle: EntropyOracle, tie_tol: float = DEFAULT_TIE_TOL
) -> OmnivocalityVerdict:
    """Exact decision for m = 3, with an explicit silent set when possible."""
    m = _require_m(oracle, "three-terminal decision")
    if m != 3:
        raise SizeLimitError("three-terminal decision needs m = 3")
    mv = singleton_minimizer_check(oracle, "isolating", tie_tol)
    if mv.status is MinimizerStatus.UNIQUE:
        return OmnivocalityVerdict(OmniStatus.NECESSARY, "three-terminal", None, (), mv)
    if mv.status is MinimizerStatus.AMBIGUOUS:
        return OmnivocalityVerdict(OmniStatus.AMBIGUOUS, "three-terminal", None, (), mv)

    band = 0 if oracle.exact else tie_tol
    s_value = partition_surplus(oracle, singleton_partition(3))
    w_mask = 0
    for k in (1, 2, 3):
        cut = partition_surplus(oracle, isolating_partition(3, 1 << (k - 1)))
        if cut - s_value <= band:
            w_mask |= 1 << (k - 1)
    w_members = subsets.members(w_mask)
    if len(w_members) >= 2:
        silent = (1 << (w_members[-1] - 1)) | (1 << (w_members[-2] - 1))
        witness = SilentWitness(silent, Construction.SINGLE_SPEAKER)
    elif len(w_members) == 1:
        witness = SilentWitness(w_mask, Construction.SINGLE_SILENT)
    else:
        raise InternalInconsistencyError(
            "singleton partition is not the unique minimizer, "
            "but no cut surplus falls below the singleton surplus"
        )
    return OmnivocalityVerdict(
        OmniStatus.NOT_NECESSARY, "three-terminal", witness, (), mv, w_set=w_mask
    )


def verdict_by_lp(
    oracle: EntropyOracle, tie_tol: float = DEFAULT_TIE_TOL
) -> OmnivocalityVerdict:
    """Compare capacity against every leave-one-out restricted capacity."""
    m = _require_m(oracle, "LP comparison")
    if m > 12:
        raise SizeLimitError("LP comparison supports m <= 12")
    c = sk_capacity(oracle, tie_tol).value
    band = 0 if oracle.exact else tie_tol
    rows = []
    equality: Optional[int] = None
    ambiguous = False
    full = subsets.full_mask(m)
    for u in range(1, m + 1):
        speakers = full & ~(1 << (u - 1))
        report = silent_capacity(oracle, speakers)
        gap = c - report.capacity
        rows.append(EvidenceRow(speakers, report.capacity, c, gap))
        if gap < -band:
            raise InternalInconsistencyError(
                f"restricted capacity exceeds capacity by {-gap} "
                f"with terminal {u} silent"
            )
        if gap == 0:
            if equality is None:
                equality = u
        elif gap <= band:
            ambiguous = True
    evidence = tuple(rows)
    if equality is not None:
        witness = SilentWitness(1 << (equality - 1), Construction.LP_EQUALITY)
        return OmnivocalityVerdict(OmniStatus.NOT_NECESSARY, "lp", witness, evidence, None)
    if ambiguous:
        return OmnivocalityVerdict(OmniStatus.AMBIGUOUS, "lp", None, evidence, None)
    return OmnivocalityVerdict(OmniStatus.NECESSARY, "lp", None, evidence, None)


class Classification(str, enum.Enum):
    CONSISTENT_PROVEN = "ConsistentProven"
    CONSISTENT_CONVERSE = "ConsistentConverse"
    CANDIDATE = "CandidateCounterexample"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ConjectureProbe:
    condition: MinimizerStatus
    lp: OmniStatus
    classification: Classification
    capacity: Any
    gaps: tuple[Any, ...]
    reverified: bool
    minimizer: MinimizerVerdict
    lp_verdict: OmnivocalityVerdict


def _classify(condition: MinimizerStatus, lp: OmniStatus) -> Classification:
    if condition is MinimizerStatus.AMBIGUOUS or lp is OmniStatus.AMBIGUOUS:
        return Classification.INCONCLUSIVE
    if condition is MinimizerStatus.UNIQUE:
        if lp is OmniStatus.NOT_NECESSARY:
            raise InternalInconsistencyError(
                "unique singleton minimizer, yet the LP comparison found "
                "a silent terminal achieving capacity"
            )
        return Classification.CONSISTENT_PROVEN
    if lp is OmniStatus.NOT_NECESSARY:
        return Classification.CONSISTENT_CONVERSE
    return Classification.CANDIDATE


def _as_oracle(model: Union[JointSource, PinGraph, EntropyOracle]) -> EntropyOracle:
    if isinstance(model, JointSource):
        return TabularOracle(model)
    if isinstance(model, PinGraph):
        return PinOracle(model)
    return model


def probe_conjecture(
    model: Union[JointSource, PinGraph, EntropyOracle],
    tie_tol: float = DEFAULT_TIE_TOL,
    reverify: bool = True,
    reverify_dps: int = 60,
) -> ConjectureProbe:
    """Run the condition and the LP route on one source and classify.

    For m >= 4 the converse of the condition is open, so a source whose
    singleton partition is *not* the unique minimizer, yet where every
    leave-one-out LP still falls short of capacity, is a candidate
    counterexample.  Tabular candidates are re-verified at
    ``reverify_dps`` digits with a correspondingly tightened tie band; the
    re-verified statuses replace the float ones, so a candidate that was a
    rounding artifact is demoted (usually to Inconclusive, since extended
    precision cannot confirm an exact tie either).
    """
    oracle = _as_oracle(model)
    if oracle.m < 4:
        raise SizeLimitError("conjecture probe targets m >= 4")
    mv = singleton_minimizer_check(oracle, "isolating", tie_tol)
    lp = verdict_by_lp(oracle, tie_tol)
    classification = _classify(mv.status, lp.status)
    reverified = False
    if (
        classification is Classification.CANDIDATE
        and reverify
        and isinstance(model, JointSource)
    ):
        mv, lp = _extended_verdicts(model, reverify_dps)
        classification = _classify(mv.status, lp.status)
        reverified = True
    return ConjectureProbe(
        condition=mv.status,
        lp=lp.status,
        classification=classification,
        capacity=lp.evidence[0].capacity,
        gaps=tuple(row.gap for row in lp.evidence),
        reverified=reverified,
        minimizer=mv,
        lp_verdict=lp,
    )


def _extended_verdicts(
    source: JointSource, dps: int
) -> tuple[MinimizerVerdict, OmnivocalityVerdict]:
    import mpmath

    with mpmath.workdps(dps):
        oracle = ExtendedPrecisionOracle(source)
        band = mpmath.mpf(10) ** (-(dps // 2))
        mv = singleton_minimizer_check(oracle, "isolating", band)
        lp = verdict_by_lp(oracle, band)
    return mv, lp


def atoms_digest(source: JointSource) -> str:
    """Short stable fingerprint of a source's pmf."""
    payload = json.dumps(source.to_json_dict(), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def hunt_record(
    m: int,
    alphabet_sizes: tuple[int, ...],
    base_seed: int,
    trial: int,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> dict[str, Any]:
    """One self-contained hunt trial: generate, probe, serialize.

    Pure function of its arguments, so trials can run in any process pool
    and still produce identical records.  Candidate records embed the full
    source so they can be re-examined without the original seed.
    """
    seed = base_seed + trial
    source = random_source(m, alphabet_sizes, seed)
    probe = probe_conjecture(source, tie_tol)
    record: dict[str, Any] = {
        "trial": trial,
        "seed": seed,
        "m": m,
        "alphabet_sizes": list(alphabet_sizes),
        "atoms_digest": atoms_digest(source),
        "condition": probe.condition.value,
        "lp": probe.lp.value,
        "classification": probe.classification.value,
        "capacity": float(probe.capacity),
        "gaps": [float(g) for g in probe.gaps],
    }
    if probe.classification is Classification.CANDIDATE:
        record["source"] = source.to_json_dict()
    return record
