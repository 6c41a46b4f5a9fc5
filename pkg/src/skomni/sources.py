"""Finite multiterminal sources and subset-entropy oracles.

What this module provides
-------------------------
* ``JointSource``: an immutable joint pmf over m terminal alphabets, given
  as explicit atoms (probability mass points).  Cells not listed carry zero
  mass, so sparse supports stay sparse.
* ``marginal``: projection of the pmf onto a subset of terminals.
* ``TabularOracle``: the standard float-valued subset-entropy oracle, with
  a lazily filled cache keyed by subset bitmask.
* ``ExtendedPrecisionOracle``: same queries evaluated in mpmath arithmetic;
  the caller controls precision with ``mpmath.workdps``.
* ``conditional_entropy`` / ``mutual_information`` over any oracle.

Entropies are in bits.  Marginal masses are accumulated with ``math.fsum``
over the contributing atoms (per projected cell, then again over the
entropy terms), so equal sources built in different atom orders produce
bitwise-identical entropy values.

Every analysis in the package consumes an object with the ``EntropyOracle``
shape rather than a pmf, so exact integer-valued oracles (see ``pin``) and
high-precision oracles plug into the same code paths.  Oracles answer the
empty subset with zero.  A ``TabularOracle`` is safe to share between
threads after construction: cache slots are only ever written with the
value they would always receive, so duplicated fills are benign.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Protocol

from . import subsets
from .errors import InputError, InvalidSubsetError

#: Relative slack allowed between the atom mass total and 1.
PMF_TOLERANCE = 1e-9

#: Largest m for which the entropy cache is a dense list rather than a dict.
_DENSE_CACHE_LIMIT = 20


class EntropyOracle(Protocol):
    """Anything that can answer subset-entropy queries for m terminals.

    ``exact`` declares whether returned values support exact comparison
    (integer or rational arithmetic); float- and mpf-valued oracles set it
    to False and downstream verdicts use tolerance bands instead.
    """

    m: int
    exact: bool

    def entropy(self, subset: int) -> Any: ...


@dataclass(frozen=True)
class JointSource:
    """Joint pmf of m terminals over finite alphabets.

    Atoms map outcome tuples (0-indexed symbols, one per terminal) to
    probabilities.  Validation happens on construction; afterwards the
    object is immutable.  Atom order is canonicalized (sorted by outcome)
    so that equal sources are equal objects and entropy accumulation is
    deterministic.
    """

    m: int
    alphabet_sizes: tuple[int, ...]
    atoms: dict[tuple[int, ...], float]

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or not 2 <= self.m <= subsets.MAX_TERMINALS:
            raise InputError(f"m={self.m!r} outside 2..{subsets.MAX_TERMINALS}")
        sizes = tuple(self.alphabet_sizes)
        if len(sizes) != self.m or any(not isinstance(s, int) or s < 1 for s in sizes):
            raise InputError(f"alphabet_sizes {self.alphabet_sizes!r} invalid for m={self.m}")
        if not self.atoms:
            raise InputError("source has no atoms")
        clean: dict[tuple[int, ...], float] = {}
        for x, p in sorted(self.atoms.items()):
            x = tuple(x)
            if len(x) != self.m or any(
                not isinstance(c, int) or not 0 <= c < sizes[i] for i, c in enumerate(x)
            ):
                raise InputError(f"atom {x!r} outside the alphabet grid")
            p = float(p)
            if p < 0.0 or not math.isfinite(p):
                raise InputError(f"atom {x!r} has probability {p!r}")
            clean[x] = p
        total = math.fsum(clean.values())
        if abs(total - 1.0) > PMF_TOLERANCE:
            raise InputError(f"atoms sum to {total:.6f}, not 1")
        object.__setattr__(self, "alphabet_sizes", sizes)
        object.__setattr__(self, "atoms", clean)

    @classmethod
    def from_json_dict(cls, data: Any, *, renormalize: bool = False) -> "JointSource":
        if not isinstance(data, dict):
            raise InputError("source JSON must be an object")
        for key in ("m", "alphabet_sizes", "atoms"):
            if key not in data:
                raise InputError(f"source JSON missing {key!r}")
        raw_atoms = data["atoms"]
        if not isinstance(raw_atoms, list):
            raise InputError("source JSON field 'atoms' must be a list")
        atoms: dict[tuple[int, ...], float] = {}
        for entry in raw_atoms:
            if not isinstance(entry, dict) or "x" not in entry or "p" not in entry:
                raise InputError(f"atom entry {entry!r} must have 'x' and 'p'")
            x = tuple(entry["x"])
            if x in atoms:
                raise InputError(f"atom {list(x)!r} listed twice")
            atoms[x] = entry["p"]
        if renormalize:
            total = math.fsum(float(p) for p in atoms.values())
            if total <= 0.0 or not math.isfinite(total):
                raise InputError(f"cannot renormalize: atoms sum to {total!r}")
            atoms = {x: float(p) / total for x, p in atoms.items()}
        try:
            sizes = tuple(data["alphabet_sizes"])
        except TypeError:
            raise InputError("source JSON field 'alphabet_sizes' must be a list") from None
        return cls(data["m"], sizes, atoms)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "alphabet_sizes": list(self.alphabet_sizes),
            "atoms": [{"x": list(x), "p": p} for x, p in self.atoms.items()],
        }


def load_source(path: str | Path, *, renormalize: bool = False) -> JointSource:
    """Read a source JSON file.  Raises InputError with a diagnostic on failure."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return JointSource.from_json_dict(data, renormalize=renormalize)


def marginal(source: JointSource, subset: int) -> dict[tuple[int, ...], float]:
    """Project the pmf onto the terminals of ``subset`` (nonempty).

    Returns a dict keyed by the projected outcome tuple, in the order the
    projected cells first appear in canonical atom order.  Each projected
    mass is an fsum over its contributing atoms.
    """
    subsets.check_subset(subset, source.m)
    keep = [t - 1 for t in subsets.members(subset)]
    buckets: dict[tuple[int, ...], list[float]] = {}
    for x, p in source.atoms.items():
        key = tuple(x[i] for i in keep)
        buckets.setdefault(key, []).append(p)
    return {key: math.fsum(ps) for key, ps in buckets.items()}


def _entropy_of_masses(masses: list[float]) -> float:
    return -math.fsum(p * math.log2(p) for p in masses if p > 0.0)


class TabularOracle:
    """Subset-entropy oracle backed by an explicit joint pmf (float bits)."""

    exact = False

    def __init__(self, source: JointSource):
        self.source = source
        self.m = source.m
        if source.m <= _DENSE_CACHE_LIMIT:
            self._cache: Any = [None] * (1 << source.m)
        else:
            self._cache = {}

    def entropy(self, subset: int) -> float:
        subsets.check_subset(subset, self.m, allow_empty=True)
        if subset == 0:
            return 0.0
        cached = self._cache[subset] if isinstance(self._cache, list) else self._cache.get(subset)
        if cached is None:
            cached = _entropy_of_masses(list(marginal(self.source, subset).values()))
            self._cache[subset] = cached
        return cached


class ExtendedPrecisionOracle:
    """Subset-entropy oracle evaluated in mpmath arithmetic.

    Precision is whatever ``mpmath.mp`` is set to when queries run, so wrap
    the whole computation that consumes this oracle in ``mpmath.workdps``.
    Atom probabilities are converted from float exactly (binary to binary),
    only the log/summation work happens at extended precision.
    """

    exact = False

    def __init__(self, source: JointSource):
        import mpmath

        self._mpmath = mpmath
        self.source = source
        self.m = source.m
        self._cache: dict[int, Any] = {}

    def entropy(self, subset: int) -> Any:
        subsets.check_subset(subset, self.m, allow_empty=True)
        mp = self._mpmath
        if subset == 0:
            return mp.mpf(0)
        if subset not in self._cache:
            keep = [t - 1 for t in subsets.members(subset)]
            buckets: dict[tuple[int, ...], Any] = {}
            for x, p in self.source.atoms.items():
                key = tuple(x[i] for i in keep)
                buckets[key] = buckets.get(key, mp.mpf(0)) + mp.mpf(p)
            ln2 = mp.log(2)
            acc = mp.mpf(0)
            for mass in buckets.values():
                if mass > 0:
                    acc -= mass * mp.log(mass) / ln2
            self._cache[subset] = acc
        return self._cache[subset]


def conditional_entropy(oracle: EntropyOracle, a: int, b: int) -> Any:
    """H(X_A | X_B) = H(X_{A|B joint}) - H(X_B).  B may be empty."""
    subsets.check_subset(a, oracle.m)
    subsets.check_subset(b, oracle.m, allow_empty=True)
    if a & b:
        raise InvalidSubsetError(
            f"subsets {subsets.members(a)} and {subsets.members(b)} overlap"
        )
    return oracle.entropy(a | b) - oracle.entropy(b)


def mutual_information(oracle: EntropyOracle, a: int, b: int) -> Any:
    """I(X_A ; X_B) for disjoint nonempty subsets."""
    subsets.check_subset(a, oracle.m)
    subsets.check_subset(b, oracle.m)
    if a & b:
        raise InvalidSubsetError(
            f"subsets {subsets.members(a)} and {subsets.members(b)} overlap"
        )
    return oracle.entropy(a) + oracle.entropy(b) - oracle.entropy(a | b)
