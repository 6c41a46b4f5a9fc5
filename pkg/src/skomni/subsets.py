"""Terminal subsets as integer bitmasks.

Terminals are numbered 1..m.  A subset is an int whose bit i-1 is set when
terminal i belongs to it, so subset algebra is plain bit twiddling and
dictionaries/caches can be indexed by the mask directly.  All parsing and
validation of user-facing subset literals ("1,3") lives here.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import InputError, InvalidSubsetError

#: Hard cap on the number of terminals any mask-based structure may use.
MAX_TERMINALS = 24


def full_mask(m: int) -> int:
    return (1 << m) - 1


def bit(terminal: int) -> int:
    return 1 << (terminal - 1)


def mask_of(terminals: Iterable[int], m: int) -> int:
    """Bitmask of the given 1-indexed terminals, validated against 1..m."""
    mask = 0
    for t in terminals:
        if not isinstance(t, int) or isinstance(t, bool) or not 1 <= t <= m:
            raise InvalidSubsetError(f"terminal {t!r} outside 1..{m}")
        mask |= bit(t)
    return mask


def members(mask: int) -> list[int]:
    """1-indexed terminals of the mask, ascending."""
    out = []
    t = 1
    while mask:
        if mask & 1:
            out.append(t)
        mask >>= 1
        t += 1
    return out


def size(mask: int) -> int:
    return mask.bit_count()


def check_subset(mask: int, m: int, *, allow_empty: bool = False) -> None:
    """Raise unless mask is a subset of {1..m} (nonempty by default)."""
    if m < 1 or m > MAX_TERMINALS:
        raise InvalidSubsetError(f"m={m} outside 1..{MAX_TERMINALS}")
    if mask < 0:
        raise InvalidSubsetError("subset mask must be nonnegative")
    if mask & ~full_mask(m):
        raise InvalidSubsetError(
            f"subset {members(mask)} has terminals beyond m={m}"
        )
    if mask == 0 and not allow_empty:
        raise InvalidSubsetError("empty terminal subset not allowed here")


def iter_submasks(mask: int) -> Iterator[int]:
    """All nonempty submasks of mask in ascending numeric order."""
    sub = (-mask) & mask
    while sub:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def parse_subset(text: str, m: int) -> int:
    """Parse a comma-separated subset literal such as "1,3"."""
    parts = [p.strip() for p in text.split(",")]
    if any(not p for p in parts):
        raise InputError(f"bad subset literal {text!r}")
    seen: set[int] = set()
    for p in parts:
        try:
            t = int(p)
        except ValueError:
            raise InputError(f"bad subset literal {text!r}: {p!r} is not an integer") from None
        if t in seen:
            raise InputError(f"bad subset literal {text!r}: terminal {t} repeated")
        seen.add(t)
    try:
        return mask_of(seen, m)
    except InvalidSubsetError as exc:
        raise InputError(str(exc)) from None


def format_subset(mask: int) -> str:
    return ",".join(str(t) for t in members(mask))
