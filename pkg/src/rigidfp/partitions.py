"""Partitions of the B/C/D classical series: membership, rigidity, enumeration.

A partition is represented as a tuple of weakly decreasing positive ints
(the row lengths of its Young diagram).  The empty partition is ().
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterator


class Theory(str, Enum):
    B = "B"
    C = "C"
    D = "D"


PRIME = "prime"
DPRIME = "dprime"

INTERLEAVE = "interleave"
COMPONENTWISE = "sum"

PRIME_FIRST = "prime"
DPRIME_FIRST = "dprime"

# Which theories the two sides of an operator pair live in.
PAIR_SIDES = {
    Theory.B: (Theory.B, Theory.D),
    Theory.C: (Theory.C, Theory.C),
    Theory.D: (Theory.D, Theory.D),
}


def validate_partition(parts) -> tuple[int, ...]:
    """Return parts as a tuple, checking positivity and weak decrease."""
    out = tuple(int(x) for x in parts)
    for i, x in enumerate(out):
        if x < 1:
            raise ValueError(f"partition part {x!r} is not a positive integer")
        if i and out[i - 1] < x:
            raise ValueError(f"partition not weakly decreasing at part {x!r}")
    return out


def parse_partition(text: str) -> tuple[int, ...]:
    """Parse "3,2,2,1" or exponent form "2^4 1^2" into a partition.

    The empty string and "-" denote the empty partition.
    """
    text = text.strip()
    if text in ("", "-"):
        return ()
    parts: list[int] = []
    for token in text.replace(",", " ").split():
        if "^" in token:
            base, _, exp = token.partition("^")
            try:
                b, e = int(base), int(exp)
            except ValueError:
                raise ValueError(f"malformed token {token!r}") from None
            if b < 1 or e < 0:
                raise ValueError(f"malformed token {token!r}")
            parts.extend([b] * e)
        else:
            try:
                v = int(token)
            except ValueError:
                raise ValueError(f"malformed token {token!r}") from None
            if v < 1:
                raise ValueError(f"malformed token {token!r}")
            parts.append(v)
    for prev, cur in zip(parts, parts[1:]):
        if cur > prev:
            raise ValueError(f"parts not descending at token {cur!r}")
    return tuple(parts)


def format_partition(p, style: str = "exponent") -> str:
    """Render a partition; exponent style gives "2^2 1", list style "2,2,1"."""
    p = tuple(p)
    if not p:
        return "-"
    if style == "list":
        return ",".join(str(v) for v in p)
    chunks = []
    for v, n in sorted(Counter(p).items(), reverse=True):
        chunks.append(f"{v}^{n}" if n > 1 else str(v))
    return " ".join(chunks)


def transpose(p) -> tuple[int, ...]:
    """Transpose of the Young diagram: row r of the result counts parts >= r."""
    p = tuple(p)
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= r) for r in range(1, p[0] + 1))


def is_theory_member(p, theory) -> bool:
    """Whether p labels a conjugacy class of the given theory.

    B: odd total, even values with even multiplicity.
    D: even total, even values with even multiplicity.
    C: even total, odd values with even multiplicity.
    The empty partition is admitted in every theory.
    """
    theory = Theory(theory)
    p = tuple(p)
    if not p:
        return True
    total = sum(p)
    mult = Counter(p)
    if theory is Theory.C:
        return total % 2 == 0 and all(n % 2 == 0 for v, n in mult.items() if v % 2 == 1)
    if total % 2 != (1 if theory is Theory.B else 0):
        return False
    return all(n % 2 == 0 for v, n in mult.items() if v % 2 == 0)


def is_rigid(p, theory) -> bool:
    """Rigidity test: no gaps (down to 0) and no forbidden double multiplicity.

    For B/D no odd value may appear exactly twice; for C no even value.
    The empty partition is rigid.
    """
    theory = Theory(theory)
    p = tuple(p)
    if not p:
        return True
    if set(p) == {1}:
        return True  # the zero orbit is never induced (covers (1,1) in D_1)
    for i in range(len(p)):
        nxt = p[i + 1] if i + 1 < len(p) else 0
        if p[i] - nxt > 1:
            return False
    banned_parity = 0 if theory is Theory.C else 1
    return all(
        n != 2 for v, n in Counter(p).items() if v % 2 == banned_parity
    )


def partitions_of(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n with parts bounded by max_part, descending parts."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def theory_total(theory, rank: int) -> int:
    """Box count of a rank-n partition in the theory: 2n+1 for B, 2n for C/D."""
    return 2 * rank + 1 if Theory(theory) is Theory.B else 2 * rank


def enumerate_members(theory, rank: int) -> list[tuple[int, ...]]:
    """All theory-member partitions at the given rank, ascending lex order."""
    theory = Theory(theory)
    return sorted(
        p for p in partitions_of(theory_total(theory, rank))
        if is_theory_member(p, theory)
    )


def enumerate_rigid(theory, rank: int) -> list[tuple[int, ...]]:
    """All rigid partitions at the given rank, ascending lex order."""
    theory = Theory(theory)
    return [p for p in enumerate_members(theory, rank) if is_rigid(p, theory)]


@dataclass(frozen=True)
class OperatorPair:
    """A rigid semisimple (or unipotent) operator (lambda'; lambda'')."""

    lambda_prime: tuple[int, ...]
    lambda_dprime: tuple[int, ...]
    theory: Theory

    def __post_init__(self):
        object.__setattr__(self, "lambda_prime", validate_partition(self.lambda_prime))
        object.__setattr__(self, "lambda_dprime", validate_partition(self.lambda_dprime))
        object.__setattr__(self, "theory", Theory(self.theory))
        side1, side2 = PAIR_SIDES[self.theory]
        if not is_theory_member(self.lambda_prime, side1):
            raise ValueError(
                f"lambda' {self.lambda_prime} is not a {side1.value}-type partition"
            )
        if not is_theory_member(self.lambda_dprime, side2):
            raise ValueError(
                f"lambda'' {self.lambda_dprime} is not a {side2.value}-type partition"
            )
        theta = 1 if self.theory is Theory.B else 0
        boxes = sum(self.lambda_prime) + sum(self.lambda_dprime) - theta
        if boxes < 0 or boxes % 2:
            raise ValueError(f"pair has no integral rank (box count {boxes + theta})")

    @property
    def rank(self) -> int:
        theta = 1 if self.theory is Theory.B else 0
        return (sum(self.lambda_prime) + sum(self.lambda_dprime) - theta) // 2

    def is_unipotent(self) -> bool:
        return not self.lambda_prime or not self.lambda_dprime


def enumerate_rigid_pairs(theory, rank: int) -> list[OperatorPair]:
    """All pairs of rigid partitions with rank split n' + n'' = rank.

    Ordered by lambda'' rank ascending, then by the partitions themselves.
    """
    theory = Theory(theory)
    side1, side2 = PAIR_SIDES[theory]
    pairs = []
    for n2 in range(rank + 1):
        n1 = rank - n2
        for p1 in enumerate_rigid(side1, n1):
            for p2 in enumerate_rigid(side2, n2):
                pairs.append(OperatorPair(p1, p2, theory))
    return pairs


@dataclass(frozen=True)
class TaggedPartition:
    """The merged partition lambda = lambda' (+) lambda'' with row provenance.

    INTERLEAVE keeps one row per original part with its origin tag;
    COMPONENTWISE stores index-wise sums plus the parity of lambda'_i
    (None where lambda' has no part at that row).
    """

    values: tuple[int, ...]
    mode: str
    origins: tuple[str, ...] | None = None
    prime_odd: tuple[bool | None, ...] | None = None

    def total(self) -> int:
        return sum(self.values)

    def iii_datum(self, i: int) -> bool | None:
        """Is the lambda'-datum at row i odd?  None when there is no datum."""
        if self.mode == INTERLEAVE:
            if self.origins[i] != PRIME:
                return None
            return self.values[i] % 2 == 1
        return self.prime_odd[i]


def combine(pair: OperatorPair, mode: str = INTERLEAVE,
            tie_break: str = PRIME_FIRST) -> TaggedPartition:
    """Merge the pair into a tagged partition.

    INTERLEAVE: stable descending merge of the two part lists; among equal
    values the tie_break origin goes first.  COMPONENTWISE: index-wise sums
    zero-padded to the longer side.
    """
    p1, p2 = pair.lambda_prime, pair.lambda_dprime
    if mode == COMPONENTWISE:
        n = max(len(p1), len(p2))
        values = tuple(
            (p1[i] if i < len(p1) else 0) + (p2[i] if i < len(p2) else 0)
            for i in range(n)
        )
        prime_odd = tuple(
            (p1[i] % 2 == 1) if i < len(p1) else None for i in range(n)
        )
        return TaggedPartition(values=values, mode=mode, prime_odd=prime_odd)
    if mode != INTERLEAVE:
        raise ValueError(f"unknown combine mode {mode!r}")
    values, origins = [], []
    i = j = 0
    while i < len(p1) or j < len(p2):
        take_prime = False
        if j >= len(p2):
            take_prime = True
        elif i < len(p1):
            if p1[i] > p2[j]:
                take_prime = True
            elif p1[i] == p2[j]:
                take_prime = tie_break == PRIME_FIRST
        if take_prime:
            values.append(p1[i])
            origins.append(PRIME)
            i += 1
        else:
            values.append(p2[j])
            origins.append(DPRIME)
            j += 1
    return TaggedPartition(values=tuple(values), mode=mode, origins=tuple(origins))
