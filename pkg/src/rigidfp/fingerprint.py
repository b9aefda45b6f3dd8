"""The fingerprint pipeline: prefix signs, the Sp map, tau, and [alpha;beta]."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .partitions import (
    INTERLEAVE,
    PAIR_SIDES,
    PRIME_FIRST,
    OperatorPair,
    TaggedPartition,
    Theory,
    combine,
    is_rigid,
)

SO = "so"
SP = "sp"
VACUOUS = "vacuous"

ALL_CONDITIONS = frozenset({"i", "ii", "iii"})


@dataclass(frozen=True)
class SpTrace:
    """Index-wise record of mu = Sp(lambda).

    mu_values keeps deleted parts as 0; signs[i] is the running parity sign
    p(i); partial_sum_delta[i] = sum(mu[:i+1]) - sum(lambda[:i+1]).
    """

    lambda_values: tuple[int, ...]
    mu_values: tuple[int, ...]
    signs: tuple[int, ...]
    partial_sum_delta: tuple[int, ...]

    def mu_partition(self) -> tuple[int, ...]:
        """mu read as a partition: zeros dropped, parts descending."""
        return tuple(sorted((v for v in self.mu_values if v > 0), reverse=True))


def prefix_signs(values) -> tuple[int, ...]:
    """Sign +1/-1 per index: parity of the running box count."""
    signs = []
    run = 0
    for v in values:
        run = (run + v) % 2
        signs.append(1 if run == 0 else -1)
    return tuple(signs)


def _sp_core(values, seed_parity: int = 0):
    """Apply the Sp rule to a row list, seeding the running parity.

    An odd row changes only at the boundary of its value group: its last
    index loses a box under sign '-', its first index gains one under '+'.
    Rows outside the list are treated as a different value.
    """
    mu, signs = [], []
    run = seed_parity % 2
    last = len(values) - 1
    for i, v in enumerate(values):
        run = (run + v) % 2
        sign = 1 if run == 0 else -1
        out = v
        if v % 2 == 1:
            if sign == -1:
                nxt = values[i + 1] if i < last else 0
                if nxt != v:
                    out = v - 1
            else:
                prev = values[i - 1] if i > 0 else 0
                if prev != v:
                    out = v + 1
        mu.append(out)
        signs.append(sign)
    return mu, signs


def sp_map(values) -> SpTrace:
    """mu = Sp(lambda) with the full per-index trace."""
    values = tuple(values)
    mu, signs = _sp_core(values)
    delta = []
    d = 0
    for lam, m in zip(values, mu):
        d += m - lam
        delta.append(d)
    return SpTrace(values, tuple(mu), tuple(signs), tuple(delta))


@dataclass(frozen=True)
class FingerprintOptions:
    """Convention knobs for the pipeline."""

    mode: str = INTERLEAVE
    tie_break: str = PRIME_FIRST
    conditions: frozenset = ALL_CONDITIONS
    iii_variant: str | None = None  # None -> SO for B/D, Sp for C

    def variant_for(self, theory) -> str:
        if self.iii_variant is not None:
            return self.iii_variant
        return SP if Theory(theory) is Theory.C else SO


@dataclass(frozen=True)
class TauTable:
    """tau on the distinct positive even values of mu, with -1 witnesses."""

    entries: tuple[tuple[int, int, str | None], ...]  # (value, tau, witness)

    def tau(self, m: int) -> int:
        for value, t, _ in self.entries:
            if value == m:
                return t
        raise KeyError(f"{m} is not an even value of mu")

    def as_dict(self) -> dict[int, int]:
        return {value: t for value, t, _ in self.entries}


def tau_table(trace: SpTrace, tags: TaggedPartition, theory,
              opts: FingerprintOptions | None = None) -> TauTable:
    """Evaluate tau(m) for each even positive value m of mu.

    tau(m) = -1 iff some index with mu_i = m satisfies an active condition:
    (i) mu_i != lambda_i, (ii) running sums differ, (iii) the lambda'-datum
    at the row is odd (SO) / even (Sp).  Deleted rows (mu_i = 0) are ignored.
    """
    opts = opts or FingerprintOptions()
    variant = opts.variant_for(theory)
    state: dict[int, tuple[int, str | None]] = {
        m: (1, None) for m in trace.mu_values if m > 0 and m % 2 == 0
    }
    for i, m in enumerate(trace.mu_values):
        if m <= 0 or m % 2 or state[m][0] == -1:
            continue
        witness = None
        if "i" in opts.conditions and m != trace.lambda_values[i]:
            witness = "i"
        elif "ii" in opts.conditions and trace.partial_sum_delta[i] != 0:
            witness = "ii"
        elif "iii" in opts.conditions and variant != VACUOUS:
            datum = tags.iii_datum(i)
            if datum is not None and datum == (variant == SO):
                witness = "iii"
        if witness is not None:
            state[m] = (-1, witness)
    entries = tuple(
        (m, state[m][0], state[m][1]) for m in sorted(state, reverse=True)
    )
    return TauTable(entries)


@dataclass(frozen=True)
class WeylPair:
    """The fingerprint [alpha; beta]; |alpha| + |beta| = rank on success."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    rank_check: int


@dataclass(frozen=True)
class ExtractionDiagnostic:
    """Unpairable values found while reading [alpha; beta] off (mu, tau).

    Each entry is (value, multiplicity, tau); signals a convention
    inconsistency rather than a crash.
    """

    entries: tuple[tuple[int, int, int], ...]

    def message(self) -> str:
        return "; ".join(
            f"value {v} has odd multiplicity {n} under tau={t:+d}"
            for v, n, t in self.entries
        )


def extract_weyl_pair(trace: SpTrace, tau: TauTable, n: int):
    """Read [alpha; beta] off mu: paired values feed alpha, tau=-1 evens beta."""
    counts = Counter(v for v in trace.mu_values if v > 0)
    alpha: list[int] = []
    beta: list[int] = []
    bad: list[tuple[int, int, int]] = []
    for v, c in sorted(counts.items(), reverse=True):
        t = 1 if v % 2 else tau.tau(v)
        if t == 1:
            if c % 2:
                bad.append((v, c, 1))
            else:
                alpha += [v] * (c // 2)
        else:
            beta += [v // 2] * c
    if bad:
        return ExtractionDiagnostic(tuple(bad))
    return WeylPair(tuple(alpha), tuple(sorted(beta, reverse=True)), n)


@dataclass(frozen=True)
class FingerprintResult:
    """Everything the pipeline produced for one operator."""

    theory: Theory
    options: FingerprintOptions
    tagged: TaggedPartition
    trace: SpTrace
    tau: TauTable
    weyl: WeylPair | None
    diagnostic: ExtractionDiagnostic | None
    rank: int
    pair: OperatorPair | None = None
    rigid_prime: bool | None = None
    rigid_dprime: bool | None = None
    blocks: tuple | None = None

    def same_outcome(self, other: "FingerprintResult") -> bool:
        return (
            self.trace == other.trace
            and self.tau.entries == other.tau.entries
            and self.weyl == other.weyl
            and self.diagnostic == other.diagnostic
        )


def finish_fingerprint(tagged: TaggedPartition, theory, rank: int,
                       opts: FingerprintOptions) -> tuple:
    """Shared back half of both pipelines: trace -> tau -> extraction."""
    trace = sp_map(tagged.values)
    tau = tau_table(trace, tagged, theory, opts)
    outcome = extract_weyl_pair(trace, tau, rank)
    weyl = outcome if isinstance(outcome, WeylPair) else None
    diag = outcome if isinstance(outcome, ExtractionDiagnostic) else None
    return trace, tau, weyl, diag


def fingerprint(pair: OperatorPair,
                opts: FingerprintOptions | None = None) -> FingerprintResult:
    """Full pipeline: combine -> Sp -> tau -> [alpha; beta].

    Rigidity is not required; the flags are carried in the result.
    Extraction failures surface as a diagnostic, not an exception.
    """
    opts = opts or FingerprintOptions()
    tagged = combine(pair, opts.mode, opts.tie_break)
    trace, tau, weyl, diag = finish_fingerprint(tagged, pair.theory, pair.rank, opts)
    side1, side2 = PAIR_SIDES[pair.theory]
    return FingerprintResult(
        theory=pair.theory,
        options=opts,
        tagged=tagged,
        trace=trace,
        tau=tau,
        weyl=weyl,
        diagnostic=diag,
        rank=pair.rank,
        pair=pair,
        rigid_prime=is_rigid(pair.lambda_prime, side1),
        rigid_dprime=is_rigid(pair.lambda_dprime, side2),
    )
