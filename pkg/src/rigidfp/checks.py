"""Machine checks for the structural lemmas, runnable as named suites.

Each suite sweeps enumerated inputs up to a rank bound and returns a
SuiteReport; a failing suite carries minimal counterexample strings.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import blocks as blocks_mod
from .closedform import (
    closed_form_fingerprint_BD,
    closed_form_fingerprint_C,
    has_all_even_transpose_rows,
    split_parity,
    unipotent_mu_factored,
    xs_inverse,
    xs_map,
    ys_inverse,
    ys_map,
)
from .fingerprint import (
    VACUOUS,
    FingerprintOptions,
    fingerprint,
    sp_map,
)
from .partitions import (
    DPRIME_FIRST,
    PRIME_FIRST,
    OperatorPair,
    Theory,
    enumerate_members,
    enumerate_rigid,
    enumerate_rigid_pairs,
    format_partition,
    is_rigid,
    transpose,
)


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    info: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _fmt(p) -> str:
    return format_partition(p)


def _fmt_pair(pair: OperatorPair) -> str:
    return f"{pair.theory.value} ({_fmt(pair.lambda_prime)}; {_fmt(pair.lambda_dprime)})"


def _all_rigid(theory, max_rank):
    for rank in range(max_rank + 1):
        yield from enumerate_rigid(theory, rank)


def _all_member(theory, max_rank):
    for rank in range(max_rank + 1):
        yield from enumerate_members(theory, rank)


def _all_pairs(theory, max_rank):
    for rank in range(max_rank + 1):
        yield from enumerate_rigid_pairs(theory, rank)


def _pairwise_pattern_ok(rows, start: int) -> bool:
    """Consecutive equal-parity pairs from index start; an even leftover row."""
    i = start
    while i + 1 < len(rows):
        if rows[i] % 2 != rows[i + 1] % 2:
            return False
        i += 2
    if i < len(rows) and rows[i] % 2 != 0:
        return False
    return True


def transpose_structure_ok(p, theory) -> bool:
    """Row-parity structure of the transpose diagram of a rigid partition.

    B: first row odd, then pairwise pattern; D: first row even, then
    pairwise; C: pairwise from the first row.  The final unpaired row,
    when present, must be even.
    """
    theory = Theory(theory)
    t = transpose(p)
    if not t:
        return True
    if theory is Theory.C:
        return _pairwise_pattern_ok(t, 0)
    if t[0] % 2 != (1 if theory is Theory.B else 0):
        return False
    return _pairwise_pattern_ok(t, 1)


def check_structure(max_rank: int = 12) -> SuiteReport:
    report = SuiteReport("structure")
    for theory in Theory:
        for p in _all_rigid(theory, max_rank):
            report.checked += 1
            if not transpose_structure_ok(p, theory):
                report.failures.append(
                    f"{theory.value} {_fmt(p)}: transpose {_fmt(transpose(p))}"
                )
    return report


def _group_bounds(values):
    """(first_of_group, last_of_group) flags per index."""
    n = len(values)
    first = [i == 0 or values[i - 1] != values[i] for i in range(n)]
    last = [i == n - 1 or values[i + 1] != values[i] for i in range(n)]
    return first, last


def check_sp_locality(max_rank: int = 12) -> SuiteReport:
    """Changes only at value-group boundaries, direction set by the sign."""
    report = SuiteReport("sp-locality")
    for theory in Theory:
        for p in _all_member(theory, max_rank):
            report.checked += 1
            trace = sp_map(p)
            first, last = _group_bounds(p)
            for i, (lam, mu, sign) in enumerate(
                zip(p, trace.mu_values, trace.signs)
            ):
                if lam % 2 == 1 and sign == -1 and last[i]:
                    expected = lam - 1
                elif lam % 2 == 1 and sign == 1 and first[i]:
                    expected = lam + 1
                else:
                    expected = lam
                if mu != expected:
                    report.failures.append(
                        f"{theory.value} {_fmt(p)} index {i}: mu={mu}, expected {expected}"
                    )
                    break
    return report


def check_parity(max_rank: int = 12) -> SuiteReport:
    """Odd values occur an even number of times in the Sp image."""
    report = SuiteReport("parity")
    for theory in Theory:
        for p in _all_member(theory, max_rank):
            report.checked += 1
            mu = sp_map(p).mu_partition()
            for v in set(mu):
                if v % 2 == 1 and mu.count(v) % 2 == 1:
                    report.failures.append(
                        f"{theory.value} {_fmt(p)}: odd value {v} unpaired in {_fmt(mu)}"
                    )
                    break
    return report


def deficit_closure_ok(trace) -> bool:
    """Deficits stay in {-1, 0} and close by the last surviving row.

    A final deleted row (only in B, where one box is lost) legitimately
    leaves the very last delta at -1.
    """
    delta = trace.partial_sum_delta
    if any(d not in (-1, 0) for d in delta):
        return False
    if not delta:
        return True
    zeros = [i for i, m in enumerate(trace.mu_values) if m == 0]
    if not zeros:
        return delta[-1] == 0
    z = zeros[0]
    if len(zeros) > 1 or z != len(delta) - 1:
        return False
    return delta[-1] == -1 and (z == 0 or delta[z - 1] == 0)


def check_rank_identity(max_rank: int = 8) -> SuiteReport:
    """|alpha| + |beta| = n under the defaults; B/D never diagnose."""
    report = SuiteReport("rank-identity")
    for theory in Theory:
        for pair in _all_pairs(theory, max_rank):
            for mode in ("interleave", "sum"):
                report.checked += 1
                res = fingerprint(pair, FingerprintOptions(mode=mode))
                if not deficit_closure_ok(res.trace):
                    report.failures.append(f"{_fmt_pair(pair)} [{mode}]: deficit open")
                    continue
                if res.diagnostic is not None:
                    if theory is Theory.C:
                        report.info.append(
                            f"{_fmt_pair(pair)} [{mode}, iii={res.options.variant_for(theory)}]: "
                            + res.diagnostic.message()
                        )
                    else:
                        report.failures.append(
                            f"{_fmt_pair(pair)} [{mode}]: " + res.diagnostic.message()
                        )
                    continue
                total = sum(res.weyl.alpha) + sum(res.weyl.beta)
                if total != pair.rank:
                    report.failures.append(
                        f"{_fmt_pair(pair)} [{mode}]: |alpha|+|beta|={total} != {pair.rank}"
                    )
    return report


def check_condition_ii(max_rank: int = 8, gap_total: int = 20) -> SuiteReport:
    """{i,iii} equals {i,ii,iii} on rigid pairs; gapped sensitivity is reported."""
    report = SuiteReport("condition-ii")
    reduced = frozenset({"i", "iii"})
    for theory in Theory:
        for pair in _all_pairs(theory, max_rank):
            report.checked += 1
            full = fingerprint(pair, FingerprintOptions())
            part = fingerprint(pair, FingerprintOptions(conditions=reduced))
            if not full.same_outcome(part):
                report.failures.append(_fmt_pair(pair))
    report.info.append(_gapped_sensitivity_info(gap_total))
    return report


def _gapped_sensitivity_info(gap_total: int) -> str:
    """Search gapped member partitions for cases where dropping (ii) changes tau."""
    from .fingerprint import tau_table
    from .partitions import TaggedPartition, INTERLEAVE, PRIME

    hits = []
    count = 0
    for theory in Theory:
        max_r = (gap_total - (1 if theory is Theory.B else 0)) // 2
        for p in _all_member(theory, max_r):
            if not p or is_rigid(p, theory):
                continue
            count += 1
            tagged = TaggedPartition(
                values=p, mode=INTERLEAVE, origins=(PRIME,) * len(p)
            )
            trace = sp_map(p)
            with_ii = tau_table(trace, tagged, theory, FingerprintOptions())
            without = tau_table(
                trace, tagged, theory,
                FingerprintOptions(conditions=frozenset({"i", "iii"})),
            )
            if with_ii.as_dict() != without.as_dict():
                hits.append(f"{theory.value} {_fmt(p)}")
    head = ", ".join(hits[:5])
    return (
        f"gapped sweep (total <= {gap_total}): {len(hits)} (ii)-sensitive "
        f"of {count} non-rigid inputs" + (f"; e.g. {head}" if hits else "")
    )


def check_shift(max_rank: int = 6) -> SuiteReport:
    """Adding 2 to every row shifts the trace by 2 and [alpha;beta] by [2;1].

    A row deleted by Sp reappears as a beta part of 1 after the shift; the
    result-level check accounts for exactly that.
    """
    report = SuiteReport("shift")
    for theory in Theory:
        for pair in _all_pairs(theory, max_rank):
            report.checked += 1
            opts = FingerprintOptions()
            base = fingerprint(pair, opts)
            tagged = base.tagged
            shifted_tagged = type(tagged)(
                values=tuple(v + 2 for v in tagged.values),
                mode=tagged.mode,
                origins=tagged.origins,
                prime_odd=tagged.prime_odd,
            )
            from .fingerprint import finish_fingerprint

            rank = pair.rank + len(tagged.values)
            trace, tau, weyl, diag = finish_fingerprint(
                shifted_tagged, theory, rank, opts
            )
            want_mu = tuple(m + 2 for m in base.trace.mu_values)
            if trace.mu_values != want_mu:
                report.failures.append(f"{_fmt_pair(pair)}: trace shift broken")
                continue
            if base.weyl is None or weyl is None:
                continue
            zeros = sum(1 for m in base.trace.mu_values if m == 0)
            alpha_shifted = tuple(a + 2 for a in base.weyl.alpha)
            beta_core = tuple(b for b in weyl.beta if b > 1)
            ones = sum(1 for b in weyl.beta if b == 1)
            if (
                weyl.alpha != alpha_shifted
                or tuple(b - 1 for b in beta_core) != base.weyl.beta
                or ones != zeros
            ):
                report.failures.append(
                    f"{_fmt_pair(pair)}: [{_fmt(base.weyl.alpha)};{_fmt(base.weyl.beta)}] "
                    f"-> [{_fmt(weyl.alpha)};{_fmt(weyl.beta)}]"
                )
    return report


def check_factorization(max_rank: int = 12) -> SuiteReport:
    """Collapse-factored mu equals Sp for rigid B/D; Sp is the identity for C."""
    report = SuiteReport("factorization")
    for theory in (Theory.B, Theory.D):
        for p in _all_rigid(theory, max_rank):
            report.checked += 1
            direct = sp_map(p).mu_partition()
            factored = unipotent_mu_factored(p, theory)
            if direct != factored:
                report.failures.append(
                    f"{theory.value} {_fmt(p)}: sp {_fmt(direct)} != factored {_fmt(factored)}"
                )
    for p in _all_rigid(Theory.C, max_rank):
        report.checked += 1
        if sp_map(p).mu_partition() != p:
            report.failures.append(f"C {_fmt(p)}: sp not the identity")
    return report


def check_collapse_bijection(max_rank: int = 12) -> SuiteReport:
    """Box-count deltas, round trips, and all-even transpose images."""
    report = SuiteReport("collapse-bijection")
    seen = set()
    for theory, collapse, inverse, lost in (
        (Theory.B, xs_map, xs_inverse, 1),
        (Theory.D, ys_map, ys_inverse, 0),
    ):
        for p in _all_rigid(theory, max_rank):
            sigma = split_parity(p).odd_part
            key = (theory, sigma)
            if key in seen:
                continue
            seen.add(key)
            report.checked += 1
            image = collapse(sigma)
            if sum(sigma) - sum(image) != lost:
                report.failures.append(f"{theory.value} {_fmt(sigma)}: wrong box count")
                continue
            if not has_all_even_transpose_rows(image):
                report.failures.append(
                    f"{theory.value} {_fmt(sigma)}: image {_fmt(image)} has odd transpose row"
                )
                continue
            if inverse(image) != sigma:
                report.failures.append(f"{theory.value} {_fmt(sigma)}: round trip broken")
    return report


def check_closed_form(max_rank: int = 12, bd_max_rank: int | None = None) -> SuiteReport:
    """Group-formula fingerprints equal the pipeline on their domains."""
    report = SuiteReport("closed-form")
    bd_max_rank = bd_max_rank if bd_max_rank is not None else max_rank
    for theory in (Theory.B, Theory.D):
        for p in _all_rigid(theory, bd_max_rank):
            report.checked += 1
            closed = closed_form_fingerprint_BD(p, theory)
            pipe = fingerprint(OperatorPair(p, (), theory), FingerprintOptions())
            if pipe.weyl != closed:
                got = "diagnostic" if pipe.weyl is None else (
                    f"[{_fmt(pipe.weyl.alpha)};{_fmt(pipe.weyl.beta)}]"
                )
                report.failures.append(
                    f"{theory.value} {_fmt(p)}: closed [{_fmt(closed.alpha)};"
                    f"{_fmt(closed.beta)}] vs pipeline {got}"
                )
    vac = FingerprintOptions(iii_variant=VACUOUS)
    for p in _all_rigid(Theory.C, max_rank):
        if any(p.count(v) % 2 for v in set(p)):
            continue
        report.checked += 1
        closed = closed_form_fingerprint_C(p)
        pipe = fingerprint(OperatorPair(p, (), Theory.C), vac)
        if pipe.weyl != closed:
            report.failures.append(f"C {_fmt(p)}: closed form disagrees with pipeline")
    return report


def check_path_equivalence(max_rank: int = 8) -> SuiteReport:
    """Per-block evaluation equals the direct pipeline, trace and result."""
    report = SuiteReport("path-equivalence")
    for theory in Theory:
        for pair in _all_pairs(theory, max_rank):
            for tie in (PRIME_FIRST, DPRIME_FIRST):
                report.checked += 1
                opts = FingerprintOptions(tie_break=tie)
                direct = fingerprint(pair, opts)
                via_blocks = blocks_mod.block_fingerprint(direct.tagged, theory, opts)
                if not direct.same_outcome(via_blocks):
                    report.failures.append(f"{_fmt_pair(pair)} [tie={tie}]")
                    continue
                blks = via_blocks.blocks
                sizes = [sum(direct.tagged.values[b.start:b.end]) for b in blks]
                odd_blocks = sum(1 for s in sizes if s % 2)
                if theory is Theory.B and pair.lambda_prime and odd_blocks != 1 and blks:
                    report.failures.append(f"{_fmt_pair(pair)}: {odd_blocks} odd blocks")
                if theory is Theory.C and any(b.kind == "I" for b in blks):
                    report.failures.append(f"{_fmt_pair(pair)}: I block in C theory")
    return report


SUITES = {
    "structure": check_structure,
    "sp-locality": check_sp_locality,
    "parity": check_parity,
    "rank-identity": check_rank_identity,
    "condition-ii": check_condition_ii,
    "shift": check_shift,
    "factorization": check_factorization,
    "path-equivalence": check_path_equivalence,
    "closed-form": check_closed_form,
    "collapse-bijection": check_collapse_bijection,
}

DEFAULT_MAX_RANK = {
    "structure": 12,
    "sp-locality": 12,
    "parity": 12,
    "rank-identity": 8,
    "condition-ii": 8,
    "shift": 6,
    "factorization": 12,
    "path-equivalence": 8,
    "closed-form": 10,
    "collapse-bijection": 12,
}


def run_suite(name: str, max_rank: int | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    if max_rank is None:
        max_rank = DEFAULT_MAX_RANK[name]
    return SUITES[name](max_rank)
