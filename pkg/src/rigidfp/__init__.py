"""Fingerprint invariants [alpha;beta] of rigid operators in the B/C/D theories."""

from .blocks import Block, block_fingerprint, block_sp, decompose_blocks
from .closedform import (
    ParitySplit,
    closed_form_fingerprint_BD,
    closed_form_fingerprint_C,
    split_parity,
    unipotent_mu_factored,
    xs_inverse,
    xs_map,
    ys_inverse,
    ys_map,
)
from .fingerprint import (
    ExtractionDiagnostic,
    FingerprintOptions,
    FingerprintResult,
    SpTrace,
    TauTable,
    WeylPair,
    extract_weyl_pair,
    fingerprint,
    prefix_signs,
    sp_map,
    tau_table,
)
from .partitions import (
    OperatorPair,
    TaggedPartition,
    Theory,
    combine,
    enumerate_rigid,
    enumerate_rigid_pairs,
    format_partition,
    is_rigid,
    is_theory_member,
    parse_partition,
    transpose,
)

__all__ = [
    "Block",
    "ExtractionDiagnostic",
    "FingerprintOptions",
    "FingerprintResult",
    "OperatorPair",
    "ParitySplit",
    "SpTrace",
    "TaggedPartition",
    "TauTable",
    "Theory",
    "WeylPair",
    "block_fingerprint",
    "block_sp",
    "closed_form_fingerprint_BD",
    "closed_form_fingerprint_C",
    "combine",
    "decompose_blocks",
    "enumerate_rigid",
    "enumerate_rigid_pairs",
    "extract_weyl_pair",
    "fingerprint",
    "format_partition",
    "is_rigid",
    "is_theory_member",
    "parse_partition",
    "prefix_signs",
    "sp_map",
    "split_parity",
    "tau_table",
    "transpose",
    "unipotent_mu_factored",
    "xs_inverse",
    "xs_map",
    "ys_inverse",
    "ys_map",
]

__version__ = "0.1.0"
