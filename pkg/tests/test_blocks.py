from rigidfp import (
    FingerprintOptions,
    OperatorPair,
    block_fingerprint,
    block_sp,
    combine,
    decompose_blocks,
    fingerprint,
)
from rigidfp.blocks import OPERATOR_LABELS
from rigidfp.partitions import (
    COMPONENTWISE,
    DPRIME_FIRST,
    PRIME_FIRST,
    Theory,
    enumerate_rigid_pairs,
)
import pytest


def tagged(pair, tie_break=PRIME_FIRST):
    return combine(pair, tie_break=tie_break)


class TestDecompose:
    def test_empty(self):
        pair = OperatorPair((), (), Theory.D)
        assert decompose_blocks(tagged(pair), Theory.D) == []

    def test_single_block_constant_value(self):
        # All rows share one value, so no interior cut can fire.
        pair = OperatorPair((1, 1, 1), (1, 1), Theory.B)
        blocks = decompose_blocks(tagged(pair), Theory.B)
        assert len(blocks) == 1
        assert (blocks[0].start, blocks[0].end) == (0, 5)
        assert blocks[0].kind == "I"

    def test_cut_at_even_boundary(self):
        # Rows (2, 2, 1, 1, 1): cumulative boxes are even after row 2, where
        # the value also drops, so the diagram splits there.
        pair = OperatorPair((2, 2, 1), (1, 1), Theory.B)
        blocks = decompose_blocks(tagged(pair), Theory.B)
        assert [(b.start, b.end) for b in blocks] == [(0, 2), (2, 5)]
        assert [b.entry_parity for b in blocks] == [0, 0]

    def test_componentwise_rejected(self):
        pair = OperatorPair((2, 2, 1), (1, 1), Theory.B)
        with pytest.raises(ValueError, match="INTERLEAVE"):
            decompose_blocks(combine(pair, mode=COMPONENTWISE), Theory.B)

    def test_exactly_one_odd_block_in_B(self):
        for rank in range(7):
            for pair in enumerate_rigid_pairs(Theory.B, rank):
                blocks = decompose_blocks(tagged(pair), Theory.B)
                odd = [b for b in blocks if b.kind == "I"]
                assert len(odd) == 1
                assert odd[-1] is blocks[-1]

    def test_no_odd_blocks_in_C_and_D(self):
        for theory in (Theory.C, Theory.D):
            for rank in range(7):
                for pair in enumerate_rigid_pairs(theory, rank):
                    blocks = decompose_blocks(tagged(pair), theory)
                    assert all(b.kind != "I" for b in blocks)

    def test_tiling(self):
        # Blocks cover the row range exactly, in order, without overlap.
        for theory in Theory:
            for rank in range(7):
                for pair in enumerate_rigid_pairs(theory, rank):
                    tp = tagged(pair)
                    blocks = decompose_blocks(tp, theory)
                    pos = 0
                    for b in blocks:
                        assert b.start == pos
                        assert b.end > b.start
                        pos = b.end
                    assert pos == len(tp.values)

    def test_labels_are_known(self):
        for theory in Theory:
            for rank in range(7):
                for pair in enumerate_rigid_pairs(theory, rank):
                    for b in decompose_blocks(tagged(pair), theory):
                        assert b.operator_label is None or b.operator_label in OPERATOR_LABELS

    def test_single_origin_paired_block_is_II(self):
        pair = OperatorPair((2, 2, 2, 2), (), Theory.D)
        blocks = decompose_blocks(tagged(pair), Theory.D)
        assert all(b.kind == "II" and b.operator_label == "mu_II" for b in blocks)

    def test_mixed_paired_block_is_III(self):
        pair = OperatorPair((2, 1, 1), (1, 1), Theory.C)
        blocks = decompose_blocks(tagged(pair), Theory.C)
        kinds = [b.kind for b in blocks]
        assert "III" in kinds


class TestBlockSp:
    def test_fragment_examples(self):
        pair = OperatorPair((2, 2, 1), (1, 1), Theory.B)
        tp = tagged(pair)
        b0, b1 = decompose_blocks(tp, Theory.B)
        assert block_sp(b0, tp).mu_values == (2, 2)
        assert block_sp(b1, tp).mu_values == (1, 1, 0)

    def test_seeded_parity_matters(self):
        # The same rows produce a different fragment when entered at odd
        # cumulative parity, so the seed is load-bearing.
        pair = OperatorPair((3, 2, 2, 1), (), Theory.D)
        tp = tagged(pair)
        blocks = decompose_blocks(tp, Theory.D)
        frags = [block_sp(b, tp).mu_values for b in blocks]
        flat = tuple(v for frag in frags for v in frag)
        assert flat == fingerprint(pair).trace.mu_values


class TestPathEquivalence:
    def test_concatenation_matches_direct(self):
        for theory in Theory:
            for rank in range(7):
                for pair in enumerate_rigid_pairs(theory, rank):
                    for tb in (PRIME_FIRST, DPRIME_FIRST):
                        opts = FingerprintOptions(tie_break=tb)
                        direct = fingerprint(pair, opts)
                        via_blocks = block_fingerprint(direct.tagged, theory, opts)
                        assert via_blocks.trace == direct.trace
                        assert direct.same_outcome(via_blocks)

    def test_worked_instance(self):
        pair = OperatorPair((2, 1, 1), (1, 1), Theory.C)
        res = block_fingerprint(tagged(pair), Theory.C)
        assert res.weyl is not None
        assert res.weyl.alpha == (1, 1)
        assert res.weyl.beta == (1,)
