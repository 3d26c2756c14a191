import pytest

from pkostka.characters import spans_multiple_blocks
from pkostka.engine import two_part_pkostka
from pkostka.indecomposable import (
    IndecomposabilityVerdict,
    has_nonprincipal_summand,
    indecomposable_partitions,
    is_indecomposable,
    two_part_verdict,
)
from pkostka.oracle import oracle_record, pkostka_oracle
from pkostka.partitions import Partition, partition_list, scale

P = Partition


def test_examples():
    assert is_indecomposable((63, 63), 2).indecomposable
    assert is_indecomposable((5, 1), 3).indecomposable
    v = is_indecomposable((4, 2), 2)
    assert not v.indecomposable and v.witness == P((6,))


def test_listing_examples():
    assert indecomposable_partitions(126, 2) == [P(x) for x in
                                                 [(126,), (125, 1), (123, 3), (119, 7), (111, 15), (95, 31), (63, 63)]]
    assert set(indecomposable_partitions(8, 2)) == {P((8,)), P((7, 1)), P((6, 2)), P((4, 4))}
    assert indecomposable_partitions(6, 3) == [P((6,)), P((5, 1))]
    assert indecomposable_partitions(7, 3) == [P((7,))]
    assert indecomposable_partitions(9, 2) == [P((9,))]
    assert indecomposable_partitions(1, 5) == [P((1,))]
    with pytest.raises(ValueError):
        indecomposable_partitions(0, 2)
    with pytest.raises(ValueError):
        indecomposable_partitions(6, 4)


def test_listing_matches_pointwise_classifier():
    for p in (2, 3, 5, 7):
        for r in range(1, 21):
            brute = [lam for lam in partition_list(r) if is_indecomposable(lam, p).indecomposable]
            assert brute == indecomposable_partitions(r, p), (p, r)


def test_two_part_verdict():
    v = two_part_verdict(6, 2)
    assert not v.indecomposable and v.witness == P((6,))
    for j in range(1, 40):
        assert two_part_verdict(2 * j, j).indecomposable
    assert two_part_verdict(126, 63).indecomposable
    with pytest.raises(ValueError):
        two_part_verdict(7, 2)
    with pytest.raises(ValueError):
        two_part_verdict(6, 0)
    with pytest.raises(ValueError):
        two_part_verdict(6, 4)


def test_two_part_verdict_agrees_with_lucas():
    for r in range(2, 201, 2):
        for j in range(1, r // 2 + 1):
            v = two_part_verdict(r, j)
            lower = [two_part_pkostka(r, j, s, 2) for s in range(j)]
            assert v.indecomposable == (not any(lower)), (r, j)
            if not v.indecomposable:
                s = v.witness.part(1)
                assert v.witness.degree == r and s < j
                assert two_part_pkostka(r, j, s, 2) == 1


def test_cardinality_and_k_values():
    for r in range(2, 301, 2):
        n = r.bit_length() - 1
        parts = indecomposable_partitions(r, 2)
        assert len(parts) == n + 1
        ks = [lam.part(1) for lam in parts[1:]]
        assert ks[0] == 1
        for i, k in enumerate(ks, start=1):
            assert 2 ** (i - 1) <= k < 2 ** i


def test_last_k_is_half():
    # r/2 lies in [2^(n-1), 2^n) and is congruent to itself
    for r in range(2, 257, 2):
        ks = [lam.part(1) for lam in indecomposable_partitions(r, 2)[1:]]
        assert ks[-1] == r // 2


def test_doubling_bijection():
    for r in range(2, 129, 2):
        doubled = {scale(2, lam) for lam in indecomposable_partitions(r, 2)}
        target = set(indecomposable_partitions(2 * r, 2)) - {P((2 * r - 1, 1))}
        assert doubled == target


def test_shift_invariance():
    for r in range(2, 65, 2):
        n = r.bit_length() - 1
        for k in range(n, n + 3):
            for j in range(r // 2 + 1):
                a = is_indecomposable((r - j, j), 2).indecomposable
                b = is_indecomposable((r + 2 ** k - j, j), 2).indecomposable
                assert a == b, (r, k, j)


def test_hook_module_criterion():
    for p in (2, 3, 5):
        for r in range(2, 41):
            assert is_indecomposable((r - 1, 1), p).indecomposable == (r % p == 0)


def test_degree_four_special_cases():
    v = is_indecomposable((1, 1, 1, 1), 2)
    assert not v.indecomposable and v.witness is None
    v = is_indecomposable((2, 1, 1), 2)
    assert not v.indecomposable and v.witness == P((3, 1))
    v = is_indecomposable((6, 1, 1), 2)
    assert v.witness == P((7, 1))


def test_nonprincipal_examples():
    assert not has_nonprincipal_summand((4, 1, 1), 2)
    assert has_nonprincipal_summand((3, 2, 1), 2)
    for p in (2, 3, 5):
        for r in range(1, 12):
            assert not has_nonprincipal_summand((r,), p)


def test_block_agreement():
    for p in (2, 3):
        for r in range(1, 11):
            for lam in partition_list(r):
                assert has_nonprincipal_summand(lam, p) == spans_multiple_blocks(lam, p), (p, lam)


def test_verdict_invariants_and_json():
    for p in (2, 3, 5):
        for r in range(1, 13):
            for lam in partition_list(r):
                v = is_indecomposable(lam, p)
                if v.indecomposable:
                    assert v.witness is None
                if p == 2 and len(lam) == 2 and not v.indecomposable:
                    assert v.witness is not None
                data = v.to_json()
                assert set(data) == {"indecomposable", "rule", "witness"}
    assert IndecomposabilityVerdict(False, P((6,)), "x").to_json() == {
        "indecomposable": False, "rule": "x", "witness": [6]}


def test_rejects_non_prime():
    with pytest.raises(ValueError):
        is_indecomposable((2, 1), 1)
    with pytest.raises(ValueError):
        is_indecomposable((2, 1), 9)


def test_witnesses_are_summands():
    for p in (2, 3, 5):
        for r in range(2, 6):
            for lam in partition_list(r):
                v = is_indecomposable(lam, p)
                if v.witness is not None:
                    assert v.witness != lam
                    assert pkostka_oracle(lam, v.witness, p) >= 1, (p, lam, v)


def test_classifier_vs_oracle_small():
    for p in (2, 3, 5):
        for r in range(1, 6):
            for lam in partition_list(r):
                assert is_indecomposable(lam, p).indecomposable == (oracle_record(lam, p).count == 1)
