import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pkostka.partitions import (
    EMPTY,
    Composition,
    Partition,
    concatenate,
    conjugate,
    dominates,
    format_partition,
    hook_dimension,
    is_p_core,
    is_p_restricted,
    p_adic_expansion,
    p_core,
    p_digits,
    p_valuation,
    parse_partition,
    partition_list,
    partitions_of,
    pointwise_add,
    scale,
    sort_to_partition,
    young_vertex,
)

P = Partition


def partitions(max_size=20):
    return st.lists(st.integers(0, max_size), max_size=8).map(sort_to_partition)


def test_normal_form():
    assert P((3, 1, 0, 0)) == P((3, 1))
    assert P(()) == EMPTY and EMPTY.degree == 0
    assert P((4, 2, 1)).degree == 7
    with pytest.raises(ValueError):
        P((1, 2))
    with pytest.raises(ValueError):
        P((2, -1))


def test_composition_length_counts_nonzero_parts():
    c = Composition((2, 0, 1))
    assert c.degree == 3 and c.length == 2


def test_dominates_examples():
    assert dominates((4, 2), (3, 3))
    assert not dominates((3, 3), (4, 2))
    assert not dominates((4, 1, 1), (3, 3))
    assert not dominates((3, 3), (4, 1, 1))
    with pytest.raises(ValueError):
        dominates((2, 1), (4,))


def test_conjugate_examples():
    assert conjugate((3, 1)) == P((2, 1, 1))
    assert conjugate((5,)) == P((1,) * 5)
    assert conjugate(conjugate((4, 2, 1))) == P((4, 2, 1))
    assert conjugate(EMPTY) == EMPTY


def test_digits_and_valuation():
    assert p_digits(7, 3) == (1, 2)
    assert p_digits(126, 2) == (0, 1, 1, 1, 1, 1, 1)
    assert p_digits(0, 5) == ()
    assert p_valuation(12, 2) == 2
    assert p_valuation(7, 7) == 1
    with pytest.raises(ValueError):
        p_valuation(0, 2)


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 5, 7]))
def test_digits_reconstruct(m, p):
    d = p_digits(m, p)
    assert all(0 <= x < p for x in d)
    assert sum(x * p ** i for i, x in enumerate(d)) == m


def test_expansion_examples():
    assert p_adic_expansion((3, 2, 2), 3).digits == (P((3, 2, 2)),)
    assert p_adic_expansion((4, 2), 2).digits == (EMPTY, P((2, 1)))
    assert p_adic_expansion((5, 1), 2).digits == (P((1, 1)), EMPTY, P((1,)))
    assert p_adic_expansion(EMPTY, 2).digits == ()
    assert p_adic_expansion((5, 1), 2).top == 2


def test_expansion_reconstructs_to_degree_20():
    for p in (2, 3, 5):
        for r in range(21):
            for lam in partition_list(r):
                exp = p_adic_expansion(lam, p)
                assert exp.reconstruct() == lam
                assert all(is_p_restricted(d, p) for d in exp.digits)
                assert not exp.digits or exp.digits[-1]


def _brute_expansions(lam, p):
    r = lam.degree
    levels = [p ** t for t in range(r.bit_length() + 1) if p ** t <= max(r, 1)]
    found = 0
    for degs in itertools.product(*[range(r // q + 1) for q in levels]):
        if sum(d * q for d, q in zip(degs, levels)) != r:
            continue
        pools = [[m for m in partition_list(d) if is_p_restricted(m, p)] for d in degs]
        for parts in itertools.product(*pools):
            total = EMPTY
            for q, part in zip(levels, parts):
                total = pointwise_add(total, scale(q, part))
            found += total == lam
    return found


def test_expansion_unique_exhaustive():
    for p in (2, 3):
        for r in range(9):
            for lam in partition_list(r):
                assert _brute_expansions(lam, p) == 1, (p, lam)


def test_young_vertex():
    assert young_vertex((5, 1), 2) == P((4, 1, 1))
    assert young_vertex((4, 2), 2) == P((2, 2, 2))
    assert young_vertex((2, 2, 1, 1), 3) == P((1,) * 6)


@settings(max_examples=200)
@given(partitions(), st.sampled_from([2, 3, 5]))
def test_young_vertex_properties(lam, p):
    v = young_vertex(lam, p)
    assert v.degree == lam.degree
    assert all(x & (x - 1) == 0 or p != 2 for x in v)
    assert young_vertex(scale(p, lam), p) == scale(p, v)
    if is_p_restricted(lam, p):
        assert v == P((1,) * lam.degree)


def test_p_core_examples():
    assert p_core((3, 2, 1), 2).core == P((3, 2, 1)) and p_core((3, 2, 1), 2).weight == 0
    for r in range(3, 16, 2):
        assert p_core((r - 1, 1), 2).core == P((2, 1))
    lab = p_core((4, 2), 2)
    assert lab.core == EMPTY and lab.weight == 3


def test_p_core_order_independent():
    for p in (2, 3, 5):
        for r in range(13):
            for lam in partition_list(r):
                a = p_core(lam, p, order="largest")
                b = p_core(lam, p, order="smallest")
                assert a == b
                assert is_p_core(a.core, p)
                assert a.core.degree + p * a.weight == r


def test_hook_dimension():
    assert hook_dimension((2, 1)) == 2
    assert hook_dimension((7,)) == 1
    assert hook_dimension((1, 1, 1)) == 1
    for r in range(11):
        assert sum(hook_dimension(lam) ** 2 for lam in partition_list(r)) == math.factorial(r)


def _partition_count(n):
    # Euler's pentagonal recurrence
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def test_partitions_of():
    assert list(partitions_of(0)) == [EMPTY]
    assert len(partition_list(4)) == 5
    assert len(partition_list(10)) == 42
    for r in range(16):
        parts = partition_list(r)
        assert len(parts) == len(set(parts)) == _partition_count(r)
        assert list(parts) == sorted(parts, reverse=True)


def test_lex_order_refines_dominance():
    for r in range(11):
        parts = partition_list(r)
        for i, a in enumerate(parts):
            for b in parts[i + 1:]:
                assert not dominates(b, a)


def test_dominance_partial_order():
    for r in range(1, 9):
        parts = partition_list(r)
        for a, b, c in itertools.product(parts, repeat=3):
            if dominates(a, b) and dominates(b, c):
                assert dominates(a, c)
        for a, b in itertools.product(parts, repeat=2):
            if dominates(a, b) and dominates(b, a):
                assert a == b


def test_arithmetic():
    assert sort_to_partition((0, 2, 1)) == P((2, 1))
    assert sort_to_partition((1, 0, 0)) == P((1,))
    assert sort_to_partition((2, 2)) == P((2, 2))
    assert pointwise_add((3, 2, 2), (3,)) == P((6, 2, 2))
    assert scale(2, (2, 1)) == P((4, 2))
    c = concatenate((2, 2), (4,))
    assert tuple(c) == (2, 2, 4) and not isinstance(c, Partition)


@given(partitions(), partitions())
def test_add_and_scale_give_partitions(a, b):
    s = pointwise_add(a, b)
    assert isinstance(s, Partition) and s.degree == a.degree + b.degree
    assert scale(3, a).degree == 3 * a.degree


def test_parse_and_format():
    assert parse_partition("4,2,1") == P((4, 2, 1))
    assert parse_partition("") == EMPTY == parse_partition("0")
    assert parse_partition("1,3", compose=True) == P((3, 1))
    assert format_partition(EMPTY) == "-"
    assert format_partition((4, 2)) == "4,2"
    with pytest.raises(ValueError, match="'3'"):
        parse_partition("1,3")
    with pytest.raises(ValueError, match="'a'"):
        parse_partition("2,a")


@given(partitions())
def test_format_parse_roundtrip(lam):
    assert parse_partition(format_partition(lam)) == lam
