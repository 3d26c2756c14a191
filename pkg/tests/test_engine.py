import itertools
import math
import threading

import pytest

from pkostka.engine import (
    EXACT,
    LOWER_BOUND,
    UNRESOLVED,
    ZERO_BY_RULE,
    Engine,
    OracleUnavailable,
    binomial_mod_p,
    divide_by_p_reduction,
    enumerate_refinements,
    first_row_reduction,
    klyachko_pkostka,
    pkostka,
    split_bound,
    two_part_pkostka,
    vanishing_rule,
)
from pkostka.oracle import OracleBudget, pkostka_oracle
from pkostka.partitions import (
    Partition,
    p_adic_expansion,
    partition_list,
    pointwise_add,
    scale,
)

P = Partition
SMALL_BUDGET = OracleBudget(max_tabloids=200)


def test_binomial_mod_p():
    assert binomial_mod_p(6, 3, 2) == 0
    assert binomial_mod_p(7, 3, 2) == 1
    assert binomial_mod_p(9, 0, 5) == 1
    assert binomial_mod_p(3, 5, 2) == 0
    for p in (2, 3, 5, 7):
        for n in range(40):
            for k in range(n + 1):
                assert binomial_mod_p(n, k, p) == math.comb(n, k) % p


def test_two_part_pkostka():
    assert two_part_pkostka(6, 2, 0, 2) == 1
    for r in range(12):
        for j in range(r // 2 + 1):
            assert two_part_pkostka(r, j, j, 3) == 1
    assert [two_part_pkostka(6, 3, s, 2) for s in range(3)] == [0, 0, 0]
    with pytest.raises(ValueError):
        two_part_pkostka(6, 1, 2, 2)
    with pytest.raises(ValueError):
        two_part_pkostka(6, 4, 0, 2)


def test_two_part_table_is_01_and_halving_invariant():
    for r in range(41):
        for j in range(r // 2 + 1):
            for s in range(j + 1):
                v = two_part_pkostka(r, j, s, 2)
                assert v in (0, 1)
                if r % 2 == 0 and j % 2 == 0 and s % 2 == 0:
                    assert v == two_part_pkostka(r // 2, j // 2, s // 2, 2)


def test_divide_by_p():
    assert divide_by_p_reduction((4, 2), (6,), 2) == (P((2, 1)), P((3,)))
    assert divide_by_p_reduction((4, 2), (5, 1), 2) is None
    assert pkostka((4, 2), (6,), 2).value == 1
    assert pkostka_oracle((2, 1), (3,), 2) == 1


def test_vanishing_rule():
    assert vanishing_rule((3, 2, 1), (4, 2), 2) == 0
    assert vanishing_rule((4, 2), (4, 2), 2) is None
    assert vanishing_rule((5, 1), (6,), 2) == 0
    assert two_part_pkostka(6, 1, 0, 2) == 0
    res = pkostka((3, 2, 1), (4, 2), 2)
    assert res.kind == ZERO_BY_RULE and res.value == 0 and res.rules == ["vanishing"]


def test_first_row_reduction():
    assert first_row_reduction((6, 2, 2), (6, 2, 1, 1), 3) == (P((3, 2, 2)), P((3, 2, 1, 1)), 1, 1)
    # stripping down to the empty partition is not allowed
    assert first_row_reduction((4,), (4,), 2) is None
    assert first_row_reduction((1,), (1,), 3) is None
    assert first_row_reduction((4, 2), (5, 1), 2) is None


def test_first_row_reduction_preserves_value_two_part():
    for p in (2, 3):
        for r in range(2, 31):
            for j in range(r // 2 + 1):
                for s in range(j + 1):
                    red = first_row_reduction((r - j, j), (r - s, s), p)
                    if red is None:
                        continue
                    lam, mu, n, a = red
                    assert lam.degree == r - a * p ** n
                    assert two_part_pkostka(lam.degree, lam.part(1), mu.part(1), p) == two_part_pkostka(r, j, s, p)


def test_henke_instances_on_two_parts():
    # lam_1 >= r/2 holds for two-part lam; Henke only needs lam_2 < p^n
    for p in (2, 3):
        for r in range(1, 16):
            for j in range(r // 2 + 1):
                for s in range(j + 1):
                    for n in range(1, 4):
                        q = p ** n
                        if q <= j:
                            continue
                        for a in (1, 2):
                            R = r + a * q
                            assert two_part_pkostka(R, j, s, p) == two_part_pkostka(r, j, s, p)
                            if p_adic_expansion((r - s, s), p).top < n:
                                assert first_row_reduction((R - j, j), (R - s, s), p) is not None


def _brute_refinements(lam, levels, p):
    lam = tuple(lam)
    s = len(levels) - 1
    out = []
    choices = [range(x // p ** i + 1) for i in range(s + 1) for x in lam]
    for flat in itertools.product(*choices):
        c = [flat[i * len(lam):(i + 1) * len(lam)] for i in range(s + 1)]
        if any(sum(c[i][j] * p ** i for i in range(s + 1)) != lam[j] for j in range(len(lam))):
            continue
        if any(sum(c[i]) != levels[i] for i in range(s + 1)):
            continue
        out.append(tuple(tuple(row) for row in c))
    return sorted(out)


def test_refinement_examples():
    assert list(enumerate_refinements((1,), (1,), 3)) == [((1,),)]
    assert list(enumerate_refinements((2, 1, 1), (2, 1), 2)) == [((0, 1, 1), (1, 0, 0))]
    assert set(enumerate_refinements((2, 2), (2, 1), 2)) == {((2, 0), (0, 1)), ((0, 2), (1, 0))}
    with pytest.raises(ValueError):
        list(enumerate_refinements((2, 2), (1, 1), 2))


def test_refinements_match_brute_force():
    for p in (2, 3):
        for r in range(1, 9):
            for lam in partition_list(r):
                for mu in partition_list(r):
                    levels = p_adic_expansion(mu, p).level_degrees
                    got = list(enumerate_refinements(lam, levels, p))
                    assert got == sorted(got) == _brute_refinements(lam, levels, p), (p, lam, levels)


def test_klyachko_examples():
    assert klyachko_pkostka((2, 2), (3, 1), 2) == 0
    assert klyachko_pkostka((2, 1, 1), (3, 1), 2) == 1
    for r in range(1, 6):
        assert klyachko_pkostka((r,), (r,), 2) == 1


def test_pkostka_examples():
    res = pkostka((4, 2), (6,), 2)
    assert (res.kind, res.value, res.rules) == (EXACT, 1, ["two-part"])
    res = pkostka((6,), (4, 2), 2)
    assert (res.kind, res.value, res.rules) == (EXACT, 0, ["dominance"])
    assert pkostka((2, 1, 1), (2, 2), 2).value == 0
    assert pkostka((3, 3), (3, 3), 5).rules == ["identity"]


def test_trace_json_and_determinism():
    a = Engine().pkostka((2, 2, 1, 1), (4, 2), 2)
    b = Engine().pkostka((2, 2, 1, 1), (4, 2), 2)
    assert a == b and a.to_json() == b.to_json()
    step = a.to_json()["trace"][0]
    assert set(step) == {"rule", "from", "to"}


def test_split_bound():
    res = split_bound((2, 1), (1,), (3,), (1,), 2, 2)
    assert (res.kind, res.value) == (EXACT, 1)
    assert two_part_pkostka(7, 1, 0, 2) == 1
    res = split_bound((2, 1), (1,), (2, 1), (1,), 1, 2)
    assert res.kind == LOWER_BOUND
    with pytest.raises(ValueError):
        split_bound((2, 1), (1,), (3,), (1,), 1, 2)
    res = split_bound((2, 2), (1,), (3, 1), (1,), 3, 2)
    assert res.value == 0


def test_split_bound_inequality_small():
    alpha = delta = P((1,))
    for r in range(1, 5):
        for lam in partition_list(r):
            for mu in partition_list(r):
                if p_adic_expansion(mu, 2).top >= 1:
                    continue
                bound = split_bound(lam, alpha, mu, delta, 1, 2)
                value = pkostka_oracle(pointwise_add(lam, scale(2, alpha)), pointwise_add(mu, scale(2, delta)), 2)
                assert value >= bound.value
                if 2 > lam[0]:
                    assert value == bound.value


def test_unresolved_not_memoized():
    calls = []

    def flaky(lam, mu, p, budget):
        calls.append((lam, mu))
        if len(calls) == 1:
            raise OracleUnavailable("first call fails")
        return pkostka_oracle(lam, mu, p)

    eng = Engine(base=flaky)
    first = eng.pkostka((1, 1, 1), (2, 1), 2)
    assert first.kind == UNRESOLVED and first.value is None
    second = eng.pkostka((1, 1, 1), (2, 1), 2)
    assert second.kind == EXACT and second.value == 2  # kS_3 = Y^(1,1,1) + 2 Y^(2,1) at p=2


def test_budget_gives_unresolved():
    res = Engine(budget=OracleBudget(max_tabloids=10)).pkostka((1,) * 5, (2, 1, 1, 1), 2)
    assert res.kind == UNRESOLVED and res.value is None and res.rules == ["oracle"]


def test_concurrent_memo():
    eng = Engine()
    pairs = [(lam, mu) for lam in partition_list(5) for mu in partition_list(5)]
    expected = {pair: Engine().pkostka(*pair, 2) for pair in pairs}
    errors = []

    def work(chunk):
        for pair in chunk:
            if eng.pkostka(*pair, 2) != expected[pair]:
                errors.append(pair)

    threads = [threading.Thread(target=work, args=(pairs[i::4],)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors


@pytest.mark.slow
def test_route_independence():
    eng = Engine(budget=SMALL_BUDGET)
    multi = 0
    for p in (2, 3):
        for r in range(1, 9):
            for lam in partition_list(r):
                for mu in partition_list(r):
                    routes = eng.routes(lam, mu, p, budget=SMALL_BUDGET)
                    assert len(set(routes.values())) <= 1, (p, lam, mu, routes)
                    multi += len(routes) >= 2
    assert multi > 500


@pytest.mark.slow
def test_engine_matches_oracle_p3():
    eng = Engine()
    for r in range(1, 7):
        for lam in partition_list(r):
            for mu in partition_list(r):
                assert eng.pkostka(lam, mu, 3).value == pkostka_oracle(lam, mu, 3), (lam, mu)
