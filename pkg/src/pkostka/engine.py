"""p-Kostka numbers by reduction rules, the Klyachko sum, and a base oracle.

`pkostka` runs the rules in a fixed order and records each step that
transformed or decided the query.  Targets that are p-restricted (projective
Young modules) are handed to the modular-representation oracle.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .partitions import (
    Partition,
    as_partition,
    divisible_by,
    dominates,
    is_p_restricted,
    p_adic_expansion,
    p_digits,
    partition_list,
    pointwise_add,
    scale,
    sort_to_partition,
)

EXACT = "exact"
LOWER_BOUND = "lower_bound"
ZERO_BY_RULE = "zero_by_rule"
UNRESOLVED = "unresolved"

RULES = ("dominance", "identity", "two-part", "vanishing", "divide-by-p",
         "strip-first-row", "klyachko", "oracle")


@dataclass(frozen=True)
class ReductionStep:
    rule: str
    source: tuple  # (lambda, mu)
    target: object = None

    def to_json(self):
        return {"rule": self.rule, "from": [list(x) for x in self.source], "to": _jsonable(self.target)}


def _jsonable(x):
    if isinstance(x, tuple) and x and all(isinstance(y, tuple) for y in x):
        return [_jsonable(y) for y in x]
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) if isinstance(y, (tuple, list)) else y for y in x]
    return x


@dataclass(frozen=True)
class PKostkaResult:
    kind: str
    value: Optional[int] = None
    trace: tuple = field(default=())

    @property
    def resolved(self) -> bool:
        return self.kind in (EXACT, ZERO_BY_RULE)

    @property
    def rules(self) -> list:
        return [step.rule for step in self.trace]

    def to_json(self):
        return {"kind": self.kind, "value": self.value, "trace": [s.to_json() for s in self.trace]}


# ---------------------------------------------------------------- Lucas

def binomial_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p via Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    nd, kd = p_digits(n, p), p_digits(k, p)
    out = 1
    for i, a in enumerate(nd):
        b = kd[i] if i < len(kd) else 0
        if b > a:
            return 0
        out = out * math.comb(a, b) % p
    return out


def two_part_pkostka(r: int, j: int, s: int, p: int) -> int:
    """[M^(r-j,j) : Y^(r-s,s)] for 0 <= s <= j <= r/2."""
    if not (0 <= s <= j and 2 * j <= r):
        raise ValueError(f"need 0 <= s <= j <= r/2, got r={r}, j={j}, s={s}")
    return 1 if binomial_mod_p(r - 2 * s, j - s, p) else 0


# ---------------------------------------------------------------- single rules

def divide_by_p_reduction(lam, mu, p: int):
    lam, mu = as_partition(lam), as_partition(mu)
    _check_degree(lam, mu)
    if divisible_by(lam, p) and divisible_by(mu, p):
        return Partition(x // p for x in lam), Partition(x // p for x in mu)
    return None


def vanishing_rule(lam, mu, p: int):
    lam, mu = as_partition(lam), as_partition(mu)
    _check_degree(lam, mu)
    if lam.degree % p == 0 and not divisible_by(lam, p) and divisible_by(mu, p):
        return 0
    return None


def first_row_reduction(big_lam, big_mu, p: int):
    """Strip a*p^n from both first rows when the result keeps the same value.

    Requires the reduced pair to be non-empty partitions, n above the top
    p-adic level of the reduced mu, and p^n above the second row.  Among all
    admissible (a, n) the one removing the most boxes wins, larger n on ties.
    Returns (lam, mu, n, a) or None.
    """
    L, M = as_partition(big_lam), as_partition(big_mu)
    _check_degree(L, M)
    if not L or not M:
        return None
    room = min(L[0] - L.part(1), M[0] - M.part(1))
    best = None
    n = 0
    while p ** n <= room:
        q = p ** n
        if q > L.part(1):
            for a in range(room // q, 0, -1):
                if L.degree - a * q <= 0:
                    continue
                lam = Partition((L[0] - a * q,) + tuple(L[1:]))
                mu = Partition((M[0] - a * q,) + tuple(M[1:]))
                if p_adic_expansion(mu, p).top < n:
                    key = (a * q, n)
                    if best is None or key > best[0]:
                        best = (key, (lam, mu, n, a))
                    break
        n += 1
    return None if best is None else best[1]


def _check_degree(lam, mu):
    if lam.degree != mu.degree:
        raise ValueError(f"degree mismatch: |{tuple(lam)}| = {lam.degree}, |{tuple(mu)}| = {mu.degree}")


# ---------------------------------------------------------------- refinements

def enumerate_refinements(lam, levels, p: int) -> Iterator[tuple]:
    """Matrices c with sum_i c[i][j] p^i = lam_j and row sums equal to levels.

    Rows are p-power levels, columns are rows of lam; yielded as tuples of
    row tuples in row-major lexicographic order.
    """
    lam = tuple(as_partition(lam))
    levels = tuple(levels)
    if sum(r * p ** i for i, r in enumerate(levels)) != sum(lam):
        raise ValueError(f"levels {levels} do not match |{lam}| = {sum(lam)} at p={p}")
    top = len(levels) - 1
    m = len(lam)

    def rows_for(i, rem):
        q = p ** i
        out = []

        def rec(j, left, acc):
            if j == m:
                if left == 0:
                    out.append(tuple(acc))
                return
            if i == top:
                c = rem[j] // q
                if c <= left:
                    rec(j + 1, left - c, acc + [c])
                return
            for c in range(0, min(left, rem[j] // q) + 1):
                if (rem[j] - c * q) % (q * p) == 0:
                    rec(j + 1, left - c, acc + [c])

        rec(0, levels[i], [])
        return out

    def rec_rows(i, rem, acc):
        if i > top:
            if all(x == 0 for x in rem):
                yield tuple(acc)
            return
        for row in rows_for(i, rem):
            new = tuple(x - c * p ** i for x, c in zip(rem, row))
            yield from rec_rows(i + 1, new, acc + [row])

    if top < 0:
        if not lam:
            yield ()
        return
    yield from rec_rows(0, lam, [])


# ---------------------------------------------------------------- oracle hook

class OracleUnavailable(Exception):
    """The base oracle cannot answer within its budget."""


def default_base(lam, mu, p, budget):
    from .oracle import BudgetExceeded, pkostka_oracle
    try:
        return pkostka_oracle(lam, mu, p, budget=budget)
    except BudgetExceeded as exc:
        raise OracleUnavailable(str(exc)) from exc


# ---------------------------------------------------------------- orchestrator

class Engine:
    """Memoized p-Kostka evaluator with a pluggable base oracle."""

    def __init__(self, base: Callable | None = None, budget=None):
        self.base = base or default_base
        self.budget = budget
        self._memo = {}
        self._lock = threading.Lock()

    def clear(self):
        with self._lock:
            self._memo.clear()

    def pkostka(self, lam, mu, p: int, budget=None) -> PKostkaResult:
        lam, mu = as_partition(lam), as_partition(mu)
        _check_degree(lam, mu)
        key = (lam, mu, p)
        with self._lock:
            hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._evaluate(lam, mu, p, budget if budget is not None else self.budget)
        if res.resolved:
            with self._lock:
                self._memo.setdefault(key, res)
        return res

    def _evaluate(self, lam, mu, p, budget) -> PKostkaResult:
        src = (lam, mu)
        if not dominates(mu, lam):
            return PKostkaResult(EXACT, 0, (ReductionStep("dominance", src, 0),))
        if lam == mu:
            return PKostkaResult(EXACT, 1, (ReductionStep("identity", src, 1),))
        if len(lam) <= 2 and len(mu) <= 2:
            v = two_part_pkostka(lam.degree, lam.part(1), mu.part(1), p)
            return PKostkaResult(EXACT, v, (ReductionStep("two-part", src, v),))
        if vanishing_rule(lam, mu, p) == 0:
            return PKostkaResult(ZERO_BY_RULE, 0, (ReductionStep("vanishing", src, 0),))
        red = divide_by_p_reduction(lam, mu, p)
        if red is not None:
            return self._chain("divide-by-p", src, red, p, budget)
        red = first_row_reduction(lam, mu, p)
        if red is not None:
            return self._chain("strip-first-row", src, red[:2], p, budget)
        if not is_p_restricted(mu, p):
            return self._klyachko(lam, mu, p, budget)
        try:
            v = self.base(lam, mu, p, budget)
        except OracleUnavailable:
            return PKostkaResult(UNRESOLVED, None, (ReductionStep("oracle", src, None),))
        return PKostkaResult(EXACT, int(v), (ReductionStep("oracle", src, int(v)),))

    def _chain(self, rule, src, target, p, budget):
        sub = self.pkostka(target[0], target[1], p, budget)
        step = ReductionStep(rule, src, tuple(target))
        return PKostkaResult(sub.kind, sub.value, (step,) + sub.trace)

    def _klyachko(self, lam, mu, p, budget):
        value, terms, unresolved = self.klyachko_sum(lam, mu, p, budget)
        step = ReductionStep("klyachko", (lam, mu), terms)
        if unresolved:
            return PKostkaResult(UNRESOLVED, None, (step,))
        return PKostkaResult(EXACT, value, (step,))

    def klyachko_sum(self, lam, mu, p, budget=None):
        """Sum over refinements of products of lower-degree p-Kostka numbers.

        Returns (value, terms, unresolved) where terms lists the factor
        queries of each refinement.
        """
        exp = p_adic_expansion(mu, p)
        total = 0
        terms = []
        unresolved = False
        for matrix in enumerate_refinements(lam, exp.level_degrees, p):
            factors = []
            prod = 1
            for row, target in zip(matrix, exp.digits):
                shape = sort_to_partition(row)
                factors.append((shape, target))
                if prod == 0:
                    continue
                if not target and not shape:
                    continue
                res = self.pkostka(shape, target, p, budget)
                if not res.resolved:
                    unresolved = True
                    prod = 0
                    continue
                prod *= res.value
            terms.append(tuple(factors))
            total += prod
        return total, tuple(terms), unresolved

    def klyachko_pkostka(self, lam, mu, p, budget=None) -> int:
        lam, mu = as_partition(lam), as_partition(mu)
        _check_degree(lam, mu)
        if is_p_restricted(mu, p):
            return self.base(lam, mu, p, budget)
        value, _, unresolved = self.klyachko_sum(lam, mu, p, budget)
        if unresolved:
            raise OracleUnavailable(f"klyachko factors for {tuple(lam)}, {tuple(mu)} out of budget")
        return value

    def split_bound(self, lam, alpha, mu, delta, n, p, budget=None) -> PKostkaResult:
        """Product bound for [M^(lam + p^n alpha) : Y^(mu + p^n delta)].

        Exact when p^n exceeds the first row of lam, a lower bound otherwise.
        """
        lam, alpha, mu, delta = map(as_partition, (lam, alpha, mu, delta))
        _check_degree(lam, mu)
        _check_degree(alpha, delta)
        s = p_adic_expansion(mu, p).top
        if n <= s:
            raise ValueError(f"need n > {s} (top p-adic level of {tuple(mu)}), got n={n}")
        first = self.pkostka(lam, mu, p, budget)
        second = self.pkostka(alpha, delta, p, budget)
        src = (pointwise_add(lam, scale(p ** n, alpha)) if alpha else lam,
               pointwise_add(mu, scale(p ** n, delta)) if delta else mu)
        if not (first.resolved and second.resolved):
            return PKostkaResult(UNRESOLVED, None, (ReductionStep("split-bound", src, None),))
        value = first.value * second.value
        kind = EXACT if p ** n > lam.part(0) else LOWER_BOUND
        return PKostkaResult(kind, value, (ReductionStep("split-bound", src, ((lam, mu), (alpha, delta))),))

    def routes(self, lam, mu, p, budget=None, use_oracle=True) -> dict:
        """Value of [M^lam:Y^mu] along every rule that applies at the top level.

        Sub-queries go through `pkostka`.  Routes that do not resolve are left
        out, so agreement of the returned values is a consistency check.
        """
        lam, mu = as_partition(lam), as_partition(mu)
        _check_degree(lam, mu)
        out = {}

        def sub(a, b):
            res = self.pkostka(a, b, p, budget)
            return res.value if res.resolved else None

        if not dominates(mu, lam):
            out["dominance"] = 0
        if lam == mu:
            out["identity"] = 1
        if len(lam) <= 2 and len(mu) <= 2 and dominates(mu, lam):
            out["two-part"] = two_part_pkostka(lam.degree, lam.part(1), mu.part(1), p)
        if vanishing_rule(lam, mu, p) == 0:
            out["vanishing"] = 0
        red = divide_by_p_reduction(lam, mu, p)
        if red is not None and red != (lam, mu):
            v = sub(*red)
            if v is not None:
                out["divide-by-p"] = v
        red = first_row_reduction(lam, mu, p)
        if red is not None:
            v = sub(red[0], red[1])
            if v is not None:
                out["strip-first-row"] = v
        if not is_p_restricted(mu, p):
            value, _, unresolved = self.klyachko_sum(lam, mu, p, budget)
            if not unresolved:
                out["klyachko"] = value
        for v in self._split_bound_values(lam, mu, p, budget):
            out.setdefault("split-bound", v)
            if out["split-bound"] != v:
                out["split-bound-alt"] = v
        if use_oracle:
            try:
                out["oracle"] = int(self.base(lam, mu, p, budget))
            except OracleUnavailable:
                pass
        return out

    def _split_bound_values(self, lam, mu, p, budget):
        # certified case only: lam = lam' + p^n alpha with every part of lam' < p^n
        r = lam.degree
        n = 1
        while p ** n <= r:
            q = p ** n
            alpha = Partition(x // q for x in lam)
            low = [x % q for x in lam]
            rest = Partition(low) if all(a >= b for a, b in zip(low, low[1:])) else None
            if rest is not None and alpha and rest:
                a = alpha.degree
                for delta in partition_list(a):
                    parts = [mu.part(i) - q * delta.part(i) for i in range(max(len(mu), len(delta)))]
                    if any(x < 0 for x in parts):
                        continue
                    if any(x < y for x, y in zip(parts, parts[1:])):
                        continue
                    mu_rest = Partition(parts)
                    if mu_rest.degree != rest.degree or p_adic_expansion(mu_rest, p).top >= n:
                        continue
                    res = self.split_bound(rest, alpha, mu_rest, delta, n, p, budget)
                    if res.kind == EXACT:
                        yield res.value
            n += 1


_DEFAULT = Engine()


def default_engine() -> Engine:
    return _DEFAULT


def pkostka(lam, mu, p: int, budget=None) -> PKostkaResult:
    return _DEFAULT.pkostka(lam, mu, p, budget)


def klyachko_pkostka(lam, mu, p: int, base: Callable | None = None, budget=None) -> int:
    eng = _DEFAULT if base is None else Engine(base)
    return eng.klyachko_pkostka(lam, mu, p, budget)


def split_bound(lam, alpha, mu, delta, n: int, p: int, budget=None) -> PKostkaResult:
    return _DEFAULT.split_bound(lam, alpha, mu, delta, n, p, budget)
