"""Ordinary characters of symmetric groups as multiplicity vectors.

Kostka numbers count semistandard tableaux, Littlewood-Richardson
coefficients count lattice-word skew tableaux, and blocks are sorted out by
p-cores.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .partitions import (
    BlockLabel,
    Partition,
    as_partition,
    p_core,
    partition_list,
    hook_dimension,
)


class CharacterVector:
    """Non-negative integer combination of irreducible characters of one S_r."""

    __slots__ = ("_entries", "_degree")

    def __init__(self, entries: Mapping | Iterable = (), degree: int | None = None):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data = {}
        for lam, m in items:
            lam = as_partition(lam)
            m = int(m)
            if m < 0:
                raise ValueError(f"negative multiplicity {m} for {lam}")
            if m:
                data[lam] = data.get(lam, 0) + m
        degrees = {lam.degree for lam in data}
        if len(degrees) > 1:
            raise ValueError(f"mixed degrees {sorted(degrees)}")
        if degrees:
            (d,) = degrees
            if degree is not None and degree != d:
                raise ValueError(f"entries have degree {d}, expected {degree}")
            degree = d
        self._entries = data
        self._degree = degree

    @classmethod
    def irreducible(cls, lam) -> "CharacterVector":
        return cls({as_partition(lam): 1})

    @property
    def degree(self):
        return self._degree

    def __getitem__(self, lam) -> int:
        return self._entries.get(as_partition(lam), 0)

    def __contains__(self, lam):
        return as_partition(lam) in self._entries

    def __iter__(self):
        return iter(self.support())

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, CharacterVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __add__(self, other: "CharacterVector") -> "CharacterVector":
        out = dict(self._entries)
        for lam, m in other._entries.items():
            out[lam] = out.get(lam, 0) + m
        return CharacterVector(out)

    def support(self) -> list:
        # lexicographically descending, a linear extension of dominance
        return sorted(self._entries, reverse=True)

    def items(self):
        return [(lam, self._entries[lam]) for lam in self.support()]

    def dimension(self) -> int:
        return sum(m * hook_dimension(lam) for lam, m in self._entries.items())

    def to_json(self) -> list:
        return [{"partition": list(lam), "mult": m} for lam, m in self.items()]

    @classmethod
    def from_json(cls, records) -> "CharacterVector":
        return cls((tuple(r["partition"]), r["mult"]) for r in records)

    def __repr__(self):
        body = " + ".join(f"{m}*chi{tuple(lam)}" for lam, m in self.items())
        return f"CharacterVector({body or '0'})"


# ---------------------------------------------------------------- Kostka

def _horizontal_strips(inner: tuple, outer: tuple, size: int):
    """Partitions nu with inner <= nu <= outer and nu/inner a horizontal strip of the given size."""
    n = len(outer)
    inner = inner + (0,) * (n - len(inner))
    out = []

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        cap = outer[i] if i == 0 else min(outer[i], inner[i - 1])
        for v in range(inner[i], min(cap, inner[i] + left) + 1):
            rec(i + 1, left - (v - inner[i]), acc + [v])

    rec(0, size, [])
    return out


@lru_cache(maxsize=None)
def _ssyt_count(shape: tuple, content: tuple) -> int:
    def rec(k, current):
        if k == len(content):
            return 1 if current == shape else 0
        total = 0
        for nxt in _horizontal_strips(current, shape, content[k]):
            total += rec(k + 1, nxt)
        return total

    return rec(0, (0,) * len(shape))


def kostka_number(shape, content) -> int:
    """Number of semistandard tableaux of the given shape and content."""
    shape, content = as_partition(shape), tuple(content)
    if shape.degree != sum(content):
        raise ValueError(f"degree mismatch: shape {tuple(shape)} vs content {tuple(content)}")
    if not shape:
        return 1
    return _ssyt_count(tuple(shape), tuple(x for x in content if x))


def permutation_character(lam) -> CharacterVector:
    """Young's rule: the character of M^lam."""
    lam = as_partition(lam)
    r = lam.degree
    return CharacterVector({mu: kostka_number(mu, lam) for mu in partition_list(r)}, degree=r)


def two_part_character(r: int, d: int) -> CharacterVector:
    if not 0 <= 2 * d <= r:
        raise ValueError(f"need 0 <= d <= r/2, got r={r}, d={d}")
    return CharacterVector({Partition((r - i, i)): 1 for i in range(d + 1)}, degree=r)


# ---------------------------------------------------------------- LR rule

@lru_cache(maxsize=None)
def lr_coefficient(outer: tuple, inner: tuple, content: tuple) -> int:
    """Count LR tableaux of skew shape outer/inner with the given content."""
    outer, inner, content = tuple(outer), tuple(inner), tuple(content)
    if sum(outer) != sum(inner) + sum(content):
        return 0
    if len(inner) > len(outer) or any(a < b for a, b in zip(outer, inner)):
        return 0
    inner = inner + (0,) * (len(outer) - len(inner))
    cells = [(i, j) for i in range(len(outer)) for j in range(outer[i] - 1, inner[i] - 1, -1)]
    filling = {}
    counts = [0] * (len(content) + 1)
    total = 0

    def rec(k):
        nonlocal total
        if k == len(cells):
            total += 1
            return
        i, j = cells[k]
        hi = len(content)
        right = filling.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 1
        above = filling.get((i - 1, j))
        if above is not None:
            lo = above + 1
        for v in range(lo, hi + 1):
            if counts[v] >= content[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(i, j)] = v
            rec(k + 1)
            del filling[(i, j)]
            counts[v] -= 1

    rec(0)
    return total


def lr_product(u: CharacterVector, v: CharacterVector) -> CharacterVector:
    """Induction product of characters of S_m and S_n to S_{m+n}."""
    if u.degree is None or v.degree is None:
        return CharacterVector()
    n = u.degree + v.degree
    out = {}
    for mu, a in u.items():
        for nu, b in v.items():
            for lam in partition_list(n):
                c = lr_coefficient(tuple(lam), tuple(mu), tuple(nu))
                if c:
                    out[lam] = out.get(lam, 0) + a * b * c
    return CharacterVector(out, degree=n)


# ---------------------------------------------------------------- blocks

def block_split(v: CharacterVector, p: int) -> dict:
    """Group the constituents of v by p-core."""
    out = {}
    for lam, m in v.items():
        key = p_core(lam, p)
        out.setdefault(key, {})[lam] = m
    return {k: CharacterVector(d) for k, d in out.items()}


def spans_multiple_blocks(lam, p: int) -> bool:
    return len(block_split(permutation_character(lam), p)) >= 2


def principal_block(r: int, p: int) -> BlockLabel:
    return p_core(Partition((r,)), p)
