"""Partition and composition combinatorics.

Partitions are immutable tuples in normal form (weakly decreasing, no
trailing zeros).  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator


class Composition(tuple):
    """A finite sequence of non-negative integers in any order."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        for x in parts:
            if x < 0:
                raise ValueError(f"negative part {x} in {parts}")
        return super().__new__(cls, parts)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return sum(1 for x in self if x)

    def __repr__(self):
        return f"{type(self).__name__}({tuple(self)})"


class Partition(Composition):
    """A weakly decreasing composition with trailing zeros stripped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = list(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts.pop()
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts not weakly decreasing: {tuple(parts)}")
        return super().__new__(cls, parts)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The i-th part (0-based), zero past the end."""
        return self[i] if i < len(self) else 0

    def __str__(self):
        return format_partition(self)


EMPTY = Partition()


def as_partition(x) -> Partition:
    return x if isinstance(x, Partition) else Partition(x)


@dataclass(frozen=True)
class PAdicExpansion:
    p: int
    digits: tuple  # of Partition, lowest level first

    @property
    def top(self) -> int:
        """Index of the highest non-empty level, -1 for the empty partition."""
        return len(self.digits) - 1

    @property
    def level_degrees(self) -> tuple:
        return tuple(d.degree for d in self.digits)

    def reconstruct(self) -> Partition:
        out = EMPTY
        for i, d in enumerate(self.digits):
            out = pointwise_add(out, scale(self.p ** i, d)) if d else out
        return out


@dataclass(frozen=True)
class BlockLabel:
    core: Partition
    weight: int


# ---------------------------------------------------------------- basics

def dominates(mu, lam) -> bool:
    """True iff mu dominates lam (all partial sums of mu are >= those of lam)."""
    mu, lam = as_partition(mu), as_partition(lam)
    if mu.degree != lam.degree:
        raise ValueError(f"degree mismatch: |{mu}| = {mu.degree}, |{lam}| = {lam.degree}")
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu.part(i)
        b += lam.part(i)
        if a < b:
            return False
    return True


def conjugate(lam) -> Partition:
    lam = as_partition(lam)
    if not lam:
        return EMPTY
    return Partition(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def sort_to_partition(gamma) -> Partition:
    return Partition(sorted((x for x in gamma if x), reverse=True))


def pointwise_add(lam, mu) -> Partition:
    lam, mu = as_partition(lam), as_partition(mu)
    n = max(len(lam), len(mu))
    return Partition(lam.part(i) + mu.part(i) for i in range(n))


def scale(a: int, lam) -> Partition:
    if a < 1:
        raise ValueError("scale factor must be positive")
    return Partition(a * x for x in lam)


def concatenate(lam, mu) -> Composition:
    return Composition(tuple(lam) + tuple(mu))


def divisible_by(lam, p: int) -> bool:
    return all(x % p == 0 for x in lam)


def is_p_restricted(lam, p: int) -> bool:
    lam = as_partition(lam)
    diffs = [a - b for a, b in zip(lam, lam[1:])] + ([lam[-1]] if lam else [])
    return all(d < p for d in diffs)


def multinomial(lam) -> int:
    """Number of lam-tabloids, r!/prod(lam_i!)."""
    out = math.factorial(sum(lam))
    for x in lam:
        out //= math.factorial(x)
    return out


# ---------------------------------------------------------------- digits

def p_digits(m: int, p: int) -> tuple:
    """Little-endian base-p digits of m; () for m = 0."""
    if m < 0:
        raise ValueError("p_digits needs m >= 0")
    out = []
    while m:
        m, d = divmod(m, p)
        out.append(d)
    return tuple(out)


def p_valuation(m: int, p: int) -> int:
    if m <= 0:
        raise ValueError(f"valuation undefined for {m}")
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def p_adic_expansion(lam, p: int) -> PAdicExpansion:
    """Write lam as a sum of p^i times p-restricted partitions.

    Expand each successive difference lam_j - lam_{j+1} in base p; level i
    of the expansion has parts sum_{m >= j} (digit i of the m-th difference).
    """
    lam = as_partition(lam)
    diffs = [a - b for a, b in zip(lam, lam[1:])] + ([lam[-1]] if lam else [])
    digit_rows = [p_digits(d, p) for d in diffs]
    levels = max((len(d) for d in digit_rows), default=0)
    digits = []
    for i in range(levels):
        col = [d[i] if i < len(d) else 0 for d in digit_rows]
        parts, acc = [], 0
        for c in reversed(col):
            acc += c
            parts.append(acc)
        digits.append(Partition(reversed(parts)))
    return PAdicExpansion(p, tuple(digits))


def top_level(lam, p: int) -> int:
    return p_adic_expansion(lam, p).top


def young_vertex(lam, p: int) -> Partition:
    """Partition with |lam(i)| parts equal to p^i, sorted decreasingly."""
    exp = p_adic_expansion(lam, p)
    parts = []
    for i, d in enumerate(exp.digits):
        parts += [p ** i] * d.degree
    return sort_to_partition(parts)


# ---------------------------------------------------------------- cores

def _beta_set(lam: Partition) -> list:
    n = len(lam)
    return [x + n - 1 - i for i, x in enumerate(lam)]


def _from_beta(beta) -> Partition:
    b = sorted(beta, reverse=True)
    n = len(b)
    return Partition(x - (n - 1 - i) for i, x in enumerate(b))


def p_core(lam, p: int, order: str = "largest") -> BlockLabel:
    """Strip rim p-hooks until none is removable.

    On beta numbers a rim p-hook removal is a move x -> x - p into a free
    position.  `order` picks which removable hook goes first ("largest" or
    "smallest" bead); the result does not depend on it.
    """
    lam = as_partition(lam)
    beta = set(_beta_set(lam))
    steps = 0
    while True:
        movable = [x for x in beta if x - p >= 0 and (x - p) not in beta]
        if not movable:
            break
        x = max(movable) if order == "largest" else min(movable)
        beta.remove(x)
        beta.add(x - p)
        steps += 1
    return BlockLabel(_from_beta(beta), steps)


def is_p_core(lam, p: int) -> bool:
    return p_core(lam, p).weight == 0


# ---------------------------------------------------------------- counting

def hook_lengths(lam) -> list:
    lam = as_partition(lam)
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def hook_dimension(lam) -> int:
    """Degree of the irreducible character, via the hook length formula."""
    lam = as_partition(lam)
    return math.factorial(lam.degree) // math.prod(hook_lengths(lam))


def partitions_of(r: int) -> Iterator[Partition]:
    """All partitions of r in descending lexicographic order."""
    if r < 0:
        raise ValueError("negative degree")

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(r, r):
        yield Partition(parts)


@lru_cache(maxsize=None)
def partition_list(r: int) -> tuple:
    return tuple(partitions_of(r))


# ---------------------------------------------------------------- text form

def parse_partition(text: str, compose: bool = False) -> Partition:
    """Parse "4,2,1".  "0", "" and "-" mean the empty partition.

    Input that is not weakly decreasing is rejected unless `compose` is set,
    in which case it is sorted.
    """
    text = text.strip()
    if text in ("", "0", "-"):
        return EMPTY
    parts = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            v = int(tok)
        except ValueError:
            raise ValueError(f"malformed part {tok!r} in {text!r}") from None
        if v < 0:
            raise ValueError(f"negative part {tok!r} in {text!r}")
        parts.append(v)
    if compose:
        return sort_to_partition(parts)
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise ValueError(f"parts not weakly decreasing at {str(b)!r} in {text!r} (use --compose to sort)")
    return Partition(parts)


def format_partition(lam) -> str:
    return ",".join(str(x) for x in lam) if len(lam) else "-"
