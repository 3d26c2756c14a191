"""Which Young permutation modules M^lam are indecomposable.

The answer is closed-form.  Odd p and odd degree at p=2 are settled by
two ordinary constituents in different blocks; at p=2 and even degree,
partitions with three or more parts are always decomposable and two-part
ones are read off from binomial coefficients mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .engine import binomial_mod_p
from .partitions import Partition, as_partition, multinomial, p_valuation

# rule names
TRIVIAL = "trivial"
ODD_PRIME = "odd-prime"
ODD_DEGREE = "p2-odd-degree"
LONG = "p2-three-parts"
TWO_PART = "p2-two-part"
DEGREE_FOUR = "p2-degree-4"


@dataclass(frozen=True)
class IndecomposabilityVerdict:
    indecomposable: bool
    witness: Optional[Partition] = None
    rule: str = ""

    def to_json(self) -> dict:
        return {"indecomposable": self.indecomposable, "rule": self.rule,
                "witness": list(self.witness) if self.witness is not None else None}


def _check_prime(p: int):
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"p must be prime, got {p}")


def _top_power(r: int) -> int:
    """n with 2^n <= r < 2^(n+1)."""
    return r.bit_length() - 1


def _two_part_witness(r: int, j: int, p: int) -> Optional[Partition]:
    # Y^(r-s,s) is a summand of M^(r-j,j) iff C(r-2s, j-s) is non-zero mod p
    for s in range(j):
        if binomial_mod_p(r - 2 * s, j - s, p):
            return Partition((r - s, s))
    return None


def _generic_witness(lam: Partition, p: int) -> Optional[Partition]:
    r = lam.degree
    if lam.length == 2:
        return _two_part_witness(r, lam[1], p)
    # the trivial module splits off a transitive permutation module iff p does not divide its dimension
    if multinomial(lam) % p:
        return Partition((r,))
    return None


def two_part_verdict(r: int, j: int) -> IndecomposabilityVerdict:
    """Verdict for M^(r-j,j) at p=2, r even."""
    if r % 2 or not 0 < 2 * j <= r:
        raise ValueError(f"need r even and 0 < 2j <= r, got r={r}, j={j}")
    n_j = j.bit_length()  # least a with j < 2^a
    beta = r - 2 * j
    if beta % (1 << n_j) == 0:
        return IndecomposabilityVerdict(True, None, TWO_PART)
    step = 1 << p_valuation(beta, 2)
    return IndecomposabilityVerdict(False, Partition((r - j + step, j - step)), TWO_PART)


def is_indecomposable(lam, p: int) -> IndecomposabilityVerdict:
    lam = as_partition(lam)
    _check_prime(p)
    r = lam.degree
    if lam.length <= 1:
        return IndecomposabilityVerdict(True, None, TRIVIAL)
    if p > 2:
        if r % p == 0 and lam == Partition((r - 1, 1)):
            return IndecomposabilityVerdict(True, None, ODD_PRIME)
        return IndecomposabilityVerdict(False, _generic_witness(lam, p), ODD_PRIME)
    if r % 2:
        return IndecomposabilityVerdict(False, _generic_witness(lam, p), ODD_DEGREE)
    if lam.length == 2:
        return two_part_verdict(r, lam[1])
    if r == 4:
        # S_4 has a single 2-block, so the block argument is unavailable here
        if lam == Partition((2, 1, 1)):
            return IndecomposabilityVerdict(False, Partition((3, 1)), DEGREE_FOUR)
        return IndecomposabilityVerdict(False, None, DEGREE_FOUR)
    if lam == Partition((r - 2, 1, 1)):
        return IndecomposabilityVerdict(False, Partition((r - 1, 1)), LONG)
    return IndecomposabilityVerdict(False, None, LONG)


def indecomposable_partitions(r: int, p: int) -> list:
    """All lam of r with M^lam indecomposable, lexicographically descending."""
    _check_prime(p)
    if r < 1:
        raise ValueError(f"degree must be positive, got {r}")
    out = [Partition((r,))]
    if p > 2:
        if r % p == 0 and r >= 2:
            out.append(Partition((r - 1, 1)))
        return out
    if r % 2:
        return out
    n = _top_power(r)
    half = (r - (1 << n)) // 2
    for i in range(1, n + 1):
        lo, mod = 1 << (i - 1), 1 << (i - 1)
        k = lo + (half - lo) % mod
        out.append(Partition((r - k, k)))
    return out


def has_nonprincipal_summand(lam, p: int) -> bool:
    lam = as_partition(lam)
    _check_prime(p)
    r = lam.degree
    if r == p == 3:
        # S_3 has one 3-block, so kS_3 = Y^(2,1) + Y^(1,1,1) stays principal
        return False
    if p > 2 or r % 2:
        return not is_indecomposable(lam, p).indecomposable
    return lam.length >= 3 and r >= 6 and lam != Partition((r - 2, 1, 1))
