"""Splitting M^lam into indecomposable summands.

A summand U is carried as a basis B (n x k) together with coordinates
C (k x n) satisfying C B = 1, so e = B C is the idempotent of End(M^lam)
projecting onto U.  Pieces are split with Fitting's lemma: for an
endomorphism z of U and an irreducible factor f of its characteristic
polynomial, U = ker f(z)^N + im f(z)^N with N >= dim U.  A piece is
accepted as indecomposable once End(U) is shown to be F_p plus a nilpotent
ideal J; that ideal also yields a functional on End(U) used to recognise
the piece inside other modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..partitions import as_partition
from . import gf
from .modules import (
    DEFAULT_BUDGET,
    EndomorphismAlgebra,
    OracleBudget,
    TabloidModule,
    hom_table,
    tabloid_module,
)
from .radical import MatrixAlgebra, nilpotent_chain, radical

# End(U) of at most this dimension is certified from its full basis;
# larger ones are split with random elements first.
CERTIFY_DIM = 48
RANDOM_TRIES = 16
SEARCH_TRIES = 64
# cross-check the nilpotency certificate with the radical for small pieces
RADICAL_CHECK = (12, 40)


class DecompositionError(RuntimeError):
    """The splitting procedure could not finish; never a wrong answer."""


@dataclass
class Summand:
    module: TabloidModule
    basis: np.ndarray
    coords: np.ndarray
    local: bool = False
    end_dim: int | None = None
    # residue functional on End(U): z -> f^T z u, stored on the ambient module
    witness_x: np.ndarray | None = field(default=None, repr=False)
    witness_y: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def p(self) -> int:
        return self.module.p

    def projector(self) -> np.ndarray:
        return gf.matmul(self.basis, self.coords, self.p)

    def restrict(self, X) -> np.ndarray:
        """Matrix of e X e on U in the coordinates of U."""
        return gf.matmul(self.coords, gf.matmul(X, self.basis, self.p), self.p)


def whole_module(module: TabloidModule) -> Summand:
    eye = np.eye(module.dim, dtype=np.int64)
    return Summand(module, eye, eye.copy())


@dataclass
class Decomposition:
    module: TabloidModule
    summands: list
    seed: int

    @property
    def dims(self) -> list:
        return sorted(s.dim for s in self.summands)

    def check(self) -> bool:
        """Direct-sum property: the projections are orthogonal and sum to 1."""
        p = self.module.p
        B = np.hstack([s.basis for s in self.summands])
        C = np.vstack([s.coords for s in self.summands])
        n = self.module.dim
        if B.shape != (n, n):
            return False
        return bool(np.array_equal(gf.matmul(C, B, p), np.eye(n, dtype=np.int64)))


class Splitter:
    """Decomposes summands of one permutation module."""

    def __init__(self, module: TabloidModule, rng: np.random.Generator):
        self.module = module
        self.p = module.p
        self.algebra = EndomorphismAlgebra(module)
        self.table = self.algebra.table
        self.rng = rng

    # -- End(U) -------------------------------------------------------
    def end_basis_classes(self, piece: Summand) -> list:
        """Classes a such that the e X_a e form a basis of End(U)."""
        p = self.p
        v = piece.basis @ piece.coords[:, self.algebra.base]
        W = self.table.apply_all(np.mod(v, p), p)
        CW = gf.matmul(piece.coords, W, p)
        _, _, piv = gf.rref(CW, p)
        return piv

    def restricted(self, piece: Summand, coef) -> np.ndarray:
        X = self.algebra.matrix(coef)
        return piece.restrict(X)

    def random_element(self, piece: Summand) -> np.ndarray:
        coef = self.rng.integers(0, self.p, self.algebra.dim)
        return self.restricted(piece, coef)

    # -- splitting ------------------------------------------------------
    def try_split(self, piece: Summand, z: np.ndarray):
        """Split U along the primary decomposition of z; None when z gives no split."""
        p = self.p
        res = gf.primary_split(z, p)
        if res is None:
            return None
        blocks, Tinv = res
        parts = []
        start = 0
        for cols in blocks:
            rows = Tinv[start:start + cols.shape[1]]
            start += cols.shape[1]
            parts.append(Summand(self.module,
                                 gf.matmul(piece.basis, cols, p),
                                 gf.matmul(rows, piece.coords, p)))
        return parts

    def certify(self, piece: Summand, mats: list) -> bool:
        """Check End(U) = F_p + nilpotent; on success store the residue witness."""
        p = self.p
        k = piece.dim
        nil = []
        for Z in mats:
            facs = gf.charpoly_factors(Z, p)
            if len(facs) != 1 or len(facs[0][0]) != 2:
                return False
            c = (-facs[0][0][0]) % p
            N = np.mod(Z - c * np.eye(k, dtype=np.int64), p)
            if N.any():
                nil.append(N)
        chain = nilpotent_chain(nil, p, k)
        if chain is None:
            return False
        if len(mats) <= RADICAL_CHECK[0] and k <= RADICAL_CHECK[1]:
            rad = radical(MatrixAlgebra(mats, p))
            if len(rad) != len(mats) - 1:
                raise DecompositionError(
                    f"radical dimension {len(rad)} disagrees with nilpotency certificate ({len(mats) - 1})")
        JU = chain[0] if chain else np.zeros((k, 0), dtype=np.int64)
        self._set_witness(piece, JU)
        piece.local = True
        return True

    def _set_witness(self, piece: Summand, JU: np.ndarray):
        p = self.p
        k = piece.dim
        if JU.shape[1] == 0:
            f = np.zeros(k, dtype=np.int64)
            f[0] = 1
            j = 0
        else:
            f = gf.left_nullspace(JU, p)[0]
            j = int(np.flatnonzero(f)[0])
            f = np.mod(f * pow(int(f[j]), -1, p), p)
        u = np.zeros(k, dtype=np.int64)
        u[j] = 1
        piece.witness_x = piece.basis[:, j].copy()
        piece.witness_y = gf.matmul(piece.coords.T, f[:, None], p)[:, 0]

    def analyze(self, piece: Summand):
        """Either certify the piece (returns None) or return its two parts."""
        p = self.p
        k = piece.dim
        if k == 1:
            piece.end_dim = 1
            self._set_witness(piece, np.zeros((1, 0), dtype=np.int64))
            piece.local = True
            return None
        classes = self.end_basis_classes(piece)
        piece.end_dim = len(classes)
        if len(classes) == 1:
            self._set_witness(piece, np.zeros((k, 0), dtype=np.int64))
            piece.local = True
            return None
        if len(classes) > CERTIFY_DIM:
            for _ in range(RANDOM_TRIES):
                parts = self.try_split(piece, self.random_element(piece))
                if parts:
                    return parts
        eye = np.eye(self.algebra.dim, dtype=np.int64)
        mats = [self.restricted(piece, eye[a]) for a in classes]
        if self.certify(piece, mats):
            return None
        for Z in mats:
            parts = self.try_split(piece, Z)
            if parts:
                return parts
        for _ in range(SEARCH_TRIES):
            coef = self.rng.integers(0, p, len(mats))
            Z = np.mod(sum(int(c) * m for c, m in zip(coef, mats)), p)
            parts = self.try_split(piece, Z)
            if parts:
                return parts
        for a in mats:
            for b in mats:
                parts = self.try_split(piece, gf.matmul(a, b, p))
                if parts:
                    return parts
        raise DecompositionError(
            f"piece of dimension {k} in M^{tuple(self.module.lam)} is neither certified local nor split"
            " (possibly a non-split residue field)")

    def run(self, start: Summand) -> list:
        done = []
        queue = [start]
        while queue:
            piece = queue.pop()
            parts = self.analyze(piece)
            if parts is None:
                done.append(piece)
            else:
                queue.extend(reversed(parts))
        return done


def _rng(seed: int, lam, p: int, reverse: bool) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(p), int(reverse)] + [int(x) for x in lam])


def decompose(lam, p: int, seed: int = 0, budget: OracleBudget | None = None,
              reverse: bool = False) -> Decomposition:
    """Split M^lam over F_p into summands with local endomorphism rings."""
    lam = as_partition(lam)
    budget = budget or DEFAULT_BUDGET
    budget.check_module(lam)
    budget.check_end(lam)
    module = tabloid_module(lam, p, budget, reverse=reverse)
    splitter = Splitter(module, _rng(seed, lam, p, reverse))
    pieces = splitter.run(whole_module(module))
    pieces.sort(key=lambda s: (-s.dim, s.basis.tobytes()))
    dec = Decomposition(module, pieces, seed)
    if not dec.check():
        raise DecompositionError(f"summands of M^{tuple(lam)} do not form a direct sum")
    return dec


def split_summand(piece: Summand, seed: int = 0) -> list:
    """Decompose an arbitrary summand into certified local pieces."""
    if piece.local:
        return [piece]
    splitter = Splitter(piece.module, _rng(seed, piece.module.lam, piece.module.p, piece.module.reverse))
    fresh = Summand(piece.module, piece.basis, piece.coords)
    return splitter.run(fresh)


# ---------------------------------------------------------------- isomorphism

def pairing_matrix(label: Summand, piece: Summand) -> np.ndarray:
    """Values of the residue functional of `label` on maps through `piece`.

    Entry (b, a) is rho(psi_b e phi_a) with phi_a, psi_b running over the
    contingency bases of Hom(M^mu, M^lam) and Hom(M^lam, M^mu), e the
    projection onto `piece` and rho the residue functional of the local
    summand `label` of M^mu.  It is non-zero iff `label` is isomorphic to a
    summand of `piece`.
    """
    if not label.local:
        raise ValueError("label summand must be certified local")
    p = label.p
    tab = hom_table(label.module, piece.module)
    W = tab.apply_all(label.witness_x, p)
    Z = tab.apply_all(label.witness_y, p)
    left = gf.matmul(piece.basis.T, Z, p)
    right = gf.matmul(piece.coords, W, p)
    return gf.matmul(left.T, right, p)


def multiplicity_in(label: Summand, module: TabloidModule) -> int:
    """Number of summands of `module` isomorphic to the local summand `label`."""
    p = label.p
    tab = hom_table(label.module, module)
    W = tab.apply_all(label.witness_x, p)
    Z = tab.apply_all(label.witness_y, p)
    return gf.rank(gf.matmul(Z.T, W, p), p)


def local_isomorphic(a: Summand, b: Summand) -> bool:
    if a.dim != b.dim:
        return False
    return bool(pairing_matrix(a, b).any())


def modules_isomorphic(U: Summand, V: Summand, seed: int = 0) -> bool:
    """Isomorphism test by matching indecomposable pieces (Krull-Schmidt)."""
    if U.module.r != V.module.r or U.p != V.p:
        raise ValueError("modules over different groups or fields")
    if U.dim != V.dim:
        return False
    left = split_summand(U, seed)
    right = split_summand(V, seed)
    if sorted(s.dim for s in left) != sorted(s.dim for s in right):
        return False
    unused = list(right)
    for a in left:
        for i, b in enumerate(unused):
            if local_isomorphic(a, b):
                unused.pop(i)
                break
        else:
            return False
    return True
