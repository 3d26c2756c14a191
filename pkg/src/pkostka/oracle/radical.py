"""Jacobson radical of a matrix algebra over a prime field.

In characteristic p the kernel of the trace form is too big in general, so
the radical is cut out by a sequence of p-power trace conditions (the
method of Ronyai and of Cohen-Ivanyos-Wales): with I_{-1} = A,

    I_i = { a in I_{i-1} : g_i(ab) = 0 for all b in A },
    g_i(X) = (Tr(X~^(p^i)) mod p^(i+1)) / p^i,

where X~ is the integer lift of X with entries in [0, p).  After
i = floor(log_p n) steps (n the matrix size) what is left is the radical.
"""

from __future__ import annotations

import numpy as np

from . import gf


class MatrixAlgebra:
    """Subalgebra of n x n matrices over F_p given by a spanning set."""

    def __init__(self, matrices, p: int):
        self.p = int(p)
        mats = [gf.reduce(m, p) for m in matrices]
        if not mats:
            raise ValueError("empty spanning set")
        self.n = mats[0].shape[0]
        flat = np.array([m.ravel() for m in mats])
        basis = gf.row_basis(flat, p)
        self.basis = [row.reshape(self.n, self.n) for row in basis]
        self.dim = len(self.basis)

    def flat(self) -> np.ndarray:
        return np.array([b.ravel() for b in self.basis]).reshape(self.dim, -1)

    def coordinates(self, X) -> np.ndarray:
        """Coefficients of X in the basis (X must lie in the algebra)."""
        F = self.flat()
        R, rank, piv = gf.rref(F, self.p)
        # solve c F = x using pivot columns, which are unit vectors in R
        x = gf.reduce(X, self.p).ravel()
        Fp = F[:, piv]
        c = gf.matmul(x[piv][None, :], gf.inverse(Fp, self.p), self.p)[0]
        if not np.array_equal(gf.matmul(c[None, :], F, self.p)[0], x):
            raise ValueError("matrix is not in the algebra")
        return c


def _lifted_trace_power(X: np.ndarray, e: int, modulus: int) -> int:
    """Tr(X^e) mod modulus for an integer matrix."""
    n = X.shape[0]
    use_float = n * (modulus - 1) ** 2 < 2 ** 52
    out = np.eye(n, dtype=np.int64)
    base = np.mod(X, modulus)
    while e:
        if e & 1:
            out = _mulmod(out, base, modulus, use_float)
        e >>= 1
        if e:
            base = _mulmod(base, base, modulus, use_float)
    return int(np.trace(out)) % modulus


def _mulmod(A, B, m, use_float):
    if use_float:
        return np.mod(A.astype(np.float64) @ B.astype(np.float64), m).astype(np.int64)
    return np.mod(A.astype(object) @ B.astype(object), m).astype(np.int64)


def radical(algebra: MatrixAlgebra) -> list:
    """Basis (list of matrices) of the Jacobson radical."""
    p, n = algebra.p, algebra.n
    A = algebra.basis
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    current = list(A)
    for i in range(levels + 1):
        if not current:
            break
        q = p ** i
        mod = q * p
        G = np.zeros((len(current), len(A)), dtype=np.int64)
        for s, a in enumerate(current):
            for j, b in enumerate(A):
                prod = gf.matmul(a, b, p)
                t = _lifted_trace_power(prod, q, mod)
                if t % q:
                    raise ArithmeticError("p-power trace not divisible at this level")
                G[s, j] = (t // q) % p
        coeffs = gf.left_nullspace(G, p)
        new = []
        for c in coeffs:
            m = np.zeros((n, n), dtype=np.int64)
            for cs, a in zip(c, current):
                if cs:
                    m += int(cs) * a
            new.append(np.mod(m, p))
        current = new
    if not current:
        return []
    flat = gf.row_basis(np.array([m.ravel() for m in current]), p)
    return [row.reshape(n, n) for row in flat]


def quotient_algebra(algebra: MatrixAlgebra, ideal: list) -> MatrixAlgebra:
    """Left regular representation of algebra/ideal (faithful since it is unital)."""
    p = algebra.p
    n2 = algebra.n * algebra.n
    J = np.array([m.ravel() for m in ideal]).reshape(len(ideal), n2)
    # complete a basis of J to a basis of the algebra
    full = algebra.flat()
    stack = np.vstack([J, full]) if len(ideal) else full
    R, rank, piv = gf.rref(stack.T, p)
    comp = [full[k - len(ideal)] for k in piv if k >= len(ideal)]
    q = len(comp)
    basis_all = np.vstack([J, np.array(comp)]) if len(ideal) else np.array(comp)
    inv_src = basis_all  # rows: J then complement
    _, _, piv2 = gf.rref(inv_src, p)
    cols = piv2
    Minv = gf.inverse(inv_src[:, cols], p)
    mats = []
    n = algebra.n
    for a in comp:
        L = np.zeros((q, q), dtype=np.int64)
        A = a.reshape(n, n)
        for k, b in enumerate(comp):
            prod = gf.matmul(A, b.reshape(n, n), p).ravel()
            coords = gf.matmul(prod[cols][None, :], Minv, p)[0]
            L[:, k] = coords[len(ideal):]
        mats.append(L)
    if q == 0:
        return None
    return MatrixAlgebra(mats, p)


def nilpotent_chain(nilpotents: list, p: int, size: int):
    """Images N U, N^2 U, ... of the full space under a set of matrices.

    Returns the list of column bases until it reaches 0, or None if it
    stabilizes at a non-zero subspace (the set does not generate a
    nilpotent algebra).
    """
    V = np.eye(size, dtype=np.int64)
    chain = []
    while V.shape[1]:
        if not nilpotents:
            W = np.zeros((size, 0), dtype=np.int64)
        else:
            W = gf.column_basis(np.hstack([gf.matmul(N, V, p) for N in nilpotents]), p)
        if W.shape[1] == V.shape[1]:
            return None
        chain.append(W)
        V = W
    return chain
