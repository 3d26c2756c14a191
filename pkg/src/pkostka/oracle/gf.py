"""Dense linear algebra over a prime field.

Matrices are numpy int64 arrays with entries in [0, p).  Products use
float64 BLAS (exact while the inner dimension times (p-1)^2 stays below
2^52); elimination, kernels and characteristic polynomials go through
python-flint's nmod_mat.
"""

from __future__ import annotations

import flint
import numpy as np

_EXACT_FLOAT = 2 ** 52


def reduce(A, p: int) -> np.ndarray:
    return np.mod(np.asarray(A, dtype=np.int64), p)


def to_flint(A, p: int):
    A = reduce(A, p)
    m, n = A.shape
    return flint.nmod_mat(m, n, A.ravel().tolist(), p)


def from_flint(M) -> np.ndarray:
    m, n = M.nrows(), M.ncols()
    if m == 0 or n == 0:
        return np.zeros((m, n), dtype=np.int64)
    return np.fromiter((int(x) for x in M.entries()), dtype=np.int64, count=m * n).reshape(m, n)


def matmul(A, B, p: int) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    inner = A.shape[-1]
    if inner * (p - 1) ** 2 < _EXACT_FLOAT:
        out = A.astype(np.float64) @ B.astype(np.float64)
        return np.mod(out, p).astype(np.int64)
    return from_flint(to_flint(A, p) * to_flint(B, p))


def matpow(A, e: int, p: int) -> np.ndarray:
    n = A.shape[0]
    out = np.eye(n, dtype=np.int64)
    base = reduce(A, p)
    while e:
        if e & 1:
            out = matmul(out, base, p)
        e >>= 1
        if e:
            base = matmul(base, base, p)
    return out


def rref(A, p: int):
    """Reduced row echelon form, rank and pivot columns."""
    A = reduce(A, p)
    m, n = A.shape
    if m == 0 or n == 0:
        return A.copy(), 0, []
    R, rank = to_flint(A, p).rref()
    R = from_flint(R)
    pivots = []
    for i in range(rank):
        nz = np.flatnonzero(R[i])
        pivots.append(int(nz[0]))
    return R, rank, pivots


def rank(A, p: int) -> int:
    A = reduce(A, p)
    if A.size == 0:
        return 0
    return to_flint(A, p).rank()


def nullspace(A, p: int) -> np.ndarray:
    """Columns spanning {x : A x = 0}."""
    A = reduce(A, p)
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    X, nullity = to_flint(A, p).nullspace()
    return from_flint(X)[:, :nullity]


def left_nullspace(A, p: int) -> np.ndarray:
    """Rows spanning {y : y A = 0}."""
    return nullspace(np.asarray(A).T, p).T


def column_basis(A, p: int) -> np.ndarray:
    """A maximal independent set of columns of A (pivot columns)."""
    A = reduce(A, p)
    if A.size == 0:
        return np.zeros((A.shape[0], 0), dtype=np.int64)
    _, _, piv = rref(A, p)
    return A[:, piv]


def row_basis(A, p: int) -> np.ndarray:
    R, r, _ = rref(A, p)
    return R[:r]


def inverse(A, p: int) -> np.ndarray:
    A = reduce(A, p)
    if A.shape[0] == 0:
        return A.copy()
    return from_flint(to_flint(A, p).inv())


def charpoly_factors(A, p: int) -> list:
    """Irreducible factors of the characteristic polynomial with multiplicities.

    Each factor is a tuple of coefficients, constant term first.
    """
    A = reduce(A, p)
    if A.shape[0] == 0:
        return []
    _, facs = to_flint(A, p).charpoly().factor()
    out = [(tuple(int(c) for c in f.coeffs()), int(e)) for f, e in facs]
    out.sort(key=lambda fe: (len(fe[0]), fe[0]))
    return out


def poly_at(coeffs, A, p: int) -> np.ndarray:
    """Evaluate a polynomial (constant term first) at a square matrix."""
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(coeffs):
        out = matmul(out, A, p)
        out = np.mod(out + c * eye, p)
    return out


def is_scalar(A) -> bool:
    n = A.shape[0]
    if n == 0:
        return True
    c = A[0, 0]
    return bool(np.all(A == c * np.eye(n, dtype=A.dtype)))


def primary_split(z, p: int, max_parts: int = 6):
    """Split F_p^k into z-invariant pieces along the characteristic polynomial.

    Up to `max_parts - 1` irreducible factors (smallest degree times
    multiplicity first) get their own generalized eigenspace ker f(z)^m; the
    remaining factors share one complementary piece, the image of the
    product of those f(z)^m.  Returns (blocks, inverse) with blocks a list of
    column bases whose concatenation T is invertible and inverse = T^-1, or
    None when the characteristic polynomial has a single irreducible factor.
    """
    z = reduce(z, p)
    k = z.shape[0]
    _, facs = to_flint(z, p).charpoly().factor()
    if len(facs) < 2:
        return None
    facs = [(tuple(int(c) for c in f.coeffs()), int(m)) for f, m in facs]
    facs.sort(key=lambda fm: ((len(fm[0]) - 1) * fm[1], fm[0]))
    chosen = facs[:max_parts - 1] if len(facs) > max_parts - 1 else facs[:-1]
    blocks = []
    rest = None
    for coeffs, m in chosen:
        F = poly_at(coeffs, z, p)
        # f(z) is nilpotent of index <= m on its generalized eigenspace
        e = 1
        while e < m:
            F = matmul(F, F, p)
            e *= 2
        blocks.append(nullspace(F, p))
        rest = F if rest is None else matmul(rest, F, p)
    blocks.append(column_basis(rest, p))
    T = np.hstack(blocks)
    if T.shape != (k, k):
        raise ArithmeticError(f"primary components have total dimension {T.shape[1]}, expected {k}")
    return blocks, inverse(T, p)
