"""Young permutation modules on tabloids and their homomorphism spaces.

A tabloid is stored as its row-assignment vector: entry x is the row that
contains the point x.  Homomorphisms M^lam -> M^mu have a basis indexed by
contingency matrices: the class of a pair (t, s) of tabloids is the matrix
of intersection sizes |t_i & s_j|, and the orbit-sum map sends t to the sum
of all s in a given class.
"""

from __future__ import annotations

import itertools
import threading
from functools import lru_cache

import numpy as np

from ..partitions import Partition, as_partition, multinomial
from . import gf


class BudgetExceeded(Exception):
    """A module or algebra is larger than the configured budget."""


class OracleBudget:
    """Size caps for the oracle: tabloid count and endomorphism-algebra dimension."""

    def __init__(self, max_tabloids: int = 3000, max_end_dim: int = 1000):
        self.max_tabloids = int(max_tabloids)
        self.max_end_dim = int(max_end_dim)

    def check_module(self, lam):
        n = multinomial(lam)
        if n > self.max_tabloids:
            raise BudgetExceeded(f"M^{tuple(lam)} has {n} tabloids > budget {self.max_tabloids}")

    def check_end(self, lam):
        d = count_contingency(tuple(lam), tuple(lam))
        if d > self.max_end_dim:
            raise BudgetExceeded(f"End(M^{tuple(lam)}) has dimension {d} > budget {self.max_end_dim}")

    def __repr__(self):
        return f"OracleBudget(max_tabloids={self.max_tabloids}, max_end_dim={self.max_end_dim})"


DEFAULT_BUDGET = OracleBudget()


@lru_cache(maxsize=None)
def count_contingency(rows: tuple, cols: tuple) -> int:
    """Number of non-negative integer matrices with the given margins."""
    if not rows:
        return 1 if all(c == 0 for c in cols) else 0
    first, rest = rows[0], rows[1:]
    total = 0

    def rec(j, left, remaining):
        nonlocal total
        if j == len(cols):
            if left == 0:
                total += count_contingency(rest, tuple(sorted(remaining, reverse=True)))
            return
        for v in range(min(left, cols[j]) + 1):
            rec(j + 1, left - v, remaining + [cols[j] - v])

    rec(0, first, [])
    return total


def _enumerate_tabloids(lam: tuple) -> np.ndarray:
    """Row-assignment vectors in lexicographic order of the row tuples."""
    r = sum(lam)
    out = []

    def rec(i, free, assign):
        if i == len(lam):
            out.append(tuple(assign))
            return
        for row in itertools.combinations(free, lam[i]):
            chosen = set(row)
            new = list(assign)
            for x in row:
                new[x] = i
            rec(i + 1, [x for x in free if x not in chosen], new)

    rec(0, list(range(r)), [0] * r)
    if not out:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(out, dtype=np.int8)


class TabloidModule:
    """The permutation module M^lam over F_p on its tabloid basis."""

    def __init__(self, lam, p: int, reverse: bool = False):
        self.lam = as_partition(lam)
        self.p = int(p)
        self.r = self.lam.degree
        self.reverse = reverse
        T = _enumerate_tabloids(tuple(self.lam))
        if reverse:
            T = T[::-1].copy()
        self.tabloids = T
        self.dim = T.shape[0]
        base = max(len(self.lam), 1)
        self._weights = base ** np.arange(self.r, dtype=np.int64)
        keys = self._keys(T)
        self._order = np.argsort(keys)
        self._sorted_keys = keys[self._order]
        self.generators = [self._transposition(x) for x in range(self.r - 1)]

    def _keys(self, T) -> np.ndarray:
        return T.astype(np.int64) @ self._weights if self.r else np.zeros(len(T), dtype=np.int64)

    def index_of(self, T) -> np.ndarray:
        """Basis indices of the given row-assignment vectors."""
        keys = self._keys(np.atleast_2d(T))
        pos = np.searchsorted(self._sorted_keys, keys)
        return self._order[pos]

    def _transposition(self, x: int) -> np.ndarray:
        T = self.tabloids.copy()
        T[:, [x, x + 1]] = T[:, [x + 1, x]]
        return self.index_of(T)

    def act(self, perm) -> np.ndarray:
        """Index map of the point permutation perm (perm[x] is the image of x)."""
        perm = np.asarray(perm)
        T = np.empty_like(self.tabloids)
        T[:, perm] = self.tabloids
        return self.index_of(T)

    def base_index(self) -> int:
        """Index of the tabloid with rows {1..lam_1}, {lam_1+1, ...}, ..."""
        assign = np.repeat(np.arange(len(self.lam)), list(self.lam)).astype(np.int8)
        return int(self.index_of(assign[None, :])[0])

    def check_coxeter(self) -> bool:
        ident = np.arange(self.dim)
        g = self.generators
        for i, s in enumerate(g):
            if not np.array_equal(s[s], ident):
                return False
            if sorted(s.tolist()) != ident.tolist():
                return False
            for j in range(i + 1, len(g)):
                t = g[j]
                st = s[t]
                order = 3 if j == i + 1 else 2
                w = ident
                for _ in range(order):
                    w = st[w]
                if not np.array_equal(w, ident):
                    return False
        return True


_module_cache = {}
_module_lock = threading.Lock()


def tabloid_module(lam, p: int, budget: OracleBudget | None = None, reverse: bool = False) -> TabloidModule:
    lam = as_partition(lam)
    (budget or DEFAULT_BUDGET).check_module(lam)
    key = (lam, p, reverse)
    with _module_lock:
        mod = _module_cache.get(key)
    if mod is None:
        mod = TabloidModule(lam, p, reverse)
        with _module_lock:
            mod = _module_cache.setdefault(key, mod)
    return mod


class HomTable:
    """Contingency classes of tabloid pairs between two permutation modules.

    `classes[t, s]` is the class of (source tabloid t, target tabloid s) and
    `matrices[a]` the contingency matrix of class a.
    """

    def __init__(self, source: TabloidModule, target: TabloidModule):
        if source.r != target.r:
            raise ValueError("modules of different degree")
        self.source, self.target = source, target
        rows, cols = tuple(source.lam), tuple(target.lam)
        la, lb = max(len(rows), 1), max(len(cols), 1)
        bounds = [[min(a, b) for b in cols] or [0] for a in rows] or [[0]]
        weights = np.zeros((la, lb), dtype=np.int64)
        w = 1
        for i in range(la):
            for j in range(lb):
                weights[i, j] = w
                w *= bounds[i][j] + 1
        if w >= 2 ** 62:
            raise BudgetExceeded(f"contingency keys overflow for {rows} x {cols}")
        S, T = source.tabloids, target.tabloids
        keys = np.zeros((source.dim, target.dim), dtype=np.int64)
        for x in range(source.r):
            keys += weights[S[:, x]][:, T[:, x]]
        uniq = np.unique(keys[0])
        classes = np.searchsorted(uniq, keys)
        if not np.array_equal(uniq[np.minimum(classes, len(uniq) - 1)], keys):
            raise AssertionError("contingency class missing from the first row")
        self.classes = classes.astype(np.int32)
        self.size = len(uniq)
        mats = []
        for key in uniq.tolist():
            m = np.zeros((len(rows), len(cols)), dtype=np.int64)
            for i in range(len(rows)):
                for j in range(len(cols)):
                    m[i, j] = key // weights[i, j] % (bounds[i][j] + 1)
            mats.append(m)
        self.matrices = mats

    def map_matrix(self, a: int) -> np.ndarray:
        """Matrix (target x source) of the orbit-sum map of class a."""
        return (self.classes.T == a).astype(np.int64)

    def apply_all(self, x, p: int) -> np.ndarray:
        """Columns phi_a(x) for every class a, as a (target dim x classes) array."""
        idx = np.arange(self.target.dim)[None, :] * self.size + self.classes
        w = np.broadcast_to(np.asarray(x, dtype=np.float64)[:, None], self.classes.shape)
        out = np.bincount(idx.ravel(), weights=w.ravel(), minlength=self.target.dim * self.size)
        return np.mod(np.rint(out).astype(np.int64).reshape(self.target.dim, self.size), p)

    def adjoint_all(self, y, p: int) -> np.ndarray:
        """Columns phi_a^T(y) for every class a, as a (source dim x classes) array."""
        idx = np.arange(self.source.dim)[:, None] * self.size + self.classes
        w = np.broadcast_to(np.asarray(y, dtype=np.float64)[None, :], self.classes.shape)
        out = np.bincount(idx.ravel(), weights=w.ravel(), minlength=self.source.dim * self.size)
        return np.mod(np.rint(out).astype(np.int64).reshape(self.source.dim, self.size), p)


_hom_cache = {}
_hom_lock = threading.Lock()


def hom_table(source: TabloidModule, target: TabloidModule) -> HomTable:
    key = (source.lam, source.reverse, target.lam, target.reverse)
    with _hom_lock:
        tab = _hom_cache.get(key)
    if tab is None:
        tab = HomTable(source, target)
        with _hom_lock:
            tab = _hom_cache.setdefault(key, tab)
    return tab


def hom_dim(lam, mu) -> int:
    return count_contingency(tuple(as_partition(lam)), tuple(as_partition(mu)))


def hom_space(lam, mu, p: int, budget: OracleBudget | None = None) -> list:
    """Basis of Hom(M^lam, M^mu) as dense (dim M^mu x dim M^lam) matrices."""
    src = tabloid_module(lam, p, budget)
    dst = tabloid_module(mu, p, budget)
    tab = hom_table(src, dst)
    return [tab.map_matrix(a) for a in range(tab.size)]


def commutes_with_generators(phi, source: TabloidModule, target: TabloidModule) -> bool:
    """Check phi g = g phi for every adjacent transposition g."""
    for gs, gt in zip(source.generators, target.generators):
        # (phi P_s)[:, t] = phi[:, gs[t]] and (P_t phi)[gt[u], :] = phi[u, :]
        left = phi[:, gs]
        right = np.empty_like(phi)
        right[gt, :] = phi
        if not np.array_equal(left, right):
            return False
    return True


class EndomorphismAlgebra:
    """End(M^lam) over F_p with the contingency-matrix basis."""

    def __init__(self, module: TabloidModule):
        self.module = module
        self.p = module.p
        self.table = hom_table(module, module)
        self.dim = self.table.size
        self.base = module.base_index()
        self._reps = np.zeros(self.dim, dtype=np.int64)
        row = self.table.classes[self.base]
        self._reps[row] = np.arange(module.dim)
        self.identity_class = int(self.table.classes[self.base, self.base])

    def identity(self) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[self.identity_class] = 1
        return e

    def matrix(self, coef) -> np.ndarray:
        """Matrix of the endomorphism with the given coefficient vector."""
        coef = np.mod(np.asarray(coef, dtype=np.int64), self.p)
        return coef[self.table.classes.T]

    def coefficients(self, X) -> np.ndarray:
        """Coefficient vector of an endomorphism given by its matrix."""
        col = np.asarray(X)[:, self.base]
        return np.mod(col[self._reps], self.p)

    def product(self, x, y) -> np.ndarray:
        """Coefficients of x composed with y (apply y first)."""
        v = self.matrix(y)[:, self.base]
        w = gf.matmul(self.matrix(x), v[:, None], self.p)[:, 0]
        return w[self._reps]

    def structure_constants(self) -> np.ndarray:
        """c[a, b, :] = coefficients of basis_a * basis_b."""
        d = self.dim
        out = np.zeros((d, d, d), dtype=np.int64)
        eye = np.eye(d, dtype=np.int64)
        for a in range(d):
            Xa = self.matrix(eye[a])
            for b in range(d):
                v = self.matrix(eye[b])[:, self.base]
                out[a, b] = gf.matmul(Xa, v[:, None], self.p)[self._reps, 0]
        return out

    def basis_matrices(self) -> list:
        return [self.table.map_matrix(a) for a in range(self.dim)]


def endomorphism_algebra(lam, p: int, budget: OracleBudget | None = None) -> EndomorphismAlgebra:
    budget = budget or DEFAULT_BUDGET
    budget.check_end(as_partition(lam))
    return EndomorphismAlgebra(tabloid_module(lam, p, budget))
