"""Young labels for the summands of permutation modules.

Modules are processed in lexicographically descending order, which refines
dominance.  When M^lam is reached every summand isomorphic to an already
labelled Y^mu is recognised through the residue pairing; exactly one class
must remain, and it is Y^lam.  Multiplicities [M^lam : Y^mu] then come from
the rank of a pairing matrix and need only the label of mu.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from ..partitions import Partition, as_partition, dominates, partition_list
from .decompose import (
    Decomposition,
    DecompositionError,
    Summand,
    decompose,
    multiplicity_in,
    pairing_matrix,
)
from .modules import DEFAULT_BUDGET, OracleBudget, tabloid_module

TABLE_VERSION = 1


class LabelingError(DecompositionError):
    """Labels did not come out unitriangular; this would contradict the theory."""


@dataclass
class DecompositionRecord:
    r: int
    p: int
    lam: Partition
    summands: list  # (label, dim, mult), labels sorted lexicographically descending

    @property
    def total_dim(self) -> int:
        return sum(d * m for _, d, m in self.summands)

    @property
    def count(self) -> int:
        return sum(m for _, _, m in self.summands)

    def multiplicity(self, mu) -> int:
        mu = as_partition(mu)
        return sum(m for lab, _, m in self.summands if lab == mu)

    def to_json(self) -> dict:
        return {"lambda": list(self.lam),
                "summands": [{"mu": list(mu), "dim": d, "mult": m} for mu, d, m in self.summands]}

    @classmethod
    def from_json(cls, data: dict, r: int, p: int) -> "DecompositionRecord":
        return cls(r, p, Partition(data["lambda"]),
                   [(Partition(s["mu"]), int(s["dim"]), int(s["mult"])) for s in data["summands"]])


class LabelTable:
    """Lazily labelled Young modules for one degree and prime."""

    def __init__(self, r: int, p: int, seed: int = 0):
        self.r, self.p, self.seed = r, p, seed
        self.decompositions = {}
        self.labels = {}        # mu -> local Summand of M^mu realising Y^mu
        self.piece_labels = {}  # lam -> list of labels, parallel to its summands
        self._lock = threading.RLock()

    def _decomposition(self, lam, budget) -> Decomposition:
        dec = self.decompositions.get(lam)
        if dec is None:
            dec = decompose(lam, self.p, seed=self.seed, budget=budget)
            self.decompositions[lam] = dec
        return dec

    def ensure_label(self, mu, budget: OracleBudget | None = None) -> Summand:
        mu = as_partition(mu)
        budget = budget or DEFAULT_BUDGET
        # checked even on a hit so the answer does not depend on earlier calls
        upset = [nu for nu in partition_list(self.r) if dominates(nu, mu)]
        for nu in upset:
            budget.check_module(nu)
            budget.check_end(nu)
        with self._lock:
            if mu in self.labels:
                return self.labels[mu]
            for nu in upset:
                if nu not in self.labels:
                    self._label(nu, budget)
            return self.labels[mu]

    def _label(self, lam, budget):
        dec = self._decomposition(lam, budget)
        names = []
        fresh = []
        for i, piece in enumerate(dec.summands):
            hits = [mu for mu, lab in self.labels.items()
                    if lab.dim == piece.dim and pairing_matrix(lab, piece).any()]
            if len(hits) > 1:
                raise LabelingError(f"summand {i} of M^{tuple(lam)} matches several labels {hits}")
            names.append(hits[0] if hits else None)
            if not hits:
                fresh.append(i)
        if len(fresh) != 1:
            raise LabelingError(
                f"M^{tuple(lam)} at p={self.p}: {len(fresh)} unlabelled summand classes "
                f"(dims {[dec.summands[i].dim for i in fresh]}), expected exactly one")
        names[fresh[0]] = lam
        for mu in names:
            if not dominates(mu, lam):
                raise LabelingError(f"Y^{tuple(mu)} occurs in M^{tuple(lam)} but does not dominate it")
        self.labels[lam] = dec.summands[fresh[0]]
        self.piece_labels[lam] = names
        # the pairing rank must reproduce the piece counts
        for mu in set(names):
            k = multiplicity_in(self.labels[mu], dec.module)
            if k != names.count(mu):
                raise LabelingError(
                    f"pairing rank {k} for Y^{tuple(mu)} in M^{tuple(lam)} disagrees with {names.count(mu)} pieces")

    def record(self, lam, budget: OracleBudget | None = None) -> DecompositionRecord:
        lam = as_partition(lam)
        with self._lock:
            self.ensure_label(lam, budget)
            dec = self.decompositions[lam]
            names = self.piece_labels[lam]
            counts = {}
            for mu, piece in zip(names, dec.summands):
                d, m = counts.get(mu, (piece.dim, 0))
                counts[mu] = (d, m + 1)
            rows = [(mu, d, m) for mu, (d, m) in sorted(counts.items(), reverse=True)]
            return DecompositionRecord(self.r, self.p, lam, rows)

    def multiplicity(self, lam, mu, budget: OracleBudget | None = None) -> int:
        """[M^lam : Y^mu] from the rank of the pairing matrix."""
        lam, mu = as_partition(lam), as_partition(mu)
        budget = budget or DEFAULT_BUDGET
        budget.check_module(lam)
        label = self.ensure_label(mu, budget)
        with self._lock:
            if lam in self.piece_labels:
                return self.piece_labels[lam].count(mu)
        module = tabloid_module(lam, self.p, budget)
        return multiplicity_in(label, module)


_tables = {}
_tables_lock = threading.Lock()


def label_table(r: int, p: int, seed: int = 0) -> LabelTable:
    key = (r, p, seed)
    with _tables_lock:
        tab = _tables.get(key)
        if tab is None:
            tab = _tables[key] = LabelTable(r, p, seed)
    return tab


def clear_tables():
    with _tables_lock:
        _tables.clear()


def pkostka_oracle(lam, mu, p: int, budget: OracleBudget | None = None, seed: int = 0) -> int:
    """[M^lam : Y^mu] computed from scratch over F_p."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.degree != mu.degree:
        raise ValueError(f"degree mismatch: |{tuple(lam)}| = {lam.degree}, |{tuple(mu)}| = {mu.degree}")
    if lam.degree == 0:
        return 1
    return label_table(lam.degree, p, seed).multiplicity(lam, mu, budget)


def oracle_record(lam, p: int, budget: OracleBudget | None = None, seed: int = 0) -> DecompositionRecord:
    lam = as_partition(lam)
    if lam.degree == 0:
        return DecompositionRecord(0, p, lam, [(lam, 1, 1)])
    return label_table(lam.degree, p, seed).record(lam, budget)


def young_label_table(r: int, p: int, budget: OracleBudget | None = None, seed: int = 0) -> dict:
    """Full table (lam, mu) -> [M^lam : Y^mu] for all partitions of r."""
    budget = budget or DEFAULT_BUDGET
    for lam in partition_list(r):
        budget.check_module(lam)
        budget.check_end(lam)
    tab = label_table(r, p, seed)
    out = {}
    for lam in partition_list(r):
        rec = tab.record(lam, budget)
        for mu in partition_list(r):
            out[(lam, mu)] = rec.multiplicity(mu)
    return out


def table_records(r: int, p: int, budget: OracleBudget | None = None, seed: int = 0) -> list:
    young_label_table(r, p, budget, seed)
    tab = label_table(r, p, seed)
    return [tab.record(lam, budget) for lam in partition_list(r)]


def table_to_json(r: int, p: int, records: list) -> dict:
    return {"version": TABLE_VERSION, "p": p, "r": r, "rows": [rec.to_json() for rec in records]}


def table_from_json(data: dict) -> list:
    if data.get("version") != TABLE_VERSION:
        raise ValueError(f"unsupported table version {data.get('version')!r}")
    r, p = int(data["r"]), int(data["p"])
    return [DecompositionRecord.from_json(row, r, p) for row in data["rows"]]
