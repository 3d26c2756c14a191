"""Brute-force modular representation oracle for Young permutation modules."""

from .modules import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    EndomorphismAlgebra,
    HomTable,
    OracleBudget,
    TabloidModule,
    count_contingency,
    endomorphism_algebra,
    hom_dim,
    hom_space,
    hom_table,
    tabloid_module,
)
from .radical import MatrixAlgebra, radical, quotient_algebra
from .decompose import (
    Decomposition,
    DecompositionError,
    Summand,
    decompose,
    modules_isomorphic,
    whole_module,
)
from .table import (
    DecompositionRecord,
    LabelingError,
    label_table,
    oracle_record,
    pkostka_oracle,
    table_from_json,
    table_records,
    table_to_json,
    young_label_table,
)
