"""Tables, the realizability matrix and their verification."""

from .examples import Example12Check, example12_check, orthogonal_roots, root_system
from .ledger import ALLOWED_N, FormulaLedger, LedgerError, formula_ledger
from .report import negative_control, verify_all
from .tables import (
    TABLE1,
    DecompositionCheck,
    PicardTableRow,
    RowReport,
    StratumRow,
    check_decomposition,
    table1_rows,
    table2_rows,
    verify_row,
)
from .theorem import (
    IMPOSSIBLE,
    IMPOSSIBLE_EXTERNAL,
    REALIZABLE,
    SIGMAS,
    BaseChangeCertificate,
    CatalogError,
    CriterionResult,
    CriterionWitness,
    FibrationWitness,
    ImpossibilityTrace,
    NonreducedWitness,
    RealizabilityCell,
    RealizabilityMatrix,
    TraceStep,
    apply_criterion,
    basechange_model,
    fibration_witness,
    impossibility_sigma10,
    n12_basechange_certificate,
    nonreduced_witness,
    realizability_cell,
    realizability_matrix,
    sigma1_n20_filter,
)
