"""CI-matrix subspace diagonalization: CI-matrix construction, Walsh-Hadamard
Pauli decomposition, randomized approximate evolution with parity-bit readout
mitigation, and QSCI/QSHCI/HCI subspace solvers."""

from subq._core import (  # noqa: F401
    CHEMICAL_ACCURACY,
    ActiveSpace,
    CIMatrix,
    ConfigurationBasis,
    ConvergenceError,
    Determinant,
    DriftBudget,
    EigenResult,
    EnergyError,
    FcidumpData,
    IntegralTable,
    PauliTerm,
    QubitHamiltonian,
    ReportRow,
    ResourceError,
    RunConfig,
    RunMode,
    RunReport,
    ValidationError,
    __version__,
    build_cim,
    compute_budget,
    cosine_similarity,
    decompose,
    encode_index,
    energy_error,
    enumerate_determinants,
    ground_state,
    ks_statistic,
    load_matrix,
    parse_fcidump,
    pauli_coefficients,
    reconstruct,
    report_qubits,
    run,
    save_matrix,
    slater_condon_element,
    total_variation,
)
