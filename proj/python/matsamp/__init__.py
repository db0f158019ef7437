"""Operator-Bernstein tail bounds for matrix sampling with and without replacement."""

from ._core import (
    BernsteinParams,
    CouplingRule,
    CouplingStep,
    CouplingTrace,
    HermitianBasis,
    HermitianMatrix,
    MatrixEnsemble,
    MgfComparison,
    MgfEstimate,
    OperatorNormRecord,
    OperatorNormStudy,
    SampleMode,
    SampleVector,
    SamplingOperatorDiag,
    TailReport,
    __version__,
    analyze_ensemble,
    apply_sampling_operator,
    basis_coefficients,
    bernstein_bound,
    bernstein_params,
    build_basis,
    center_ensemble,
    conditional_step_probability,
    coupling_expectation_coefficients,
    coupling_sum_expectation,
    derive_seed,
    diagnose_sampling_operator,
    empirical_mgf,
    empirical_tail,
    exact_coupling_distribution,
    exact_mgf,
    exact_mgf_within_guard,
    index_multiplicities,
    jensen_domination_check,
    matrix_sum,
    operator_norm,
    operator_norm_study,
    random_ensemble,
    read_ensemble_file,
    realize,
    run_coupling,
    sample_bernoulli,
    sample_with_replacement,
    sample_without_replacement,
    superoperator_matrix,
    trace_exp,
    wilson_upper_bound,
    write_ensemble_file,
)

__all__ = [
    "BernsteinParams",
    "CouplingRule",
    "CouplingStep",
    "CouplingTrace",
    "HermitianBasis",
    "HermitianMatrix",
    "MatrixEnsemble",
    "MgfComparison",
    "MgfEstimate",
    "OperatorNormRecord",
    "OperatorNormStudy",
    "SampleMode",
    "SampleVector",
    "SamplingOperatorDiag",
    "TailReport",
    "__version__",
    "analyze_ensemble",
    "apply_sampling_operator",
    "basis_coefficients",
    "bernstein_bound",
    "bernstein_params",
    "build_basis",
    "center_ensemble",
    "conditional_step_probability",
    "coupling_expectation_coefficients",
    "coupling_sum_expectation",
    "derive_seed",
    "diagnose_sampling_operator",
    "empirical_mgf",
    "empirical_tail",
    "exact_coupling_distribution",
    "exact_mgf",
    "exact_mgf_within_guard",
    "index_multiplicities",
    "jensen_domination_check",
    "matrix_sum",
    "operator_norm",
    "operator_norm_study",
    "random_ensemble",
    "read_ensemble_file",
    "realize",
    "run_coupling",
    "sample_bernoulli",
    "sample_with_replacement",
    "sample_without_replacement",
    "superoperator_matrix",
    "trace_exp",
    "wilson_upper_bound",
    "write_ensemble_file",
]
