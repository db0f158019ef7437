#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matsamp/bounds.hpp"
#include "matsamp/coupling.hpp"
#include "matsamp/ensemble.hpp"
#include "matsamp/hermitian.hpp"
#include "matsamp/rng.hpp"
#include "matsamp/samplers.hpp"
#include "matsamp/sampling_operator.hpp"

namespace py = pybind11;
using namespace matsamp;

namespace {

py::object to_fraction(const Rational& r) {
  const py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(r.numerator()), py::int_(r.denominator()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Operator-Bernstein tail bounds for matrix sampling with and without replacement";

  py::class_<HermitianMatrix>(m, "HermitianMatrix")
      .def(py::init<Eigen::MatrixXcd>(), py::arg("entries"),
           "Validates Hermiticity within 1e-12 and symmetrizes (M + M^H)/2.")
      .def_property_readonly("dim", &HermitianMatrix::dim)
      .def_property_readonly("entries",
                             [](const HermitianMatrix& self) { return self.entries(); })
      .def("eigenvalues", &HermitianMatrix::eigenvalues)
      .def("__repr__", [](const HermitianMatrix& self) {
        return "<HermitianMatrix dim=" + std::to_string(self.dim()) + ">";
      });
  py::implicitly_convertible<Eigen::MatrixXcd, HermitianMatrix>();

  m.def("operator_norm", &operator_norm, py::arg("m"),
        "Largest absolute eigenvalue of a Hermitian matrix.");
  m.def("trace_exp", &trace_exp, py::arg("m"), py::arg("scale"),
        "tr exp(scale * M) via eigendecomposition.");
  m.def(
      "matrix_sum",
      [](const std::vector<HermitianMatrix>& terms) {
        return matrix_sum(std::span<const HermitianMatrix>(terms));
      },
      py::arg("terms"));

  py::class_<MatrixEnsemble>(m, "MatrixEnsemble")
      .def(py::init<std::vector<HermitianMatrix>>(), py::arg("members"))
      .def_property_readonly("members", &MatrixEnsemble::members)
      .def_property_readonly("dim", &MatrixEnsemble::dim)
      .def_property_readonly("norm_bound_c", &MatrixEnsemble::norm_bound_c)
      .def_property_readonly("variance_bound_sigma0sq", &MatrixEnsemble::variance_bound_sigma0sq)
      .def_property_readonly("centered", &MatrixEnsemble::centered)
      .def("mean", &MatrixEnsemble::mean)
      .def("with_bounds", &MatrixEnsemble::with_bounds, py::arg("c"), py::arg("sigma0sq"))
      .def("__len__", &MatrixEnsemble::size)
      .def("__repr__", [](const MatrixEnsemble& self) {
        return "<MatrixEnsemble size=" + std::to_string(self.size()) +
               " dim=" + std::to_string(self.dim()) + ">";
      });

  m.def("analyze_ensemble", &analyze_ensemble, py::arg("members"));
  m.def("center_ensemble", &center_ensemble, py::arg("ensemble"));
  m.def("random_ensemble", &random_ensemble, py::arg("dim"), py::arg("count"), py::arg("seed"));
  m.def("read_ensemble_file", &read_ensemble_file, py::arg("path"));
  m.def("write_ensemble_file", &write_ensemble_file, py::arg("path"), py::arg("ensemble"));

  py::enum_<SampleMode>(m, "SampleMode")
      .value("WithReplacement", SampleMode::WithReplacement)
      .value("WithoutReplacement", SampleMode::WithoutReplacement)
      .value("Bernoulli", SampleMode::Bernoulli);

  py::class_<SampleVector>(m, "SampleVector")
      .def(py::init([](std::vector<std::size_t> indices, SampleMode mode,
                       std::size_t ensemble_size, std::uint64_t seed) {
             return SampleVector{std::move(indices), mode, ensemble_size, seed};
           }),
           py::arg("indices"), py::arg("mode"), py::arg("ensemble_size"), py::arg("seed") = 0)
      .def_readonly("indices", &SampleVector::indices)
      .def_readonly("mode", &SampleVector::mode)
      .def_readonly("ensemble_size", &SampleVector::ensemble_size)
      .def_readonly("seed", &SampleVector::seed)
      .def("__len__", [](const SampleVector& self) { return self.indices.size(); });

  m.def("sample_with_replacement", &sample_with_replacement, py::arg("size"), py::arg("m"),
        py::arg("seed"));
  m.def("sample_without_replacement", &sample_without_replacement, py::arg("size"), py::arg("m"),
        py::arg("seed"));
  m.def("sample_bernoulli", &sample_bernoulli, py::arg("size"), py::arg("m_expected"),
        py::arg("seed"));
  m.def("realize", &realize, py::arg("v"), py::arg("ensemble"));

  py::enum_<CouplingRule>(m, "CouplingRule")
      .value("FromDrawn", CouplingRule::FromDrawn)
      .value("FromFresh", CouplingRule::FromFresh);

  py::class_<CouplingStep>(m, "CouplingStep")
      .def_readonly("already_drawn", &CouplingStep::already_drawn)
      .def_readonly("rule_taken", &CouplingStep::rule_taken)
      .def_readonly("chosen", &CouplingStep::chosen);

  py::class_<CouplingTrace>(m, "CouplingTrace")
      .def_readonly("input_y", &CouplingTrace::input_y)
      .def_readonly("steps", &CouplingTrace::steps)
      .def_readonly("output_z", &CouplingTrace::output_z);

  m.def("run_coupling", &run_coupling, py::arg("y"), py::arg("c_size"), py::arg("seed"));
  m.def(
      "exact_coupling_distribution",
      [](std::size_t c_size, std::size_t m) {
        const ExactDistribution dist = exact_coupling_distribution(c_size, m);
        py::dict out;
        for (const auto& [outcome, p] : dist.support) {
          out[py::tuple(py::cast(outcome))] = to_fraction(p);
        }
        return out;
      },
      py::arg("c_size"), py::arg("m"),
      "Exact law of Z(Y) as {outcome tuple: Fraction}; uniform 1/|C|^m.");
  m.def(
      "conditional_step_probability",
      [](const CouplingTrace& prefix, std::size_t candidate) {
        return to_fraction(conditional_step_probability(prefix, candidate));
      },
      py::arg("prefix"), py::arg("candidate"),
      "Pr[Z_k = candidate | prefix] as a Fraction; equals 1/|C| in both branches.");
  m.def(
      "coupling_expectation_coefficients",
      [](const SampleVector& y, std::size_t c_size) {
        py::dict out;
        for (const auto& [value, coeff] : coupling_expectation_coefficients(y, c_size)) {
          out[py::int_(value)] = to_fraction(coeff);
        }
        return out;
      },
      py::arg("y"), py::arg("c_size"));
  m.def("coupling_sum_expectation", &coupling_sum_expectation, py::arg("y"), py::arg("ensemble"));

  py::class_<MgfComparison>(m, "MgfComparison")
      .def_readonly("with_replacement", &MgfComparison::with_replacement)
      .def_readonly("without_replacement", &MgfComparison::without_replacement);
  m.def("jensen_domination_check", &jensen_domination_check, py::arg("ensemble"), py::arg("m"),
        py::arg("scale"));

  py::class_<BernsteinParams>(m, "BernsteinParams")
      .def(py::init<Eigen::Index, std::size_t, double, double>(), py::arg("n"), py::arg("m"),
           py::arg("c"), py::arg("sigma0sq"))
      .def_readonly("n", &BernsteinParams::n)
      .def_readonly("m", &BernsteinParams::m)
      .def_readonly("c", &BernsteinParams::c)
      .def_readonly("sigma0sq", &BernsteinParams::sigma0sq)
      .def_readonly("V", &BernsteinParams::V);
  m.def("bernstein_params", &bernstein_params, py::arg("ensemble"), py::arg("m"));
  m.def("bernstein_bound", &bernstein_bound, py::arg("params"), py::arg("t"));
  m.def("wilson_upper_bound", &wilson_upper_bound, py::arg("successes"), py::arg("trials"));

  py::class_<TailReport>(m, "TailReport")
      .def_readonly("t", &TailReport::t)
      .def_readonly("empirical_tail", &TailReport::empirical_tail)
      .def_readonly("trials", &TailReport::trials)
      .def_readonly("theoretical_bound", &TailReport::theoretical_bound)
      .def_readonly("mode", &TailReport::mode)
      .def_readonly("seed", &TailReport::seed)
      .def_readonly("wilson_upper", &TailReport::wilson_upper);
  m.def("empirical_tail", &empirical_tail, py::arg("ensemble"), py::arg("m"), py::arg("mode"),
        py::arg("t"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<MgfEstimate>(m, "MgfEstimate")
      .def_readonly("estimate", &MgfEstimate::estimate)
      .def_readonly("std_error", &MgfEstimate::std_error);
  m.def("empirical_mgf", &empirical_mgf, py::arg("ensemble"), py::arg("m"), py::arg("mode"),
        py::arg("scale"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("exact_mgf", &exact_mgf, py::arg("ensemble"), py::arg("m"), py::arg("mode"),
        py::arg("scale"));
  m.def("exact_mgf_within_guard", &exact_mgf_within_guard, py::arg("size"), py::arg("m"),
        py::arg("mode"));

  py::class_<HermitianBasis>(m, "HermitianBasis")
      .def_readonly("dim", &HermitianBasis::dim)
      .def_readonly("elements", &HermitianBasis::elements)
      .def("__len__", &HermitianBasis::size);
  m.def("build_basis", &build_basis, py::arg("n"));
  m.def("basis_coefficients", &basis_coefficients, py::arg("rho"), py::arg("basis"));
  m.def("apply_sampling_operator", &apply_sampling_operator, py::arg("rho"), py::arg("v"),
        py::arg("basis"));
  m.def("index_multiplicities", &index_multiplicities, py::arg("v"), py::arg("size"));
  m.def("superoperator_matrix", &superoperator_matrix, py::arg("v"), py::arg("basis"));

  py::class_<SamplingOperatorDiag>(m, "SamplingOperatorDiag")
      .def_readonly("n", &SamplingOperatorDiag::n)
      .def_readonly("m", &SamplingOperatorDiag::m)
      .def_readonly("indices", &SamplingOperatorDiag::indices)
      .def_readonly("eigenvalues", &SamplingOperatorDiag::eigenvalues)
      .def_readonly("norm", &SamplingOperatorDiag::norm);
  m.def("diagnose_sampling_operator", &diagnose_sampling_operator, py::arg("v"), py::arg("n"));

  py::class_<OperatorNormRecord>(m, "OperatorNormRecord")
      .def_readonly("trial", &OperatorNormRecord::trial)
      .def_readonly("norm", &OperatorNormRecord::norm)
      .def_readonly("max_multiplicity", &OperatorNormRecord::max_multiplicity)
      .def_readonly("is_projection", &OperatorNormRecord::is_projection);

  py::class_<OperatorNormStudy>(m, "OperatorNormStudy")
      .def_readonly("min", &OperatorNormStudy::min)
      .def_readonly("median", &OperatorNormStudy::median)
      .def_readonly("max", &OperatorNormStudy::max)
      .def_readonly("records", &OperatorNormStudy::records);
  m.def("operator_norm_study", &operator_norm_study, py::arg("n"), py::arg("m"), py::arg("mode"),
        py::arg("trials"), py::arg("seed"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());

  m.def("derive_seed", &derive_seed, py::arg("parent"), py::arg("label"), py::arg("index") = 0,
        "Deterministic child-stream seed (SplitMix64 hash chain).");

  m.attr("__version__") = "0.1.0";
}
