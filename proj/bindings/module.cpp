#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subq/ci_matrix.hpp"
#include "subq/counts.hpp"
#include "subq/determinants.hpp"
#include "subq/errors.hpp"
#include "subq/integrals.hpp"
#include "subq/parity.hpp"
#include "subq/pauli.hpp"
#include "subq/pipeline.hpp"
#include "subq/qdrift.hpp"
#include "subq/qshci.hpp"
#include "subq/slater_condon.hpp"
#include "subq/stats.hpp"
#include "subq/statevector.hpp"
#include "subq/subspace.hpp"

namespace py = pybind11;
using namespace subq;

namespace {

Eigen::MatrixXf cim_to_dense(const CIMatrix& m) {
    Eigen::MatrixXf dense = Eigen::MatrixXf::Zero(static_cast<Eigen::Index>(m.n),
                                                  static_cast<Eigen::Index>(m.n));
    for (const auto& t : m.entries) {
        dense(static_cast<Eigen::Index>(t.i), static_cast<Eigen::Index>(t.j)) = t.value;
        dense(static_cast<Eigen::Index>(t.j), static_cast<Eigen::Index>(t.i)) = t.value;
    }
    return dense;
}

ProbabilityVector to_probability(const std::vector<double>& values) {
    ProbabilityVector p;
    p.probs = values;
    return p;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "CI-matrix subspace diagonalization pipeline";
    m.attr("__version__") = kVersion;
    m.attr("CHEMICAL_ACCURACY") = kChemicalAccuracy;

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<IntegralTable>(m, "IntegralTable")
        .def(py::init<std::size_t>(), py::arg("n_orb"))
        .def_property_readonly("n_orb", &IntegralTable::n_orb)
        .def_property_readonly("core_energy", &IntegralTable::core_energy)
        .def("set_core_energy", &IntegralTable::set_core_energy)
        .def("one_body", &IntegralTable::one_body)
        .def("set_one_body", &IntegralTable::set_one_body)
        .def("two_body", &IntegralTable::two_body)
        .def("set_two_body", &IntegralTable::set_two_body);

    py::class_<FcidumpData>(m, "FcidumpData")
        .def_property_readonly("n_orb", [](const FcidumpData& d) { return d.header.n_orb; })
        .def_property_readonly("n_elec", [](const FcidumpData& d) { return d.header.n_elec; })
        .def_property_readonly("ms2", [](const FcidumpData& d) { return d.header.ms2; })
        .def_readonly("integrals", &FcidumpData::integrals);

    m.def("parse_fcidump", &parse_fcidump_file, py::arg("path"));

    py::class_<Determinant>(m, "Determinant")
        .def_readonly("alpha_mask", &Determinant::alpha_mask)
        .def_readonly("beta_mask", &Determinant::beta_mask);

    py::class_<ConfigurationBasis>(m, "ConfigurationBasis")
        .def("__len__", &ConfigurationBasis::size)
        .def("__getitem__",
             [](const ConfigurationBasis& b, std::size_t i) {
                 if (i >= b.size()) throw py::index_error();
                 return b[i];
             })
        .def_property_readonly("n_orb", &ConfigurationBasis::n_orb)
        .def_property_readonly("hf_index", &ConfigurationBasis::hf_index)
        .def("index_of", [](const ConfigurationBasis& b, std::uint64_t alpha, std::uint64_t beta) {
            const auto idx = b.index_of({alpha, beta});
            return idx == ConfigurationBasis::npos ? -1 : static_cast<long>(idx);
        });

    m.def("enumerate_determinants", &enumerate_determinants, py::arg("n_orb"), py::arg("n_alpha"),
          py::arg("n_beta"));
    m.def(
        "slater_condon_element",
        [](const Determinant& a, const Determinant& b, const IntegralTable& integrals) {
            return slater_condon_element(a, b, integrals);
        },
        py::arg("det_i"), py::arg("det_j"), py::arg("integrals"));

    py::class_<CIMatrix>(m, "CIMatrix")
        .def_readonly("n", &CIMatrix::n)
        .def_readonly("core_energy", &CIMatrix::core_energy)
        .def_property_readonly("nnz", [](const CIMatrix& m_) { return m_.entries.size(); })
        .def("to_dense", &cim_to_dense)
        .def("element", &CIMatrix::element);

    m.def("build_cim", &build_cim, py::arg("basis"), py::arg("integrals"),
          py::arg("drop_tol") = 0.0);
    m.def("save_matrix", &save_matrix, py::arg("matrix"), py::arg("path"));
    m.def("load_matrix", &load_matrix, py::arg("path"));

    m.def(
        "pauli_coefficients",
        [](const CIMatrix& cim, std::size_t max_qubits) {
            const auto padded = pad_dimension(cim, max_qubits);
            auto coeffs = fwht_coefficients(padded.dense, padded.q);
            return py::make_tuple(coeffs.q, coeffs.alpha);
        },
        py::arg("matrix"), py::arg("max_qubits") = 20,
        "Returns (q, alpha) with alpha the 2^q x 2^q Pauli coefficient matrix");

    py::class_<PauliTerm>(m, "PauliTerm")
        .def_readonly("r", &PauliTerm::r)
        .def_readonly("s", &PauliTerm::s)
        .def_readonly("coefficient", &PauliTerm::coefficient)
        .def_property_readonly("phase_exp", [](const PauliTerm& t) { return int(t.phase_exp); })
        .def("letter", &pauli_letter, py::arg("qubit"))
        .def("is_identity", &PauliTerm::is_identity);

    py::class_<QubitHamiltonian>(m, "QubitHamiltonian")
        .def_readonly("q", &QubitHamiltonian::q)
        .def_readonly("terms", &QubitHamiltonian::terms)
        .def("identity_coefficient", &QubitHamiltonian::identity_coefficient);

    m.def("decompose", &decompose, py::arg("matrix"), py::arg("threshold") = 1e-12,
          py::arg("max_qubits") = 20);
    m.def("reconstruct", &reconstruct, py::arg("hamiltonian"));

    py::class_<DriftBudget>(m, "DriftBudget")
        .def_readonly("lambda_norm", &DriftBudget::lambda_norm)
        .def_readonly("lambda_abs", &DriftBudget::lambda_abs)
        .def_readonly("t", &DriftBudget::t)
        .def_readonly("n_a", &DriftBudget::n_a)
        .def_readonly("r", &DriftBudget::r)
        .def("reference_term_count", &DriftBudget::reference_term_count, py::arg("epsilon"));

    m.def(
        "compute_budget",
        [](const CIMatrix& cim, double t, std::size_t max_qubits) {
            const auto padded = pad_dimension(cim, max_qubits);
            return compute_budget(fwht_coefficients(padded.dense, padded.q), t);
        },
        py::arg("matrix"), py::arg("t") = 1.0, py::arg("max_qubits") = 20);

    m.def(
        "encode_index",
        [](std::uint64_t i, std::size_t q) {
            const EncodingMap map{q, std::uint64_t{1} << q};
            return map.encode_index(i);
        },
        py::arg("index"), py::arg("q"));

    m.def("report_qubits", &report_qubits, py::arg("n"));
    py::class_<EnergyError>(m, "EnergyError")
        .def_readonly("error", &EnergyError::error)
        .def_readonly("within_chemical_accuracy", &EnergyError::within_chemical_accuracy);
    m.def("energy_error", &energy_error, py::arg("energy"), py::arg("oracle_energy"));

    py::class_<EigenResult>(m, "EigenResult")
        .def_readonly("energy", &EigenResult::energy)
        .def_readonly("eigenvector", &EigenResult::eigenvector)
        .def_readonly("iterations", &EigenResult::iterations)
        .def_readonly("residual_norm", &EigenResult::residual_norm);

    m.def(
        "ground_state",
        [](const Eigen::MatrixXd& matrix, double tol, std::size_t max_iter) {
            return ground_state(matrix, tol, max_iter);
        },
        py::arg("matrix"), py::arg("tol") = 1e-10, py::arg("max_iter") = 0);

    m.def(
        "cosine_similarity",
        [](const std::vector<double>& p, const std::vector<double>& q) {
            return cosine_similarity(to_probability(p), to_probability(q));
        },
        py::arg("p"), py::arg("q"));
    m.def(
        "ks_statistic",
        [](const std::vector<double>& p, const std::vector<double>& q, double m_eff, double n_eff) {
            const auto r = ks_statistic(to_probability(p), to_probability(q), m_eff, n_eff);
            return py::make_tuple(r.d, r.p_value);
        },
        py::arg("p"), py::arg("q"), py::arg("m_effective"), py::arg("n_effective"));
    m.def(
        "total_variation",
        [](const std::vector<double>& p, const std::vector<double>& q) {
            return total_variation(to_probability(p), to_probability(q));
        },
        py::arg("p"), py::arg("q"));

    py::enum_<RunMode>(m, "RunMode")
        .value("qsci", RunMode::qsci)
        .value("qshci", RunMode::qshci)
        .value("hci", RunMode::hci)
        .value("exact", RunMode::exact);

    py::class_<ActiveSpace>(m, "ActiveSpace")
        .def(py::init([](std::size_t n_orb, std::size_t n_alpha, std::size_t n_beta) {
                 return ActiveSpace{n_orb, n_alpha, n_beta};
             }),
             py::arg("n_orb"), py::arg("n_alpha"), py::arg("n_beta"))
        .def_readwrite("n_orb", &ActiveSpace::n_orb)
        .def_readwrite("n_alpha", &ActiveSpace::n_alpha)
        .def_readwrite("n_beta", &ActiveSpace::n_beta);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("input_fcidump", &RunConfig::input_fcidump)
        .def_readwrite("input_matrix", &RunConfig::input_matrix)
        .def_readwrite("active_space", &RunConfig::active_space)
        .def_readwrite("mode", &RunConfig::mode)
        .def_readwrite("t", &RunConfig::t)
        .def_readwrite("fractions", &RunConfig::fractions)
        .def_readwrite("n_loops", &RunConfig::n_loops)
        .def_readwrite("n_batches", &RunConfig::n_batches)
        .def_readwrite("shots", &RunConfig::shots)
        .def_readwrite("readout_flip_prob", &RunConfig::readout_flip_prob)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("epsilon", &RunConfig::epsilon)
        .def_readwrite("variance_factor", &RunConfig::variance_factor)
        .def_readwrite("output_dir", &RunConfig::output_dir)
        .def_readwrite("na_override", &RunConfig::na_override)
        .def_readwrite("r_override", &RunConfig::r_override)
        .def_readwrite("no_recovery", &RunConfig::no_recovery)
        .def_readwrite("drop_tol", &RunConfig::drop_tol)
        .def_readwrite("max_qubits", &RunConfig::max_qubits)
        .def_readwrite("oracle_limit", &RunConfig::oracle_limit)
        .def_readwrite("skip_oracle", &RunConfig::skip_oracle)
        .def_readwrite("threads", &RunConfig::threads)
        .def_readwrite("max_growth_iter", &RunConfig::max_growth_iter);

    py::class_<RunReport::Row>(m, "ReportRow")
        .def_readonly("mode", &RunReport::Row::mode)
        .def_readonly("parameter_name", &RunReport::Row::parameter_name)
        .def_readonly("parameter", &RunReport::Row::parameter)
        .def_readonly("n", &RunReport::Row::n)
        .def_readonly("subspace_size", &RunReport::Row::subspace_size)
        .def_readonly("energy", &RunReport::Row::energy)
        .def_readonly("core_energy", &RunReport::Row::core_energy)
        .def_readonly("error_vs_exact", &RunReport::Row::error_vs_exact)
        .def_readonly("qubits", &RunReport::Row::qubits)
        .def_readonly("gate_count", &RunReport::Row::gate_count)
        .def_readonly("depth", &RunReport::Row::depth)
        .def_readonly("shots_total", &RunReport::Row::shots_total)
        .def_readonly("shots_retained", &RunReport::Row::shots_retained);

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("rows", &RunReport::rows)
        .def_readonly("seed", &RunReport::seed)
        .def_readonly("version", &RunReport::version)
        .def("to_csv", &RunReport::to_csv);

    m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
