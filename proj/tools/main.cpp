#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>
#include <fstream>
#include <sstream>
#include <cmath>

#include <CLI11.hpp>

#include "subq/counts.hpp"
#include "subq/errors.hpp"
#include "subq/pauli.hpp"
#include "subq/pipeline.hpp"
#include "subq/qdrift.hpp"
#include "subq/stats.hpp"

namespace {

struct CommonOptions {
    subq::RunConfig config;
    std::vector<std::size_t> active_space;
    std::uint64_t na_override = 0; // 0 = use the computed budget
    std::uint64_t r_override = 0;
};

void add_input_flags(CLI::App* cmd, CommonOptions& opts) {
    auto* fcidump = cmd->add_option("--fcidump", opts.config.input_fcidump,
                                    "FCIDUMP electron-integral input");
    auto* matrix = cmd->add_option("--matrix", opts.config.input_matrix,
                                   "CIM1 binary matrix input");
    fcidump->excludes(matrix);
    cmd->add_option("--active-space", opts.active_space,
                    "n_orb n_alpha n_beta (defaults from the FCIDUMP header)")
        ->expected(3);
    cmd->add_option("--drop-tol", opts.config.drop_tol, "drop |element| <= tol when building");
    cmd->add_option("--max-qubits", opts.config.max_qubits, "resource guard on ceil(log2 N)");
}

void add_run_flags(CLI::App* cmd, CommonOptions& opts) {
    add_input_flags(cmd, opts);
    cmd->add_option("--seed", opts.config.seed, "master RNG seed")->envname("SUBQ_SEED");
    cmd->add_option("-o,--output", opts.config.output_dir, "output directory for run artifacts");
    cmd->add_option("--oracle-limit", opts.config.oracle_limit,
                    "largest N for the dense reference energy");
    cmd->add_flag("--skip-oracle", opts.config.skip_oracle, "skip the dense reference energy");
    cmd->add_option("--threads", opts.config.threads, "cap worker threads (0 = default)");
    cmd->set_config("--config", "", "flat key=value config file; command-line flags win");
}

void add_quantum_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--time", opts.config.t, "evolution time t");
    cmd->add_option("--shots", opts.config.shots, "shots per repetition");
    cmd->add_option("--readout-flip-prob", opts.config.readout_flip_prob,
                    "per-bit readout flip probability");
    cmd->add_option("--na-override", opts.na_override, "override n_a (0 = computed)");
    cmd->add_option("--r-override", opts.r_override, "override repetition count (0 = computed)");
    cmd->add_flag("--no-recovery", opts.config.no_recovery,
                  "post-select only, skip flip recovery");
    cmd->add_option("--dump-alpha", opts.config.dump_alpha_path,
                    "dump the coefficient matrix (CIM1 triplet layout)");
    cmd->add_option("--dump-plan", opts.config.dump_plan_path, "dump evolution plans as text");
}

void finalize(CommonOptions& opts) {
    if (opts.na_override > 0) opts.config.na_override = opts.na_override;
    if (opts.r_override > 0) opts.config.r_override = opts.r_override;
    if (!opts.active_space.empty()) {
        subq::ActiveSpace space;
        space.n_orb = opts.active_space[0];
        space.n_alpha = opts.active_space[1];
        space.n_beta = opts.active_space[2];
        opts.config.active_space = space;
    }
}

int run_mode(CommonOptions& opts, subq::RunMode mode) {
    finalize(opts);
    opts.config.mode = mode;
    const auto report = subq::run(opts.config);
    std::cout << report.to_csv();
    return 0;
}

int cmd_build_cim(CommonOptions& opts, const std::string& out_path) {
    finalize(opts);
    auto problem = subq::load_problem(opts.config);
    subq::save_matrix(problem.matrix, out_path);
    std::cout << "n " << problem.matrix.n << "\nentries " << problem.matrix.entries.size()
              << "\ncore_energy " << problem.matrix.core_energy << "\nqubits "
              << subq::report_qubits(problem.matrix.n) << "\n";
    return 0;
}

int cmd_decompose(CommonOptions& opts, double threshold, double time, double epsilon) {
    finalize(opts);
    auto problem = subq::load_problem(opts.config);
    const auto padded = subq::pad_dimension(problem.matrix, opts.config.max_qubits);
    const auto coeffs = subq::fwht_coefficients(padded.dense, padded.q);

    if (!opts.config.dump_alpha_path.empty()) {
        subq::CIMatrix dump;
        dump.n = std::uint64_t{1} << coeffs.q;
        const std::size_t dim = std::size_t{1} << coeffs.q;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t s = 0; s < dim; ++s) {
                const float a = coeffs.alpha(static_cast<Eigen::Index>(r),
                                             static_cast<Eigen::Index>(s));
                if (a != 0.0f) dump.entries.push_back({r, s, a});
            }
        subq::save_matrix(dump, opts.config.dump_alpha_path);
    }

    std::size_t terms = 0;
    const std::size_t dim = std::size_t{1} << coeffs.q;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t s = 0; s < dim; ++s)
            if (!(r == 0 && s == 0) && std::abs(coeffs.at(r, s)) > threshold) ++terms;

    const auto budget = subq::compute_budget(coeffs, time);
    std::cout << "n " << problem.matrix.n << "\nqubits_index " << coeffs.q << "\nqubits_total "
              << coeffs.q + 1 << "\nterms " << terms << "\nlambda_norm " << budget.lambda_norm
              << "\nlambda_abs " << budget.lambda_abs << "\nn_a " << budget.n_a << "\nr "
              << budget.r << "\nn_c " << budget.reference_term_count(epsilon) << "\n";
    return 0;
}

int cmd_analyze(const std::string& path_a, const std::string& path_b, const std::string& out) {
    const auto counts_a = subq::read_counts_file(path_a);
    const auto counts_b = subq::read_counts_file(path_b);
    if (counts_a.q_total != counts_b.q_total)
        throw subq::ValidationError("counts files have different bitstring lengths");

    std::set<std::uint64_t> keys;
    for (const auto& [k, v] : counts_a.counts) keys.insert(k);
    for (const auto& [k, v] : counts_b.counts) keys.insert(k);

    std::vector<std::uint64_t> va, vb;
    for (std::uint64_t k : keys) {
        const auto ita = counts_a.counts.find(k);
        const auto itb = counts_b.counts.find(k);
        va.push_back(ita == counts_a.counts.end() ? 0 : ita->second);
        vb.push_back(itb == counts_b.counts.end() ? 0 : itb->second);
    }
    const auto pa = subq::ProbabilityVector::from_counts(va);
    const auto pb = subq::ProbabilityVector::from_counts(vb);

    const double cosine = subq::cosine_similarity(pa, pb);
    const auto ks = subq::ks_statistic(pa, pb, static_cast<double>(counts_a.shots_total),
                                       static_cast<double>(counts_b.shots_total));
    const double tv = subq::total_variation(pa, pb);

    std::ostringstream text;
    text << "metric,value\n";
    text << "cosine_similarity," << cosine << "\n";
    text << "ks_statistic," << ks.d << "\n";
    text << "ks_p_value," << ks.p_value << "\n";
    text << "total_variation," << tv << "\n";
    if (out.empty()) {
        std::cout << text.str();
    } else {
        std::ofstream file(out);
        if (!file) throw subq::ValidationError("cannot write " + out);
        file << text.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CI-matrix subspace diagonalization pipeline"};
    app.require_subcommand(1);

    CommonOptions opts;

    auto* build = app.add_subcommand("build-cim", "build a CI matrix and save it as CIM1");
    std::string build_out = "cim.bin";
    add_input_flags(build, opts);
    build->add_option("-o,--output", build_out, "output CIM1 path");

    auto* decompose = app.add_subcommand("decompose", "Pauli-decompose a matrix and report the budget");
    double threshold = 1e-12, dec_time = 1.0, dec_epsilon = 0.01;
    add_input_flags(decompose, opts);
    decompose->add_option("--threshold", threshold, "coefficient threshold for the term count");
    decompose->add_option("--time", dec_time, "evolution time t");
    decompose->add_option("--epsilon", dec_epsilon, "accuracy for the reference term count n_c");
    decompose->add_option("--dump-alpha", opts.config.dump_alpha_path,
                          "dump the coefficient matrix (CIM1 triplet layout)");

    auto* qsci = app.add_subcommand("run-qsci", "sample, mitigate and batch-diagonalize");
    add_run_flags(qsci, opts);
    add_quantum_flags(qsci, opts);
    qsci->add_option("--fraction", opts.config.fractions, "subspace fractions of N to solve");
    qsci->add_option("--loops", opts.config.n_loops, "post-processing loops");
    qsci->add_option("--batches", opts.config.n_batches, "batches per loop");

    auto* qshci = app.add_subcommand("run-qshci", "sample and grow a quantum-informed subspace");
    add_run_flags(qshci, opts);
    add_quantum_flags(qshci, opts);
    qshci->add_option("--variance-factor", opts.config.variance_factor,
                      "acceptance relaxation factor v");
    qshci->add_option("--max-iter", opts.config.max_growth_iter, "cap on growth sweeps");

    auto* hci_cmd = app.add_subcommand("run-hci", "classical heat-bath CI baseline");
    add_run_flags(hci_cmd, opts);
    double hci_epsilon = 0.0;
    hci_cmd->add_option("--epsilon", hci_epsilon, "acceptance tolerance")->required();
    hci_cmd->add_option("--max-iter", opts.config.max_growth_iter, "cap on growth sweeps");

    auto* exact = app.add_subcommand("run-exact", "dense reference diagonalization");
    add_run_flags(exact, opts);

    auto* analyze = app.add_subcommand("analyze", "compare two counts files");
    std::string counts_a, counts_b, analyze_out;
    analyze->add_option("counts_a", counts_a, "first counts file")->required();
    analyze->add_option("counts_b", counts_b, "second counts file")->required();
    analyze->add_option("-o,--output", analyze_out, "write metrics CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return cmd_build_cim(opts, build_out);
        if (decompose->parsed()) return cmd_decompose(opts, threshold, dec_time, dec_epsilon);
        if (qsci->parsed()) return run_mode(opts, subq::RunMode::qsci);
        if (qshci->parsed()) return run_mode(opts, subq::RunMode::qshci);
        if (hci_cmd->parsed()) {
            opts.config.epsilon = hci_epsilon;
            return run_mode(opts, subq::RunMode::hci);
        }
        if (exact->parsed()) return run_mode(opts, subq::RunMode::exact);
        if (analyze->parsed()) return cmd_analyze(counts_a, counts_b, analyze_out);
    } catch (const subq::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const subq::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
        return 4;
    } catch (const subq::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
