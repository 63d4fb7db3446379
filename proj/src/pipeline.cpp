#include "subq/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "subq/counts.hpp"
#include "subq/errors.hpp"
#include "subq/parity.hpp"
#include "subq/pauli.hpp"
#include "subq/qdrift.hpp"
#include "subq/qshci.hpp"
#include "subq/rng.hpp"
#include "subq/statevector.hpp"

namespace subq {

namespace fs = std::filesystem;

const char* run_mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::qsci: return "qsci";
        case RunMode::qshci: return "qshci";
        case RunMode::hci: return "hci";
        case RunMode::exact: return "exact";
    }
    return "unknown";
}

std::size_t report_qubits(std::uint64_t n) {
    if (n == 0) throw ValidationError("configuration count must be positive");
    return ceil_log2(n) + 1;
}

EnergyError energy_error(double energy, double oracle_energy) {
    EnergyError e;
    e.error = std::abs(energy - oracle_energy);
    e.within_chemical_accuracy = e.error <= kChemicalAccuracy;
    return e;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename F>
auto with_stage(const char* stage, F&& f) -> decltype(f()) {
    auto prefix = [stage](const char* what) {
        return std::string("stage ") + stage + ": " + what;
    };
    try {
        return f();
    } catch (const FormatError& e) {
        throw FormatError(prefix(e.what()));
    } catch (const ResourceError& e) {
        throw ResourceError(prefix(e.what()));
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(prefix(e.what()), e.best_residual());
    } catch (const ValidationError& e) {
        throw ValidationError(prefix(e.what()));
    }
}

// Buffers output files and writes them atomically (tmp + rename) once the
// run has succeeded, so a failed stage leaves no partial outputs behind.
class OutputSink {
  public:
    explicit OutputSink(std::string dir) : dir_(std::move(dir)) {}

    void stage_file(const std::string& name, std::string content) {
        if (!dir_.empty()) pending_[name] = std::move(content);
    }

    void commit() {
        if (dir_.empty() || pending_.empty()) return;
        fs::create_directories(dir_);
        std::vector<fs::path> written;
        try {
            for (const auto& [name, content] : pending_) {
                const fs::path target = fs::path(dir_) / name;
                const fs::path tmp = target.string() + ".tmp";
                {
                    std::ofstream out(tmp, std::ios::binary);
                    if (!out) throw ValidationError("cannot write " + tmp.string());
                    out << content;
                }
                fs::rename(tmp, target);
                written.push_back(target);
            }
        } catch (...) {
            for (const auto& path : written) {
                std::error_code ec;
                fs::remove(path, ec);
            }
            throw;
        }
    }

  private:
    std::string dir_;
    std::map<std::string, std::string> pending_;
};

void validate_config(const RunConfig& config) {
    const bool has_fcidump = !config.input_fcidump.empty();
    const bool has_matrix = !config.input_matrix.empty();
    if (has_fcidump == has_matrix)
        throw ValidationError("exactly one of --fcidump / --matrix is required");
    if (config.mode == RunMode::hci && !config.epsilon)
        throw ValidationError("hci mode requires --epsilon");
    if (config.variance_factor <= 0.0)
        throw ValidationError("variance factor must be positive");
    if (config.t <= 0.0) throw ValidationError("evolution time must be positive");
    if (config.readout_flip_prob < 0.0 || config.readout_flip_prob > 1.0)
        throw ValidationError("readout flip probability must lie in [0, 1]");
    if (config.mode == RunMode::qsci) {
        if (config.fractions.empty()) throw ValidationError("qsci mode needs at least one fraction");
        for (double f : config.fractions)
            if (f <= 0.0 || f > 1.0) throw ValidationError("fractions must lie in (0, 1]");
        if (config.n_loops == 0 || config.n_batches == 0)
            throw ValidationError("loop and batch counts must be positive");
    }
    if (config.shots == 0) throw ValidationError("shot count must be positive");
}

struct QuantumStageResult {
    std::size_t q = 0;
    DriftBudget budget;
    std::uint64_t n_a = 0;
    std::uint64_t repetitions = 0;
    BitstringCounts raw;
    std::map<std::uint64_t, std::uint64_t> valid;
    MitigationReport mitigation;
};

QuantumStageResult quantum_stages(const RunConfig& config, const CIMatrix& matrix,
                                  OutputSink& sink) {
    QuantumStageResult result;

    const auto coeffs = with_stage("decompose", [&] {
        const auto padded = pad_dimension(matrix, config.max_qubits);
        auto c = fwht_coefficients(padded.dense, padded.q);
        return c;
    });
    result.q = coeffs.q;

    if (!config.dump_alpha_path.empty()) {
        // raw (r, s, alpha) triplets in the CIM1 byte layout, for inspection
        CIMatrix alpha_dump;
        alpha_dump.n = std::uint64_t{1} << coeffs.q;
        const std::size_t dim = std::size_t{1} << coeffs.q;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t s = 0; s < dim; ++s) {
                const float a = coeffs.alpha(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
                if (a != 0.0f) alpha_dump.entries.push_back({r, s, a});
            }
        with_stage("decompose", [&] {
            save_matrix(alpha_dump, config.dump_alpha_path);
            return 0;
        });
    }

    result.budget = with_stage("plan", [&] { return compute_budget(coeffs, config.t); });
    result.n_a = config.na_override.value_or(result.budget.n_a);
    result.repetitions = config.r_override.value_or(result.budget.r);
    if (result.n_a == 0 || result.repetitions == 0)
        throw ValidationError("stage plan: overrides must be positive");

    DriftBudget effective = result.budget;
    effective.n_a = result.n_a;
    effective.r = result.repetitions;

    const EncodingMap map{result.q, matrix.n};
    std::string plan_dump;

    with_stage("evolve", [&] {
        result.raw.q_total = result.q + 1;
        for (std::uint64_t rep = 0; rep < result.repetitions; ++rep) {
            const std::uint64_t rep_seed = splitmix64(config.seed ^ splitmix64(0x9e1 + rep));
            auto rng_plan = substream(rep_seed, 1);
            auto rng_sample = substream(rep_seed, 2);
            auto rng_noise = substream(rep_seed, 3);

            const auto indices = sample_terms(coeffs, result.n_a, rng_plan);
            auto plan = build_plan(indices, effective, coeffs, /*parity_extension=*/true);
            plan.repetition_id = rep;
            plan.rng_seed = rep_seed;
            if (!config.dump_plan_path.empty()) plan_dump += format_plan(plan);

            auto state = init_basis_state(map.encode_state(0), result.q + 1);
            evolve(state, plan);
            auto counts = sample(state, config.shots, rng_sample);
            if (config.readout_flip_prob > 0.0)
                counts = apply_readout_noise(counts, {config.readout_flip_prob}, rng_noise);
            result.raw.merge(counts);
        }
        return 0;
    });

    if (!config.dump_plan_path.empty()) {
        std::ofstream out(config.dump_plan_path);
        if (!out) throw ValidationError("cannot write plan dump: " + config.dump_plan_path);
        out << plan_dump;
    }

    with_stage("mitigate", [&] {
        const auto ps = postselect(result.raw, map);
        std::uint64_t flagged_total = 0;
        for (const auto& [outcome, count] : ps.flagged) flagged_total += count;

        result.mitigation.shots_total = result.raw.shots_total;
        result.mitigation.parity_flagged = flagged_total;
        result.mitigation.pad_discarded = ps.pad_discarded;
        if (config.no_recovery) {
            result.valid = ps.valid;
            result.mitigation.flagged_discarded = flagged_total;
        } else {
            const auto rec = recover(ps.flagged, ps.valid, map);
            result.valid = rec.valid;
            result.mitigation.recovered = rec.recovered;
            result.mitigation.flagged_discarded = rec.discarded;
        }
        for (const auto& [index, count] : result.valid) result.mitigation.retained += count;
        return 0;
    });

    {
        std::ostringstream raw_text;
        write_counts(raw_text, result.raw, /*has_parity=*/true);
        sink.stage_file("counts_raw.txt", raw_text.str());

        BitstringCounts valid_counts;
        valid_counts.q_total = result.q;
        for (const auto& [index, count] : result.valid) valid_counts.add(index, count);
        std::ostringstream valid_text;
        write_counts(valid_text, valid_counts, /*has_parity=*/false);
        sink.stage_file("counts_valid.txt", valid_text.str());

        sink.stage_file("mitigation.txt", result.mitigation.to_text());
    }
    return result;
}

std::string selection_text(const SubspaceSelection& selection) {
    std::ostringstream out;
    for (std::uint64_t idx : selection.indices) out << idx << '\n';
    return out.str();
}

std::string iterations_csv(const SelectiveCiResult& result) {
    std::ostringstream out;
    out << "iter,subspace_size,energy_hartree,added_count\n";
    for (const auto& row : result.history)
        out << row.iter << ',' << row.subspace_size << ',' << fmt_double(row.energy) << ','
            << row.added_count << '\n';
    return out.str();
}

} // namespace

LoadedProblem load_problem(const RunConfig& config) {
    LoadedProblem problem;
    if (!config.input_fcidump.empty()) {
        const auto data = parse_fcidump_file(config.input_fcidump);
        ActiveSpace space;
        if (config.active_space) {
            space = *config.active_space;
            if (space.n_orb > data.header.n_orb)
                throw ValidationError("active space has more orbitals than the FCIDUMP");
        } else {
            const std::size_t nelec = data.header.n_elec;
            const int ms2 = data.header.ms2;
            if ((static_cast<long>(nelec) + ms2) % 2 != 0 || ms2 > static_cast<long>(nelec))
                throw ValidationError("FCIDUMP NELEC/MS2 are inconsistent");
            space.n_orb = data.header.n_orb;
            space.n_alpha = (nelec + static_cast<std::size_t>(ms2)) / 2;
            space.n_beta = nelec - space.n_alpha;
        }
        auto basis = enumerate_determinants(space.n_orb, space.n_alpha, space.n_beta);
        problem.matrix = build_cim(basis, data.integrals, config.drop_tol);
        problem.source = std::make_unique<IntegralSource>(std::move(basis), data.integrals);
    } else {
        problem.matrix = load_matrix(config.input_matrix);
        problem.source = std::make_unique<SparseMatrixSource>(problem.matrix);
    }
    return problem;
}

std::string RunReport::to_csv() const {
    std::ostringstream out;
    out << "# subq-report v1\n";
    out << "# version " << version << "\n";
    out << "# seed " << seed << "\n";
    out << "mode,parameter_name,parameter,n,subspace_size,energy_hartree,core_energy_hartree,"
           "total_energy_hartree,error_vs_exact_hartree,within_chemical_accuracy,qubits,"
           "gate_count,depth,shots_total,shots_retained\n";
    for (const auto& row : rows) {
        out << row.mode << ',' << row.parameter_name << ',' << fmt_double(row.parameter) << ','
            << row.n << ',' << row.subspace_size << ',' << fmt_double(row.energy) << ','
            << fmt_double(row.core_energy) << ',' << fmt_double(row.energy + row.core_energy) << ',';
        if (row.error_vs_exact) {
            out << fmt_double(*row.error_vs_exact) << ','
                << ((*row.error_vs_exact <= kChemicalAccuracy) ? "yes" : "no") << ',';
        } else {
            out << ",,";
        }
        out << row.qubits << ',' << row.gate_count << ',' << row.depth << ',' << row.shots_total
            << ',' << row.shots_retained << '\n';
    }
    return out.str();
}

namespace {

double full_ground_energy(const ElementSource& source, std::uint64_t limit) {
    if (source.n() > limit)
        throw ResourceError("matrix dimension " + std::to_string(source.n()) +
                            " exceeds the dense oracle limit " + std::to_string(limit));
    SubspaceSelection all;
    all.source = "manual";
    all.indices.resize(source.n());
    for (std::uint64_t i = 0; i < source.n(); ++i) all.indices[i] = i;
    return ground_state(project(source, all)).energy;
}

} // namespace

RunReport run(const RunConfig& config) {
    validate_config(config);

#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(static_cast<int>(config.threads));
#endif

    OutputSink sink(config.output_dir);
    auto problem = with_stage("load", [&] { return load_problem(config); });
    const ElementSource& source = *problem.source;
    const std::uint64_t n = source.n();
    const double core = source.core_energy();

    RunReport report;
    report.seed = config.seed;
    report.version = kVersion;

    // dense oracle energy for the error column, where tractable
    std::optional<double> oracle_energy;
    if (config.mode == RunMode::exact ||
        (!config.skip_oracle && n <= config.oracle_limit)) {
        oracle_energy =
            with_stage("oracle", [&] { return full_ground_energy(source, config.oracle_limit); });
    }

    auto make_row = [&](const char* parameter_name, double parameter, std::size_t subspace_size,
                        double energy) {
        RunReport::Row row;
        row.mode = run_mode_name(config.mode);
        row.parameter_name = parameter_name;
        row.parameter = parameter;
        row.n = n;
        row.subspace_size = subspace_size;
        row.energy = energy;
        row.core_energy = core;
        if (oracle_energy) row.error_vs_exact = std::abs(energy - *oracle_energy);
        row.qubits = report_qubits(n);
        return row;
    };

    switch (config.mode) {
        case RunMode::exact: {
            auto row = make_row("", 0.0, n, *oracle_energy);
            report.rows.push_back(std::move(row));
            break;
        }
        case RunMode::hci: {
            const auto result = with_stage("diagonalize", [&] {
                return hci(source, *config.epsilon, 0, config.max_growth_iter);
            });
            auto row = make_row("epsilon", *config.epsilon, result.selection.indices.size(),
                                result.eigen.energy);
            report.rows.push_back(std::move(row));
            sink.stage_file("iterations.csv", iterations_csv(result));
            sink.stage_file("selection.txt", selection_text(result.selection));
            break;
        }
        case RunMode::qsci: {
            auto quantum = quantum_stages(config, problem.matrix, sink);
            std::ostringstream loops_csv;
            loops_csv << "loop,subspace_size,fraction,energy_hartree,residual,seed\n";
            for (double fraction : config.fractions) {
                const auto outcome = with_stage("diagonalize", [&] {
                    return qsci_run(quantum.valid, source, fraction, config.n_loops,
                                    config.n_batches, config.seed);
                });
                for (const auto& loop : outcome.loops)
                    loops_csv << loop.loop << ',' << loop.subspace_size << ','
                              << fmt_double(loop.fraction) << ',' << fmt_double(loop.energy) << ','
                              << fmt_double(loop.residual) << ',' << loop.seed << '\n';
                auto row = make_row("fraction", fraction, outcome.selection.indices.size(),
                                    outcome.eigen.energy);
                row.gate_count = quantum.n_a * quantum.repetitions;
                row.depth = quantum.n_a;
                row.shots_total = quantum.raw.shots_total;
                row.shots_retained = quantum.mitigation.retained;
                report.rows.push_back(std::move(row));
                sink.stage_file("selection_f" + fmt_double(fraction) + ".txt",
                                selection_text(outcome.selection));
            }
            sink.stage_file("qsci_loops.csv", loops_csv.str());
            break;
        }
        case RunMode::qshci: {
            auto quantum = quantum_stages(config, problem.matrix, sink);
            const auto result = with_stage("diagonalize", [&] {
                const auto probs = probabilities_from_counts(quantum.valid);
                return qshci(source, probs, config.variance_factor, 0, config.max_growth_iter);
            });
            auto row = make_row("variance_factor", config.variance_factor,
                                result.selection.indices.size(), result.eigen.energy);
            row.gate_count = quantum.n_a * quantum.repetitions;
            row.depth = quantum.n_a;
            row.shots_total = quantum.raw.shots_total;
            row.shots_retained = quantum.mitigation.retained;
            report.rows.push_back(std::move(row));
            sink.stage_file("iterations.csv", iterations_csv(result));
            sink.stage_file("selection.txt", selection_text(result.selection));
            break;
        }
    }

    sink.stage_file("report.csv", report.to_csv());
    sink.commit();
    return report;
}

} // namespace subq
