#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subq/subspace.hpp"

namespace subq {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr double kChemicalAccuracy = 0.0016; // Hartree

enum class RunMode { qsci, qshci, hci, exact };

const char* run_mode_name(RunMode mode);

struct ActiveSpace {
    std::size_t n_orb = 0;
    std::size_t n_alpha = 0;
    std::size_t n_beta = 0;
};

struct RunConfig {
    std::string input_fcidump; // exactly one of input_fcidump / input_matrix
    std::string input_matrix;
    std::optional<ActiveSpace> active_space; // defaults derived from the FCIDUMP header

    RunMode mode = RunMode::exact;
    double t = 1.0;
    std::vector<double> fractions = {0.8};
    std::size_t n_loops = 10;
    std::size_t n_batches = 100;
    std::uint64_t shots = 10000; // per repetition
    double readout_flip_prob = 0.0;
    std::uint64_t seed = 0;
    std::optional<double> epsilon;  // required for hci
    double variance_factor = 1.0;
    std::string output_dir;

    std::optional<std::uint64_t> na_override;
    std::optional<std::uint64_t> r_override;
    bool no_recovery = false;
    double drop_tol = 0.0;
    std::size_t max_qubits = 20;
    std::uint64_t oracle_limit = 4096; // dense oracle cutoff for error columns
    bool skip_oracle = false;
    std::string dump_alpha_path;
    std::string dump_plan_path;
    std::size_t threads = 0;         // 0 = library default
    std::size_t max_growth_iter = 0; // hci/qshci sweep cap, 0 = N
};

struct RunReport {
    struct Row {
        std::string mode;
        std::string parameter_name; // fraction / epsilon / variance_factor
        double parameter = 0.0;
        std::uint64_t n = 0;
        std::size_t subspace_size = 0;
        double energy = 0.0; // Hartree, excluding core energy
        double core_energy = 0.0;
        std::optional<double> error_vs_exact;
        std::size_t qubits = 0;      // ceil(log2 N) + 1
        std::uint64_t gate_count = 0; // sum of n_a over repetitions
        std::uint64_t depth = 0;      // rotations per repetition (n_a)
        std::uint64_t shots_total = 0;
        std::uint64_t shots_retained = 0;
    };
    std::vector<Row> rows;
    std::uint64_t seed = 0;
    std::string version;

    std::string to_csv() const;
};

// Qubit requirement of the parity-augmented encoding for an N-configuration
// problem: ceil(log2 N) + 1.
std::size_t report_qubits(std::uint64_t n);

struct EnergyError {
    double error = 0.0;
    bool within_chemical_accuracy = false; // error <= 0.0016 Hartree
};
EnergyError energy_error(double energy, double oracle_energy);

// Executes the configured mode end to end. All randomness derives from
// config.seed; outputs land in config.output_dir (written atomically,
// removed again on stage failure). Stage errors carry the stage name.
RunReport run(const RunConfig& config);

// Loads the configured input into an element source plus the stored
// single-precision matrix used by the decomposition stage.
struct LoadedProblem {
    std::unique_ptr<ElementSource> source;
    CIMatrix matrix;
};
LoadedProblem load_problem(const RunConfig& config);

} // namespace subq
