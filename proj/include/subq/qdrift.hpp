#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "subq/pauli.hpp"

namespace subq {

// Truncation parameters of the repeated approximate evolution. The counts
// use the normalized strength lambda_norm = sum |alpha / max|alpha|| over
// non-identity terms; rotation angles use the physical strength lambda_abs
// = sum |alpha| (Hartree). The identity term only contributes a global
// phase and is excluded from both sums.
struct DriftBudget {
    double lambda_norm = 0.0;
    double lambda_abs = 0.0;
    double t = 1.0;
    std::uint64_t n_a = 0; // ceil(2 * lambda_norm * t^2)
    std::uint64_t r = 0;   // ceil(2 * lambda_norm^2 * t^2 / n_a)

    // Reference term count of the unmodified scheme for target accuracy eps.
    std::uint64_t reference_term_count(double epsilon) const;
};

DriftBudget compute_budget(const CoefficientMatrix& coeffs, double t = 1.0);

// n_a i.i.d. (r,s) draws with Pr ~ |alpha_{r,s}| over non-identity entries.
std::vector<std::pair<std::uint64_t, std::uint64_t>>
sample_terms(const CoefficientMatrix& coeffs, std::uint64_t n_a, std::mt19937_64& rng);

struct EvolutionPlan {
    std::size_t q_total = 0;
    std::vector<std::pair<PauliTerm, double>> rotations; // (term, angle), in order
    std::uint64_t repetition_id = 0;
    std::uint64_t rng_seed = 0;
};

// Materializes sampled indices into rotations exp(-i * angle * P) with
// angle = sign(alpha) * lambda_abs * t / n_a. With parity_extension, each
// term gains an X on the appended parity qubit iff popcount(r) is odd,
// which preserves the even-parity code space.
EvolutionPlan build_plan(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& indices,
                         const DriftBudget& budget, const CoefficientMatrix& coeffs,
                         bool parity_extension);

PauliTerm extend_with_parity(const PauliTerm& term, std::size_t q);

// Audit dump, one rotation per line.
std::string format_plan(const EvolutionPlan& plan);

} // namespace subq
