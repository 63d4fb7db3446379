#include "subq/qdrift.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <string>

#include "subq/errors.hpp"
#include "subq/rng.hpp"

namespace subq {

std::uint64_t DriftBudget::reference_term_count(double epsilon) const {
    if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
    return static_cast<std::uint64_t>(std::ceil(2.0 * lambda_norm * lambda_norm * t * t / epsilon));
}

DriftBudget compute_budget(const CoefficientMatrix& coeffs, double t) {
    const std::size_t dim = std::size_t{1} << coeffs.q;

    // identity (r = s = 0) excluded from the strength sums and the max
    double max_abs = 0.0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t s = 0; s < dim; ++s) {
            if (r == 0 && s == 0) continue;
            max_abs = std::max(max_abs, std::abs(coeffs.at(r, s)));
        }
    if (max_abs == 0.0)
        throw ValidationError("Hamiltonian has no non-identity terms to evolve");

    DriftBudget budget;
    budget.t = t;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t s = 0; s < dim; ++s) {
            if (r == 0 && s == 0) continue;
            const double a = std::abs(coeffs.at(r, s));
            budget.lambda_abs += a;
            budget.lambda_norm += a / max_abs;
        }
    budget.n_a = static_cast<std::uint64_t>(std::ceil(2.0 * budget.lambda_norm * t * t));
    budget.n_a = std::max<std::uint64_t>(budget.n_a, 1);
    budget.r = static_cast<std::uint64_t>(
        std::ceil(2.0 * budget.lambda_norm * budget.lambda_norm * t * t /
                  static_cast<double>(budget.n_a)));
    budget.r = std::max<std::uint64_t>(budget.r, 1);
    return budget;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>>
sample_terms(const CoefficientMatrix& coeffs, std::uint64_t n_a, std::mt19937_64& rng) {
    if (n_a == 0) throw ValidationError("term count must be positive");
    const std::size_t dim = std::size_t{1} << coeffs.q;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> support;
    std::vector<double> cumulative;
    double acc = 0.0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t s = 0; s < dim; ++s) {
            if (r == 0 && s == 0) continue;
            const double a = std::abs(coeffs.at(r, s));
            if (a == 0.0) continue;
            support.emplace_back(r, s);
            acc += a;
            cumulative.push_back(acc);
        }
    if (support.empty())
        throw ValidationError("Hamiltonian has no non-identity terms to sample");

    std::vector<std::pair<std::uint64_t, std::uint64_t>> draws;
    draws.reserve(n_a);
    for (std::uint64_t k = 0; k < n_a; ++k) {
        const double u = uniform_double(rng) * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t pick =
            std::min(static_cast<std::size_t>(it - cumulative.begin()), support.size() - 1);
        draws.push_back(support[pick]);
    }
    return draws;
}

PauliTerm extend_with_parity(const PauliTerm& term, std::size_t q) {
    PauliTerm extended = term;
    if (std::popcount(term.r) & 1) extended.r |= std::uint64_t{1} << q;
    // phase_exp is unchanged: the parity qubit never carries Z
    return extended;
}

EvolutionPlan build_plan(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& indices,
                         const DriftBudget& budget, const CoefficientMatrix& coeffs,
                         bool parity_extension) {
    if (budget.n_a == 0) throw ValidationError("budget has no rotations");
    EvolutionPlan plan;
    plan.q_total = coeffs.q + (parity_extension ? 1 : 0);
    plan.rotations.reserve(indices.size());
    const double magnitude = budget.lambda_abs * budget.t / static_cast<double>(budget.n_a);
    for (const auto& [r, s] : indices) {
        const double a = coeffs.at(r, s);
        PauliTerm term = make_pauli_term(r, s, a);
        if (parity_extension) term = extend_with_parity(term, coeffs.q);
        const double angle = (a < 0.0 ? -1.0 : 1.0) * magnitude;
        plan.rotations.emplace_back(term, angle);
    }
    return plan;
}

std::string format_plan(const EvolutionPlan& plan) {
    std::string out = "repetition " + std::to_string(plan.repetition_id) + " seed " +
                      std::to_string(plan.rng_seed) + " rotations " +
                      std::to_string(plan.rotations.size()) + "\n";
    char line[128];
    for (const auto& [term, angle] : plan.rotations) {
        std::snprintf(line, sizeof(line), "r=%llx s=%llx angle=%.17g\n",
                      static_cast<unsigned long long>(term.r),
                      static_cast<unsigned long long>(term.s), angle);
        out += line;
    }
    return out;
}

} // namespace subq
