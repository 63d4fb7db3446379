#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "subq/subspace.hpp"

namespace subq {

struct SelectiveCiResult {
    EigenResult eigen;
    SubspaceSelection selection;
    std::size_t iterations = 0;
    struct IterationRow {
        std::size_t iter;
        std::size_t subspace_size;
        double energy;
        std::size_t added_count;
    };
    std::vector<IterationRow> history;
};

// Classical heat-bath CI: grow the subspace from {initial_index}, adding
// every candidate k with max_{i in S} |H_{ki} c_i| > epsilon, re-solving
// once per sweep, until no additions.
SelectiveCiResult hci(const ElementSource& source, double epsilon,
                      std::uint64_t initial_index = 0, std::size_t max_iter = 0);

// Quantum-informed variant: candidates are restricted to the sampled
// support (P_k > 0) and each candidate uses the threshold sqrt(P_k) / v.
// `probabilities` are the mitigated valid counts normalized over the
// physical support.
SelectiveCiResult qshci(const ElementSource& source,
                        const std::map<std::uint64_t, double>& probabilities, double v,
                        std::uint64_t initial_index = 0, std::size_t max_iter = 0);

// Normalizes valid counts into a probability map over the sampled support.
std::map<std::uint64_t, double>
probabilities_from_counts(const std::map<std::uint64_t, std::uint64_t>& valid_counts);

} // namespace subq
