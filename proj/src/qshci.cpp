#include "subq/qshci.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "subq/errors.hpp"

namespace subq {

namespace {

// Shared growth loop. accept(k, best_coupling) decides whether candidate k
// joins the subspace given max_{i in S} |H_{ki} c_i|.
template <typename Candidates, typename Accept>
SelectiveCiResult grow_subspace(const ElementSource& source, std::uint64_t initial_index,
                                std::size_t max_iter, const char* tag,
                                const Candidates& candidate_pool, const Accept& accept) {
    const std::uint64_t n = source.n();
    if (initial_index >= n) throw ValidationError("initial index out of range");
    if (max_iter == 0) max_iter = n;

    SelectiveCiResult result;
    result.selection.source = tag;
    result.selection.indices = {initial_index};
    std::set<std::uint64_t> members = {initial_index};

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        const auto projected = project(source, result.selection);
        result.eigen = ground_state(projected);
        result.iterations = iter + 1;

        // candidates connected to the current subspace, with the strongest
        // |H_{ki} c_i| over members i
        std::map<std::uint64_t, double> best_coupling;
        for (std::size_t a = 0; a < result.selection.indices.size(); ++a) {
            const std::uint64_t i = result.selection.indices[a];
            const double ci = result.eigen.eigenvector(static_cast<Eigen::Index>(a));
            if (ci == 0.0) continue;
            for (std::uint64_t k : candidate_pool(i)) {
                if (members.count(k)) continue;
                const double weight = std::abs(source.element(k, i) * ci);
                auto [it, inserted] = best_coupling.try_emplace(k, weight);
                if (!inserted && weight > it->second) it->second = weight;
            }
        }

        std::vector<std::uint64_t> added;
        for (const auto& [k, weight] : best_coupling)
            if (accept(k, weight)) added.push_back(k);

        result.history.push_back({iter, result.selection.indices.size(), result.eigen.energy,
                                  added.size()});
        if (added.empty()) break;
        for (std::uint64_t k : added) {
            members.insert(k);
            result.selection.indices.push_back(k);
        }
    }
    return result;
}

} // namespace

SelectiveCiResult hci(const ElementSource& source, double epsilon, std::uint64_t initial_index,
                      std::size_t max_iter) {
    if (epsilon < 0.0) throw ValidationError("epsilon must be nonnegative");
    auto pool = [&source](std::uint64_t i) { return source.connected(i); };
    auto accept = [epsilon](std::uint64_t, double weight) { return weight > epsilon; };
    return grow_subspace(source, initial_index, max_iter, "hci", pool, accept);
}

SelectiveCiResult qshci(const ElementSource& source,
                        const std::map<std::uint64_t, double>& probabilities, double v,
                        std::uint64_t initial_index, std::size_t max_iter) {
    if (v <= 0.0) throw ValidationError("variance factor must be positive");
    if (probabilities.empty()) throw ValidationError("sampled support is empty");
    for (const auto& [k, p] : probabilities) {
        if (p < 0.0) throw ValidationError("negative sampled probability");
        if (k >= source.n()) throw ValidationError("sampled index out of range");
    }

    // candidates restricted to the sampled support
    std::vector<std::uint64_t> support;
    for (const auto& [k, p] : probabilities)
        if (p > 0.0) support.push_back(k);
    if (support.empty()) throw ValidationError("sampled support is empty");

    auto pool = [&support](std::uint64_t) -> const std::vector<std::uint64_t>& { return support; };
    auto accept = [&probabilities, v](std::uint64_t k, double weight) {
        return weight > std::sqrt(probabilities.at(k)) / v;
    };
    return grow_subspace(source, initial_index, max_iter, "qshci", pool, accept);
}

std::map<std::uint64_t, double>
probabilities_from_counts(const std::map<std::uint64_t, std::uint64_t>& valid_counts) {
    double total = 0.0;
    for (const auto& [index, count] : valid_counts) total += static_cast<double>(count);
    if (total <= 0.0) throw ValidationError("no retained shots to normalize");
    std::map<std::uint64_t, double> probs;
    for (const auto& [index, count] : valid_counts)
        if (count > 0) probs[index] = static_cast<double>(count) / total;
    return probs;
}

} // namespace subq
