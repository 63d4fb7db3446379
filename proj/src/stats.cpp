#include "subq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subq/errors.hpp"

namespace subq {

ProbabilityVector ProbabilityVector::from_counts(const std::vector<std::uint64_t>& counts) {
    const double total = static_cast<double>(
        std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    if (total <= 0.0) throw ValidationError("cannot normalize an empty count vector");
    ProbabilityVector p;
    p.probs.reserve(counts.size());
    for (std::uint64_t c : counts) p.probs.push_back(static_cast<double>(c) / total);
    return p;
}

void ProbabilityVector::validate() const {
    double sum = 0.0;
    for (double x : probs) {
        if (x < 0.0) throw ValidationError("probability vector has a negative entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("probability vector does not sum to 1");
}

namespace {

void check_dimensions(const ProbabilityVector& p, const ProbabilityVector& q) {
    if (p.probs.size() != q.probs.size())
        throw ValidationError("probability vectors have different dimensions");
    if (p.probs.empty()) throw ValidationError("probability vectors are empty");
}

} // namespace

double cosine_similarity(const ProbabilityVector& p, const ProbabilityVector& q) {
    check_dimensions(p, q);
    double dot = 0.0, np = 0.0, nq = 0.0;
    for (std::size_t k = 0; k < p.probs.size(); ++k) {
        dot += p.probs[k] * q.probs[k];
        np += p.probs[k] * p.probs[k];
        nq += q.probs[k] * q.probs[k];
    }
    if (np == 0.0 || nq == 0.0) throw ValidationError("cosine distance of a zero vector");
    return 1.0 - dot / (std::sqrt(np) * std::sqrt(nq));
}

double kolmogorov_q(double x) {
    if (x <= 0.0) return 1.0;
    // 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2); converges fast for x > ~0.2
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_statistic(const ProbabilityVector& p, const ProbabilityVector& q, double m_effective,
                      double n_effective) {
    check_dimensions(p, q);
    KsResult result;
    for (std::size_t k = 0; k < p.probs.size(); ++k)
        result.d = std::max(result.d, std::abs(p.probs[k] - q.probs[k]));
    if (m_effective > 0.0 && n_effective > 0.0) {
        const double en = std::sqrt(m_effective * n_effective / (m_effective + n_effective));
        result.p_value = kolmogorov_q(en * result.d);
    }
    return result;
}

double total_variation(const ProbabilityVector& p, const ProbabilityVector& q) {
    check_dimensions(p, q);
    double sum = 0.0;
    for (std::size_t k = 0; k < p.probs.size(); ++k) sum += std::abs(p.probs[k] - q.probs[k]);
    return 0.5 * sum;
}

} // namespace subq
