#pragma once

#include <cstdint>
#include <vector>

namespace subq {

// Nonnegative probability vector; sums to 1 within 1e-9.
struct ProbabilityVector {
    std::vector<double> probs;

    static ProbabilityVector from_counts(const std::vector<std::uint64_t>& counts);
    void validate() const;
};

// Cosine distance delta = 1 - p.q / (|p| |q|); 0 means identical direction,
// 1 means orthogonal.
double cosine_similarity(const ProbabilityVector& p, const ProbabilityVector& q);

// Elementwise statistic D = max_i |p_i - q_i| with an asymptotic two-sample
// p-value Q_KS(sqrt(m n / (m + n)) * D), where m and n are the effective
// sample sizes (shot counts) supplied by the caller. Note this D is the
// elementwise form, not the conventional CDF-based statistic.
struct KsResult {
    double d = 0.0;
    double p_value = 1.0;
};
KsResult ks_statistic(const ProbabilityVector& p, const ProbabilityVector& q,
                      double m_effective, double n_effective);

// Kolmogorov survival function Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_q(double x);

double total_variation(const ProbabilityVector& p, const ProbabilityVector& q);

} // namespace subq
