#include "subq/determinants.hpp"

#include <string>

#include "subq/errors.hpp"

namespace subq {

namespace {

std::uint64_t pack(const Determinant& det) {
    return (det.alpha_mask << 32) | det.beta_mask;
}

// All n_bits-wide masks with `count` bits set, ascending. The smallest is
// the lowest-bits-filled (aufbau) mask.
std::vector<std::uint64_t> masks_with_popcount(std::size_t n_bits, std::size_t count) {
    std::vector<std::uint64_t> out;
    if (count == 0) {
        out.push_back(0);
        return out;
    }
    std::uint64_t mask = (std::uint64_t{1} << count) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n_bits;
    while (mask < limit) {
        out.push_back(mask);
        // Gosper's hack: next mask with the same popcount.
        std::uint64_t c = mask & (~mask + 1);
        std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return out;
}

} // namespace

ConfigurationBasis::ConfigurationBasis(std::size_t n_orb, std::size_t n_alpha, std::size_t n_beta)
    : n_orb_(n_orb), n_alpha_(n_alpha), n_beta_(n_beta) {
    if (n_orb == 0 || n_orb > 32)
        throw ValidationError("orbital count must be in [1, 32], got " + std::to_string(n_orb));
    if (n_alpha > n_orb || n_beta > n_orb)
        throw ValidationError("electron counts (" + std::to_string(n_alpha) + "," +
                              std::to_string(n_beta) + ") exceed orbital count " +
                              std::to_string(n_orb));

    const auto alphas = masks_with_popcount(n_orb, n_alpha);
    const auto betas = masks_with_popcount(n_orb, n_beta);
    determinants_.reserve(alphas.size() * betas.size());
    for (std::uint64_t a : alphas)
        for (std::uint64_t b : betas) determinants_.push_back({a, b});

    index_.reserve(determinants_.size());
    for (std::size_t i = 0; i < determinants_.size(); ++i) index_[pack(determinants_[i])] = i;
}

std::size_t ConfigurationBasis::index_of(const Determinant& det) const {
    auto it = index_.find(pack(det));
    return it == index_.end() ? npos : it->second;
}

ConfigurationBasis enumerate_determinants(std::size_t n_orb, std::size_t n_alpha,
                                          std::size_t n_beta) {
    return ConfigurationBasis(n_orb, n_alpha, n_beta);
}

} // namespace subq
