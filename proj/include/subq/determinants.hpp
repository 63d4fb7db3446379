#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace subq {

// A Slater determinant as per-spin orbital occupation bitmasks.
// Bit p of alpha_mask is the alpha spin-orbital of spatial orbital p.
struct Determinant {
    std::uint64_t alpha_mask = 0;
    std::uint64_t beta_mask = 0;

    bool operator==(const Determinant&) const = default;
};

// All determinants with fixed (n_alpha, n_beta) in n_orb spatial orbitals,
// ordered lexicographically by (alpha_mask, beta_mask). The aufbau
// (lowest-orbital-filled) determinant is the lexicographic minimum, so the
// Hartree-Fock reference sits at index 0 by construction.
class ConfigurationBasis {
  public:
    ConfigurationBasis(std::size_t n_orb, std::size_t n_alpha, std::size_t n_beta);

    std::size_t size() const { return determinants_.size(); }
    std::size_t n_orb() const { return n_orb_; }
    std::size_t n_alpha() const { return n_alpha_; }
    std::size_t n_beta() const { return n_beta_; }
    std::size_t hf_index() const { return 0; }

    const Determinant& operator[](std::size_t i) const { return determinants_[i]; }
    const std::vector<Determinant>& determinants() const { return determinants_; }

    // Index of `det`, or npos if it is not a member of this basis.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t index_of(const Determinant& det) const;

  private:
    std::size_t n_orb_;
    std::size_t n_alpha_;
    std::size_t n_beta_;
    std::vector<Determinant> determinants_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

ConfigurationBasis enumerate_determinants(std::size_t n_orb, std::size_t n_alpha,
                                          std::size_t n_beta);

} // namespace subq
