#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "subq/determinants.hpp"
#include "subq/integrals.hpp"

namespace subq {

// Sparse symmetric real matrix stored as lower triplets (j <= i) at single
// precision. The core energy is carried alongside, never folded into the
// diagonal, so the stored spectrum is translation-free.
struct CIMatrix {
    struct Triplet {
        std::uint64_t i;
        std::uint64_t j; // j <= i
        float value;
    };

    std::uint64_t n = 0;
    std::vector<Triplet> entries;
    double core_energy = 0.0;

    double element(std::uint64_t i, std::uint64_t j) const; // O(entries) scan; test use only
};

// Builds the CI matrix over `basis` from the Slater-Condon rules. Entries
// with |value| <= drop_tol are omitted (drop_tol 0 keeps every nonzero-by-rule
// entry). Only pairs with excitation degree <= 2 are visited.
CIMatrix build_cim(const ConfigurationBasis& basis, const IntegralTable& integrals,
                   double drop_tol = 0.0);

// CIM1 binary format: magic "CIM1", u64 N, u64 triplet count, then
// (u64 i, u64 j, f32 value) triplets, little-endian, j <= i.
void save_matrix(const CIMatrix& m, const std::string& path);
CIMatrix load_matrix(const std::string& path);

} // namespace subq
