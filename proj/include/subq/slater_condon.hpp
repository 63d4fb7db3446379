#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "subq/determinants.hpp"
#include "subq/integrals.hpp"

namespace subq {

// Number of spin-orbital substitutions between two determinants.
std::size_t excitation_degree(const Determinant& a, const Determinant& b);

// Hamiltonian matrix element <det_i|H|det_j> from the Slater-Condon rules,
// in double precision, excluding the core energy. Elements between
// determinants differing in more than two spin-orbitals are zero. Signs
// follow the maximum-coincidence convention.
double slater_condon_element(const Determinant& det_i, const Determinant& det_j,
                             const IntegralTable& integrals);

// Determinants reachable from `det` by single and double substitutions
// holding (n_alpha, n_beta) fixed. These are the only determinants with a
// possibly nonzero coupling to `det`.
std::vector<Determinant> connected_determinants(const Determinant& det, std::size_t n_orb);

} // namespace subq
