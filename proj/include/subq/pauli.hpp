#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "subq/ci_matrix.hpp"

namespace subq {

// One weighted Pauli string over q qubits. The represented operator is
// i^{phase_exp} X^r Z^s with phase_exp = popcount(r & s) mod 4, which is
// Hermitian for real coefficients.
struct PauliTerm {
    std::uint64_t r = 0; // X mask
    std::uint64_t s = 0; // Z mask
    double coefficient = 0.0;
    std::uint8_t phase_exp = 0;

    bool is_identity() const { return r == 0 && s == 0; }
};

PauliTerm make_pauli_term(std::uint64_t r, std::uint64_t s, double coefficient);

// Per-qubit letter of the term: 'I', 'X', 'Z' or 'Y'.
char pauli_letter(const PauliTerm& term, std::size_t qubit);

// Coefficients alpha_{r,s} of the Pauli expansion of a 2^q x 2^q real
// symmetric matrix, stored at single precision. Entries with odd
// popcount(r & s) vanish for symmetric real input; construction verifies
// this (|Im alpha| <= 1e-6 * max|alpha|) and stores zeros there.
struct CoefficientMatrix {
    std::size_t q = 0;
    Eigen::MatrixXf alpha; // indexed (r, s)
    float max_abs = 0.0f;  // over all entries
    float max_imag = 0.0f; // largest discarded imaginary magnitude

    double at(std::uint64_t r, std::uint64_t s) const {
        return static_cast<double>(alpha(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)));
    }
};

struct QubitHamiltonian {
    std::size_t q = 0;
    std::vector<PauliTerm> terms;

    double identity_coefficient() const;
};

// Zero-pads an N x N matrix to 2^q x 2^q with q = ceil(log2 N).
// Throws ResourceError when q exceeds max_qubits.
struct PaddedMatrix {
    std::size_t q = 0;
    Eigen::MatrixXf dense;
};
PaddedMatrix pad_dimension(const CIMatrix& cim, std::size_t max_qubits = 20);

std::size_t ceil_log2(std::uint64_t n);

// alpha_{r,s} = i^{-popcount(r&s)} / 2^q * sum_n h_{n^r,n} * Had[n,s],
// with Had the unnormalized +-1 Hadamard tensor power, computed as one
// in-place fast transform of length 2^q per row r.
CoefficientMatrix fwht_coefficients(const Eigen::MatrixXf& padded, std::size_t q);

// Counts in-place fast transforms performed by fwht_coefficients since the
// last reset; exposes the one-transform-per-row cost contract to tests.
std::uint64_t fwht_transform_count();
void reset_fwht_transform_count();

// Full decomposition: every (r,s) with |alpha| > threshold becomes a term.
// The identity term is kept (flagged via PauliTerm::is_identity).
QubitHamiltonian decompose(const CIMatrix& cim, double threshold = 1e-12,
                           std::size_t max_qubits = 20);

// Verification oracle: assembles sum coefficient * matrix(P_{r,s}) densely.
// Restricted to q <= 12.
Eigen::MatrixXd reconstruct(const QubitHamiltonian& h);

} // namespace subq
