#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "subq/counts.hpp"
#include "subq/pauli.hpp"
#include "subq/qdrift.hpp"

namespace subq {

// Dense double-precision statevector over q_total qubits. Bit 0 of a state
// index is the least significant index bit; the parity qubit, when used,
// occupies the top bit.
struct StateVector {
    std::size_t q_total = 0;
    std::vector<std::complex<double>> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
};

StateVector init_basis_state(std::uint64_t index, std::size_t q_total);

// state <- cos(angle) * state - i sin(angle) * (P * state), in place.
void apply_pauli_rotation(StateVector& state, const PauliTerm& term, double angle);

void evolve(StateVector& state, const EvolutionPlan& plan);

// <state| sum_j c_j P_j |state>.
std::complex<double> expectation(const StateVector& state, const std::vector<PauliTerm>& terms);

// exp(-iHt)|init> via dense symmetric eigendecomposition; dimension <= 2^12.
StateVector exact_evolve(const Eigen::MatrixXd& hamiltonian, double t, std::uint64_t initial_index);

// Multinomial sampling from |amplitude|^2.
BitstringCounts sample(const StateVector& state, std::uint64_t shots, std::mt19937_64& rng);

struct NoiseSpec {
    double readout_flip_prob = 0.0;
};

// Independently flips each bit of each recorded shot with the given
// probability.
BitstringCounts apply_readout_noise(const BitstringCounts& counts, const NoiseSpec& noise,
                                    std::mt19937_64& rng);

} // namespace subq
