#include "subq/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "subq/errors.hpp"
#include "subq/rng.hpp"

namespace subq {

namespace {

// i^k for k in [0,3]
std::complex<double> imag_power(unsigned k) {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

StateVector init_basis_state(std::uint64_t index, std::size_t q_total) {
    const std::size_t dim = std::size_t{1} << q_total;
    if (index >= dim)
        throw ValidationError("basis index " + std::to_string(index) + " overflows " +
                              std::to_string(q_total) + " qubits");
    StateVector state;
    state.q_total = q_total;
    state.amplitudes.assign(dim, {0.0, 0.0});
    state.amplitudes[index] = {1.0, 0.0};
    return state;
}

void apply_pauli_rotation(StateVector& state, const PauliTerm& term, double angle) {
    const std::size_t dim = state.dim();
    if ((term.r | term.s) >= dim)
        throw ValidationError("Pauli masks exceed the register width");

    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const std::complex<double> phase = imag_power(term.phase_exp);
    auto& amp = state.amplitudes;

    if (term.r == 0) {
        // diagonal: amp[n] *= c - i s * (-1)^{popcount(n & s)}
        const std::complex<double> even(c, -s);
        const std::complex<double> odd(c, s);
#pragma omp parallel for schedule(static)
        for (std::size_t n = 0; n < dim; ++n)
            amp[n] *= (std::popcount(n & term.s) & 1) ? odd : even;
        return;
    }

    // Pair n with n ^ r; P|n> = i^{pe} (-1)^{popcount(n & s)} |n ^ r>.
#pragma omp parallel for schedule(static)
    for (std::size_t n = 0; n < dim; ++n) {
        const std::size_t m = n ^ term.r;
        if (m < n) continue; // each pair once
        const double zn = (std::popcount(n & term.s) & 1) ? -1.0 : 1.0;
        const double zm = (std::popcount(m & term.s) & 1) ? -1.0 : 1.0;
        const std::complex<double> an = amp[n];
        const std::complex<double> am = amp[m];
        const std::complex<double> i_s_phase = std::complex<double>(0.0, -s) * phase;
        amp[n] = c * an + i_s_phase * zm * am;
        amp[m] = c * am + i_s_phase * zn * an;
    }
}

void evolve(StateVector& state, const EvolutionPlan& plan) {
    if (plan.q_total != state.q_total)
        throw ValidationError("plan and state disagree on qubit count");
    for (const auto& [term, angle] : plan.rotations) apply_pauli_rotation(state, term, angle);
}

std::complex<double> expectation(const StateVector& state, const std::vector<PauliTerm>& terms) {
    std::complex<double> total = 0.0;
    const auto& amp = state.amplitudes;
    for (const auto& term : terms) {
        const std::complex<double> phase = imag_power(term.phase_exp);
        std::complex<double> acc = 0.0;
        for (std::size_t n = 0; n < amp.size(); ++n) {
            const double z = (std::popcount(n & term.s) & 1) ? -1.0 : 1.0;
            acc += std::conj(amp[n ^ term.r]) * phase * z * amp[n];
        }
        total += term.coefficient * acc;
    }
    return total;
}

StateVector exact_evolve(const Eigen::MatrixXd& hamiltonian, double t, std::uint64_t initial_index) {
    const Eigen::Index dim = hamiltonian.rows();
    if (dim > (1 << 12)) throw ResourceError("exact evolution oracle limited to dimension 4096");
    if (hamiltonian.cols() != dim) throw ValidationError("Hamiltonian must be square");
    if (initial_index >= static_cast<std::uint64_t>(dim))
        throw ValidationError("initial index out of range");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const Eigen::MatrixXd& vecs = solver.eigenvectors();

    // exp(-iHt) e_k = V exp(-i diag t) V^T e_k
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        phases(k) = std::exp(std::complex<double>(0.0, -evals(k) * t));
    const Eigen::VectorXd overlap = vecs.row(static_cast<Eigen::Index>(initial_index)).transpose();
    const Eigen::VectorXcd result = vecs * phases.cwiseProduct(overlap.cast<std::complex<double>>());

    StateVector state;
    state.q_total = ceil_log2(static_cast<std::uint64_t>(dim));
    if ((std::size_t{1} << state.q_total) != static_cast<std::size_t>(dim))
        throw ValidationError("exact evolution needs a power-of-two dimension");
    state.amplitudes.assign(result.data(), result.data() + dim);
    return state;
}

BitstringCounts sample(const StateVector& state, std::uint64_t shots, std::mt19937_64& rng) {
    if (shots == 0) throw ValidationError("shot count must be positive");
    const std::size_t dim = state.dim();
    std::vector<double> cumulative(dim);
    double acc = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
        acc += std::norm(state.amplitudes[n]);
        cumulative[n] = acc;
    }

    BitstringCounts counts;
    counts.q_total = state.q_total;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = uniform_double(rng) * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t outcome =
            std::min(static_cast<std::size_t>(it - cumulative.begin()), dim - 1);
        counts.add(outcome);
    }
    return counts;
}

BitstringCounts apply_readout_noise(const BitstringCounts& counts, const NoiseSpec& noise,
                                    std::mt19937_64& rng) {
    const double p = noise.readout_flip_prob;
    if (p < 0.0 || p > 1.0) throw ValidationError("flip probability must lie in [0, 1]");

    BitstringCounts noisy;
    noisy.q_total = counts.q_total;
    for (const auto& [outcome, count] : counts.counts) {
        for (std::uint64_t shot = 0; shot < count; ++shot) {
            std::uint64_t flipped = outcome;
            for (std::size_t bit = 0; bit < counts.q_total; ++bit)
                if (uniform_double(rng) < p) flipped ^= std::uint64_t{1} << bit;
            noisy.add(flipped);
        }
    }
    return noisy;
}

} // namespace subq
