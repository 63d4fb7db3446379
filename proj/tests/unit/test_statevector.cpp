#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "subq/errors.hpp"
#include "subq/pauli.hpp"
#include "subq/rng.hpp"
#include "subq/statevector.hpp"

using namespace subq;

namespace {

double fidelity(const StateVector& a, const StateVector& b) {
    std::complex<double> overlap = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k)
        overlap += std::conj(a.amplitudes[k]) * b.amplitudes[k];
    return std::norm(overlap);
}

} // namespace

TEST_CASE("basis state initialization") {
    const auto zero = init_basis_state(0, 3);
    CHECK(zero.amplitudes[0] == std::complex<double>(1.0, 0.0));
    CHECK(zero.norm() == doctest::Approx(1.0));

    const auto five = init_basis_state(5, 3);
    CHECK(five.amplitudes[5] == std::complex<double>(1.0, 0.0));
    for (std::size_t k = 0; k < 8; ++k)
        if (k != 5) CHECK(std::abs(five.amplitudes[k]) == 0.0);

    CHECK_THROWS_AS(init_basis_state(8, 3), ValidationError);
}

TEST_CASE("zero-angle rotation is the identity") {
    auto state = init_basis_state(2, 2);
    apply_pauli_rotation(state, make_pauli_term(0b11, 0b01, 1.0), 0.0);
    CHECK(state.amplitudes[2] == std::complex<double>(1.0, 0.0));
}

TEST_CASE("X half rotation maps |0> to -i|1>") {
    auto state = init_basis_state(0, 1);
    apply_pauli_rotation(state, make_pauli_term(1, 0, 1.0), M_PI / 2.0);
    CHECK(std::abs(state.amplitudes[0]) < 1e-15);
    CHECK(state.amplitudes[1].real() == doctest::Approx(0.0));
    CHECK(state.amplitudes[1].imag() == doctest::Approx(-1.0));
}

TEST_CASE("Z rotation phases |0>") {
    const double theta = 0.37;
    auto state = init_basis_state(0, 1);
    apply_pauli_rotation(state, make_pauli_term(0, 1, 1.0), theta);
    CHECK(state.amplitudes[0].real() == doctest::Approx(std::cos(theta)));
    CHECK(state.amplitudes[0].imag() == doctest::Approx(-std::sin(theta)));
}

TEST_CASE("norm is preserved across many random rotations") {
    auto rng = substream(77, 0);
    auto state = init_basis_state(0, 5);
    for (int k = 0; k < 10000; ++k) {
        const std::uint64_t r = uniform_below(rng, 32);
        const std::uint64_t s = uniform_below(rng, 32);
        const double angle = 4.0 * (uniform_double(rng) - 0.5);
        apply_pauli_rotation(state, make_pauli_term(r, s, 1.0), angle);
    }
    CHECK(std::abs(state.norm() - 1.0) <= 1e-10);
}

TEST_CASE("rotation followed by its inverse restores the state") {
    auto rng = substream(78, 0);
    auto state = init_basis_state(0, 4);
    // randomize the state a bit first
    for (int k = 0; k < 20; ++k)
        apply_pauli_rotation(state,
                             make_pauli_term(uniform_below(rng, 16), uniform_below(rng, 16), 1.0),
                             uniform_double(rng));
    const StateVector before = state;
    const auto term = make_pauli_term(0b1010, 0b0110, 1.0);
    apply_pauli_rotation(state, term, 0.81);
    apply_pauli_rotation(state, term, -0.81);
    CHECK(fidelity(before, state) >= 1.0 - 1e-12);
}

TEST_CASE("evolve applies rotations in order") {
    EvolutionPlan empty;
    empty.q_total = 2;
    auto state = init_basis_state(1, 2);
    evolve(state, empty);
    CHECK(state.amplitudes[1] == std::complex<double>(1.0, 0.0));

    // two Z rotations on the same qubit compose additively
    EvolutionPlan plan;
    plan.q_total = 1;
    plan.rotations = {{make_pauli_term(0, 1, 1.0), 0.3}, {make_pauli_term(0, 1, 1.0), 0.4}};
    auto a = init_basis_state(0, 1);
    evolve(a, plan);
    auto b = init_basis_state(0, 1);
    apply_pauli_rotation(b, make_pauli_term(0, 1, 1.0), 0.7);
    CHECK(fidelity(a, b) >= 1.0 - 1e-14);

    EvolutionPlan mismatched;
    mismatched.q_total = 3;
    auto narrow = init_basis_state(0, 2);
    CHECK_THROWS_AS(evolve(narrow, mismatched), ValidationError);
}

TEST_CASE("exact evolution basics") {
    const auto dense = test::random_symmetric(8, 400).cast<double>().eval();
    const Eigen::MatrixXd h = (dense + dense.transpose()) / 2.0;

    const auto frozen = exact_evolve(h, 0.0, 3);
    CHECK(std::abs(frozen.amplitudes[3] - std::complex<double>(1.0, 0.0)) < 1e-12);

    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(4, 4);
    diag.diagonal() << 0.5, -1.0, 2.0, 0.0;
    const double t = 0.9;
    for (std::uint64_t k = 0; k < 4; ++k) {
        const auto evolved = exact_evolve(diag, t, k);
        const std::complex<double> expected = std::exp(std::complex<double>(0, -diag(k, k) * t));
        CHECK(std::abs(evolved.amplitudes[k] - expected) < 1e-12);
    }

    const auto unitary = exact_evolve(h, 2.7, 0);
    CHECK(std::abs(unitary.norm() - 1.0) <= 1e-10);
}

TEST_CASE("sampling a basis state is deterministic") {
    const auto state = init_basis_state(5, 3);
    auto rng = substream(5, 0);
    const auto counts = sample(state, 100, rng);
    REQUIRE(counts.counts.size() == 1);
    CHECK(counts.counts.at(5) == 100);
    CHECK(counts.shots_total == 100);
}

TEST_CASE("sampling the uniform state stays within 3 sigma") {
    StateVector state;
    state.q_total = 2;
    state.amplitudes.assign(4, {0.5, 0.0});
    auto rng = substream(6, 0);
    const std::uint64_t shots = 100000;
    const auto counts = sample(state, shots, rng);
    std::uint64_t total = 0;
    const double expected = shots / 4.0;
    const double sigma = std::sqrt(shots * 0.25 * 0.75);
    for (std::uint64_t k = 0; k < 4; ++k) {
        const double observed = static_cast<double>(counts.counts.at(k));
        CHECK(std::abs(observed - expected) <= 3.0 * sigma);
        total += counts.counts.at(k);
    }
    CHECK(total == shots);
}

TEST_CASE("readout noise limits") {
    BitstringCounts counts;
    counts.q_total = 1;
    counts.add(0, 40);
    counts.add(1, 60);

    auto rng = substream(7, 0);
    const auto clean = apply_readout_noise(counts, {0.0}, rng);
    CHECK(clean.counts.at(0) == 40);
    CHECK(clean.counts.at(1) == 60);

    const auto inverted = apply_readout_noise(counts, {1.0}, rng);
    CHECK(inverted.counts.at(0) == 60);
    CHECK(inverted.counts.at(1) == 40);

    CHECK_THROWS_AS(apply_readout_noise(counts, {1.5}, rng), ValidationError);
}

TEST_CASE("flip fraction matches the binomial expectation") {
    const std::size_t q = 14;
    const double p = 0.01;
    BitstringCounts counts;
    counts.q_total = q;
    const std::uint64_t shots = 50000;
    counts.add(0, shots);

    auto rng = substream(8, 0);
    const auto noisy = apply_readout_noise(counts, {p}, rng);
    const std::uint64_t unchanged = noisy.counts.count(0) ? noisy.counts.at(0) : 0;
    const double p_any = 1.0 - std::pow(1.0 - p, static_cast<double>(q));
    const double expected = shots * p_any;
    const double sigma = std::sqrt(shots * p_any * (1.0 - p_any));
    CHECK(std::abs(static_cast<double>(shots - unchanged) - expected) <= 3.0 * sigma);
}

TEST_CASE("energy expectation is real and ordering-invariant") {
    const auto dense = test::random_symmetric(16, 401);
    const auto cim = test::cim_from_dense(dense);
    auto h = decompose(cim);

    auto rng = substream(9, 0);
    auto state = init_basis_state(0, h.q);
    for (int k = 0; k < 30; ++k)
        apply_pauli_rotation(state,
                             make_pauli_term(uniform_below(rng, 16), uniform_below(rng, 16), 1.0),
                             uniform_double(rng));

    const auto forward = expectation(state, h.terms);
    CHECK(std::abs(forward.imag()) <= 1e-9);

    std::reverse(h.terms.begin(), h.terms.end());
    const auto backward = expectation(state, h.terms);
    CHECK(std::abs(forward.real() - backward.real()) <= 1e-12 * std::max(1.0, std::abs(forward.real())));

    // cross-check against the dense quadratic form
    Eigen::VectorXcd amp(16);
    for (int k = 0; k < 16; ++k) amp(k) = state.amplitudes[static_cast<std::size_t>(k)];
    const double dense_expectation =
        (amp.adjoint() * dense.cast<double>().cast<std::complex<double>>() * amp)(0).real();
    CHECK(forward.real() == doctest::Approx(dense_expectation).epsilon(1e-5));
}
