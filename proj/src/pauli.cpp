#include "subq/pauli.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "subq/errors.hpp"

namespace subq {

namespace {

std::atomic<std::uint64_t> g_fwht_transforms{0};

// Unnormalized in-place Walsh-Hadamard butterfly, length 2^q.
void fwht_inplace(std::vector<double>& data) {
    const std::size_t n = data.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double x = data[j];
                const double y = data[j + h];
                data[j] = x + y;
                data[j + h] = x - y;
            }
        }
    }
    g_fwht_transforms.fetch_add(1, std::memory_order_relaxed);
}

} // namespace

std::uint64_t fwht_transform_count() { return g_fwht_transforms.load(); }
void reset_fwht_transform_count() { g_fwht_transforms.store(0); }

PauliTerm make_pauli_term(std::uint64_t r, std::uint64_t s, double coefficient) {
    PauliTerm term;
    term.r = r;
    term.s = s;
    term.coefficient = coefficient;
    term.phase_exp = static_cast<std::uint8_t>(std::popcount(r & s) & 3);
    return term;
}

char pauli_letter(const PauliTerm& term, std::size_t qubit) {
    const bool x = (term.r >> qubit) & 1;
    const bool z = (term.s >> qubit) & 1;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

std::size_t ceil_log2(std::uint64_t n) {
    std::size_t q = 0;
    while ((std::uint64_t{1} << q) < n) ++q;
    return q;
}

double QubitHamiltonian::identity_coefficient() const {
    for (const auto& t : terms)
        if (t.is_identity()) return t.coefficient;
    return 0.0;
}

PaddedMatrix pad_dimension(const CIMatrix& cim, std::size_t max_qubits) {
    if (cim.n == 0) throw ValidationError("matrix dimension must be positive");
    const std::size_t q = ceil_log2(cim.n);
    if (q > max_qubits)
        throw ResourceError("padded dimension needs " + std::to_string(q) + " qubits, limit is " +
                            std::to_string(max_qubits));
    const std::size_t dim = std::size_t{1} << q;
    PaddedMatrix padded;
    padded.q = q;
    padded.dense = Eigen::MatrixXf::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto& t : cim.entries) {
        padded.dense(static_cast<Eigen::Index>(t.i), static_cast<Eigen::Index>(t.j)) = t.value;
        padded.dense(static_cast<Eigen::Index>(t.j), static_cast<Eigen::Index>(t.i)) = t.value;
    }
    return padded;
}

CoefficientMatrix fwht_coefficients(const Eigen::MatrixXf& padded, std::size_t q) {
    const std::size_t dim = std::size_t{1} << q;
    if (static_cast<std::size_t>(padded.rows()) != dim ||
        static_cast<std::size_t>(padded.cols()) != dim)
        throw ValidationError("matrix dimension is not 2^q");

    CoefficientMatrix coeffs;
    coeffs.q = q;
    coeffs.alpha = Eigen::MatrixXf::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const double scale = 1.0 / static_cast<double>(dim);

    float max_abs = 0.0f;
    float max_imag = 0.0f;
#pragma omp parallel
    {
        std::vector<double> row(dim);
        float local_abs = 0.0f;
        float local_imag = 0.0f;
#pragma omp for schedule(dynamic)
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t n = 0; n < dim; ++n)
                row[n] = static_cast<double>(
                    padded(static_cast<Eigen::Index>(n ^ r), static_cast<Eigen::Index>(n)));
            fwht_inplace(row);
            for (std::size_t s = 0; s < dim; ++s) {
                const int pe = std::popcount(r & s) & 3;
                const double value = row[s] * scale;
                if (pe & 1) {
                    // i^{-pe} is imaginary; must vanish for symmetric real input
                    local_imag = std::max(local_imag, static_cast<float>(std::abs(value)));
                } else {
                    const double signed_value = (pe == 2) ? -value : value;
                    coeffs.alpha(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) =
                        static_cast<float>(signed_value);
                    local_abs = std::max(local_abs, static_cast<float>(std::abs(signed_value)));
                }
            }
        }
#pragma omp critical
        {
            max_abs = std::max(max_abs, local_abs);
            max_imag = std::max(max_imag, local_imag);
        }
    }
    coeffs.max_abs = max_abs;
    coeffs.max_imag = max_imag;

    if (max_imag > 1e-6f * std::max(max_abs, max_imag))
        throw ValidationError("Pauli coefficients have a nonvanishing imaginary part; "
                              "input matrix is not real symmetric");
    return coeffs;
}

QubitHamiltonian decompose(const CIMatrix& cim, double threshold, std::size_t max_qubits) {
    const auto padded = pad_dimension(cim, max_qubits);
    const auto coeffs = fwht_coefficients(padded.dense, padded.q);

    QubitHamiltonian h;
    h.q = padded.q;
    const std::size_t dim = std::size_t{1} << padded.q;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t s = 0; s < dim; ++s) {
            const double a = coeffs.at(r, s);
            if (r == 0 && s == 0) {
                h.terms.push_back(make_pauli_term(0, 0, a)); // identity, kept but flagged
                continue;
            }
            if (std::abs(a) > threshold) h.terms.push_back(make_pauli_term(r, s, a));
        }
    return h;
}

Eigen::MatrixXd reconstruct(const QubitHamiltonian& h) {
    if (h.q > 12) throw ResourceError("reconstruction oracle limited to q <= 12");
    const std::size_t dim = std::size_t{1} << h.q;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    for (const auto& term : h.terms) {
        if (term.phase_exp & 1)
            throw ValidationError("term with odd Y-count is not real-representable");
        const double phase = (term.phase_exp == 2) ? -1.0 : 1.0;
        for (std::size_t n = 0; n < dim; ++n) {
            const double z = (std::popcount(n & term.s) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(n ^ term.r), static_cast<Eigen::Index>(n)) +=
                term.coefficient * phase * z;
        }
    }
    return m;
}

} // namespace subq
