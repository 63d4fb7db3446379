#include "subq/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "subq/errors.hpp"
#include "subq/rng.hpp"
#include "subq/slater_condon.hpp"

namespace subq {

// ---------------------------------------------------------------------------
// element sources

IntegralSource::IntegralSource(ConfigurationBasis basis, IntegralTable integrals)
    : basis_(std::move(basis)), integrals_(std::move(integrals)) {
    if (basis_.n_orb() != integrals_.n_orb())
        throw ValidationError("basis and integral table disagree on orbital count");
}

std::uint64_t IntegralSource::n() const { return basis_.size(); }

double IntegralSource::element(std::uint64_t i, std::uint64_t j) const {
    return slater_condon_element(basis_[i], basis_[j], integrals_);
}

std::vector<std::uint64_t> IntegralSource::connected(std::uint64_t i) const {
    std::vector<std::uint64_t> out;
    for (const auto& det : connected_determinants(basis_[i], basis_.n_orb())) {
        const std::size_t idx = basis_.index_of(det);
        if (idx != ConfigurationBasis::npos) out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double IntegralSource::core_energy() const { return integrals_.core_energy(); }

SparseMatrixSource::SparseMatrixSource(CIMatrix matrix) : matrix_(std::move(matrix)) {
    rows_.resize(matrix_.n);
    for (const auto& t : matrix_.entries) {
        rows_[t.i][t.j] = static_cast<double>(t.value);
        if (t.i != t.j) rows_[t.j][t.i] = static_cast<double>(t.value);
    }
}

std::uint64_t SparseMatrixSource::n() const { return matrix_.n; }

double SparseMatrixSource::element(std::uint64_t i, std::uint64_t j) const {
    const auto& row = rows_[i];
    const auto it = row.find(j);
    return it == row.end() ? 0.0 : it->second;
}

std::vector<std::uint64_t> SparseMatrixSource::connected(std::uint64_t i) const {
    std::vector<std::uint64_t> out;
    out.reserve(rows_[i].size());
    for (const auto& [j, value] : rows_[i])
        if (j != i) out.push_back(j);
    return out;
}

double SparseMatrixSource::core_energy() const { return matrix_.core_energy; }

// ---------------------------------------------------------------------------
// QSCI batch selection

SubspaceSelection select_qsci(const std::map<std::uint64_t, std::uint64_t>& valid_counts,
                              double fraction, std::uint64_t n_total, std::size_t n_batches,
                              std::uint64_t loop_seed) {
    if (valid_counts.empty()) throw ValidationError("no valid counts to select from");
    if (fraction <= 0.0 || fraction > 1.0)
        throw ValidationError("fraction must lie in (0, 1]");
    if (n_batches == 0) throw ValidationError("batch count must be positive");

    const std::size_t target =
        static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n_total)));

    std::vector<std::uint64_t> shots;
    for (const auto& [index, count] : valid_counts)
        shots.insert(shots.end(), count, index);

    // Fisher-Yates under the loop substream; std::shuffle is not portable.
    auto rng = substream(loop_seed, 0x71736369);
    for (std::size_t k = shots.size(); k > 1; --k)
        std::swap(shots[k - 1], shots[uniform_below(rng, k)]);

    SubspaceSelection selection;
    selection.source = "qsci-batch";
    std::vector<bool> chosen;

    const std::size_t total = shots.size();
    const std::size_t base = total / n_batches;
    const std::size_t extra = total % n_batches;
    std::size_t cursor = 0;
    for (std::size_t b = 0; b < n_batches && selection.indices.size() < target; ++b) {
        const std::size_t batch_size = base + (b < extra ? 1 : 0);
        std::map<std::uint64_t, std::uint64_t> freq;
        for (std::size_t k = 0; k < batch_size; ++k) freq[shots[cursor++]]++;

        std::vector<std::pair<std::uint64_t, std::uint64_t>> ranked(freq.begin(), freq.end());
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        for (const auto& [index, count] : ranked) {
            if (selection.indices.size() >= target) break;
            if (index >= chosen.size()) chosen.resize(index + 1, false);
            if (chosen[index]) continue;
            chosen[index] = true;
            selection.indices.push_back(index);
        }
    }
    return selection;
}

// ---------------------------------------------------------------------------
// projection and eigensolvers

Eigen::MatrixXd project(const ElementSource& source, const SubspaceSelection& selection) {
    const std::size_t m = selection.indices.size();
    if (m == 0) throw ValidationError("subspace selection is empty");
    for (std::uint64_t idx : selection.indices)
        if (idx >= source.n())
            throw ValidationError("selection index " + std::to_string(idx) + " out of range");

    Eigen::MatrixXd out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b <= a; ++b) {
            const double value = source.element(selection.indices[a], selection.indices[b]);
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = value;
            out(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = value;
        }
    return out;
}

EigenResult dense_lowest(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() == 0) throw ValidationError("matrix is empty");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
    EigenResult result;
    result.energy = solver.eigenvalues()(0);
    result.eigenvector = solver.eigenvectors().col(0);
    result.iterations = 0;
    result.residual_norm = (matrix * result.eigenvector - result.energy * result.eigenvector).norm();
    return result;
}

EigenResult lanczos_lowest(const Eigen::MatrixXd& matrix, double tol, std::size_t max_iter) {
    const Eigen::Index dim = matrix.rows();
    if (dim == 0) throw ValidationError("matrix is empty");
    if (dim == 1) {
        EigenResult r;
        r.energy = matrix(0, 0);
        r.eigenvector = Eigen::VectorXd::Ones(1);
        r.residual_norm = 0.0;
        return r;
    }
    if (max_iter == 0) max_iter = std::min<std::size_t>(static_cast<std::size_t>(dim), 300);

    auto rng = substream(0x4c414e435a, 0);
    auto random_unit = [&]() {
        Eigen::VectorXd v(dim);
        for (Eigen::Index k = 0; k < dim; ++k) v(k) = uniform_double(rng) - 0.5;
        v.normalize();
        return v;
    };

    std::vector<Eigen::VectorXd> basis;
    basis.push_back(random_unit());
    std::vector<double> alphas, betas;
    double best_residual = std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < max_iter; ++k) {
        const Eigen::VectorXd& vk = basis[k];
        Eigen::VectorXd w = matrix.selfadjointView<Eigen::Lower>() * vk;
        const double alpha = vk.dot(w);
        alphas.push_back(alpha);
        w -= alpha * vk;
        if (k > 0) w -= betas[k - 1] * basis[k - 1];
        // full reorthogonalization, two passes
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& vj : basis) w -= vj.dot(w) * vj;
        double beta = w.norm();

        // Ritz pair of the current tridiagonal
        Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alphas.data(), static_cast<Eigen::Index>(alphas.size()));
        Eigen::VectorXd sub(std::max<std::size_t>(betas.size(), 1));
        for (std::size_t j = 0; j < betas.size(); ++j) sub(static_cast<Eigen::Index>(j)) = betas[j];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub.head(static_cast<Eigen::Index>(betas.size())));
        const double theta = tri.eigenvalues()(0);
        const Eigen::VectorXd y = tri.eigenvectors().col(0);
        const double estimate = beta * std::abs(y(static_cast<Eigen::Index>(k)));

        const bool exhausted = beta <= 1e-14 || alphas.size() == static_cast<std::size_t>(dim);
        if (estimate <= tol || exhausted) {
            Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
            for (std::size_t j = 0; j < basis.size(); ++j) x += y(static_cast<Eigen::Index>(j)) * basis[j];
            x.normalize();
            const double residual = (matrix.selfadjointView<Eigen::Lower>() * x - theta * x).norm();
            best_residual = std::min(best_residual, residual);
            if (residual <= tol) {
                EigenResult result;
                result.energy = theta;
                result.eigenvector = x;
                result.iterations = alphas.size();
                result.residual_norm = residual;
                return result;
            }
            if (alphas.size() == static_cast<std::size_t>(dim))
                throw ConvergenceError("Lanczos exhausted the full space without reaching tolerance",
                                       best_residual);
            if (beta <= 1e-14) {
                // invariant subspace; start a new block from a fresh direction
                Eigen::VectorXd fresh = random_unit();
                for (int pass = 0; pass < 2; ++pass)
                    for (const auto& vj : basis) fresh -= vj.dot(fresh) * vj;
                const double norm = fresh.norm();
                if (norm <= 1e-14)
                    throw ConvergenceError("Lanczos restart failed to find a new direction",
                                           best_residual);
                betas.push_back(0.0); // no coupling between blocks
                basis.push_back(fresh / norm);
                continue;
            }
        }
        betas.push_back(beta);
        basis.push_back(w / beta);
    }
    throw ConvergenceError("Lanczos did not converge in " + std::to_string(max_iter) +
                               " iterations",
                           best_residual);
}

EigenResult ground_state(const Eigen::MatrixXd& matrix, double tol, std::size_t max_iter,
                         std::size_t dense_cutoff) {
    if (matrix.rows() != matrix.cols()) throw ValidationError("matrix must be square");
    if (static_cast<std::size_t>(matrix.rows()) <= dense_cutoff) return dense_lowest(matrix);
    return lanczos_lowest(matrix, tol, max_iter);
}

// ---------------------------------------------------------------------------
// QSCI loop

QsciOutcome qsci_run(const std::map<std::uint64_t, std::uint64_t>& valid_counts,
                     const ElementSource& source, double fraction, std::size_t n_loops,
                     std::size_t n_batches, std::uint64_t seed) {
    if (n_loops == 0) throw ValidationError("loop count must be positive");

    QsciOutcome outcome;
    bool have_best = false;
    for (std::size_t loop = 0; loop < n_loops; ++loop) {
        const std::uint64_t loop_seed = splitmix64(seed ^ splitmix64(0xba7c5 + loop));
        auto selection = select_qsci(valid_counts, fraction, source.n(), n_batches, loop_seed);
        const auto projected = project(source, selection);
        auto eigen = ground_state(projected);

        outcome.loops.push_back({loop, selection.indices.size(), fraction, eigen.energy,
                                 eigen.residual_norm, loop_seed});
        if (!have_best || eigen.energy < outcome.eigen.energy) {
            have_best = true;
            outcome.eigen = std::move(eigen);
            outcome.selection = std::move(selection);
        }
    }
    return outcome;
}

} // namespace subq
