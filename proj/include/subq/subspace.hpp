#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "subq/ci_matrix.hpp"
#include "subq/determinants.hpp"
#include "subq/integrals.hpp"

namespace subq {

// Double-precision access to Hamiltonian elements for subspace work.
// Subspace matrices are recomputed from integrals when the matrix came from
// a basis + integral table, and promoted from the stored single-precision
// triplets otherwise.
class ElementSource {
  public:
    virtual ~ElementSource() = default;
    virtual std::uint64_t n() const = 0;
    virtual double element(std::uint64_t i, std::uint64_t j) const = 0;
    // Indices with a possibly nonzero coupling to i (excluding i itself).
    virtual std::vector<std::uint64_t> connected(std::uint64_t i) const = 0;
    virtual double core_energy() const = 0;
};

// Recomputes elements from the Slater-Condon rules in double precision.
class IntegralSource final : public ElementSource {
  public:
    IntegralSource(ConfigurationBasis basis, IntegralTable integrals);

    std::uint64_t n() const override;
    double element(std::uint64_t i, std::uint64_t j) const override;
    std::vector<std::uint64_t> connected(std::uint64_t i) const override;
    double core_energy() const override;

    const ConfigurationBasis& basis() const { return basis_; }
    const IntegralTable& integrals() const { return integrals_; }

  private:
    ConfigurationBasis basis_;
    IntegralTable integrals_;
};

// Promotes stored single-precision triplets; row adjacency from the triplet
// structure.
class SparseMatrixSource final : public ElementSource {
  public:
    explicit SparseMatrixSource(CIMatrix matrix);

    std::uint64_t n() const override;
    double element(std::uint64_t i, std::uint64_t j) const override;
    std::vector<std::uint64_t> connected(std::uint64_t i) const override;
    double core_energy() const override;

    const CIMatrix& matrix() const { return matrix_; }

  private:
    CIMatrix matrix_;
    std::vector<std::map<std::uint64_t, double>> rows_;
};

struct SubspaceSelection {
    std::vector<std::uint64_t> indices; // ordered, distinct, < N
    std::string source;                 // qsci-batch, hci, qshci, manual
};

// QSCI batch selection. The shots in `valid_counts` are shuffled under
// loop_seed, split into n_batches near-equal batches, and each batch's
// distinct configurations are added by descending in-batch frequency
// (ties: lower index) until ceil(fraction * n_total) indices are selected
// or the shots run out.
SubspaceSelection select_qsci(const std::map<std::uint64_t, std::uint64_t>& valid_counts,
                              double fraction, std::uint64_t n_total, std::size_t n_batches,
                              std::uint64_t loop_seed);

// |S| x |S| symmetric dense matrix with [a,b] = H_{S[a],S[b]}, mirrored
// entries bit-identical.
Eigen::MatrixXd project(const ElementSource& source, const SubspaceSelection& selection);

struct EigenResult {
    double energy = 0.0;              // Hartree, excluding core energy
    Eigen::VectorXd eigenvector;      // over the selection, unit norm
    std::size_t iterations = 0;
    double residual_norm = 0.0;
};

// Lowest eigenpair. Dense solve when dim <= dense_cutoff, Lanczos with full
// reorthogonalization otherwise. Throws ConvergenceError when the residual
// does not reach tol within max_iter iterations.
EigenResult ground_state(const Eigen::MatrixXd& matrix, double tol = 1e-10,
                         std::size_t max_iter = 0, std::size_t dense_cutoff = 64);

// The two routes behind ground_state, exposed for cross-checks.
EigenResult dense_lowest(const Eigen::MatrixXd& matrix);
EigenResult lanczos_lowest(const Eigen::MatrixXd& matrix, double tol, std::size_t max_iter);

struct QsciOutcome {
    EigenResult eigen;
    SubspaceSelection selection;
    struct LoopRow {
        std::size_t loop;
        std::size_t subspace_size;
        double fraction;
        double energy;
        double residual;
        std::uint64_t seed;
    };
    std::vector<LoopRow> loops;
};

// Runs select -> project -> ground_state n_loops times with distinct loop
// seeds and keeps the minimum-energy result.
QsciOutcome qsci_run(const std::map<std::uint64_t, std::uint64_t>& valid_counts,
                     const ElementSource& source, double fraction, std::size_t n_loops,
                     std::size_t n_batches, std::uint64_t seed);

} // namespace subq
