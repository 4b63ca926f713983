#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qfrag/algebra.hpp"
#include "qfrag/measures.hpp"

// Brute-force dense checks of the closed forms on chains small enough to
// store N^L x N^L matrices. Everything is real: the TL generators, the
// Krylov vectors and every density matrix are real in the product basis.
namespace qfrag::oracle {

using algebra::Bipartition;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseOperator = Eigen::SparseMatrix<double>;

inline constexpr std::size_t kDefaultDimensionCap = 6561;  // 3^8
inline constexpr double kZeroEigenvalue = 1e-10;

/// N^sites, or 0 if it does not fit in size_t.
std::size_t product_dim(int local_dim, int sites);

/// Real symmetric operator on (C^N)^{⊗L}. Site 1 is the most significant
/// digit of the product-basis index.
class DenseOperator {
 public:
  DenseOperator(int local_dim, int sites, Matrix entries);

  int local_dim() const { return local_dim_; }
  int sites() const { return sites_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  Matrix& entries() { return entries_; }

 private:
  int local_dim_;
  int sites_;
  Matrix entries_;
};

/// e_{j,j+1} = Σ_{αβ} |αα><ββ| on sites (j, j+1), 1 <= j <= L-1.
SparseOperator tl_generator(int site, int local_dim, int sites);

/// out = e_{j,j+1} in without materializing the operator.
void apply_tl_generator(int site, int local_dim, int sites, std::span<const double> in, std::span<double> out);

/// Product of normalized dimers on (1,2), (3,4), ...
Vector dimer_product(int local_dim, int sites);

struct KrylovBasis {
  int local_dim;
  int sites;
  double gram_tolerance;
  Matrix vectors;  // orthonormal columns

  std::size_t size() const { return static_cast<std::size_t>(vectors.cols()); }
};

/// Breadth-first closure of the dimer product under all TL generators with
/// twice-applied modified Gram-Schmidt. Throws ResourceError above
/// `dimension_cap` and VerificationFailure if the basis size is not D_0.
KrylovBasis krylov_subspace(int local_dim, int sites, std::size_t dimension_cap = kDefaultDimensionCap);

/// Normalized projector onto the Krylov span.
DenseOperator mmis_dense(const KrylovBasis& basis);

/// Transpose of the left block's indices in the product basis.
DenseOperator partial_transpose(const DenseOperator& op, const Bipartition& bipartition);

/// Eigendecomposition that first splits the matrix into the connected
/// components of its exact-nonzero pattern and diagonalizes each block.
struct BlockEigensystem {
  struct Block {
    std::vector<Eigen::Index> indices;
    Vector values;
    Matrix vectors;  // empty when only values were requested
  };
  std::size_t dim = 0;
  std::vector<Block> blocks;

  /// All eigenvalues, ascending.
  std::vector<double> sorted_values() const;
  /// Σ_k f(μ_k) v_k v_k^T over the eigenpairs selected by `keep`.
  template <class Fn, class Keep>
  Matrix reconstruct(Fn f, Keep keep) const;
};

BlockEigensystem symmetric_eigensystem(const Matrix& m, bool want_vectors);

/// Σ of absolute eigenvalues of a symmetric matrix.
double trace_norm(const Matrix& m);

double log_negativity_dense(const DenseOperator& rho, const Bipartition& bipartition);

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_abs_deviation = 0.0;
  std::string detail;
};

/// ρ^{T_A} together with its eigensystem, shared by the spectrum,
/// binegativity and truncation checks.
struct PartialTransposeAnalysis {
  Bipartition bipartition;
  int local_dim;
  int sites;
  BlockEigensystem spectrum;

  double trace_norm() const;
};

PartialTransposeAnalysis analyze_partial_transpose(const DenseOperator& rho, const Bipartition& bipartition,
                                                   bool want_vectors);

/// Predicted ρ^{T_A} eigenvalues of the state with irrep marginal `weights`
/// (MMIS weights when empty): ±p_λ/(D_A D_B d_λ) with multiplicities
/// D_A D_B d_λ(d_λ±1)/2, padded with zeros, ascending.
std::vector<double> predicted_partial_transpose_spectrum(const algebra::SectorTable& table, std::size_t dim,
                                                         std::span<const double> weights = {});

/// Sorted comparison against the block-structure prediction at 1e-9.
CheckResult negativity_spectrum_check(const PartialTransposeAnalysis& analysis, const algebra::SectorTable& table);
CheckResult negativity_spectrum_check(const DenseOperator& rho, const Bipartition& bipartition,
                                      const algebra::SectorTable& table);

/// min eig of |ρ^{T_A}|^{T_A} >= -1e-9. Needs eigenvectors in `analysis`.
CheckResult binegativity_check(const PartialTransposeAnalysis& analysis);
CheckResult binegativity_check(const DenseOperator& rho, const Bipartition& bipartition);

/// Dense counterpart of measures::truncate on an MMIS: keeps the ρ^{T_A}
/// eigenspaces belonging to λ <= cutoff, transposes back and renormalizes.
/// The λ of each eigenvalue is read off from |μ| = 1/(D_0 d_λ).
DenseOperator truncated_dense(const PartialTransposeAnalysis& analysis, const algebra::SectorTable& table,
                              int cutoff);

/// ||a - b||_1.
double trace_distance(const DenseOperator& a, const DenseOperator& b);

/// Von Neumann entropy of the left reduced state of a pure state, from the
/// Schmidt values of the dim_A x dim_B reshaping.
double entanglement_entropy(std::span<const double> state, int local_dim, const Bipartition& bipartition,
                            measures::LogBase base = measures::LogBase::natural);

/// Unit vector in the Krylov span orthogonal to the dimer product (the span
/// must be two-dimensional, as it is for L = 4).
Vector singlet_orthogonal_to_seed(const KrylovBasis& basis);

// ---------------------------------------------------------------------------

template <class Fn, class Keep>
Matrix BlockEigensystem::reconstruct(Fn f, Keep keep) const {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& block : blocks) {
    const auto n = static_cast<Eigen::Index>(block.indices.size());
    if (block.vectors.size() == 0 && n > 1) throw std::logic_error("reconstruct needs eigenvectors");
    Vector scale(n);
    for (Eigen::Index k = 0; k < n; ++k) scale(k) = keep(block.values(k)) ? f(block.values(k)) : 0.0;
    const Matrix local = n == 1 ? Matrix::Constant(1, 1, scale(0))
                                : Matrix(block.vectors * scale.asDiagonal() * block.vectors.transpose());
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r) out(block.indices[r], block.indices[c]) = local(r, c);
  }
  return out;
}

}  // namespace qfrag::oracle
