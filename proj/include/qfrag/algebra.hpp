#pragma once

#include <algorithm>
#include <vector>

#include "qfrag/exact.hpp"

namespace qfrag::algebra {

/// Root q >= 1 of q^2 - N q + 1 = 0, i.e. N = q + 1/q. Exactly 1 for N = 2.
double q_from_N(int local_dim);

/// Temperley-Lieb commutant family fixed by the local dimension N.
/// The deformation parameter is kept as an extended-precision float next to
/// the exact N; irrep dimensions are never derived from it.
class CommutantSpec {
 public:
  explicit CommutantSpec(int local_dim);

  int local_dim() const { return local_dim_; }
  double q() const { return static_cast<double>(q_); }
  long double q_extended() const { return q_; }
  bool is_su2() const { return local_dim_ == 2; }

  friend bool operator==(const CommutantSpec&, const CommutantSpec&) = default;

 private:
  int local_dim_;
  long double q_;
};

/// Spatial cut of an L-site chain into a left block of `left` sites and a
/// right block of `right` sites. Both halves must be even and positive.
class Bipartition {
 public:
  Bipartition(int left, int right);

  int left() const { return left_; }
  int right() const { return right_; }
  int total() const { return left_ + right_; }
  /// Largest irrep label shared by both halves.
  int max_label() const { return std::min(left_, right_) / 2; }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int left_;
  int right_;
};

/// q-deformed integer [2*lambda+1]_q via the Chebyshev recurrence
/// [n+1] = N [n] - [n-1].
BigInt qdim(int lambda, int local_dim);

/// qdim(0..max_lambda) in one pass of the recurrence.
std::vector<BigInt> qdims(int max_lambda, int local_dim);

/// Dimension of the spin-lambda Krylov sector on `sites` sites:
/// (2λ+1)/(L/2+λ+1) * C(L, L/2+λ). The division is exact.
BigInt krylov_dim(int lambda, int sites);

/// krylov_dim(0..sites/2, sites) via the binomial ratio recurrence.
std::vector<BigInt> krylov_dims(int sites);

struct SectorRow {
  int lambda;
  BigInt qdim;       // d_λ
  BigInt dim_left;   // D_λ on the left block
  BigInt dim_right;  // D_λ on the right block
  Rational weight;   // p_λ = D_left D_right / D_0
};

/// Per-irrep weights of the singlet subspace across a bipartition.
/// Rows are in ascending λ.
class SectorTable {
 public:
  SectorTable(CommutantSpec spec, Bipartition bipartition, std::vector<SectorRow> rows, BigInt singlet_dim);

  const CommutantSpec& spec() const { return spec_; }
  const Bipartition& bipartition() const { return bipartition_; }
  const std::vector<SectorRow>& rows() const { return rows_; }
  /// D_0 of the full chain, equal to Σ_λ D_left D_right.
  const BigInt& singlet_dim() const { return singlet_dim_; }

 private:
  CommutantSpec spec_;
  Bipartition bipartition_;
  std::vector<SectorRow> rows_;
  BigInt singlet_dim_;
};

SectorTable sector_table(const CommutantSpec& spec, const Bipartition& bipartition);

}  // namespace qfrag::algebra
