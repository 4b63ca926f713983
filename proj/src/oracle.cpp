#include "qfrag/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qfrag/errors.hpp"

namespace qfrag::oracle {

namespace {

void require_chain(int local_dim, int sites) {
  if (local_dim < 2) throw DomainError("local dimension must be >= 2");
  if (sites < 1) throw DomainError("chain needs at least one site");
}

std::size_t checked_dim(int local_dim, int sites) {
  const auto dim = product_dim(local_dim, sites);
  if (dim == 0) throw ResourceError("N^L overflows");
  return dim;
}

}  // namespace

std::size_t product_dim(int local_dim, int sites) {
  std::size_t d = 1;
  for (int i = 0; i < sites; ++i) {
    if (d > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(local_dim)) return 0;
    d *= static_cast<std::size_t>(local_dim);
  }
  return d;
}

DenseOperator::DenseOperator(int local_dim, int sites, Matrix entries)
    : local_dim_(local_dim), sites_(sites), entries_(std::move(entries)) {
  require_chain(local_dim, sites);
  const auto dim = checked_dim(local_dim, sites);
  if (static_cast<std::size_t>(entries_.rows()) != dim || static_cast<std::size_t>(entries_.cols()) != dim)
    throw ValidationError("operator shape does not match N^L");
}

void apply_tl_generator(int site, int local_dim, int sites, std::span<const double> in, std::span<double> out) {
  require_chain(local_dim, sites);
  if (site < 1 || site > sites - 1)
    throw DomainError("TL generator index " + std::to_string(site) + " outside [1, " + std::to_string(sites - 1) + "]");
  const auto dim = checked_dim(local_dim, sites);
  if (in.size() != dim || out.size() != dim) throw ValidationError("vector length does not match N^L");

  const auto n = static_cast<std::size_t>(local_dim);
  // index = high * N^{L-j+1} + pair * N^{L-j-1} + low, pair = α N + β on sites (j, j+1)
  const std::size_t low_dim = product_dim(local_dim, sites - site - 1);
  const std::size_t pair_dim = n * n;
  const std::size_t high_dim = dim / (low_dim * pair_dim);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t high = 0; high < high_dim; ++high) {
    for (std::size_t low = 0; low < low_dim; ++low) {
      const std::size_t base = high * pair_dim * low_dim + low;
      double contracted = 0.0;
      for (std::size_t b = 0; b < n; ++b) contracted += in[base + (b * n + b) * low_dim];
      for (std::size_t a = 0; a < n; ++a) out[base + (a * n + a) * low_dim] = contracted;
    }
  }
}

SparseOperator tl_generator(int site, int local_dim, int sites) {
  require_chain(local_dim, sites);
  if (site < 1 || site > sites - 1)
    throw DomainError("TL generator index " + std::to_string(site) + " outside [1, " + std::to_string(sites - 1) + "]");
  const auto dim = checked_dim(local_dim, sites);
  const auto n = static_cast<std::size_t>(local_dim);
  const std::size_t low_dim = product_dim(local_dim, sites - site - 1);
  const std::size_t pair_dim = n * n;
  const std::size_t high_dim = dim / (low_dim * pair_dim);

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(dim / pair_dim * n * n);
  for (std::size_t high = 0; high < high_dim; ++high)
    for (std::size_t low = 0; low < low_dim; ++low) {
      const std::size_t base = high * pair_dim * low_dim + low;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          entries.emplace_back(static_cast<int>(base + (a * n + a) * low_dim),
                               static_cast<int>(base + (b * n + b) * low_dim), 1.0);
    }
  SparseOperator op(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

Vector dimer_product(int local_dim, int sites) {
  require_chain(local_dim, sites);
  if (sites % 2 != 0) throw ValidationError("dimer product needs an even number of sites");
  Vector dimer = Vector::Zero(local_dim * local_dim);
  for (int a = 0; a < local_dim; ++a) dimer(a * local_dim + a) = 1.0 / std::sqrt(static_cast<double>(local_dim));
  Vector state = Vector::Ones(1);
  for (int pair = 0; pair < sites / 2; ++pair) {
    Vector next(state.size() * dimer.size());
    for (Eigen::Index i = 0; i < state.size(); ++i) next.segment(i * dimer.size(), dimer.size()) = state(i) * dimer;
    state = std::move(next);
  }
  return state;
}

KrylovBasis krylov_subspace(int local_dim, int sites, std::size_t dimension_cap) {
  require_chain(local_dim, sites);
  if (sites % 2 != 0) throw ValidationError("Krylov closure needs an even number of sites");
  const auto dim = product_dim(local_dim, sites);
  if (dim == 0 || dim > dimension_cap)
    throw ResourceError("N^L = " + std::to_string(local_dim) + "^" + std::to_string(sites) +
                        " exceeds dimension cap " + std::to_string(dimension_cap));

  constexpr double accept_threshold = 1e-8;
  std::vector<Vector> basis;
  basis.push_back(dimer_product(local_dim, sites));

  Vector image(static_cast<Eigen::Index>(dim));
  for (std::size_t next = 0; next < basis.size(); ++next) {
    for (int site = 1; site < sites; ++site) {
      apply_tl_generator(site, local_dim, sites, std::span<const double>(basis[next].data(), dim),
                         std::span<double>(image.data(), dim));
      Vector candidate = image;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) candidate -= b.dot(candidate) * b;
      const double residual = candidate.norm();
      if (residual > accept_threshold) basis.push_back(candidate / residual);
    }
  }

  KrylovBasis out{local_dim, sites, 1e-10, Matrix(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(basis.size()))};
  for (std::size_t k = 0; k < basis.size(); ++k) out.vectors.col(static_cast<Eigen::Index>(k)) = basis[k];

  const BigInt expected = algebra::krylov_dim(0, sites);
  if (BigInt(basis.size()) != expected)
    throw VerificationFailure("Krylov closure found " + std::to_string(basis.size()) + " vectors, expected D_0 = " +
                              expected.str());
  const Matrix gram = out.vectors.transpose() * out.vectors;
  const double gram_error = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (gram_error > out.gram_tolerance)
    throw VerificationFailure("Krylov basis not orthonormal: max deviation " + std::to_string(gram_error));
  return out;
}

DenseOperator mmis_dense(const KrylovBasis& basis) {
  Matrix rho = basis.vectors * basis.vectors.transpose();
  rho /= static_cast<double>(basis.size());
  return DenseOperator(basis.local_dim, basis.sites, std::move(rho));
}

DenseOperator partial_transpose(const DenseOperator& op, const Bipartition& bipartition) {
  if (bipartition.total() != op.sites())
    throw ValidationError("bipartition " + std::to_string(bipartition.left()) + ":" +
                          std::to_string(bipartition.right()) + " does not cover " + std::to_string(op.sites()) +
                          " sites");
  const auto dim_a = static_cast<Eigen::Index>(product_dim(op.local_dim(), bipartition.left()));
  const auto dim_b = static_cast<Eigen::Index>(product_dim(op.local_dim(), bipartition.right()));
  const Matrix& in = op.entries();
  Matrix out(in.rows(), in.cols());
  // out[(a', b), (a, b')] = in[(a, b), (a', b')]
  for (Eigen::Index ap = 0; ap < dim_a; ++ap)
    for (Eigen::Index bp = 0; bp < dim_b; ++bp)
      for (Eigen::Index a = 0; a < dim_a; ++a)
        for (Eigen::Index b = 0; b < dim_b; ++b)
          out(ap * dim_b + b, a * dim_b + bp) = in(a * dim_b + b, ap * dim_b + bp);
  return DenseOperator(op.local_dim(), op.sites(), std::move(out));
}

double PartialTransposeAnalysis::trace_norm() const {
  long double sum = 0.0L;
  for (double v : spectrum.sorted_values()) sum += std::abs(v);
  return static_cast<double>(sum);
}

PartialTransposeAnalysis analyze_partial_transpose(const DenseOperator& rho, const Bipartition& bipartition,
                                                   bool want_vectors) {
  const auto transposed = partial_transpose(rho, bipartition);
  return PartialTransposeAnalysis{bipartition, rho.local_dim(), rho.sites(),
                                  symmetric_eigensystem(transposed.entries(), want_vectors)};
}

double log_negativity_dense(const DenseOperator& rho, const Bipartition& bipartition) {
  return std::log(analyze_partial_transpose(rho, bipartition, false).trace_norm());
}

std::vector<double> predicted_partial_transpose_spectrum(const algebra::SectorTable& table, std::size_t dim,
                                                         std::span<const double> weights) {
  if (!weights.empty() && weights.size() != table.rows().size())
    throw ValidationError("weight vector length does not match the sector table");
  std::vector<double> out;
  out.reserve(dim);
  for (std::size_t l = 0; l < table.rows().size(); ++l) {
    const auto& row = table.rows()[l];
    const BigInt block = row.dim_left * row.dim_right;
    const double p = weights.empty() ? to_double(row.weight) : weights[l];
    if (p == 0.0) continue;
    const double magnitude = p / (to_double(Rational(block)) * to_double(Rational(row.qdim)));
    const BigInt plus = block * row.qdim * (row.qdim + 1) / 2;
    const BigInt minus = block * row.qdim * (row.qdim - 1) / 2;
    if (plus + minus + out.size() > dim) throw ValidationError("predicted spectrum exceeds the Hilbert-space dimension");
    out.insert(out.end(), plus.convert_to<std::size_t>(), magnitude);
    out.insert(out.end(), minus.convert_to<std::size_t>(), -magnitude);
  }
  out.resize(dim, 0.0);
  std::sort(out.begin(), out.end());
  return out;
}

CheckResult negativity_spectrum_check(const PartialTransposeAnalysis& analysis, const algebra::SectorTable& table) {
  CheckResult result{"negativity_spectrum"};
  const auto computed = analysis.spectrum.sorted_values();
  const auto predicted = predicted_partial_transpose_spectrum(table, computed.size());

  std::size_t computed_zeros = 0;
  std::size_t predicted_zeros = 0;
  for (std::size_t i = 0; i < computed.size(); ++i) {
    result.max_abs_deviation = std::max(result.max_abs_deviation, std::abs(computed[i] - predicted[i]));
    computed_zeros += std::abs(computed[i]) < kZeroEigenvalue;
    predicted_zeros += predicted[i] == 0.0;
  }
  result.pass = result.max_abs_deviation <= 1e-9 && computed_zeros == predicted_zeros;
  std::ostringstream detail;
  detail << "zero eigenvalues computed " << computed_zeros << ", predicted " << predicted_zeros;
  result.detail = detail.str();
  return result;
}

CheckResult negativity_spectrum_check(const DenseOperator& rho, const Bipartition& bipartition,
                                      const algebra::SectorTable& table) {
  return negativity_spectrum_check(analyze_partial_transpose(rho, bipartition, false), table);
}

CheckResult binegativity_check(const PartialTransposeAnalysis& analysis) {
  CheckResult result{"binegativity"};
  const Matrix abs_transposed =
      analysis.spectrum.reconstruct([](double mu) { return std::abs(mu); }, [](double) { return true; });
  const auto back = partial_transpose(DenseOperator(analysis.local_dim, analysis.sites, abs_transposed),
                                      analysis.bipartition);
  const auto values = symmetric_eigensystem(back.entries(), false).sorted_values();
  const double smallest = values.front();
  result.max_abs_deviation = std::max(0.0, -smallest);
  result.pass = smallest >= -1e-9;
  std::ostringstream detail;
  detail << "min eigenvalue of |rho^TA|^TA = " << smallest;
  result.detail = detail.str();
  return result;
}

CheckResult binegativity_check(const DenseOperator& rho, const Bipartition& bipartition) {
  return binegativity_check(analyze_partial_transpose(rho, bipartition, true));
}

DenseOperator truncated_dense(const PartialTransposeAnalysis& analysis, const algebra::SectorTable& table,
                              int cutoff) {
  const auto& rows = table.rows();
  if (cutoff < 0 || cutoff >= static_cast<int>(rows.size())) throw DomainError("truncation cutoff out of range");
  std::vector<double> log_levels;
  for (const auto& row : rows) log_levels.push_back(-log_of(BigInt(table.singlet_dim() * row.qdim)));

  auto sector_of = [&](double mu) {
    const double lm = std::log(std::abs(mu));
    std::size_t best = 0;
    for (std::size_t l = 1; l < log_levels.size(); ++l)
      if (std::abs(lm - log_levels[l]) < std::abs(lm - log_levels[best])) best = l;
    return static_cast<int>(best);
  };
  auto keep = [&](double mu) { return std::abs(mu) >= kZeroEigenvalue && sector_of(mu) <= cutoff; };

  Rational kept = 0;
  for (int l = 0; l <= cutoff; ++l) kept += rows[l].weight;

  Matrix partial = analysis.spectrum.reconstruct([](double mu) { return mu; }, keep);
  auto rho = partial_transpose(DenseOperator(analysis.local_dim, analysis.sites, std::move(partial)),
                               analysis.bipartition);
  rho.entries() /= to_double(kept);
  return rho;
}

double trace_distance(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) throw ValidationError("trace distance between operators of different dimension");
  return trace_norm(a.entries() - b.entries());
}

double entanglement_entropy(std::span<const double> state, int local_dim, const Bipartition& bipartition,
                            measures::LogBase base) {
  const auto dim_a = static_cast<Eigen::Index>(product_dim(local_dim, bipartition.left()));
  const auto dim_b = static_cast<Eigen::Index>(product_dim(local_dim, bipartition.right()));
  if (static_cast<std::size_t>(dim_a * dim_b) != state.size())
    throw ValidationError("state length does not match N^(L_A + L_B)");
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> reshaped(
      state.data(), dim_a, dim_b);
  const double norm = reshaped.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw ValidationError("entanglement entropy needs a unit vector");

  const Eigen::BDCSVD<Matrix> svd(reshaped);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double p = svd.singularValues()(i) * svd.singularValues()(i);
    if (p > 1e-300) entropy -= p * std::log(p);
  }
  return measures::in_base(entropy, base);
}

Vector singlet_orthogonal_to_seed(const KrylovBasis& basis) {
  if (basis.size() != 2) throw ValidationError("expected a two-dimensional Krylov span");
  const Vector seed = dimer_product(basis.local_dim, basis.sites);
  Vector best;
  double best_norm = -1.0;
  for (Eigen::Index k = 0; k < basis.vectors.cols(); ++k) {
    Vector v = basis.vectors.col(k) - seed.dot(basis.vectors.col(k)) * seed;
    v -= seed.dot(v) * seed;
    if (v.norm() > best_norm) {
      best_norm = v.norm();
      best = v;
    }
  }
  return best / best_norm;
}

}  // namespace qfrag::oracle
