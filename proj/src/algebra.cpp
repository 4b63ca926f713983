#include "qfrag/algebra.hpp"

#include <cmath>
#include <string>

#include "qfrag/errors.hpp"

namespace qfrag::algebra {

double q_from_N(int local_dim) {
  if (local_dim < 2) throw DomainError("local dimension must be >= 2, got " + std::to_string(local_dim));
  if (local_dim == 2) return 1.0;
  const long double n = local_dim;
  return static_cast<double>((n + std::sqrt(n * n - 4.0L)) / 2.0L);
}

CommutantSpec::CommutantSpec(int local_dim) : local_dim_(local_dim), q_(1.0L) {
  if (local_dim < 2) throw DomainError("local dimension must be >= 2, got " + std::to_string(local_dim));
  if (local_dim > 2) {
    const long double n = local_dim;
    q_ = (n + std::sqrt(n * n - 4.0L)) / 2.0L;
  }
}

Bipartition::Bipartition(int left, int right) : left_(left), right_(right) {
  if (left <= 0 || right <= 0)
    throw ValidationError("bipartition halves must be positive, got " + std::to_string(left) + ":" +
                          std::to_string(right));
  if (left % 2 != 0 || right % 2 != 0)
    throw ValidationError("bipartition halves must be even (integer irrep labels only), got " +
                          std::to_string(left) + ":" + std::to_string(right));
}

std::vector<BigInt> qdims(int max_lambda, int local_dim) {
  if (local_dim < 2) throw DomainError("local dimension must be >= 2, got " + std::to_string(local_dim));
  if (max_lambda < 0) throw DomainError("irrep label must be >= 0");
  // [n]_q for n = 0..2*max_lambda+1
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(max_lambda) + 1);
  BigInt prev = 0;
  BigInt cur = 1;
  for (int n = 1; n <= 2 * max_lambda + 1; ++n) {
    if (n % 2 == 1) out.push_back(cur);
    BigInt next = local_dim * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

BigInt qdim(int lambda, int local_dim) { return qdims(lambda, local_dim).back(); }

namespace {

void check_label(int lambda, int sites) {
  if (sites < 0 || sites % 2 != 0)
    throw DomainError("Krylov dimensions are defined for even site counts only, got " + std::to_string(sites));
  if (lambda < 0 || lambda > sites / 2)
    throw DomainError("irrep label " + std::to_string(lambda) + " outside [0, " + std::to_string(sites / 2) + "]");
}

}  // namespace

BigInt krylov_dim(int lambda, int sites) {
  check_label(lambda, sites);
  const int half = sites / 2;
  BigInt b = binomial(static_cast<unsigned>(sites), static_cast<unsigned>(half + lambda));
  b *= 2 * lambda + 1;
  return b / (half + lambda + 1);
}

std::vector<BigInt> krylov_dims(int sites) {
  check_label(0, sites);
  const int half = sites / 2;
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(half) + 1);
  BigInt b = binomial(static_cast<unsigned>(sites), static_cast<unsigned>(half));
  for (int lambda = 0; lambda <= half; ++lambda) {
    out.push_back(b * (2 * lambda + 1) / (half + lambda + 1));
    // C(L, h+λ+1) = C(L, h+λ) (h-λ) / (h+λ+1)
    b *= half - lambda;
    b /= half + lambda + 1;
  }
  return out;
}

SectorTable::SectorTable(CommutantSpec spec, Bipartition bipartition, std::vector<SectorRow> rows, BigInt singlet_dim)
    : spec_(spec), bipartition_(bipartition), rows_(std::move(rows)), singlet_dim_(std::move(singlet_dim)) {}

SectorTable sector_table(const CommutantSpec& spec, const Bipartition& bipartition) {
  const int top = bipartition.max_label();
  const auto d = qdims(top, spec.local_dim());
  const auto left = krylov_dims(bipartition.left());
  const auto right = krylov_dims(bipartition.right());

  BigInt singlet_dim = 0;
  for (int lambda = 0; lambda <= top; ++lambda) singlet_dim += left[lambda] * right[lambda];

  std::vector<SectorRow> rows;
  rows.reserve(static_cast<std::size_t>(top) + 1);
  for (int lambda = 0; lambda <= top; ++lambda) {
    rows.push_back(SectorRow{lambda, d[lambda], left[lambda], right[lambda],
                             Rational(left[lambda] * right[lambda], singlet_dim)});
  }
  return SectorTable(spec, bipartition, std::move(rows), std::move(singlet_dim));
}

}  // namespace qfrag::algebra
