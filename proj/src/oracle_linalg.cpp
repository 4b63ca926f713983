#include <algorithm>
#include <numeric>
#include <string>

#include <lapacke.h>

#include "qfrag/errors.hpp"
#include "qfrag/oracle.hpp"

namespace qfrag::oracle {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Index sets of the connected components, each ascending, ordered by first index.
std::vector<std::vector<Eigen::Index>> nonzero_components(const Matrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  DisjointSets sets(n);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < c; ++r)
      if (m(r, c) != 0.0 || m(c, r) != 0.0) sets.unite(static_cast<std::size_t>(r), static_cast<std::size_t>(c));

  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = sets.find(i);
    if (slot[root] == n) {
      slot[root] = groups.size();
      groups.emplace_back();
    }
    groups[slot[root]].push_back(static_cast<Eigen::Index>(i));
  }
  return groups;
}

}  // namespace

std::vector<double> BlockEigensystem::sorted_values() const {
  std::vector<double> out;
  out.reserve(dim);
  for (const auto& b : blocks) out.insert(out.end(), b.values.data(), b.values.data() + b.values.size());
  std::sort(out.begin(), out.end());
  return out;
}

BlockEigensystem symmetric_eigensystem(const Matrix& m, bool want_vectors) {
  if (m.rows() != m.cols()) throw ValidationError("eigensystem needs a square matrix");
  BlockEigensystem out;
  out.dim = static_cast<std::size_t>(m.rows());
  for (auto& indices : nonzero_components(m)) {
    const auto n = static_cast<Eigen::Index>(indices.size());
    BlockEigensystem::Block block;
    block.values.resize(n);
    if (n == 1) {
      block.values(0) = m(indices[0], indices[0]);
      if (want_vectors) block.vectors = Matrix::Ones(1, 1);
    } else {
      Matrix local(n, n);
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < n; ++r) local(r, c) = m(indices[r], indices[c]);
      const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'U',
                                             static_cast<lapack_int>(n), local.data(), static_cast<lapack_int>(n),
                                             block.values.data());
      if (info != 0) throw std::runtime_error("dsyevd failed with info " + std::to_string(info));
      if (want_vectors) block.vectors = std::move(local);
    }
    block.indices = std::move(indices);
    out.blocks.push_back(std::move(block));
  }
  return out;
}

double trace_norm(const Matrix& m) {
  double sum = 0.0;
  for (double v : symmetric_eigensystem(m, false).sorted_values()) sum += std::abs(v);
  return sum;
}

}  // namespace qfrag::oracle
