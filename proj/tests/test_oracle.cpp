#include <doctest.h>

#include <cmath>
#include <map>

#include "qfrag/errors.hpp"
#include "qfrag/oracle.hpp"

using namespace qfrag;
using namespace qfrag::oracle;

namespace {

Matrix dense(const SparseOperator& s) { return Matrix(s); }

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// ρ_A ⊗ ρ_B for diagonal-free random-ish real symmetric positive factors
DenseOperator product_state(int n, int left, int right) {
  auto factor = [n](int sites, int salt) {
    const auto d = static_cast<Eigen::Index>(product_dim(n, sites));
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) g(i, j) = std::sin(1.3 * double(i + 1) * double(j + salt) + 0.7);
    Matrix rho = g * g.transpose();
    return Matrix(rho / rho.trace());
  };
  const Matrix a = factor(left, 1), b = factor(right, 5);
  Matrix out(a.rows() * b.rows(), a.rows() * b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.rows(), b.rows(), b.rows()) = a(i, j) * b;
  return DenseOperator(n, left + right, out);
}

std::map<long, std::size_t> bucket(const std::vector<double>& values, double unit) {
  std::map<long, std::size_t> out;
  for (double v : values) ++out[std::lround(v / unit)];
  return out;
}

}  // namespace

TEST_CASE("TL generator relations") {
  for (int n : {2, 3})
    for (int sites : {4, 5}) {
      std::vector<Matrix> e;
      for (int j = 1; j < sites; ++j) e.push_back(dense(tl_generator(j, n, sites)));
      for (std::size_t j = 0; j < e.size(); ++j) {
        CHECK(max_abs(e[j] * e[j] - double(n) * e[j]) <= 1e-12);
        CHECK(max_abs(e[j] - e[j].transpose()) == 0.0);
        if (j + 1 < e.size()) {
          CHECK(max_abs(e[j] * e[j + 1] * e[j] - e[j]) <= 1e-12);
          CHECK(max_abs(e[j + 1] * e[j] * e[j + 1] - e[j + 1]) <= 1e-12);
        }
        for (std::size_t k = j + 2; k < e.size(); ++k) CHECK(max_abs(e[j] * e[k] - e[k] * e[j]) <= 1e-12);
      }
    }
}

TEST_CASE("TL generator is N times the dimer projector") {
  const int n = 3;
  const Matrix e = dense(tl_generator(1, n, 2));
  const Vector dimer = dimer_product(n, 2);
  CHECK(max_abs(e - double(n) * dimer * dimer.transpose()) <= 1e-15);
  CHECK_THROWS_AS(tl_generator(0, n, 4), DomainError);
  CHECK_THROWS_AS(tl_generator(4, n, 4), DomainError);
}

TEST_CASE("matrix-free generator matches the sparse one") {
  const int n = 3, sites = 5;
  const auto dim = product_dim(n, sites);
  Vector v(static_cast<Eigen::Index>(dim)), out(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::cos(0.37 * double(i * i) + 1.0);
  for (int j = 1; j < sites; ++j) {
    apply_tl_generator(j, n, sites, std::span<const double>(v.data(), dim), std::span<double>(out.data(), dim));
    CHECK(max_abs(out - tl_generator(j, n, sites) * v) <= 1e-14);
  }
}

TEST_CASE("Krylov closure from the dimer product") {
  CHECK(krylov_subspace(2, 2).size() == 1);
  CHECK(krylov_subspace(2, 4).size() == 2);
  CHECK(krylov_subspace(3, 6).size() == 5);
  for (int n : {2, 3, 4}) {
    const auto basis = krylov_subspace(n, 6);
    const Matrix gram = basis.vectors.transpose() * basis.vectors;
    CHECK(max_abs(gram - Matrix::Identity(gram.rows(), gram.cols())) <= 1e-10);
  }
  const auto b8 = krylov_subspace(2, 8);
  CHECK(b8.size() == 14);
  // the span is invariant: every generator maps it into itself
  for (int j = 1; j < 8; ++j) {
    const Matrix image = tl_generator(j, 2, 8) * b8.vectors;
    const Matrix leak = image - b8.vectors * (b8.vectors.transpose() * image);
    CHECK(max_abs(leak) <= 1e-10);
  }
  CHECK_THROWS_AS(krylov_subspace(3, 10), ResourceError);
  CHECK_THROWS_AS(krylov_subspace(2, 5), ValidationError);
  CHECK(krylov_subspace(3, 10, 59049).size() == 42);
}

TEST_CASE("MMIS density matrix") {
  const auto basis = krylov_subspace(2, 2);
  const auto rho2 = mmis_dense(basis);
  const Vector dimer = dimer_product(2, 2);
  CHECK(max_abs(rho2.entries() - dimer * dimer.transpose()) <= 1e-15);

  const auto rho = mmis_dense(krylov_subspace(3, 6));
  CHECK(rho.entries().trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs(rho.entries() * rho.entries() - rho.entries() / 5.0) <= 1e-10);
  CHECK((rho.entries() * rho.entries()).trace() == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("partial transpose") {
  const auto rho = mmis_dense(krylov_subspace(3, 4));
  const Bipartition cut(2, 2);
  const auto pt = partial_transpose(rho, cut);
  CHECK(max_abs(partial_transpose(pt, cut).entries() - rho.entries()) == 0.0);
  CHECK(pt.entries().trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(partial_transpose(rho, Bipartition(2, 4)), ValidationError);

  const auto prod = product_state(2, 2, 2);
  const auto a = symmetric_eigensystem(prod.entries(), false).sorted_values();
  const auto b = symmetric_eigensystem(partial_transpose(prod, cut).entries(), false).sorted_values();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12);
  CHECK(std::abs(log_negativity_dense(prod, cut)) <= 1e-12);
  CHECK(binegativity_check(prod, cut).pass);
}

TEST_CASE("block eigensolver equals a plain dense solve") {
  Matrix m = Matrix::Zero(9, 9);
  m(0, 0) = 2;
  m(1, 4) = m(4, 1) = -1.5;
  m(1, 1) = 0.5;
  m(4, 4) = 3;
  m(2, 7) = m(7, 2) = 0.25;
  m(7, 8) = m(8, 7) = 1;
  m(5, 5) = -4;
  const auto blocks = symmetric_eigensystem(m, true);
  CHECK(blocks.blocks.size() == 6);  // {0} {1,4} {2,7,8} {3} {5} {6}
  Eigen::SelfAdjointEigenSolver<Matrix> ref(m);
  const auto values = blocks.sorted_values();
  for (Eigen::Index i = 0; i < 9; ++i) CHECK(values[static_cast<std::size_t>(i)] == doctest::Approx(ref.eigenvalues()(i)));
  const Matrix back = blocks.reconstruct([](double x) { return x; }, [](double) { return true; });
  CHECK(max_abs(back - m) <= 1e-14);
  CHECK(trace_norm(m) == doctest::Approx(ref.eigenvalues().cwiseAbs().sum()));
}

TEST_CASE("predicted spectrum reproduces known multisets") {
  auto counts = [](int n, double unit) {
    const auto table = algebra::sector_table(algebra::CommutantSpec(n), Bipartition(2, 2));
    return bucket(predicted_partial_transpose_spectrum(table, product_dim(n, 4)), unit);
  };
  CHECK(counts(2, 1.0 / 6) == std::map<long, std::size_t>{{-1, 3}, {0, 6}, {1, 6}, {3, 1}});
  CHECK(counts(3, 1.0 / 16) == std::map<long, std::size_t>{{-1, 28}, {0, 16}, {1, 36}, {8, 1}});

  const auto table = algebra::sector_table(algebra::CommutantSpec(3), Bipartition(4, 4));
  const auto spectrum = predicted_partial_transpose_spectrum(table, product_dim(3, 8));
  double norm = 0;
  for (double v : spectrum) norm += std::abs(v);
  CHECK(norm == doctest::Approx(131.0 / 14).epsilon(1e-13));
}

TEST_CASE("dense spectra match the block prediction") {
  for (int n : {2, 3}) {
    const auto rho = mmis_dense(krylov_subspace(n, 4));
    const Bipartition cut(2, 2);
    const auto table = algebra::sector_table(algebra::CommutantSpec(n), cut);
    const auto check = negativity_spectrum_check(rho, cut, table);
    CHECK(check.pass);
    CHECK(check.max_abs_deviation <= 1e-9);
    const auto values = symmetric_eigensystem(partial_transpose(rho, cut).entries(), false).sorted_values();
    const double unit = n == 2 ? 1.0 / 6 : 1.0 / 16;
    const auto expected = n == 2 ? std::map<long, std::size_t>{{-1, 3}, {0, 6}, {1, 6}, {3, 1}}
                                 : std::map<long, std::size_t>{{-1, 28}, {0, 16}, {1, 36}, {8, 1}};
    CHECK(bucket(values, unit) == expected);
  }
  // the 4:4 negativity spectrum carries the exact weights and q-dimensions
  const auto rho = mmis_dense(krylov_subspace(3, 8));
  const auto analysis = analyze_partial_transpose(rho, Bipartition(4, 4), false);
  const auto values = analysis.spectrum.sorted_values();
  std::map<long, std::size_t> levels;
  for (double v : values)
    if (std::abs(v) > kZeroEigenvalue) ++levels[std::lround(1.0 / (14 * std::abs(v)))];
  // |μ| = 1/(D_0 d_λ) for d = 1, 8, 55 with multiplicities D_λ² d_λ²
  CHECK(levels == std::map<long, std::size_t>{{1, 4}, {8, 9 * 64}, {55, 55 * 55}});
  double e_less = 0;
  for (const auto& [d, count] : levels) e_less += double(count) / (14.0 * double(d) * double(d)) * std::log(double(d));
  CHECK(e_less == doctest::Approx((9 * std::log(8.0) + std::log(55.0)) / 14).epsilon(1e-12));
  CHECK(std::log(analysis.trace_norm()) == doctest::Approx(std::log(131.0 / 14)).epsilon(1e-12));
}

TEST_CASE("log-negativity of small oracle states") {
  CHECK(log_negativity_dense(mmis_dense(krylov_subspace(3, 4)), Bipartition(2, 2)) ==
        doctest::Approx(std::log(4.5)).epsilon(1e-12));
  CHECK(log_negativity_dense(mmis_dense(krylov_subspace(2, 8)), Bipartition(4, 4)) ==
        doctest::Approx(std::log(36.0 / 14)).epsilon(1e-12));
}

TEST_CASE("binegativity") {
  CHECK(binegativity_check(mmis_dense(krylov_subspace(2, 4)), Bipartition(2, 2)).pass);
  CHECK(binegativity_check(mmis_dense(krylov_subspace(3, 6)), Bipartition(2, 4)).pass);
}

TEST_CASE("truncated reconstruction") {
  const auto rho = mmis_dense(krylov_subspace(3, 8));
  const Bipartition cut(4, 4);
  const auto table = algebra::sector_table(algebra::CommutantSpec(3), cut);
  const auto analysis = analyze_partial_transpose(rho, cut, true);
  const auto trunc = truncated_dense(analysis, table, 1);
  CHECK(trunc.entries().trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace_distance(rho, trunc) == doctest::Approx(1.0 / 7).epsilon(1e-10));
  CHECK(binegativity_check(trunc, cut).pass);
  CHECK(std::log(analyze_partial_transpose(trunc, cut, false).trace_norm()) ==
        doctest::Approx(std::log((4.0 + 9 * 8) / 13)).epsilon(1e-10));
  CHECK(trace_distance(rho, truncated_dense(analysis, table, 2)) <= 1e-10);
  CHECK_THROWS_AS(truncated_dense(analysis, table, 3), DomainError);
}

TEST_CASE("entanglement entropy") {
  // |0> ⊗ dimer(2,3) ⊗ |0>: one dimer straddles the 2:2 cut
  const Vector dimer = dimer_product(3, 2);
  Vector straddle = Vector::Zero(81);
  for (Eigen::Index k = 0; k < 9; ++k) straddle(k * 3) = dimer(k);
  CHECK(entanglement_entropy(std::span<const double>(straddle.data(), 81), 3, Bipartition(2, 2)) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
  Vector product = Vector::Zero(81);
  product(5) = 1;
  CHECK(std::abs(entanglement_entropy(std::span<const double>(product.data(), 81), 3, Bipartition(2, 2))) <= 1e-15);

  const Vector across = dimer_product(3, 4);
  // dimers on (1,2),(3,4) do not cross a 2:2 cut
  CHECK(std::abs(entanglement_entropy(std::span<const double>(across.data(), 81), 3, Bipartition(2, 2))) <= 1e-12);

  for (int n : {2, 3}) {
    const auto v = singlet_orthogonal_to_seed(krylov_subspace(n, 4));
    const double s = entanglement_entropy(std::span<const double>(v.data(), v.size()), n, Bipartition(2, 2));
    CHECK(std::abs(s - std::log(n == 2 ? 3.0 : 8.0)) <= 1e-9);
    CHECK(entanglement_entropy(std::span<const double>(v.data(), v.size()), n, Bipartition(2, 2),
                               measures::LogBase::binary) ==
          doctest::Approx(std::log2(n == 2 ? 3.0 : 8.0)).epsilon(1e-12));
  }
  Vector bad = across * 2.0;
  CHECK_THROWS_AS(entanglement_entropy(std::span<const double>(bad.data(), 81), 3, Bipartition(2, 2)),
                  ValidationError);
  CHECK_THROWS_AS(singlet_orthogonal_to_seed(krylov_subspace(3, 6)), ValidationError);
}
