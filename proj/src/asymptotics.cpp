#include "qfrag/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qfrag/errors.hpp"
#include "qfrag/logspace.hpp"

namespace qfrag::asymptotics {

namespace {

void require_positive(ScalingLength length) {
  if (!(length.value > 0)) throw DomainError("scaling length must be positive");
}

void require_deformed(double q) {
  if (!(q > 1.0))
    throw DomainError("closed-form RS estimates need q > 1 (N >= 3); use e_su2_asymp for N = 2");
}

}  // namespace

ScalingLength from_subsystem_sites(std::int64_t subsystem_sites) {
  return ScalingLength{static_cast<double>(subsystem_sites) / 2.0};
}

ScalingLength from_chain_sites(std::int64_t chain_sites) {
  return ScalingLength{static_cast<double>(chain_sites) / 4.0};
}

std::int64_t subsystem_sites(ScalingLength length) { return static_cast<std::int64_t>(std::llround(2.0 * length.value)); }

double p_lambda_asymp(double lambda, ScalingLength length) {
  require_positive(length);
  const double L = length.value;
  const double prefactor = 8.0 * std::numbers::sqrt2 / std::sqrt(std::numbers::pi);
  return prefactor * lambda * lambda / std::pow(L, 1.5) * std::exp(-2.0 * lambda * lambda / L);
}

bool in_asymptotic_regime(double lambda, ScalingLength length) {
  return lambda >= 1.0 && lambda <= length.value / 2.0;
}

double lambda_max(ScalingLength length) { return std::sqrt(length.value / 2.0); }

double lambda_star(ScalingLength length, double q) { return length.value * std::log(q) / 2.0; }

double e_less_asymp(ScalingLength length, double q) {
  require_deformed(q);
  return std::log(q) * std::sqrt(2.0 * length.value);
}

double e_greater_asymp(ScalingLength length, double q) {
  require_deformed(q);
  const double lq = std::log(q);
  return lq * lq / 2.0 * length.value;
}

double e_su2_asymp(ScalingLength length) {
  require_positive(length);
  return 0.5 * std::log(length.value);
}

AsymptoticEstimate estimate(ScalingLength length, const CommutantSpec& spec) {
  require_positive(length);
  if (spec.is_su2()) {
    const double e = e_su2_asymp(length);
    return AsymptoticEstimate{length, 1.0, e, e, lambda_max(length), 0.0};
  }
  const double q = spec.q();
  return AsymptoticEstimate{length, q, e_less_asymp(length, q), e_greater_asymp(length, q), lambda_max(length),
                            lambda_star(length, q)};
}

double truncation_tail(double a) {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  return (2.0 * a * std::exp(-a * a) + sqrt_pi * std::erfc(a)) / sqrt_pi;
}

double a_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("a_epsilon: eps must lie in (0,1)");
  double lo = 0.0;
  double hi = 10.0;
  // tail is strictly decreasing: tail(lo) > eps >= tail(hi)
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (truncation_tail(mid) > eps)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

long double log_krylov_dim_ext(int lambda, std::int64_t sites) {
  if (sites < 0 || sites % 2 != 0) throw DomainError("Krylov dimensions need an even site count");
  const auto half = sites / 2;
  if (lambda < 0 || lambda > half) throw DomainError("irrep label out of range");
  const long double l = lambda;
  const long double h = static_cast<long double>(half);
  return std::log(2.0L * l + 1.0L) - std::log(h + l + 1.0L) + std::lgamma(static_cast<long double>(sites) + 1.0L) -
         std::lgamma(h + l + 1.0L) - std::lgamma(h - l + 1.0L);
}

}  // namespace

double log_krylov_dim(int lambda, std::int64_t sites) { return static_cast<double>(log_krylov_dim_ext(lambda, sites)); }

double log_qdim(int lambda, double q) {
  if (lambda < 0) throw DomainError("irrep label must be >= 0");
  const long double n = 2.0L * lambda + 1.0L;
  if (q == 1.0) return static_cast<double>(std::log(n));
  const long double ql = q;
  return static_cast<double>(n * std::log(ql) + std::log1p(-std::pow(ql, -2.0L * n)) - std::log(ql - 1.0L / ql));
}

measures::EnsembleState mmis_log_space(const CommutantSpec& spec, const Bipartition& bipartition) {
  const int top = bipartition.max_label();
  const double q = spec.q();
  measures::LogWeights w;
  w.log_qdims.reserve(static_cast<std::size_t>(top) + 1);
  w.log_weights.reserve(static_cast<std::size_t>(top) + 1);
  // Extended precision until after the shift.
  std::vector<long double> raw;
  raw.reserve(static_cast<std::size_t>(top) + 1);
  long double peak = -std::numeric_limits<long double>::infinity();
  for (int l = 0; l <= top; ++l) {
    w.log_qdims.push_back(spec.is_su2() ? std::log(2.0 * l + 1.0) : log_qdim(l, q));
    raw.push_back(log_krylov_dim_ext(l, bipartition.left()) + log_krylov_dim_ext(l, bipartition.right()));
    peak = std::max(peak, raw.back());
  }
  long double acc = 0.0L;
  for (long double x : raw) acc += std::exp(x - peak);
  const long double log_norm = peak + std::log(acc);

  const long double log_singlet_dim = log_krylov_dim_ext(0, bipartition.total());
  const double drift = static_cast<double>(std::expm1(log_norm - log_singlet_dim));
  if (!(std::abs(drift) <= 1e-8))
    throw ConsistencyError("log-space normalization drift " + std::to_string(drift) + " exceeds 1e-8");
  for (long double x : raw) w.log_weights.push_back(static_cast<double>(x - log_norm));

  return measures::EnsembleState::log_space(spec, bipartition, std::move(w), measures::MmisOrigin{});
}

measures::MeasureReport large_L_measures(const CommutantSpec& spec, const Bipartition& bipartition,
                                         measures::LogBase base) {
  return measures::measure_report(mmis_log_space(spec, bipartition), base);
}

}  // namespace qfrag::asymptotics
