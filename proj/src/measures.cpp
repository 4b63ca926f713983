#include "qfrag/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qfrag/errors.hpp"
#include "qfrag/logspace.hpp"

namespace qfrag::measures {

namespace {

constexpr double kFloatSumTolerance = 1e-12;

void check_lengths(const Bipartition& bipartition, std::size_t a, std::size_t b) {
  const auto expected = static_cast<std::size_t>(bipartition.max_label()) + 1;
  if (a != expected || b != expected)
    throw ValidationError("ensemble state needs " + std::to_string(expected) + " sectors, got " +
                          std::to_string(a) + " and " + std::to_string(b));
}

std::optional<int> truncation_cutoff(const Provenance& origin) {
  if (const auto* t = std::get_if<TruncatedOrigin>(&origin)) return t->cutoff;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(LogBase base) { return base == LogBase::natural ? "e" : "2"; }

std::string_view to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact_rational ? "exact" : "logspace";
}

double in_base(double nats, LogBase base) { return base == LogBase::natural ? nats : nats / std::numbers::ln2; }

EnsembleState::EnsembleState(CommutantSpec spec, Bipartition bipartition,
                             std::variant<ExactWeights, LogWeights> weights, Provenance origin)
    : spec_(spec), bipartition_(bipartition), weights_(std::move(weights)), provenance_(std::move(origin)) {}

EnsembleState EnsembleState::exact(CommutantSpec spec, Bipartition bipartition, ExactWeights weights,
                                   Provenance origin) {
  check_lengths(bipartition, weights.qdims.size(), weights.weights.size());
  Rational total = 0;
  for (const auto& p : weights.weights) {
    if (p < 0) throw ValidationError("ensemble weights must be non-negative");
    total += p;
  }
  if (total != 1) throw ValidationError("ensemble weights must sum to 1 exactly, got " + to_fraction_string(total));
  if (const auto cutoff = truncation_cutoff(origin)) {
    for (std::size_t l = static_cast<std::size_t>(*cutoff) + 1; l < weights.weights.size(); ++l)
      if (weights.weights[l] != 0) throw ValidationError("truncated state carries weight above its cutoff");
  }
  return EnsembleState(spec, bipartition, std::move(weights), std::move(origin));
}

EnsembleState EnsembleState::log_space(CommutantSpec spec, Bipartition bipartition, LogWeights weights,
                                       Provenance origin) {
  check_lengths(bipartition, weights.log_qdims.size(), weights.log_weights.size());
  long double total = 0.0L;
  for (double lp : weights.log_weights) {
    if (std::isnan(lp)) throw ValidationError("log weight is NaN");
    total += std::exp(static_cast<long double>(lp));
  }
  if (std::abs(static_cast<double>(total) - 1.0) > kFloatSumTolerance)
    throw ValidationError("ensemble weights must sum to 1 within 1e-12");
  if (const auto cutoff = truncation_cutoff(origin)) {
    for (std::size_t l = static_cast<std::size_t>(*cutoff) + 1; l < weights.log_weights.size(); ++l)
      if (std::isfinite(weights.log_weights[l]))
        throw ValidationError("truncated state carries weight above its cutoff");
  }
  return EnsembleState(spec, bipartition, std::move(weights), std::move(origin));
}

ArithmeticMode EnsembleState::mode() const {
  return std::holds_alternative<ExactWeights>(weights_) ? ArithmeticMode::exact_rational
                                                        : ArithmeticMode::log_space_float;
}

std::size_t EnsembleState::sector_count() const {
  return is_exact() ? exact_weights().weights.size() : log_weights().log_weights.size();
}

double EnsembleState::weight(std::size_t lambda) const {
  return is_exact() ? to_double(exact_weights().weights.at(lambda)) : std::exp(log_weights().log_weights.at(lambda));
}

double EnsembleState::log_qdim(std::size_t lambda) const {
  return is_exact() ? log_of(exact_weights().qdims.at(lambda)) : log_weights().log_qdims.at(lambda);
}

EnsembleState mmis(const CommutantSpec& spec, const Bipartition& bipartition) {
  const auto table = algebra::sector_table(spec, bipartition);
  ExactWeights w;
  for (const auto& row : table.rows()) {
    w.qdims.push_back(row.qdim);
    w.weights.push_back(row.weight);
  }
  return EnsembleState::exact(spec, bipartition, std::move(w), MmisOrigin{});
}

EnsembleState custom_state(const CommutantSpec& spec, const Bipartition& bipartition, std::vector<Rational> weights) {
  ExactWeights w;
  w.qdims = algebra::qdims(bipartition.max_label(), spec.local_dim());
  w.weights = std::move(weights);
  return EnsembleState::exact(spec, bipartition, std::move(w), CustomOrigin{});
}

double e_less(const EnsembleState& state, LogBase base) {
  long double acc = 0.0L;
  if (state.is_exact()) {
    const auto& w = state.exact_weights();
    for (std::size_t l = 0; l < w.weights.size(); ++l) {
      if (w.weights[l] == 0 || w.qdims[l] == 1) continue;
      acc += static_cast<long double>(to_double(w.weights[l])) * log_of(w.qdims[l]);
    }
  } else {
    const auto& w = state.log_weights();
    for (std::size_t l = 0; l < w.log_weights.size(); ++l) {
      if (!std::isfinite(w.log_weights[l])) continue;
      acc += std::exp(static_cast<long double>(w.log_weights[l])) * w.log_qdims[l];
    }
  }
  return in_base(static_cast<double>(acc), base);
}

double e_greater(const EnsembleState& state, LogBase base) {
  if (state.is_exact()) {
    const auto& w = state.exact_weights();
    Rational sum = 0;
    for (std::size_t l = 0; l < w.weights.size(); ++l) sum += w.weights[l] * w.qdims[l];
    if (sum == 1) return 0.0;
    return in_base(log_of(sum), base);
  }
  const auto& w = state.log_weights();
  std::vector<double> terms;
  terms.reserve(w.log_weights.size());
  for (std::size_t l = 0; l < w.log_weights.size(); ++l)
    if (std::isfinite(w.log_weights[l])) terms.push_back(w.log_weights[l] + w.log_qdims[l]);
  return in_base(log_sum_exp(terms), base);
}

EnsembleState truncate(const EnsembleState& state, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw DomainError("truncation eps must lie in (0,1), got " + to_fraction_string(eps));
  if (std::holds_alternative<TruncatedOrigin>(state.provenance()))
    throw ValidationError("truncate expects an MMIS or custom state, not an already truncated one");

  const auto top = static_cast<int>(state.sector_count()) - 1;
  if (state.is_exact()) {
    const auto& w = state.exact_weights();
    Rational tail = 0;
    int cutoff = top;
    while (cutoff > 0 && tail + w.weights[cutoff] <= eps) tail += w.weights[cutoff--];

    ExactWeights out{w.qdims, std::vector<Rational>(w.weights.size(), Rational(0))};
    const Rational keep = 1 - tail;
    for (int l = 0; l <= cutoff; ++l) out.weights[l] = w.weights[l] / keep;
    return EnsembleState::exact(state.spec(), state.bipartition(), std::move(out),
                                TruncatedOrigin{eps, cutoff, to_double(tail), tail});
  }

  const auto& w = state.log_weights();
  const double eps_value = to_double(eps);
  double tail = 0.0;
  int cutoff = top;
  while (cutoff > 0 && tail + std::exp(w.log_weights[cutoff]) <= eps_value) tail += std::exp(w.log_weights[cutoff--]);

  LogWeights out{w.log_qdims, std::vector<double>(w.log_weights.size(), -std::numeric_limits<double>::infinity())};
  const double shift = std::log1p(-tail);
  for (int l = 0; l <= cutoff; ++l) out.log_weights[l] = w.log_weights[l] - shift;
  return EnsembleState::log_space(state.spec(), state.bipartition(), std::move(out),
                                  TruncatedOrigin{eps, cutoff, tail, std::nullopt});
}

namespace {

void check_pair(const EnsembleState& a, const EnsembleState& b) {
  if (!(a.spec() == b.spec()) || !(a.bipartition() == b.bipartition()) || a.sector_count() != b.sector_count())
    throw ValidationError("states live on different commutants or bipartitions");
}

}  // namespace

Rational trace_distance_truncated(const EnsembleState& state, const EnsembleState& truncated) {
  check_pair(state, truncated);
  if (!state.is_exact() || !truncated.is_exact())
    throw ValidationError("exact trace distance needs both states in exact mode");
  const auto& p = state.exact_weights().weights;
  const auto& pe = truncated.exact_weights().weights;
  Rational sum = 0;
  for (std::size_t l = 0; l < p.size(); ++l) sum += boost::multiprecision::abs(Rational(p[l] - pe[l]));
  return sum;
}

double trace_distance_truncated_float(const EnsembleState& state, const EnsembleState& truncated) {
  check_pair(state, truncated);
  if (state.is_exact() && truncated.is_exact()) return to_double(trace_distance_truncated(state, truncated));
  long double sum = 0.0L;
  for (std::size_t l = 0; l < state.sector_count(); ++l)
    sum += std::abs(static_cast<long double>(state.weight(l)) - truncated.weight(l));
  return static_cast<double>(sum);
}

MeasureReport measure_report(const EnsembleState& state, LogBase base) {
  const double less = e_less(state, base);
  const double greater = e_greater(state, base);
  const double slack = 1e-12 * std::max(1.0, std::abs(greater));
  if (greater < less - slack)
    throw ConsistencyError("ordering violated: e_greater " + std::to_string(greater) + " < e_less " +
                           std::to_string(less));
  return MeasureReport{less, greater, base, state.mode(), state.spec(), state.bipartition()};
}

}  // namespace qfrag::measures
