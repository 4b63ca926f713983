#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qfrag/algebra.hpp"
#include "qfrag/exact.hpp"

namespace qfrag::measures {

using algebra::Bipartition;
using algebra::CommutantSpec;

enum class LogBase { natural, binary };
enum class ArithmeticMode { exact_rational, log_space_float };

std::string_view to_string(LogBase base);
std::string_view to_string(ArithmeticMode mode);

/// Converts a value measured in nats into `base` units.
double in_base(double nats, LogBase base);

struct MmisOrigin {};
struct CustomOrigin {};
struct TruncatedOrigin {
  Rational requested_eps;
  int cutoff;                              // A_ε: largest retained irrep label
  double tail_mass;                        // ε' actually removed
  std::optional<Rational> tail_mass_exact; // set in exact mode
};
using Provenance = std::variant<MmisOrigin, TruncatedOrigin, CustomOrigin>;

/// d_λ and p_λ as exact numbers, ascending λ.
struct ExactWeights {
  std::vector<BigInt> qdims;
  std::vector<Rational> weights;
};

/// log d_λ and log p_λ as doubles, ascending λ. Vanishing weights are -inf.
struct LogWeights {
  std::vector<double> log_qdims;
  std::vector<double> log_weights;
};

/// A singlet-ensemble mixed state reduced to its irrep marginal.
///
/// The ensemble weights q_{λab} only ever enter the closed-form measures
/// through p_λ = Σ_{a,b} q_{λab}, so that marginal is all that is stored.
class EnsembleState {
 public:
  static EnsembleState exact(CommutantSpec spec, Bipartition bipartition, ExactWeights weights, Provenance origin);
  static EnsembleState log_space(CommutantSpec spec, Bipartition bipartition, LogWeights weights, Provenance origin);

  const CommutantSpec& spec() const { return spec_; }
  const Bipartition& bipartition() const { return bipartition_; }
  const Provenance& provenance() const { return provenance_; }
  ArithmeticMode mode() const;
  bool is_exact() const { return mode() == ArithmeticMode::exact_rational; }

  /// Throws std::bad_variant_access if the state is in the other mode.
  const ExactWeights& exact_weights() const { return std::get<ExactWeights>(weights_); }
  const LogWeights& log_weights() const { return std::get<LogWeights>(weights_); }

  std::size_t sector_count() const;
  /// p_λ as a double in either mode.
  double weight(std::size_t lambda) const;
  double log_qdim(std::size_t lambda) const;

 private:
  EnsembleState(CommutantSpec spec, Bipartition bipartition, std::variant<ExactWeights, LogWeights> weights,
                Provenance origin);

  CommutantSpec spec_;
  Bipartition bipartition_;
  std::variant<ExactWeights, LogWeights> weights_;
  Provenance provenance_;
};

/// Maximally mixed invariant state: p_λ = D_λ(L_A) D_λ(L_B) / D_0(L).
EnsembleState mmis(const CommutantSpec& spec, const Bipartition& bipartition);

/// Arbitrary singlet-ensemble marginal over λ = 0..max_label (exact mode).
EnsembleState custom_state(const CommutantSpec& spec, const Bipartition& bipartition, std::vector<Rational> weights);

/// Entanglement of formation, entanglement cost, squashed entanglement and
/// distillable entanglement, which coincide here: Σ_λ p_λ log d_λ.
double e_less(const EnsembleState& state, LogBase base = LogBase::natural);

/// Logarithmic negativity = exact PPT entanglement cost: log Σ_λ p_λ d_λ.
/// In exact mode the sum is formed as a rational before the single log.
double e_greater(const EnsembleState& state, LogBase base = LogBase::natural);

/// Drops the largest irreps: keeps λ <= A_ε where A_ε is the smallest label
/// with tail Σ_{λ>A_ε} p_λ <= eps, and renormalizes by the actual tail ε'.
EnsembleState truncate(const EnsembleState& state, const Rational& eps);

/// Σ_λ |p_λ - p^ε_λ|, which equals 2ε' and is the trace distance of the
/// two (simultaneously diagonal) states. Exact mode only.
Rational trace_distance_truncated(const EnsembleState& state, const EnsembleState& truncated);

/// Same quantity in floating point; works in either mode.
double trace_distance_truncated_float(const EnsembleState& state, const EnsembleState& truncated);

struct MeasureReport {
  /// Common value of E_F = E_C = E_sq = E_D.
  double e_less;
  /// Common value of E_N = exact PPT cost.
  double e_greater;
  LogBase log_base;
  ArithmeticMode mode;
  CommutantSpec spec;
  Bipartition bipartition;
};

/// Bundles both measures; throws ConsistencyError if e_greater < e_less.
MeasureReport measure_report(const EnsembleState& state, LogBase base = LogBase::natural);

}  // namespace qfrag::measures
