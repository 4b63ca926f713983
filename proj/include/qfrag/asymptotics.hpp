#pragma once

#include <cstdint>

#include "qfrag/algebra.hpp"
#include "qfrag/measures.hpp"

namespace qfrag::asymptotics {

using algebra::Bipartition;
using algebra::CommutantSpec;

/// The length L of a 4L-site chain cut into two 2L-site halves.
///
/// All closed-form large-L estimates are written in terms of this L, while
/// the rest of the library counts sites per subsystem. Convert only through
/// the helpers below.
struct ScalingLength {
  double value;
};

/// Equal cut with `subsystem_sites` sites on each side: L = sites / 2.
ScalingLength from_subsystem_sites(std::int64_t subsystem_sites);
/// Equal cut of a `chain_sites`-site chain: L = sites / 4.
ScalingLength from_chain_sites(std::int64_t chain_sites);
/// Sites on each side of the equal cut: 2L.
std::int64_t subsystem_sites(ScalingLength length);

/// Stirling form of the MMIS weight,
/// p_λ ≈ (8√2/√π) λ² / L^{3/2} · exp(-2λ²/L), valid for 1 << λ << L.
double p_lambda_asymp(double lambda, ScalingLength length);
/// True when λ sits inside the regime where the Stirling form is meaningful.
bool in_asymptotic_regime(double lambda, ScalingLength length);

/// Mode of the weight distribution, √(L/2).
double lambda_max(ScalingLength length);
/// Maximizer of p_λ q^{2λ}, L log(q) / 2.
double lambda_star(ScalingLength length, double q);

/// log(q) √(2L). Requires q > 1.
double e_less_asymp(ScalingLength length, double q);
/// (log² q / 2) L. Requires q > 1.
double e_greater_asymp(ScalingLength length, double q);
/// ½ log L, the SU(2) leading term (no additive constant).
double e_su2_asymp(ScalingLength length);

struct AsymptoticEstimate {
  ScalingLength length;
  double q;
  double e_less_est;
  double e_greater_est;
  double lambda_max;
  double lambda_star;
};

/// Bundles the estimates. For N = 2 both measures use e_su2_asymp and
/// lambda_star is 0.
AsymptoticEstimate estimate(ScalingLength length, const CommutantSpec& spec);

/// Continuum tail mass above a·λ_max: (2a e^{-a²} + √π erfc a) / √π.
double truncation_tail(double a);

/// Solves truncation_tail(a) = eps by bisection on [0, 10] to 1e-10.
double a_epsilon(double eps);

/// log D_λ on `sites` sites from log-gamma; no big integers involved.
double log_krylov_dim(int lambda, std::int64_t sites);
/// log d_λ = log [2λ+1]_q from the closed form in q (log(2λ+1) when q = 1).
double log_qdim(int lambda, double q);

/// MMIS weights in log space; usable far beyond big-rational sizes.
/// Throws ConsistencyError if exp(log p) sums away from 1 by more than 1e-8.
measures::EnsembleState mmis_log_space(const CommutantSpec& spec, const Bipartition& bipartition);

/// MMIS measures evaluated in log space: e_less as a weighted sum and
/// e_greater by log-sum-exp over log p_λ + log d_λ.
measures::MeasureReport large_L_measures(const CommutantSpec& spec, const Bipartition& bipartition,
                                         measures::LogBase base = measures::LogBase::natural);

}  // namespace qfrag::asymptotics
