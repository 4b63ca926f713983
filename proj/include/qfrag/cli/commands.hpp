#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qfrag/cli/config.hpp"

namespace qfrag::cli {

/// Exit status of every qfrag command.
enum ExitCode : int { kSuccess = 0, kInvalidInput = 1, kVerificationFailed = 2 };

/// 15 significant digits, locale independent; "nan"/"inf" for non-finite.
std::string format_double(double value);

/// Per-λ sector table: N,L_A,L_B,lambda,d_lambda,D_A,D_B,p_exact,p_float.
std::string cmd_table(const SweepConfig& config);

/// One row per point: N,L_A,L_B,mode,base,e_less,e_greater.
std::string cmd_measures(const SweepConfig& config);

struct ScanOutput {
  std::string csv;
  std::string svg;  // empty unless config.svg_path is set
};

/// N,L_total,L_A,L_B,mode,e_less,e_greater,e_less_asymp,e_greater_asymp.
ScanOutput cmd_scan(const SweepConfig& config);

/// N,L_total,L_A,L_B,eps,A_eps,eps_actual,trace_distance,e_less_trunc,
/// e_greater_trunc,a_eps,e_greater_trunc_predicted,delta.
std::string cmd_truncate(const SweepConfig& config);

/// N,L_total,L_A,L_B,scaling_L,q,e_less_est,e_greater_est,lambda_max,lambda_star.
std::string cmd_asymptote(const SweepConfig& config);

struct VerifyOptions {
  /// Test hook: normalize ρ by D_0 - 1 instead of D_0.
  bool inject_normalization_fault = false;
};

/// Runs the dense oracle suite. Empty sizes select the default suite
/// (N = 2: L = 4..10, N = 3: L = 4..8; sizes are total chain lengths).
/// Report schema 1: {"schema", "all_pass", "size_convention", "checks": [...]}.
nlohmann::json cmd_verify(const SweepConfig& config, const VerifyOptions& options = {});

}  // namespace qfrag::cli
