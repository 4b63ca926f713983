#include <cmath>
#include <future>

#include "qfrag/cli/commands.hpp"
#include "qfrag/errors.hpp"
#include "qfrag/oracle.hpp"

namespace qfrag::cli {

namespace {

using algebra::Bipartition;
using oracle::CheckResult;

struct Job {
  int local_dim;
  int sites;
  std::vector<Bipartition> cuts;
};

struct Outcome {
  const Job* job;
  std::optional<Bipartition> cut;
  CheckResult check;
};

// Balanced even cut first, then one asymmetric even cut if the chain has one.
std::vector<Bipartition> default_cuts(int sites) {
  const int half = 2 * (sites / 4);
  std::vector<Bipartition> cuts{Bipartition(half, sites - half)};
  if (sites >= 6) {
    Bipartition skew(2, sites - 2);
    if (skew == cuts.front()) skew = Bipartition(sites - 2, 2);
    cuts.push_back(skew);
  }
  return cuts;
}

std::vector<Job> plan(const SweepConfig& config) {
  std::vector<Job> jobs;
  if (config.sizes.empty() && !config.cut) {
    const std::vector<int> dims = config.local_dims.empty() ? std::vector<int>{2, 3} : config.local_dims;
    for (int n : dims) {
      const int top = n == 2 ? 10 : 8;
      for (int sites = 4; sites <= top; sites += 2)
        if (oracle::product_dim(n, sites) <= config.mem_cap) jobs.push_back(Job{n, sites, default_cuts(sites)});
    }
    if (jobs.empty()) throw ResourceError("memory cap leaves no instance of the default suite");
    return jobs;
  }
  if (config.local_dims.empty()) throw ValidationError("no local dimension given (--n)");
  if (config.cut) {
    for (const auto& p : expand(config)) {
      const int sites = p.bipartition.total();
      if (!jobs.empty() && jobs.back().local_dim == p.local_dim && jobs.back().sites == sites)
        jobs.back().cuts.push_back(p.bipartition);
      else
        jobs.push_back(Job{p.local_dim, sites, {p.bipartition}});
    }
    return jobs;
  }
  for (int n : config.local_dims)
    for (auto size : config.sizes) {
      const auto sites = config.size_convention == SizeConvention::half ? 2 * size : size;
      if (sites % 2 != 0 || sites < 4 || sites > 64)
        throw ValidationError("verify needs even chain lengths of at least 4, got " + std::to_string(sites));
      jobs.push_back(Job{n, static_cast<int>(sites), default_cuts(static_cast<int>(sites))});
    }
  return jobs;
}

double sparse_max_abs(const oracle::SparseOperator& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (oracle::SparseOperator::InnerIterator it(m, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

CheckResult tl_relations(int n, int sites) {
  CheckResult result{"tl_relations"};
  std::vector<oracle::SparseOperator> e;
  for (int j = 1; j < sites; ++j) e.push_back(oracle::tl_generator(j, n, sites));
  double worst = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    worst = std::max(worst, sparse_max_abs(oracle::SparseOperator(e[j] * e[j] - double(n) * e[j])));
    if (j + 1 < e.size()) {
      worst = std::max(worst, sparse_max_abs(oracle::SparseOperator(e[j] * e[j + 1] * e[j] - e[j])));
      worst = std::max(worst, sparse_max_abs(oracle::SparseOperator(e[j + 1] * e[j] * e[j + 1] - e[j + 1])));
    }
    for (std::size_t k = j + 2; k < e.size(); ++k)
      worst = std::max(worst, sparse_max_abs(oracle::SparseOperator(e[j] * e[k] - e[k] * e[j])));
  }
  result.max_abs_deviation = worst;
  result.pass = worst <= 1e-12;
  result.detail = "e^2 = N e, e_j e_{j±1} e_j = e_j, [e_j, e_k] = 0 for |j-k| >= 2";
  return result;
}

CheckResult density_matrix(const oracle::DenseOperator& rho, const oracle::KrylovBasis& basis, const BigInt& d0) {
  const auto& m = rho.entries();
  const double inv_d0 = 1.0 / to_double(Rational(d0));
  const double trace_dev = std::abs(m.trace() - 1.0);
  const double sym_dev = (m - m.transpose()).cwiseAbs().maxCoeff();
  const double purity_dev = std::abs(m.squaredNorm() - inv_d0);
  const double projector_dev = (m * basis.vectors - inv_d0 * basis.vectors).cwiseAbs().maxCoeff();
  CheckResult result{"density_matrix"};
  result.max_abs_deviation = std::max({trace_dev, sym_dev, purity_dev, projector_dev});
  result.pass = trace_dev <= 1e-12 && sym_dev <= 1e-12 && purity_dev <= 1e-10 && projector_dev <= 1e-10;
  result.detail = "trace " + format_double(trace_dev) + ", symmetry " + format_double(sym_dev) + ", purity " +
                  format_double(purity_dev) + ", rho v = v/D_0 " + format_double(projector_dev);
  return result;
}

template <class Fn>
CheckResult guarded(const std::string& name, Fn fn) {
  try {
    return fn();
  } catch (const ResourceError&) {
    throw;
  } catch (const std::exception& e) {
    return CheckResult{name, false, std::numeric_limits<double>::infinity(), e.what()};
  }
}

std::vector<Outcome> run_job(const Job& job, const SweepConfig& config, const VerifyOptions& options) {
  std::vector<Outcome> out;
  auto record = [&](std::optional<Bipartition> cut, CheckResult check) { out.push_back({&job, cut, std::move(check)}); };
  const algebra::CommutantSpec spec(job.local_dim);
  const BigInt d0 = algebra::krylov_dim(0, job.sites);

  record(std::nullopt, guarded("tl_relations", [&] { return tl_relations(job.local_dim, job.sites); }));

  std::optional<oracle::KrylovBasis> basis;
  record(std::nullopt, guarded("krylov_dimension", [&] {
           basis = oracle::krylov_subspace(job.local_dim, job.sites, config.mem_cap);
           const double dev = std::abs(double(basis->size()) - to_double(Rational(d0)));
           return CheckResult{"krylov_dimension", dev == 0.0, dev,
                              std::to_string(basis->size()) + " vectors, Catalan(L/2) = " + d0.str()};
         }));
  if (!basis) return out;

  auto rho = oracle::mmis_dense(*basis);
  if (options.inject_normalization_fault) {
    const double d = to_double(Rational(d0));
    rho.entries() *= d / (d - 1.0);
  }
  record(std::nullopt, guarded("density_matrix", [&] { return density_matrix(rho, *basis, d0); }));

  if (job.sites == 4) {
    record(Bipartition(2, 2), guarded("singlet_entropy", [&] {
             const auto v = oracle::singlet_orthogonal_to_seed(*basis);
             const double s = oracle::entanglement_entropy(std::span<const double>(v.data(), v.size()), job.local_dim,
                                                           Bipartition(2, 2));
             const double expected = log_of(algebra::qdim(1, job.local_dim));
             const double dev = std::abs(s - expected);
             return CheckResult{"singlet_entropy", dev <= 1e-9, dev,
                                "S = " + format_double(s) + ", log d_1 = " + format_double(expected)};
           }));
  }

  const std::vector<Rational> eps_list = config.eps.empty() ? std::vector<Rational>{Rational(1, 10)} : config.eps;
  for (const auto& cut : job.cuts) {
    const auto table = algebra::sector_table(spec, cut);
    const auto state = measures::mmis(spec, cut);
    std::optional<oracle::PartialTransposeAnalysis> analysis;
    std::string analysis_error;
    try {
      analysis = oracle::analyze_partial_transpose(rho, cut, true);
    } catch (const std::exception& e) {
      analysis_error = e.what();
    }
    if (!analysis) {
      for (const char* name : {"log_negativity_match", "negativity_spectrum", "binegativity"})
        record(cut, CheckResult{name, false, std::numeric_limits<double>::infinity(), analysis_error});
      continue;
    }

    record(cut, guarded("log_negativity_match", [&] {
             const double dense = std::log(analysis->trace_norm());
             const double closed = measures::e_greater(state);
             const double dev = std::abs(dense - closed);
             return CheckResult{"log_negativity_match", dev <= 1e-8, dev,
                                "dense " + format_double(dense) + ", closed form " + format_double(closed)};
           }));
    record(cut, guarded("negativity_spectrum", [&] {
             auto r = oracle::negativity_spectrum_check(*analysis, table);
             r.name = "negativity_spectrum";
             return r;
           }));
    record(cut, guarded("binegativity", [&] {
             auto r = oracle::binegativity_check(*analysis);
             r.name = "binegativity";
             return r;
           }));
    for (const auto& eps : eps_list) {
      const auto truncated = measures::truncate(state, eps);
      const auto& origin = std::get<measures::TruncatedOrigin>(truncated.provenance());
      if (origin.cutoff >= cut.max_label()) continue;
      record(cut, guarded("truncation_trace_distance", [&] {
               const auto rho_eps = oracle::truncated_dense(*analysis, table, origin.cutoff);
               const double dense = oracle::trace_distance(rho, rho_eps);
               const double exact = to_double(measures::trace_distance_truncated(state, truncated));
               const double dev = std::abs(dense - exact);
               return CheckResult{"truncation_trace_distance", dev <= 1e-8, dev,
                                  "eps " + to_fraction_string(eps) + ", A_eps " + std::to_string(origin.cutoff) +
                                      ", dense " + format_double(dense) + ", 2 eps' " + format_double(exact)};
             }));
    }
  }
  return out;
}

}  // namespace

nlohmann::json cmd_verify(const SweepConfig& raw, const VerifyOptions& options) {
  const auto config = normalized(raw);
  const auto jobs = plan(config);
  for (const auto& job : jobs)
    if (oracle::product_dim(job.local_dim, job.sites) > config.mem_cap || oracle::product_dim(job.local_dim, job.sites) == 0)
      throw ResourceError("N^L = " + std::to_string(job.local_dim) + "^" + std::to_string(job.sites) +
                          " exceeds the memory cap " + std::to_string(config.mem_cap));

  std::vector<std::future<std::vector<Outcome>>> pending;
  for (const auto& job : jobs)
    pending.push_back(std::async(std::launch::async, [&job, &config, &options] { return run_job(job, config, options); }));

  nlohmann::json checks = nlohmann::json::array();
  bool all_pass = true;
  for (auto& f : pending)
    for (const auto& o : f.get()) {
      all_pass = all_pass && o.check.pass;
      const auto cut = o.cut.value_or(Bipartition(2 * (o.job->sites / 4), o.job->sites - 2 * (o.job->sites / 4)));
      checks.push_back({{"check", o.check.name},
                        {"N", o.job->local_dim},
                        {"L", o.job->sites},
                        {"L_A", o.cut ? nlohmann::json(cut.left()) : nlohmann::json(nullptr)},
                        {"L_B", o.cut ? nlohmann::json(cut.right()) : nlohmann::json(nullptr)},
                        {"pass", o.check.pass},
                        {"max_abs_deviation", std::isfinite(o.check.max_abs_deviation)
                                                  ? nlohmann::json(o.check.max_abs_deviation)
                                                  : nlohmann::json(nullptr)},
                        {"detail", o.check.detail}});
    }
  return {{"schema", 1}, {"all_pass", all_pass}, {"size_convention", to_string(config.size_convention)},
          {"checks", checks}};
}

}  // namespace qfrag::cli
