#include "qfrag/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <future>
#include <sstream>

#include "qfrag/asymptotics.hpp"
#include "qfrag/errors.hpp"
#include "svg.hpp"

namespace qfrag::cli {

namespace {

using measures::ArithmeticMode;

// Evaluates `fn` on every point concurrently; results keep input order.
template <class Fn>
auto parallel_map(const std::vector<SweepPoint>& points, Fn fn) {
  using Result = decltype(fn(points.front()));
  std::vector<std::future<Result>> pending;
  pending.reserve(points.size());
  for (const auto& p : points) pending.push_back(std::async(std::launch::async, fn, p));
  std::vector<Result> out;
  out.reserve(points.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

std::string header_comment(const std::string& command, const SweepConfig& config) {
  return "# qfrag " + command + " sizes=" + to_string(config.size_convention) +
         " base=" + std::string(measures::to_string(config.base)) +
         " e_less=E_F=E_C=E_sq=E_D e_greater=E_N=E_C_PPT_exact\n";
}

measures::EnsembleState mmis_in_mode(const algebra::CommutantSpec& spec, const algebra::Bipartition& cut,
                                     ArithmeticMode mode) {
  return mode == ArithmeticMode::exact_rational ? measures::mmis(spec, cut) : asymptotics::mmis_log_space(spec, cut);
}

std::optional<asymptotics::ScalingLength> scaling_length(const algebra::Bipartition& cut) {
  if (cut.left() != cut.right()) return std::nullopt;
  return asymptotics::from_subsystem_sites(cut.left());
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 15);
  return std::string(buf, ptr);
}

std::string cmd_table(const SweepConfig& raw) {
  const auto config = normalized(raw);
  if (config.mode == ModeChoice::logspace) throw ValidationError("table is computed in exact arithmetic only");
  const auto points = expand(config);
  const auto blocks = parallel_map(points, [](const SweepPoint& p) {
    const auto table = algebra::sector_table(algebra::CommutantSpec(p.local_dim), p.bipartition);
    std::string rows;
    for (const auto& r : table.rows()) {
      rows += std::to_string(p.local_dim) + ',' + std::to_string(p.bipartition.left()) + ',' +
              std::to_string(p.bipartition.right()) + ',' + std::to_string(r.lambda) + ',' + r.qdim.str() + ',' +
              r.dim_left.str() + ',' + r.dim_right.str() + ',' + to_fraction_string(r.weight) + ',' +
              format_double(to_double(r.weight)) + '\n';
    }
    return rows;
  });
  std::string out = header_comment("table", config) + "N,L_A,L_B,lambda,d_lambda,D_A,D_B,p_exact,p_float\n";
  for (const auto& b : blocks) out += b;
  return out;
}

std::string cmd_measures(const SweepConfig& raw) {
  const auto config = normalized(raw);
  const auto points = expand(config);
  const auto rows = parallel_map(points, [&](const SweepPoint& p) {
    const algebra::CommutantSpec spec(p.local_dim);
    const auto mode = resolve_mode(config, p.bipartition);
    const auto report = measures::measure_report(mmis_in_mode(spec, p.bipartition, mode), config.base);
    return std::to_string(p.local_dim) + ',' + std::to_string(p.bipartition.left()) + ',' +
           std::to_string(p.bipartition.right()) + ',' + std::string(measures::to_string(report.mode)) + ',' +
           std::string(measures::to_string(report.log_base)) + ',' + format_double(report.e_less) + ',' +
           format_double(report.e_greater) + '\n';
  });
  std::string out = header_comment("measures", config) + "N,L_A,L_B,mode,base,e_less,e_greater\n";
  for (const auto& r : rows) out += r;
  return out;
}

ScanOutput cmd_scan(const SweepConfig& raw) {
  const auto config = normalized(raw);
  const auto points = expand(config);
  struct Row {
    SweepPoint point;
    measures::MeasureReport report;
    double less_asymp;
    double greater_asymp;
  };
  const auto rows = parallel_map(points, [&](const SweepPoint& p) {
    const algebra::CommutantSpec spec(p.local_dim);
    const auto mode = resolve_mode(config, p.bipartition);
    auto report = measures::measure_report(mmis_in_mode(spec, p.bipartition, mode), config.base);
    double less = kNan, greater = kNan;
    if (const auto length = scaling_length(p.bipartition)) {
      const auto est = asymptotics::estimate(*length, spec);
      less = measures::in_base(est.e_less_est, config.base);
      greater = measures::in_base(est.e_greater_est, config.base);
    }
    return Row{p, report, less, greater};
  });

  ScanOutput out;
  out.csv = header_comment("scan", config) +
            "N,L_total,L_A,L_B,mode,e_less,e_greater,e_less_asymp,e_greater_asymp\n";
  for (const auto& r : rows) {
    out.csv += std::to_string(r.point.local_dim) + ',' + std::to_string(r.point.bipartition.total()) + ',' +
               std::to_string(r.point.bipartition.left()) + ',' + std::to_string(r.point.bipartition.right()) + ',' +
               std::string(measures::to_string(r.report.mode)) + ',' + format_double(r.report.e_less) + ',' +
               format_double(r.report.e_greater) + ',' + format_double(r.less_asymp) + ',' +
               format_double(r.greater_asymp) + '\n';
  }

  if (!config.svg_path.empty()) {
    std::vector<PlotSeries> series;
    for (int n : config.local_dims) {
      PlotSeries less{"N=" + std::to_string(n) + " e_less"}, greater{"N=" + std::to_string(n) + " e_greater"};
      PlotSeries less_a{"N=" + std::to_string(n) + " e_less asymp", {}, {}, true};
      PlotSeries greater_a{"N=" + std::to_string(n) + " e_greater asymp", {}, {}, true};
      for (const auto& r : rows) {
        if (r.point.local_dim != n) continue;
        const double x = r.point.bipartition.total();
        less.x.push_back(x), less.y.push_back(r.report.e_less);
        greater.x.push_back(x), greater.y.push_back(r.report.e_greater);
        less_a.x.push_back(x), less_a.y.push_back(r.less_asymp);
        greater_a.x.push_back(x), greater_a.y.push_back(r.greater_asymp);
      }
      for (auto* s : {&less, &greater, &less_a, &greater_a}) series.push_back(std::move(*s));
    }
    out.svg = render_loglog_svg("MMIS half-chain entanglement", "chain length L_A + L_B",
                                "entanglement (" + std::string(config.base == measures::LogBase::natural ? "nats" : "bits") + ")",
                                series);
  }
  return out;
}

std::string cmd_truncate(const SweepConfig& raw) {
  const auto config = normalized(raw);
  if (config.eps.empty()) throw ValidationError("truncate needs at least one --eps value");
  const auto points = expand(config);
  const auto blocks = parallel_map(points, [&](const SweepPoint& p) {
    const algebra::CommutantSpec spec(p.local_dim);
    const auto mode = resolve_mode(config, p.bipartition);
    const auto full = mmis_in_mode(spec, p.bipartition, mode);
    const double full_greater = measures::e_greater(full);
    const auto length = scaling_length(p.bipartition);
    std::string rows;
    for (const auto& eps : config.eps) {
      const auto truncated = measures::truncate(full, eps);
      const auto& origin = std::get<measures::TruncatedOrigin>(truncated.provenance());
      const auto report = measures::measure_report(truncated, config.base);
      std::string tail, distance;
      if (mode == ArithmeticMode::exact_rational) {
        tail = to_fraction_string(*origin.tail_mass_exact);
        distance = to_fraction_string(measures::trace_distance_truncated(full, truncated));
      } else {
        tail = format_double(origin.tail_mass);
        distance = format_double(measures::trace_distance_truncated_float(full, truncated));
      }
      const double a = asymptotics::a_epsilon(to_double(eps));
      const double predicted = (length && !spec.is_su2())
                                   ? measures::in_base(a * std::log(spec.q()) * std::sqrt(2.0 * length->value),
                                                       config.base)
                                   : kNan;
      const double delta = measures::in_base(full_greater - measures::e_greater(truncated), config.base);
      rows += std::to_string(p.local_dim) + ',' + std::to_string(p.bipartition.total()) + ',' +
              std::to_string(p.bipartition.left()) + ',' + std::to_string(p.bipartition.right()) + ',' +
              to_fraction_string(eps) + ',' + std::to_string(origin.cutoff) + ',' + tail + ',' + distance + ',' +
              format_double(report.e_less) + ',' + format_double(report.e_greater) + ',' + format_double(a) + ',' +
              format_double(predicted) + ',' + format_double(delta) + '\n';
    }
    return rows;
  });
  std::string out = header_comment("truncate", config) +
                    "N,L_total,L_A,L_B,eps,A_eps,eps_actual,trace_distance,e_less_trunc,e_greater_trunc,a_eps,"
                    "e_greater_trunc_predicted,delta\n";
  for (const auto& b : blocks) out += b;
  return out;
}

std::string cmd_asymptote(const SweepConfig& raw) {
  const auto config = normalized(raw);
  const auto points = expand(config);
  std::string out = header_comment("asymptote", config) +
                    "N,L_total,L_A,L_B,scaling_L,q,e_less_est,e_greater_est,lambda_max,lambda_star\n";
  for (const auto& p : points) {
    const auto length = scaling_length(p.bipartition);
    if (!length) throw ValidationError("asymptotic estimates are defined for equal cuts only");
    const algebra::CommutantSpec spec(p.local_dim);
    const auto est = asymptotics::estimate(*length, spec);
    out += std::to_string(p.local_dim) + ',' + std::to_string(p.bipartition.total()) + ',' +
           std::to_string(p.bipartition.left()) + ',' + std::to_string(p.bipartition.right()) + ',' +
           format_double(length->value) + ',' + format_double(est.q) + ',' +
           format_double(measures::in_base(est.e_less_est, config.base)) + ',' +
           format_double(measures::in_base(est.e_greater_est, config.base)) + ',' + format_double(est.lambda_max) +
           ',' + format_double(est.lambda_star) + '\n';
  }
  return out;
}

}  // namespace qfrag::cli
