#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qfrag/cli/commands.hpp"
#include "qfrag/errors.hpp"

namespace {

using namespace qfrag;
using namespace qfrag::cli;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"qfrag: entanglement of fragmented invariant states"};
  app.set_version_flag("--version", "qfrag 1.0.0");

  std::string command;
  std::vector<int> local_dims;
  std::vector<std::int64_t> sizes;
  std::string cut, mode, base, out_path, svg_path, config_path;
  std::vector<std::string> eps;
  std::size_t mem_cap = 0;
  std::int64_t logspace_above = 0;
  bool sizes_total = false, sizes_half = false, inject_fault = false;

  app.add_option("command", command, "table | measures | scan | truncate | asymptote | verify")
      ->required()
      ->check(CLI::IsMember({"table", "measures", "scan", "truncate", "asymptote", "verify"}));
  auto* n_opt = app.add_option("--n", local_dims, "local dimension(s) N >= 2");
  auto* sizes_opt = app.add_option("--sizes", sizes, "chain sizes");
  auto* total_flag = app.add_flag("--sizes-are-total", sizes_total, "sizes are whole-chain lengths (default)");
  auto* half_flag = app.add_flag("--sizes-are-half", sizes_half, "sizes are sites per side of an equal cut");
  total_flag->excludes(half_flag);
  auto* cut_opt = app.add_option("--cut", cut, "a:b ratio with --sizes, or an explicit cut without");
  auto* eps_opt = app.add_option("--eps", eps, "truncation thresholds (fractions or decimals)");
  auto* mode_opt = app.add_option("--mode", mode, "exact | logspace | auto");
  auto* base_opt = app.add_option("--base", base, "e | 2");
  auto* out_opt = app.add_option("--out", out_path, "output file (stdout if omitted)");
  auto* svg_opt = app.add_option("--svg", svg_path, "SVG plot path (scan)");
  auto* cap_opt = app.add_option("--mem-cap", mem_cap, "largest dense dimension N^L for verify");
  auto* above_opt = app.add_option("--logspace-above", logspace_above, "auto mode: log space above this L_A + L_B");
  app.add_option("--config", config_path, "key = value config file; flags win");
  app.add_flag("--inject-normalization-fault", inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  SweepConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ValidationError("cannot read config '" + config_path + "'");
    config = read_config(in);
  }
  if (n_opt->count()) config.local_dims = local_dims;
  if (sizes_opt->count()) config.sizes = sizes;
  if (*total_flag) config.size_convention = SizeConvention::total;
  if (*half_flag) config.size_convention = SizeConvention::half;
  if (cut_opt->count()) config.cut = parse_cut(cut);
  if (eps_opt->count()) {
    config.eps.clear();
    for (const auto& e : eps) config.eps.push_back(parse_rational(e));
  }
  if (mode_opt->count()) config.mode = parse_mode(mode);
  if (base_opt->count()) config.base = parse_base(base);
  if (out_opt->count()) config.out_path = out_path;
  if (svg_opt->count()) config.svg_path = svg_path;
  if (cap_opt->count()) config.mem_cap = mem_cap;
  if (above_opt->count()) config.logspace_above = logspace_above;

  if (command == "table") {
    write_text(config.out_path, cmd_table(config));
  } else if (command == "measures") {
    write_text(config.out_path, cmd_measures(config));
  } else if (command == "scan") {
    const auto result = cmd_scan(config);
    write_text(config.out_path, result.csv);
    if (!config.svg_path.empty()) write_text(config.svg_path, result.svg);
  } else if (command == "truncate") {
    write_text(config.out_path, cmd_truncate(config));
  } else if (command == "asymptote") {
    write_text(config.out_path, cmd_asymptote(config));
  } else {
    const auto report = cmd_verify(config, VerifyOptions{inject_fault});
    write_text(config.out_path, report.dump(2) + "\n");
    return report.at("all_pass").get<bool>() ? kSuccess : kVerificationFailed;
  }
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qfrag::ValidationError& e) {
    std::cerr << "qfrag: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const qfrag::DomainError& e) {
    std::cerr << "qfrag: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const qfrag::ResourceError& e) {
    std::cerr << "qfrag: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "qfrag: " << e.what() << '\n';
    return kVerificationFailed;
  }
}
