#include "qfrag/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "qfrag/errors.hpp"

namespace qfrag::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::string spaced = value;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::vector<std::string> out;
  for (std::string item; in >> item;) out.push_back(item);
  return out;
}

template <class Int>
Int parse_int(const std::string& text, const std::string& key) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ValidationError("bad integer '" + text + "' for " + key);
  return value;
}

}  // namespace

std::string to_string(SizeConvention convention) { return convention == SizeConvention::total ? "total" : "half"; }

std::string to_string(ModeChoice mode) {
  switch (mode) {
    case ModeChoice::exact: return "exact";
    case ModeChoice::logspace: return "logspace";
    case ModeChoice::automatic: return "auto";
  }
  return "auto";
}

SizeConvention parse_size_convention(const std::string& text) {
  if (text == "total") return SizeConvention::total;
  if (text == "half") return SizeConvention::half;
  throw ValidationError("size convention must be total or half, got '" + text + "'");
}

ModeChoice parse_mode(const std::string& text) {
  if (text == "exact") return ModeChoice::exact;
  if (text == "logspace") return ModeChoice::logspace;
  if (text == "auto") return ModeChoice::automatic;
  throw ValidationError("mode must be exact, logspace or auto, got '" + text + "'");
}

measures::LogBase parse_base(const std::string& text) {
  if (text == "e") return measures::LogBase::natural;
  if (text == "2") return measures::LogBase::binary;
  throw ValidationError("log base must be e or 2, got '" + text + "'");
}

Cut parse_cut(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("cut must look like a:b, got '" + text + "'");
  return Cut{parse_int<int>(trim(text.substr(0, colon)), "cut"), parse_int<int>(trim(text.substr(colon + 1)), "cut")};
}

SweepConfig read_config(std::istream& in) {
  SweepConfig config;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "n") {
      config.local_dims.clear();
      for (const auto& item : split_list(value)) config.local_dims.push_back(parse_int<int>(item, key));
    } else if (key == "sizes") {
      config.sizes.clear();
      for (const auto& item : split_list(value)) config.sizes.push_back(parse_int<std::int64_t>(item, key));
    } else if (key == "size-convention") {
      config.size_convention = parse_size_convention(value);
    } else if (key == "cut") {
      config.cut = value.empty() ? std::nullopt : std::optional<Cut>(parse_cut(value));
    } else if (key == "eps") {
      config.eps.clear();
      for (const auto& item : split_list(value)) config.eps.push_back(parse_rational(item));
    } else if (key == "mode") {
      config.mode = parse_mode(value);
    } else if (key == "base") {
      config.base = parse_base(value);
    } else if (key == "out") {
      config.out_path = value;
    } else if (key == "svg") {
      config.svg_path = value;
    } else if (key == "mem-cap") {
      config.mem_cap = parse_int<std::size_t>(value, key);
    } else if (key == "logspace-above") {
      config.logspace_above = parse_int<std::int64_t>(value, key);
    } else {
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return config;
}

void write_config(std::ostream& out, const SweepConfig& config) {
  auto join = [](const auto& items, auto render) {
    std::string s;
    for (const auto& item : items) {
      if (!s.empty()) s += ' ';
      s += render(item);
    }
    return s;
  };
  out << "n = " << join(config.local_dims, [](int v) { return std::to_string(v); }) << '\n';
  out << "sizes = " << join(config.sizes, [](std::int64_t v) { return std::to_string(v); }) << '\n';
  out << "size-convention = " << to_string(config.size_convention) << '\n';
  out << "cut = " << (config.cut ? std::to_string(config.cut->left) + ":" + std::to_string(config.cut->right) : "")
      << '\n';
  out << "eps = " << join(config.eps, [](const Rational& r) { return to_fraction_string(r); }) << '\n';
  out << "mode = " << to_string(config.mode) << '\n';
  out << "base = " << measures::to_string(config.base) << '\n';
  out << "out = " << config.out_path << '\n';
  out << "svg = " << config.svg_path << '\n';
  out << "mem-cap = " << config.mem_cap << '\n';
  out << "logspace-above = " << config.logspace_above << '\n';
}

SweepConfig normalized(SweepConfig config) {
  for (int n : config.local_dims)
    if (n < 2) throw ValidationError("local dimension must be >= 2, got " + std::to_string(n));
  std::sort(config.local_dims.begin(), config.local_dims.end());
  config.local_dims.erase(std::unique(config.local_dims.begin(), config.local_dims.end()), config.local_dims.end());
  for (auto s : config.sizes)
    if (s <= 0) throw ValidationError("sizes must be positive, got " + std::to_string(s));
  std::sort(config.sizes.begin(), config.sizes.end());
  config.sizes.erase(std::unique(config.sizes.begin(), config.sizes.end()), config.sizes.end());
  for (const auto& e : config.eps)
    if (e <= 0 || e >= 1) throw ValidationError("eps must lie in (0,1), got " + to_fraction_string(e));
  if (config.cut && (config.cut->left <= 0 || config.cut->right <= 0))
    throw ValidationError("cut entries must be positive");
  if (config.cut && !config.sizes.empty() && config.size_convention == SizeConvention::half)
    throw ValidationError("a cut ratio needs total sizes; half sizes always mean an equal cut");
  return config;
}

std::vector<SweepPoint> expand(const SweepConfig& config) {
  if (config.local_dims.empty()) throw ValidationError("no local dimension given (--n)");
  std::vector<SweepPoint> points;
  for (int n : config.local_dims) {
    if (config.sizes.empty()) {
      if (!config.cut) throw ValidationError("empty size list and no explicit --cut");
      points.push_back(SweepPoint{n, config.cut->left + config.cut->right,
                                  algebra::Bipartition(config.cut->left, config.cut->right)});
      continue;
    }
    for (auto size : config.sizes) {
      if (size > std::int64_t{1} << 30) throw ValidationError("size " + std::to_string(size) + " is too large");
      if (config.size_convention == SizeConvention::half) {
        const auto s = static_cast<int>(size);
        points.push_back(SweepPoint{n, size, algebra::Bipartition(s, s)});
        continue;
      }
      const Cut ratio = config.cut.value_or(Cut{1, 1});
      const std::int64_t parts = ratio.left + ratio.right;
      if ((size * ratio.left) % parts != 0)
        throw ValidationError("size " + std::to_string(size) + " does not split in ratio " +
                              std::to_string(ratio.left) + ":" + std::to_string(ratio.right));
      const auto left = static_cast<int>(size * ratio.left / parts);
      points.push_back(SweepPoint{n, size, algebra::Bipartition(left, static_cast<int>(size) - left)});
    }
  }
  return points;
}

measures::ArithmeticMode resolve_mode(const SweepConfig& config, const algebra::Bipartition& bipartition) {
  switch (config.mode) {
    case ModeChoice::exact: return measures::ArithmeticMode::exact_rational;
    case ModeChoice::logspace: return measures::ArithmeticMode::log_space_float;
    case ModeChoice::automatic: break;
  }
  return bipartition.total() > config.logspace_above ? measures::ArithmeticMode::log_space_float
                                                     : measures::ArithmeticMode::exact_rational;
}

}  // namespace qfrag::cli
