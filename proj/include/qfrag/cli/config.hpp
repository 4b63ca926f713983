#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfrag/algebra.hpp"
#include "qfrag/exact.hpp"
#include "qfrag/measures.hpp"
#include "qfrag/oracle.hpp"

namespace qfrag::cli {

/// How entries of `sizes` are read: whole chain (the 4L of a 2L:2L cut) or
/// the number of sites on each side of an equal cut.
enum class SizeConvention { total, half };
enum class ModeChoice { exact, logspace, automatic };

struct Cut {
  int left;
  int right;
  friend bool operator==(const Cut&, const Cut&) = default;
};

struct SweepConfig {
  std::vector<int> local_dims;
  std::vector<std::int64_t> sizes;
  SizeConvention size_convention = SizeConvention::total;
  /// With sizes: ratio left:right applied to each total. Without: an explicit cut.
  std::optional<Cut> cut;
  std::vector<Rational> eps;
  ModeChoice mode = ModeChoice::automatic;
  measures::LogBase base = measures::LogBase::natural;
  std::string out_path;
  std::string svg_path;
  std::size_t mem_cap = oracle::kDefaultDimensionCap;
  /// automatic mode switches to log space when L_A + L_B exceeds this.
  std::int64_t logspace_above = 2048;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// One (N, bipartition) work item; `size` echoes the configured size entry.
struct SweepPoint {
  int local_dim;
  std::int64_t size;
  algebra::Bipartition bipartition;
};

std::string to_string(SizeConvention convention);
std::string to_string(ModeChoice mode);
SizeConvention parse_size_convention(const std::string& text);
ModeChoice parse_mode(const std::string& text);
measures::LogBase parse_base(const std::string& text);
Cut parse_cut(const std::string& text);

/// Flat `key = value` text; `#` starts a comment; list values are separated
/// by spaces or commas. Keys: n, sizes, size-convention, cut, eps, mode,
/// base, out, svg, mem-cap, logspace-above.
SweepConfig read_config(std::istream& in);
void write_config(std::ostream& out, const SweepConfig& config);

/// Sorts sizes ascending, drops duplicates and rejects anything the sweep
/// cannot run. Throws ValidationError.
SweepConfig normalized(SweepConfig config);

/// Expands the config into work items in (N, size) order.
std::vector<SweepPoint> expand(const SweepConfig& config);

measures::ArithmeticMode resolve_mode(const SweepConfig& config, const algebra::Bipartition& bipartition);

}  // namespace qfrag::cli
