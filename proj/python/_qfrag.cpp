#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "qfrag/algebra.hpp"
#include "qfrag/asymptotics.hpp"
#include "qfrag/cli/commands.hpp"
#include "qfrag/cli/config.hpp"
#include "qfrag/errors.hpp"
#include "qfrag/measures.hpp"

namespace py = pybind11;
using namespace qfrag;
using algebra::Bipartition;
using algebra::CommutantSpec;

namespace {

py::object to_py(const BigInt& value) { return py::module_::import("builtins").attr("int")(value.str()); }

py::object to_py(const Rational& value) {
  return py::module_::import("fractions").attr("Fraction")(to_fraction_string(value));
}

Rational to_rational(const py::handle& value) { return parse_rational(py::str(value).cast<std::string>()); }

measures::ArithmeticMode pick_mode(const std::string& mode, const Bipartition& cut) {
  cli::SweepConfig config;
  config.mode = cli::parse_mode(mode);
  return cli::resolve_mode(config, cut);
}

measures::EnsembleState make_mmis(int n, int left, int right, const std::string& mode) {
  const CommutantSpec spec(n);
  const Bipartition cut(left, right);
  if (pick_mode(mode, cut) == measures::ArithmeticMode::exact_rational) return measures::mmis(spec, cut);
  return asymptotics::mmis_log_space(spec, cut);
}

cli::SweepConfig make_config(const std::vector<int>& n, const std::vector<std::int64_t>& sizes,
                             const std::string& cut, const std::vector<py::object>& eps, const std::string& mode,
                             const std::string& base, const std::string& size_convention, std::size_t mem_cap) {
  cli::SweepConfig config;
  config.local_dims = n;
  config.sizes = sizes;
  if (!cut.empty()) config.cut = cli::parse_cut(cut);
  for (const auto& e : eps) config.eps.push_back(to_rational(e));
  config.mode = cli::parse_mode(mode);
  config.base = cli::parse_base(base);
  config.size_convention = cli::parse_size_convention(size_convention);
  config.mem_cap = mem_cap;
  return config;
}

}  // namespace

PYBIND11_MODULE(_qfrag, m) {
  m.doc() = "Entanglement measures of Temperley-Lieb fragmented chains";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<VerificationFailure>(m, "VerificationFailure", PyExc_RuntimeError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ArithmeticError);

  m.def("q_from_N", &algebra::q_from_N, py::arg("N"));
  m.def("qdim", [](int lambda, int n) { return to_py(algebra::qdim(lambda, n)); }, py::arg("lam"), py::arg("N"));
  m.def("krylov_dim", [](int lambda, int sites) { return to_py(algebra::krylov_dim(lambda, sites)); },
        py::arg("lam"), py::arg("sites"));

  m.def(
      "sector_table",
      [](int n, int left, int right) {
        const auto table = algebra::sector_table(CommutantSpec(n), Bipartition(left, right));
        py::list rows;
        for (const auto& r : table.rows()) {
          py::dict row;
          row["lambda"] = r.lambda;
          row["d"] = to_py(r.qdim);
          row["D_A"] = to_py(r.dim_left);
          row["D_B"] = to_py(r.dim_right);
          row["p"] = to_py(r.weight);
          rows.append(row);
        }
        return rows;
      },
      py::arg("N"), py::arg("left"), py::arg("right"));

  m.def(
      "measures",
      [](int n, int left, int right, const std::string& mode, const std::string& base) {
        const auto report = measures::measure_report(make_mmis(n, left, right, mode), cli::parse_base(base));
        py::dict out;
        out["e_less"] = report.e_less;
        out["e_greater"] = report.e_greater;
        out["mode"] = std::string(measures::to_string(report.mode));
        return out;
      },
      py::arg("N"), py::arg("left"), py::arg("right"), py::arg("mode") = "auto", py::arg("base") = "e");

  m.def(
      "truncate",
      [](int n, int left, int right, const py::object& eps, const std::string& mode) {
        const auto full = make_mmis(n, left, right, mode);
        const auto trunc = measures::truncate(full, to_rational(eps));
        const auto& origin = std::get<measures::TruncatedOrigin>(trunc.provenance());
        py::dict out;
        out["cutoff"] = origin.cutoff;
        if (origin.tail_mass_exact) {
          out["eps_actual"] = to_py(*origin.tail_mass_exact);
          out["trace_distance"] = to_py(measures::trace_distance_truncated(full, trunc));
        } else {
          out["eps_actual"] = origin.tail_mass;
          out["trace_distance"] = measures::trace_distance_truncated_float(full, trunc);
        }
        out["e_less"] = measures::e_less(trunc);
        out["e_greater"] = measures::e_greater(trunc);
        out["e_greater_full"] = measures::e_greater(full);
        return out;
      },
      py::arg("N"), py::arg("left"), py::arg("right"), py::arg("eps"), py::arg("mode") = "auto");

  m.def("e_less_asymp", [](double l, int n) { return asymptotics::e_less_asymp({l}, algebra::q_from_N(n)); },
        py::arg("L"), py::arg("N"));
  m.def("e_greater_asymp", [](double l, int n) { return asymptotics::e_greater_asymp({l}, algebra::q_from_N(n)); },
        py::arg("L"), py::arg("N"));
  m.def("e_su2_asymp", [](double l) { return asymptotics::e_su2_asymp({l}); }, py::arg("L"));
  m.def("truncation_tail", &asymptotics::truncation_tail, py::arg("a"));
  m.def("a_epsilon", &asymptotics::a_epsilon, py::arg("eps"));

  m.def(
      "run",
      [](const std::string& command, const std::vector<int>& n, const std::vector<std::int64_t>& sizes,
         const std::string& cut, const std::vector<py::object>& eps, const std::string& mode, const std::string& base,
         const std::string& size_convention, std::size_t mem_cap, bool svg) -> py::object {
        auto config = make_config(n, sizes, cut, eps, mode, base, size_convention, mem_cap);
        py::gil_scoped_release release;
        std::string text;
        if (command == "table") text = cli::cmd_table(config);
        else if (command == "measures") text = cli::cmd_measures(config);
        else if (command == "truncate") text = cli::cmd_truncate(config);
        else if (command == "asymptote") text = cli::cmd_asymptote(config);
        else if (command == "verify") text = cli::cmd_verify(config).dump();
        else if (command == "scan") {
          if (svg) config.svg_path = "scan.svg";
          auto out = cli::cmd_scan(config);
          py::gil_scoped_acquire acquire;
          return py::make_tuple(out.csv, out.svg);
        } else
          throw ValidationError("unknown command: " + command);
        py::gil_scoped_acquire acquire;
        return py::str(text);
      },
      py::arg("command"), py::arg("n") = std::vector<int>{}, py::arg("sizes") = std::vector<std::int64_t>{},
      py::arg("cut") = "", py::arg("eps") = std::vector<py::object>{}, py::arg("mode") = "auto",
      py::arg("base") = "e", py::arg("size_convention") = "total", py::arg("mem_cap") = oracle::kDefaultDimensionCap,
      py::arg("svg") = false);
}
