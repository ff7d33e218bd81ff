#pragma once

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mbsym/integrators.hpp"
#include "mbsym/verify.hpp"

// Command-line front end. run() is the whole program; main() only forwards to it.
// Exit codes: 0 ok, 2 usage, 3 numerical failure, 4 verification failure.

namespace mbsym::cli {

using model::InvariantId;
using model::SystemId;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitVerify = 4;

inline constexpr const char* kVersion = "1.0.0";

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Shortest-safe round-trip form: 17 significant digits, '.' separator.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw UsageError("not a number: '" + std::string(s) + "'");
  return v;
}

inline std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_double(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline SystemId parse_system(const std::string& s) {
  if (s == "mb5") return SystemId::MB5;
  if (s == "ham6") return SystemId::HAM6;
  if (s == "el6") return SystemId::EL6;
  throw UsageError("unknown system '" + s + "' (expected mb5, ham6 or el6)");
}

inline integrators::IntegratorId parse_method(const std::string& s) {
  if (s == "rk4") return integrators::IntegratorId::RK4;
  if (s == "midpoint") return integrators::IntegratorId::IMPLICIT_MIDPOINT;
  throw UsageError("unknown method '" + s + "' (expected rk4 or midpoint)");
}

inline std::vector<double> checked_init(SystemId system, const std::string& text) {
  auto init = parse_list(text);
  const auto n = model::dimension(system);
  if (init.size() != n) {
    throw UsageError("--init for " + std::string(model::to_string(system)) + " expects " + std::to_string(n) +
                     " values, got " + std::to_string(init.size()));
  }
  return init;
}

/// Header columns of the simulate CSV.
inline std::vector<std::string> csv_columns(SystemId system) {
  std::vector<std::string> cols{"t"};
  for (const auto& n : model::vars_of(system).names()) cols.push_back(n);
  if (system == SystemId::MB5) {
    cols.insert(cols.end(), {"H", "C", "J"});
  } else {
    cols.insert(cols.end(), {"Htilde", "Ctilde", "Jtilde"});
  }
  return cols;
}

/// Conserved quantities for a state; el6 states go through the Legendre map.
inline std::array<double, 3> row_invariants(SystemId system, std::span<const double> s) {
  using model::InvariantId;
  if (system == SystemId::MB5) {
    return {model::invariant(InvariantId::H, SystemId::MB5, s), model::invariant(InvariantId::C, SystemId::MB5, s),
            model::invariant(InvariantId::J, SystemId::MB5, s)};
  }
  std::array<double, 6> p{};
  if (system == SystemId::EL6) {
    p = model::legendre(model::TangentState6::from(s)).to_array();
  } else {
    std::copy(s.begin(), s.end(), p.begin());
  }
  return {model::invariant(InvariantId::Htilde, SystemId::HAM6, p),
          model::invariant(InvariantId::Ctilde, SystemId::HAM6, p),
          model::invariant(InvariantId::Jtilde, SystemId::HAM6, p)};
}

inline void write_csv(std::ostream& os, const integrators::Trajectory& traj, std::size_t every) {
  const SystemId system = *traj.system;
  const auto cols = csv_columns(system);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  const std::size_t last = traj.states.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    if (k % every != 0 && k != last) continue;
    os << format_double(traj.times[k]);
    for (double v : traj.states[k]) os << ',' << format_double(v);
    for (double v : row_invariants(system, traj.states[k])) os << ',' << format_double(v);
    os << '\n';
  }
}

/// Reads a simulate CSV back into a trajectory (system inferred from the header).
inline integrators::Trajectory read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw UsageError("empty CSV input");
  std::optional<SystemId> system;
  for (auto s : {SystemId::MB5, SystemId::HAM6, SystemId::EL6}) {
    std::string header;
    for (const auto& c : csv_columns(s)) header += (header.empty() ? "" : ",") + c;
    if (line == header) system = s;
  }
  if (!system) throw UsageError("unrecognized CSV header: " + line);
  integrators::Trajectory traj;
  traj.system = system;
  const auto n = model::dimension(*system);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto values = parse_list(line);
    if (values.size() != n + 4) throw UsageError("malformed CSV row: " + line);
    traj.times.push_back(values[0]);
    traj.states.emplace_back(values.begin() + 1, values.begin() + 1 + static_cast<long>(n));
  }
  if (traj.states.empty()) throw UsageError("CSV input has no rows");
  return traj;
}

inline nlohmann::json table_json(const poisson::CommutatorTable& t, const std::string& prefix) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < t.dim(); ++i) {
    for (std::size_t j = i + 1; j < t.dim(); ++j) {
      nlohmann::json terms = nlohmann::json::object();
      for (std::size_t k = 0; k < t.dim(); ++k) {
        if (!t.at(i, j, k).is_zero()) terms[prefix + std::to_string(k + 1)] = t.at(i, j, k).str();
      }
      out["[" + prefix + std::to_string(i + 1) + "," + prefix + std::to_string(j + 1) + "]"] = terms;
    }
  }
  return out;
}

struct Options {
  // simulate / invariants
  std::string system = "mb5";
  std::string method = "rk4";
  std::string init;
  std::string in_path;
  std::string out_path;
  double t_end = 0.0;
  double h = 0.0;
  std::size_t every = 1;
  // verify
  std::string suite = "all";
  std::string corrupt_pi;
  std::size_t corrupt_family = 0;
  // bracket-table
  std::string algebra = "all";
  // solve-symmetries
  int max_degree = 2;
};

inline int cmd_simulate(const Options& o, std::ostream& out) {
  const SystemId system = parse_system(o.system);
  const auto method = parse_method(o.method);
  const auto init = checked_init(system, o.init);
  if (!(o.t_end > 0.0)) throw UsageError("--t-end must be positive");
  if (!(o.h > 0.0)) throw UsageError("--h must be positive");
  if (o.every < 1) throw UsageError("--every must be >= 1");
  const auto traj = integrators::integrate(method, system, init, 0.0, o.t_end, o.h);
  if (o.out_path.empty()) {
    write_csv(out, traj, o.every);
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw UsageError("cannot open " + o.out_path);
    write_csv(f, traj, o.every);
  }
  return kExitOk;
}

inline int cmd_invariants(const Options& o, std::ostream& out) {
  nlohmann::json j;
  if (!o.in_path.empty()) {
    std::ifstream f(o.in_path);
    if (!f) throw UsageError("cannot open " + o.in_path);
    auto traj = read_csv(f);
    const SystemId system = *traj.system;
    if (system == SystemId::EL6) {
      for (auto& s : traj.states) {
        const auto p = model::legendre(model::TangentState6::from(s)).to_array();
        s.assign(p.begin(), p.end());
      }
      traj.system = SystemId::HAM6;
    }
    const std::vector<InvariantId> ids =
        *traj.system == SystemId::MB5 ? std::vector{InvariantId::H, InvariantId::C, InvariantId::J}
                                      : std::vector{InvariantId::Htilde, InvariantId::Ctilde, InvariantId::Jtilde};
    const auto report = integrators::drift_report(traj, ids);
    j["system"] = model::to_string(system);
    j["rows"] = traj.states.size();
    for (const auto& d : report.drifts) {
      j["drift"][std::string(model::to_string(d.id))] = {{"initial", d.initial},
                                                         {"max_abs_deviation", d.max_abs_deviation},
                                                         {"max_relative_deviation", d.max_relative_deviation()},
                                                         {"final_deviation", d.final_deviation}};
    }
  } else {
    if (o.init.empty()) throw UsageError("invariants needs --init or --in");
    const SystemId system = parse_system(o.system);
    const auto init = checked_init(system, o.init);
    const auto values = row_invariants(system, init);
    const auto names = csv_columns(system);
    j["system"] = model::to_string(system);
    for (std::size_t i = 0; i < 3; ++i) j["values"][names[names.size() - 3 + i]] = values[i];
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

inline verify::Fixture fixture_from(const Options& o) {
  verify::Fixture fx;
  if (!o.corrupt_pi.empty()) {
    const auto rc = parse_list(o.corrupt_pi);
    if (rc.size() != 2 || rc[0] < 1 || rc[0] > 5 || rc[1] < 1 || rc[1] > 5 || rc[0] != static_cast<int>(rc[0]) ||
        rc[1] != static_cast<int>(rc[1])) {
      throw UsageError("--corrupt-pi expects ROW,COL with entries in 1..5");
    }
    auto& e = fx.pi(static_cast<std::size_t>(rc[0]) - 1, static_cast<std::size_t>(rc[1]) - 1);
    e = -e;
  }
  if (o.corrupt_family != 0) {
    if (o.corrupt_family > fx.family.size()) {
      throw UsageError("--corrupt-family expects a term index in 1.." + std::to_string(fx.family.size()));
    }
    fx.family = symmetry::flip_family_term(fx.family, o.corrupt_family - 1);
  }
  return fx;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const auto& names = verify::suite_names();
  if (o.suite != "all" && std::find(names.begin(), names.end(), o.suite) == names.end()) {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  const auto reports = verify::run_suite(o.suite, fixture_from(o));
  out << nlohmann::json(reports).dump(2) << '\n';
  return verify::all_passed(reports) ? kExitOk : kExitVerify;
}

inline int cmd_bracket_table(const Options& o, std::ostream& out) {
  nlohmann::json j;
  if (o.algebra == "all" || o.algebra == "e") j["E"] = table_json(poisson::matrix_commutator_table(poisson::e_basis()), "E");
  if (o.algebra == "all" || o.algebra == "a") j["A"] = table_json(poisson::matrix_commutator_table(poisson::a_basis()), "A");
  if (o.algebra == "all" || o.algebra == "u") {
    const auto b = symmetry::paper_basis();
    j["u"] = table_json(symmetry::algebra_table({b.begin(), b.end()}), "u");
  }
  if (j.is_null()) throw UsageError("unknown algebra '" + o.algebra + "' (expected e, a, u or all)");
  out << j.dump(2) << '\n';
  return kExitOk;
}

inline int cmd_solve_symmetries(const Options& o, std::ostream& out) {
  if (o.max_degree < 1) throw UsageError("--max-degree must be >= 1");
  const auto d = static_cast<std::uint32_t>(o.max_degree);
  const auto sol = symmetry::solve_determining(d);
  const auto expected = symmetry::paper_basis();
  const bool matches = symmetry::same_span(sol.basis, {expected.begin(), expected.end()}, std::max<std::uint32_t>(d, 1));
  nlohmann::json j;
  j["max_degree"] = sol.max_degree;
  j["unknowns"] = sol.unknowns;
  j["equations"] = sol.equations;
  j["dimension"] = sol.basis.size();
  j["basis"] = nlohmann::json::array();
  for (const auto& u : sol.basis) {
    j["basis"].push_back({{"xi", u.xi.str()}, {"eta1", u.eta[0].str()}, {"eta2", u.eta[1].str()},
                          {"eta3", u.eta[2].str()}});
  }
  j["expected_dimension"] = 4;
  j["matches_u1_u4"] = matches;
  out << j.dump(2) << '\n';
  return sol.basis.size() == 4 && matches ? kExitOk : kExitVerify;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Symbolic certificates and integrators for the 5D Maxwell-Bloch system", "mbsym"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto* sim = app.add_subcommand("simulate", "Integrate a system and write a CSV trajectory");
  sim->add_option("--system", o.system, "mb5 | ham6 | el6")->required();
  sim->add_option("--method", o.method, "rk4 | midpoint")->required();
  sim->add_option("--init", o.init, "comma-separated initial state")->required();
  sim->add_option("--t-end", o.t_end, "final time")->required();
  sim->add_option("--h", o.h, "step size")->required();
  sim->add_option("--out", o.out_path, "output file (default stdout)");
  sim->add_option("--every", o.every, "write every N-th row");

  auto* inv = app.add_subcommand("invariants", "Evaluate conserved quantities at a point or along a CSV");
  inv->add_option("--system", o.system, "mb5 | ham6 | el6");
  inv->add_option("--init", o.init, "comma-separated state");
  inv->add_option("--in", o.in_path, "CSV written by simulate");

  auto* ver = app.add_subcommand("verify", "Run symbolic verification suites and print a JSON report");
  ver->add_option("--suite", o.suite, "poisson | cocycle | realization | algebra | symmetry | variational | noether | "
                                      "pushforward | all");
  ver->add_option("--corrupt-pi", o.corrupt_pi)->group("");
  ver->add_option("--corrupt-family", o.corrupt_family)->group("");

  auto* bt = app.add_subcommand("bracket-table", "Print commutator tables as JSON");
  bt->add_option("--algebra", o.algebra, "e | a | u | all");

  auto* ss = app.add_subcommand("solve-symmetries", "Solve the determining equations within a polynomial ansatz");
  ss->add_option("--max-degree", o.max_degree, "total degree bound in (t, q)");

  auto* ver_cmd = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*sim) return cmd_simulate(o, out);
    if (*inv) return cmd_invariants(o, out);
    if (*ver) return cmd_verify(o, out);
    if (*bt) return cmd_bracket_table(o, out);
    if (*ss) return cmd_solve_symmetries(o, out);
    if (*ver_cmd) {
      out << "mbsym " << kVersion << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mbsym::cli
