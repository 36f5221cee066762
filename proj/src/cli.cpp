// Copyright 2026 The mpindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpindex/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mpindex/fock.hpp"
#include "mpindex/io.hpp"
#include "mpindex/verify.hpp"

namespace mpindex {

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kBadInput = 2;

struct Globals {
  std::optional<double> tol;
  std::uint64_t seed = VerifyOptions{}.seed;
  int cutoff = 0;
  bool json_out = false, csv_out = false;
  std::string out_path;
};

struct Output {
  std::string text;
  int code = kOk;
};

// thrown for requests that parse but make no sense for the chosen subcommand
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string point_str(const LatticePoint& p) { return "(" + std::to_string(p[0]) + " " + std::to_string(p[1]) + ")"; }

std::string points_str(const std::vector<LatticePoint>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : ";") + point_str(p);
  return s;
}

json read_input(const std::string& path, std::istream& in) {
  if (path == "-") return json::parse(in);
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open input file '" + path + "'");
  return json::parse(f);
}

json classes_json(const std::vector<ClassRepresentative>& classes) {
  json out = json::array();
  for (const auto& c : classes) out.push_back({{"z", to_json(c.z)}, {"g", to_json(c.g)}});
  return out;
}

Output emit(const Globals& g, const json& j, int code = kOk) {
  if (g.csv_out) throw UsageError("this command has no CSV form");
  return {dump_deterministic(j, -1) + "\n", code};
}

// ---- subcommands

Output cmd_psi(const Globals& g, const json& req) {
  const int k = req.at("k").get<int>();
  const auto args = algebra_list_from_json(req.at("args"));
  if (k < 0) throw ValidationError("psi: k must be nonnegative");
  require_dims(args.size() == static_cast<std::size_t>(2 * k + 1), "psi: need 2k+1 arguments");
  json out{{"k", k}};
  if (k > args.front().modes()) {
    out["value"] = to_json(Complex{});
    out["reason"] = "k exceeds fixed-space dimension";
    out["contributing_classes"] = json::array();
    return emit(g, out);
  }
  const auto res = psi_with_classes(k, args);
  out["value"] = to_json(res.value);
  out["contributing_classes"] = classes_json(res.classes);
  return emit(g, out);
}

Output cmd_phi(const Globals& g, const json& req) {
  const Monomial anchor = monomial_from_json(req.at("anchor"));
  const auto args = algebra_list_from_json(req.at("args"));
  if (args.empty()) throw ValidationError("phi: no arguments");
  require_dims(args.front().modes() == anchor.modes(), "phi: anchor and arguments differ in mode count");
  const Complex v = phi_cocycle(anchor.z, anchor.g, args);
  return emit(g, {{"k", static_cast<int>(args.size()) - 1}, {"value", to_json(v)}});
}

Output cmd_pair(const Globals& g, const json& req) {
  const auto entries = algebra_list_from_json(req.at("entries"));
  int size = req.value("size", 0);
  if (size == 0) {
    while (static_cast<std::size_t>(size * size) < entries.size()) ++size;
  }
  require_dims(entries.size() == static_cast<std::size_t>(size * size), "pair: need size^2 entries");
  const Complex v = pair_with_projection(ProjectionMatrix(size, entries));
  const double nearest = std::round(v.real()), defect = std::abs(v - nearest);
  json out{{"value", to_json(v)}, {"nearest_integer", nearest}, {"integrality_defect", defect}};
  int code = kOk;
  if (g.tol) {
    out["tolerance"] = *g.tol;
    if (defect > *g.tol) code = kCheckFailed;
  }
  return emit(g, out, code);
}

Output cmd_torus(const Globals& g, const json& req) {
  const int k = req.at("k").get<int>();
  const auto args = algebra_list_from_json(req.at("args"));
  const Complex t = torus_psi(k, args), general = psi(k, args);
  const double tol = g.tol.value_or(1e-10), diff = std::abs(t - general);
  json out{{"k", k}, {"value", to_json(t)}, {"general", to_json(general)}, {"difference", diff}, {"tolerance", tol}};
  return emit(g, out, diff <= tol ? kOk : kCheckFailed);
}

Output cmd_orbifold(const Globals& g, int order, double k, const std::string& what, const std::string& input,
                    std::istream& in) {
  const OrbifoldSpec spec{order, k};
  spec.validate();
  const auto classes = enumerate_classes(spec);
  std::ostringstream csv;
  json out{{"order", order}, {"k", k}};
  if (what == "classes") {
    if (!input.empty()) throw UsageError("orbifold classes takes no input");
    csv << "z_repr_lattice_coords,alpha,sublattice_gen1,sublattice_gen2,offsets,complement_flag\n";
    json rows = json::array();
    for (const auto& c : classes) {
      const bool fixed = c.alpha == 0;
      const auto& pts = fixed ? c.orbit : c.offsets;
      const std::string g1 = fixed ? "" : point_str(c.sublattice.gen1()), g2 = fixed ? "" : point_str(c.sublattice.gen2());
      csv << '"' << point_str(c.representative) << "\"," << c.alpha << ",\"" << g1 << "\",\"" << g2 << "\",\""
          << points_str(pts) << "\"," << (c.complement ? 1 : 0) << "\n";
      json row{{"z_repr_lattice_coords", to_json(c.representative)}, {"alpha", c.alpha}, {"complement_flag", c.complement}};
      row["offsets"] = json::array();
      for (const auto& p : pts) row["offsets"].push_back(to_json(p));
      row["sublattice_gen1"] = fixed ? json(nullptr) : to_json(c.sublattice.gen1());
      row["sublattice_gen2"] = fixed ? json(nullptr) : to_json(c.sublattice.gen2());
      rows.push_back(row);
    }
    out["classes"] = rows;
  } else {
    const AlgebraElement f = orbifold_element_from_json(spec, read_input(input.empty() ? "-" : input, in));
    const auto traces = orbifold_traces(spec, f);
    csv << "z_repr_lattice_coords,alpha,trace_re,trace_im\n";
    json rows = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      csv << '"' << point_str(classes[i].representative) << "\"," << classes[i].alpha << "," << fmt(traces[i].real())
          << "," << fmt(traces[i].imag()) << "\n";
      rows.push_back({{"z_repr_lattice_coords", to_json(classes[i].representative)},
                      {"alpha", classes[i].alpha},
                      {"trace", to_json(traces[i])}});
    }
    out["traces"] = rows;
  }
  // classes default to CSV, traces to JSON
  const bool as_csv = g.csv_out || (what == "classes" && !g.json_out);
  if (as_csv) return {csv.str(), kOk};
  return {dump_deterministic(out, -1) + "\n", kOk};
}

Output cmd_oracle(const Globals& g, const json& req) {
  std::vector<Monomial> ms;
  for (const auto& m : req.at("monomials")) ms.push_back(monomial_from_json(m));
  if (ms.empty() || ms.size() % 2 == 0) throw DimensionError("oracle: need an odd number of monomials");
  const int n = ms.front().modes();
  for (const auto& m : ms) require_dims(m.modes() == n, "oracle: monomials differ in mode count");
  if (req.contains("n") && req["n"].get<int>() != n) throw DimensionError("oracle: n disagrees with the monomials");
  const int k = req.value("k", static_cast<int>(ms.size() / 2));
  OracleOptions opts;
  opts.cutoff = g.cutoff > 0 ? g.cutoff : req.value("cutoff", 0);
  if (req.contains("t_grid")) opts.t_grid = req["t_grid"].get<std::vector<double>>();
  if (req.contains("powers")) opts.powers = req["powers"].get<std::vector<double>>();
  opts.sentinel = req.value("sentinel", true);
  const auto r = psi_oracle(k, ms, opts);
  const Complex closed = psi_monomial(k, ms);
  const double rel = std::abs(r.value - closed) / std::max(std::abs(closed), 1e-2);
  const double tol = g.tol.value_or(1e-2);

  json samples = json::array();
  for (std::size_t i = 0; i < r.t_grid.size(); ++i)
    samples.push_back({r.t_grid[i], r.samples[i].real(), r.samples[i].imag()});
  json coeffs = json::array();
  for (const auto& c : r.fit.coeffs) coeffs.push_back(to_json(c));
  json out{{"k", k},
           {"n", n},
           {"cutoff", r.cutoff},
           {"samples", samples},
           {"fit", {{"powers", r.fit.powers}, {"coeffs", coeffs}, {"residual", r.fit.residual}, {"condition", r.fit.condition}}},
           {"value", to_json(r.value)},
           {"closed_form", to_json(closed)},
           {"relative_error", rel},
           {"tolerance", tol},
           {"unitarity_defect", r.unitarity_defect},
           {"convention", "kernel of D^2 kept in heat traces"}};
  out["warnings"] = r.warnings;
  if (r.truncation_estimate) out["truncation_estimate"] = *r.truncation_estimate;
  const int code = rel <= tol ? kOk : kCheckFailed;
  if (g.csv_out) {
    std::ostringstream csv;
    csv << "t,re,im\n";
    for (std::size_t i = 0; i < r.t_grid.size(); ++i)
      csv << fmt(r.t_grid[i]) << "," << fmt(r.samples[i].real()) << "," << fmt(r.samples[i].imag()) << "\n";
    return {csv.str(), code};
  }
  return {dump_deterministic(out, -1) + "\n", code};
}

Output cmd_verify(const Globals& g, const std::string& suite, bool timing) {
  VerifyOptions opts;
  opts.seed = g.seed;
  opts.tolerance = g.tol;
  opts.cutoff = g.cutoff;
  opts.timing = timing;
  const RunReport rep = run_suite(suite, opts);
  const int code = rep.passed() ? kOk : kCheckFailed;
  if (g.csv_out) {
    std::ostringstream csv;
    csv << "check,measured,relation,tolerance,samples,passed\n";
    for (const auto& c : rep.checks)
      csv << '"' << c.name << "\"," << fmt(c.measured) << "," << (c.relation == Check::Relation::AtMost ? "<=" : ">=")
          << "," << fmt(c.tolerance) << "," << c.samples << "," << (c.passed ? 1 : 0) << "\n";
    return {csv.str(), code};
  }
  return {dump_deterministic(rep.to_json(), -1) + "\n", code};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"mpindex: cocycle evaluation, orbifold tables and oracle checks"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "tolerance for the command's checks");
  app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--cutoff", g.cutoff, "Fock cutoff for oracle runs (0: default)");
  auto* json_flag = app.add_flag("--json", g.json_out, "JSON output");
  app.add_flag("--csv", g.csv_out, "CSV output")->excludes(json_flag);
  app.add_option("--out", g.out_path, "write output to this file");

  std::string input = "-";
  auto input_opt = [&input](CLI::App* sub) {
    sub->add_option("-i,--input", input, "JSON request file, - for stdin")->capture_default_str();
  };
  auto* psi_cmd = app.add_subcommand("psi", "cocycle component Psi_2k");
  auto* phi_cmd = app.add_subcommand("phi", "localized cocycle Phi_k at an anchor (z0, g0)");
  auto* pair_cmd = app.add_subcommand("pair", "pairing with a projection matrix");
  auto* torus_cmd = app.add_subcommand("torus", "torus formula against the general cocycle");
  auto* oracle_cmd = app.add_subcommand("oracle", "Fock space heat-trace oracle against the closed form");
  for (auto* s : {psi_cmd, phi_cmd, pair_cmd, torus_cmd, oracle_cmd}) input_opt(s);

  auto* orb_cmd = app.add_subcommand("orbifold", "Z4 / Z6 orbifold class tables and traces");
  int order = 4;
  double k = 1.0;
  std::string what = "classes", orb_input;
  orb_cmd->add_option("--order", order, "4 or 6")->required()->check(CLI::IsMember({4, 6}));
  orb_cmd->add_option("--k", k, "lattice scale")->capture_default_str();
  orb_cmd->add_option("--what", what, "classes or traces")->check(CLI::IsMember({"classes", "traces"}))->capture_default_str();
  orb_cmd->add_option("-i,--input", orb_input, "element for traces, - for stdin");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  bool timing = false;
  std::string suites;
  for (const auto& s : suite_names()) suites += (suites.empty() ? "" : ", ") + s;
  verify_cmd->add_option("suite", suite, suites)->required();
  verify_cmd->add_flag("--timing", timing, "record wall time and enforce runtime limits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }
  if (*tol_opt) {
    if (!(tol >= 0.0)) {
      err << "error: --tol must be nonnegative\n";
      return kBadInput;
    }
    g.tol = tol;
  }

  Output result;
  try {
    if (*psi_cmd) result = cmd_psi(g, read_input(input, in));
    else if (*phi_cmd) result = cmd_phi(g, read_input(input, in));
    else if (*pair_cmd) result = cmd_pair(g, read_input(input, in));
    else if (*torus_cmd) result = cmd_torus(g, read_input(input, in));
    else if (*oracle_cmd) result = cmd_oracle(g, read_input(input, in));
    else if (*orb_cmd) result = cmd_orbifold(g, order, k, what, orb_input, in);
    else result = cmd_verify(g, suite, timing);
  } catch (const json::exception& e) {
    err << "error: bad JSON: " << e.what() << "\n";
    return kBadInput;
  } catch (const SizingError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {  // validation, dimension and usage errors
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  if (!g.out_path.empty()) {
    std::ofstream f(g.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << g.out_path << "'\n";
      return kBadInput;
    }
    f << result.text;
  } else {
    out << result.text;
  }
  if (result.code == kCheckFailed) err << "check failed\n";
  return result.code;
}

}  // namespace mpindex
