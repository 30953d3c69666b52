// Copyright 2025-2026 The trizx developers
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

#include "trizx/cli.hpp"

#include "trizx/diagram_json.hpp"
#include "trizx/gates.hpp"
#include "trizx/matrix.hpp"
#include "trizx/oracle.hpp"
#include "trizx/proofs.hpp"
#include "trizx/rules.hpp"
#include "trizx/synth.hpp"
#include "trizx/tensor.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

namespace trizx {
namespace cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

// Phase arguments are exact rationals ("3/2"); with --radians they are reals
// divided by 2*pi/3 and rounded to a denominator <= 96 rational.
Rational parse_phase_arg(const std::string& text, bool radians) {
  if (!radians) {
    const auto r = parse_rational(text);
    if (!r) throw UsageError("not a rational (use num/den): " + text);
    return *r;
  }
  double v = 0;
  try {
    v = std::stod(text);
  } catch (...) {
    throw UsageError("not a real number: " + text);
  }
  const double units = v / (2.0 * std::numbers::pi / 3.0);
  for (long den = 1; den <= 96; ++den) {
    const double num = units * static_cast<double>(den);
    const double rounded = std::round(num);
    if (std::abs(num - rounded) < 1e-12 * static_cast<double>(den)) {
      return Rational(BigInt(static_cast<long long>(rounded)), BigInt(den));
    }
  }
  throw UsageError("radian value is not within 1e-12 of a denominator-96 rational: " + text);
}

std::vector<Rational> parse_rational_list(const std::string& text, bool radians) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_phase_arg(item, radians));
  if (out.empty()) throw UsageError("empty rational list");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

struct BuildParams {
  int n = 2;
  int level = 2;
  Rational alpha{0};
  Rational beta{0};
  Rational theta{0};
  Rational phi{0};
  Rational eta{0};
  std::vector<Rational> alphas;
};

synth::SynthResult build_construction(const std::string& name, const BuildParams& p) {
  if (name == "phase-gadget") return synth::phase_gadget(p.n, p.alpha, p.beta);
  if (name == "square-phase") {
    Circuit c(1);
    c.push(synth::square_phase_gate(p.alpha));
    synth::SynthResult r;
    r.name = name;
    r.circuit = c;
    r.diagram = to_diagram(c);
    r.counts = count_resources(c);
    r.description = "Z(alpha,alpha) square phase";
    return r;
  }
  if (name == "controlled-phase") return synth::controlled_phase(p.theta, p.phi);
  if (name == "controlled-on")
    return synth::controlled_on(p.level, synth::controlled_phase(p.theta, p.phi));
  if (name == "square-control") return synth::square_control();
  if (name == "square-phase-pair") return synth::square_phase_pair(p.alpha);
  if (name == "phase-multiplier") return synth::phase_multiplier(p.n, p.alpha);
  if (name == "qubit-diag") return synth::emulate_qubit_diag(p.alphas);
  if (name == "ket2-qubit-phase") return synth::emulate_ket2_qubit_phase(p.eta);
  if (name == "ccu-emulation")
    return synth::emulate_ccu(synth::emulate_ket2_qubit_phase(p.eta));
  if (name == "ccz-emulation") return synth::emulate_ccz();
  throw UsageError("unknown construction '" + name + "'");
}

struct VerifyOutcome {
  bool pass = true;
  double max_residual = 0.0;
  std::vector<std::string> lines;

  void check(const std::string& what, bool ok, double residual) {
    pass = pass && ok;
    max_residual = std::max(max_residual, residual);
    lines.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what +
                    "  residual=" + fmt_residual(residual));
  }
};

double equiv_residual(const ScalarEquivalence& eq) { return eq.residual; }

VerifyOutcome verify_construction(const std::string& name, const BuildParams& p,
                                  const Circuit& circuit, const Diagram& diagram, double tol) {
  VerifyOutcome out;
  const Matrix mc = circuit_matrix(circuit);
  const Matrix md = eval(diagram);
  {
    const auto eq = scalar_equiv(mc, md, EquivMode::AnyNonzero, tol);
    out.check("circuit ~ diagram", eq.verdict != ScalarEquivalence::Verdict::Inequivalent,
              equiv_residual(eq));
  }
  const auto against = [&](const Matrix& target, const std::string& what) {
    const auto eq = scalar_equiv(mc, target, EquivMode::AnyNonzero, tol);
    out.check(what, eq.verdict != ScalarEquivalence::Verdict::Inequivalent, equiv_residual(eq));
  };
  if (name == "phase-gadget") {
    against(oracle::diag_matrix(oracle::gadget_spec(p.n, p.alpha, p.beta)), "circuit ~ oracle");
  } else if (name == "square-phase") {
    against(oracle::diag_matrix(oracle::gadget_spec(1, p.alpha, p.alpha)), "circuit ~ oracle");
  } else if (name == "controlled-phase" || name == "controlled-on") {
    const int level = name == "controlled-phase" ? 2 : p.level;
    const Gate target = Gate::controlled_on_level(level, 0, Gate::zphase(1, Phase(p.theta, p.phi)));
    against(gate_matrix(target), "circuit ~ oracle");
  } else if (name == "square-control") {
    against(oracle::square_control_matrix(), "circuit ~ oracle");
  } else if (name == "square-phase-pair") {
    const auto spec = oracle::DiagonalSpec::from_function(2, [&](const std::vector<int>& x) {
      const int t = (x[1] + x[0] * x[0]) % 3;
      return p.alpha * ((t * t) % 3);
    });
    against(oracle::diag_matrix(spec), "circuit ~ oracle");
  } else if (name == "phase-multiplier") {
    // The recursive construction realizes the left-nested integer product
    // exactly; the fully reduced product oracle coincides with it for
    // integer alpha (and on the qubit subspace for every alpha).
    against(oracle::diag_matrix(oracle::nested_multiplier_spec(p.n, p.alpha)),
            "circuit ~ nested-product oracle");
    if (is_integer(p.alpha))
      against(oracle::diag_matrix(oracle::multiplier_spec(p.n, p.alpha)),
              "circuit ~ reduced-product oracle");
  } else if (name == "qubit-diag") {
    const auto rep = oracle::check_emulation(mc, oracle::qubit_diag(p.alphas), tol);
    out.check("circuit emulates qubit diagonal", rep.pass, std::max(rep.residual, rep.leakage));
  } else if (name == "ket2-qubit-phase") {
    const auto rep = oracle::check_ket2_qubit_phase(mc, p.eta, tol);
    out.check("circuit emulates |2>-controlled qubit phase", rep.pass,
              std::max(rep.residual, rep.leakage));
  } else if (name == "ccu-emulation") {
    Matrix u(2, 2);
    u.setIdentity();
    u(1, 1) = omega_pow(p.eta);
    const auto rep = oracle::check_emulation(mc, oracle::qubit_ccu(u), tol);
    out.check("circuit emulates qubit CCU", rep.pass, std::max(rep.residual, rep.leakage));
  } else if (name == "ccz-emulation") {
    const auto rep = oracle::check_emulation(mc, oracle::qubit_ccz(), tol);
    out.check("circuit emulates qubit CCZ", rep.pass, std::max(rep.residual, rep.leakage));
    const auto rc = count_resources(circuit);
    out.check("R-count 3, T-count 0", rc.r_count == 3 && rc.t_count == 0, 0.0);
  } else {
    throw UsageError("unknown construction '" + name + "'");
  }
  return out;
}

json params_to_json(const BuildParams& p) {
  json j;
  j["n"] = p.n;
  j["level"] = p.level;
  j["alpha"] = format_rational(p.alpha);
  j["beta"] = format_rational(p.beta);
  j["theta"] = format_rational(p.theta);
  j["phi"] = format_rational(p.phi);
  j["eta"] = format_rational(p.eta);
  json as = json::array();
  for (const auto& a : p.alphas) as.push_back(format_rational(a));
  j["alphas"] = as;
  return j;
}

BuildParams params_from_json(const json& j) {
  BuildParams p;
  const auto rat = [](const json& v) {
    const auto r = parse_rational(v.get<std::string>());
    if (!r) throw ParseError("bad rational in meta.json");
    return *r;
  };
  p.n = j.at("n").get<int>();
  p.level = j.at("level").get<int>();
  p.alpha = rat(j.at("alpha"));
  p.beta = rat(j.at("beta"));
  p.theta = rat(j.at("theta"));
  p.phi = rat(j.at("phi"));
  p.eta = rat(j.at("eta"));
  for (const auto& a : j.at("alphas")) p.alphas.push_back(rat(a));
  return p;
}

json counts_to_json(const synth::SynthResult& r) {
  json j;
  j["t_count"] = r.counts.t_count;
  j["r_count"] = r.counts.r_count;
  j["nonclifford_phase_count"] = r.counts.nonclifford_phase_count;
  j["clifford_count"] = r.counts.clifford_count;
  j["undecomposed_controls"] = r.counts.undecomposed_controls;
  j["n_wires"] = r.circuit.n_wires;
  j["gates"] = r.circuit.gates.size();
  if (!r.term_signs.empty()) {
    j["term_count"] = r.term_signs.size();
    json signs = json::array();
    for (int s : r.term_signs) signs.push_back(s);
    j["term_signs"] = signs;
  }
  return j;
}

int cmd_build(const std::string& name, const BuildParams& p, const std::string& outdir,
              std::ostream& out) {
  const synth::SynthResult r = build_construction(name, p);
  fs::create_directories(outdir);
  write_file((fs::path(outdir) / "circuit.txt").string(), emit_circuit(r.circuit));
  write_file((fs::path(outdir) / "diagram.json").string(), serialize(r.diagram, 2) + "\n");
  write_file((fs::path(outdir) / "counts.json").string(), counts_to_json(r).dump(2) + "\n");
  json meta;
  meta["construction"] = name;
  meta["params"] = params_to_json(p);
  write_file((fs::path(outdir) / "meta.json").string(), meta.dump(2) + "\n");
  out << "built " << name << " into " << outdir << " (" << r.circuit.gates.size() << " gates, "
      << r.diagram.num_spiders() << " spiders)\n";
  return kExitOk;
}

int cmd_verify(const std::string& dir, double tol, std::ostream& out) {
  const json meta = json::parse(read_file((fs::path(dir) / "meta.json").string()));
  const std::string name = meta.at("construction").get<std::string>();
  const BuildParams p = params_from_json(meta.at("params"));
  const Circuit circuit = parse_circuit(read_file((fs::path(dir) / "circuit.txt").string()));
  const Diagram diagram = deserialize(read_file((fs::path(dir) / "diagram.json").string()));
  const VerifyOutcome v = verify_construction(name, p, circuit, diagram, tol);
  out << "verify " << name << " (tol " << tol << ")\n";
  for (const auto& line : v.lines) out << line << "\n";
  out << (v.pass ? "PASS" : "FAIL") << "  max residual " << fmt_residual(v.max_residual) << "\n";
  return v.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_count(const std::string& path, std::ostream& out) {
  Circuit c;
  if (fs::is_directory(path))
    c = parse_circuit(read_file((fs::path(path) / "circuit.txt").string()));
  else
    c = parse_circuit(read_file(path));
  const auto rc = count_resources(c);
  json j;
  j["t_count"] = rc.t_count;
  j["r_count"] = rc.r_count;
  j["nonclifford_phase_count"] = rc.nonclifford_phase_count;
  j["clifford_count"] = rc.clifford_count;
  j["undecomposed_controls"] = rc.undecomposed_controls;
  j["n_wires"] = c.n_wires;
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_simplify(const std::string& path, const std::string& outpath, std::ostream& out) {
  const Diagram d = deserialize(read_file(path));
  std::size_t steps = 0;
  const Diagram s = simplify(d, &steps);
  out << "simplify: " << d.num_spiders() << " -> " << s.num_spiders() << " spiders, "
      << d.num_hboxes() << " -> " << s.num_hboxes() << " H-boxes in " << steps << " steps\n";
  if (!outpath.empty()) write_file(outpath, serialize(s, 2) + "\n");
  else out << serialize(s, 2) << "\n";
  return kExitOk;
}

int cmd_verify_rules(int trials, std::uint64_t seed, std::ostream& out) {
  out << "rule soundness, " << trials << " trials each, seed " << seed << "\n";
  bool all = true;
  for (const auto& rep : verify_all_rules(trials, seed)) {
    all = all && rep.pass();
    out << "  " << rule_name(rep.rule) << "\t" << rep.trials << " trials\tmax residual "
        << fmt_residual(rep.max_residual) << "\t" << (rep.pass() ? "pass" : "FAIL") << "\n";
  }
  out << (all ? "PASS" : "FAIL") << "\n";
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_replay(const std::vector<std::string>& paths, bool builtin, std::ostream& out) {
  std::vector<ProofScript> scripts;
  if (builtin) scripts = builtin_proof_scripts();
  for (const auto& p : paths) scripts.push_back(load_proof_script(p));
  if (scripts.empty()) throw UsageError("no proof scripts given (pass files or --builtin)");
  bool all = true;
  for (const auto& s : scripts) {
    const auto rep = replay(s);
    out << s.name << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
    for (const auto& st : rep.steps)
      out << "  " << (st.ok ? "ok   " : "FAIL ") << st.description << "  residual "
          << fmt_residual(st.residual) << "\n";
    if (!rep.error.empty()) out << "  error: " << rep.error << "\n";
    all = all && rep.pass;
  }
  out << (all ? "PASS" : "FAIL") << "\n";
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_render(const std::string& path, const std::string& outpath, std::ostream& out) {
  const Diagram d = deserialize(read_file(path));
  const std::string dot = render_dot(d);
  if (!outpath.empty()) write_file(outpath, dot);
  else out << dot;
  return kExitOk;
}

int cmd_export(const std::string& path, const std::string& outpath, const std::string& format,
               std::ostream& out) {
  Matrix m;
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
    m = eval(deserialize(read_file(path)));
  else
    m = circuit_matrix(parse_circuit(read_file(path)));
  if (format == "npy") write_npy(outpath, m);
  else if (format == "csv") write_csv(outpath, m);
  else throw UsageError("unknown matrix format '" + format + "' (npy or csv)");
  out << "wrote " << m.rows() << "x" << m.cols() << " matrix to " << outpath << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"flexsymmetric qutrit ZX toolkit"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "synthesize a construction");
  std::string construction, outdir = "out";
  bool radians = false;
  std::string s_alpha = "0", s_beta = "0", s_theta = "0", s_phi = "0", s_eta = "0", s_alphas;
  BuildParams params;
  build->add_option("construction", construction, "construction name")->required();
  build->add_option("-n,--wires", params.n, "wire count");
  build->add_option("--level", params.level, "control level (0,1,2)");
  build->add_option("--alpha", s_alpha, "phase (rational, omega units)");
  build->add_option("--beta", s_beta, "phase");
  build->add_option("--theta", s_theta, "phase");
  build->add_option("--phi", s_phi, "phase");
  build->add_option("--eta", s_eta, "phase");
  build->add_option("--alphas", s_alphas, "comma-separated phase list");
  build->add_flag("--radians", radians, "interpret phases as radians");
  build->add_option("-o,--out", outdir, "output directory");

  // verify
  auto* verify = app.add_subcommand("verify", "check a built construction against its oracle");
  std::string verify_dir;
  double tol = kDefaultTol;
  verify->add_option("dir", verify_dir, "directory written by build")->required();
  verify->add_option("--tol", tol, "tolerance");

  // count
  auto* count = app.add_subcommand("count", "resource counts of a circuit");
  std::string count_path;
  count->add_option("path", count_path, "circuit.txt or build directory")->required();

  // simplify
  auto* simp = app.add_subcommand("simplify", "run the terminating rewrite pass");
  std::string simp_in, simp_out;
  simp->add_option("diagram", simp_in, "diagram JSON file")->required();
  simp->add_option("-o,--out", simp_out, "output JSON file");

  // verify-rules
  auto* vrules = app.add_subcommand("verify-rules", "numerical soundness of all rewrite rules");
  int trials = 200;
  std::uint64_t seed = 7;
  vrules->add_option("--trials", trials, "trials per rule");
  vrules->add_option("--seed", seed, "random seed");

  // replay-proof
  auto* rproof = app.add_subcommand("replay-proof", "replay derivation scripts");
  std::vector<std::string> proof_paths;
  bool builtin = false;
  rproof->add_option("scripts", proof_paths, "proof script JSON files");
  rproof->add_flag("--builtin", builtin, "replay the built-in derivations");

  // render
  auto* render = app.add_subcommand("render", "emit Graphviz DOT for a diagram");
  std::string render_in, render_out;
  bool dot = false;
  render->add_option("diagram", render_in, "diagram JSON file")->required();
  render->add_flag("--dot", dot, "DOT output (default)");
  render->add_option("-o,--out", render_out, "output file");

  // export-matrix
  auto* exp = app.add_subcommand("export-matrix", "evaluate to a dense matrix file");
  std::string exp_in, exp_out, exp_fmt = "npy";
  exp->add_option("input", exp_in, "diagram JSON or circuit text file")->required();
  exp->add_option("-o,--out", exp_out, "output file")->required();
  exp->add_option("--format", exp_fmt, "npy or csv");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*build) {
      params.alpha = parse_phase_arg(s_alpha, radians);
      params.beta = parse_phase_arg(s_beta, radians);
      params.theta = parse_phase_arg(s_theta, radians);
      params.phi = parse_phase_arg(s_phi, radians);
      params.eta = parse_phase_arg(s_eta, radians);
      if (!s_alphas.empty()) params.alphas = parse_rational_list(s_alphas, radians);
      if (construction == "phase-multiplier" && params.n < 2)
        throw UsageError("phase-multiplier requires n >= 2");
      if (construction == "phase-gadget" && params.n < 1)
        throw UsageError("phase-gadget requires n >= 1");
      if (params.level < 0 || params.level > 2) throw UsageError("level must be 0, 1 or 2");
      return cmd_build(construction, params, outdir, out);
    }
    if (*verify) return cmd_verify(verify_dir, tol, out);
    if (*count) return cmd_count(count_path, out);
    if (*simp) return cmd_simplify(simp_in, simp_out, out);
    if (*vrules) return cmd_verify_rules(trials, seed, out);
    if (*rproof) return cmd_replay(proof_paths, builtin, out);
    if (*render) return cmd_render(render_in, render_out, out);
    if (*exp) return cmd_export(exp_in, exp_out, exp_fmt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitUsage;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace cli
}  // namespace trizx
