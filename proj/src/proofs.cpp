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

#include "trizx/proofs.hpp"

#include "trizx/diagram_json.hpp"
#include "trizx/matrix.hpp"
#include "trizx/tensor.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <functional>
#include <sstream>

namespace trizx {

namespace {

using json = nlohmann::ordered_json;

}  // namespace

std::string proof_script_to_json(const ProofScript& script) {
  json doc;
  doc["name"] = script.name;
  doc["target_rule"] = script.target_rule;
  doc["target_match"] = script.target_match;
  doc["start"] = json::parse(serialize(script.start));
  json steps = json::array();
  for (const ProofStep& s : script.steps)
    steps.push_back({{"rule", s.rule}, {"reverse", s.reverse}, {"match", s.match_index}});
  doc["steps"] = steps;
  return doc.dump(2);
}

void save_proof_script(const ProofScript& script, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_proof_script: cannot open " + path);
  f << proof_script_to_json(script) << "\n";
}

ProofScript load_proof_script(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open proof script: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed proof script: ") + e.what());
  }
  ProofScript s;
  try {
    s.name = doc.at("name").get<std::string>();
    s.target_rule = doc.at("target_rule").get<std::string>();
    s.target_match = doc.at("target_match").get<int>();
    s.start = deserialize(doc.at("start").dump());
    for (const auto& st : doc.at("steps")) {
      ProofStep step;
      step.rule = st.at("rule").get<std::string>();
      step.reverse = st.at("reverse").get<bool>();
      step.match_index = st.at("match").get<int>();
      s.steps.push_back(step);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed proof script: ") + e.what());
  }
  return s;
}

ReplayReport replay(const ProofScript& script, double tol) {
  ReplayReport rep;
  rep.name = script.name;
  const auto target = rule_from_name(script.target_rule);
  if (!target) {
    rep.error = "unknown target rule: " + script.target_rule;
    return rep;
  }
  Matrix base;
  Diagram d = script.start;
  try {
    base = eval(d);
  } catch (const std::exception& e) {
    rep.error = std::string("start diagram invalid: ") + e.what();
    return rep;
  }

  bool all_ok = true;
  for (const ProofStep& st : script.steps) {
    ReplayStepReport sr;
    const auto rule = rule_from_name(st.rule);
    if (!rule) {
      sr.description = "unknown rule " + st.rule;
      rep.steps.push_back(sr);
      all_ok = false;
      break;
    }
    const auto matches = find_matches(d, *rule, st.reverse);
    if (st.match_index < 0 || static_cast<std::size_t>(st.match_index) >= matches.size()) {
      sr.description = st.rule + (st.reverse ? " rev" : "") + ": match " +
                       std::to_string(st.match_index) + " not found (" +
                       std::to_string(matches.size()) + " available)";
      rep.steps.push_back(sr);
      all_ok = false;
      break;
    }
    const Match& m = matches[static_cast<std::size_t>(st.match_index)];
    sr.description = m.str();
    try {
      d = apply(d, m);
    } catch (const std::exception& e) {
      sr.description += std::string(" -- ") + e.what();
      rep.steps.push_back(sr);
      all_ok = false;
      break;
    }
    const auto eq = scalar_equiv(eval(d), base, EquivMode::AnyNonzero, tol);
    sr.residual = eq.residual;
    sr.ok = eq.verdict != ScalarEquivalence::Verdict::Inequivalent &&
            std::abs(eq.c - Complex(1, 0)) <= 10 * tol;
    if (!sr.ok) all_ok = false;
    rep.steps.push_back(sr);
  }

  if (all_ok) {
    const auto tmatches = find_matches(script.start, *target);
    if (script.target_match < 0 ||
        static_cast<std::size_t>(script.target_match) >= tmatches.size()) {
      rep.error = "target match not found";
    } else {
      const Diagram reference =
          apply(script.start, tmatches[static_cast<std::size_t>(script.target_match)]);
      rep.structural_match = isomorphic(d, reference);
      if (!rep.structural_match) rep.error = "final diagram does not match the derived rule";
    }
  }
  rep.pass = all_ok && rep.structural_match;
  return rep;
}

namespace {

using Pred = std::function<bool(const Diagram&, const Match&)>;

struct ScriptBuilder {
  ProofScript script;
  Diagram cur;

  explicit ScriptBuilder(std::string name, Diagram start) {
    script.name = std::move(name);
    script.start = start;
    cur = std::move(start);
  }

  void step(Rule rule, bool reverse, const Pred& pred) {
    const auto ms = find_matches(cur, rule, reverse);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (!pred(cur, ms[i])) continue;
      script.steps.push_back({rule_name(rule), reverse, static_cast<int>(i)});
      cur = apply(cur, ms[i]);
      return;
    }
    throw std::logic_error("builtin proof " + script.name + ": no step candidate for " +
                           std::string(rule_name(rule)));
  }

  void target(Rule rule, const Pred& pred) {
    script.target_rule = rule_name(rule);
    const auto ms = find_matches(script.start, rule);
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (pred(script.start, ms[i])) {
        script.target_match = static_cast<int>(i);
        return;
      }
    throw std::logic_error("builtin proof " + script.name + ": target match not found");
  }
};

Pred any() {
  return [](const Diagram&, const Match&) { return true; };
}
Pred variant_is(int v) {
  return [v](const Diagram&, const Match& m) { return m.variant == v; };
}
Pred verts_are(std::vector<VertexId> vs) {
  return [vs](const Diagram&, const Match& m) { return m.verts == vs; };
}

// (ID) from (SP) and (SZ): blow the wire below the spider up into a bigon,
// fuse, and collapse.
ProofScript build_id() {
  Diagram d;
  const VertexId in = d.add_input();
  const VertexId z = d.add_vertex(Generator::z());
  const VertexId out = d.add_output();
  d.add_edge(in, z);
  d.add_edge(z, out);
  ScriptBuilder b("derive_ID", d);
  b.step(Rule::SP, true, [&](const Diagram& cur, const Match& m) {
    if (!m.edge_anchored) return false;
    if (!(m.edge == Diagram::Edge{std::min(z, out), std::max(z, out)})) return false;
    // Pick the orientation that leaves the new Z-spider fusable with z.
    const Diagram trial = apply(cur, m);
    return !find_matches(trial, Rule::SZ).empty();
  });
  b.step(Rule::SZ, false, any());
  b.step(Rule::SP, false, any());
  b.target(Rule::ID, any());
  return b.script;
}

// (H2) via the two Euler decompositions: the middle Cliffords cancel.
ProofScript build_h2() {
  Diagram d;
  const VertexId in = d.add_input();
  const VertexId ha = d.add_vertex(Generator::h());
  const VertexId hb = d.add_vertex(Generator::hdag());
  const VertexId out = d.add_output();
  d.add_edge(in, ha);
  d.add_edge(ha, hb);
  d.add_edge(hb, out);
  ScriptBuilder b("derive_H2", d);
  b.step(Rule::EU, false, variant_is(0));
  b.step(Rule::EU, false, variant_is(1));
  b.step(Rule::SZ, false, any());
  b.step(Rule::ID, false, any());
  b.step(Rule::SX, false, variant_is(0));
  b.step(Rule::SX, false, variant_is(1));
  b.step(Rule::SZ, false, any());
  b.step(Rule::ID, false, any());
  b.target(Rule::H2, any());
  return b.script;
}

// (H4) by flipping the second box with the inverter and cancelling twice.
ProofScript build_h4() {
  Diagram d;
  const VertexId in = d.add_input();
  std::array<VertexId, 4> h{};
  VertexId prev = in;
  for (auto& v : h) {
    v = d.add_vertex(Generator::h());
    d.add_edge(prev, v);
    prev = v;
  }
  const VertexId out = d.add_output();
  d.add_edge(prev, out);
  ScriptBuilder b("derive_H4", d);
  b.step(Rule::IN, true, [&](const Diagram&, const Match& m) {
    return m.verts == std::vector<VertexId>{h[1]} && m.variant == 0;
  });
  b.step(Rule::H2, false, any());
  b.step(Rule::IN, false, [&](const Diagram&, const Match& m) { return m.verts[1] == h[3]; });
  b.step(Rule::H2, false, any());
  b.target(Rule::H4, any());
  return b.script;
}

// (SX) by colour-changing both spiders, fusing, and changing back; the
// mismatched box kinds on the second spider's legs leave the X12 twists.
ProofScript build_sx() {
  Diagram d;
  const VertexId u = d.add_vertex(Generator::x(Phase(Rational(2, 5), Rational(7, 11))));
  const VertexId v = d.add_vertex(Generator::x(Phase(Rational(1, 3), Rational(5, 7))));
  d.add_edge(u, v);
  for (int i = 0; i < 2; ++i) d.add_edge(u, d.add_output());
  for (int i = 0; i < 2; ++i) d.add_edge(v, d.add_output());
  ScriptBuilder b("derive_SX", d);
  b.step(Rule::Hp, true, verts_are({u}));
  b.step(Rule::H, true, verts_are({v}));
  b.step(Rule::H2, false, any());
  b.step(Rule::SZ, false, any());
  const auto hdag_box = [](const Diagram& cur, const Match& m) {
    return m.variant == 1 && cur.generator(m.verts[0]).kind == GenKind::HBoxDagger;
  };
  b.step(Rule::IN, true, hdag_box);
  b.step(Rule::IN, true, hdag_box);
  b.step(Rule::Hp, false, any());
  b.target(Rule::SX, verts_are({u, v}));
  return b.script;
}

// (P1') as a single harvestman fusion of the Pauli into the spider.
ProofScript build_p1p() {
  Diagram d;
  const VertexId u = d.add_vertex(Generator::x(Phase(Rational(2, 5), Rational(7, 11))));
  const VertexId p = d.add_vertex(Generator::x(pauli_phase(1)));
  d.add_edge(u, p);
  d.add_edge(p, d.add_output());
  for (int i = 0; i < 2; ++i) d.add_edge(u, d.add_output());
  ScriptBuilder b("derive_P1p", d);
  b.step(Rule::SX, false, verts_are({u, p}));
  b.target(Rule::P1p, verts_are({u, p}));
  return b.script;
}

// (P2') as a plain fusion.
ProofScript build_p2p() {
  Diagram d;
  const VertexId z = d.add_vertex(Generator::z(Phase(Rational(2, 5), Rational(7, 11))));
  const VertexId gp = d.add_vertex(Generator::z(pauli_phase(1)));
  d.add_edge(z, gp);
  d.add_edge(gp, d.add_output());
  for (int i = 0; i < 2; ++i) d.add_edge(z, d.add_output());
  ScriptBuilder b("derive_P2p", d);
  b.step(Rule::SZ, false, verts_are({z, gp}));
  b.target(Rule::P2p, verts_are({z, gp}));
  return b.script;
}

// (EU') from (EU), (H) and (H2).
ProofScript build_eup() {
  Diagram d;
  const VertexId in = d.add_input();
  const VertexId h = d.add_vertex(Generator::hdag());
  const VertexId out = d.add_output();
  d.add_edge(in, h);
  d.add_edge(h, out);
  ScriptBuilder b("derive_EUp", d);
  b.step(Rule::H2, true, [&](const Diagram&, const Match& m) {
    return m.edge_anchored && m.edge == Diagram::Edge{std::min(in, h), std::max(in, h)} &&
           m.variant == 1;
  });
  b.step(Rule::EU, false, variant_is(0));
  b.step(Rule::H, true, any());
  const auto end_z = [](const Diagram& cur, const Match& m) {
    // An end of the chain: one of its boxes touches a boundary.
    for (std::size_t i = 1; i < m.verts.size(); ++i)
      for (VertexId nb : cur.neighbors(m.verts[i]))
        if (cur.generator(nb).kind == GenKind::Boundary) return true;
    return false;
  };
  b.step(Rule::H, false, end_z);
  b.step(Rule::H, false, end_z);
  b.target(Rule::EUp, any());
  return b.script;
}

}  // namespace

std::vector<ProofScript> builtin_proof_scripts() {
  return {build_id(), build_h2(), build_h4(), build_sx(), build_p1p(), build_p2p(), build_eup()};
}

}  // namespace trizx
