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

#include "trizx/diagram_json.hpp"

#include <json.hpp>

#include <map>
#include <sstream>

namespace trizx {

namespace {

using json = nlohmann::ordered_json;

GenKind kind_from_string(const std::string& s) {
  if (s == "Z") return GenKind::ZSpider;
  if (s == "X") return GenKind::XSpider;
  if (s == "H") return GenKind::HBox;
  if (s == "Hdag") return GenKind::HBoxDagger;
  if (s == "B") return GenKind::Boundary;
  throw ParseError("unknown generator kind: " + s);
}

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw ParseError("rational must be a \"num/den\" string");
  const auto r = parse_rational(j.get<std::string>());
  if (!r) throw ParseError("phase is not a valid rational: " + j.get<std::string>());
  return *r;
}

}  // namespace

std::string serialize(const Diagram& d, int indent) {
  // Canonical id ordering: remap vertex ids to consecutive integers in
  // ascending order of the original ids.
  std::map<VertexId, std::size_t> remap;
  for (const auto& [v, g] : d.vertices()) remap.emplace(v, remap.size());

  json doc;
  doc["scalar"] = {{"omega_exp", format_rational(d.scalar().omega_exp)},
                   {"sqrt3_exp", d.scalar().sqrt3_exp},
                   {"sign", d.scalar().sign}};
  json verts = json::object();
  for (const auto& [v, g] : d.vertices()) {
    json entry;
    entry["kind"] = gen_kind_name(g.kind);
    if (g.is_spider())
      entry["phase"] = {format_rational(g.phase.a), format_rational(g.phase.b)};
    verts[std::to_string(remap.at(v))] = entry;
  }
  doc["vertices"] = verts;
  json edges = json::array();
  for (const auto& e : d.edges())
    edges.push_back({std::to_string(remap.at(e.first)), std::to_string(remap.at(e.second))});
  doc["edges"] = edges;
  json ins = json::array(), outs = json::array();
  for (VertexId v : d.inputs()) ins.push_back(std::to_string(remap.at(v)));
  for (VertexId v : d.outputs()) outs.push_back(std::to_string(remap.at(v)));
  doc["inputs"] = ins;
  doc["outputs"] = outs;
  return doc.dump(indent);
}

Diagram deserialize(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges") ||
      !doc.contains("inputs") || !doc.contains("outputs"))
    throw ParseError("malformed diagram document");

  Diagram d;
  if (doc.contains("scalar")) {
    const auto& s = doc["scalar"];
    if (!s.is_object()) throw ParseError("malformed scalar");
    d.set_scalar(Scalar(rational_from_json(s.at("omega_exp")),
                        s.at("sqrt3_exp").get<std::int64_t>(), s.at("sign").get<int>()));
  }

  std::map<std::string, VertexId> ids;
  if (!doc["vertices"].is_object()) throw ParseError("vertices must be an object");
  for (const auto& [key, val] : doc["vertices"].items()) {
    if (!val.is_object() || !val.contains("kind")) throw ParseError("malformed vertex entry");
    Generator g;
    g.kind = kind_from_string(val["kind"].get<std::string>());
    if (g.is_spider() && val.contains("phase")) {
      const auto& p = val["phase"];
      if (!p.is_array() || p.size() != 2) throw ParseError("phase must be a pair");
      g.phase = Phase(rational_from_json(p[0]), rational_from_json(p[1]));
    }
    ids[key] = d.add_vertex(g);
  }
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2) throw ParseError("malformed edge");
    const auto a = ids.find(e[0].get<std::string>());
    const auto b = ids.find(e[1].get<std::string>());
    if (a == ids.end() || b == ids.end()) throw ParseError("edge references unknown vertex");
    d.add_edge(a->second, b->second);
  }
  // Boundary lists are recorded directly; add_input/add_output would create
  // fresh vertices, so splice into the diagram via a small rebuild.
  Diagram out;
  std::map<VertexId, VertexId> remap;
  for (const auto& [v, g] : d.vertices()) remap[v] = out.add_vertex(g);
  for (const auto& e : d.edges()) out.add_edge(remap[e.first], remap[e.second]);
  out.set_scalar(d.scalar());
  std::vector<VertexId> ins, outs;
  for (const auto& v : doc["inputs"]) {
    const auto it = ids.find(v.get<std::string>());
    if (it == ids.end()) throw ParseError("input references unknown vertex");
    ins.push_back(remap[it->second]);
  }
  for (const auto& v : doc["outputs"]) {
    const auto it = ids.find(v.get<std::string>());
    if (it == ids.end()) throw ParseError("output references unknown vertex");
    outs.push_back(remap[it->second]);
  }
  out = out.with_boundaries(ins, outs);
  try {
    out.validate();
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid diagram: ") + e.what());
  }
  return out;
}

std::string render_dot(const Diagram& d) {
  std::map<VertexId, std::size_t> remap;
  for (const auto& [v, g] : d.vertices()) remap.emplace(v, remap.size());
  std::ostringstream os;
  os << "graph zx {\n  node [fontname=\"Helvetica\"];\n";
  for (const auto& [v, g] : d.vertices()) {
    os << "  v" << remap.at(v) << " [";
    switch (g.kind) {
      case GenKind::ZSpider:
        os << "shape=circle style=filled fillcolor=\"#a4e8a4\" label=\"" << g.phase.str() << "\"";
        break;
      case GenKind::XSpider:
        os << "shape=circle style=filled fillcolor=\"#f2a0c0\" label=\"" << g.phase.str() << "\"";
        break;
      case GenKind::HBox: os << "shape=box style=filled fillcolor=\"#f5f57a\" label=\"H\""; break;
      case GenKind::HBoxDagger:
        os << "shape=box style=filled fillcolor=\"#f5f57a\" label=\"H+\"";
        break;
      case GenKind::Boundary: {
        std::string tag = "b";
        for (std::size_t i = 0; i < d.inputs().size(); ++i)
          if (d.inputs()[i] == v) tag = "in" + std::to_string(i);
        for (std::size_t i = 0; i < d.outputs().size(); ++i)
          if (d.outputs()[i] == v) tag = "out" + std::to_string(i);
        os << "shape=none label=\"" << tag << "\"";
        break;
      }
    }
    os << "];\n";
  }
  for (const auto& e : d.edges())
    os << "  v" << remap.at(e.first) << " -- v" << remap.at(e.second) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace trizx
