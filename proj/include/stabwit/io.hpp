// Copyright 2026 The stabwit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "stabwit/graph.hpp"
#include "stabwit/lms.hpp"
#include "stabwit/witness.hpp"

namespace stabwit {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits, the precision of every float the tools
/// emit.
inline double round12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Generator sets:  {"d": int, "n": int, "generators": [pauli-text, ...]}
// ---------------------------------------------------------------------------

inline Json generator_set_to_json(const GeneratorSet& gens) {
  Json j;
  j["d"] = gens.d;
  j["n"] = gens.n_sites;
  j["generators"] = Json::array();
  for (const auto& g : gens.generators) j["generators"].push_back(to_text(g));
  if (!gens.labels.empty()) j["labels"] = gens.labels;
  return j;
}

inline GeneratorSet generator_set_from_json(const Json& j) {
  if (!j.contains("d") || !j.contains("n") || !j.contains("generators")) {
    throw std::invalid_argument("generator JSON: need fields d, n, generators");
  }
  const int d = j.at("d").get<int>();
  const int n = j.at("n").get<int>();
  if (!is_prime(d)) throw std::invalid_argument("generator JSON: d must be prime");
  std::vector<PauliWord> words;
  for (const auto& text : j.at("generators")) {
    words.push_back(parse_pauli(text.get<std::string>(), d, n));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return GeneratorSet(d, n, std::move(words), std::move(labels));
}

// ---------------------------------------------------------------------------
// Multigraphs:  {"n": int, "edges": [[i, j, multiplicity], ...]}  (1-based)
// ---------------------------------------------------------------------------

inline Json multigraph_to_json(const Multigraph& g) {
  Json j;
  j["n"] = g.n_vertices;
  j["edges"] = Json::array();
  for (int i = 1; i <= g.n_vertices; ++i) {
    for (int k = i + 1; k <= g.n_vertices; ++k) {
      const int mult = g.adjacency(i - 1, k - 1);
      if (mult != 0) j["edges"].push_back({i, k, mult});
    }
  }
  return j;
}

inline Multigraph multigraph_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("edges")) {
    throw std::invalid_argument("multigraph JSON: need fields n, edges");
  }
  Multigraph g(j.at("n").get<int>());
  size_t index = 0;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) {
      throw std::invalid_argument("multigraph JSON: edges[" + std::to_string(index) +
                                  "] must be [i, j, multiplicity]");
    }
    const int mult = e[2].get<int>();
    if (mult < 0) {
      throw std::invalid_argument("multigraph JSON: edges[" + std::to_string(index) +
                                  "][2] is negative");
    }
    g.add_edge(e[0].get<int>(), e[1].get<int>(), mult);
    ++index;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Witnesses and reports
// ---------------------------------------------------------------------------

inline const char* kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::Projector: return "projector";
    case WitnessKind::GeneratorSum: return "generator";
    case WitnessKind::Colored: return "colored";
    case WitnessKind::Custom: return "custom";
  }
  return "?";
}

inline Json witness_to_json(const Witness& w) {
  Json j;
  j["kind"] = kind_name(w.kind);
  j["constant"] = round12(w.constant);
  j["d"] = w.d;
  j["n"] = w.n_sites;
  j["num_generators"] = w.num_generators;
  if (!w.generators.empty()) {
    j["generators"] = Json::array();
    for (const auto& g : w.generators) j["generators"].push_back(to_text(g));
  }
  if (!w.color_classes.empty()) {
    j["num_settings"] = w.num_colors();
    Json classes = Json::array();
    for (const auto& cls : w.color_classes) {
      Json members = Json::array();
      for (int v : cls) members.push_back(v + 1);  // 1-based generator indices
      classes.push_back(members);
    }
    j["color_classes"] = classes;
  }
  if (!w.terms.empty()) {
    Json terms = Json::array();
    for (const auto& t : w.terms) {
      Json term;
      term["weight_re"] = round12(t.weight.real());
      term["weight_im"] = round12(t.weight.imag());
      term["word"] = to_text(t.word);
      terms.push_back(term);
    }
    j["terms"] = terms;
  }
  return j;
}

/// Rebuilds a witness from its dump. Structured kinds are reconstructed
/// through their constructors so every invariant is re-validated; custom
/// witnesses are taken term by term.
inline Witness witness_from_json(const Json& j) {
  for (const char* field : {"kind", "d", "n"}) {
    if (!j.contains(field)) {
      throw std::invalid_argument(std::string("witness JSON: missing field ") + field);
    }
  }
  const std::string kind = j.at("kind").get<std::string>();
  const int d = j.at("d").get<int>();
  const int n = j.at("n").get<int>();
  if (kind == "custom") {
    Witness w;
    w.kind = WitnessKind::Custom;
    w.constant = j.at("constant").get<double>();
    w.d = d;
    w.n_sites = n;
    for (const auto& term : j.value("terms", Json::array())) {
      w.terms.push_back({Complex(term.at("weight_re").get<double>(),
                                 term.at("weight_im").get<double>()),
                         parse_pauli(term.at("word").get<std::string>(), d, n)});
    }
    return w;
  }
  std::vector<PauliWord> words;
  for (const auto& text : j.at("generators")) {
    words.push_back(parse_pauli(text.get<std::string>(), d, n));
  }
  GeneratorSet gens(d, n, std::move(words));
  if (kind == "projector") return projector_witness(gens);
  if (kind == "generator") return generator_witness(gens);
  if (kind == "colored") {
    std::vector<int> assignment(gens.num_generators(), -1);
    const Json& classes = j.at("color_classes");
    for (size_t color = 0; color < classes.size(); ++color) {
      for (const auto& member : classes[color]) {
        const int index = member.get<int>() - 1;  // dump uses 1-based indices
        if (index < 0 || index >= gens.num_generators()) {
          throw std::invalid_argument("witness JSON: generator index out of range");
        }
        assignment[index] = static_cast<int>(color);
      }
    }
    if (std::count(assignment.begin(), assignment.end(), -1) != 0) {
      throw std::invalid_argument("witness JSON: color classes do not cover all generators");
    }
    return colored_witness(gens, Coloring::from_assignment(std::move(assignment)));
  }
  throw std::invalid_argument("witness JSON: unknown kind '" + kind + "'");
}

inline Json robustness_to_json(const RobustnessReport& r) {
  Json j;
  j["detects"] = r.detects;
  j["expectation"] = round12(r.expectation);
  j["normalized_trace"] = round12(r.normalized_trace);
  // Thresholds are reported only when they are meaningful, i.e. the witness
  // detects its target and the value lies in [0, 1].
  if (r.detects && std::isfinite(r.p_limit)) {
    j["p_limit"] = round12(r.p_limit);
  } else {
    j["p_limit"] = nullptr;
  }
  if (!r.closed_form_used.empty()) j["closed_form_used"] = r.closed_form_used;
  return j;
}

inline Json spectrum_to_json(const std::vector<std::pair<double, long long>>& spectrum) {
  Json j = Json::array();
  for (const auto& [eig, mult] : spectrum) j.push_back({round12(eig), mult});
  return j;
}

inline Json matrix_to_json(const Eigen::MatrixXi& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Json dense_to_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({round12(m(i, j).real()), round12(m(i, j).imag())});
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Curve CSV:  family,d,N,K,p_limit
// ---------------------------------------------------------------------------

inline std::string curves_to_csv(const std::vector<CurveRow>& rows) {
  std::string out = "family,d,N,K,p_limit\n";
  for (const auto& r : rows) {
    out += r.family + "," + std::to_string(r.d) + "," + std::to_string(r.n) + "," +
           std::to_string(r.num_settings) + "," + format12(r.p_limit) + "\n";
  }
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace stabwit
