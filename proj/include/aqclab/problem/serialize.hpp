// Copyright 2026 The aqclab Authors
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

#pragma once

// Instance documents as JSON with a fixed field order:
//   family, seed, n, params, offset, couplings [[i, j, J], ...], h, delta
// Identical inputs give identical bytes.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "aqclab/problem/generators.hpp"

namespace aqc {

using ojson = nlohmann::ordered_json;

struct InstanceDocument {
  std::string family = "ising";
  std::uint64_t seed = 0;
  IsingInstance instance;
  /// Family parameters: clauses for exact-cover, epsilon/width/height for
  /// the Hamming families, generator settings otherwise.
  ojson params = ojson::object();
};

inline ojson to_json(const InstanceDocument& doc) {
  const auto& inst = doc.instance;
  ojson j;
  j["family"] = doc.family;
  j["seed"] = doc.seed;
  j["n"] = inst.n;
  j["params"] = doc.params;
  j["offset"] = inst.offset;
  ojson cs = ojson::array();
  for (const auto& [key, J] : inst.couplings) cs.push_back(ojson::array({key.first, key.second, J}));
  j["couplings"] = cs;
  j["h"] = inst.fields;
  j["delta"] = inst.transverse;
  return j;
}

inline InstanceDocument instance_from_json(const ojson& j) {
  InstanceDocument doc;
  try {
    doc.family = j.value("family", std::string("ising"));
    doc.seed = j.value("seed", std::uint64_t{0});
    const int n = j.at("n").get<int>();
    doc.instance = IsingInstance::empty(n);
    doc.instance.offset = j.value("offset", 0.0);
    if (j.contains("couplings"))
      for (const auto& c : j.at("couplings")) {
        if (!c.is_array() || c.size() != 3) throw InvalidArgument("coupling entries must be [i, j, J]");
        doc.instance.add_coupling(c[0].get<int>(), c[1].get<int>(), c[2].get<double>());
      }
    if (j.contains("h")) doc.instance.fields = j.at("h").get<std::vector<double>>();
    if (j.contains("delta")) doc.instance.transverse = j.at("delta").get<std::vector<double>>();
    if (j.contains("params")) doc.params = j.at("params");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed instance document: ") + e.what());
  }
  doc.instance.validate();
  return doc;
}

inline std::string dump_instance(const InstanceDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline void write_instance_file(const std::string& path, const InstanceDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << dump_instance(doc);
}

inline InstanceDocument read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ojson j;
  try {
    j = ojson::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
  return instance_from_json(j);
}

/// FNV-1a over the canonical document bytes, as 16 hex digits.
inline std::string instance_hash(const InstanceDocument& doc) {
  const std::string bytes = to_json(doc).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline InstanceDocument document_for(const ExactCoverInstance& ec, std::uint64_t seed) {
  InstanceDocument doc;
  doc.family = "exact-cover";
  doc.seed = seed;
  doc.instance = ec.ising;
  ojson cl = ojson::array();
  for (const auto& c : ec.clauses) cl.push_back(ojson::array({c[0], c[1], c[2]}));
  doc.params["clauses"] = cl;
  doc.params["clause_ratio"] = ec.clause_ratio;
  doc.params["regenerations"] = ec.regenerations;
  return doc;
}

inline InstanceDocument document_for(const HammingParams& p, std::uint64_t seed = 0) {
  InstanceDocument doc;
  doc.family = p.kind == HammingKind::VanDam ? "van-dam" : "hamming-spike";
  doc.seed = seed;
  doc.instance = IsingInstance::empty(p.n);
  if (p.kind == HammingKind::VanDam) {
    doc.params["epsilon"] = p.epsilon;
  } else {
    doc.params["width"] = p.width;
    doc.params["height"] = p.height;
    doc.params["position"] = p.position.value_or(p.n / 4.0);
  }
  return doc;
}

/// The cost the document describes. Ising and exact-cover documents carry
/// their full Ising form; the Hamming families are rebuilt from params.
inline CostFunction document_cost(const InstanceDocument& doc) {
  if (doc.family == "ising") return ising_cost(doc.instance);
  if (doc.family == "exact-cover") return ising_cost(doc.instance, CostFamily::ExactCover);
  HammingParams p;
  p.n = doc.instance.n;
  if (doc.family == "van-dam") {
    p.kind = HammingKind::VanDam;
    p.epsilon = doc.params.value("epsilon", 0.0);
  } else if (doc.family == "hamming-spike") {
    p.kind = HammingKind::Spike;
    p.width = doc.params.value("width", 1.0);
    p.height = doc.params.value("height", 0.0);
    if (doc.params.contains("position")) p.position = doc.params["position"].get<double>();
  } else {
    throw InvalidArgument("unknown instance family '" + doc.family + "'");
  }
  return gen_hamming_family(p);
}

}  // namespace aqc
