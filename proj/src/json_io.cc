//
// Copyright 2026 The PrivInfer Authors
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
//

#include "privinfer/json_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "privinfer/error.h"
#include "privinfer/numeric.h"

namespace privinfer {
namespace {

using nlohmann::json;

constexpr double kMassTolerance = 1e-9;

SymDist::Family FamilyByName(const std::string& name) {
  for (auto f : {SymDist::Family::kBernoulli, SymDist::Family::kBeta,
                 SymDist::Family::kNormal, SymDist::Family::kUniform,
                 SymDist::Family::kDirichlet, SymDist::Family::kMultinomial}) {
    if (FamilyName(f) == name) return f;
  }
  throw DomainError("unknown distribution family '" + name + "'");
}

double ParseMass(const json& m) {
  if (!m.is_string()) throw DomainError("mass entries must be decimal strings");
  const std::string& s = m.get_ref<const std::string&>();
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw DomainError("bad mass '" + s + "'");
  }
  if (x < 0) throw DomainError("negative mass '" + s + "'");
  return x;
}

}  // namespace

json ValueToJson(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kUnit: return nullptr;
    case Value::Kind::kBool: return v.AsBool();
    case Value::Kind::kReal: return v.AsReal();
    case Value::Kind::kEnum: return {{"enum", v.AsEnum()}};
    case Value::Kind::kList: {
      json out = json::array();
      for (const Value& e : v.Elems()) out.push_back(ValueToJson(e));
      return out;
    }
    case Value::Kind::kTuple: {
      json out = json::array();
      for (const Value& e : v.Elems()) out.push_back(ValueToJson(e));
      return {{"tuple", out}};
    }
    case Value::Kind::kSymDist:
      return {{"family", std::string(FamilyName(v.AsSym().family))},
              {"params", v.AsSym().params}};
    case Value::Kind::kDist: return DistToJson(v.AsDist());
    case Value::Kind::kClosure: break;
  }
  throw DomainError("functions have no JSON encoding");
}

Value ValueFromJson(const json& j) {
  if (j.is_null()) return Value::Unit();
  if (j.is_boolean()) return Value::Bool(j.get<bool>());
  if (j.is_number()) return Value::Real(j.get<double>());
  if (j.is_array()) {
    std::vector<Value> elems;
    for (const json& e : j) elems.push_back(ValueFromJson(e));
    return Value::List(std::move(elems));
  }
  if (j.is_object()) {
    if (j.contains("enum")) return Value::Enum(j.at("enum").get<int>());
    if (j.contains("tuple")) {
      std::vector<Value> elems;
      for (const json& e : j.at("tuple")) elems.push_back(ValueFromJson(e));
      return Value::Tuple(std::move(elems));
    }
    if (j.contains("family")) {
      SymDist s{FamilyByName(j.at("family").get<std::string>()),
                j.value("params", std::vector<double>{})};
      s.Validate();
      return Value::Symbolic(std::move(s));
    }
    if (j.contains("support")) return Value::Distribution(DistFromJson(j));
  }
  throw DomainError("cannot decode value " + j.dump());
}

json DistToJson(const Dist& d) {
  json support = json::array();
  json mass = json::array();
  for (const auto& [v, m] : d.entries()) {
    support.push_back(ValueToJson(v));
    mass.push_back(FormatDouble(m));
  }
  return {{"support", support}, {"mass", mass}};
}

Dist DistFromJson(const json& j) {
  if (!j.is_object() || !j.contains("support") || !j.contains("mass")) {
    throw DomainError("distribution needs 'support' and 'mass' arrays");
  }
  const json& support = j.at("support");
  const json& mass = j.at("mass");
  if (!support.is_array() || !mass.is_array() ||
      support.size() != mass.size()) {
    throw DomainError("'support' and 'mass' must be arrays of equal length");
  }
  std::vector<Dist::Entry> entries;
  CompensatedSum total;
  for (std::size_t i = 0; i < support.size(); ++i) {
    double m = ParseMass(mass[i]);
    total.Add(m);
    entries.emplace_back(ValueFromJson(support[i]), m);
  }
  if (std::fabs(total.Value() - 1.0) > kMassTolerance) {
    throw DomainError("masses sum to " + FormatDouble(total.Value()) +
                      ", not 1");
  }
  return Dist::FromEntries(std::move(entries));
}

Dist ReadDistFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
  return DistFromJson(j);
}

std::string DistToJsonString(const Dist& d, int indent) {
  return DistToJson(d).dump(indent);
}

}  // namespace privinfer
