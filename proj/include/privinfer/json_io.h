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

// JSON encodings of values and distributions.
//
// Values: unit is null, bool and real are JSON literals, an enum tag is
// {"enum": k}, a list is an array, a tuple is {"tuple": [...]}, a symbolic
// distribution is {"family": name, "params": [...]}, and a Dist is
// {"support": [...], "mass": [...]} with every mass a decimal string.

#ifndef PRIVINFER_JSON_IO_H_
#define PRIVINFER_JSON_IO_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "privinfer/dist.h"
#include "privinfer/value.h"

namespace privinfer {

nlohmann::json ValueToJson(const Value& v);
// Throws DomainError on malformed input.
Value ValueFromJson(const nlohmann::json& j);

nlohmann::json DistToJson(const Dist& d);
// Masses are taken as written. Throws DomainError when they are negative,
// not decimal strings, or do not sum to 1 within 1e-9.
Dist DistFromJson(const nlohmann::json& j);

Dist ReadDistFile(const std::string& path);
std::string DistToJsonString(const Dist& d, int indent = 2);

}  // namespace privinfer

#endif  // PRIVINFER_JSON_IO_H_
