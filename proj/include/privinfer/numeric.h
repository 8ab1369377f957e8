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

#ifndef PRIVINFER_NUMERIC_H_
#define PRIVINFER_NUMERIC_H_

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace privinfer {

using Rational = boost::multiprecision::cpp_rational;

// Parses a decimal literal ("12", "0.25", "1e-3", "-4.5") exactly.
// Throws DomainError on malformed input.
Rational ParseDecimal(std::string_view text);

double ToDouble(const Rational& r);

// Shortest decimal text that re-parses to `r` when `r` has a terminating
// decimal expansion, otherwise "p/q".
std::string RationalToString(const Rational& r);

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void Add(double x);
  double Value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

// Shortest round-trip decimal representation of a double.
std::string FormatDouble(double x);

}  // namespace privinfer

#endif  // PRIVINFER_NUMERIC_H_
