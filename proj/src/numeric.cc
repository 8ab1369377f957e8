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

#include "privinfer/numeric.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "privinfer/error.h"

namespace privinfer {

std::string SourceSpan::ToString() const {
  std::string out = file.empty() ? "<input>" : file;
  out += ":" + std::to_string(line) + ":" + std::to_string(column);
  return out;
}

Error::Error(const std::string& kind, const std::string& message,
             SourceSpan span)
    : std::runtime_error(
          (span.line > 0 ? span.ToString() + ": " : std::string()) + kind +
          ": " + message),
      kind_(kind),
      message_(message),
      span_(std::move(span)) {}

Rational ParseDecimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  boost::multiprecision::cpp_int mantissa = 0;
  int scale = 0;
  bool digits = false;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_dot) ++scale;
      digits = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw DomainError("malformed decimal literal '" +
                                 std::string(text) + "'");
  int exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data() + i + (text[i] == '+' ? 1 : 0),
                        text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw DomainError("malformed exponent in '" + std::string(text) + "'");
    }
    exponent = value;
    i = text.size();
  }
  if (i != text.size()) {
    throw DomainError("trailing characters in literal '" + std::string(text) +
                      "'");
  }
  exponent -= scale;
  Rational result(mantissa);
  boost::multiprecision::cpp_int power = 1;
  for (int k = 0; k < std::abs(exponent); ++k) power *= 10;
  if (exponent >= 0) {
    result *= Rational(power);
  } else {
    result /= Rational(power);
  }
  return negative ? Rational(-result) : result;
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

std::string RationalToString(const Rational& r) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(r);
  cpp_int den = boost::multiprecision::denominator(r);
  // Terminating iff den = 2^a 5^b.
  cpp_int d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return num.str() + "/" + den.str();
  int digits = std::max(twos, fives);
  cpp_int scaled = num;
  for (int k = 0; k < digits; ++k) scaled *= 10;
  scaled /= den;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) {
      s = std::string(digits - s.size() + 1, '0') + s;
    }
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

void CompensatedSum::Add(double x) {
  double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

std::string FormatDouble(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace privinfer
