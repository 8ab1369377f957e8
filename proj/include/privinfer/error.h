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

#ifndef PRIVINFER_ERROR_H_
#define PRIVINFER_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace privinfer {

// Location of a node in a source file. Offsets are byte offsets into the
// original text; line and column are 1-based and refer to `start`.
struct SourceSpan {
  std::string file;
  std::size_t start = 0;
  std::size_t end = 0;
  int line = 0;
  int column = 0;

  bool Contains(const SourceSpan& other) const {
    return start <= other.start && other.end <= end;
  }
  std::string ToString() const;
};

// Base class of every error raised by the library. The span is empty
// (line == 0) when the error is not tied to a source location.
class Error : public std::runtime_error {
 public:
  Error(const std::string& kind, const std::string& message,
        SourceSpan span = {});

  const std::string& kind() const { return kind_; }
  const std::string& message() const { return message_; }
  const SourceSpan& span() const { return span_; }

 private:
  std::string kind_;
  std::string message_;
  SourceSpan span_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourceSpan span)
      : Error("syntax error", message, std::move(span)) {}
};

class TypeError : public Error {
 public:
  // `rule` names the typing rule whose premise failed.
  TypeError(const std::string& rule, const std::string& message,
            SourceSpan span)
      : Error("type error [" + rule + "]", message, std::move(span)),
        rule_(rule) {}
  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

class EvalError : public Error {
 public:
  EvalError(const std::string& kind, const std::string& message,
            SourceSpan span = {})
      : Error(kind, message, std::move(span)) {}
};

class FuelExhausted : public EvalError {
 public:
  explicit FuelExhausted(SourceSpan span)
      : EvalError("fuel exhausted", "evaluation exceeded its step budget",
                  std::move(span)) {}
};

class ZeroMassObservation : public EvalError {
 public:
  explicit ZeroMassObservation(SourceSpan span)
      : EvalError("zero-mass observation",
                  "observed event has probability 0 under the prior",
                  std::move(span)) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error("domain error", message) {}
};

}  // namespace privinfer

#endif  // PRIVINFER_ERROR_H_
