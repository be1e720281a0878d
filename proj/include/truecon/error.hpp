/*
 * Copyright 2026 The truecon Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace truecon {

/// Base of every error thrown by the library. Input problems (bad syntax,
/// invalid structures, exhausted budgets) derive from this; internal
/// self-check failures use InternalVerificationFailed.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error("syntax error at " + std::to_string(position) + ": " + what), position_(position) {}
  /// Zero-based character offset into the input text.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class NotAConfiguration : public Error {
 public:
  using Error::Error;
};

class NotPermissible : public Error {
 public:
  using Error::Error;
};

/// A size guard fired: too many events, states, DAG nodes or search steps.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class InternalVerificationFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

} // namespace truecon
