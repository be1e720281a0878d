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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "truecon/formula.hpp"
#include "truecon/structure.hpp"

namespace truecon {

class ElaborationTooLarge : public LimitExceeded {
 public:
  using LimitExceeded::LimitExceeded;
};

/// Process term  P ::= 0 | a | a.P | P+P | P|P | (P).
struct Term {
  enum class Kind { Nil, Prefix, Choice, Par };
  Kind kind = Kind::Nil;
  Label label;                       // Prefix
  std::string event;                 // Prefix: name of the event it creates
  std::shared_ptr<const Term> left;  // Prefix continuation, or left operand
  std::shared_ptr<const Term> right;
};

/// Parses a term. Prefix events are named e1, e2, ... in textual order.
Term parse_term_ast(std::string_view text);

inline constexpr std::size_t kMaxElaboratedConfigs = std::size_t{1} << 14;

/// Configuration family of the term, validated.
Structure elaborate(const Term& t);
Structure parse_term(std::string_view text);

/// Line format:
///   events: <name>:<label> ...
///   configs: {}; {e1}; {e1 e2}; ...
/// Blank lines and lines starting with '#' are ignored; a section may
/// continue over several lines.
Structure parse_structure_file(std::string_view text);
std::string render_structure_file(const Structure& s);

/// Parses a formula. In <-n> and [-n], a name that is not bound by an
/// enclosing binder denotes a label when it belongs to `alphabet`, otherwise
/// a free identifier.
Formula parse_formula(std::string_view text, const std::vector<Label>& alphabet = {});

/// Text accepted by parse_formula. Reserved identifiers introduced by
/// expansion are renamed to parseable fresh names.
std::string render_formula(const Formula& f);

} // namespace truecon
