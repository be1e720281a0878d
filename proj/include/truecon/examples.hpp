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

#include <string>
#include <vector>

#include "truecon/structure.hpp"

namespace truecon::examples {

/// Eight events a1..a4 (label a) and b1..b4 (label b).
Structure fig2_e();
/// fig2_e without the configuration {a2 a3 b3}.
Structure fig2_f();

/// Left and right sides of the absorption law, as process terms.
inline constexpr const char* kAbsorptionLhs = "(a|(b+c)) + (a|b) + ((a+c)|b)";
inline constexpr const char* kAbsorptionRhs = "(a|(b+c)) + ((a+c)|b)";

/// Three a-labelled initial events in non-binary conflict, each with one
/// follow-up event.
Structure fig3_e();
/// fig3_e with a second follow-up e4_ of e1 that replaces e4 after {1,3}.
Structure fig3_f();

/// Configuration families are given by event names.
Structure from_names(const std::vector<std::pair<std::string, std::string>>& events,
                     const std::vector<std::vector<std::string>>& family);

} // namespace truecon::examples
