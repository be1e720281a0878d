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

#include <optional>

#include "truecon/equivalence.hpp"

namespace truecon {

/// Builds a formula separating the two structures from a refinement whose
/// initial state was removed. The result is model-checked on both sides and
/// classified against the kind's sublogic; any failure throws
/// InternalVerificationFailed.
Counterexample extract_distinguishing(const Structure& c, const Structure& d, const Refinement& r,
                                      bool prune = true);

/// nullopt when the structures are equivalent for `kind`.
std::optional<Counterexample> distinguishing_formula(const Structure& c, const Structure& d,
                                                     BisimKind kind, const Options& opt = {});

/// Sublogic whose formulas are preserved by the kind's equivalence.
Sublogic sublogic_of(BisimKind kind);

} // namespace truecon
