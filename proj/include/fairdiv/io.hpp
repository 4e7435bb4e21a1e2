// Copyright 2026 The fairdiv Authors
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

#ifndef FAIRDIV_IO_HPP
#define FAIRDIV_IO_HPP

#include <optional>
#include <string>

#include "json.hpp"

#include "fairdiv/model.hpp"
#include "fairdiv/payments.hpp"

namespace fairdiv {

/// A parsed problem file: the scenario, everyone's declared scores, and
/// optionally the ground-truth scores used by the verifier and the audit
/// checks.
struct Instance {
  Scenario scenario;
  TypeVector declared;
  std::optional<TypeVector> truth;
};

/// Parses the JSON instance format:
///
///   {
///     "agents": [{"id": "r1", "capacity": 3}, ...],
///     "goods": ["p1", ...],
///     "declared": {"r1": {"p1": 10, ...}, ...},
///     "true_scores": {...}          // optional
///   }
///
/// Scores omitted from a row stay at the not-authored sentinel. Malformed
/// input throws parse_error naming the offending element.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

/// Inverse of parse_instance; parse(serialize(x)) == x, and sentinel
/// entries are never written out.
std::string serialize_instance(const Instance& inst);

nlohmann::ordered_json allocation_to_json(const Scenario& s,
                                          const Allocation& pi);
Allocation allocation_from_json(const Scenario& s,
                                const nlohmann::ordered_json& j);

nlohmann::ordered_json payment_report_to_json(const Scenario& s,
                                              const std::string& rule,
                                              const PaymentReport& rep);

}  // namespace fairdiv

#endif  // FAIRDIV_IO_HPP
