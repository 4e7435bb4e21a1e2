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

#ifndef FAIRDIV_ERRORS_HPP
#define FAIRDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fairdiv {

// Malformed inputs: unknown ids, capacity <= 0, inconsistent shapes.
class structural_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API misuse that violates a stated contract, e.g. querying a verified
// view outside the verified goods.
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Instance exceeds a hard cap of an exponential routine.
class size_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario-file syntax or schema problems; carries location context.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fairdiv

#endif  // FAIRDIV_ERRORS_HPP
