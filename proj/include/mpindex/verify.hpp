// Copyright 2026 The mpindex Authors
//
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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mpindex/orbifold.hpp"

namespace mpindex {

struct Check {
  enum class Relation { AtMost, AtLeast };

  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::AtMost;
  long samples = 1;
  bool passed = false;
};

struct RunReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  std::vector<Check> checks;
  std::optional<double> seconds;  // only when timing was requested

  bool passed() const;
  void append(const RunReport& other);
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20261014;
  std::optional<double> tolerance;  // replaces every check's own tolerance
  int cutoff = 0;                   // Fock cutoff for the one-mode oracle checks, 0: default
  bool timing = false;              // record wall time and enforce runtime limits
};

/// The ten acceptance criteria, numbered 1..10.
int criterion_count();
std::string criterion_title(int id);
RunReport run_criterion(int id, const VerifyOptions& options);

std::vector<std::string> suite_names();
/// Throws ValidationError for an unknown suite.
RunReport run_suite(const std::string& suite, const VerifyOptions& options);

/// Reference rows of the Z4 / Z6 class tables: rotation index, representative,
/// and membership of lattice points at that rotation index.
struct ReferenceRow {
  int alpha;
  LatticePoint z;
  std::function<bool(const LatticePoint&)> member;
};
std::vector<ReferenceRow> reference_table(int order);

}  // namespace mpindex
