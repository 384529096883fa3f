// Copyright 2026 The kpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Weak and strong models of theories {constraint, definition}: candidate
// world enumeration, derivation-based checks and canonical model lists.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kpd/engine.hpp"
#include "kpd/ground.hpp"
#include "kpd/kernel.hpp"

namespace kpd::models {

enum class Strength { Weak, Strong };

const char* strengthName(Strength s);

struct SearchConfig {
  /// Bound on open atoms when every open interpretation is a candidate.
  std::size_t maxOpenAtoms = 4;
  /// Candidate open interpretations supplied by the user.
  std::optional<std::vector<Interpretation>> worldsHint;
  /// Candidates are the open interpretations satisfying the modal-free,
  /// open-only top-level conjuncts of the constraint.
  bool worldsFromConstraint = false;
  /// Bound on the number of candidate worlds (subsets are enumerated).
  std::size_t maxCandidateWorlds = 16;
  /// Bound on open atoms when filtering candidates by the constraint.
  std::size_t maxFilterOpenAtoms = 20;
  engine::EngineOptions engine;
};

struct ModelReport {
  KnowledgeStructure structure;
  Strength strength = Strength::Weak;
  engine::Seed seed;
  /// Sound, complete, total trace whose limit collapses to `structure`.
  engine::DerivationTrace witness;

  bool operator==(const ModelReport&) const = default;
};

struct CheckResult {
  bool holds = false;
  /// Why the structure is not a model; empty when it is.
  std::string reason;
  std::optional<ModelReport> report;
};

/// Seeds whose sound derivations disagree on the limit.
struct Diagnostic {
  engine::Seed seed;
  std::size_t distinctLimits = 0;
};

class ModelFinder {
 public:
  ModelFinder(const GroundTheory& theory, SearchConfig config = {});

  const GroundTheory& theory() const { return *theory_; }
  const SearchConfig& config() const { return config_; }

  /// Candidate open interpretations for the possible worlds, in canonical
  /// order. Throws SearchSpaceError when the configuration exceeds a bound.
  std::vector<Interpretation> candidateWorlds() const;

  /// All weak models with worlds drawn from the candidates, canonically
  /// ordered. Cached.
  const std::vector<ModelReport>& weakModels();

  /// The open restrictions of the real worlds of all weak models.
  std::vector<Interpretation> strongSeedWorlds();

  /// All strong models, canonically ordered.
  std::vector<ModelReport> strongModels();

  CheckResult checkWeak(const KnowledgeStructure& s);
  CheckResult checkStrong(const KnowledgeStructure& s);

  /// Seeds met during the searches whose sound derivations had several
  /// limits.
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  /// Derives from (real, worlds) and returns the collapsed total limit when
  /// the sound derivations agree on it.
  std::optional<ModelReport> derive(const Interpretation& real,
                                    const std::vector<Interpretation>& worlds,
                                    std::string* reason);

  const GroundTheory* theory_;
  SearchConfig config_;
  engine::Engine engine_;
  Interpretation open_;
  std::optional<std::vector<ModelReport>> weak_;
  std::vector<Diagnostic> diagnostics_;
};

/// Canonical order of knowledge structures: by real world, then by the
/// sorted list of possible worlds.
bool canonicalLess(const KnowledgeStructure& a, const KnowledgeStructure& b);

}  // namespace kpd::models
