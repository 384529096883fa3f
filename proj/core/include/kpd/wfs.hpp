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

// Well-founded semantics of modal-free definitions: induction steps,
// unfounded sets, the well-founded model and FO(ID) model checks.

#pragma once

#include <utility>
#include <vector>

#include "kpd/ground.hpp"
#include "kpd/kernel.hpp"

namespace kpd::wfs {

struct InductionStep {
  enum class Kind { Produce, Unfounded };

  Kind kind = Kind::Produce;
  /// Produce: the derived atom and the rule index used.
  AtomId atom = 0;
  std::size_t rule = 0;
  /// Unfounded: the atoms removed from the upper bound.
  Interpretation removed;
  ApproximatingPair before;
  ApproximatingPair after;
};

struct InductionSequence {
  Interpretation seed;
  std::vector<InductionStep> steps;
  ApproximatingPair limit;
};

/// (O + bottom_Def, O + top_Def).
ApproximatingPair initialPair(const Interpretation& open, const Interpretation& defined);

/// (atom, rule) pairs whose body holds in `pair` and whose head is not yet
/// in pair.lower. Throws MisuseError on a modal rule.
std::vector<std::pair<AtomId, std::size_t>> produceApplicable(const ApproximatingPair& pair,
                                                              const GroundDefinition& def);

/// Whether `u` (nonempty, defined, within upper - lower) is an unfounded
/// set: every rule body of every atom of `u` is false at
/// (upper - u, lower).
bool isUnfounded(const ApproximatingPair& pair, const GroundDefinition& def,
                 const Interpretation& u);

/// Every unfounded set, by subset enumeration. Exponential: throws
/// SearchBoundError beyond `maxCandidates` candidate atoms.
std::vector<Interpretation> unfoundedSets(const ApproximatingPair& pair,
                                          const GroundDefinition& def,
                                          std::size_t maxCandidates = 16);

/// The union of all unfounded sets (greatest fixpoint of the falsifiability
/// check), restricted to `candidates` when given. Empty when none exists.
Interpretation maximalUnfoundedSet(const ApproximatingPair& pair, const GroundDefinition& def);
Interpretation maximalUnfoundedSet(const ApproximatingPair& pair, const GroundDefinition& def,
                                   const Interpretation& candidates);

/// Produce steps to saturation alternated with maximal unfounded steps.
InductionSequence induce(const GroundDefinition& def, const Interpretation& open);

/// The well-founded model of `def` given the open atoms `open`.
ApproximatingPair wfm(const GroundDefinition& def, const Interpretation& open);

/// wfm(def, i restricted to the open atoms) == (i, i).
bool isDefModel(const Interpretation& i, const GroundDefinition& def);

/// i |= constraint classically and i is a model of the definition.
bool isFoidModel(const Interpretation& i, const GroundTheory& t);

}  // namespace kpd::wfs
