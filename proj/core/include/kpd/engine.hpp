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

// Knowledge derivations over approximate knowledge structures: the five
// operations, derivation traces with their complete/sound/total flags, the
// default scheduling policy, limit computation and exhaustive enumeration.

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "kpd/ground.hpp"
#include "kpd/kernel.hpp"

namespace kpd::engine {

enum class OpKind { RealProduce, WorldProduce, RealUnfounded, WorldUnfounded, Learn };

const char* opKindName(OpKind k);

struct OpInstance {
  OpKind kind = OpKind::RealProduce;
  /// Target world for WorldProduce / WorldUnfounded.
  WorldId world = 0;
  /// Produced atom.
  AtomId atom = 0;
  /// Rule used by Produce and Learn.
  std::size_t rule = 0;
  /// Unfounded set.
  Interpretation atoms;

  static OpInstance realProduce(AtomId a, std::size_t rule);
  static OpInstance worldProduce(WorldId w, AtomId a, std::size_t rule);
  static OpInstance realUnfounded(Interpretation u);
  static OpInstance worldUnfounded(WorldId w, Interpretation u);
  static OpInstance learn(std::size_t rule);

  bool targetsWorld() const {
    return kind == OpKind::WorldProduce || kind == OpKind::WorldUnfounded;
  }
  bool isProduce() const {
    return kind == OpKind::RealProduce || kind == OpKind::WorldProduce;
  }
  bool isUnfounded() const {
    return kind == OpKind::RealUnfounded || kind == OpKind::WorldUnfounded;
  }

  bool operator==(const OpInstance&) const = default;
  std::strong_ordering operator<=>(const OpInstance& o) const;
};

/// How Operations 3 and 4 evaluate a body for certain falsity.
enum class Semantics {
  /// ((J_new, I), flipped W): the negation rule applied to the whole
  /// structure.
  Op4Flip,
  /// ((J_new, I), W) with W unflipped, as Operation 4 is printed.
  Op4Literal,
};

/// Upper bound of a world pair after Operation 2.
enum class Op2Mode {
  /// The world keeps its own upper bound.
  WorldUpper,
  /// The world takes the real pair's upper bound, as printed.
  Literal,
};

enum class UnfoundedMode {
  /// One unfounded op per target: the maximal unfounded set.
  Maximal,
  /// Every unfounded set (exponential).
  All,
};

struct EngineOptions {
  Semantics semantics = Semantics::Op4Flip;
  Op2Mode op2 = Op2Mode::WorldUpper;
  /// Ops on worlds that were later removed count as no longer applicable.
  /// Off by default: such ops are vacuously applicable.
  bool strictRemovedWorlds = false;
  /// deriveLimit searches for every sound complete trace to confirm the
  /// limit is unique, even when the default trace is sound.
  bool verify = true;
  /// Node budget of the bounded searches.
  std::size_t searchBudget = 200000;
  /// Candidate-atom bound for enumerating all unfounded sets of a pair.
  std::size_t maxUnfoundedCandidates = 12;
};

/// (O, M): open-atom interpretations for the real world and each possible
/// world. Interpretations are over the full vocabulary with every defined
/// atom false.
struct Seed {
  Interpretation real;
  std::vector<Interpretation> worlds;

  bool operator==(const Seed&) const = default;
};

struct Step {
  OpInstance op;
  ApproximateKnowledgeStructure after;

  bool operator==(const Step&) const = default;
};

/// Step `step` is no longer applicable at structure index `at` (index 0 is
/// the initial structure; index k follows step k-1).
struct SoundnessViolation {
  std::size_t step = 0;
  std::size_t at = 0;

  bool operator==(const SoundnessViolation&) const = default;
};

struct DerivationTrace {
  Seed seed;
  ApproximateKnowledgeStructure initial;
  std::vector<Step> steps;
  bool complete = false;
  bool sound = false;
  bool total = false;
  std::optional<SoundnessViolation> violation;

  bool operator==(const DerivationTrace&) const = default;

  const ApproximateKnowledgeStructure& final() const {
    return steps.empty() ? initial : steps.back().after;
  }
  /// Structure at index k (0 = initial).
  const ApproximateKnowledgeStructure& at(std::size_t k) const {
    return k == 0 ? initial : steps.at(k - 1).after;
  }
};

struct DeriveResult {
  enum class Status {
    /// Every sound complete trace found reaches the same limit.
    Unique,
    /// No sound complete trace exists.
    NoSoundDerivation,
    /// Sound complete traces reach different limits.
    Ambiguous,
  };

  Status status = Status::NoSoundDerivation;
  /// A sound complete trace reaching the limit when Unique; otherwise the
  /// default-policy trace, for diagnostics.
  DerivationTrace trace;
  /// The trace built by the default policy.
  DerivationTrace policyTrace;
  /// Distinct limits of the sound complete traces found.
  std::vector<ApproximateKnowledgeStructure> limits;
  std::size_t nodesExplored = 0;

  bool total() const {
    return status == Status::Unique && trace.final().isTotal();
  }
};

/// Result of enumerating every complete trace.
struct TraceEnumeration {
  std::vector<DerivationTrace> traces;
  /// Branches cut at the length bound before completing.
  std::size_t truncated = 0;
};

/// Memoized exploration of every derivation from a seed.
struct Exploration {
  /// Distinct limits of sound complete traces.
  std::vector<ApproximateKnowledgeStructure> soundLimits;
  /// Some complete trace is unsound.
  bool anyUnsound = false;
  /// A sound complete trace and an unsound prefix, as witnesses.
  std::vector<OpInstance> soundWitness;
  std::vector<OpInstance> unsoundWitness;
  std::size_t states = 0;
};

class Engine {
 public:
  Engine(const GroundDefinition& def, EngineOptions options = {});

  const GroundDefinition& definition() const { return *def_; }
  const EngineOptions& options() const { return options_; }

  /// ((O + bottom, O + top), {(O' + bottom, O' + top) | O' in M}) with
  /// world ids 0..n-1. Throws StructuralError when a seed interpretation
  /// sets a defined atom.
  ApproximateKnowledgeStructure init(const Seed& seed) const;

  /// Every op instance whose guard holds and whose application changes `a`,
  /// in canonical order: real produce, real unfounded, then per world
  /// (by id) produce and unfounded, then learn.
  std::vector<OpInstance> applicable(const ApproximateKnowledgeStructure& a,
                                     UnfoundedMode mode = UnfoundedMode::Maximal) const;
  bool isApplicable(const ApproximateKnowledgeStructure& a, const OpInstance& op) const;
  /// Throws ContractError when `op` is not applicable.
  ApproximateKnowledgeStructure apply(const ApproximateKnowledgeStructure& a,
                                      const OpInstance& op) const;
  bool isComplete(const ApproximateKnowledgeStructure& a) const;

  /// The condition soundness re-checks at later structures: the body for
  /// produce and learn, certain falsity for unfounded sets.
  bool guardHolds(const ApproximateKnowledgeStructure& a, const OpInstance& op) const;

  /// Whether `op` cannot be invalidated by later knowledge: produce and
  /// learn bodies without negative modal literals, unfounded atoms whose
  /// rule bodies have no positive modal literal.
  bool isSafe(const OpInstance& op) const;

  /// Unfounded set of a target pair under the current semantics mode,
  /// restricted to `candidates`.
  Interpretation maximalUnfounded(const ApproximatingPair& target,
                                  const ApproximateKnowledgeStructure& a,
                                  const Interpretation& candidates) const;

  std::optional<SoundnessViolation> checkSound(const DerivationTrace& t) const;
  /// Fills complete, sound, total and violation.
  void finalize(DerivationTrace& t) const;

  /// The default policy: safe operations to saturation, then safe learns,
  /// then one remaining operation at a time in canonical order.
  DerivationTrace runPolicy(const Seed& seed) const;

  /// The limit of the sound complete derivations from `seed`.
  DeriveResult deriveLimit(const Seed& seed) const;

  /// Every complete trace of at most `maxLen` steps, with arbitrary
  /// unfounded sets. Throws SearchBoundError past `maxTraces` traces or
  /// when the vocabulary exceeds `maxAtoms`.
  TraceEnumeration enumerateTraces(const Seed& seed, std::size_t maxLen,
                                   std::size_t maxTraces = 100000,
                                   std::size_t maxAtoms = 4) const;

  /// Explores every derivation from `seed` (arbitrary unfounded sets) with
  /// memoization on (structure, ops applied so far).
  Exploration explore(const Seed& seed) const;

 private:
  struct Target {
    bool real;
    WorldId world;
  };

  bool produceGuard(const ApproximatingPair& target, const ApproximateKnowledgeStructure& a,
                    std::size_t rule) const;
  bool unfoundedGuard(const ApproximatingPair& target, const ApproximateKnowledgeStructure& a,
                      const Interpretation& u) const;
  bool learnRemoves(const ApproximateKnowledgeStructure& a, std::size_t rule) const;
  bool unfoundedApplicable(const ApproximatingPair& target,
                           const ApproximateKnowledgeStructure& a,
                           const Interpretation& u) const;
  void targetOps(const ApproximateKnowledgeStructure& a, const Target& t, UnfoundedMode mode,
                 std::vector<OpInstance>& out) const;

  /// Appends `op` and re-checks every earlier op at the new structure.
  /// Returns false (leaving the step appended) on a soundness violation.
  bool extend(DerivationTrace& t, const OpInstance& op) const;
  /// Safe ops to saturation (round-robin over targets), then safe learns,
  /// repeated to a fixpoint. Returns false on a soundness violation.
  bool saturateSafe(DerivationTrace& t) const;
  std::optional<OpInstance> firstUnsafe(const ApproximateKnowledgeStructure& a) const;

  const GroundDefinition* def_;
  EngineOptions options_;
  Interpretation open_;
  std::vector<bool> ruleNegModal_;
  std::vector<bool> rulePosModal_;
  Interpretation unfoundedSafe_;
};

/// Free-function forms of the engine operations.
ApproximateKnowledgeStructure initAKS(const GroundDefinition& def, const Seed& seed);
std::vector<OpInstance> applicableOps(const ApproximateKnowledgeStructure& a,
                                      const GroundDefinition& def,
                                      const EngineOptions& options = {});
ApproximateKnowledgeStructure applyOp(const ApproximateKnowledgeStructure& a,
                                      const OpInstance& op, const GroundDefinition& def,
                                      const EngineOptions& options = {});
DeriveResult deriveLimit(const GroundDefinition& def, const Seed& seed,
                         const EngineOptions& options = {});

}  // namespace kpd::engine
