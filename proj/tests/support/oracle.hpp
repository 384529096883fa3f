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

// Reference implementations used as test oracles. They share no code with
// the library beyond the data types: formulas are evaluated through
// negation normal form, and well-founded models are found by enumerating
// every induction sequence.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "kpd/engine.hpp"
#include "kpd/ground.hpp"
#include "kpd/kernel.hpp"

namespace kpd::oracle {

/// Pair satisfaction via negation normal form: atoms in positive position
/// read `first`, atoms in negative position read `second`. Throws
/// std::logic_error on a modal node.
bool evalPair(const GroundFormula& f, const Interpretation& first,
              const Interpretation& second);

/// Satisfaction in an approximate knowledge structure via negation normal
/// form: K psi in positive position is "psi holds in every world pair",
/// in negative position "~psi holds in some world pair".
bool evalAKS(const ApproximateKnowledgeStructure& a, const GroundFormula& f);

/// Two-valued satisfaction in a knowledge structure.
bool evalKS(const Interpretation& real, const std::vector<Interpretation>& worlds,
            const GroundFormula& f);

/// Every limit reachable by an induction sequence of a modal-free
/// definition from the open interpretation `open` (any produce step, any
/// unfounded set).
std::vector<ApproximatingPair> inductionLimits(const GroundDefinition& def,
                                               const Interpretation& open);

/// Every open interpretation of `t`, as full-vocabulary interpretations.
std::vector<Interpretation> openInterpretations(const GroundTheory& t);

/// All nonempty subsets of `items`, in binary counting order.
std::vector<std::vector<Interpretation>> nonemptySubsets(
    const std::vector<Interpretation>& items);

/// A rule as source text over the atoms p, q, r, s.
struct RuleText {
  std::string head;
  std::string body;
  std::string str() const { return head + " <- " + body + "."; }
};

/// Source of a theory declaring `atoms` as 0-ary predicates, with the given
/// rules and no constraint.
std::string definitionSource(const std::vector<std::string>& atoms,
                             const std::vector<RuleText>& rules);

/// Every set of 1..maxRules distinct rules drawn from heads x bodies.
std::vector<std::vector<RuleText>> ruleGrid(const std::vector<std::string>& heads,
                                            const std::vector<std::string>& bodies,
                                            std::size_t maxRules);

/// Literal pools over `atoms`: plain and negated atoms, and when `modal`
/// is set K a and ~K a (only K a when `positiveModalOnly`).
std::vector<std::string> literals(const std::vector<std::string>& atoms, bool modal,
                                  bool positiveModalOnly = false);

/// A random rule with a body of up to `maxConjuncts` literals from `pool`,
/// occasionally a disjunction.
RuleText randomRule(std::mt19937& rng, const std::vector<std::string>& heads,
                    const std::vector<std::string>& pool, std::size_t maxConjuncts);

/// Every seed (O, M) of `t` with O ranging over the open interpretations
/// and M over their nonempty subsets of size at most `maxWorlds`.
std::vector<engine::Seed> allSeeds(const GroundTheory& t, std::size_t maxWorlds);

/// A random ground formula over atoms 0..atoms-1 of at most `depth`
/// connectives. With `modal`, K nodes may appear (never nested).
GFormula randomFormula(std::mt19937& rng, std::size_t atoms, std::size_t depth, bool modal);

/// A random approximate knowledge structure over `atoms` atoms with 0..3
/// worlds.
ApproximateKnowledgeStructure randomAKS(std::mt19937& rng, std::size_t atoms);

}  // namespace kpd::oracle
