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

// Ground formulas, rules and theories, and the naive finite-domain grounder
// that produces them.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kpd/kernel.hpp"
#include "kpd/syntax.hpp"

namespace kpd {

struct GroundFormula;
using GFormula = std::shared_ptr<const GroundFormula>;

/// Quantifier-free formula over vocabulary atoms. And/Or are n-ary and
/// flattened; True/False are folded away except at the root or under K.
struct GroundFormula {
  enum class Kind { Atom, Not, And, Or, Modal, True, False };

  Kind kind = Kind::True;
  AtomId atom = 0;
  std::vector<GFormula> children;

  bool isModalFree() const;
};

namespace gf {

GFormula atom(AtomId a);
GFormula top();
GFormula bottom();
/// Folds double constants: ~true = false, ~false = true.
GFormula neg(GFormula f);
/// Flattens nested conjunctions and folds constants.
GFormula conj(std::vector<GFormula> parts);
GFormula disj(std::vector<GFormula> parts);
GFormula modal(GFormula inner);

bool same(const GroundFormula& a, const GroundFormula& b);
std::string print(const GroundFormula& f, const Vocabulary& vocab);

}  // namespace gf

struct GroundRule {
  /// Atom node, or a Modal node over a modal-free formula.
  GFormula head;
  GFormula body;
  /// Index of the rule in the source definition this instance came from.
  std::size_t source = 0;

  bool isModalHead() const { return head->kind == GroundFormula::Kind::Modal; }
  AtomId headAtom() const { return head->atom; }
  /// psi for a head K psi.
  const GroundFormula& knowledge() const { return *head->children.front(); }
};

struct GroundDefinition {
  std::vector<GroundRule> rules;
  /// Defined atoms: instances of predicates heading an atom-headed rule.
  Interpretation defined;

  /// Indices of atom-headed rules whose head is `a`.
  const std::vector<std::size_t>& rulesFor(AtomId a) const { return byHead_.at(a); }
  /// Indices of modal-headed rules.
  const std::vector<std::size_t>& learnRules() const { return learn_; }

  /// Rebuilds the head index; call after editing `rules`.
  void index(std::size_t vocabSize);

 private:
  std::vector<std::vector<std::size_t>> byHead_;
  std::vector<std::size_t> learn_;
};

struct GroundTheory {
  std::shared_ptr<const Vocabulary> vocab;
  GroundDefinition definition;
  GFormula constraint = gf::top();
  /// Declarations carried over so the ground theory can be printed back
  /// as source text.
  std::vector<syntax::Domain> domains;
  std::vector<syntax::PredicateDecl> predicates;

  const Vocabulary& vocabulary() const { return *vocab; }
  Interpretation openAtoms() const { return vocab->openAtoms(); }
  Interpretation definedAtoms() const { return vocab->definedAtoms(); }
  bool isModalFree() const;
};

/// Instantiates every rule for every binding of its variables and expands
/// quantifiers. The vocabulary holds every instance of every declared
/// predicate, in declaration order. Throws GroundError.
GroundTheory ground(const syntax::Theory& theory);

/// Tags atoms defined or open: an atom is defined iff its predicate heads
/// an atom-headed rule of `def`.
void classifyAtoms(const syntax::Definition& def, Vocabulary& vocab);

/// The ground theory as a variable-free source theory; grounding it again
/// yields the same ground theory.
syntax::Theory toSyntax(const GroundTheory& g);

/// Source text of the ground theory.
std::string print(const GroundTheory& g);

/// Convenience: parse then ground.
GroundTheory loadTheory(std::string_view text);

}  // namespace kpd
