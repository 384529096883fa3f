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

// Abstract syntax of FO(K) theories with knowledge producing definitions,
// plus the text-format parser and printer.
//
// Surface syntax:
//
//   domain Person = {Mary, John}.
//   domain Time = 0..2.
//   pred Eligible(Person).
//   define {
//     Eligible(x) <- HighGPA(x) | (Minority(x) & FairGPA(x)).
//     K ~Clean(t+1) <- Inspect & ~Clean(t).
//   }
//   constraint forall x:Person HighGPA(x) <=> x = Mary.
//   Minority(Mary).                      % bare formulas are constraints
//
// Constants start with an uppercase letter or a digit, variables with a
// lowercase letter. `=>` and `<=>` are desugared while parsing.

#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kpd/errors.hpp"

namespace kpd::syntax {

struct Term {
  enum class Kind { Variable, Constant };

  Kind kind = Kind::Constant;
  std::string name;
  /// `t+1`: successor offset, only on variables of numeric sorts.
  int offset = 0;

  static Term variable(std::string n, int offset = 0) {
    return Term{Kind::Variable, std::move(n), offset};
  }
  static Term constant(std::string n) { return Term{Kind::Constant, std::move(n), 0}; }

  bool isVariable() const { return kind == Kind::Variable; }
  std::string str() const;
  bool operator==(const Term&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Atom, Equal, Not, And, Or, Forall, Exists, Modal, True, False };

  Kind kind = Kind::True;
  /// Predicate name for Atom, bound variable for Forall/Exists.
  std::string name;
  /// Quantifier sort; empty until resolved when the source omitted it.
  std::string sort;
  /// Atom arguments, or the two sides of an Equal.
  std::vector<Term> terms;
  std::vector<FormulaPtr> children;
  SourceLoc loc;

  bool isModalFree() const;
  bool containsModal() const { return !isModalFree(); }
};

FormulaPtr atom(std::string predicate, std::vector<Term> args = {}, SourceLoc loc = {});
FormulaPtr equal(Term lhs, Term rhs, SourceLoc loc = {});
FormulaPtr neg(FormulaPtr f, SourceLoc loc = {});
FormulaPtr conj(FormulaPtr a, FormulaPtr b, SourceLoc loc = {});
FormulaPtr disj(FormulaPtr a, FormulaPtr b, SourceLoc loc = {});
FormulaPtr forall(std::string var, std::string sort, FormulaPtr body, SourceLoc loc = {});
FormulaPtr exists(std::string var, std::string sort, FormulaPtr body, SourceLoc loc = {});
/// Throws NestingError when `inner` already contains a modal operator.
FormulaPtr modal(FormulaPtr inner, SourceLoc loc = {});
FormulaPtr top();
FormulaPtr bottom();

/// Structural equality, ignoring source locations.
bool sameFormula(const Formula& a, const Formula& b);

/// `head <- body.` where head is an Atom or a Modal node over a modal-free
/// formula.
struct Rule {
  FormulaPtr head;
  FormulaPtr body;
  SourceLoc loc;
  /// Free variables with their inferred sorts, in order of first
  /// occurrence. Filled in by the resolver.
  std::vector<std::pair<std::string, std::string>> vars;

  bool isModalHead() const { return head->kind == Formula::Kind::Modal; }
};

struct Definition {
  std::vector<Rule> rules;

  /// Predicates heading an atom-headed rule. Predicates occurring only
  /// under a modal head stay open.
  std::set<std::string> definedPredicates() const;
};

struct Domain {
  std::string name;
  std::vector<std::string> constants;
  /// Declared as a range `lo..hi`; constants are then the decimal numerals.
  bool numeric = false;
  int lo = 0;
  int hi = -1;

  bool contains(std::string_view c) const;
};

struct PredicateDecl {
  std::string name;
  std::vector<std::string> sorts;
};

struct Theory {
  std::vector<Domain> domains;
  std::vector<PredicateDecl> predicates;
  Definition definition;
  /// Conjunction of all constraint statements; `true` when there are none.
  FormulaPtr constraint = top();

  const Domain* domain(std::string_view name) const;
  const PredicateDecl* predicate(std::string_view name) const;
};

bool sameTheory(const Theory& a, const Theory& b);

/// Parses and sort-checks a theory. Throws SyntaxError (NestingError for K
/// inside K) or SortError.
Theory parse(std::string_view text);

/// Parses a single formula against the declarations of `context`.
FormulaPtr parseFormula(std::string_view text, const Theory& context);

std::string print(const Formula& f);
std::string print(const Rule& r);
std::string print(const Theory& t);

}  // namespace kpd::syntax
