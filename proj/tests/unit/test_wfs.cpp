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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "kpd/ground.hpp"
#include "kpd/wfs.hpp"
#include "oracle.hpp"

using namespace kpd;

TEST_CASE("the liar has a non-total well-founded model") {
  GroundTheory g = loadTheory("define { p <- ~p. }");
  ApproximatingPair m = wfs::wfm(g.definition, g.vocabulary().empty());
  CHECK(m.lower().none());
  CHECK(m.upper() == g.vocabulary().interpretation({"p"}));
  CHECK_FALSE(m.isTotal());
}

TEST_CASE("transitive closure") {
  GroundTheory g = loadTheory(R"(
domain Node = {A, B, C}.
pred E(Node, Node). pred T(Node, Node).
define {
  T(x, y) <- E(x, y).
  T(x, z) <- exists y (E(x, y) & T(y, z)).
}
)");
  const Vocabulary& v = g.vocabulary();
  Interpretation open = v.interpretation({"E(A,B)", "E(B,C)"});
  ApproximatingPair m = wfs::wfm(g.definition, open);
  CHECK(m.isTotal());
  CHECK(m.lower() == (open | v.interpretation({"T(A,B)", "T(B,C)", "T(A,C)"})));
  CHECK(wfs::isDefModel(m.lower(), g.definition));
  CHECK_FALSE(wfs::isDefModel(m.lower().with(*v.find("T(C,A)")), g.definition));
}

TEST_CASE("an empty definition keeps the seed") {
  GroundTheory g = loadTheory("pred p. pred q.");
  Interpretation o = g.vocabulary().interpretation({"q"});
  CHECK(wfs::wfm(g.definition, o) == ApproximatingPair::total(o));
}

TEST_CASE("positive loops are unfounded") {
  GroundTheory g = loadTheory("define { p <- q. q <- p. r <- ~p. }");
  const Vocabulary& v = g.vocabulary();
  ApproximatingPair start = wfs::initialPair(v.empty(), g.definedAtoms());
  std::vector<Interpretation> sets = wfs::unfoundedSets(start, g.definition);
  Interpretation pq = v.interpretation({"p", "q"});
  CHECK(std::find(sets.begin(), sets.end(), pq) != sets.end());
  CHECK(wfs::maximalUnfoundedSet(start, g.definition) == pq);
  CHECK(wfs::isUnfounded(start, g.definition, pq));
  CHECK_FALSE(wfs::isUnfounded(start, g.definition, v.interpretation({"p"})));
  CHECK(wfs::wfm(g.definition, v.empty()) ==
        ApproximatingPair::total(v.interpretation({"r"})));
}

TEST_CASE("the maximal unfounded set is the union of all unfounded sets") {
  std::mt19937 rng(3);
  std::vector<std::string> atoms{"p", "q", "r", "s"};
  std::vector<std::string> pool = oracle::literals(atoms, false);
  std::vector<std::string> heads{"p", "q", "r"};
  for (int n = 0; n < 300; ++n) {
    std::vector<oracle::RuleText> rules;
    for (std::size_t k = 1 + rng() % 4; k > 0; --k) {
      rules.push_back(oracle::randomRule(rng, heads, pool, 2));
    }
    GroundTheory g = loadTheory(oracle::definitionSource(atoms, rules));
    const Vocabulary& v = g.vocabulary();
    Interpretation open = g.openAtoms() & Interpretation::of(v.size(), {3});
    ApproximatingPair start = wfs::initialPair(open, g.definedAtoms());
    Interpretation all(v.size());
    for (const Interpretation& u : wfs::unfoundedSets(start, g.definition)) all |= u;
    CHECK(wfs::maximalUnfoundedSet(start, g.definition) == all);
  }
}

TEST_CASE("every induction sequence reaches the well-founded model") {
  std::mt19937 rng(5);
  std::vector<std::string> atoms{"p", "q", "r", "s"};
  std::vector<std::string> pool = oracle::literals(atoms, false);
  std::vector<std::string> heads{"p", "q", "r", "s"};
  for (int n = 0; n < 300; ++n) {
    std::vector<oracle::RuleText> rules;
    for (std::size_t k = 1 + rng() % 5; k > 0; --k) {
      rules.push_back(oracle::randomRule(rng, heads, pool, 2));
    }
    GroundTheory g = loadTheory(oracle::definitionSource(atoms, rules));
    for (const Interpretation& o : oracle::openInterpretations(g)) {
      std::vector<ApproximatingPair> limits = oracle::inductionLimits(g.definition, o);
      REQUIRE(limits.size() == 1);
      CHECK(wfs::wfm(g.definition, o) == limits.front());
      CHECK(wfs::induce(g.definition, o).limit == limits.front());
    }
  }
}

TEST_CASE("induction sequences record their steps") {
  GroundTheory g = loadTheory("define { p <- true. q <- p. r <- r. }");
  wfs::InductionSequence s = wfs::induce(g.definition, g.vocabulary().empty());
  REQUIRE_FALSE(s.steps.empty());
  CHECK(s.steps.front().kind == wfs::InductionStep::Kind::Produce);
  for (std::size_t i = 1; i < s.steps.size(); ++i) {
    CHECK(s.steps[i].before == s.steps[i - 1].after);
    CHECK(precisionLeq(s.steps[i].before, s.steps[i].after));
  }
  CHECK(s.limit == s.steps.back().after);
  CHECK(s.limit.isTotal());
}

TEST_CASE("FO(ID) models check the constraint and the definition") {
  GroundTheory g = loadTheory("pred a. define { b <- a. } a.");
  const Vocabulary& v = g.vocabulary();
  CHECK(wfs::isFoidModel(v.interpretation({"a", "b"}), g));
  CHECK_FALSE(wfs::isFoidModel(v.interpretation({"a"}), g));
  CHECK_FALSE(wfs::isFoidModel(v.empty(), g));
}

TEST_CASE("modal definitions are refused") {
  GroundTheory g = loadTheory("define { q <- K p. }");
  CHECK_THROWS_AS(wfs::wfm(g.definition, g.vocabulary().empty()), MisuseError);
}
