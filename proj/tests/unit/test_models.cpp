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
#include <fstream>
#include <random>
#include <sstream>

#include "kpd/ground.hpp"
#include "kpd/models.hpp"
#include "kpd/wfs.hpp"
#include "oracle.hpp"

using namespace kpd;
using namespace kpd::models;

namespace {

GroundTheory loadFile(const std::string& name) {
  std::ifstream in(std::string(KPD_THEORY_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return loadTheory(ss.str());
}

bool hasStructure(const std::vector<ModelReport>& v, const KnowledgeStructure& s) {
  return std::any_of(v.begin(), v.end(),
                     [&](const ModelReport& m) { return m.structure == s; });
}

}  // namespace

TEST_CASE("interview has exactly two strong models") {
  GroundTheory g = loadFile("interview1.kpd");
  const Vocabulary& v = g.vocabulary();
  SearchConfig cfg;
  cfg.worldsFromConstraint = true;
  ModelFinder f(g, cfg);
  Interpretation o1 = v.interpretation({"HighGPA(Mary)", "FairGPA(John)", "Minority(Mary)"});
  Interpretation o2 = o1.with(*v.find("Minority(John)"));
  CHECK(f.candidateWorlds() == std::vector<Interpretation>{o1, o2});

  Interpretation i = o1 | v.interpretation({"Eligible(Mary)", "Interview(John)"});
  Interpretation j =
      o2 | v.interpretation({"Eligible(Mary)", "Eligible(John)", "Interview(John)"});
  std::vector<ModelReport> strong = f.strongModels();
  REQUIRE(strong.size() == 2);
  CHECK(strong[0].structure == KnowledgeStructure(i, {i, j}));
  CHECK(strong[1].structure == KnowledgeStructure(j, {i, j}));
  for (const ModelReport& m : strong) {
    CHECK(m.strength == Strength::Strong);
    CHECK(m.witness.sound);
    CHECK(m.witness.complete);
    CHECK(m.witness.total);
    CHECK(m.witness.final().collapse() == m.structure);
  }
  CHECK(f.diagnostics().empty());
}

TEST_CASE("model checks on the interview") {
  GroundTheory g = loadFile("interview1.kpd");
  const Vocabulary& v = g.vocabulary();
  SearchConfig cfg;
  cfg.worldsFromConstraint = true;
  ModelFinder f(g, cfg);
  Interpretation o1 = v.interpretation({"HighGPA(Mary)", "FairGPA(John)", "Minority(Mary)"});
  Interpretation o2 = o1.with(*v.find("Minority(John)"));
  Interpretation i = o1 | v.interpretation({"Eligible(Mary)", "Interview(John)"});
  Interpretation j =
      o2 | v.interpretation({"Eligible(Mary)", "Eligible(John)", "Interview(John)"});
  CHECK(f.checkWeak(KnowledgeStructure(i, {i, j})).holds);
  CHECK(f.checkStrong(KnowledgeStructure(i, {i, j})).holds);
  // The limit from (O_1, {O_1, O_2}) keeps both worlds.
  CheckResult single = f.checkWeak(KnowledgeStructure(i, {i}));
  CHECK_FALSE(single.holds);
  CHECK_FALSE(single.reason.empty());
  CHECK_FALSE(f.checkWeak(KnowledgeStructure(i, {j})).holds);
}

TEST_CASE("unwarranted knowledge is weak but not strong") {
  GroundTheory g = loadFile("q_from_kp.kpd");
  const Vocabulary& v = g.vocabulary();
  ModelFinder f(g);
  Interpretation pq = v.interpretation({"p", "q"});
  KnowledgeStructure s(pq, {pq});
  CHECK(hasStructure(f.weakModels(), s));
  CHECK_FALSE(hasStructure(f.strongModels(), s));
  CHECK(f.checkWeak(s).holds);
  CHECK_FALSE(f.checkStrong(s).holds);
}

TEST_CASE("knowledge justified by its own absence") {
  // K p <- ~K p: from a seed whose worlds all satisfy p nothing is learned,
  // so ({p}, {{p}}) satisfies the weak and strong model conditions.
  GroundTheory g = loadFile("kp_notkp.kpd");
  const Vocabulary& v = g.vocabulary();
  ModelFinder f(g);
  Interpretation p = v.interpretation({"p"});
  std::vector<ModelReport> weak = f.weakModels();
  REQUIRE(weak.size() == 1);
  CHECK(weak[0].structure == KnowledgeStructure(p, {p}));
  CHECK(weak[0].witness.steps.empty());
  CHECK(f.strongModels().size() == 1);
}

TEST_CASE("canonical order and world fixpoint of weak models") {
  for (const char* name : {"q_from_kp.kpd", "kq_kp_cycle.kpd", "interview1.kpd"}) {
    CAPTURE(name);
    GroundTheory g = loadFile(name);
    SearchConfig cfg;
    cfg.worldsFromConstraint = true;
    ModelFinder f(g, cfg);
    const std::vector<ModelReport>& weak = f.weakModels();
    CHECK(std::is_sorted(weak.begin(), weak.end(), [](const auto& a, const auto& b) {
      return canonicalLess(a.structure, b.structure);
    }));
    Interpretation open = g.openAtoms();
    for (const ModelReport& m : weak) {
      std::vector<Interpretation> restricted;
      for (const Interpretation& w : m.structure.possible) restricted.push_back(w & open);
      std::sort(restricted.begin(), restricted.end());
      std::vector<Interpretation> seeded = m.seed.worlds;
      std::sort(seeded.begin(), seeded.end());
      CHECK(restricted == seeded);
      CHECK(m.structure.consistent());
    }
  }
}

TEST_CASE("strong models are weak models") {
  std::mt19937 rng(29);
  std::vector<std::string> atoms{"p", "q", "r"};
  std::vector<std::string> pool = oracle::literals(atoms, true);
  std::vector<std::string> heads{"q", "r", "K p", "K ~p", "K q"};
  for (int n = 0; n < 60; ++n) {
    std::vector<oracle::RuleText> rules;
    for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
      rules.push_back(oracle::randomRule(rng, heads, pool, 2));
    }
    GroundTheory g = loadTheory(oracle::definitionSource(atoms, rules));
    ModelFinder f(g);
    std::vector<ModelReport> weak = f.weakModels();
    for (const ModelReport& m : f.strongModels()) {
      CHECK(hasStructure(weak, m.structure));
      CHECK(f.checkStrong(m.structure).holds);
    }
  }
}

TEST_CASE("without modal literals strong real worlds are the FO(ID) models") {
  std::mt19937 rng(31);
  std::vector<std::string> atoms{"p", "q", "r", "s"};
  std::vector<std::string> pool = oracle::literals(atoms, false);
  std::vector<std::string> heads{"p", "q"};
  for (int n = 0; n < 40; ++n) {
    std::vector<oracle::RuleText> rules;
    for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
      rules.push_back(oracle::randomRule(rng, heads, pool, 2));
    }
    std::string src = oracle::definitionSource(atoms, rules);
    if (n % 2 == 0) src += "r | p.\n";
    GroundTheory g = loadTheory(src);
    CAPTURE(src);
    ModelFinder f(g);
    std::vector<Interpretation> reals;
    for (const ModelReport& m : f.strongModels()) reals.push_back(m.structure.real);
    std::sort(reals.begin(), reals.end());
    reals.erase(std::unique(reals.begin(), reals.end()), reals.end());
    std::vector<Interpretation> foid;
    for (const Interpretation& o : oracle::openInterpretations(g)) {
      ApproximatingPair m = wfs::wfm(g.definition, o);
      if (m.isTotal() && wfs::isFoidModel(m.lower(), g)) foid.push_back(m.lower());
    }
    std::sort(foid.begin(), foid.end());
    CHECK(reals == foid);
  }
}

TEST_CASE("search space bounds") {
  GroundTheory g = loadTheory("pred a. pred b. pred c. pred d. pred e.");
  ModelFinder f(g);
  CHECK_THROWS_AS(f.candidateWorlds(), SearchSpaceError);
  SearchConfig cfg;
  cfg.maxOpenAtoms = 5;
  cfg.maxCandidateWorlds = 16;
  CHECK_THROWS_AS(ModelFinder(g, cfg).weakModels(), SearchSpaceError);
  SearchConfig hint;
  hint.worldsHint = std::vector<Interpretation>{g.vocabulary().interpretation({"a"})};
  ModelFinder h(g, hint);
  CHECK(h.weakModels().size() == 1);
}

TEST_CASE("world hints must stay within the open atoms") {
  GroundTheory g = loadTheory("pred a. define { b <- a. }");
  SearchConfig hint;
  hint.worldsHint = std::vector<Interpretation>{g.vocabulary().interpretation({"b"})};
  CHECK_THROWS_AS(ModelFinder(g, hint).candidateWorlds(), StructuralError);
}

TEST_CASE("ambiguous seeds are reported") {
  GroundTheory g = loadFile("kq_kp_cycle.kpd");
  ModelFinder f(g);
  f.weakModels();
  CHECK_FALSE(f.diagnostics().empty());
  for (const Diagnostic& d : f.diagnostics()) CHECK(d.distinctLimits >= 2);
}
