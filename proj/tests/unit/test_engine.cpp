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

#include "kpd/engine.hpp"
#include "kpd/evaluation.hpp"
#include "kpd/ground.hpp"
#include "oracle.hpp"

using namespace kpd;
using namespace kpd::engine;

namespace {

const char* kInterview = R"(
domain Person = {Mary, John}.
pred HighGPA(Person). pred FairGPA(Person). pred Minority(Person).
pred Eligible(Person). pred Interview(Person).
define {
  Eligible(x) <- HighGPA(x) | (Minority(x) & FairGPA(x)).
  Interview(x) <- ~K Eligible(x) & ~K ~Eligible(x).
}
)";

struct Interview {
  GroundTheory g = loadTheory(kInterview);
  const Vocabulary& v = g.vocabulary();
  Interpretation o1 = v.interpretation({"HighGPA(Mary)", "FairGPA(John)", "Minority(Mary)"});
  Interpretation o2 = o1.with(*v.find("Minority(John)"));
  Seed seed{o1, {o1, o2}};

  Interpretation plus(const Interpretation& o, std::initializer_list<std::string_view> names) {
    return o | v.interpretation(names);
  }
};

ApproximateKnowledgeStructure aks(ApproximatingPair real, std::vector<ApproximatingPair> ws) {
  return {std::move(real), WorldSet::fromPairs(std::move(ws))};
}

bool contains(const std::vector<ApproximateKnowledgeStructure>& v,
              const ApproximateKnowledgeStructure& a) {
  return std::find(v.begin(), v.end(), a) != v.end();
}

}  // namespace

TEST_CASE("initial structure of the interview seed") {
  Interview iv;
  Engine e(iv.g.definition);
  ApproximateKnowledgeStructure a0 = e.init(iv.seed);
  Interpretation top = iv.g.definedAtoms();
  CHECK(a0.real == ApproximatingPair(iv.o1, iv.o1 | top));
  REQUIRE(a0.worlds.size() == 2);
  CHECK(a0.worlds[1].pair == ApproximatingPair(iv.o2, iv.o2 | top));
  CHECK_THROWS_AS(e.init(Seed{iv.o1.with(*iv.v.find("Eligible(Mary)")), {iv.o1}}),
                  StructuralError);
}

TEST_CASE("interview derivation passes through the intermediate structure") {
  Interview iv;
  Engine e(iv.g.definition);
  DerivationTrace t = e.runPolicy(iv.seed);
  CHECK(t.complete);
  CHECK(t.sound);
  CHECK(t.total);
  CHECK_FALSE(t.violation.has_value());

  ApproximatingPair aPrime(iv.plus(iv.o1, {"Eligible(Mary)"}),
                           iv.plus(iv.o1, {"Eligible(Mary)", "Interview(Mary)",
                                           "Interview(John)"}));
  ApproximatingPair bPrime(
      iv.plus(iv.o2, {"Eligible(Mary)", "Eligible(John)"}),
      iv.plus(iv.o2, {"Eligible(Mary)", "Eligible(John)", "Interview(Mary)",
                      "Interview(John)"}));
  ApproximateKnowledgeStructure w6 = aks(aPrime, {aPrime, bPrime});
  bool seen = false;
  for (std::size_t k = 0; k <= t.steps.size(); ++k) seen = seen || t.at(k) == w6;
  CHECK(seen);

  Interpretation i = iv.plus(iv.o1, {"Eligible(Mary)", "Interview(John)"});
  Interpretation j = iv.plus(iv.o2, {"Eligible(Mary)", "Eligible(John)", "Interview(John)"});
  CHECK(t.final() == aks(ApproximatingPair::total(i),
                         {ApproximatingPair::total(i), ApproximatingPair::total(j)}));
}

TEST_CASE("interview limit is unique") {
  Interview iv;
  Engine e(iv.g.definition);
  DeriveResult r = e.deriveLimit(iv.seed);
  CHECK(r.status == DeriveResult::Status::Unique);
  CHECK(r.total());
  CHECK(r.limits.size() == 1);
  CHECK(r.trace.final() == r.policyTrace.final());
  Exploration x = e.explore(iv.seed);
  REQUIRE(x.soundLimits.size() == 1);
  CHECK(x.soundLimits[0] == r.trace.final());
}

TEST_CASE("applying an inapplicable operation is a contract error") {
  Interview iv;
  Engine e(iv.g.definition);
  ApproximateKnowledgeStructure a0 = e.init(iv.seed);
  OpInstance bogus = OpInstance::realProduce(*iv.v.find("Eligible(John)"), 1);
  CHECK_FALSE(e.isApplicable(a0, bogus));
  CHECK_THROWS_AS(e.apply(a0, bogus), ContractError);
  for (const OpInstance& op : e.applicable(a0)) {
    CHECK(e.isApplicable(a0, op));
    CHECK_FALSE(e.apply(a0, op) == a0);
  }
}

TEST_CASE("operations only make structures more precise") {
  Interview iv;
  Engine e(iv.g.definition);
  DerivationTrace t = e.runPolicy(iv.seed);
  for (std::size_t k = 1; k <= t.steps.size(); ++k) {
    const ApproximateKnowledgeStructure& before = t.at(k - 1);
    const ApproximateKnowledgeStructure& after = t.at(k);
    CHECK(precisionLeq(before.real, after.real));
    for (const World& w : after.worlds) {
      const World* old = before.worlds.find(w.id);
      REQUIRE(old != nullptr);
      CHECK(precisionLeq(old->pair, w.pair));
    }
  }
}

TEST_CASE("learning removes the worlds where the knowledge fails") {
  GroundTheory g = loadTheory(R"(
domain Time = 0..1.
pred InitClean. pred Inspect. pred Clean(Time).
define {
  Clean(0) <- InitClean.
  Clean(1) <- Clean(0).
  K Clean(1) <- Inspect & Clean(0).
  K ~Clean(1) <- Inspect & ~Clean(0).
}
)");
  const Vocabulary& v = g.vocabulary();
  Interpretation dirty = v.interpretation({"Inspect"});
  Interpretation clean = v.interpretation({"Inspect", "InitClean"});
  Engine e(g.definition);
  DeriveResult r = e.deriveLimit(Seed{dirty, {dirty, clean}});
  REQUIRE(r.status == DeriveResult::Status::Unique);
  const ApproximateKnowledgeStructure& limit = r.trace.final();
  REQUIRE(limit.worlds.size() == 1);
  CHECK(limit.worlds[0].id == 0);
  bool learned = std::any_of(r.trace.steps.begin(), r.trace.steps.end(),
                             [](const Step& s) { return s.op.kind == OpKind::Learn; });
  CHECK(learned);
  CHECK(evalAKS(limit, *gf::modal(gf::neg(gf::atom(*v.find("Clean(1)"))))));
}

TEST_CASE("knowing p because p is not known is never sound") {
  GroundTheory g = loadTheory("define { K p <- ~K p. }");
  const Vocabulary& v = g.vocabulary();
  Interpretation none = v.empty(), p = v.interpretation({"p"});
  Engine e(g.definition);
  for (const Seed& s : oracle::allSeeds(g, 2)) {
    CAPTURE(v.format(s.real));
    DeriveResult r = e.deriveLimit(s);
    bool learnable = std::find(s.worlds.begin(), s.worlds.end(), none) != s.worlds.end();
    if (learnable) {
      CHECK(r.status == DeriveResult::Status::NoSoundDerivation);
    } else {
      // Every world already satisfies p: nothing to learn, the empty
      // derivation is complete and sound.
      CHECK(r.status == DeriveResult::Status::Unique);
      CHECK(r.trace.steps.empty());
    }
  }
  DerivationTrace t = e.runPolicy(Seed{none, {none, p}});
  CHECK(t.complete);
  CHECK_FALSE(t.sound);
  REQUIRE(t.violation.has_value());
  CHECK(t.violation->step == 0);
}

TEST_CASE("side effects of learning make the greedy derivation unsound") {
  GroundTheory g = loadTheory("define { q <- p. K q <- r. r <- ~K p. }");
  const Vocabulary& v = g.vocabulary();
  Interpretation none = v.empty(), p = v.interpretation({"p"});
  Engine e(g.definition);
  DerivationTrace t = e.runPolicy(Seed{none, {none, p}});
  CHECK(t.complete);
  CHECK_FALSE(t.sound);
  CHECK(e.deriveLimit(Seed{none, {none, p}}).status ==
        DeriveResult::Status::NoSoundDerivation);
}

TEST_CASE("mutually blocking knowledge rules reach two sound limits") {
  // Learning q from ~K p first leaves only worlds with q; ~K p still holds
  // there, so the learn step stays applicable and the trace is sound. The
  // symmetric trace is sound as well, with a different limit.
  GroundTheory g = loadTheory("define { K q <- ~K p. K p <- ~K q. }");
  std::vector<Interpretation> all = oracle::openInterpretations(g);
  Seed seed{g.vocabulary().empty(), all};
  Engine e(g.definition);
  TraceEnumeration traces = e.enumerateTraces(seed, 8);
  CHECK(traces.truncated == 0);
  std::vector<ApproximateKnowledgeStructure> limits;
  for (const DerivationTrace& t : traces.traces) {
    CHECK(t.complete);
    if (!contains(limits, t.final())) limits.push_back(t.final());
  }
  CHECK(limits.size() >= 2);
  std::size_t sound = std::count_if(traces.traces.begin(), traces.traces.end(),
                                    [](const DerivationTrace& t) { return t.sound; });
  CHECK(sound == 2);
  CHECK(e.deriveLimit(seed).status == DeriveResult::Status::Ambiguous);
  CHECK(e.explore(seed).soundLimits.size() == 2);
}

TEST_CASE("learning after an unfounded step can invalidate it") {
  // q is unfounded while some world lacks p; learning K p removes that
  // world and makes K p true again.
  GroundTheory g = loadTheory("define { q <- K p. K p <- true. }");
  const Vocabulary& v = g.vocabulary();
  Interpretation none = v.empty(), p = v.interpretation({"p"});
  Seed seed{none, {none, p}};
  Engine e(g.definition);
  ApproximateKnowledgeStructure a0 = e.init(seed);
  OpInstance unfounded = OpInstance::realUnfounded(v.interpretation({"q"}));
  REQUIRE(e.isApplicable(a0, unfounded));
  CHECK_FALSE(e.isSafe(unfounded));
  CHECK(e.isSafe(OpInstance::learn(1)));

  DerivationTrace t;
  t.seed = seed;
  t.initial = a0;
  t.steps.push_back({unfounded, e.apply(a0, unfounded)});
  t.steps.push_back({OpInstance::learn(1), e.apply(t.final(), OpInstance::learn(1))});
  e.finalize(t);
  CHECK_FALSE(t.sound);
  REQUIRE(t.violation.has_value());
  CHECK(t.violation->step == 0);
  CHECK(t.violation->at == 2);

  // The default policy learns first and stays sound.
  DerivationTrace policy = e.runPolicy(seed);
  CHECK(policy.sound);
  CHECK(policy.complete);
  CHECK(e.explore(seed).anyUnsound);
}

TEST_CASE("operations on removed worlds") {
  GroundTheory g = loadTheory("pred a. define { b <- a. K ~a <- true. }");
  const Vocabulary& v = g.vocabulary();
  Interpretation none = v.empty(), a = v.interpretation({"a"});
  Seed seed{none, {none, a}};
  OpInstance produce = OpInstance::worldProduce(1, *v.find("b"), 0);
  OpInstance learn = OpInstance::learn(1);
  for (bool strict : {false, true}) {
    EngineOptions o;
    o.strictRemovedWorlds = strict;
    Engine e(g.definition, o);
    DerivationTrace t;
    t.seed = seed;
    t.initial = e.init(seed);
    t.steps.push_back({produce, e.apply(t.initial, produce)});
    t.steps.push_back({learn, e.apply(t.final(), learn)});
    e.finalize(t);
    CHECK(t.final().worlds.size() == 1);
    CHECK(t.sound == !strict);
  }
}

TEST_CASE("literal world upper bound after a produce step") {
  // The world's own open atom a is not in the real upper bound, so the
  // literal reading cannot produce b in it.
  GroundTheory g = loadTheory("pred a. define { b <- a. }");
  const Vocabulary& v = g.vocabulary();
  Interpretation none = v.empty(), a = v.interpretation({"a"});
  Seed seed{none, {a}};
  OpInstance op = OpInstance::worldProduce(0, *v.find("b"), 0);
  EngineOptions literal;
  literal.op2 = Op2Mode::Literal;
  CHECK(Engine(g.definition).isApplicable(Engine(g.definition).init(seed), op));
  Engine lit(g.definition, literal);
  CHECK_FALSE(lit.isApplicable(lit.init(seed), op));
  // With equal open parts the literal reading narrows the world's upper bound.
  Seed same{a, {a}};
  ApproximateKnowledgeStructure after = lit.apply(lit.init(same), op);
  CHECK(after.worlds[0].pair.upper() == (a | g.definedAtoms()));
}

TEST_CASE("literal certain-falsity check for unfounded sets") {
  Interview iv;
  EngineOptions literal;
  literal.semantics = Semantics::Op4Literal;
  Engine flip(iv.g.definition), lit(iv.g.definition, literal);
  ApproximateKnowledgeStructure a0 = flip.init(iv.seed);
  Interpretation intJohn = iv.v.interpretation({"Interview(John)"});
  OpInstance op = OpInstance::realUnfounded(intJohn);
  // Unflipped worlds read the lower bounds, where nobody is eligible, so
  // ~K ~Eligible(John) looks false right away.
  CHECK(lit.isApplicable(a0, op));
  CHECK_FALSE(flip.isApplicable(a0, op));
  DerivationTrace t = lit.runPolicy(iv.seed);
  CHECK_FALSE(t.sound);
}

TEST_CASE("free functions agree with the engine") {
  Interview iv;
  Engine e(iv.g.definition);
  ApproximateKnowledgeStructure a0 = initAKS(iv.g.definition, iv.seed);
  CHECK(a0 == e.init(iv.seed));
  std::vector<OpInstance> ops = applicableOps(a0, iv.g.definition);
  CHECK(ops == e.applicable(a0));
  REQUIRE_FALSE(ops.empty());
  CHECK(applyOp(a0, ops[0], iv.g.definition) == e.apply(a0, ops[0]));
  CHECK(deriveLimit(iv.g.definition, iv.seed).trace.final() ==
        e.deriveLimit(iv.seed).trace.final());
}

TEST_CASE("exploration agrees with full trace enumeration") {
  std::mt19937 rng(23);
  std::vector<std::string> atoms{"p", "q"};
  std::vector<std::string> pool = oracle::literals(atoms, true);
  std::vector<std::string> heads{"p", "q", "K p", "K q", "K ~p"};
  for (int n = 0; n < 150; ++n) {
    std::vector<oracle::RuleText> rules;
    for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
      rules.push_back(oracle::randomRule(rng, heads, pool, 2));
    }
    GroundTheory g = loadTheory(oracle::definitionSource(atoms, rules));
    Engine e(g.definition);
    std::vector<Seed> seeds = oracle::allSeeds(g, 2);
    for (std::size_t s = 0; s < seeds.size(); s += 3) {
      TraceEnumeration all = e.enumerateTraces(seeds[s], 16);
      REQUIRE(all.truncated == 0);
      std::vector<ApproximateKnowledgeStructure> sound;
      bool anyUnsound = false;
      for (const DerivationTrace& t : all.traces) {
        REQUIRE(t.complete);
        CHECK(e.checkSound(t).has_value() == !t.sound);
        if (!t.sound) anyUnsound = true;
        if (t.sound && !contains(sound, t.final())) sound.push_back(t.final());
      }
      Exploration x = e.explore(seeds[s]);
      CHECK(x.anyUnsound == anyUnsound);
      CHECK(x.soundLimits.size() == sound.size());
      for (const ApproximateKnowledgeStructure& l : x.soundLimits) CHECK(contains(sound, l));
      DeriveResult r = e.deriveLimit(seeds[s]);
      if (sound.empty()) {
        CHECK(r.status == DeriveResult::Status::NoSoundDerivation);
      } else if (sound.size() == 1) {
        CHECK(r.status == DeriveResult::Status::Unique);
        CHECK(r.trace.final() == sound[0]);
      } else {
        CHECK(r.status != DeriveResult::Status::NoSoundDerivation);
      }
    }
  }
}
