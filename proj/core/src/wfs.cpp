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

#include "kpd/wfs.hpp"

#include "kpd/evaluation.hpp"

namespace kpd::wfs {

namespace {

void requireModalFree(const GroundDefinition& def) {
  for (const GroundRule& r : def.rules) {
    if (r.isModalHead() || !r.body->isModalFree()) {
      throw MisuseError("well-founded evaluation of a definition with modal literals");
    }
  }
}

bool certainlyFalse(const ApproximatingPair& pair, const GroundDefinition& def,
                    const Interpretation& newUpper, AtomId a) {
  for (std::size_t r : def.rulesFor(a)) {
    if (evalPair(PairView(newUpper, pair.lower()), *def.rules[r].body)) return false;
  }
  return true;
}

}  // namespace

ApproximatingPair initialPair(const Interpretation& open, const Interpretation& defined) {
  return ApproximatingPair(open - defined, open | defined);
}

std::vector<std::pair<AtomId, std::size_t>> produceApplicable(const ApproximatingPair& pair,
                                                              const GroundDefinition& def) {
  requireModalFree(def);
  std::vector<std::pair<AtomId, std::size_t>> out;
  for (std::size_t r = 0; r < def.rules.size(); ++r) {
    AtomId a = def.rules[r].headAtom();
    if (pair.lower().test(a)) continue;
    if (evalPair(PairView(pair), *def.rules[r].body)) out.emplace_back(a, r);
  }
  return out;
}

bool isUnfounded(const ApproximatingPair& pair, const GroundDefinition& def,
                 const Interpretation& u) {
  if (u.none() || !u.subsetOf(def.defined) || !u.subsetOf(pair.upper()) ||
      u.intersects(pair.lower())) {
    return false;
  }
  Interpretation newUpper = pair.upper() - u;
  for (AtomId a : u.atoms()) {
    if (!certainlyFalse(pair, def, newUpper, a)) return false;
  }
  return true;
}

std::vector<Interpretation> unfoundedSets(const ApproximatingPair& pair,
                                          const GroundDefinition& def,
                                          std::size_t maxCandidates) {
  requireModalFree(def);
  std::vector<AtomId> cand = ((pair.upper() - pair.lower()) & def.defined).atoms();
  if (cand.size() > maxCandidates) {
    throw SearchBoundError("unfounded-set enumeration over " + std::to_string(cand.size()) +
                           " candidate atoms exceeds the bound of " +
                           std::to_string(maxCandidates));
  }
  std::vector<Interpretation> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cand.size()); ++mask) {
    Interpretation u(pair.upper().size());
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (mask >> k & 1) u.set(cand[k]);
    }
    if (isUnfounded(pair, def, u)) out.push_back(std::move(u));
  }
  return out;
}

Interpretation maximalUnfoundedSet(const ApproximatingPair& pair, const GroundDefinition& def,
                                   const Interpretation& candidates) {
  requireModalFree(def);
  Interpretation u = (pair.upper() - pair.lower()) & def.defined & candidates;
  bool changed = true;
  while (changed && !u.none()) {
    changed = false;
    Interpretation newUpper = pair.upper() - u;
    for (AtomId a : u.atoms()) {
      if (!certainlyFalse(pair, def, newUpper, a)) {
        u.reset(a);
        changed = true;
      }
    }
  }
  return u;
}

Interpretation maximalUnfoundedSet(const ApproximatingPair& pair, const GroundDefinition& def) {
  return maximalUnfoundedSet(pair, def, Interpretation::full(pair.upper().size()));
}

InductionSequence induce(const GroundDefinition& def, const Interpretation& open) {
  requireModalFree(def);
  InductionSequence seq;
  seq.seed = open - def.defined;
  ApproximatingPair cur = initialPair(seq.seed, def.defined);
  for (;;) {
    bool progressed = false;
    for (bool produced = true; produced;) {
      produced = false;
      for (const auto& [a, r] : produceApplicable(cur, def)) {
        if (cur.lower().test(a)) continue;
        InductionStep s;
        s.kind = InductionStep::Kind::Produce;
        s.atom = a;
        s.rule = r;
        s.before = cur;
        cur = ApproximatingPair(cur.lower().with(a), cur.upper());
        s.after = cur;
        seq.steps.push_back(std::move(s));
        produced = progressed = true;
      }
    }
    Interpretation u = maximalUnfoundedSet(cur, def);
    if (!u.none()) {
      InductionStep s;
      s.kind = InductionStep::Kind::Unfounded;
      s.removed = u;
      s.before = cur;
      cur = ApproximatingPair(cur.lower(), cur.upper() - u);
      s.after = cur;
      seq.steps.push_back(std::move(s));
      progressed = true;
    }
    if (!progressed) break;
  }
  seq.limit = cur;
  return seq;
}

ApproximatingPair wfm(const GroundDefinition& def, const Interpretation& open) {
  return induce(def, open).limit;
}

bool isDefModel(const Interpretation& i, const GroundDefinition& def) {
  return wfm(def, i - def.defined) == ApproximatingPair::total(i);
}

bool isFoidModel(const Interpretation& i, const GroundTheory& t) {
  return evalClassical(i, *t.constraint) && isDefModel(i, t.definition);
}

}  // namespace kpd::wfs
