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

#include "kpd/models.hpp"

#include <algorithm>

#include "kpd/evaluation.hpp"

namespace kpd::models {

const char* strengthName(Strength s) { return s == Strength::Weak ? "weak" : "strong"; }

bool canonicalLess(const KnowledgeStructure& a, const KnowledgeStructure& b) { return a < b; }

namespace {

std::vector<Interpretation> sortedUnique(std::vector<Interpretation> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Every interpretation that sets only atoms of `mask`, in canonical order.
std::vector<Interpretation> subsetsOf(const Interpretation& mask) {
  std::vector<AtomId> atoms = mask.atoms();
  std::vector<Interpretation> out;
  out.reserve(std::size_t{1} << atoms.size());
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << atoms.size()); ++bits) {
    Interpretation i(mask.size());
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (bits >> k & 1) i.set(atoms[k]);
    }
    out.push_back(std::move(i));
  }
  return sortedUnique(std::move(out));
}

void collectAtoms(const GroundFormula& f, Interpretation& out) {
  if (f.kind == GroundFormula::Kind::Atom) out.set(f.atom);
  for (const GFormula& c : f.children) collectAtoms(*c, out);
}

void sortReports(std::vector<ModelReport>& v) {
  std::sort(v.begin(), v.end(), [](const ModelReport& a, const ModelReport& b) {
    return a.structure < b.structure;
  });
}

}  // namespace

ModelFinder::ModelFinder(const GroundTheory& theory, SearchConfig config)
    : theory_(&theory),
      config_(std::move(config)),
      engine_(theory.definition, config_.engine),
      open_(theory.openAtoms()) {}

std::vector<Interpretation> ModelFinder::candidateWorlds() const {
  const std::size_t nOpen = open_.count();
  std::vector<Interpretation> out;
  if (config_.worldsHint) {
    for (const Interpretation& h : *config_.worldsHint) {
      if (h.size() != open_.size() || !h.subsetOf(open_)) {
        throw StructuralError("world hint assigns atoms outside the open vocabulary");
      }
    }
    out = sortedUnique(*config_.worldsHint);
  } else if (config_.worldsFromConstraint) {
    if (nOpen > config_.maxFilterOpenAtoms) {
      throw SearchSpaceError("--worlds-from-constraint: " + std::to_string(nOpen) +
                             " open atoms exceed the filter bound of " +
                             std::to_string(config_.maxFilterOpenAtoms) +
                             "; supply candidate worlds with --worlds");
    }
    const GroundFormula& c = *theory_->constraint;
    std::vector<const GroundFormula*> conjuncts;
    if (c.kind == GroundFormula::Kind::And) {
      for (const GFormula& part : c.children) conjuncts.push_back(part.get());
    } else {
      conjuncts.push_back(&c);
    }
    std::vector<const GroundFormula*> filters;
    for (const GroundFormula* part : conjuncts) {
      Interpretation used(open_.size());
      collectAtoms(*part, used);
      if (part->isModalFree() && used.subsetOf(open_)) filters.push_back(part);
    }
    for (Interpretation& o : subsetsOf(open_)) {
      if (std::all_of(filters.begin(), filters.end(),
                      [&](const GroundFormula* f) { return evalClassical(o, *f); })) {
        out.push_back(std::move(o));
      }
    }
  } else {
    if (nOpen > config_.maxOpenAtoms) {
      throw SearchSpaceError(std::to_string(nOpen) + " open atoms exceed the bound of " +
                             std::to_string(config_.maxOpenAtoms) +
                             "; raise --max-open-atoms or restrict candidates with --worlds "
                             "or --worlds-from-constraint");
    }
    out = subsetsOf(open_);
  }
  if (out.size() > config_.maxCandidateWorlds) {
    throw SearchSpaceError(std::to_string(out.size()) +
                           " candidate worlds exceed the bound of " +
                           std::to_string(config_.maxCandidateWorlds) +
                           "; restrict candidates with --worlds");
  }
  return out;
}

std::optional<ModelReport> ModelFinder::derive(const Interpretation& real,
                                               const std::vector<Interpretation>& worlds,
                                               std::string* reason) {
  engine::Seed seed{real, worlds};
  engine::DeriveResult r = engine_.deriveLimit(seed);
  auto fail = [&](std::string why) -> std::optional<ModelReport> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  switch (r.status) {
    case engine::DeriveResult::Status::NoSoundDerivation:
      return fail("no sound derivation from the seed");
    case engine::DeriveResult::Status::Ambiguous:
      diagnostics_.push_back(Diagnostic{seed, r.limits.size()});
      return fail("sound derivations from the seed reach " + std::to_string(r.limits.size()) +
                  " different limits");
    case engine::DeriveResult::Status::Unique:
      break;
  }
  std::optional<KnowledgeStructure> ks = r.trace.final().collapse();
  if (!ks) return fail("the limit of the sound derivations is not total");
  ModelReport rep;
  rep.structure = std::move(*ks);
  rep.seed = std::move(seed);
  rep.witness = std::move(r.trace);
  return rep;
}

const std::vector<ModelReport>& ModelFinder::weakModels() {
  if (weak_) return *weak_;
  std::vector<Interpretation> cand = candidateWorlds();
  std::vector<ModelReport> out;
  const std::uint64_t n = cand.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Interpretation> m;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) m.push_back(cand[k]);
    }
    for (const Interpretation& o : m) {
      std::optional<ModelReport> rep = derive(o, m, nullptr);
      if (!rep) continue;
      // Every seed world must survive: the worlds' open restrictions equal M.
      if (rep->witness.final().worlds.size() != m.size()) continue;
      if (!rep->structure.consistent()) continue;
      if (!evalKS(rep->structure, *theory_->constraint)) continue;
      rep->strength = Strength::Weak;
      out.push_back(std::move(*rep));
    }
  }
  sortReports(out);
  weak_ = std::move(out);
  return *weak_;
}

std::vector<Interpretation> ModelFinder::strongSeedWorlds() {
  std::vector<Interpretation> out;
  for (const ModelReport& m : weakModels()) out.push_back(m.structure.real & open_);
  return sortedUnique(std::move(out));
}

std::vector<ModelReport> ModelFinder::strongModels() {
  std::vector<Interpretation> oset = strongSeedWorlds();
  std::vector<ModelReport> out;
  for (const Interpretation& o : oset) {
    std::optional<ModelReport> rep = derive(o, oset, nullptr);
    if (!rep) continue;
    if (!rep->structure.consistent()) continue;
    if (!evalKS(rep->structure, *theory_->constraint)) continue;
    rep->strength = Strength::Strong;
    out.push_back(std::move(*rep));
  }
  sortReports(out);
  return out;
}

CheckResult ModelFinder::checkWeak(const KnowledgeStructure& s) {
  CheckResult res;
  if (!s.consistent()) {
    res.reason = "the real world is not among the possible worlds";
    return res;
  }
  if (!evalKS(s, *theory_->constraint)) {
    res.reason = "the structure does not satisfy the constraint";
    return res;
  }
  std::vector<Interpretation> m;
  for (const Interpretation& w : s.possible) m.push_back(w & open_);
  m = sortedUnique(std::move(m));
  std::optional<ModelReport> rep = derive(s.real & open_, m, &res.reason);
  if (!rep) return res;
  if (!(rep->structure == s)) {
    res.reason = "the limit of the sound derivations differs from the structure";
    return res;
  }
  rep->strength = Strength::Weak;
  res.holds = true;
  res.report = std::move(rep);
  return res;
}

CheckResult ModelFinder::checkStrong(const KnowledgeStructure& s) {
  CheckResult res;
  if (!s.consistent()) {
    res.reason = "the real world is not among the possible worlds";
    return res;
  }
  if (!evalKS(s, *theory_->constraint)) {
    res.reason = "the structure does not satisfy the constraint";
    return res;
  }
  std::vector<Interpretation> oset = strongSeedWorlds();
  Interpretation o = s.real & open_;
  if (!std::binary_search(oset.begin(), oset.end(), o)) {
    res.reason = "the real world's open part is not the real world of any weak model";
    return res;
  }
  std::optional<ModelReport> rep = derive(o, oset, &res.reason);
  if (!rep) return res;
  if (!(rep->structure == s)) {
    res.reason = "the limit of the sound derivations differs from the structure";
    return res;
  }
  rep->strength = Strength::Strong;
  res.holds = true;
  res.report = std::move(rep);
  return res;
}

}  // namespace kpd::models
