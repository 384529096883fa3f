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

#include "kpd/engine.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "kpd/evaluation.hpp"
#include "kpd/wfs.hpp"

namespace kpd::engine {

const char* opKindName(OpKind k) {
  switch (k) {
    case OpKind::RealProduce: return "real-produce";
    case OpKind::WorldProduce: return "world-produce";
    case OpKind::RealUnfounded: return "real-unfounded";
    case OpKind::WorldUnfounded: return "world-unfounded";
    case OpKind::Learn: return "learn";
  }
  return "?";
}

OpInstance OpInstance::realProduce(AtomId a, std::size_t rule) {
  OpInstance op;
  op.kind = OpKind::RealProduce;
  op.atom = a;
  op.rule = rule;
  return op;
}

OpInstance OpInstance::worldProduce(WorldId w, AtomId a, std::size_t rule) {
  OpInstance op = realProduce(a, rule);
  op.kind = OpKind::WorldProduce;
  op.world = w;
  return op;
}

OpInstance OpInstance::realUnfounded(Interpretation u) {
  OpInstance op;
  op.kind = OpKind::RealUnfounded;
  op.atoms = std::move(u);
  return op;
}

OpInstance OpInstance::worldUnfounded(WorldId w, Interpretation u) {
  OpInstance op = realUnfounded(std::move(u));
  op.kind = OpKind::WorldUnfounded;
  op.world = w;
  return op;
}

OpInstance OpInstance::learn(std::size_t rule) {
  OpInstance op;
  op.kind = OpKind::Learn;
  op.rule = rule;
  return op;
}

std::strong_ordering OpInstance::operator<=>(const OpInstance& o) const {
  if (auto c = kind <=> o.kind; c != 0) return c;
  if (auto c = world <=> o.world; c != 0) return c;
  if (auto c = atom <=> o.atom; c != 0) return c;
  if (auto c = rule <=> o.rule; c != 0) return c;
  return atoms <=> o.atoms;
}

namespace {

void appendWords(std::string& key, const Interpretation& i) {
  for (std::uint64_t w : i.words()) {
    key.append(reinterpret_cast<const char*>(&w), sizeof w);
  }
}

void appendScalar(std::string& key, std::uint64_t v) {
  key.append(reinterpret_cast<const char*>(&v), sizeof v);
}

std::string opKey(const OpInstance& op) {
  std::string k;
  appendScalar(k, static_cast<std::uint64_t>(op.kind));
  appendScalar(k, op.world);
  appendScalar(k, op.atom);
  appendScalar(k, op.rule);
  appendWords(k, op.atoms);
  return k;
}

/// (structure, set of ops applied so far): everything the future of a
/// derivation, including its soundness, depends on.
std::string stateKey(const DerivationTrace& t) {
  std::string key;
  const ApproximateKnowledgeStructure& a = t.final();
  appendWords(key, a.real.lower());
  appendWords(key, a.real.upper());
  appendScalar(key, a.worlds.size());
  for (const World& w : a.worlds) {
    appendScalar(key, w.id);
    appendWords(key, w.pair.lower());
    appendWords(key, w.pair.upper());
  }
  std::vector<std::string> ops;
  ops.reserve(t.steps.size());
  for (const Step& s : t.steps) ops.push_back(opKey(s.op));
  std::sort(ops.begin(), ops.end());
  ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
  for (const std::string& o : ops) key += o;
  return key;
}

void addLimit(std::vector<ApproximateKnowledgeStructure>& limits,
              const ApproximateKnowledgeStructure& a) {
  if (std::find(limits.begin(), limits.end(), a) == limits.end()) limits.push_back(a);
}

}  // namespace

Engine::Engine(const GroundDefinition& def, EngineOptions options)
    : def_(&def), options_(options) {
  open_ = Interpretation::full(def.defined.size()) - def.defined;
  ruleNegModal_.resize(def.rules.size());
  rulePosModal_.resize(def.rules.size());
  for (std::size_t r = 0; r < def.rules.size(); ++r) {
    ruleNegModal_[r] = hasNegativeModal(*def.rules[r].body);
    rulePosModal_[r] = hasPositiveModal(*def.rules[r].body);
  }
  unfoundedSafe_ = Interpretation(def.defined.size());
  for (AtomId a : def.defined.atoms()) {
    const auto& rs = def.rulesFor(a);
    if (std::none_of(rs.begin(), rs.end(), [&](std::size_t r) { return rulePosModal_[r]; })) {
      unfoundedSafe_.set(a);
    }
  }
}

ApproximateKnowledgeStructure Engine::init(const Seed& seed) const {
  auto check = [&](const Interpretation& o) {
    if (o.size() != open_.size()) {
      throw StructuralError("seed interpretation over a different vocabulary");
    }
    if (!o.subsetOf(open_)) {
      throw StructuralError("seed interpretation assigns a defined atom");
    }
  };
  check(seed.real);
  std::vector<ApproximatingPair> pairs;
  for (const Interpretation& o : seed.worlds) {
    check(o);
    pairs.push_back(wfs::initialPair(o, def_->defined));
  }
  return ApproximateKnowledgeStructure{wfs::initialPair(seed.real, def_->defined),
                                       WorldSet::fromPairs(std::move(pairs))};
}

bool Engine::produceGuard(const ApproximatingPair& target,
                          const ApproximateKnowledgeStructure& a, std::size_t rule) const {
  return evalAKS(PairView(target), WorldSetView(a.worlds), *def_->rules[rule].body);
}

bool Engine::unfoundedGuard(const ApproximatingPair& target,
                            const ApproximateKnowledgeStructure& a,
                            const Interpretation& u) const {
  if (u.intersects(target.lower())) return false;
  Interpretation newUpper = target.upper() - u;
  WorldSetView ctx(a.worlds, options_.semantics == Semantics::Op4Flip);
  PairView pair(newUpper, target.lower());
  for (AtomId atom : u.atoms()) {
    for (std::size_t r : def_->rulesFor(atom)) {
      if (evalAKS(pair, ctx, *def_->rules[r].body)) return false;
    }
  }
  return true;
}

bool Engine::unfoundedApplicable(const ApproximatingPair& target,
                                 const ApproximateKnowledgeStructure& a,
                                 const Interpretation& u) const {
  return !u.none() && u.subsetOf(def_->defined) && u.subsetOf(target.upper()) &&
         unfoundedGuard(target, a, u);
}

Interpretation Engine::maximalUnfounded(const ApproximatingPair& target,
                                        const ApproximateKnowledgeStructure& a,
                                        const Interpretation& candidates) const {
  Interpretation u = (target.upper() - target.lower()) & def_->defined & candidates;
  WorldSetView ctx(a.worlds, options_.semantics == Semantics::Op4Flip);
  bool changed = true;
  while (changed && !u.none()) {
    changed = false;
    Interpretation newUpper = target.upper() - u;
    PairView pair(newUpper, target.lower());
    for (AtomId atom : u.atoms()) {
      for (std::size_t r : def_->rulesFor(atom)) {
        if (evalAKS(pair, ctx, *def_->rules[r].body)) {
          u.reset(atom);
          changed = true;
          break;
        }
      }
    }
  }
  return u;
}

bool Engine::learnRemoves(const ApproximateKnowledgeStructure& a, std::size_t rule) const {
  const GroundFormula& psi = def_->rules[rule].knowledge();
  for (const World& w : a.worlds) {
    if (!evalPair(PairView(w.pair.upper(), w.pair.lower()), psi)) return true;
  }
  return false;
}

void Engine::targetOps(const ApproximateKnowledgeStructure& a, const Target& t,
                       UnfoundedMode mode, std::vector<OpInstance>& out) const {
  const ApproximatingPair& pair = t.real ? a.real : a.worlds.find(t.world)->pair;
  const bool literal = !t.real && options_.op2 == Op2Mode::Literal;
  const Interpretation& newUpper = literal ? a.real.upper() : pair.upper();
  for (std::size_t r = 0; r < def_->rules.size(); ++r) {
    const GroundRule& rule = def_->rules[r];
    if (rule.isModalHead()) continue;
    AtomId atom = rule.headAtom();
    if (pair.lower().test(atom) || !newUpper.test(atom)) continue;
    if (literal && !pair.lower().subsetOf(newUpper)) continue;
    if (!produceGuard(pair, a, r)) continue;
    out.push_back(t.real ? OpInstance::realProduce(atom, r)
                         : OpInstance::worldProduce(t.world, atom, r));
  }
  auto emit = [&](Interpretation u) {
    out.push_back(t.real ? OpInstance::realUnfounded(std::move(u))
                         : OpInstance::worldUnfounded(t.world, std::move(u)));
  };
  if (mode == UnfoundedMode::Maximal) {
    Interpretation u = maximalUnfounded(pair, a, def_->defined);
    if (!u.none()) emit(std::move(u));
    return;
  }
  std::vector<AtomId> cand = ((pair.upper() - pair.lower()) & def_->defined).atoms();
  if (cand.size() > options_.maxUnfoundedCandidates) {
    throw SearchBoundError("unfounded-set enumeration over " + std::to_string(cand.size()) +
                           " candidate atoms exceeds the bound of " +
                           std::to_string(options_.maxUnfoundedCandidates));
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cand.size()); ++mask) {
    Interpretation u(pair.upper().size());
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (mask >> k & 1) u.set(cand[k]);
    }
    if (unfoundedGuard(pair, a, u)) emit(std::move(u));
  }
}

std::vector<OpInstance> Engine::applicable(const ApproximateKnowledgeStructure& a,
                                           UnfoundedMode mode) const {
  std::vector<OpInstance> out;
  targetOps(a, Target{true, 0}, mode, out);
  for (const World& w : a.worlds) targetOps(a, Target{false, w.id}, mode, out);
  for (std::size_t r : def_->learnRules()) {
    if (evalAKS(a, *def_->rules[r].body) && learnRemoves(a, r)) {
      out.push_back(OpInstance::learn(r));
    }
  }
  return out;
}

bool Engine::isApplicable(const ApproximateKnowledgeStructure& a, const OpInstance& op) const {
  const bool onWorld = op.targetsWorld();
  const World* w = onWorld ? a.worlds.find(op.world) : nullptr;
  if (onWorld && !w) return false;
  const ApproximatingPair& pair = onWorld ? w->pair : a.real;
  switch (op.kind) {
    case OpKind::RealProduce:
    case OpKind::WorldProduce: {
      if (op.rule >= def_->rules.size()) return false;
      const GroundRule& rule = def_->rules[op.rule];
      if (rule.isModalHead() || rule.headAtom() != op.atom) return false;
      const bool literal = onWorld && options_.op2 == Op2Mode::Literal;
      const Interpretation& newUpper = literal ? a.real.upper() : pair.upper();
      if (pair.lower().test(op.atom) || !newUpper.test(op.atom)) return false;
      if (literal && !pair.lower().subsetOf(newUpper)) return false;
      return produceGuard(pair, a, op.rule);
    }
    case OpKind::RealUnfounded:
    case OpKind::WorldUnfounded:
      return op.atoms.size() == pair.upper().size() && unfoundedApplicable(pair, a, op.atoms);
    case OpKind::Learn:
      if (op.rule >= def_->rules.size() || !def_->rules[op.rule].isModalHead()) return false;
      return evalAKS(a, *def_->rules[op.rule].body) && learnRemoves(a, op.rule);
  }
  return false;
}

ApproximateKnowledgeStructure Engine::apply(const ApproximateKnowledgeStructure& a,
                                            const OpInstance& op) const {
  if (!isApplicable(a, op)) {
    throw ContractError(std::string("operation ") + opKindName(op.kind) +
                        " is not applicable to this structure");
  }
  ApproximateKnowledgeStructure out = a;
  switch (op.kind) {
    case OpKind::RealProduce:
      out.real = ApproximatingPair(a.real.lower().with(op.atom), a.real.upper());
      break;
    case OpKind::WorldProduce: {
      const ApproximatingPair& p = a.worlds.find(op.world)->pair;
      const Interpretation& upper =
          options_.op2 == Op2Mode::Literal ? a.real.upper() : p.upper();
      out.worlds = a.worlds.replaced(op.world, ApproximatingPair(p.lower().with(op.atom), upper));
      break;
    }
    case OpKind::RealUnfounded:
      out.real = ApproximatingPair(a.real.lower(), a.real.upper() - op.atoms);
      break;
    case OpKind::WorldUnfounded: {
      const ApproximatingPair& p = a.worlds.find(op.world)->pair;
      out.worlds = a.worlds.replaced(op.world, ApproximatingPair(p.lower(), p.upper() - op.atoms));
      break;
    }
    case OpKind::Learn: {
      const GroundFormula& psi = def_->rules[op.rule].knowledge();
      std::vector<WorldId> removed;
      for (const World& w : a.worlds) {
        if (!evalPair(PairView(w.pair.upper(), w.pair.lower()), psi)) removed.push_back(w.id);
      }
      out.worlds = a.worlds.without(removed);
      break;
    }
  }
  return out;
}

bool Engine::isComplete(const ApproximateKnowledgeStructure& a) const {
  return applicable(a, UnfoundedMode::Maximal).empty();
}

bool Engine::guardHolds(const ApproximateKnowledgeStructure& a, const OpInstance& op) const {
  const World* w = nullptr;
  if (op.targetsWorld()) {
    w = a.worlds.find(op.world);
    if (!w) return !options_.strictRemovedWorlds;
  }
  const ApproximatingPair& pair = w ? w->pair : a.real;
  switch (op.kind) {
    case OpKind::RealProduce:
    case OpKind::WorldProduce:
      return produceGuard(pair, a, op.rule);
    case OpKind::RealUnfounded:
    case OpKind::WorldUnfounded:
      return unfoundedGuard(pair, a, op.atoms);
    case OpKind::Learn:
      return evalAKS(a, *def_->rules[op.rule].body);
  }
  return false;
}

bool Engine::isSafe(const OpInstance& op) const {
  switch (op.kind) {
    case OpKind::RealProduce:
    case OpKind::WorldProduce:
    case OpKind::Learn:
      return !ruleNegModal_[op.rule];
    case OpKind::RealUnfounded:
    case OpKind::WorldUnfounded:
      return op.atoms.subsetOf(unfoundedSafe_);
  }
  return false;
}

std::optional<SoundnessViolation> Engine::checkSound(const DerivationTrace& t) const {
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    for (std::size_t j = i + 1; j <= t.steps.size(); ++j) {
      if (!guardHolds(t.at(j), t.steps[i].op)) return SoundnessViolation{i, j};
    }
  }
  return std::nullopt;
}

void Engine::finalize(DerivationTrace& t) const {
  t.complete = isComplete(t.final());
  t.violation = checkSound(t);
  t.sound = !t.violation.has_value();
  t.total = t.final().isTotal();
}

bool Engine::extend(DerivationTrace& t, const OpInstance& op) const {
  ApproximateKnowledgeStructure next = apply(t.final(), op);
  t.steps.push_back(Step{op, std::move(next)});
  const ApproximateKnowledgeStructure& now = t.final();
  for (const Step& s : t.steps) {
    if (!guardHolds(now, s.op)) return false;
  }
  return true;
}

bool Engine::saturateSafe(DerivationTrace& t) const {
  bool ok = true;
  for (;;) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Target> targets{Target{true, 0}};
      for (const World& w : t.final().worlds) targets.push_back(Target{false, w.id});
      for (const Target& target : targets) {
        for (;;) {
          std::vector<OpInstance> ops;
          targetOps(t.final(), target, UnfoundedMode::Maximal, ops);
          auto it = std::find_if(ops.begin(), ops.end(), [&](const OpInstance& op) {
            return op.isProduce() && isSafe(op);
          });
          if (it == ops.end()) break;
          ok = extend(t, *it) && ok;
          changed = true;
        }
        const ApproximateKnowledgeStructure& a = t.final();
        const ApproximatingPair& pair = target.real ? a.real : a.worlds.find(target.world)->pair;
        Interpretation u = maximalUnfounded(pair, a, unfoundedSafe_);
        if (!u.none()) {
          ok = extend(t, target.real ? OpInstance::realUnfounded(std::move(u))
                                     : OpInstance::worldUnfounded(target.world, std::move(u))) &&
               ok;
          changed = true;
        }
      }
    }
    std::optional<OpInstance> learn;
    for (std::size_t r : def_->learnRules()) {
      OpInstance op = OpInstance::learn(r);
      if (isSafe(op) && isApplicable(t.final(), op)) {
        learn = op;
        break;
      }
    }
    if (!learn) return ok;
    ok = extend(t, *learn) && ok;
  }
}

std::optional<OpInstance> Engine::firstUnsafe(const ApproximateKnowledgeStructure& a) const {
  std::vector<OpInstance> ops = applicable(a, UnfoundedMode::Maximal);
  if (ops.empty()) return std::nullopt;
  return ops.front();
}

DerivationTrace Engine::runPolicy(const Seed& seed) const {
  DerivationTrace t;
  t.seed = seed;
  t.initial = init(seed);
  for (;;) {
    saturateSafe(t);
    std::optional<OpInstance> op = firstUnsafe(t.final());
    if (!op) break;
    extend(t, *op);
  }
  finalize(t);
  return t;
}

DeriveResult Engine::deriveLimit(const Seed& seed) const {
  DeriveResult res;
  res.policyTrace = runPolicy(seed);
  if (!options_.verify && res.policyTrace.sound) {
    res.status = DeriveResult::Status::Unique;
    res.trace = res.policyTrace;
    res.limits = {res.policyTrace.final()};
    return res;
  }

  // Policy-space search: safe operations are saturated deterministically,
  // branching happens only on the remaining (unsafe) operations. Unsound
  // prefixes are pruned.
  std::unordered_set<std::string> seen;
  std::vector<DerivationTrace> witnesses;
  std::size_t nodes = 0;
  std::function<void(DerivationTrace&)> dfs = [&](DerivationTrace& t) {
    if (++nodes > options_.searchBudget) {
      throw SearchBoundError("derivation search exceeded its budget of " +
                             std::to_string(options_.searchBudget) + " nodes");
    }
    if (!saturateSafe(t)) return;
    if (!seen.insert(stateKey(t)).second) return;
    std::vector<OpInstance> ops = applicable(t.final(), UnfoundedMode::Maximal);
    if (ops.empty()) {
      if (std::find(res.limits.begin(), res.limits.end(), t.final()) == res.limits.end()) {
        res.limits.push_back(t.final());
        witnesses.push_back(t);
      }
      return;
    }
    for (const OpInstance& op : ops) {
      DerivationTrace child = t;
      if (extend(child, op)) dfs(child);
    }
  };
  DerivationTrace root;
  root.seed = seed;
  root.initial = init(seed);
  dfs(root);
  res.nodesExplored = nodes;

  if (res.limits.empty()) {
    res.status = DeriveResult::Status::NoSoundDerivation;
    res.trace = res.policyTrace;
  } else if (res.limits.size() == 1) {
    res.status = DeriveResult::Status::Unique;
    if (res.policyTrace.sound && res.policyTrace.final() == res.limits.front()) {
      res.trace = res.policyTrace;
    } else {
      res.trace = witnesses.front();
      finalize(res.trace);
    }
  } else {
    res.status = DeriveResult::Status::Ambiguous;
    res.trace = res.policyTrace;
  }
  return res;
}

TraceEnumeration Engine::enumerateTraces(const Seed& seed, std::size_t maxLen,
                                         std::size_t maxTraces, std::size_t maxAtoms) const {
  if (open_.size() > maxAtoms) {
    throw SearchBoundError("trace enumeration limited to " + std::to_string(maxAtoms) +
                           " atoms; the vocabulary has " + std::to_string(open_.size()));
  }
  TraceEnumeration out;
  std::function<void(DerivationTrace&)> dfs = [&](DerivationTrace& t) {
    std::vector<OpInstance> ops = applicable(t.final(), UnfoundedMode::All);
    if (ops.empty()) {
      DerivationTrace done = t;
      finalize(done);
      out.traces.push_back(std::move(done));
      if (out.traces.size() > maxTraces) {
        throw SearchBoundError("more than " + std::to_string(maxTraces) + " complete traces");
      }
      return;
    }
    if (t.steps.size() >= maxLen) {
      ++out.truncated;
      return;
    }
    for (const OpInstance& op : ops) {
      t.steps.push_back(Step{op, apply(t.final(), op)});
      dfs(t);
      t.steps.pop_back();
    }
  };
  DerivationTrace root;
  root.seed = seed;
  root.initial = init(seed);
  dfs(root);
  return out;
}

Exploration Engine::explore(const Seed& seed) const {
  struct Result {
    std::vector<ApproximateKnowledgeStructure> limits;
    bool anyUnsound = false;
    std::vector<OpInstance> soundWitness;
    std::vector<OpInstance> unsoundWitness;
  };
  std::unordered_map<std::string, Result> memo;
  std::function<const Result&(DerivationTrace&)> rec =
      [&](DerivationTrace& t) -> const Result& {
    std::string key = stateKey(t);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (memo.size() >= options_.searchBudget) {
      throw SearchBoundError("derivation exploration exceeded its budget of " +
                             std::to_string(options_.searchBudget) + " states");
    }
    Result res;
    std::vector<OpInstance> ops = applicable(t.final(), UnfoundedMode::All);
    if (ops.empty()) res.limits.push_back(t.final());
    for (const OpInstance& op : ops) {
      DerivationTrace child = t;
      if (!extend(child, op)) {
        if (!res.anyUnsound) res.unsoundWitness = {op};
        res.anyUnsound = true;
        continue;
      }
      const Result& sub = rec(child);
      for (const ApproximateKnowledgeStructure& l : sub.limits) {
        if (res.limits.empty()) {
          res.soundWitness = {op};
          res.soundWitness.insert(res.soundWitness.end(), sub.soundWitness.begin(),
                                  sub.soundWitness.end());
        }
        addLimit(res.limits, l);
      }
      if (sub.anyUnsound && !res.anyUnsound) {
        res.unsoundWitness = {op};
        res.unsoundWitness.insert(res.unsoundWitness.end(), sub.unsoundWitness.begin(),
                                  sub.unsoundWitness.end());
      }
      res.anyUnsound = res.anyUnsound || sub.anyUnsound;
    }
    return memo.emplace(std::move(key), std::move(res)).first->second;
  };
  DerivationTrace root;
  root.seed = seed;
  root.initial = init(seed);
  const Result& top = rec(root);
  Exploration out;
  out.soundLimits = top.limits;
  out.anyUnsound = top.anyUnsound;
  out.soundWitness = top.soundWitness;
  out.unsoundWitness = top.unsoundWitness;
  out.states = memo.size();
  return out;
}

ApproximateKnowledgeStructure initAKS(const GroundDefinition& def, const Seed& seed) {
  return Engine(def).init(seed);
}

std::vector<OpInstance> applicableOps(const ApproximateKnowledgeStructure& a,
                                      const GroundDefinition& def,
                                      const EngineOptions& options) {
  return Engine(def, options).applicable(a);
}

ApproximateKnowledgeStructure applyOp(const ApproximateKnowledgeStructure& a,
                                      const OpInstance& op, const GroundDefinition& def,
                                      const EngineOptions& options) {
  return Engine(def, options).apply(a, op);
}

DeriveResult deriveLimit(const GroundDefinition& def, const Seed& seed,
                         const EngineOptions& options) {
  return Engine(def, options).deriveLimit(seed);
}

}  // namespace kpd::engine
