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

#include "kpd/io.hpp"

#include <optional>
#include <sstream>

#include "lexer.hpp"

namespace kpd::io {

using detail::Tok;
using detail::TokenStream;
using engine::OpKind;

// ---------------------------------------------------------------------------
// Text

std::string formatPair(const ApproximatingPair& p, const Vocabulary& v) {
  return "(" + v.format(p.lower()) + ", " + v.format(p.upper()) + ")";
}

std::string formatAKS(const ApproximateKnowledgeStructure& a, const Vocabulary& v) {
  std::string s = "real: " + formatPair(a.real, v) + "  worlds: [";
  bool first = true;
  for (const World& w : a.worlds) {
    if (!first) s += ", ";
    first = false;
    s += "#" + std::to_string(w.id) + " " + formatPair(w.pair, v);
  }
  return s + "]";
}

std::string formatKS(const KnowledgeStructure& s, const Vocabulary& v) {
  std::string out = "real: " + v.format(s.real) + "  worlds: [";
  for (std::size_t i = 0; i < s.possible.size(); ++i) {
    if (i) out += ", ";
    out += v.format(s.possible[i]);
  }
  return out + "]";
}

std::string formatRule(const GroundRule& r, const Vocabulary& v) {
  std::string s = gf::print(*r.head, v);
  if (r.body->kind != GroundFormula::Kind::True) s += " <- " + gf::print(*r.body, v);
  return s + ".";
}

std::string formatOp(const engine::OpInstance& op, const GroundTheory& t) {
  const Vocabulary& v = t.vocabulary();
  std::string s = engine::opKindName(op.kind);
  if (op.targetsWorld()) s += " #" + std::to_string(op.world);
  switch (op.kind) {
    case OpKind::RealProduce:
    case OpKind::WorldProduce:
      s += " " + v.name(op.atom) + " by rule " + std::to_string(op.rule + 1) + ": " +
           formatRule(t.definition.rules[op.rule], v);
      break;
    case OpKind::RealUnfounded:
    case OpKind::WorldUnfounded:
      s += " " + v.format(op.atoms);
      break;
    case OpKind::Learn:
      s += " by rule " + std::to_string(op.rule + 1) + ": " +
           formatRule(t.definition.rules[op.rule], v);
      break;
  }
  return s;
}

namespace {

void pairDiff(std::vector<std::string>& parts, const std::string& label,
              const ApproximatingPair& before, const ApproximatingPair& after,
              const Vocabulary& v) {
  Interpretation added = after.lower() - before.lower();
  Interpretation removed = before.upper() - after.upper();
  Interpretation widened = after.upper() - before.upper();
  if (!added.none()) parts.push_back(label + " lower +" + v.format(added));
  if (!removed.none()) parts.push_back(label + " upper -" + v.format(removed));
  if (!widened.none()) parts.push_back(label + " upper +" + v.format(widened));
}

}  // namespace

std::string formatDiff(const ApproximateKnowledgeStructure& before,
                       const ApproximateKnowledgeStructure& after, const Vocabulary& v) {
  std::vector<std::string> parts;
  pairDiff(parts, "real", before.real, after.real, v);
  std::vector<WorldId> gone;
  for (const World& w : before.worlds) {
    const World* now = after.worlds.find(w.id);
    if (!now) {
      gone.push_back(w.id);
      continue;
    }
    pairDiff(parts, "world #" + std::to_string(w.id), w.pair, now->pair, v);
  }
  if (!gone.empty()) {
    std::string s = "worlds removed [";
    for (std::size_t i = 0; i < gone.size(); ++i) {
      if (i) s += ", ";
      s += "#" + std::to_string(gone[i]);
    }
    parts.push_back(s + "]");
  }
  if (parts.empty()) return "no change";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  return out;
}

std::string formatTrace(const engine::DerivationTrace& t, const GroundTheory& theory) {
  const Vocabulary& v = theory.vocabulary();
  std::ostringstream os;
  os << "initial: " << formatAKS(t.initial, v) << '\n';
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    os << "step " << i + 1 << ": " << formatOp(t.steps[i].op, theory) << '\n';
    os << "    " << formatDiff(t.at(i), t.at(i + 1), v) << '\n';
  }
  os << "final: " << formatAKS(t.final(), v) << '\n';
  os << "complete: " << (t.complete ? "true" : "false")
     << "  sound: " << (t.sound ? "true" : "false")
     << "  total: " << (t.total ? "true" : "false") << '\n';
  if (t.violation) {
    os << "violation: step " << t.violation->step + 1
       << " is no longer applicable after step " << t.violation->at << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Structure files

namespace {

class StructureParser {
 public:
  StructureParser(std::string_view text, const Vocabulary& v)
      : ts_(detail::tokenize(text)), v_(v) {}

  StructureFile structure() {
    StructureFile out;
    bool haveReal = false, haveWorlds = false;
    while (!ts_.at(Tok::End)) {
      if (ts_.atKeyword("real")) {
        if (haveReal) ts_.fail("duplicate 'real' section");
        ts_.next();
        ts_.expect(Tok::Colon, "after 'real'");
        out.real = interpretation();
        haveReal = true;
      } else if (ts_.atKeyword("worlds")) {
        if (haveWorlds) ts_.fail("duplicate 'worlds' section");
        ts_.next();
        ts_.expect(Tok::Colon, "after 'worlds'");
        out.worlds = worldList();
        haveWorlds = true;
      } else {
        ts_.fail("expected 'real:' or 'worlds:'");
      }
      ts_.accept(Tok::Dot);
    }
    if (!haveReal) throw SyntaxError("missing 'real:' section", ts_.peek().loc);
    if (!haveWorlds) throw SyntaxError("missing 'worlds:' section", ts_.peek().loc);
    return out;
  }

  std::vector<Interpretation> worlds() {
    std::vector<Interpretation> out;
    if (ts_.atKeyword("worlds")) {
      ts_.next();
      ts_.expect(Tok::Colon, "after 'worlds'");
      out = worldList();
      ts_.accept(Tok::Dot);
    } else if (ts_.at(Tok::LBracket)) {
      out = worldList();
    } else {
      while (ts_.at(Tok::LBrace)) {
        out.push_back(interpretation());
        ts_.accept(Tok::Comma);
      }
    }
    if (!ts_.at(Tok::End)) ts_.fail("unexpected input after world list");
    return out;
  }

 private:
  std::vector<Interpretation> worldList() {
    std::vector<Interpretation> out;
    ts_.expect(Tok::LBracket, "opening world list");
    if (!ts_.at(Tok::RBracket)) {
      do {
        out.push_back(interpretation());
      } while (ts_.accept(Tok::Comma));
    }
    ts_.expect(Tok::RBracket, "closing world list");
    return out;
  }

  Interpretation interpretation() {
    Interpretation out = v_.empty();
    ts_.expect(Tok::LBrace, "opening interpretation");
    if (!ts_.at(Tok::RBrace)) {
      do {
        SourceLoc loc = ts_.peek().loc;
        GroundAtom a;
        a.predicate = ts_.expect(Tok::Ident, "as atom").text;
        if (ts_.accept(Tok::LParen)) {
          do {
            const detail::Token& t = ts_.peek();
            if (t.kind != Tok::Ident && t.kind != Tok::Int) ts_.fail("expected a constant");
            a.args.push_back(ts_.next().text);
          } while (ts_.accept(Tok::Comma));
          ts_.expect(Tok::RParen, "closing atom arguments");
        }
        auto id = v_.find(a.str());
        if (!id) throw SyntaxError("unknown atom " + a.str(), loc);
        out.set(*id);
      } while (ts_.accept(Tok::Comma));
    }
    ts_.expect(Tok::RBrace, "closing interpretation");
    return out;
  }

  TokenStream ts_;
  const Vocabulary& v_;
};

}  // namespace

StructureFile parseStructure(std::string_view text, const Vocabulary& v) {
  return StructureParser(text, v).structure();
}

engine::Seed parseSeed(std::string_view text, const Vocabulary& v) {
  StructureFile f = parseStructure(text, v);
  Interpretation defined = v.definedAtoms();
  auto check = [&](const Interpretation& i) {
    if (i.intersects(defined)) {
      throw StructuralError("seed sets defined atoms " + v.format(i & defined) +
                            "; seeds interpret open atoms only");
    }
  };
  check(f.real);
  for (const Interpretation& w : f.worlds) check(w);
  return engine::Seed{std::move(f.real), std::move(f.worlds)};
}

KnowledgeStructure parseModel(std::string_view text, const Vocabulary& v) {
  StructureFile f = parseStructure(text, v);
  return KnowledgeStructure(std::move(f.real), std::move(f.worlds));
}

std::vector<Interpretation> parseWorlds(std::string_view text, const Vocabulary& v) {
  return StructureParser(text, v).worlds();
}

// ---------------------------------------------------------------------------
// JSON

Json toJson(const Interpretation& i, const Vocabulary& v) {
  Json arr = Json::array();
  for (AtomId a : i.atoms()) arr.push_back(v.name(a));
  return arr;
}

Json toJson(const ApproximatingPair& p, const Vocabulary& v) {
  return Json{{"lower", toJson(p.lower(), v)}, {"upper", toJson(p.upper(), v)}};
}

Json toJson(const ApproximateKnowledgeStructure& a, const Vocabulary& v) {
  Json worlds = Json::array();
  for (const World& w : a.worlds) {
    Json jw = toJson(w.pair, v);
    jw["id"] = w.id;
    worlds.push_back(std::move(jw));
  }
  return Json{{"real", toJson(a.real, v)}, {"worlds", std::move(worlds)},
              {"total", a.isTotal()}};
}

Json toJson(const KnowledgeStructure& s, const Vocabulary& v) {
  Json worlds = Json::array();
  for (const Interpretation& w : s.possible) worlds.push_back(toJson(w, v));
  return Json{{"real", toJson(s.real, v)}, {"worlds", std::move(worlds)}};
}

Json toJson(const engine::Seed& s, const Vocabulary& v) {
  Json worlds = Json::array();
  for (const Interpretation& w : s.worlds) worlds.push_back(toJson(w, v));
  return Json{{"real", toJson(s.real, v)}, {"worlds", std::move(worlds)}};
}

Json toJson(const engine::OpInstance& op, const Vocabulary& v) {
  Json j{{"kind", engine::opKindName(op.kind)}};
  if (op.targetsWorld()) j["world"] = op.world;
  if (op.isProduce()) j["atom"] = v.name(op.atom);
  if (op.isProduce() || op.kind == OpKind::Learn) j["rule"] = op.rule;
  if (op.isUnfounded()) j["atoms"] = toJson(op.atoms, v);
  return j;
}

Json toJson(const engine::DerivationTrace& t, const Vocabulary& v) {
  Json steps = Json::array();
  for (const engine::Step& s : t.steps) {
    steps.push_back(Json{{"op", toJson(s.op, v)}, {"after", toJson(s.after, v)}});
  }
  Json j{{"seed", toJson(t.seed, v)},     {"initial", toJson(t.initial, v)},
         {"steps", std::move(steps)},     {"complete", t.complete},
         {"sound", t.sound},              {"total", t.total},
         {"violation", nullptr}};
  if (t.violation) j["violation"] = Json{{"step", t.violation->step}, {"at", t.violation->at}};
  return j;
}

Json toJson(const models::ModelReport& m, const Vocabulary& v, bool withTrace) {
  Json j = toJson(m.structure, v);
  j["strength"] = models::strengthName(m.strength);
  j["seed"] = toJson(m.seed, v);
  if (withTrace) j["trace"] = toJson(m.witness, v);
  return j;
}

Json toJson(const engine::DeriveResult& r, const Vocabulary& v) {
  const char* status = "unique";
  if (r.status == engine::DeriveResult::Status::NoSoundDerivation) status = "no-sound-derivation";
  if (r.status == engine::DeriveResult::Status::Ambiguous) status = "ambiguous";
  Json limits = Json::array();
  for (const ApproximateKnowledgeStructure& l : r.limits) limits.push_back(toJson(l, v));
  return Json{{"status", status},
              {"total", r.total()},
              {"limits", std::move(limits)},
              {"trace", toJson(r.trace, v)},
              {"policyTrace", toJson(r.policyTrace, v)},
              {"nodesExplored", r.nodesExplored}};
}

Interpretation interpretationFromJson(const Json& j, const Vocabulary& v) {
  Interpretation out = v.empty();
  for (const Json& name : j) {
    auto id = v.find(name.get<std::string>());
    if (!id) throw StructuralError("unknown atom in JSON: " + name.get<std::string>());
    out.set(*id);
  }
  return out;
}

ApproximatingPair pairFromJson(const Json& j, const Vocabulary& v) {
  return ApproximatingPair(interpretationFromJson(j.at("lower"), v),
                           interpretationFromJson(j.at("upper"), v));
}

ApproximateKnowledgeStructure aksFromJson(const Json& j, const Vocabulary& v) {
  std::vector<World> worlds;
  for (const Json& w : j.at("worlds")) {
    worlds.push_back(World{w.at("id").get<WorldId>(), pairFromJson(w, v)});
  }
  return ApproximateKnowledgeStructure{pairFromJson(j.at("real"), v),
                                       WorldSet(std::move(worlds))};
}

KnowledgeStructure ksFromJson(const Json& j, const Vocabulary& v) {
  std::vector<Interpretation> worlds;
  for (const Json& w : j.at("worlds")) worlds.push_back(interpretationFromJson(w, v));
  return KnowledgeStructure(interpretationFromJson(j.at("real"), v), std::move(worlds));
}

engine::Seed seedFromJson(const Json& j, const Vocabulary& v) {
  engine::Seed s;
  s.real = interpretationFromJson(j.at("real"), v);
  for (const Json& w : j.at("worlds")) s.worlds.push_back(interpretationFromJson(w, v));
  return s;
}

engine::OpInstance opFromJson(const Json& j, const Vocabulary& v) {
  const std::string kind = j.at("kind").get<std::string>();
  engine::OpInstance op;
  bool known = false;
  for (OpKind k : {OpKind::RealProduce, OpKind::WorldProduce, OpKind::RealUnfounded,
                   OpKind::WorldUnfounded, OpKind::Learn}) {
    if (kind == engine::opKindName(k)) {
      op.kind = k;
      known = true;
    }
  }
  if (!known) throw StructuralError("unknown operation kind in JSON: " + kind);
  if (j.contains("world")) op.world = j.at("world").get<WorldId>();
  if (j.contains("atom")) {
    auto id = v.find(j.at("atom").get<std::string>());
    if (!id) throw StructuralError("unknown atom in JSON: " + j.at("atom").get<std::string>());
    op.atom = *id;
  }
  if (j.contains("rule")) op.rule = j.at("rule").get<std::size_t>();
  if (j.contains("atoms")) op.atoms = interpretationFromJson(j.at("atoms"), v);
  return op;
}

engine::DerivationTrace traceFromJson(const Json& j, const Vocabulary& v) {
  engine::DerivationTrace t;
  t.seed = seedFromJson(j.at("seed"), v);
  t.initial = aksFromJson(j.at("initial"), v);
  for (const Json& s : j.at("steps")) {
    t.steps.push_back(engine::Step{opFromJson(s.at("op"), v), aksFromJson(s.at("after"), v)});
  }
  t.complete = j.at("complete").get<bool>();
  t.sound = j.at("sound").get<bool>();
  t.total = j.at("total").get<bool>();
  if (!j.at("violation").is_null()) {
    t.violation = engine::SoundnessViolation{j.at("violation").at("step").get<std::size_t>(),
                                             j.at("violation").at("at").get<std::size_t>()};
  }
  return t;
}

models::ModelReport modelFromJson(const Json& j, const Vocabulary& v) {
  models::ModelReport m;
  m.structure = ksFromJson(j, v);
  m.strength = j.at("strength").get<std::string>() == "strong" ? models::Strength::Strong
                                                               : models::Strength::Weak;
  m.seed = seedFromJson(j.at("seed"), v);
  if (j.contains("trace")) m.witness = traceFromJson(j.at("trace"), v);
  return m;
}

}  // namespace kpd::io
