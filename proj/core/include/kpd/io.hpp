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

// Text and JSON rendering of structures, traces and model reports, and the
// reader for seed, model and world-hint files.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kpd/engine.hpp"
#include "kpd/ground.hpp"
#include "kpd/models.hpp"
#include "kpd/wfs.hpp"

namespace kpd::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Text

std::string formatPair(const ApproximatingPair& p, const Vocabulary& v);
std::string formatAKS(const ApproximateKnowledgeStructure& a, const Vocabulary& v);
/// `real: {...}  worlds: [{...}, ...]`
std::string formatKS(const KnowledgeStructure& s, const Vocabulary& v);
std::string formatRule(const GroundRule& r, const Vocabulary& v);
std::string formatOp(const engine::OpInstance& op, const GroundTheory& t);
/// What `after` changed relative to `before`: atoms added to lower bounds,
/// atoms removed from upper bounds, worlds removed.
std::string formatDiff(const ApproximateKnowledgeStructure& before,
                       const ApproximateKnowledgeStructure& after, const Vocabulary& v);
/// One line per step with its diff, then the flags.
std::string formatTrace(const engine::DerivationTrace& t, const GroundTheory& theory);

// ---------------------------------------------------------------------------
// Seed, model and hint files
//
//   real: {HighGPA(Mary), Minority(Mary)}
//   worlds: [{HighGPA(Mary)}, {HighGPA(Mary), FairGPA(John)}]

struct StructureFile {
  Interpretation real;
  std::vector<Interpretation> worlds;
};

/// Parses `real:` and `worlds:` sections. Unknown atoms and malformed
/// input raise SyntaxError.
StructureFile parseStructure(std::string_view text, const Vocabulary& v);

/// A seed must set open atoms only (StructuralError otherwise).
engine::Seed parseSeed(std::string_view text, const Vocabulary& v);
KnowledgeStructure parseModel(std::string_view text, const Vocabulary& v);
/// `worlds: [...]`, or a bare list of `{...}` interpretations.
std::vector<Interpretation> parseWorlds(std::string_view text, const Vocabulary& v);

// ---------------------------------------------------------------------------
// JSON

Json toJson(const Interpretation& i, const Vocabulary& v);
Json toJson(const ApproximatingPair& p, const Vocabulary& v);
Json toJson(const ApproximateKnowledgeStructure& a, const Vocabulary& v);
Json toJson(const KnowledgeStructure& s, const Vocabulary& v);
Json toJson(const engine::Seed& s, const Vocabulary& v);
Json toJson(const engine::OpInstance& op, const Vocabulary& v);
Json toJson(const engine::DerivationTrace& t, const Vocabulary& v);
Json toJson(const models::ModelReport& m, const Vocabulary& v, bool withTrace);
Json toJson(const engine::DeriveResult& r, const Vocabulary& v);

Interpretation interpretationFromJson(const Json& j, const Vocabulary& v);
ApproximatingPair pairFromJson(const Json& j, const Vocabulary& v);
ApproximateKnowledgeStructure aksFromJson(const Json& j, const Vocabulary& v);
KnowledgeStructure ksFromJson(const Json& j, const Vocabulary& v);
engine::Seed seedFromJson(const Json& j, const Vocabulary& v);
engine::OpInstance opFromJson(const Json& j, const Vocabulary& v);
engine::DerivationTrace traceFromJson(const Json& j, const Vocabulary& v);
models::ModelReport modelFromJson(const Json& j, const Vocabulary& v);

}  // namespace kpd::io
