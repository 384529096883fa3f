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

#include "kpd/kernel.hpp"

#include <algorithm>
#include <bit>

namespace kpd {

namespace {

std::size_t hashCombine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// Interpretation

Interpretation Interpretation::full(std::size_t size) {
  Interpretation r(size);
  for (std::size_t a = 0; a < size; ++a) r.set(static_cast<AtomId>(a));
  return r;
}

Interpretation Interpretation::of(std::size_t size,
                                  std::initializer_list<AtomId> atoms) {
  Interpretation r(size);
  for (AtomId a : atoms) {
    if (a >= size) throw StructuralError("atom index out of range");
    r.set(a);
  }
  return r;
}

void Interpretation::requireSameSize(const Interpretation& other) const {
  if (size_ != other.size_) {
    throw StructuralError("interpretations over different vocabularies (" +
                          std::to_string(size_) + " vs " +
                          std::to_string(other.size_) + " atoms)");
  }
}

bool Interpretation::none() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

std::size_t Interpretation::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Interpretation::subsetOf(const Interpretation& other) const {
  requireSameSize(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool Interpretation::intersects(const Interpretation& other) const {
  requireSameSize(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

std::vector<AtomId> Interpretation::atoms() const {
  std::vector<AtomId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      int bit = std::countr_zero(w);
      out.push_back(static_cast<AtomId>(i * 64 + static_cast<std::size_t>(bit)));
      w &= w - 1;
    }
  }
  return out;
}

Interpretation& Interpretation::operator|=(const Interpretation& other) {
  requireSameSize(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Interpretation& Interpretation::operator&=(const Interpretation& other) {
  requireSameSize(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Interpretation& Interpretation::operator-=(const Interpretation& other) {
  requireSameSize(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::strong_ordering Interpretation::operator<=>(const Interpretation& other) const {
  if (auto c = size_ <=> other.size_; c != 0) return c;
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t Interpretation::hash() const {
  std::size_t h = size_;
  for (std::uint64_t w : words_) h = hashCombine(h, std::hash<std::uint64_t>{}(w));
  return h;
}

// GroundAtom / Vocabulary

std::string GroundAtom::str() const {
  if (args.empty()) return predicate;
  std::string s = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i];
  }
  return s + ")";
}

AtomId Vocabulary::add(GroundAtom atom, bool defined) {
  std::string key = atom.str();
  if (index_.contains(key)) {
    throw StructuralError("duplicate atom in vocabulary: " + key);
  }
  auto id = static_cast<AtomId>(atoms_.size());
  atoms_.push_back(std::move(atom));
  names_.push_back(key);
  defined_.push_back(defined);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<AtomId> Vocabulary::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Interpretation Vocabulary::definedAtoms() const {
  Interpretation r(size());
  for (std::size_t a = 0; a < size(); ++a) {
    if (defined_[a]) r.set(static_cast<AtomId>(a));
  }
  return r;
}

Interpretation Vocabulary::openAtoms() const {
  return Interpretation::full(size()) - definedAtoms();
}

Interpretation Vocabulary::interpretation(
    std::initializer_list<std::string_view> names) const {
  Interpretation r(size());
  for (std::string_view n : names) {
    auto id = find(n);
    if (!id) throw StructuralError("unknown atom: " + std::string(n));
    r.set(*id);
  }
  return r;
}

std::string Vocabulary::format(const Interpretation& i) const {
  if (i.size() != size()) {
    throw StructuralError("interpretation does not match vocabulary");
  }
  std::string s = "{";
  bool first = true;
  for (AtomId a : i.atoms()) {
    if (!first) s += ", ";
    first = false;
    s += names_[a];
  }
  return s + "}";
}

// ApproximatingPair

ApproximatingPair::ApproximatingPair(Interpretation lower, Interpretation upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (!lower_.subsetOf(upper_)) {
    throw StructuralError("approximating pair requires lower <= upper");
  }
}

// WorldSet

WorldSet::WorldSet(std::vector<World> worlds) : worlds_(std::move(worlds)) {
  std::sort(worlds_.begin(), worlds_.end(),
            [](const World& a, const World& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < worlds_.size(); ++i) {
    if (worlds_[i - 1].id == worlds_[i].id) {
      throw StructuralError("duplicate world id " +
                            std::to_string(worlds_[i].id));
    }
  }
}

WorldSet WorldSet::fromPairs(std::vector<ApproximatingPair> pairs) {
  std::vector<World> worlds;
  worlds.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    worlds.push_back(World{static_cast<WorldId>(i), std::move(pairs[i])});
  }
  return WorldSet(std::move(worlds));
}

const World* WorldSet::find(WorldId id) const {
  auto it = std::lower_bound(
      worlds_.begin(), worlds_.end(), id,
      [](const World& w, WorldId key) { return w.id < key; });
  if (it == worlds_.end() || it->id != id) return nullptr;
  return &*it;
}

bool WorldSet::isTotal() const {
  return std::all_of(worlds_.begin(), worlds_.end(),
                     [](const World& w) { return w.pair.isTotal(); });
}

WorldSet WorldSet::replaced(WorldId id, ApproximatingPair pair) const {
  WorldSet r = *this;
  auto it = std::find_if(r.worlds_.begin(), r.worlds_.end(),
                         [id](const World& w) { return w.id == id; });
  if (it == r.worlds_.end()) {
    throw StructuralError("no world with id " + std::to_string(id));
  }
  it->pair = std::move(pair);
  return r;
}

WorldSet WorldSet::without(std::span<const WorldId> ids) const {
  WorldSet r;
  r.worlds_.reserve(worlds_.size());
  for (const World& w : worlds_) {
    if (std::find(ids.begin(), ids.end(), w.id) == ids.end()) {
      r.worlds_.push_back(w);
    }
  }
  return r;
}

// Knowledge structures

KnowledgeStructure::KnowledgeStructure(Interpretation r,
                                       std::vector<Interpretation> w)
    : real(std::move(r)), possible(std::move(w)) {
  std::sort(possible.begin(), possible.end());
  possible.erase(std::unique(possible.begin(), possible.end()), possible.end());
}

bool KnowledgeStructure::consistent() const {
  return std::binary_search(possible.begin(), possible.end(), real);
}

std::optional<KnowledgeStructure> ApproximateKnowledgeStructure::collapse() const {
  if (!isTotal()) return std::nullopt;
  std::vector<Interpretation> worldsOut;
  worldsOut.reserve(worlds.size());
  for (const World& w : worlds) worldsOut.push_back(w.pair.lower());
  return KnowledgeStructure(real.lower(), std::move(worldsOut));
}

std::size_t ApproximateKnowledgeStructure::hash() const {
  std::size_t h = hashCombine(real.lower().hash(), real.upper().hash());
  for (const World& w : worlds) {
    h = hashCombine(h, w.id);
    h = hashCombine(h, w.pair.lower().hash());
    h = hashCombine(h, w.pair.upper().hash());
  }
  return h;
}

// Lattice operations

bool precisionLeq(const ApproximatingPair& a, const ApproximatingPair& b) {
  return a.lower().subsetOf(b.lower()) && b.upper().subsetOf(a.upper());
}

Interpretation restrict(const Interpretation& i, const Interpretation& atoms) {
  return i & atoms;
}

Interpretation extend(const Interpretation& open, const Interpretation& defined,
                      const Interpretation& openAtoms) {
  if (!open.subsetOf(openAtoms)) {
    throw StructuralError("extend: open part assigns atoms outside the open vocabulary");
  }
  if (defined.intersects(openAtoms)) {
    throw StructuralError("extend: defined part overlaps the open vocabulary");
  }
  return open | defined;
}

}  // namespace kpd
