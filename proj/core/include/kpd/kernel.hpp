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

// Value types shared by every engine: vocabularies, two-valued
// interpretations (bit vectors), approximating pairs, world sets and the
// (approximate) knowledge structures built from them.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kpd/errors.hpp"

namespace kpd {

using AtomId = std::uint32_t;
using WorldId = std::uint32_t;

/// Set of true atoms over a vocabulary of fixed size. Atoms not in the set
/// are false.
class Interpretation {
 public:
  Interpretation() = default;
  explicit Interpretation(std::size_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  static Interpretation full(std::size_t size);
  static Interpretation of(std::size_t size, std::initializer_list<AtomId> atoms);

  std::size_t size() const { return size_; }

  bool test(AtomId a) const {
    return (words_[a >> 6] >> (a & 63)) & 1u;
  }
  void set(AtomId a) { words_[a >> 6] |= std::uint64_t{1} << (a & 63); }
  void reset(AtomId a) { words_[a >> 6] &= ~(std::uint64_t{1} << (a & 63)); }
  Interpretation with(AtomId a) const {
    Interpretation r = *this;
    r.set(a);
    return r;
  }

  bool none() const;
  std::size_t count() const;
  /// Elementwise <=, i.e. set inclusion.
  bool subsetOf(const Interpretation& other) const;
  bool intersects(const Interpretation& other) const;
  std::vector<AtomId> atoms() const;

  Interpretation& operator|=(const Interpretation& other);
  Interpretation& operator&=(const Interpretation& other);
  /// Set difference.
  Interpretation& operator-=(const Interpretation& other);

  friend Interpretation operator|(Interpretation a, const Interpretation& b) {
    return a |= b;
  }
  friend Interpretation operator&(Interpretation a, const Interpretation& b) {
    return a &= b;
  }
  friend Interpretation operator-(Interpretation a, const Interpretation& b) {
    return a -= b;
  }

  bool operator==(const Interpretation& other) const = default;
  /// Canonical order: by size, then as a binary number with the highest atom
  /// index most significant.
  std::strong_ordering operator<=>(const Interpretation& other) const;

  std::size_t hash() const;
  std::span<const std::uint64_t> words() const { return words_; }

 private:
  void requireSameSize(const Interpretation& other) const;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  std::string str() const;
  bool operator==(const GroundAtom&) const = default;
};

/// Ordered list of ground atoms, each tagged defined or open.
class Vocabulary {
 public:
  AtomId add(GroundAtom atom, bool defined = false);

  std::size_t size() const { return atoms_.size(); }
  const GroundAtom& atom(AtomId id) const { return atoms_.at(id); }
  const std::string& name(AtomId id) const { return names_.at(id); }
  std::optional<AtomId> find(std::string_view name) const;

  bool isDefined(AtomId id) const { return defined_.at(id); }
  void setDefined(AtomId id, bool defined) { defined_.at(id) = defined; }
  Interpretation definedAtoms() const;
  Interpretation openAtoms() const;

  Interpretation empty() const { return Interpretation(size()); }
  /// Interpretation holding exactly the named atoms.
  Interpretation interpretation(std::initializer_list<std::string_view> names) const;

  /// "{a, b}" in vocabulary order.
  std::string format(const Interpretation& i) const;

 private:
  std::vector<GroundAtom> atoms_;
  std::vector<std::string> names_;
  std::vector<bool> defined_;
  std::unordered_map<std::string, AtomId> index_;
};

/// A pair (lower, upper) with lower <= upper. It stands for every
/// interpretation K with lower <= K <= upper.
class ApproximatingPair {
 public:
  ApproximatingPair() = default;
  ApproximatingPair(Interpretation lower, Interpretation upper);
  static ApproximatingPair total(Interpretation i) {
    Interpretation copy = i;
    return ApproximatingPair(std::move(copy), std::move(i));
  }

  const Interpretation& lower() const { return lower_; }
  const Interpretation& upper() const { return upper_; }
  bool isTotal() const { return lower_ == upper_; }

  bool operator==(const ApproximatingPair&) const = default;
  auto operator<=>(const ApproximatingPair&) const = default;

 private:
  Interpretation lower_;
  Interpretation upper_;
};

/// Evaluation context for a pair. Unlike ApproximatingPair it may be
/// flipped, so `first <= second` is not required.
struct PairView {
  const Interpretation* first;
  const Interpretation* second;

  PairView(const Interpretation& f, const Interpretation& s)
      : first(&f), second(&s) {}
  explicit PairView(const ApproximatingPair& p)
      : first(&p.lower()), second(&p.upper()) {}
  PairView flipped() const { return PairView(*second, *first); }
};

struct World {
  WorldId id;
  ApproximatingPair pair;

  bool operator==(const World&) const = default;
};

/// Worlds the agent considers possible, each with a stable id. Ids are
/// unique, kept sorted, survive refinement and are never reused.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::vector<World> worlds);
  /// Assigns ids 0..n-1 in order.
  static WorldSet fromPairs(std::vector<ApproximatingPair> pairs);

  std::size_t size() const { return worlds_.size(); }
  bool empty() const { return worlds_.empty(); }
  auto begin() const { return worlds_.begin(); }
  auto end() const { return worlds_.end(); }
  const World& operator[](std::size_t i) const { return worlds_[i]; }
  std::span<const World> worlds() const { return worlds_; }

  const World* find(WorldId id) const;
  bool contains(WorldId id) const { return find(id) != nullptr; }
  bool isTotal() const;

  WorldSet replaced(WorldId id, ApproximatingPair pair) const;
  WorldSet without(std::span<const WorldId> ids) const;

  bool operator==(const WorldSet&) const = default;

 private:
  std::vector<World> worlds_;
};

/// A world set seen as an evaluation context. When flipped, every pair
/// (I', J') is read as (J', I').
class WorldSetView {
 public:
  explicit WorldSetView(const WorldSet& set, bool flipped = false)
      : worlds_(set.worlds()), flipped_(flipped) {}
  WorldSetView(std::span<const World> worlds, bool flipped)
      : worlds_(worlds), flipped_(flipped) {}

  std::size_t size() const { return worlds_.size(); }
  WorldId id(std::size_t i) const { return worlds_[i].id; }
  PairView pair(std::size_t i) const {
    PairView p(worlds_[i].pair);
    return flipped_ ? p.flipped() : p;
  }
  bool isFlipped() const { return flipped_; }
  WorldSetView flipped() const { return WorldSetView(worlds_, !flipped_); }
  std::span<const World> worlds() const { return worlds_; }

 private:
  std::span<const World> worlds_;
  bool flipped_;
};

inline WorldSetView flipWorldSet(WorldSetView w) { return w.flipped(); }
inline WorldSetView flipWorldSet(const WorldSet& w) {
  return WorldSetView(w).flipped();
}

/// (I, W): a real world plus the worlds the agent considers possible. W is
/// kept sorted and free of duplicates.
struct KnowledgeStructure {
  Interpretation real;
  std::vector<Interpretation> possible;

  KnowledgeStructure() = default;
  KnowledgeStructure(Interpretation r, std::vector<Interpretation> w);

  bool consistent() const;
  bool operator==(const KnowledgeStructure&) const = default;
  auto operator<=>(const KnowledgeStructure&) const = default;
};

/// ((I, J), W): the state of a knowledge derivation.
struct ApproximateKnowledgeStructure {
  ApproximatingPair real;
  WorldSet worlds;

  bool isTotal() const { return real.isTotal() && worlds.isTotal(); }
  /// The knowledge structure a total structure stands for.
  std::optional<KnowledgeStructure> collapse() const;

  bool operator==(const ApproximateKnowledgeStructure&) const = default;
  std::size_t hash() const;
};

using AKS = ApproximateKnowledgeStructure;

/// a.lower <= b.lower and b.upper <= a.upper.
bool precisionLeq(const ApproximatingPair& a, const ApproximatingPair& b);

/// i restricted to `atoms`; atoms outside the mask become false.
Interpretation restrict(const Interpretation& i, const Interpretation& atoms);

/// Union of an interpretation of the open atoms and one of the defined
/// atoms. Throws StructuralError when either strays into the other's domain.
Interpretation extend(const Interpretation& open, const Interpretation& defined,
                      const Interpretation& openAtoms);

}  // namespace kpd

template <>
struct std::hash<kpd::Interpretation> {
  std::size_t operator()(const kpd::Interpretation& i) const { return i.hash(); }
};

template <>
struct std::hash<kpd::ApproximateKnowledgeStructure> {
  std::size_t operator()(const kpd::ApproximateKnowledgeStructure& a) const {
    return a.hash();
  }
};
