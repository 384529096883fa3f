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

#include "kpd/evaluation.hpp"

namespace kpd {

using K = GroundFormula::Kind;

bool evalClassical(const Interpretation& i, const GroundFormula& f) {
  switch (f.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return i.test(f.atom);
    case K::Not:
      return !evalClassical(i, *f.children[0]);
    case K::And:
      for (const GFormula& c : f.children) {
        if (!evalClassical(i, *c)) return false;
      }
      return true;
    case K::Or:
      for (const GFormula& c : f.children) {
        if (evalClassical(i, *c)) return true;
      }
      return false;
    case K::Modal:
      throw MisuseError("classical evaluation of a modal literal");
  }
  return false;
}

bool evalPair(PairView pair, const GroundFormula& f) {
  switch (f.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return pair.first->test(f.atom);
    case K::Not:
      return !evalPair(pair.flipped(), *f.children[0]);
    case K::And:
      for (const GFormula& c : f.children) {
        if (!evalPair(pair, *c)) return false;
      }
      return true;
    case K::Or:
      for (const GFormula& c : f.children) {
        if (evalPair(pair, *c)) return true;
      }
      return false;
    case K::Modal:
      throw MisuseError("pair evaluation of a modal literal; use evalAKS");
  }
  return false;
}

bool evalKS(const Interpretation& real, const std::vector<Interpretation>& possible,
            const GroundFormula& f) {
  switch (f.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return real.test(f.atom);
    case K::Not:
      return !evalKS(real, possible, *f.children[0]);
    case K::And:
      for (const GFormula& c : f.children) {
        if (!evalKS(real, possible, *c)) return false;
      }
      return true;
    case K::Or:
      for (const GFormula& c : f.children) {
        if (evalKS(real, possible, *c)) return true;
      }
      return false;
    case K::Modal:
      for (const Interpretation& j : possible) {
        if (!evalKS(j, possible, *f.children[0])) return false;
      }
      return true;
  }
  return false;
}

bool evalKS(const KnowledgeStructure& s, const GroundFormula& f) {
  return evalKS(s.real, s.possible, f);
}

bool evalAKS(PairView real, WorldSetView worlds, const GroundFormula& f) {
  switch (f.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return real.first->test(f.atom);
    case K::Not:
      return !evalAKS(real.flipped(), worlds.flipped(), *f.children[0]);
    case K::And:
      for (const GFormula& c : f.children) {
        if (!evalAKS(real, worlds, *c)) return false;
      }
      return true;
    case K::Or:
      for (const GFormula& c : f.children) {
        if (evalAKS(real, worlds, *c)) return true;
      }
      return false;
    case K::Modal:
      for (std::size_t w = 0; w < worlds.size(); ++w) {
        if (!evalAKS(worlds.pair(w), worlds, *f.children[0])) return false;
      }
      return true;
  }
  return false;
}

bool evalAKS(const ApproximateKnowledgeStructure& a, const GroundFormula& f) {
  return evalAKS(PairView(a.real), WorldSetView(a.worlds), f);
}

namespace {

void modalPolarity(const GroundFormula& f, bool positive, bool& pos, bool& neg) {
  switch (f.kind) {
    case K::Modal:
      (positive ? pos : neg) = true;
      return;
    case K::Not:
      modalPolarity(*f.children[0], !positive, pos, neg);
      return;
    default:
      for (const GFormula& c : f.children) modalPolarity(*c, positive, pos, neg);
  }
}

}  // namespace

bool hasPositiveModal(const GroundFormula& f) {
  bool pos = false, neg = false;
  modalPolarity(f, true, pos, neg);
  return pos;
}

bool hasNegativeModal(const GroundFormula& f) {
  bool pos = false, neg = false;
  modalPolarity(f, true, pos, neg);
  return neg;
}

}  // namespace kpd
