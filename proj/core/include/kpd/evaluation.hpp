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

// Evaluators for ground formulas: classical, pair (three-valued via
// flipping), knowledge structures and approximate knowledge structures.

#pragma once

#include "kpd/ground.hpp"
#include "kpd/kernel.hpp"

namespace kpd {

/// Two-valued satisfaction. Throws MisuseError on a modal node.
bool evalClassical(const Interpretation& i, const GroundFormula& f);

/// (I, J) |= f. Atoms read I; negation evaluates in (J, I) and inverts.
/// Throws MisuseError on a modal node.
bool evalPair(PairView pair, const GroundFormula& f);

/// (I, W) |= f. K psi holds iff psi holds at (J, W) for every J in W.
bool evalKS(const KnowledgeStructure& s, const GroundFormula& f);
bool evalKS(const Interpretation& real, const std::vector<Interpretation>& possible,
            const GroundFormula& f);

/// ((I, J), W) |= f. Negation flips the real pair and every pair of W.
bool evalAKS(PairView real, WorldSetView worlds, const GroundFormula& f);
bool evalAKS(const ApproximateKnowledgeStructure& a, const GroundFormula& f);

/// Whether some K node sits under an even (positive) or odd (negative)
/// number of negations.
bool hasPositiveModal(const GroundFormula& f);
bool hasNegativeModal(const GroundFormula& f);

}  // namespace kpd
