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

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "kpd/engine.hpp"
#include "kpd/ground.hpp"
#include "kpd/io.hpp"
#include "kpd/models.hpp"
#include "kpd/wfs.hpp"

using namespace kpd;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(KPD_THEORY_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Reachability over a chain of n nodes.
std::string chain(int n) {
  std::string s = "domain Node = {";
  for (int i = 0; i < n; ++i) s += (i ? ", N" : "N") + std::to_string(i);
  s += "}.\npred E(Node, Node). pred T(Node, Node).\n"
       "define {\n  T(x, y) <- E(x, y).\n  T(x, z) <- exists y (E(x, y) & T(y, z)).\n}\n";
  return s;
}

void BM_Ground(benchmark::State& state) {
  std::string src = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(loadTheory(src));
}
BENCHMARK(BM_Ground)->Arg(4)->Arg(8)->Arg(12);

void BM_WellFoundedModel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GroundTheory g = loadTheory(chain(n));
  const Vocabulary& v = g.vocabulary();
  Interpretation open = v.empty();
  for (int i = 0; i + 1 < n; ++i) {
    open.set(*v.find("E(N" + std::to_string(i) + ",N" + std::to_string(i + 1) + ")"));
  }
  for (auto _ : state) benchmark::DoNotOptimize(wfs::wfm(g.definition, open));
}
BENCHMARK(BM_WellFoundedModel)->Arg(4)->Arg(8)->Arg(12);

void BM_InterviewPolicy(benchmark::State& state) {
  GroundTheory g = loadTheory(slurp("interview1.kpd"));
  engine::Seed seed = io::parseSeed(slurp("interview1.seed"), g.vocabulary());
  engine::Engine e(g.definition);
  for (auto _ : state) benchmark::DoNotOptimize(e.runPolicy(seed));
}
BENCHMARK(BM_InterviewPolicy);

void BM_InterviewDeriveLimit(benchmark::State& state) {
  GroundTheory g = loadTheory(slurp("interview1.kpd"));
  engine::Seed seed = io::parseSeed(slurp("interview1.seed"), g.vocabulary());
  engine::Engine e(g.definition);
  for (auto _ : state) benchmark::DoNotOptimize(e.deriveLimit(seed));
}
BENCHMARK(BM_InterviewDeriveLimit);

void BM_InterviewStrongModels(benchmark::State& state) {
  GroundTheory g = loadTheory(slurp("interview1.kpd"));
  models::SearchConfig cfg;
  cfg.worldsFromConstraint = true;
  for (auto _ : state) {
    models::ModelFinder f(g, cfg);
    benchmark::DoNotOptimize(f.strongModels());
  }
}
BENCHMARK(BM_InterviewStrongModels);

void BM_SensingWeakModels(benchmark::State& state) {
  GroundTheory g = loadTheory(slurp("glass-sensing.kpd"));
  models::SearchConfig cfg;
  cfg.worldsHint = io::parseWorlds(slurp("glass-sensing.worlds"), g.vocabulary());
  for (auto _ : state) {
    models::ModelFinder f(g, cfg);
    benchmark::DoNotOptimize(f.weakModels());
  }
}
BENCHMARK(BM_SensingWeakModels)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
