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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "kpd/errors.hpp"
#include "kpd/evaluation.hpp"
#include "kpd/ground.hpp"
#include "kpd/io.hpp"
#include "kpd/models.hpp"
#include "kpd/wfs.hpp"

namespace kpd::cli {

namespace {

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A syntax error tagged with the file it came from.
struct FileSyntaxError {
  std::string message;
};

template <typename F>
auto withFile(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SyntaxError& e) {
    throw FileSyntaxError{path + ":" + e.what()};
  }
}

void emitJson(std::ostream& out, const std::string& command, io::Json body) {
  io::Json j{{"schemaVersion", io::kSchemaVersion}, {"command", command}};
  j.update(body);
  out << j.dump(2) << '\n';
}

engine::EngineOptions engineOptions(const RunConfig& c) {
  engine::EngineOptions o;
  o.semantics = c.semantics;
  o.op2 = c.op2;
  return o;
}

std::string flag(bool b) { return b ? "true" : "false"; }

int runWfm(const RunConfig& c, const GroundTheory& t, std::ostream& out) {
  if (!t.isModalFree()) {
    throw MisuseError("wfm needs a theory without modal literals; use 'kpd derive' instead");
  }
  const Vocabulary& v = t.vocabulary();
  std::vector<Interpretation> seeds;
  if (c.seedPath) {
    engine::Seed s = withFile(*c.seedPath, [&] { return io::parseSeed(readFile(*c.seedPath), v); });
    seeds.push_back(s.real);
  } else {
    models::SearchConfig sc;
    sc.maxOpenAtoms = c.maxOpenAtoms;
    sc.maxCandidateWorlds = std::size_t{1} << std::min<std::size_t>(c.maxOpenAtoms, 20);
    seeds = models::ModelFinder(t, sc).candidateWorlds();
  }
  bool allTotal = true;
  io::Json results = io::Json::array();
  for (const Interpretation& o : seeds) {
    ApproximatingPair limit = wfs::wfm(t.definition, o);
    allTotal = allTotal && limit.isTotal();
    if (c.format == Format::Json) {
      results.push_back(io::Json{{"seed", io::toJson(o, v)},
                                 {"limit", io::toJson(limit, v)},
                                 {"total", limit.isTotal()}});
    } else {
      out << "seed: " << v.format(o) << "  limit: " << io::formatPair(limit, v) << "  "
          << (limit.isTotal() ? "total" : "non-total") << '\n';
    }
  }
  if (c.format == Format::Json) emitJson(out, "wfm", io::Json{{"results", results}});
  return allTotal ? kOk : kNonTotal;
}

engine::Seed loadSeed(const RunConfig& c, const GroundTheory& t) {
  if (!c.seedPath) throw MisuseError("this command needs --seed");
  return withFile(*c.seedPath,
                  [&] { return io::parseSeed(readFile(*c.seedPath), t.vocabulary()); });
}

int runDerive(const RunConfig& c, const GroundTheory& t, std::ostream& out) {
  engine::Seed seed = loadSeed(c, t);
  engine::Engine eng(t.definition, engineOptions(c));
  engine::DeriveResult r = eng.deriveLimit(seed);
  const Vocabulary& v = t.vocabulary();
  int code = kOk;
  if (r.status != engine::DeriveResult::Status::Unique) {
    code = kNoModels;
  } else if (!r.trace.final().isTotal()) {
    code = kNonTotal;
  }
  if (c.format == Format::Json) {
    emitJson(out, "derive", io::toJson(r, v));
    return code;
  }
  switch (r.status) {
    case engine::DeriveResult::Status::Unique:
      out << "limit: " << io::formatAKS(r.trace.final(), v) << '\n';
      out << "total: " << flag(r.trace.final().isTotal()) << '\n';
      break;
    case engine::DeriveResult::Status::NoSoundDerivation:
      out << "no sound derivation\n";
      break;
    case engine::DeriveResult::Status::Ambiguous:
      out << "sound derivations disagree: " << r.limits.size() << " distinct limits\n";
      for (const ApproximateKnowledgeStructure& l : r.limits) {
        out << "  limit: " << io::formatAKS(l, v) << '\n';
      }
      break;
  }
  out << "default policy trace: complete: " << flag(r.policyTrace.complete)
      << "  sound: " << flag(r.policyTrace.sound) << "  total: " << flag(r.policyTrace.total)
      << '\n';
  if (c.trace) out << io::formatTrace(r.trace, t);
  return code;
}

int runTrace(const RunConfig& c, const GroundTheory& t, std::ostream& out) {
  engine::Seed seed = loadSeed(c, t);
  engine::Engine eng(t.definition, engineOptions(c));
  engine::DerivationTrace tr = eng.runPolicy(seed);
  if (c.format == Format::Json) {
    emitJson(out, "trace", io::Json{{"trace", io::toJson(tr, t.vocabulary())}});
  } else {
    out << io::formatTrace(tr, t);
  }
  return kOk;
}

models::SearchConfig searchConfig(const RunConfig& c, const GroundTheory& t) {
  models::SearchConfig sc;
  sc.maxOpenAtoms = c.maxOpenAtoms;
  sc.worldsFromConstraint = c.worldsFromConstraint;
  sc.engine = engineOptions(c);
  if (c.worldsHintPath) {
    sc.worldsHint = withFile(*c.worldsHintPath, [&] {
      return io::parseWorlds(readFile(*c.worldsHintPath), t.vocabulary());
    });
    Interpretation defined = t.definedAtoms();
    for (const Interpretation& w : *sc.worldsHint) {
      if (w.intersects(defined)) {
        throw StructuralError("world hint sets defined atoms " +
                              t.vocabulary().format(w & defined));
      }
    }
  }
  return sc;
}

void printDiagnostics(const models::ModelFinder& f, const Vocabulary& v, std::ostream& err) {
  for (const models::Diagnostic& d : f.diagnostics()) {
    err << "kpd: warning: sound derivations from seed real: " << v.format(d.seed.real)
        << " reach " << d.distinctLimits << " different limits\n";
  }
}

int runModels(const RunConfig& c, const GroundTheory& t, std::ostream& out, std::ostream& err) {
  models::ModelFinder finder(t, searchConfig(c, t));
  std::vector<models::ModelReport> found =
      c.command == "weak" ? finder.weakModels() : finder.strongModels();
  const Vocabulary& v = t.vocabulary();
  if (c.format == Format::Json) {
    io::Json arr = io::Json::array();
    for (const models::ModelReport& m : found) arr.push_back(io::toJson(m, v, c.trace));
    io::Json diags = io::Json::array();
    for (const models::Diagnostic& d : finder.diagnostics()) {
      diags.push_back(io::Json{{"seed", io::toJson(d.seed, v)},
                               {"distinctLimits", d.distinctLimits}});
    }
    emitJson(out, c.command, io::Json{{"models", arr}, {"diagnostics", diags}});
  } else {
    for (const models::ModelReport& m : found) {
      out << io::formatKS(m.structure, v) << '\n';
      if (c.trace) out << io::formatTrace(m.witness, t);
    }
    out << found.size() << ' ' << c.command << " model" << (found.size() == 1 ? "" : "s")
        << '\n';
  }
  printDiagnostics(finder, v, err);
  return found.empty() ? kNoModels : kOk;
}

int runCheck(const RunConfig& c, const GroundTheory& t, std::ostream& out, std::ostream& err) {
  if (!c.modelPath) throw MisuseError("check needs --model");
  KnowledgeStructure s = withFile(
      *c.modelPath, [&] { return io::parseModel(readFile(*c.modelPath), t.vocabulary()); });
  models::ModelFinder finder(t, searchConfig(c, t));
  models::CheckResult r =
      c.strength == "strong" ? finder.checkStrong(s) : finder.checkWeak(s);
  if (c.format == Format::Json) {
    io::Json body{{"strength", c.strength}, {"holds", r.holds}, {"reason", r.reason}};
    if (r.report) body["model"] = io::toJson(*r.report, t.vocabulary(), c.trace);
    emitJson(out, "check", body);
  } else {
    out << c.strength << " model: " << (r.holds ? "yes" : "no");
    if (!r.holds) out << " (" << r.reason << ")";
    out << '\n';
    if (c.trace && r.report) out << io::formatTrace(r.report->witness, t);
  }
  printDiagnostics(finder, t.vocabulary(), err);
  return r.holds ? kOk : kNoModels;
}

}  // namespace

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    GroundTheory t =
        withFile(c.inputPath, [&] { return loadTheory(readFile(c.inputPath)); });
    if (c.command == "wfm") return runWfm(c, t, out);
    if (c.command == "derive") return runDerive(c, t, out);
    if (c.command == "trace") return runTrace(c, t, out);
    if (c.command == "weak" || c.command == "strong") return runModels(c, t, out, err);
    if (c.command == "check") return runCheck(c, t, out, err);
    throw MisuseError("unknown command " + c.command);
  } catch (const FileSyntaxError& e) {
    err << "kpd: syntax error: " << e.message << '\n';
    return kParseError;
  } catch (const SyntaxError& e) {
    err << "kpd: syntax error: " << e.what() << '\n';
    return kParseError;
  } catch (const SearchBoundError& e) {
    err << "kpd: search bound: " << e.what() << '\n';
    return kSearchBound;
  } catch (const SearchSpaceError& e) {
    err << "kpd: search space: " << e.what() << '\n';
    return kSearchBound;
  } catch (const SortError& e) {
    err << "kpd: sort error: " << e.what() << '\n';
    return kSortError;
  } catch (const GroundError& e) {
    err << "kpd: grounding error: " << e.what() << '\n';
    return kSortError;
  } catch (const Error& e) {
    // Misuse, structural and contract errors, and unreadable files.
    err << "kpd: error: " << e.what() << '\n';
    return kSortError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knowledge producing definitions: well-founded models, derivations, models"};
  app.name("kpd");
  app.require_subcommand(1);

  RunConfig c;
  std::string format = "text", semantics = "op4-flip", op2 = "world-upper";

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", c.inputPath, "Theory file")->required();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--semantics", semantics, "Certain-falsity check of unfounded sets")
        ->check(CLI::IsMember({"op4-flip", "op4-literal"}));
    sub->add_option("--op2", op2, "Upper bound of a world after a produce step")
        ->check(CLI::IsMember({"world-upper", "literal"}));
  };
  auto search = [&](CLI::App* sub) {
    sub->add_option("--max-open-atoms", c.maxOpenAtoms,
                    "Open-atom bound when every open interpretation is a candidate world")
        ->check(CLI::PositiveNumber);
    sub->add_option("--worlds", c.worldsHintPath, "File listing candidate open worlds");
    sub->add_flag("--worlds-from-constraint", c.worldsFromConstraint,
                  "Candidate worlds satisfy the constraint's open-only conjuncts");
    sub->add_flag("--trace", c.trace, "Print witness derivations");
  };

  CLI::App* wfm = app.add_subcommand("wfm", "Well-founded model per open seed");
  common(wfm);
  wfm->add_option("--seed", c.seedPath, "Seed file; only its real world is used");
  wfm->add_option("--max-open-atoms", c.maxOpenAtoms, "Open-atom bound for seed enumeration")
      ->check(CLI::PositiveNumber);

  CLI::App* derive = app.add_subcommand("derive", "Limit of the sound derivations from a seed");
  common(derive);
  derive->add_option("--seed", c.seedPath, "Seed file")->required();
  derive->add_flag("--trace", c.trace, "Print the witness derivation");

  CLI::App* trace = app.add_subcommand("trace", "Derivation built by the default policy");
  common(trace);
  trace->add_option("--seed", c.seedPath, "Seed file")->required();

  CLI::App* weak = app.add_subcommand("weak", "Enumerate weak models");
  common(weak);
  search(weak);

  CLI::App* strong = app.add_subcommand("strong", "Enumerate strong models");
  common(strong);
  search(strong);

  CLI::App* check = app.add_subcommand("check", "Check a knowledge structure");
  common(check);
  search(check);
  check->add_option("--model", c.modelPath, "Model file")->required();
  check->add_option("--strength", c.strength, "Model strength")
      ->check(CLI::IsMember({"weak", "strong"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "kpd: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return kParseError;
  }

  c.command = app.get_subcommands().front()->get_name();
  c.format = format == "json" ? Format::Json : Format::Text;
  c.semantics = semantics == "op4-literal" ? engine::Semantics::Op4Literal
                                           : engine::Semantics::Op4Flip;
  c.op2 = op2 == "literal" ? engine::Op2Mode::Literal : engine::Op2Mode::WorldUpper;
  return execute(c, out, err);
}

}  // namespace kpd::cli
