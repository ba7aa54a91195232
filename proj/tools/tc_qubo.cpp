// Copyright 2026 The tc-qubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tc-qubo: Tree Containment to QUBO.
//
// Exit codes: 0 success (for check: containment confirmed by a verified
// zero-energy assignment), 1 check: non-containment confirmed by the oracle,
// 2 check: inconclusive, 3 bad input, 4 input too large, 5 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcqubo/tcqubo.hpp"

namespace {

using namespace tcqubo;
using nlohmann::json;

enum ExitCode {
  kOk = 0,
  kNotDisplayed = 1,
  kInconclusive = 2,
  kBadInput = 3,
  kTooLarge = 4,
  kInternal = 5,
};

struct RunConfig {
  std::string input;
  std::string tree;
  std::string output;
  std::string assignment;
  std::string format = "json";
  std::string method = "anneal";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t restarts = AnnealParams{}.restarts;
  std::size_t sweeps = AnnealParams{}.sweeps;
  std::size_t threads = 0;
  bool subset_leaves = false;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

// With no --output the document goes to stdout.
void Emit(const RunConfig& cfg, const std::string& suffix, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    WriteFile(cfg.output + suffix, text);
  }
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

Instance LoadInstance(const RunConfig& cfg) {
  if (cfg.format == "json") {
    return ParseInstance(ReadFile(cfg.input), cfg.subset_leaves);
  }
  if (cfg.tree.empty()) throw Error("--format edgelist needs --tree for the tree file");
  return ParseInstance(ReadFile(cfg.input), ReadFile(cfg.tree), Format::kEdgeList,
                       cfg.subset_leaves);
}

AnnealParams Params(const RunConfig& cfg) {
  AnnealParams p;
  p.restarts = cfg.restarts;
  p.sweeps = cfg.sweeps;
  p.seed = cfg.seed;
  p.threads = cfg.threads;
  return p;
}

SolveResult Solve(const RunConfig& cfg, const Hamiltonian& h, const QuboMatrix& q) {
  SolveResult r = cfg.method == "exhaustive" ? SolveExhaustive(q) : SolveAnneal(q, Params(cfg));
  AttachBreakdown(r, h);
  if (h.combine(*r.penalty_breakdown) != r.energy) {
    throw InternalError("penalty breakdown does not recombine to the energy");
  }
  return r;
}

// A single-leaf tree is displayed iff its label occurs in the network.
bool TrivialDisplays(const Instance& inst) {
  return inst.network.leaf_of(inst.tree.label(0)).has_value() &&
         (inst.subset_leaves || inst.network.size() == 1);
}

int RunGen(const RunConfig& cfg) {
  if (cfg.output.empty()) throw Error("gen needs --output PREFIX");
  Instance inst = LoadInstance(cfg);
  Hamiltonian h = Assemble(inst);
  QuboMatrix q = h.qubo();
  WriteFile(cfg.output + ".qubo", WriteQubo(q));
  WriteFile(cfg.output + ".varmap", WriteVariableMap(h.layout));
  json stats = ToJson(Stats(q));
  stats["layout"] = ToJson(h.layout);
  WriteFile(cfg.output + ".stats.json", Dump(stats));
  return kOk;
}

int RunStats(const RunConfig& cfg) {
  Instance inst = LoadInstance(cfg);
  Hamiltonian h = Assemble(inst);
  json stats = ToJson(Stats(h.qubo()));
  stats["layout"] = ToJson(h.layout);
  Emit(cfg, "", Dump(stats));
  return kOk;
}

int RunSolve(const RunConfig& cfg) {
  Instance inst = LoadInstance(cfg);
  Hamiltonian h = Assemble(inst);
  SolveResult r = Solve(cfg, h, h.qubo());
  json j = ToJson(r);
  j["seed"] = cfg.seed;
  if (cfg.output.empty()) {
    std::cout << Dump(j);
  } else {
    WriteFile(cfg.output + ".json", Dump(j));
    WriteFile(cfg.output + ".assignment", r.best.to_string() + "\n");
  }
  return kOk;
}

int RunVerify(const RunConfig& cfg) {
  if (cfg.assignment.empty()) throw Error("verify needs --assignment FILE");
  Instance inst = LoadInstance(cfg);
  Hamiltonian h = Assemble(inst);
  Assignment a = Assignment::FromString(ReadFile(cfg.assignment));
  const Coeff energy = Evaluate(h.qubo(), a);
  VerificationReport rep = VerifyDisplay(Decode(a, h.layout), inst);
  json j = ToJson(rep);
  j["energy"] = energy;
  j["penalty_breakdown"] = PenaltiesJson(h.breakdown(a.bits));
  Emit(cfg, "", Dump(j));
  return kOk;
}

int RunOracle(const RunConfig& cfg) {
  Instance inst = LoadInstance(cfg);
  DisplayResult r = Displays(inst.network, inst.tree);
  Emit(cfg, "", Dump(ToJson(r, inst.network)));
  return kOk;
}

int RunCheck(const RunConfig& cfg) {
  Instance inst = LoadInstance(cfg);
  json report = {{"version", kFormatVersion}};

  if (inst.tree.size() == 1) {
    const bool yes = TrivialDisplays(inst);
    report["method"] = "single-leaf";
    report["displays"] = yes;
    Emit(cfg, "", Dump(report));
    return yes ? kOk : kNotDisplayed;
  }

  std::optional<DisplayResult> oracle;
  if (inst.network.reticulation_count() <= kMaxOracleReticulations) {
    oracle = Displays(inst.network, inst.tree);
    report["displays"] = oracle->displays;
  } else {
    report["displays"] = nullptr;
    report["oracle"] = "skipped: too many reticulations";
  }

  std::optional<Hamiltonian> h;
  try {
    h = Assemble(inst);
  } catch (const NotDisplayableError& e) {
    report["qubo_zero"] = false;
    report["reason"] = e.what();
    if (oracle && oracle->displays) throw InternalError("oracle contradicts the size bound");
    report["agree"] = true;
    Emit(cfg, "", Dump(report));
    return kNotDisplayed;
  }
  const QuboMatrix q = h->qubo();
  SolveResult r = Solve(cfg, *h, q);
  report["qubo_zero"] = r.reached_zero;
  report["energy"] = r.energy;
  report["restarts_used"] = r.restarts_used;
  report["sweeps_used"] = r.sweeps_used;
  report["penalty_breakdown"] = PenaltiesJson(*r.penalty_breakdown);

  bool confirmed = false;
  if (r.reached_zero) {
    VerificationReport rep = VerifyDisplay(Decode(r.best, h->layout), inst);
    report["verdict"] = rep.verdict;
    if (!rep.verdict) throw InternalError("zero-energy assignment failed verification");
    confirmed = true;
  } else if (oracle && oracle->displays) {
    // The annealer missed; the oracle witness still gives a verified zero.
    Assignment a = EncodeWitness(*oracle->witness, inst, h->layout);
    if (Evaluate(q, a) != 0) throw InternalError("oracle witness does not encode to H = 0");
    report["verdict"] = VerifyDisplay(Decode(a, h->layout), inst).verdict;
    report["witness_source"] = "oracle";
    confirmed = true;
  }
  if (oracle) {
    report["agree"] = oracle->displays == r.reached_zero;
    if (r.reached_zero && !oracle->displays) {
      throw InternalError("zero-energy assignment found but the oracle says no");
    }
  }
  Emit(cfg, "", Dump(report));
  if (confirmed) return kOk;
  if (oracle) return kNotDisplayed;
  return kInconclusive;
}

void AddCommon(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input,-i", cfg.input, "instance file (json) or network file (edgelist)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--tree", cfg.tree, "tree file, with --format edgelist")
      ->check(CLI::ExistingFile);
  cmd->add_option("--output,-o", cfg.output, "output path or prefix");
  cmd->add_option("--format", cfg.format, "input format")
      ->check(CLI::IsMember({"json", "edgelist"}));
  cmd->add_flag("--subset-leaves", cfg.subset_leaves,
                "allow the tree's leaf set to be a subset of the network's");
}

void AddSolver(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "RNG seed (default: $TC_QUBO_SEED or 0)")
      ->each([&](const std::string&) { cfg.seed_given = true; });
  cmd->add_option("--restarts", cfg.restarts, "annealing restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--sweeps", cfg.sweeps, "sweeps per restart")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  cmd->add_option("--method", cfg.method, "solver")
      ->check(CLI::IsMember({"anneal", "exhaustive"}));
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Compile Tree Containment instances to QUBO, solve, and verify"};
  app.require_subcommand(1);
  auto* gen = app.add_subcommand("gen", "write <prefix>.qubo, .varmap and .stats.json");
  auto* solve = app.add_subcommand("solve", "minimize the QUBO");
  auto* verify = app.add_subcommand("verify", "decode and verify an assignment");
  auto* oracle = app.add_subcommand("oracle", "brute-force display check");
  auto* stats = app.add_subcommand("stats", "QUBO size and density");
  auto* check = app.add_subcommand("check", "solve, verify and cross-check with the oracle");
  for (auto* cmd : {gen, solve, verify, oracle, stats, check}) AddCommon(cmd, cfg);
  for (auto* cmd : {solve, check}) AddSolver(cmd, cfg);
  verify->add_option("--assignment", cfg.assignment, "file with one line of 0/1 characters")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  if (!cfg.seed_given) {
    if (const char* env = std::getenv("TC_QUBO_SEED")) {
      try {
        cfg.seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "error: TC_QUBO_SEED is not a non-negative integer\n";
        return kBadInput;
      }
    }
  }

  try {
    if (*gen) return RunGen(cfg);
    if (*solve) return RunSolve(cfg);
    if (*verify) return RunVerify(cfg);
    if (*oracle) return RunOracle(cfg);
    if (*stats) return RunStats(cfg);
    if (*check) return RunCheck(cfg);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const TooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTooLarge;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kInternal;
}
