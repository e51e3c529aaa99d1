// Copyright 2026 The qlam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end for .qlam files and the property harness.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qlam/properties.hpp"
#include "qlam/rewrite.hpp"
#include "qlam/semantics.hpp"
#include "qlam/surface.hpp"
#include "qlam/typecheck.hpp"
#include "qlam/typesys.hpp"

namespace {

using nlohmann::json;
using namespace qlam;

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kParseFailure = 3,
  kTypeFailure = 4,
  kRuntimeFailure = 5,
};

struct Options {
  std::string file;
  std::uint64_t seed = 0;
  std::size_t fuel = 10000;
  double epsilon = kDefaultEpsilon;
  std::string format = "text";
  bool trace = false;
  bool leaves = false;
  GenBudget budget;
  std::string mutation = "none";
  bool json() const { return format == "json"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Errors are reported on stderr in text mode and as a JSON object on stdout
// in json mode, so scripts always get a parseable document.
int report_error(const Options& o, int code, const std::string& kind, const std::string& message,
                 json extra = json::object()) {
  if (o.json()) {
    extra["kind"] = kind;
    extra["message"] = message;
    std::cout << json{{"error", extra}}.dump(2) << "\n";
  } else {
    std::cerr << "qlam: " << kind << " error: " << message << "\n";
  }
  return code;
}

EngineConfig engine(const Options& o) {
  EngineConfig cfg;
  cfg.eps = o.epsilon;
  if (o.mutation == "swap-ite") cfg.mutation = Mutation::kSwapIte;
  if (o.mutation == "drop-negation") cfg.mutation = Mutation::kDropNegation;
  return cfg;
}

json distribution_json(const Distribution& d) {
  json arr = json::array();
  for (const Outcome& out : d) arr.push_back({{"p", out.p}, {"term", print(out.term)}});
  return arr;
}

void print_distribution(const Distribution& d) {
  for (const Outcome& out : d) std::cout << format_double(out.p) << "\t" << print(out.term) << "\n";
}

int cmd_check(const Options& o, const SourceFile& src) {
  const Type a = infer(src.main);
  std::optional<bool> matches;
  if (src.expect) matches = subtype(a, *src.expect) && subtype(*src.expect, a);
  if (o.json()) {
    json j{{"type", print(a)}};
    if (src.expect) {
      j["expect"] = print(*src.expect);
      j["matches"] = *matches;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << print(a) << "\n";
    if (matches && !*matches) std::cerr << "qlam: expected " << print(*src.expect) << "\n";
  }
  return matches.value_or(true) ? kOk : kCheckFailed;
}

int cmd_run(const Options& o, const SourceFile& src) {
  infer(src.main);
  const SampleResult r = sample(src.main, o.seed, o.fuel, engine(o));
  if (o.json()) {
    json j{{"seed", o.seed}, {"result", print(r.result)}};
    if (o.trace) {
      json steps = json::array();
      for (const TraceStep& s : r.trace.steps) {
        steps.push_back({{"rule", s.rule}, {"p", s.p}, {"before", print(s.before)}, {"after", print(s.after)}});
      }
      j["trace"] = steps;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    if (o.trace) std::cout << r.trace.render();
    std::cout << print(r.result) << "\n";
  }
  return kOk;
}

int cmd_dist(const Options& o, const SourceFile& src) {
  infer(src.main);
  const RunResult r = run_distribution(src.main, o.fuel, engine(o));
  const Distribution& d = o.leaves ? r.leaves : r.distribution;
  if (o.json()) {
    std::cout << distribution_json(d).dump(2) << "\n";
  } else {
    print_distribution(d);
  }
  return kOk;
}

int cmd_denote(const Options& o, const SourceFile& src) {
  infer(src.main);
  const DenSet set = denote(src.main, {}, o.epsilon);
  if (o.json()) {
    json arr = json::array();
    for (const DenVector& v : set) {
      json vec = json::array();
      for (const Amplitude& a : v.amps) vec.push_back({a.real(), a.imag()});
      arr.push_back(vec);
    }
    std::cout << arr.dump() << "\n";
  } else {
    for (const DenVector& v : set) {
      std::cout << "(";
      for (std::size_t i = 0; i < v.amps.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << print_scalar(Scalar(v.amps[i]));
      }
      std::cout << ")\n";
    }
  }
  return kOk;
}

int cmd_properties(const Options& o) {
  const PropertyReport r = run_properties(o.budget, o.seed, engine(o), o.fuel);
  if (o.json()) {
    json cex = json::array();
    for (const Counterexample& c : r.counterexamples) {
      cex.push_back({{"property", c.property},
                     {"detail", c.detail},
                     {"term", print(c.original)},
                     {"shrunk", print(c.shrunk)}});
    }
    json viol = json::object();
    for (const char* p : {kSubjectReduction, kProbability, kSoundness, kCommutation}) {
      auto it = r.violations.find(p);
      viol[p] = it == r.violations.end() ? 0 : it->second;
    }
    std::cout << json{{"seed", o.seed},
                      {"checked", r.checked},
                      {"discarded", r.discarded},
                      {"discard_reasons", r.discard_reasons},
                      {"steps", r.steps},
                      {"violations", viol},
                      {"counterexamples", cex}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "checked " << r.checked << " terms (" << r.steps << " steps), discarded " << r.discarded
              << "\n";
    for (const auto& [why, n] : r.discard_reasons) std::cout << "  discarded " << n << ": " << why << "\n";
    for (const char* p : {kSubjectReduction, kProbability, kSoundness, kCommutation}) {
      auto it = r.violations.find(p);
      std::cout << p << ": " << (it == r.violations.end() ? 0 : it->second) << " violations\n";
    }
    for (const Counterexample& c : r.counterexamples) {
      std::cout << "counterexample (" << c.property << "): " << c.detail << "\n"
                << "  term:   " << print(c.original) << "\n"
                << "  shrunk: " << print(c.shrunk) << "\n";
    }
  }
  return r.total_violations() == 0 ? kOk : kCheckFailed;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QLAM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "qlam: ignoring malformed QLAM_SEED\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  o.seed = default_seed();

  CLI::App app{"qlam: typecheck, reduce and denote programs of the qubit lambda calculus"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", o.seed, "PRNG seed (falls back to $QLAM_SEED, then 0)");
  app.add_option("--fuel", o.fuel, "maximum reduction steps per branch")->check(CLI::PositiveNumber);
  app.add_option("--epsilon", o.epsilon, "numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, ".qlam source file")->required(); };
  CLI::App* check = app.add_subcommand("check", "print the type of the main term");
  add_file(check);
  CLI::App* run = app.add_subcommand("run", "sample one execution");
  add_file(run);
  run->add_flag("--trace", o.trace, "print every rewrite step");
  CLI::App* trace = app.add_subcommand("trace", "same as run --trace");
  add_file(trace);
  CLI::App* dist = app.add_subcommand("dist", "enumerate the output distribution");
  add_file(dist);
  dist->add_flag("--leaves", o.leaves, "list every branch before merging equal results");
  CLI::App* den = app.add_subcommand("denote", "print the denotation of the main term");
  add_file(den);
  CLI::App* props = app.add_subcommand("properties", "check generated terms against the metatheory");
  props->add_option("--count", o.budget.count, "number of terms to check");
  props->add_option("--depth", o.budget.max_depth, "maximum generator depth")->check(CLI::NonNegativeNumber);
  props->add_option("--qubits", o.budget.max_qubits, "maximum register width")->check(CLI::Range(1, 8));
  props->add_option("--mutation", o.mutation, "inject a broken rule (harness self-test)")
      ->check(CLI::IsMember({"none", "swap-ite", "drop-negation"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (trace->parsed()) o.trace = true;

  try {
    if (props->parsed()) return cmd_properties(o);
    const SourceFile src = parse(read_file(o.file));
    if (check->parsed()) return cmd_check(o, src);
    if (run->parsed() || trace->parsed()) return cmd_run(o, src);
    if (dist->parsed()) return cmd_dist(o, src);
    return cmd_denote(o, src);
  } catch (const ParseError& e) {
    return report_error(o, kParseFailure, "parse", e.detail(), {{"line", e.line()}, {"column", e.column()}});
  } catch (const TypeError& e) {
    return report_error(o, kTypeFailure, "type", e.what(),
                        {{"reason", to_string(e.kind())}, {"location", e.location()}});
  } catch (const RewriteError& e) {
    return report_error(o, kRuntimeFailure, "runtime", e.what());
  } catch (const SemanticsError& e) {
    return report_error(o, kRuntimeFailure, "semantics", e.what());
  } catch (const std::exception& e) {
    return report_error(o, kRuntimeFailure, "io", e.what());
  }
}
