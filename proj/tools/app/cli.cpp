// Copyright 2026 The orderk Authors
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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "orderk/errors.hpp"
#include "output.hpp"
#include "run_spec.hpp"

namespace orderk::app {

namespace {

struct RawOptions {
  std::string process = "y";
  std::optional<int> order;
  double rate = 1.0;
  double time = 1.0;
  std::optional<std::string> weights;
  std::optional<std::string> bernstein;
  std::optional<double> beta;
  int level = 1;
  std::uint64_t paths = 100000;
  std::uint64_t seed = 42;
  std::uint64_t streams = 4;
  std::optional<int> max_n;
  std::optional<std::string> mode;
  std::string suite = "all";
  std::uint64_t dump_paths = 0;
  std::string format = "table";
  std::string out = "orderk_out";
};

void add_output_options(CLI::App* sub, RawOptions& o) {
  sub->add_option("--format", o.format, "stdout format: table, json or csv")
      ->envname("ORDERK_FORMAT")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  sub->add_option("--out", o.out, "directory for report.json, data files and manifest.json")
      ->envname("ORDERK_OUT");
}

void add_model_options(CLI::App* sub, RawOptions& o) {
  sub->add_option("--process", o.process, "y, z, w or u")->envname("ORDERK_PROCESS");
  sub->add_option("--i", o.order, "order i")->envname("ORDERK_I");
  sub->add_option("--lambda", o.rate, "rate of each component")->envname("ORDERK_LAMBDA");
  sub->add_option("--t", o.time, "time")->envname("ORDERK_T");
  sub->add_option("--g", o.weights, "weights for z, e.g. 2,4")->envname("ORDERK_G");
  sub->add_option("--f", o.bernstein, "Bernstein function for w, e.g. stable:0.5")
      ->envname("ORDERK_F");
  sub->add_option("--beta", o.beta, "clock rate for u")->envname("ORDERK_BETA");
}

void add_mc_options(CLI::App* sub, RawOptions& o) {
  sub->add_option("--paths", o.paths, "Monte Carlo paths")->envname("ORDERK_PATHS");
  sub->add_option("--seed", o.seed, "master seed")->envname("ORDERK_SEED");
  sub->add_option("--streams", o.streams, "independent random streams")->envname("ORDERK_STREAMS");
}

RunSpec to_spec(const std::string& command, const RawOptions& o) {
  RunSpec s;
  s.command = command;
  s.process = o.process;
  s.order = o.order;
  s.rate = o.rate;
  s.time = o.time;
  s.weights = o.weights;
  s.bernstein = o.bernstein;
  s.beta = o.beta;
  s.level = o.level;
  s.paths = o.paths;
  s.seed = o.seed;
  s.streams = o.streams;
  s.max_n = o.max_n;
  s.mode = o.mode;
  s.suite = o.suite;
  s.dump_paths = o.dump_paths;
  s.format = o.format;
  s.out = o.out;
  return s;
}

int run_spec(const RunSpec& raw, const std::vector<std::string>& args, std::ostream& out) {
  const RunSpec spec = resolve(raw);
  const CommandResult result = execute(spec);
  write_outputs(spec, result, args);
  out << stdout_text(spec, result);
  return result.exit_code;
}

int replay(const std::string& manifest_path, const std::optional<std::string>& out_dir,
           std::ostream& out) {
  namespace fs = std::filesystem;
  const auto manifest = nlohmann::json::parse(read_file(manifest_path));
  if (manifest.at("schema_version").get<int>() != kSchemaVersion) {
    throw DomainError("unsupported manifest schema_version");
  }
  RunSpec spec = run_spec_from_json(manifest.at("params"));
  spec.out = out_dir ? *out_dir : (fs::path(manifest_path).parent_path() / "replay").string();
  spec = resolve(spec);
  const CommandResult result = execute(spec);
  const auto fresh = write_outputs(spec, result, manifest.at("args").get<std::vector<std::string>>());

  bool identical = true;
  out << fmt::format("replay of {} into {}\n", manifest_path, spec.out);
  for (const auto& [file, digest] : manifest.at("outputs").items()) {
    const bool present = fresh["outputs"].contains(file);
    const bool same = present && fresh["outputs"][file].get<std::string>() == digest.get<std::string>();
    identical = identical && same;
    out << fmt::format("  {:<14} {}\n", file, same ? "identical" : "DIFFERS");
  }
  if (fresh["outputs"].size() != manifest.at("outputs").size()) identical = false;
  out << (identical ? "all outputs reproduced bit-exactly\n" : "outputs differ\n");
  return identical ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poisson processes of order i: exact laws, simulation and hitting probabilities",
               "orderk"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  RawOptions o;
  auto* pmf = app.add_subcommand("pmf", "exact pmf table for y, z or u");
  add_model_options(pmf, o);
  pmf->add_option("--max-n", o.max_n, "last level; default stops once the tail bound is < 1e-9")
      ->envname("ORDERK_MAX_N");
  add_output_options(pmf, o);

  auto* simulate = app.add_subcommand("simulate", "terminal-value histogram by simulation");
  add_model_options(simulate, o);
  add_mc_options(simulate, o);
  simulate->add_option("--mode", o.mode, "superposition or compound")->envname("ORDERK_MODE");
  simulate->add_option("--dump-paths", o.dump_paths, "write this many sample paths to paths.csv");
  add_output_options(simulate, o);

  auto* hit = app.add_subcommand("hit", "hitting probability: closed form, oracle and Monte Carlo");
  add_model_options(hit, o);
  add_mc_options(hit, o);
  hit->add_option("--k", o.level, "target level")->envname("ORDERK_K");
  add_output_options(hit, o);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", o.suite, "exact, compound, hitting, paper-compare, laplace, repro or all")
      ->envname("ORDERK_SUITE");
  verify->add_option("--seed", o.seed, "master seed")->envname("ORDERK_SEED");
  verify->add_option("--streams", o.streams, "independent random streams")->envname("ORDERK_STREAMS");
  add_output_options(verify, o);

  std::string manifest_path;
  std::optional<std::string> replay_out;
  auto* rep = app.add_subcommand("replay", "rerun a manifest and compare output checksums");
  rep->add_option("manifest", manifest_path, "path to manifest.json")->required();
  rep->add_option("--out", replay_out, "directory for the replayed outputs");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidArguments;
  }

  try {
    if (rep->parsed()) return replay(manifest_path, replay_out, out);
    for (auto* sub : {pmf, simulate, hit, verify}) {
      if (sub->parsed()) return run_spec(to_spec(sub->get_name(), o), args, out);
    }
  } catch (const DomainError& e) {
    err << "invalid arguments: " << e.what() << "\n";
    return kExitInvalidArguments;
  } catch (const UnsupportedQuery& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const DerivativeUnavailable& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid manifest: " << e.what() << "\n";
    return kExitInvalidArguments;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return kExitInvalidArguments;
}

}  // namespace orderk::app
