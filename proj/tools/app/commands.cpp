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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>

#include <fmt/format.h>

#include "orderk/errors.hpp"
#include "orderk/exactdist.hpp"
#include "orderk/hitting.hpp"
#include "orderk/simulate.hpp"
#include "orderk/stats.hpp"
#include "output.hpp"
#include "suites.hpp"

namespace orderk::app {

namespace {

using Json = nlohmann::ordered_json;

Json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

// Everything that determines the data; out and format are presentation.
Json model_params(const RunSpec& s) {
  Json j = to_json(s);
  j.erase("out");
  j.erase("format");
  return j;
}

Json report_header(const RunSpec& s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = s.command;
  j["params"] = model_params(s);
  return j;
}

// --- pmf -----------------------------------------------------------------------

CommandResult run_pmf(const RunSpec& s) {
  const ProcessKind kind = parse_process_kind(s.process);
  const OrderParams p = order_params(s);
  const auto g = weight_table(s);
  int n_max = 0;
  std::function<double(int)> mass;
  std::function<double(int)> tail;
  double truncation = 0.0;
  switch (kind) {
    case ProcessKind::kY:
      n_max = s.max_n ? *s.max_n : pmf_table_y(p).n_max();
      mass = [&](int n) { return pmf_order_i(p, n); };
      tail = [&](int n) { return chernoff_tail_y(p, n); };
      break;
    case ProcessKind::kZ:
      n_max = s.max_n ? *s.max_n : pmf_table_z(p, *g).n_max();
      mass = [&](int n) { return pmf_weighted(p, *g, n); };
      tail = [&](int n) { return chernoff_tail_z(p, *g, n); };
      break;
    case ProcessKind::kU:
      n_max = s.max_n ? *s.max_n : pmf_table_u(p, *s.beta).n_max();
      mass = [&](int n) {
        const auto v = pmf_iterated_u(p, *s.beta, n, 1e-14);
        truncation += v.truncation_bound;
        return v.value;
      };
      // Rows so far may each be short by their series truncation bound.
      tail = [&](int n) { return chernoff_tail_u(p, *s.beta, n) + truncation; };
      break;
    case ProcessKind::kW:
      throw DomainError("pmf is not available for process w");
  }

  CommandResult r;
  r.report = report_header(s);
  Json rows = Json::array();
  std::string csv = "n,pmf,cumulative,tail_bound\n";
  std::string table = fmt::format("{:>6}  {:<24}  {:<24}  {}\n", "n", "pmf", "cumulative", "tail_bound");
  double cumulative = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double v = mass(n);
    cumulative += v;
    const double t = std::min(1.0, tail(n));
    Json row;
    row["n"] = n;
    row["pmf"] = number(v);
    row["cumulative"] = number(cumulative);
    row["tail_bound"] = number(t);
    rows.push_back(row);
    csv += fmt::format("{},{},{},{}\n", n, csv_number(v), csv_number(cumulative), csv_number(t));
    table += fmt::format("{:>6}  {:<24.15g}  {:<24.15g}  {:.3e}\n", n, v, cumulative, t);
  }
  r.report["n_max"] = n_max;
  r.report["rows"] = rows;
  r.csv = csv;
  r.table = table;
  r.data_files.emplace_back("pmf.csv", csv);
  return r;
}

// --- simulate ------------------------------------------------------------------

CommandResult run_simulate(const RunSpec& s) {
  const ProcessKind kind = parse_process_kind(s.process);
  const OrderParams p = order_params(s);
  const auto g = weight_table(s);
  const auto f = bernstein_fn(s);
  const SamplingMode mode = sampling_mode(s);
  const double i_lambda = p.total_rate();

  std::function<std::int64_t(Rng&)> draw;
  std::function<PathSample(Rng&)> path;
  double zero_exact = NAN;
  std::optional<double> exact_mean;
  std::optional<Pmf> exact;
  switch (kind) {
    case ProcessKind::kY:
      draw = [&](Rng& r) { return terminal_y(p, r, mode); };
      path = [&](Rng& r) {
        return mode == SamplingMode::kCompound ? sample_y_compound(p, r) : sample_y_superposition(p, r);
      };
      zero_exact = std::exp(-i_lambda * p.time);
      exact_mean = p.intensity() * p.order * (p.order + 1) / 2.0;
      exact = pmf_table_y(p);
      break;
    case ProcessKind::kZ: {
      draw = [&](Rng& r) { return terminal_z(p, *g, r, mode); };
      path = [&](Rng& r) { return sample_z(p, *g, r, mode); };
      zero_exact = std::exp(-i_lambda * p.time);
      double total_weight = 0.0;
      for (int w : g->weights()) total_weight += w;
      exact_mean = p.intensity() * total_weight;
      exact = pmf_table_z(p, *g);
      break;
    }
    case ProcessKind::kW:
      draw = [&](Rng& r) { return terminal_w(p, *f, r, mode); };
      path = [&](Rng& r) { return sample_w(p, *f, r, mode); };
      zero_exact = std::exp(-p.time * bernstein_value(*f, i_lambda));
      break;
    case ProcessKind::kU:
      draw = [&](Rng& r) { return terminal_u(p, *s.beta, r, mode); };
      path = [&](Rng& r) { return sample_u(p, *s.beta, r, mode); };
      zero_exact = std::exp(-*s.beta * p.time * -std::expm1(-i_lambda));
      exact_mean = *s.beta * p.time * p.rate * p.order * (p.order + 1) / 2.0;
      exact = pmf_table_u(p, *s.beta);
      break;
  }

  const Histogram hist = simulate_histogram(sim_config(s), draw);
  const SampleMoments m = sample_moments(hist);
  const double zero_fraction =
      static_cast<double>(hist.count(0) ? hist.at(0) : 0) / static_cast<double>(m.n);

  CommandResult r;
  r.report = report_header(s);
  r.report["n_paths"] = m.n;
  r.report["mean"] = number(m.mean);
  r.report["variance"] = number(m.variance);
  r.report["exact_mean"] = exact_mean ? number(*exact_mean) : Json(nullptr);
  r.report["zero_fraction"] = number(zero_fraction);
  r.report["zero_probability_exact"] = number(zero_exact);
  Json gof = nullptr;
  if (exact && m.n >= kMinGofSampleSize) {
    try {
      const GofResult res = chi_square_one_sample(hist, *exact);
      gof = Json::object();
      gof["statistic"] = number(res.statistic);
      gof["degrees_of_freedom"] = res.degrees_of_freedom;
      gof["p_value"] = number(res.p_value);
      gof["pooled_bins"] = res.pooled_bins;
    } catch (const DegenerateTest&) {
      gof = nullptr;
    }
  }
  r.report["gof_vs_exact_pmf"] = gof;
  Json bins = Json::array();
  std::string csv = "value,count\n";
  for (const auto& [value, count] : hist) {
    bins.push_back(Json::array({value, count}));
    csv += fmt::format("{},{}\n", value, count);
  }
  r.report["histogram"] = bins;
  r.csv = csv;
  r.data_files.emplace_back("histogram.csv", csv);

  r.table = fmt::format("process {} mode {}  paths {}\n", s.process, to_string(mode), m.n);
  r.table += fmt::format("mean       {:.10g}", m.mean);
  if (exact_mean) r.table += fmt::format("   (exact {:.10g})", *exact_mean);
  r.table += fmt::format("\nvariance   {:.10g}\n", m.variance);
  r.table += fmt::format("P[X=0]     {:.10g}   (exact {:.10g})\n", zero_fraction, zero_exact);
  if (!gof.is_null()) r.table += fmt::format("chi-square p-value vs exact pmf {:.4g}\n", gof["p_value"].get<double>());
  r.table += fmt::format("{:>10}  {}\n", "value", "count");
  int shown = 0;
  for (const auto& [value, count] : hist) {
    if (++shown > 40) {
      r.table += fmt::format("... {} more values in histogram.csv\n", hist.size() - 40);
      break;
    }
    r.table += fmt::format("{:>10}  {}\n", value, count);
  }

  if (s.dump_paths > 0) {
    // A stream index past the Monte Carlo streams keeps the dump independent.
    Rng rng = make_stream(s.seed, s.streams);
    std::string paths = "path,time,increment,value\n";
    for (std::uint64_t k = 0; k < s.dump_paths; ++k) {
      const PathSample ps = path(rng);
      std::int64_t value = 0;
      for (std::size_t e = 0; e < ps.increments.size(); ++e) {
        value += ps.increments[e];
        paths += fmt::format("{},{},{},{}\n", k, csv_number(ps.event_times[e]), ps.increments[e], value);
      }
    }
    r.data_files.emplace_back("paths.csv", paths);
  }
  return r;
}

// --- hit -------------------------------------------------------------------------

CommandResult run_hit(const RunSpec& s) {
  const HitQuery q = hit_query(s);
  const HittingReport h = hit_report(q, sim_config(s));
  CommandResult r;
  r.report = report_header(s);
  r.report["paper_value"] = h.paper_value ? number(*h.paper_value) : Json(nullptr);
  r.report["oracle_value"] = number(h.oracle_value);
  r.report["mc_estimate"] = number(h.mc.estimate);
  r.report["mc_halfwidth_95"] = number(h.mc.halfwidth_95);
  r.report["n_paths"] = h.mc.n;
  r.report["mc_hits"] = h.mc.hits;
  r.report["truncated_mass"] = number(h.truncated_mass);
  Json flags;
  flags["paper_oracle"] = h.paper_oracle_agree ? Json(*h.paper_oracle_agree) : Json(nullptr);
  flags["oracle_mc"] = h.oracle_mc_agree;
  r.report["flags"] = flags;
  Json tol;
  tol["paper_oracle"] = kPaperOracleTolerance;
  tol["oracle_mc_halfwidths"] = kOracleMcHalfwidths;
  r.report["tolerances"] = tol;

  auto flag_text = [](const std::optional<bool>& b) -> std::string {
    if (!b) return "";
    return *b ? "true" : "false";
  };
  r.csv = "process,i,k,paper_value,oracle_value,mc_estimate,mc_halfwidth_95,n_paths,mc_hits,"
          "truncated_mass,paper_oracle_agree,oracle_mc_agree\n";
  r.csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", s.process, q.params.order, q.level,
                       h.paper_value ? csv_number(*h.paper_value) : "", csv_number(h.oracle_value),
                       csv_number(h.mc.estimate), csv_number(h.mc.halfwidth_95), h.mc.n, h.mc.hits,
                       csv_number(h.truncated_mass), flag_text(h.paper_oracle_agree),
                       flag_text(h.oracle_mc_agree));
  r.table = fmt::format("P[T_{} < inf] for process {} (i={})\n", q.level, s.process, q.params.order);
  r.table += fmt::format("  paper   {}\n", h.paper_value ? fmt::format("{:.12g}", *h.paper_value) : "n/a");
  r.table += fmt::format("  oracle  {:.12g}\n", h.oracle_value);
  r.table += fmt::format("  mc      {:.12g} +/- {:.3g} (n={})\n", h.mc.estimate, h.mc.halfwidth_95, h.mc.n);
  if (h.truncated_mass > 0.0) r.table += fmt::format("  jump-law mass beyond k: {:.3g}\n", h.truncated_mass);
  r.table += fmt::format("  paper/oracle agree: {}   oracle/mc agree: {}\n",
                         h.paper_oracle_agree ? flag_text(h.paper_oracle_agree) : "n/a",
                         flag_text(h.oracle_mc_agree));
  return r;
}

// --- verify ----------------------------------------------------------------------

CommandResult run_verify(const RunSpec& s) {
  SuiteOptions opts;
  opts.seed = s.seed;
  opts.streams = s.streams;
  CommandResult r;
  r.report = report_header(s);
  Json suites = Json::array();
  bool all = true;
  r.csv = "suite,check,passed,value,reference,tolerance\n";
  for (const auto& name : expand_suite(s.suite)) {
    const SuiteReport rep = run_suite(name, opts);
    all = all && rep.passed();
    suites.push_back(to_json(rep));
    r.table += fmt::format("[{}] {}\n", rep.passed() ? "PASS" : "FAIL", rep.name);
    for (const auto& c : rep.checks) {
      r.table += fmt::format("  {} {:<58} value {:<14.8g} ref {:<12.8g} tol {:.3g}\n",
                             c.passed ? "ok  " : "FAIL", c.name, c.value, c.reference, c.tolerance);
      r.csv += fmt::format("{},\"{}\",{},{},{},{}\n", rep.name, c.name, c.passed ? "true" : "false",
                           csv_number(c.value), csv_number(c.reference), csv_number(c.tolerance));
    }
    if (rep.extra.contains("comparisons")) {
      r.table += "  paper vs oracle (discrepancies are reported, not failures):\n";
      for (const auto& row : rep.extra["comparisons"]) {
        const auto& pv = row["paper_value"];
        r.table += fmt::format("    {} i={} k={}  paper {:<10}  oracle {:.9g}  agree {}\n",
                               row["process"].get<std::string>(), row["i"].get<int>(),
                               row["k"].get<int>(),
                               pv.is_null() ? std::string("n/a") : fmt::format("{:.6g}", pv.get<double>()),
                               row["oracle_value"].get<double>(), row["paper_oracle_agree"].dump());
      }
    }
  }
  r.report["passed"] = all;
  r.report["suites"] = suites;
  r.exit_code = all ? kExitOk : kExitVerificationFailed;
  return r;
}

}  // namespace

const char* tool_version() { return ORDERK_VERSION; }

CommandResult execute(const RunSpec& s) {
  if (s.command == "pmf") return run_pmf(s);
  if (s.command == "simulate") return run_simulate(s);
  if (s.command == "hit") return run_hit(s);
  if (s.command == "verify") return run_verify(s);
  throw DomainError("unknown command '" + s.command + "'");
}

nlohmann::ordered_json write_outputs(const RunSpec& s, const CommandResult& result,
                                     const std::vector<std::string>& args) {
  namespace fs = std::filesystem;
  const fs::path dir(s.out);
  fs::create_directories(dir);
  Json outputs = Json::object();
  const std::string report = result.report.dump(2) + "\n";
  write_file(dir / "report.json", report);
  outputs["report.json"] = sha256_hex(report);
  for (const auto& [name, content] : result.data_files) {
    write_file(dir / name, content);
    outputs[name] = sha256_hex(content);
  }
  Json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["tool"] = "orderk";
  manifest["version"] = tool_version();
  manifest["command"] = s.command;
  manifest["args"] = args;
  manifest["params"] = to_json(s);
  manifest["seed"] = s.seed;
  manifest["timestamp"] = utc_timestamp();
  manifest["exit_code"] = result.exit_code;
  manifest["outputs"] = outputs;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

std::string stdout_text(const RunSpec& s, const CommandResult& result) {
  if (s.format == "json") return result.report.dump(2) + "\n";
  if (s.format == "csv") return result.csv;
  return result.table;
}

}  // namespace orderk::app
