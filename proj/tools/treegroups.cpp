// Copyright 2026 The treegroups Authors
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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "treegroups/report.hpp"
#include "treegroups/suite.hpp"

using namespace treegroups;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

struct Options {
  std::string spec_path;
  std::string claims_path;
  std::optional<int> degree;
  std::optional<int> depth;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> seed;
  std::optional<std::size_t> cap;
  std::string format = "csv";
  std::string out = "-";
  std::string bound = "0";
  bool trajectories = false;
};

/// What a config file can carry besides the group spec; flags override it.
struct Experiment {
  std::optional<GroupSpec> spec;
  int depth = 2;
  std::uint64_t trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t cap = FiniteTreeGroup::kDefaultCap;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path, 0);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::uint64_t parse_seed(const std::string &text) {
  std::string t = text;
  if (t.starts_with("0x") || t.starts_with("0X")) t = t.substr(2);
  if (t.empty() || t.size() > 16 || t.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
    throw ParseError("seed must be hexadecimal, got '" + text + "'", 0);
  return std::stoull(t, nullptr, 16);
}

/// A spec file is either a bare group spec ({"family": ...}) or an
/// experiment config ({"spec": {...}, "depth": 3, "trials": ..., "seed": "0x5EED", "cap": ...}).
Experiment load_experiment(const Options &o) {
  Experiment e;
  if (!o.spec_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(o.spec_path));
    } catch (const nlohmann::json::parse_error &err) {
      throw ParseError(o.spec_path + ": invalid JSON: " + err.what(), err.byte);
    }
    if (j.is_object() && j.contains("spec")) {
      e.spec = spec_from_json(j.at("spec"));
      try {
        if (j.contains("depth")) e.depth = j.at("depth").get<int>();
        if (j.contains("trials")) e.trials = j.at("trials").get<std::uint64_t>();
        if (j.contains("seed")) e.seed = parse_seed(j.at("seed").get<std::string>());
        if (j.contains("cap")) e.cap = j.at("cap").get<std::size_t>();
      } catch (const nlohmann::json::exception &err) {
        throw ParseError(o.spec_path + ": " + err.what(), 0);
      }
    } else {
      e.spec = spec_from_json(j);
    }
  }
  if (o.depth) e.depth = *o.depth;
  if (o.trials) e.trials = *o.trials;
  if (o.seed) e.seed = parse_seed(*o.seed);
  if (o.cap) e.cap = *o.cap;
  if (e.depth < 1) throw ParseError("depth must be >= 1", 0);
  if (e.cap == 0) throw ParseError("cap must be positive", 0);
  if (o.format != "csv" && o.format != "json") throw ParseError("format must be csv or json", 0);
  return e;
}

const GroupSpec &require_spec(const Experiment &e) {
  if (!e.spec) throw ParseError("--spec is required for this command", 0);
  return *e.spec;
}

Provenance provenance(const Experiment &e) {
  return {e.spec ? to_json(*e.spec) : nlohmann::json(), e.seed, e.depth};
}

int run_suite_command(const std::string &name, const Options &o) {
  const auto e = load_experiment(o);
  suite::SuiteConfig config;
  config.suite = name;
  config.depth = e.depth;
  config.trials = e.trials;
  config.seed = e.seed;
  config.cap = e.cap;
  config.spec = e.spec;
  if (e.spec) config.degree = e.spec->degree();
  if (o.degree) {
    if (e.spec && *o.degree != config.degree) throw ParseError("--degree disagrees with the spec's degree", 0);
    config.degree = Degree(*o.degree);
  }
  const auto claims = o.claims_path.empty()
                          ? suite::default_claims(name)
                          : suite::parse_claims(nlohmann::json::parse(read_file(o.claims_path)));
  const auto report = suite::run_suite(config, claims);
  write_output(o.out, o.format == "json" ? dump(suite::to_json(report)) : suite::to_csv(report));
  for (const auto &r : report.results)
    if (r.status != suite::Status::Pass && r.status != suite::Status::Skipped && r.status != suite::Status::Reported)
      std::cerr << name << ": " << r.claim.id << " " << suite::to_string(r.status)
                << (r.value ? " value=" + suite::to_string(*r.value) : "")
                << (r.expected ? " expected=" + suite::to_string(*r.expected) : "")
                << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
  return report.exit_code();
}

int run_fpp(const Options &o) {
  const auto e = load_experiment(o);
  const auto &spec = require_spec(e);
  const auto r = fpp_report(spec, e.depth, e.cap, e.trials, e.seed, parse_fraction(o.bound), "--bound");
  write_output(o.out, o.format == "json" ? dump(to_json(r, provenance(e))) : to_csv(r));
  return r.pass() ? kExitPass : kExitAssertion;
}

int run_hdim(const Options &o) {
  const auto e = load_experiment(o);
  const auto r = hdim_sequence(require_spec(e), e.depth, e.cap);
  write_output(o.out, o.format == "json" ? dump(to_json(r, provenance(e))) : to_csv(r));
  return kExitPass;
}

int run_process(const Options &o) {
  const auto e = load_experiment(o);
  const auto r = process_sample(require_spec(e), e.depth, e.trials, e.seed, e.cap);
  write_output(o.out, o.format == "json" ? dump(to_json(r, provenance(e), o.trajectories)) : to_csv(r));
  return kExitPass;
}

int run_bad_cosets(const Options &o) {
  const auto e = load_experiment(o);
  const auto *gh = std::get_if<GHFamily>(&require_spec(e).family);
  if (!gh) throw ParseError("bad-cosets needs a spec of family \"gh\"", 0);
  const auto G = materialize(*gh->outer, e.depth, e.cap);
  const auto H = materialize(*gh->inner, e.depth, e.cap);
  const auto GH = gh_group(G, H);
  const auto r = bad_cosets(G, H, &GH);
  const auto bound = monodromy_bound(GH, H, r);
  auto j = to_json(r, provenance(e));
  j["witnesses_checked"] = bound.checked;
  write_output(o.out, o.format == "json" ? dump(j) : to_csv(r));
  return kExitPass;
}

void add_common(CLI::App *cmd, Options &o, bool spec_required) {
  auto *spec = cmd->add_option("--spec", o.spec_path, "group spec or experiment config (JSON)");
  if (spec_required) spec->required();
  cmd->add_option("--depth", o.depth, "tree depth n");
  cmd->add_option("--trials", o.trials, "Monte Carlo draws");
  cmd->add_option("--seed", o.seed, "master seed, hexadecimal");
  cmd->add_option("--cap", o.cap, "enumeration cap");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output path, - for stdout");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact computations with groups acting on rooted trees"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Options o;
  std::string suite_name;

  auto *suite_cmd = app.add_subcommand("suite", "run a named claim suite");
  suite_cmd->add_option("name", suite_name, "suite name")->required()->check(CLI::IsMember(suite::suite_names()));
  add_common(suite_cmd, o, false);
  suite_cmd->add_option("--degree", o.degree, "tree degree d when no spec is given");
  suite_cmd->add_option("--claims", o.claims_path, "replace the built-in claims with a JSON claim list");

  auto *fpp_cmd = app.add_subcommand("fpp", "fixed-point proportion per level");
  add_common(fpp_cmd, o, true);
  fpp_cmd->add_option("--bound", o.bound, "declared lower bound a/b");

  auto *hdim_cmd = app.add_subcommand("hdim", "Hausdorff dimension ratio sequence up to --depth");
  add_common(hdim_cmd, o, true);

  auto *process_cmd = app.add_subcommand("process", "sample the fixed-point process");
  add_common(process_cmd, o, true);
  process_cmd->add_flag("--trajectories", o.trajectories, "include every trajectory in JSON output");

  auto *bad_cmd = app.add_subcommand("bad-cosets", "bad cosets and monodromy bound of a gh spec");
  add_common(bad_cmd, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*suite_cmd) return run_suite_command(suite_name, o);
    if (*fpp_cmd) return run_fpp(o);
    if (*hdim_cmd) return run_hdim(o);
    if (*process_cmd) return run_process(o);
    if (*bad_cmd) return run_bad_cosets(o);
  } catch (const CapacityError &e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ParseError &e) {
    std::cerr << "config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
