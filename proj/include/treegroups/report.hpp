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

#ifndef TREEGROUPS_REPORT_HPP
#define TREEGROUPS_REPORT_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "treegroups/spec.hpp"
#include "treegroups/spectra/bad_cosets.hpp"
#include "treegroups/spectra/fpp.hpp"
#include "treegroups/spectra/hdim.hpp"
#include "treegroups/spectra/process.hpp"

namespace treegroups {

inline constexpr const char *kToolName = "treegroups";
inline constexpr const char *kToolVersion = "0.1.0";

/// Shortest round-trip decimal form, independent of locale.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string format_seed(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llX", static_cast<unsigned long long>(seed));
  return buf;
}

/// Fields shared by every JSON report.
struct Provenance {
  nlohmann::json spec;
  std::uint64_t seed = kDefaultSeed;
  int depth = 0;
};

inline nlohmann::json provenance_json(const Provenance &p) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"spec", p.spec}, {"seed", format_seed(p.seed)},
          {"depth", p.depth}};
}

// ---------------------------------------------------------------------------
// FPP

inline std::string to_csv(const FPPReport &r) {
  std::ostringstream out;
  out << "level,count_fixing,order,p_k,bound,pass\n";
  for (const auto &l : r.levels)
    out << l.level << ',' << (l.sampled ? std::string() : to_string(l.count_fixing)) << ',' << to_string(l.order) << ',' << to_string(l.p) << ','
        << to_string(r.bound) << ',' << (l.pass ? "pass" : "fail") << '\n';
  return out.str();
}

inline nlohmann::json to_json(const FPPReport &r, const Provenance &p) {
  auto j = provenance_json(p);
  j["report"] = "fpp";
  j["spec_id"] = r.spec_id;
  j["bound"] = to_string(r.bound);
  j["bound_source"] = r.bound_source;
  j["monotone"] = r.monotone;
  j["exact"] = r.exact();
  j["pass"] = r.pass();
  auto levels = nlohmann::json::array();
  for (const auto &l : r.levels) {
    nlohmann::json row{{"level", l.level},
                       {"count_fixing", l.sampled ? nlohmann::json() : nlohmann::json(to_string(l.count_fixing))},
                       {"order", to_string(l.order)},
                       {"p_k", to_string(l.p)},
                       {"bound", to_string(r.bound)},
                       {"pass", l.pass}};
    if (l.sampled)
      row["sampled"] = {{"successes", l.sampled->successes}, {"trials", l.sampled->trials},
                        {"ci_low", format_double(l.sampled->low)}, {"ci_high", format_double(l.sampled->high)},
                        {"z", format_double(l.sampled->z)}};
    levels.push_back(std::move(row));
  }
  j["levels"] = std::move(levels);
  return j;
}

// ---------------------------------------------------------------------------
// Hausdorff dimension

inline std::string to_csv(const HdimReport &r) {
  std::ostringstream out;
  out << "n,log_order,log_aut_order,ratio,exact_ratio,source\n";
  for (const auto &l : r.levels)
    out << l.n << ',' << format_double(l.log_order_value) << ',' << format_double(l.log_aut_value) << ','
        << format_double(l.ratio) << ',' << (l.exact_ratio ? to_string(*l.exact_ratio) : "") << ',' << l.source << '\n';
  return out.str();
}

inline nlohmann::json log_order_json(const LogOrder &o) {
  auto terms = nlohmann::json::object();
  for (const auto &[p, e] : o.exponents()) terms[std::to_string(p)] = to_string(e);
  return terms;
}

inline nlohmann::json to_json(const HdimReport &r, const Provenance &p) {
  auto j = provenance_json(p);
  j["report"] = "hdim";
  j["spec_id"] = r.spec_id;
  j["degree"] = r.d;
  auto levels = nlohmann::json::array();
  for (const auto &l : r.levels)
    levels.push_back({{"n", l.n},
                      {"log_order_terms", log_order_json(l.log_order)},
                      {"log_order", format_double(l.log_order_value)},
                      {"log_aut_order", format_double(l.log_aut_value)},
                      {"ratio", format_double(l.ratio)},
                      {"exact_ratio", l.exact_ratio ? nlohmann::json(to_string(*l.exact_ratio)) : nlohmann::json()},
                      {"source", l.source}});
  j["levels"] = std::move(levels);
  return j;
}

// ---------------------------------------------------------------------------
// Fixed-point process

inline std::string to_csv(const ProcessReport &r) {
  std::ostringstream out;
  out << "level,mean,mean_low,mean_high,exact_mean\n";
  for (int k = 1; k <= r.depth; ++k) {
    const auto &m = r.mean[k - 1];
    out << k << ',' << format_double(m.mean) << ',' << format_double(m.low) << ',' << format_double(m.high) << ','
        << (r.exact ? to_string(r.exact->mean[k]) : "") << '\n';
  }
  return out.str();
}

inline nlohmann::json to_json(const ProcessReport &r, const Provenance &p, bool with_trajectories = false) {
  auto j = provenance_json(p);
  j["report"] = "process";
  j["spec_id"] = r.spec_id;
  j["degree"] = r.d;
  j["trials"] = r.trials;
  j["sampler"] = r.sampler;
  j["event"] = {{"description", "X_k = d for 1 <= k <= depth"},
                {"successes", r.event.successes},
                {"estimate", format_double(r.event.estimate)},
                {"ci_low", format_double(r.event.low)},
                {"ci_high", format_double(r.event.high)},
                {"exact", r.exact ? nlohmann::json(to_string(r.exact->event)) : nlohmann::json()}};
  auto levels = nlohmann::json::array();
  for (int k = 1; k <= r.depth; ++k) {
    const auto &m = r.mean[k - 1];
    levels.push_back({{"level", k},
                      {"mean", format_double(m.mean)},
                      {"mean_low", format_double(m.low)},
                      {"mean_high", format_double(m.high)},
                      {"exact_mean", r.exact ? nlohmann::json(to_string(r.exact->mean[k])) : nlohmann::json()}});
  }
  j["levels"] = std::move(levels);
  if (with_trajectories) j["trajectories"] = r.trajectories;
  return j;
}

// ---------------------------------------------------------------------------
// Bad cosets

inline nlohmann::json to_json(const BadCosetReport &r, const Provenance &p) {
  auto j = provenance_json(p);
  j["report"] = "bad_cosets";
  j["degree"] = r.d;
  j["q_size"] = to_string(r.q_size);
  auto reps = nlohmann::json::array();
  for (const auto &g : r.representatives) reps.push_back(format_portrait(truncate(g, 1)));
  j["coset_representatives"] = reps;
  j["M"] = r.M;
  j["ratio"] = to_string(r.ratio);
  j["complete_monodromy"] = r.complete_monodromy ? nlohmann::json(*r.complete_monodromy) : nlohmann::json();
  const auto e = euler_formulas(r.d);
  j["affine_closed_form"] = {{"bad_count", to_string(e.bad_count)}, {"fpp_bound", to_string(e.fpp_bound)}};
  return j;
}

inline std::string to_csv(const BadCosetReport &r) {
  std::ostringstream out;
  out << "coset,representative,bad\n";
  for (std::size_t i = 0; i < r.representatives.size(); ++i) {
    bool bad = false;
    for (auto m : r.M) bad = bad || m == i;
    out << i << ',' << format_portrait(truncate(r.representatives[i], 1)) << ',' << (bad ? "true" : "false") << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Output

/// Pretty JSON with a fixed two-space indent and trailing newline.
inline std::string dump(const nlohmann::json &j) { return j.dump(2) + "\n"; }

/// Writes `content` to `path`, or to stdout for "-". Errors name the path.
inline void write_output(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace treegroups

#endif  // TREEGROUPS_REPORT_HPP
