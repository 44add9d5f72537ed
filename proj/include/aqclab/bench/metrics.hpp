// Copyright 2026 The aqclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Ensemble metrics: success probability, repeats to a target confidence,
// speedup ratios over the hard part of an ensemble, success histograms with a
// bimodality coefficient, and Hamming distances of failed runs.

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aqclab/core/common.hpp"
#include "aqclab/core/random.hpp"
#include "aqclab/problem/ising.hpp"

namespace aqc {

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

struct InstanceOutcome {
  std::string id;
  int runs = 0;
  int successes = 0;
  /// Time per run, in cost units or seconds depending on the time model.
  double t_a = 0.0;
  std::vector<std::uint64_t> seeds;

  double s() const { return static_cast<double>(successes) / static_cast<double>(runs); }
};

struct SolverReport {
  std::string solver;
  std::vector<InstanceOutcome> instances;

  void validate() const {
    if (instances.empty()) throw InvalidArgument("report has no instances");
    std::set<std::string> ids;
    for (const auto& o : instances) {
      if (o.runs < 1) throw InvalidArgument("instance " + o.id + " has no runs");
      if (o.successes < 0 || o.successes > o.runs) throw InvalidArgument("instance " + o.id + " has bad success count");
      if (!(o.t_a > 0.0)) throw InvalidArgument("instance " + o.id + " needs a positive time per run");
      if (!ids.insert(o.id).second) throw InvalidArgument("duplicate instance id " + o.id);
    }
  }

  std::vector<double> success_values() const {
    std::vector<double> s;
    for (const auto& o : instances) s.push_back(o.s());
    return s;
  }

  /// Columns instance,solver,runs,successes,s,t_a.
  std::string to_csv() const {
    std::ostringstream os;
    os << "instance,solver,runs,successes,s,t_a\n";
    for (const auto& o : instances)
      os << o.id << ',' << solver << ',' << o.runs << ',' << o.successes << ',' << format_double(o.s()) << ','
         << format_double(o.t_a) << '\n';
    return os.str();
  }

  static SolverReport from_csv(std::istream& in) {
    SolverReport r;
    std::string line;
    if (!std::getline(in, line) || line.rfind("instance,solver,runs,successes", 0) != 0)
      throw InvalidArgument("report CSV must start with the header instance,solver,runs,successes,s,t_a");
    int line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) f.push_back(cell);
      if (f.size() != 6) throw InvalidArgument("report CSV line " + std::to_string(line_no) + ": expected 6 fields");
      InstanceOutcome o;
      try {
        o.id = f[0];
        r.solver = f[1];
        o.runs = std::stoi(f[2]);
        o.successes = std::stoi(f[3]);
        o.t_a = std::stod(f[5]);
      } catch (const std::logic_error&) {
        throw InvalidArgument("report CSV line " + std::to_string(line_no) + ": bad number");
      }
      r.instances.push_back(std::move(o));
    }
    r.validate();
    return r;
  }

  static SolverReport read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open report " + path);
    return from_csv(in);
  }
};

/// Returns the best configuration found by one seeded run.
using ConfigSolver = std::function<SpinConfiguration(const CostFunction&, std::uint64_t seed)>;

struct SuccessEstimate {
  double s = 0.0;
  int successes = 0;
  int runs = 0;
  std::vector<std::uint64_t> seeds;

  /// Binomial standard error sqrt(s (1 - s) / runs).
  double std_error() const { return std::sqrt(s * (1.0 - s) / runs); }
};

/// A run succeeds when its configuration attains the brute-force minimum.
/// Run r uses seed derive_seed(master_seed, {r}).
inline SuccessEstimate success_probability(const ConfigSolver& solver, const CostFunction& cost, int runs,
                                           std::uint64_t master_seed, double tol = 1e-9) {
  if (runs < 1) throw InvalidArgument("runs must be >= 1");
  if (cost.n > 24) throw BudgetExceeded("success oracle needs brute force, limited to n <= 24");
  const double ground = brute_force_ground(cost).energy;
  const double cut = ground + tol * std::max(1.0, std::abs(ground));
  SuccessEstimate est;
  est.runs = runs;
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t seed = derive_seed(master_seed, {static_cast<std::uint64_t>(r)});
    est.seeds.push_back(seed);
    if (cost(solver(cost, seed)) <= cut) ++est.successes;
  }
  est.s = static_cast<double>(est.successes) / runs;
  return est;
}

/// Smallest R with 1 - (1 - s)^R >= p.
inline long repeats_needed(double s, double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("target probability must lie in (0, 1)");
  if (s == 0.0) throw InvalidArgument("success probability 0 needs infinitely many repeats");
  if (!(s > 0.0 && s <= 1.0)) throw InvalidArgument("success probability must lie in (0, 1]");
  if (s >= p) return 1;
  auto reaches = [&](long R) { return -std::expm1(static_cast<double>(R) * std::log1p(-s)) >= p; };
  long R = std::max(1L, static_cast<long>(std::ceil(std::log1p(-p) / std::log1p(-s))));
  while (!reaches(R)) ++R;
  while (R > 1 && reaches(R - 1)) --R;
  return R;
}

/// Lower empirical quantile: the value at rank ceil(q m) of the sorted data.
inline double lower_quantile(std::vector<double> v, double q) {
  if (v.empty()) throw InvalidArgument("quantile of an empty sample");
  if (!(q > 0.0 && q <= 1.0)) throw InvalidArgument("quantile level must lie in (0, 1]");
  std::sort(v.begin(), v.end());
  const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()) - 1e-12));
  return v[std::clamp<std::size_t>(k, 1, v.size()) - 1];
}

struct SpeedupReport {
  double quantile_level = 0.5;
  double target_p = 0.99;
  /// Hardness thresholds: lower quantile of s in each report.
  double s0_a = 0.0;
  double s0_b = 0.0;
  /// mean T_A over A's hard instances / mean T_B over B's hard instances.
  double quotient_of_quantiles = 0.0;
  /// mean of T_A / T_B over B's hard instances.
  double quantile_of_quotient = 0.0;
  int hard_a = 0;
  int hard_b = 0;
  /// Instances dropped because s = 0 in either report.
  int excluded = 0;
  std::vector<std::string> ids;
  std::vector<double> quotients;

  std::string to_csv() const {
    std::ostringstream os;
    os << "quantile,target_p,s0_a,s0_b,hard_a,hard_b,excluded,quotient_of_quantiles,quantile_of_quotient\n"
       << format_double(quantile_level) << ',' << format_double(target_p) << ',' << format_double(s0_a) << ','
       << format_double(s0_b) << ',' << hard_a << ',' << hard_b << ',' << excluded << ','
       << format_double(quotient_of_quantiles) << ',' << format_double(quantile_of_quotient) << '\n';
    return os.str();
  }

  std::string quotients_csv() const {
    std::ostringstream os;
    os << "instance,quotient\n";
    for (std::size_t i = 0; i < ids.size(); ++i) os << ids[i] << ',' << format_double(quotients[i]) << '\n';
    return os.str();
  }
};

/// Time to solution T = repeats_needed(s, p) * t_a; hard instances are those
/// with s at or below the q-quantile of the report's success values.
inline SpeedupReport speedup_metrics(const SolverReport& a, const SolverReport& b, double q = 0.5,
                                     double p = 0.99) {
  a.validate();
  b.validate();
  std::map<std::string, const InstanceOutcome*> bmap;
  for (const auto& o : b.instances) bmap[o.id] = &o;
  std::set<std::string> aids;
  for (const auto& o : a.instances) aids.insert(o.id);
  if (aids.size() != bmap.size() ||
      !std::all_of(aids.begin(), aids.end(), [&](const std::string& id) { return bmap.count(id) > 0; }))
    throw InvalidArgument("reports cover different instance sets");

  SpeedupReport r;
  r.quantile_level = q;
  r.target_p = p;
  std::vector<double> sa, sb, ta, tb;
  for (const auto& oa : a.instances) {
    const auto& ob = *bmap.at(oa.id);
    if (oa.successes == 0 || ob.successes == 0) {
      ++r.excluded;
      continue;
    }
    r.ids.push_back(oa.id);
    sa.push_back(oa.s());
    sb.push_back(ob.s());
    ta.push_back(static_cast<double>(repeats_needed(oa.s(), p)) * oa.t_a);
    tb.push_back(static_cast<double>(repeats_needed(ob.s(), p)) * ob.t_a);
  }
  if (r.ids.empty()) throw InvalidArgument("no instance has s > 0 in both reports");
  r.s0_a = lower_quantile(sa, q);
  r.s0_b = lower_quantile(sb, q);
  double sum_a = 0.0, sum_b = 0.0, sum_q = 0.0;
  for (std::size_t i = 0; i < r.ids.size(); ++i) {
    r.quotients.push_back(ta[i] / tb[i]);
    if (sa[i] <= r.s0_a) {
      sum_a += ta[i];
      ++r.hard_a;
    }
    if (sb[i] <= r.s0_b) {
      sum_b += tb[i];
      sum_q += ta[i] / tb[i];
      ++r.hard_b;
    }
  }
  r.quotient_of_quantiles = (sum_a / r.hard_a) / (sum_b / r.hard_b);
  r.quantile_of_quotient = sum_q / r.hard_b;
  return r;
}

struct SuccessHistogram {
  std::vector<double> edges;
  std::vector<int> counts;
  int samples = 0;
  double mean = 0.0;
  /// Bias-corrected sample skewness and excess kurtosis; empty when undefined.
  std::optional<double> skewness;
  std::optional<double> excess_kurtosis;
  /// Sarle's bimodality coefficient; empty when undefined (n < 4 or zero variance).
  std::optional<double> sarle;
  static constexpr double kBimodalThreshold = 5.0 / 9.0;

  bool bimodal() const { return sarle && *sarle > kBimodalThreshold; }

  std::string to_csv() const {
    std::ostringstream os;
    os << "bin_lo,bin_hi,count\n";
    for (std::size_t k = 0; k < counts.size(); ++k)
      os << format_double(edges[k]) << ',' << format_double(edges[k + 1]) << ',' << counts[k] << '\n';
    return os.str();
  }

  std::string summary() const {
    std::string s = "samples=" + std::to_string(samples) + " mean=" + format_double(mean);
    if (sarle) s += " sarle=" + format_double(*sarle) + (bimodal() ? " (bimodal)" : " (unimodal)");
    else s += " sarle=undefined";
    return s;
  }
};

/// Fixed-width bins over [0, 1]; s = 1 falls in the last bin.
inline SuccessHistogram success_histogram(const std::vector<double>& s, int bins = 10) {
  if (s.empty()) throw InvalidArgument("histogram of an empty report");
  if (bins < 1) throw InvalidArgument("bins must be >= 1");
  SuccessHistogram h;
  h.samples = static_cast<int>(s.size());
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (int k = 0; k <= bins; ++k) h.edges.push_back(static_cast<double>(k) / bins);
  for (double x : s) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("success values must lie in [0, 1]");
    const int k = std::min(bins - 1, static_cast<int>(std::floor(x * bins)));
    ++h.counts[static_cast<std::size_t>(k)];
  }
  const double n = static_cast<double>(s.size());
  for (double x : s) h.mean += x;
  h.mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : s) {
    const double d = x - h.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (s.size() < 4 || !(m2 > 1e-300)) return h;
  const double g1 = m3 / std::pow(m2, 1.5);
  const double g2 = m4 / (m2 * m2) - 3.0;
  const double G1 = std::sqrt(n * (n - 1.0)) / (n - 2.0) * g1;
  const double G2 = (n - 1.0) / ((n - 2.0) * (n - 3.0)) * ((n + 1.0) * g2 + 6.0);
  h.skewness = G1;
  h.excess_kurtosis = G2;
  h.sarle = (G1 * G1 + 1.0) / (G2 + 3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0)));
  return h;
}

struct HammingInput {
  std::string id;
  std::vector<SpinConfiguration> finals;
  std::vector<SpinConfiguration> ground_states;
};

struct HammingRow {
  std::string id;
  int run = 0;
  /// Minimum distance to any ground state; 0 for a successful run.
  int distance = 0;
  double weight = 1.0;
};

struct HammingSummary {
  std::string id;
  double s = 0.0;
  int failed_runs = 0;
  /// Median distance over failed runs; 0 when every run succeeded.
  double median_distance = 0.0;
};

struct HammingDiagnostic {
  double gamma = 1.0;
  std::vector<HammingRow> rows;
  std::vector<HammingSummary> summary;

  std::string rows_csv() const {
    std::ostringstream os;
    os << "instance,run,distance,weight\n";
    for (const auto& r : rows) os << r.id << ',' << r.run << ',' << r.distance << ',' << format_double(r.weight) << '\n';
    return os.str();
  }

  std::string summary_csv() const {
    std::ostringstream os;
    os << "instance,s,failed_runs,median_distance\n";
    for (const auto& r : summary)
      os << r.id << ',' << format_double(r.s) << ',' << r.failed_runs << ',' << format_double(r.median_distance)
         << '\n';
    return os.str();
  }
};

/// Tunnelling cost model weight gamma^d for each run.
inline HammingDiagnostic hamming_tunneling_diagnostic(const std::vector<HammingInput>& inputs, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  HammingDiagnostic out;
  out.gamma = gamma;
  for (const auto& in : inputs) {
    if (in.ground_states.empty()) throw InvalidArgument("instance " + in.id + " has no ground states");
    std::vector<int> failed;
    int successes = 0;
    for (std::size_t r = 0; r < in.finals.size(); ++r) {
      int d = std::numeric_limits<int>::max();
      for (const auto& g : in.ground_states) d = std::min(d, hamming_distance(in.finals[r], g));
      out.rows.push_back({in.id, static_cast<int>(r), d, std::pow(gamma, d)});
      if (d == 0) ++successes;
      else failed.push_back(d);
    }
    HammingSummary s;
    s.id = in.id;
    s.s = in.finals.empty() ? 0.0 : static_cast<double>(successes) / static_cast<double>(in.finals.size());
    s.failed_runs = static_cast<int>(failed.size());
    if (!failed.empty()) {
      std::sort(failed.begin(), failed.end());
      const std::size_t m = failed.size();
      s.median_distance = m % 2 ? failed[m / 2] : 0.5 * (failed[m / 2 - 1] + failed[m / 2]);
    }
    out.summary.push_back(std::move(s));
  }
  return out;
}

}  // namespace aqc
