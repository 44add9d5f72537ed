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

// Conductance phi = min F(B) / pi(B) over cuts with pi(B) <= 1/2, where
// F(B) = sum_{i in B, j not in B} pi_i P(j | i).
//
// Exact methods:
//  * all subsets, for m <= 20 (Gray-code walk, O(m) per cut);
//  * intervals, for tridiagonal (birth-death) chains of any size. A cut is a
//    union of separated intervals whose flows and masses add, and a ratio of
//    sums is at least the smallest ratio, so some single interval is optimal.
// Other chains fall back to sweep cuts along the second eigenvector and are
// flagged approximate.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "aqclab/bridge/markov.hpp"

namespace aqc {

enum class ConductanceMethod { Auto, Subsets, Intervals, Sweep };

struct ConductanceResult {
  double phi = 0.0;
  std::vector<Index> cut;
  bool exact = true;
  std::string method;
};

namespace detail {

inline double cut_flow(const RMatrix& p, const RVector& pi, const std::vector<char>& in) {
  double f = 0.0;
  for (Index i = 0; i < p.rows(); ++i) {
    if (!in[static_cast<std::size_t>(i)]) continue;
    for (Index j = 0; j < p.rows(); ++j)
      if (!in[static_cast<std::size_t>(j)]) f += pi[i] * p(j, i);
  }
  return f;
}

inline bool is_tridiagonal(const RMatrix& p) {
  for (Index i = 0; i < p.rows(); ++i)
    for (Index j = 0; j < p.cols(); ++j)
      if (std::abs(i - j) > 1 && p(i, j) != 0.0) return false;
  return true;
}

}  // namespace detail

inline ConductanceResult conductance(const StochasticMatrix& S, const RVector& pi,
                                     ConductanceMethod method = ConductanceMethod::Auto,
                                     double stationarity_tol = 1e-10) {
  const RMatrix& p = S.matrix();
  const Index m = S.dim();
  if (pi.size() != m) throw InvalidArgument("pi has the wrong length");
  if ((pi.array() < 0.0).any() || std::abs(pi.sum() - 1.0) > 1e-10)
    throw InvalidArgument("pi must be a probability distribution");
  const double err = S.stationarity_error(pi);
  if (err > stationarity_tol)
    throw InvalidArgument("pi is not stationary for P (error " + std::to_string(err) + ")");

  ConductanceResult best;
  best.phi = std::numeric_limits<double>::infinity();
  const double half = 0.5 + 1e-12;
  auto consider = [&](double flow, double mass, auto&& make_cut) {
    if (mass <= 0.0 || mass > half) return;
    const double r = flow / mass;
    if (r < best.phi) {
      best.phi = r;
      best.cut = make_cut();
    }
  };

  if (m == 1) {
    best.phi = 0.0;
    best.method = "trivial";
    return best;
  }

  if (method == ConductanceMethod::Auto)
    method = detail::is_tridiagonal(p) ? ConductanceMethod::Intervals
             : m <= 20                 ? ConductanceMethod::Subsets
                                       : ConductanceMethod::Sweep;
  if (method == ConductanceMethod::Intervals && !detail::is_tridiagonal(p))
    throw InvalidArgument("interval enumeration needs a tridiagonal chain");
  if (method == ConductanceMethod::Subsets && m > 20) throw BudgetExceeded("subset enumeration limited to m <= 20");

  if (method == ConductanceMethod::Intervals) {
    best.method = "intervals";
    // Flow out of [a, b] uses only the two boundary edges.
    for (Index a = 0; a < m; ++a) {
      double mass = 0.0;
      for (Index b = a; b < m; ++b) {
        mass += pi[b];
        if (a == 0 && b == m - 1) break;
        double flow = 0.0;
        if (a > 0) flow += pi[a] * p(a - 1, a);
        if (b < m - 1) flow += pi[b] * p(b + 1, b);
        consider(flow, mass, [&] {
          std::vector<Index> c(static_cast<std::size_t>(b - a + 1));
          std::iota(c.begin(), c.end(), a);
          return c;
        });
      }
    }
  } else if (method == ConductanceMethod::Subsets) {
    best.method = "subsets";
    // Gray-code walk; q(i, j) = pi_i P(j | i) is the stationary flow i -> j.
    RMatrix q(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) q(i, j) = pi[i] * p(j, i);
    std::vector<char> in(static_cast<std::size_t>(m), 0);
    double flow = 0.0, mass = 0.0;
    std::uint32_t gray = 0;
    const std::uint32_t total = std::uint32_t{1} << m;
    for (std::uint32_t k = 1; k < total; ++k) {
      const int v = std::countr_zero(k);
      gray ^= std::uint32_t{1} << v;
      const bool adding = !in[static_cast<std::size_t>(v)];
      // Flow change: edges v -> outside gained/lost, edges inside -> v lost/gained.
      double out_v = 0.0, into_v = 0.0;
      for (Index j = 0; j < m; ++j) {
        if (j == v) continue;
        if (in[static_cast<std::size_t>(j)]) into_v += q(j, v);
        else out_v += q(v, j);
      }
      if (adding) {
        flow += out_v - into_v;
        mass += pi[v];
        in[static_cast<std::size_t>(v)] = 1;
      } else {
        // Removing v: edges j -> v (j inside) become cut, v -> j (j outside) stop.
        flow += into_v - out_v;
        mass -= pi[v];
        in[static_cast<std::size_t>(v)] = 0;
      }
      if (gray == total - 1) continue;
      const std::uint32_t g = gray;
      consider(flow, mass, [&] {
        std::vector<Index> c;
        for (Index i = 0; i < m; ++i)
          if ((g >> i) & 1u) c.push_back(i);
        return c;
      });
    }
    // Report the exact flow of the chosen cut, free of accumulated rounding.
    std::vector<char> sel(static_cast<std::size_t>(m), 0);
    double mb = 0.0;
    for (Index i : best.cut) {
      sel[static_cast<std::size_t>(i)] = 1;
      mb += pi[i];
    }
    best.phi = detail::cut_flow(p, pi, sel) / mb;
  } else {
    best.method = "sweep";
    best.exact = false;
    Eigen::EigenSolver<RMatrix> es(p, true);
    std::vector<Index> order(static_cast<std::size_t>(m));
    Index second = 0;
    {
      std::vector<std::pair<double, Index>> ev;
      for (Index i = 0; i < m; ++i) ev.emplace_back(es.eigenvalues()[i].real(), i);
      std::sort(ev.begin(), ev.end(), std::greater<>());
      second = ev[1].second;
    }
    const RVector f = es.eigenvectors().col(second).real();
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return f[a] / pi[a] < f[b] / pi[b]; });
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<char> in(static_cast<std::size_t>(m), 0);
      double mass = 0.0;
      for (Index k = 0; k + 1 < m; ++k) {
        const Index v = dir == 0 ? order[static_cast<std::size_t>(k)] : order[static_cast<std::size_t>(m - 1 - k)];
        in[static_cast<std::size_t>(v)] = 1;
        mass += pi[v];
        consider(detail::cut_flow(p, pi, in), mass, [&] {
          std::vector<Index> c;
          for (Index i = 0; i < m; ++i)
            if (in[static_cast<std::size_t>(i)]) c.push_back(i);
          return c;
        });
      }
    }
  }
  if (!std::isfinite(best.phi)) best.phi = 0.0;
  return best;
}

struct GapBoundsReport {
  double gap = 0.0;
  double phi = 0.0;
  double half_phi_sq = 0.0;
  bool cheeger_holds = false;
  bool phi_exact = true;
  /// Present for clock chains: 1 / (6 L) and whether phi reaches it.
  std::optional<double> clock_bound;
  std::optional<bool> clock_bound_holds;

  std::string to_text() const {
    std::string s = "gap=" + std::to_string(gap) + " phi=" + std::to_string(phi) +
                    " half_phi_sq=" + std::to_string(half_phi_sq) +
                    " cheeger=" + (cheeger_holds ? "holds" : "VIOLATED");
    if (!phi_exact) s += " (phi approximate)";
    if (clock_bound)
      s += " clock_bound=" + std::to_string(*clock_bound) + (*clock_bound_holds ? " holds" : " VIOLATED");
    return s;
  }
};

/// gap >= phi^2 / 2, and phi >= 1 / (6 L) for clock chains with L gates.
inline GapBoundsReport gap_bounds_check(const StochasticMatrix& P, const RVector& pi,
                                        std::optional<int> clock_L = std::nullopt, double slack = 1e-12) {
  GapBoundsReport r;
  r.gap = P.spectral_gap(pi);
  const ConductanceResult c = conductance(P, pi);
  r.phi = c.phi;
  r.phi_exact = c.exact;
  r.half_phi_sq = 0.5 * r.phi * r.phi;
  r.cheeger_holds = r.gap >= r.half_phi_sq - slack;
  if (clock_L) {
    r.clock_bound = 1.0 / (6.0 * *clock_L);
    r.clock_bound_holds = r.phi >= *r.clock_bound - slack;
  }
  return r;
}

}  // namespace aqc
