// Copyright 2026 the qdln authors
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

#include "qdln/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qdln/rng.hpp"

namespace qdln {

void QDChannel::validate() const {
  if (!(v_min < v_max)) throw std::invalid_argument("channel voltage range requires v_min < v_max");
  if (!std::isfinite(rate_ev_per_v)) throw std::invalid_argument("channel rate must be finite");
  if (!(e0_ev > 1.2 && e0_ev < 1.5))
    throw std::invalid_argument("channel energy outside the (1.2, 1.5) eV device range");
}

std::vector<QDChannel> sample_ensemble(const EnsembleSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("ensemble needs at least one channel");
  if (spec.sigma_inhomogeneous_ev < 0) throw std::invalid_argument("sigma must be non-negative");
  Rng rng(spec.seed);
  std::vector<QDChannel> out;
  out.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    QDChannel ch;
    ch.id = i + 1;
    ch.e0_ev = rng.normal(spec.center_ev, spec.sigma_inhomogeneous_ev);
    ch.rate_ev_per_v = rng.normal(spec.rate_mean_ev_per_v, spec.rate_spread_ev_per_v);
    ch.v_min = -spec.v_limit;
    ch.v_max = spec.v_limit;
    ch.validate();
    out.push_back(ch);
  }
  return out;
}

std::pair<double, double> reachable_interval(const QDChannel& ch) {
  const double a = ch.e0_ev + ch.rate_ev_per_v * ch.v_min;
  const double b = ch.e0_ev + ch.rate_ev_per_v * ch.v_max;
  return {std::min(a, b), std::max(a, b)};
}

std::optional<std::pair<double, double>> overlap_window(const std::vector<QDChannel>& channels) {
  if (channels.empty()) return std::nullopt;
  double lo = -1e300, hi = 1e300;
  for (const auto& ch : channels) {
    const auto [a, b] = reachable_interval(ch);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

namespace {

// Voltage reaching `target` exactly when possible, otherwise the closest
// bound. Never outside [v_min, v_max].
double best_voltage(const QDChannel& ch, double target) {
  if (ch.rate_ev_per_v == 0.0) return 0.0;
  const double v = (target - ch.e0_ev) / ch.rate_ev_per_v;
  return std::clamp(v, ch.v_min, ch.v_max);
}

double total_abs_voltage(const std::vector<QDChannel>& channels, double target, double tol) {
  double sum = 0.0;
  for (const auto& ch : channels) {
    const auto [lo, hi] = reachable_interval(ch);
    if (target < lo - tol || target > hi + tol) continue;  // not alignable here
    sum += std::abs(best_voltage(ch, target));
  }
  return sum;
}

}  // namespace

AlignmentResult align_channels(const std::vector<QDChannel>& channels, double tolerance_ev) {
  if (channels.empty()) throw std::invalid_argument("align_channels requires at least one channel");
  if (!(tolerance_ev > 0)) throw std::invalid_argument("tolerance must be positive");
  for (const auto& ch : channels) ch.validate();
  const double tol = tolerance_ev;

  // A channel is alignable at target t iff t lies in its reachable interval
  // expanded by tol. Sweep interval endpoints to find the maximum coverage.
  struct Event {
    double x;
    int delta;
  };
  std::vector<Event> events;
  events.reserve(2 * channels.size());
  for (const auto& ch : channels) {
    const auto [lo, hi] = reachable_interval(ch);
    events.push_back({lo - tol, +1});
    events.push_back({hi + tol, -1});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.delta > b.delta;  // opens before closes: closed intervals
  });

  int count = 0, best_count = 0;
  for (const auto& ev : events) {
    count += ev.delta;
    best_count = std::max(best_count, count);
  }

  // Regions of maximal coverage, as [start, end] between consecutive events.
  std::vector<std::pair<double, double>> regions;
  count = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    count += events[i].delta;
    if (count == best_count) {
      // region extends to the next event point (a close at the same x gives
      // a degenerate single-point region, which is fine)
      const double start = events[i].x;
      const double end = (i + 1 < events.size()) ? events[i + 1].x : start;
      if (!regions.empty() && regions.back().second >= start)
        regions.back().second = end;
      else
        regions.emplace_back(start, end);
    }
  }

  // Tie-break inside optimal regions: total |V| is piecewise linear in the
  // target with breakpoints where some channel's exact voltage crosses zero
  // (t = e0) or saturates (reach edges +- tol); its minimum over a region is
  // attained at a region endpoint or an interior breakpoint.
  double best_target = regions.front().first;
  double best_cost = total_abs_voltage(channels, best_target, tol);
  auto consider = [&](double t) {
    const double c = total_abs_voltage(channels, t, tol);
    if (c < best_cost - 1e-15 * (1.0 + std::abs(best_cost)) ||
        (std::abs(c - best_cost) <= 1e-15 * (1.0 + std::abs(best_cost)) && t < best_target)) {
      best_cost = c;
      best_target = t;
    }
  };
  for (const auto& [lo, hi] : regions) {
    consider(lo);
    consider(hi);
    for (const auto& ch : channels) {
      const auto [rlo, rhi] = reachable_interval(ch);
      for (double t : {ch.e0_ev, rlo, rhi, rlo - tol, rhi + tol})
        if (t >= lo && t <= hi) consider(t);
    }
  }

  AlignmentResult res;
  res.target_ev = best_target;
  res.tolerance_ev = tol;
  for (const auto& ch : channels) {
    const double v = best_voltage(ch, best_target);
    const double resid = ch.e0_ev + ch.rate_ev_per_v * v - best_target;
    res.voltages[ch.id] = v;
    res.residuals_ev[ch.id] = resid;
    if (std::abs(resid) <= tol) res.aligned_ids.insert(ch.id);
  }
  return res;
}

std::optional<std::pair<double, double>> pair_resonance(const QDChannel& a, const QDChannel& b) {
  a.validate();
  b.validate();
  const auto [alo, ahi] = reachable_interval(a);
  const auto [blo, bhi] = reachable_interval(b);
  const double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
  if (lo > hi) return std::nullopt;

  auto volts = [](const QDChannel& ch, double e) {
    return ch.rate_ev_per_v == 0.0 ? 0.0 : (e - ch.e0_ev) / ch.rate_ev_per_v;
  };
  auto objective = [&](double e) {
    return std::max(std::abs(volts(a, e)), std::abs(volts(b, e)));
  };

  // max(|V_a(E)|, |V_b(E)|) is convex piecewise linear on [lo, hi]; the
  // minimum sits at an endpoint, a vertex (E = e0), or a crossing where
  // |V_a| = |V_b|.
  std::vector<double> cands{lo, hi};
  for (double e : {a.e0_ev, b.e0_ev})
    if (e >= lo && e <= hi) cands.push_back(e);
  if (a.rate_ev_per_v != 0.0 && b.rate_ev_per_v != 0.0) {
    const double ra = a.rate_ev_per_v, rb = b.rate_ev_per_v;
    // (E - e0a)/ra = +-(E - e0b)/rb
    for (int sign : {+1, -1}) {
      const double denom = rb - sign * ra;
      if (denom != 0.0) {
        const double e = (b.e0_ev * ra * sign - a.e0_ev * rb) / (ra * sign - rb) ;
        if (std::isfinite(e) && e >= lo && e <= hi) cands.push_back(e);
      }
    }
  }
  double best_e = cands.front(), best = objective(best_e);
  for (double e : cands) {
    const double o = objective(e);
    if (o < best - 1e-18 || (std::abs(o - best) <= 1e-18 && e < best_e)) {
      best = o;
      best_e = e;
    }
  }
  return std::make_pair(volts(a, best_e), volts(b, best_e));
}

std::string channels_to_csv(const std::vector<QDChannel>& channels) {
  std::string out = "id,e0_eV,rate_ueV_per_V,vmin,vmax\n";
  char buf[160];
  for (const auto& ch : channels) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%.12g\n", ch.id, ch.e0_ev,
                  ch.rate_ev_per_v * 1e6, ch.v_min, ch.v_max);
    out += buf;
  }
  return out;
}

std::vector<QDChannel> channels_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<QDChannel> out;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line.rfind("id,", 0) != 0)
        throw std::runtime_error("channel CSV line 1: missing header");
      continue;
    }
    if (line.empty()) continue;
    QDChannel ch;
    double rate_uev = 0.0;
    char extra = 0;
    const int got = std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf%c", &ch.id, &ch.e0_ev,
                                &rate_uev, &ch.v_min, &ch.v_max, &extra);
    if (got != 5 && !(got == 6 && (extra == '\r')))
      throw std::runtime_error("channel CSV line " + std::to_string(line_no) +
                               ": expected 'id,e0_eV,rate_ueV_per_V,vmin,vmax'");
    ch.rate_ev_per_v = rate_uev * 1e-6;
    ch.validate();
    out.push_back(ch);
  }
  return out;
}

std::string AlignmentResult::to_text() const {
  char buf[200];
  std::string out;
  std::snprintf(buf, sizeof buf, "target_eV = %.12g\n", target_ev);
  out += buf;
  std::snprintf(buf, sizeof buf, "tolerance_ueV = %.12g\n", tolerance_ev * 1e6);
  out += buf;
  std::snprintf(buf, sizeof buf, "aligned = %zu of %zu\n", aligned_ids.size(), voltages.size());
  out += buf;
  out += "id,voltage_V,residual_ueV,aligned\n";
  for (const auto& [id, v] : voltages) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%s\n", id, v,
                  residuals_ev.at(id) * 1e6, aligned_ids.count(id) ? "yes" : "no");
    out += buf;
  }
  return out;
}

}  // namespace qdln
